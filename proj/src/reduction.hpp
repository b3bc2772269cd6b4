#pragma once

// Low-level sparse kernels shared by the Gröbner engine and the frontier
// computations. Everything here works on raw canonical Terms.

#include <unordered_map>
#include <vector>

#include "fthresh/errors.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh::detail {

/// Reducer set: monic polynomials with their leading exponents cached.
struct Reducers {
  std::vector<const Terms*> polys;
  std::vector<ExponentVector> leads;

  void add(const Terms& monic_poly) {
    polys.push_back(&monic_poly);
    leads.push_back(monic_poly.front().exponents);
  }
  /// Index of a reducer whose leading monomial divides m, or -1.
  int find_divisor(const ExponentVector& m) const {
    for (std::size_t i = 0; i < leads.size(); ++i) {
      if (leads[i].divides(m)) return static_cast<int>(i);
    }
    return -1;
  }
};

/// Full normal form of sum_k (mult_k * input_k) where each product is
/// accumulated lazily. Reduces every term, top down.
class NormalFormAccumulator {
 public:
  NormalFormAccumulator(const RingContext& ring, const Reducers& reducers, BudgetMeter& meter);

  /// Adds coeff * x^shift * poly.
  void add_product(const Terms& poly, const ExponentVector& shift, std::uint32_t coeff);
  void add_terms(const Terms& poly) { add_product(poly, ExponentVector(nvars_), 1); }

  /// Runs the reduction and returns the canonical remainder. Resets state.
  Terms finish();

 private:
  void add_term(const ExponentVector& m, std::uint32_t c);

  const RingContext& ring_;
  const Reducers& reducers_;
  BudgetMeter& meter_;
  std::size_t nvars_;
  std::unordered_map<ExponentVector, std::uint32_t, ExponentHash> acc_;
  std::vector<ExponentVector> heap_;
};

Terms normal_form_terms(const Terms& f, const RingContext& ring, const Reducers& reducers,
                        BudgetMeter& meter);

/// Normal form of the product a*b.
Terms normal_form_product(const Terms& a, const Terms& b, const RingContext& ring,
                          const Reducers& reducers, BudgetMeter& meter);

Terms multiply_terms(const Terms& a, const Terms& b, const RingContext& ring);

Terms make_monic(Terms t, const PrimeField& field);

/// a - c*b, canonical.
Terms sub_scaled(const Terms& a, const Terms& b, std::uint32_t c, const RingContext& ring);

/// Semi-echelon basis of an F_p-span: every stored vector is monic with a
/// distinct leading monomial.
class LinearEchelon {
 public:
  explicit LinearEchelon(const RingContext& ring) : ring_(ring) {}

  /// Inserts v; returns false when v already lies in the span.
  bool insert(Terms v, BudgetMeter& meter);
  const std::vector<Terms>& rows() const noexcept { return rows_; }
  std::vector<Terms> take() { pivots_.clear(); return std::move(rows_); }
  bool empty() const noexcept { return rows_.empty(); }
  std::size_t size() const noexcept { return rows_.size(); }

 private:
  const RingContext& ring_;
  std::vector<Terms> rows_;
  std::unordered_map<ExponentVector, std::size_t, ExponentHash> pivots_;
};

}  // namespace fthresh::detail
