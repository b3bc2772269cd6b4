#pragma once

#include <memory>
#include <string>
#include <vector>

#include "fthresh/errors.hpp"
#include "fthresh/polyring.hpp"

namespace fthresh {

/// Reduced monic Gröbner basis of I + (relations) under the ring's order.
/// Elements are sorted by leading monomial, descending.
class GroebnerBasis {
 public:
  GroebnerBasis(Ring ring, std::vector<Terms> elements, std::string source);

  const Ring& ring() const noexcept { return ring_; }
  const MonomialOrder& order() const noexcept { return ring_->order(); }
  const std::string& source() const noexcept { return source_; }
  const std::vector<Terms>& element_terms() const noexcept { return elements_; }
  std::vector<Polynomial> elements() const;
  const std::vector<ExponentVector>& leading_monomials() const noexcept { return leads_; }
  std::size_t size() const noexcept { return elements_.size(); }
  bool is_unit() const noexcept;

  /// Normal form of raw terms in this basis' ring.
  Terms reduce(const Terms& f, BudgetMeter& meter) const;
  /// Normal form of a*b without materialising the product.
  Terms reduce_product(const Terms& a, const Terms& b, BudgetMeter& meter) const;

 private:
  Ring ring_;
  std::vector<Terms> elements_;
  std::vector<ExponentVector> leads_;
  std::string source_;
};

using BasisPtr = std::shared_ptr<const GroebnerBasis>;

/// Buchberger with Gebauer–Möller pair pruning and normal selection.
/// Results are cached by (generator fingerprint, ring presentation).
BasisPtr buchberger(const Ideal& ideal, Budget budget = default_budget());

/// Drops all cached bases.
void clear_basis_cache();
std::size_t basis_cache_size();

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis);

bool ideal_member(const Polynomial& f, const Ideal& ideal);
/// Every generator of `a` lies in `b`.
bool ideal_subset(const Ideal& a, const Ideal& b);
bool ideal_equal(const Ideal& a, const Ideal& b);

/// f^k in I for some k, decided by adjoining a tag variable t and testing
/// whether 1 lies in I + (relations) + (1 - t f).
bool radical_member(const Polynomial& f, const Ideal& ideal, Budget budget = default_budget());

/// Krull dimension of R/(I + relations). Throws PreconditionError on the
/// unit ideal.
std::size_t dimension(const Ideal& ideal);
/// Same, from the leading monomials of a basis.
std::size_t dimension_of_leads(const std::vector<ExponentVector>& leads, std::size_t nvars);

/// Finite staircase complement of the leading-term ideal.
struct StandardMonomialSet {
  std::vector<ExponentVector> monomials;  // sorted descending in the ring order
  std::size_t size() const noexcept { return monomials.size(); }
};

/// Throws PreconditionError when R/I is not zero-dimensional.
StandardMonomialSet standard_monomials(const Ideal& ideal, Budget budget = default_budget());
StandardMonomialSet standard_monomials(const GroebnerBasis& basis, Budget budget = default_budget());

/// (I : f) = {g : g f in I + relations}, by elimination of a tag variable
/// from t I + (1 - t) f followed by exact division by f.
Ideal ideal_colon(const Ideal& ideal, const Polynomial& f, Budget budget = default_budget());

/// Exact quotient f / g in the relation-free ring; throws std::invalid_argument
/// when g does not divide f.
Polynomial exact_divide(const Polynomial& f, const Polynomial& g);

}  // namespace fthresh
