#include "reduction.hpp"

#include <algorithm>

namespace fthresh::detail {

NormalFormAccumulator::NormalFormAccumulator(const RingContext& ring, const Reducers& reducers,
                                             BudgetMeter& meter)
    : ring_(ring), reducers_(reducers), meter_(meter), nvars_(ring.num_variables()) {}

void NormalFormAccumulator::add_term(const ExponentVector& m, std::uint32_t c) {
  auto [it, inserted] = acc_.try_emplace(m, c);
  if (inserted) {
    heap_.push_back(m);
    std::push_heap(heap_.begin(), heap_.end(), [this](const auto& a, const auto& b) {
      return ring_.order().less(a, b);
    });
  } else {
    it->second = ring_.field().add(it->second, c);
  }
}

void NormalFormAccumulator::add_product(const Terms& poly, const ExponentVector& shift,
                                        std::uint32_t coeff) {
  if (coeff == 0) return;
  const auto& F = ring_.field();
  meter_.charge(poly.size());
  for (const auto& t : poly) add_term(t.exponents * shift, F.mul(t.coeff, coeff));
}

Terms NormalFormAccumulator::finish() {
  const auto& F = ring_.field();
  const auto cmp = [this](const auto& a, const auto& b) { return ring_.order().less(a, b); };
  Terms out;
  while (!heap_.empty()) {
    std::pop_heap(heap_.begin(), heap_.end(), cmp);
    const ExponentVector m = heap_.back();
    heap_.pop_back();
    const auto it = acc_.find(m);
    const std::uint32_t c = it->second;
    acc_.erase(it);
    if (c == 0) continue;
    const int r = reducers_.find_divisor(m);
    if (r < 0) {
      out.push_back({m, c});
      continue;
    }
    // reducer is monic: subtract c * x^(m - lead) * g, skipping the lead term
    const Terms& g = *reducers_.polys[static_cast<std::size_t>(r)];
    const ExponentVector shift = m.quotient(g.front().exponents);
    const std::uint32_t neg = F.neg(c);
    meter_.charge(g.size());
    for (std::size_t k = 1; k < g.size(); ++k) {
      add_term(g[k].exponents * shift, F.mul(g[k].coeff, neg));
    }
  }
  acc_.clear();
  return out;
}

Terms normal_form_terms(const Terms& f, const RingContext& ring, const Reducers& reducers,
                        BudgetMeter& meter) {
  NormalFormAccumulator acc(ring, reducers, meter);
  acc.add_terms(f);
  return acc.finish();
}

Terms normal_form_product(const Terms& a, const Terms& b, const RingContext& ring,
                          const Reducers& reducers, BudgetMeter& meter) {
  NormalFormAccumulator acc(ring, reducers, meter);
  for (const auto& t : a) acc.add_product(b, t.exponents, t.coeff);
  return acc.finish();
}

Terms multiply_terms(const Terms& a, const Terms& b, const RingContext& ring) {
  Reducers none;
  BudgetMeter meter(Budget{~0ull});
  return normal_form_product(a, b, ring, none, meter);
}

Terms make_monic(Terms t, const PrimeField& field) {
  if (t.empty() || t.front().coeff == 1) return t;
  const std::uint32_t inv = field.inv(t.front().coeff);
  for (auto& term : t) term.coeff = field.mul(term.coeff, inv);
  return t;
}

Terms sub_scaled(const Terms& a, const Terms& b, std::uint32_t c, const RingContext& ring) {
  const auto& F = ring.field();
  const auto& ord = ring.order();
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::strong_ordering o = std::strong_ordering::less;
    if (i == a.size()) {
      o = std::strong_ordering::less;
    } else if (j == b.size()) {
      o = std::strong_ordering::greater;
    } else {
      o = ord.compare(a[i].exponents, b[j].exponents);
    }
    if (o == std::strong_ordering::greater) {
      out.push_back(a[i++]);
    } else if (o == std::strong_ordering::less) {
      out.push_back({b[j].exponents, F.neg(F.mul(b[j].coeff, c))});
      ++j;
    } else {
      const std::uint32_t v = F.sub(a[i].coeff, F.mul(b[j].coeff, c));
      if (v != 0) out.push_back({a[i].exponents, v});
      ++i;
      ++j;
    }
  }
  return out;
}

bool LinearEchelon::insert(Terms v, BudgetMeter& meter) {
  while (!v.empty()) {
    const auto it = pivots_.find(v.front().exponents);
    if (it == pivots_.end()) break;
    const Terms& row = rows_[it->second];
    meter.charge(v.size() + row.size());
    v = sub_scaled(v, row, v.front().coeff, ring_);
  }
  if (v.empty()) return false;
  v = make_monic(std::move(v), ring_.field());
  pivots_.emplace(v.front().exponents, rows_.size());
  rows_.push_back(std::move(v));
  return true;
}

}  // namespace fthresh::detail
