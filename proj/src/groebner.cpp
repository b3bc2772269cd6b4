#include "fthresh/groebner.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <mutex>
#include <queue>
#include <shared_mutex>
#include <unordered_map>
#include <unordered_set>

#include "reduction.hpp"

namespace fthresh {

namespace {

constexpr const char* kTagName = "@t";
constexpr std::size_t kCacheLimit = 4096;

struct BasisCache {
  std::shared_mutex mutex;
  std::unordered_map<std::string, BasisPtr> entries;
};

BasisCache& cache() {
  static BasisCache c;
  return c;
}

detail::Reducers reducers_of(const std::vector<Terms>& polys) {
  detail::Reducers r;
  for (const auto& p : polys) r.add(p);
  return r;
}

struct Pair {
  std::size_t i;
  std::size_t j;
  ExponentVector lcm;
};

// Buchberger state. Polynomials live in a deque so reducer pointers stay valid.
class Engine {
 public:
  Engine(const Ring& ring, Budget budget)
      : ring_(ring), field_(ring->field()), meter_(budget, "Groebner basis") {}

  void insert_input(const Terms& f) {
    if (unit_) return;
    Terms h = detail::normal_form_terms(f, *ring_, reducers_, meter_);
    if (!h.empty()) add(std::move(h));
  }

  void run() {
    while (!pairs_.empty() && !unit_) {
      const Pair p = select();
      const Terms& f = polys_[p.i];
      const Terms& g = polys_[p.j];
      detail::NormalFormAccumulator acc(*ring_, reducers_, meter_);
      acc.add_product(f, p.lcm.quotient(f.front().exponents), 1);
      acc.add_product(g, p.lcm.quotient(g.front().exponents), field_.neg(1u));
      Terms h = acc.finish();
      if (!h.empty()) add(std::move(h));
    }
  }

  std::vector<Terms> reduced_basis() {
    if (unit_) {
      return {Terms{{ExponentVector(ring_->num_variables()), 1}}};
    }
    std::vector<Terms> basis;
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) basis.push_back(polys_[k]);
    }
    // tail reduction against the other elements
    std::vector<Terms> reduced;
    reduced.reserve(basis.size());
    for (std::size_t k = 0; k < basis.size(); ++k) {
      detail::Reducers others;
      for (std::size_t m = 0; m < basis.size(); ++m) {
        if (m != k) others.add(basis[m]);
      }
      Terms tail(basis[k].begin() + 1, basis[k].end());
      Terms nf = detail::normal_form_terms(tail, *ring_, others, meter_);
      nf.insert(nf.begin(), basis[k].front());
      reduced.push_back(std::move(nf));
    }
    std::sort(reduced.begin(), reduced.end(), [this](const Terms& a, const Terms& b) {
      return ring_->order().less(b.front().exponents, a.front().exponents);
    });
    return reduced;
  }

 private:
  Pair select() {
    std::size_t best = 0;
    for (std::size_t k = 1; k < pairs_.size(); ++k) {
      const auto c = ring_->order().compare(pairs_[k].lcm, pairs_[best].lcm);
      if (c == std::strong_ordering::less) best = k;
    }
    Pair p = pairs_[best];
    pairs_.erase(pairs_.begin() + static_cast<std::ptrdiff_t>(best));
    return p;
  }

  const ExponentVector& lead(std::size_t k) const { return polys_[k].front().exponents; }

  void add(Terms h) {
    h = detail::make_monic(std::move(h), field_);
    if (h.front().exponents.is_one()) {
      unit_ = true;
      pairs_.clear();
      return;
    }
    const std::size_t hi = polys_.size();
    polys_.push_back(std::move(h));
    active_.push_back(false);
    update(hi);
    rebuild_reducers();
  }

  // Gebauer–Möller update.
  void update(std::size_t h) {
    const ExponentVector& lh = lead(h);
    std::vector<Pair> candidates;
    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g]) candidates.push_back({g, h, lh.lcm(lead(g))});
    }
    std::vector<Pair> kept;
    for (std::size_t k = 0; k < candidates.size(); ++k) {
      const Pair& c = candidates[k];
      bool keep = lh.coprime(lead(c.i));
      if (!keep) {
        keep = true;
        for (std::size_t m = k + 1; m < candidates.size() && keep; ++m) {
          if (candidates[m].lcm.divides(c.lcm)) keep = false;
        }
        for (std::size_t m = 0; m < kept.size() && keep; ++m) {
          if (kept[m].lcm.divides(c.lcm)) keep = false;
        }
      }
      if (keep) kept.push_back(c);
    }
    std::erase_if(kept, [&](const Pair& c) { return lh.coprime(lead(c.i)); });

    std::erase_if(pairs_, [&](const Pair& p) {
      return lh.divides(p.lcm) && lh.lcm(lead(p.i)) != p.lcm && lh.lcm(lead(p.j)) != p.lcm;
    });
    pairs_.insert(pairs_.end(), kept.begin(), kept.end());

    for (std::size_t g = 0; g < h; ++g) {
      if (active_[g] && lh.divides(lead(g))) active_[g] = false;
    }
    active_[h] = true;
  }

  void rebuild_reducers() {
    reducers_ = detail::Reducers{};
    for (std::size_t k = 0; k < polys_.size(); ++k) {
      if (active_[k]) reducers_.add(polys_[k]);
    }
  }

  Ring ring_;
  const PrimeField& field_;
  BudgetMeter meter_;
  std::deque<Terms> polys_;
  std::vector<bool> active_;
  std::vector<Pair> pairs_;
  detail::Reducers reducers_;
  bool unit_ = false;
};

Terms lift_terms(const Terms& t, std::size_t count) {
  Terms out;
  out.reserve(t.size());
  for (const auto& term : t) out.push_back({term.exponents.shifted(count), term.coeff});
  return out;
}

}  // namespace

GroebnerBasis::GroebnerBasis(Ring ring, std::vector<Terms> elements, std::string source)
    : ring_(std::move(ring)), elements_(std::move(elements)), source_(std::move(source)) {
  leads_.reserve(elements_.size());
  for (const auto& e : elements_) leads_.push_back(e.front().exponents);
}

std::vector<Polynomial> GroebnerBasis::elements() const {
  std::vector<Polynomial> out;
  out.reserve(elements_.size());
  for (const auto& e : elements_) out.push_back(Polynomial::from_canonical(ring_, e));
  return out;
}

bool GroebnerBasis::is_unit() const noexcept {
  return elements_.size() == 1 && leads_.front().is_one();
}

Terms GroebnerBasis::reduce(const Terms& f, BudgetMeter& meter) const {
  return detail::normal_form_terms(f, *ring_, reducers_of(elements_), meter);
}

Terms GroebnerBasis::reduce_product(const Terms& a, const Terms& b, BudgetMeter& meter) const {
  return detail::normal_form_product(a, b, *ring_, reducers_of(elements_), meter);
}

BasisPtr buchberger(const Ideal& ideal, Budget budget) {
  const std::string key = ideal.fingerprint();
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    if (const auto it = c.entries.find(key); it != c.entries.end()) return it->second;
  }
  const Ring& ring = ideal.ring();
  Engine engine(ring, budget);
  for (const auto& r : ring->relation_terms()) engine.insert_input(r);
  for (const auto& g : ideal.generators()) engine.insert_input(g.terms());
  engine.run();
  auto basis = std::make_shared<const GroebnerBasis>(ring, engine.reduced_basis(), key);
  {
    std::unique_lock lock(c.mutex);
    if (c.entries.size() >= kCacheLimit) c.entries.clear();
    c.entries.emplace(key, basis);
  }
  return basis;
}

void clear_basis_cache() {
  std::unique_lock lock(cache().mutex);
  cache().entries.clear();
}

std::size_t basis_cache_size() {
  std::shared_lock lock(cache().mutex);
  return cache().entries.size();
}

Polynomial normal_form(const Polynomial& f, const GroebnerBasis& basis) {
  require_same_ring(*f.ring(), *basis.ring());
  BudgetMeter meter(default_budget(), "normal form");
  return Polynomial::from_canonical(basis.ring(), basis.reduce(f.terms(), meter));
}

bool ideal_member(const Polynomial& f, const Ideal& ideal) {
  require_same_ring(*f.ring(), *ideal.ring());
  const auto basis = buchberger(ideal);
  BudgetMeter meter(default_budget(), "membership");
  return basis->reduce(f.terms(), meter).empty();
}

bool ideal_subset(const Ideal& a, const Ideal& b) {
  require_same_ring(*a.ring(), *b.ring());
  const auto basis = buchberger(b);
  BudgetMeter meter(default_budget(), "membership");
  return std::all_of(a.generators().begin(), a.generators().end(), [&](const Polynomial& g) {
    return basis->reduce(g.terms(), meter).empty();
  });
}

bool ideal_equal(const Ideal& a, const Ideal& b) {
  return ideal_subset(a, b) && ideal_subset(b, a);
}

bool radical_member(const Polynomial& f, const Ideal& ideal, Budget budget) {
  require_same_ring(*f.ring(), *ideal.ring());
  if (f.is_zero()) return true;
  const Ring& ring = ideal.ring();
  const Ring ext = ring->with_tag_variables({kTagName}, MonomialOrder{OrderKind::grevlex, 0});
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) gens.emplace_back(ext, lift_terms(g.terms(), 1));
  for (const auto& r : ring->relation_terms()) gens.emplace_back(ext, lift_terms(r, 1));
  const Polynomial t = Polynomial::variable(ext, 0);
  const Polynomial lifted(ext, lift_terms(f.terms(), 1));
  gens.push_back(Polynomial::constant(ext, 1) - t * lifted);
  return buchberger(Ideal(ext, std::move(gens)), budget)->is_unit();
}

std::size_t dimension_of_leads(const std::vector<ExponentVector>& leads, std::size_t nvars) {
  std::vector<std::uint32_t> supports;
  supports.reserve(leads.size());
  for (const auto& m : leads) {
    std::uint32_t s = 0;
    for (std::size_t i = 0; i < nvars; ++i) {
      if (m[i] != 0) s |= 1u << i;
    }
    supports.push_back(s);
  }
  std::size_t best = 0;
  bool any = false;
  for (std::uint32_t subset = 0; subset < (1u << nvars); ++subset) {
    const auto size = static_cast<std::size_t>(std::popcount(subset));
    if (any && size <= best) continue;
    const bool independent = std::none_of(supports.begin(), supports.end(), [&](std::uint32_t s) {
      return (s & ~subset) == 0;
    });
    if (independent) {
      best = size;
      any = true;
    }
  }
  if (!any) throw PreconditionError("unit ideal has no dimension");
  return best;
}

std::size_t dimension(const Ideal& ideal) {
  const auto basis = buchberger(ideal);
  return dimension_of_leads(basis->leading_monomials(), ideal.ring()->num_variables());
}

StandardMonomialSet standard_monomials(const GroebnerBasis& basis, Budget budget) {
  const std::size_t n = basis.ring()->num_variables();
  const auto& leads = basis.leading_monomials();
  if (basis.is_unit()) return {};
  if (dimension_of_leads(leads, n) != 0) {
    throw PreconditionError("quotient is not zero-dimensional");
  }
  BudgetMeter meter(budget, "standard monomials");
  const auto is_standard = [&](const ExponentVector& m) {
    return std::none_of(leads.begin(), leads.end(),
                        [&](const ExponentVector& l) { return l.divides(m); });
  };
  StandardMonomialSet out;
  std::unordered_set<ExponentVector, ExponentHash> seen;
  std::queue<ExponentVector> queue;
  const ExponentVector one(n);
  seen.insert(one);
  queue.push(one);
  while (!queue.empty()) {
    const ExponentVector m = queue.front();
    queue.pop();
    out.monomials.push_back(m);
    for (std::size_t i = 0; i < n; ++i) {
      ExponentVector next = m;
      ++next[i];
      meter.charge(leads.size() + 1);
      if (seen.contains(next) || !is_standard(next)) continue;
      seen.insert(next);
      queue.push(next);
    }
  }
  const auto& order = basis.order();
  std::sort(out.monomials.begin(), out.monomials.end(),
            [&](const ExponentVector& a, const ExponentVector& b) { return order.less(b, a); });
  return out;
}

StandardMonomialSet standard_monomials(const Ideal& ideal, Budget budget) {
  return standard_monomials(*buchberger(ideal, budget), budget);
}

Polynomial exact_divide(const Polynomial& f, const Polynomial& g) {
  if (g.is_zero()) throw std::invalid_argument("division by the zero polynomial");
  const Ring& ring = f.ring();
  const auto& F = ring->field();
  const Term& lg = g.leading_term();
  const std::uint32_t inv = F.inv(lg.coeff);
  Terms rest = f.terms();
  Terms quotient;
  while (!rest.empty()) {
    const Term& lr = rest.front();
    if (!lg.exponents.divides(lr.exponents)) {
      throw std::invalid_argument("polynomial division is not exact");
    }
    const Term qt{lr.exponents.quotient(lg.exponents), F.mul(lr.coeff, inv)};
    quotient.push_back(qt);
    Terms shifted;
    shifted.reserve(g.size());
    for (const auto& t : g.terms()) shifted.push_back({t.exponents * qt.exponents, t.coeff});
    rest = detail::sub_scaled(rest, shifted, qt.coeff, *ring);
  }
  return Polynomial::from_canonical(ring, std::move(quotient));
}

Ideal ideal_colon(const Ideal& ideal, const Polynomial& f, Budget budget) {
  require_same_ring(*f.ring(), *ideal.ring());
  if (f.is_zero()) throw PreconditionError("colon by the zero polynomial");
  const Ring& ring = ideal.ring();
  const Ring ambient = ring->ambient();
  const Ring ext =
      ring->with_tag_variables({kTagName}, MonomialOrder{OrderKind::elimination, 1});
  const Polynomial t = Polynomial::variable(ext, 0);
  const Polynomial one = Polynomial::constant(ext, 1);
  std::vector<Polynomial> gens;
  for (const auto& g : ideal.generators()) {
    gens.push_back(t * Polynomial(ext, lift_terms(g.terms(), 1)));
  }
  for (const auto& r : ring->relation_terms()) gens.push_back(t * Polynomial(ext, lift_terms(r, 1)));
  const Polynomial lifted_f(ext, lift_terms(f.terms(), 1));
  gens.push_back((one - t) * lifted_f);
  const auto basis = buchberger(Ideal(ext, std::move(gens)), budget);

  const Polynomial f_ambient = f.rebind(ambient);
  std::vector<Polynomial> quotients;
  for (const auto& e : basis->element_terms()) {
    if (e.front().exponents[0] != 0) continue;
    Terms dropped;
    dropped.reserve(e.size());
    for (const auto& term : e) dropped.push_back({term.exponents.dropped(1), term.coeff});
    const Polynomial g(ambient, std::move(dropped));
    quotients.push_back(exact_divide(g, f_ambient).rebind(ring));
  }
  return Ideal(ring, std::move(quotients));
}

}  // namespace fthresh
