#include "fthresh/polyring.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>
#include <unordered_map>

namespace fthresh {

ExponentVector::ExponentVector(std::size_t length) {
  if (length > kExponentSlots) throw std::invalid_argument("too many variables");
  n_ = static_cast<std::uint8_t>(length);
}

ExponentVector::ExponentVector(std::initializer_list<std::uint32_t> exponents)
    : ExponentVector(std::span<const std::uint32_t>(exponents.begin(), exponents.size())) {}

ExponentVector::ExponentVector(std::span<const std::uint32_t> exponents)
    : ExponentVector(exponents.size()) {
  std::copy(exponents.begin(), exponents.end(), e_.begin());
}

ExponentVector ExponentVector::scaled(std::uint64_t factor) const {
  ExponentVector r = *this;
  for (std::size_t i = 0; i < n_; ++i) {
    const std::uint64_t v = static_cast<std::uint64_t>(e_[i]) * factor;
    if (v > 0xffffffffull) throw std::overflow_error("exponent overflow");
    r.e_[i] = static_cast<std::uint32_t>(v);
  }
  return r;
}

ExponentVector ExponentVector::shifted(std::size_t count) const {
  ExponentVector r(n_ + count);
  for (std::size_t i = 0; i < n_; ++i) r.e_[i + count] = e_[i];
  return r;
}

ExponentVector ExponentVector::dropped(std::size_t count) const {
  ExponentVector r(n_ - count);
  for (std::size_t i = count; i < n_; ++i) r.e_[i - count] = e_[i];
  return r;
}

std::string ExponentVector::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < n_; ++i) {
    if (i) s += ",";
    s += std::to_string(e_[i]);
  }
  return s + ")";
}

namespace {

std::strong_ordering grevlex_range(const ExponentVector& u, const ExponentVector& v,
                                   std::size_t lo, std::size_t hi) noexcept {
  std::uint64_t du = 0, dv = 0;
  for (std::size_t i = lo; i < hi; ++i) {
    du += u[i];
    dv += v[i];
  }
  if (du != dv) return du <=> dv;
  for (std::size_t i = hi; i-- > lo;) {
    if (u[i] != v[i]) return v[i] <=> u[i];
  }
  return std::strong_ordering::equal;
}

}  // namespace

std::strong_ordering MonomialOrder::compare(const ExponentVector& u,
                                            const ExponentVector& v) const noexcept {
  const std::size_t n = u.size();
  switch (kind) {
    case OrderKind::lex:
      for (std::size_t i = 0; i < n; ++i) {
        if (u[i] != v[i]) return u[i] <=> v[i];
      }
      return std::strong_ordering::equal;
    case OrderKind::elimination: {
      const std::size_t k = std::min(block, n);
      if (auto c = grevlex_range(u, v, 0, k); c != 0) return c;
      return grevlex_range(u, v, k, n);
    }
    case OrderKind::grevlex:
    default:
      return grevlex_range(u, v, 0, n);
  }
}

std::string MonomialOrder::name() const {
  switch (kind) {
    case OrderKind::lex:
      return "lex";
    case OrderKind::elimination:
      return "elim" + std::to_string(block);
    case OrderKind::grevlex:
    default:
      return "grevlex";
  }
}

std::strong_ordering order_compare(const ExponentVector& u, const ExponentVector& v,
                                   const MonomialOrder& order) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("exponent vectors of different length");
  }
  return order.compare(u, v);
}

// ---------------------------------------------------------------------------
// RingContext

RingContext::RingContext(PrimeField field, std::vector<std::string> variables,
                         MonomialOrder order, std::vector<Terms> relations)
    : field_(field),
      variables_(std::move(variables)),
      order_(order),
      relations_(std::move(relations)) {
  std::ostringstream fp;
  fp << "p=" << field_.characteristic() << ";vars=";
  for (const auto& v : variables_) fp << v << ",";
  fp << ";order=" << order_.name() << ";rels=";
  for (const auto& r : relations_) fp << format_terms(r) << ";";
  fingerprint_ = fp.str();
}

Ring RingContext::make(std::uint32_t characteristic, std::vector<std::string> variables,
                       MonomialOrder order) {
  if (variables.size() > kExponentSlots) {
    throw std::invalid_argument("too many variables");
  }
  for (std::size_t i = 0; i < variables.size(); ++i) {
    if (variables[i].empty()) throw std::invalid_argument("empty variable name");
    for (std::size_t j = 0; j < i; ++j) {
      if (variables[i] == variables[j]) {
        throw std::invalid_argument("duplicate variable '" + variables[i] + "'");
      }
    }
  }
  return Ring(new RingContext(PrimeField(characteristic), std::move(variables), order, {}));
}

Ring RingContext::with_relations(std::vector<Terms> relations) const {
  for (auto& r : relations) {
    r = canonicalize(std::move(r));
    if (r.empty()) throw std::invalid_argument("zero relation");
  }
  return Ring(new RingContext(field_, variables_, order_, std::move(relations)));
}

Ring RingContext::with_order(MonomialOrder order) const {
  auto base = Ring(new RingContext(field_, variables_, order, {}));
  if (relations_.empty()) return base;
  return base->with_relations(relations_);
}

Ring RingContext::with_tag_variables(const std::vector<std::string>& names,
                                     MonomialOrder order) const {
  std::vector<std::string> vars = names;
  vars.insert(vars.end(), variables_.begin(), variables_.end());
  return make(field_.characteristic(), std::move(vars), order);
}

Ring RingContext::ambient() const {
  return Ring(new RingContext(field_, variables_, order_, {}));
}

std::vector<Polynomial> RingContext::relations() const {
  std::vector<Polynomial> out;
  for (const auto& r : relations_) out.push_back(Polynomial::from_canonical(shared_from_this(), r));
  return out;
}

int RingContext::variable_index(std::string_view name) const {
  for (std::size_t i = 0; i < variables_.size(); ++i) {
    if (variables_[i] == name) return static_cast<int>(i);
  }
  return -1;
}

Terms RingContext::canonicalize(Terms terms) const {
  for (auto& t : terms) t.coeff %= field_.characteristic();
  std::sort(terms.begin(), terms.end(), [this](const Term& a, const Term& b) {
    return order_.compare(a.exponents, b.exponents) == std::strong_ordering::greater;
  });
  Terms out;
  out.reserve(terms.size());
  for (const auto& t : terms) {
    if (!out.empty() && out.back().exponents == t.exponents) {
      out.back().coeff = field_.add(out.back().coeff, t.coeff);
    } else {
      out.push_back(t);
    }
  }
  std::erase_if(out, [](const Term& t) { return t.coeff == 0; });
  return out;
}

std::string RingContext::format_terms(const Terms& terms) const {
  if (terms.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < terms.size(); ++k) {
    const auto& t = terms[k];
    if (k) s += " + ";
    std::string mono;
    for (std::size_t i = 0; i < t.exponents.size() && i < variables_.size(); ++i) {
      const auto e = t.exponents[i];
      if (e == 0) continue;
      if (!mono.empty()) mono += "*";
      mono += variables_[i];
      if (e > 1) mono += "^" + std::to_string(e);
    }
    if (mono.empty()) {
      s += std::to_string(t.coeff);
    } else if (t.coeff == 1) {
      s += mono;
    } else {
      s += std::to_string(t.coeff) + "*" + mono;
    }
  }
  return s;
}

void require_same_ring(const RingContext& a, const RingContext& b) {
  if (!a.same_as(b)) throw std::invalid_argument("ring mismatch");
}

// ---------------------------------------------------------------------------
// Polynomial

Polynomial::Polynomial(Ring ring) : ring_(std::move(ring)) {}

Polynomial::Polynomial(Ring ring, Terms terms) : ring_(std::move(ring)) {
  for (const auto& t : terms) {
    if (t.exponents.size() != ring_->num_variables()) {
      throw std::invalid_argument("exponent vector length does not match ring");
    }
  }
  terms_ = ring_->canonicalize(std::move(terms));
}

Polynomial Polynomial::constant(Ring ring, std::int64_t value) {
  const auto c = ring->field().element(value).residue;
  ExponentVector one(ring->num_variables());
  Polynomial f(std::move(ring));
  if (c != 0) f.terms_.push_back({one, c});
  return f;
}

Polynomial Polynomial::variable(Ring ring, std::size_t index) {
  if (index >= ring->num_variables()) throw std::out_of_range("variable index");
  ExponentVector e(ring->num_variables());
  e[index] = 1;
  return monomial(std::move(ring), e, 1);
}

Polynomial Polynomial::monomial(Ring ring, const ExponentVector& exponents,
                                std::int64_t coeff) {
  if (exponents.size() != ring->num_variables()) {
    throw std::invalid_argument("exponent vector length does not match ring");
  }
  const auto c = ring->field().element(coeff).residue;
  Polynomial f(std::move(ring));
  if (c != 0) f.terms_.push_back({exponents, c});
  return f;
}

Polynomial Polynomial::from_canonical(Ring ring, Terms terms) {
  Polynomial f(std::move(ring));
  f.terms_ = std::move(terms);
  return f;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() || (terms_.size() == 1 && terms_[0].exponents.is_one());
}

bool Polynomial::is_homogeneous() const noexcept {
  if (terms_.empty()) return true;
  const auto d = terms_.front().exponents.degree();
  return std::all_of(terms_.begin(), terms_.end(),
                     [d](const Term& t) { return t.exponents.degree() == d; });
}

const Term& Polynomial::leading_term() const {
  if (terms_.empty()) throw std::logic_error("leading term of zero polynomial");
  return terms_.front();
}

std::uint64_t Polynomial::total_degree() const noexcept {
  std::uint64_t d = 0;
  for (const auto& t : terms_) d = std::max(d, t.exponents.degree());
  return d;
}

Polynomial Polynomial::operator-() const {
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = ring_->field().neg(t.coeff);
  return r;
}

namespace {

Terms merge_add(const Terms& a, const Terms& b, const RingContext& ring, bool subtract) {
  const auto& field = ring.field();
  const auto& order = ring.order();
  Terms out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    std::strong_ordering c = std::strong_ordering::equal;
    if (i == a.size()) {
      c = std::strong_ordering::less;
    } else if (j == b.size()) {
      c = std::strong_ordering::greater;
    } else {
      c = order.compare(a[i].exponents, b[j].exponents);
    }
    if (c == std::strong_ordering::greater) {
      out.push_back(a[i++]);
    } else if (c == std::strong_ordering::less) {
      Term t = b[j++];
      if (subtract) t.coeff = field.neg(t.coeff);
      out.push_back(t);
    } else {
      const auto coeff = subtract ? field.sub(a[i].coeff, b[j].coeff)
                                  : field.add(a[i].coeff, b[j].coeff);
      if (coeff != 0) out.push_back({a[i].exponents, coeff});
      ++i;
      ++j;
    }
  }
  return out;
}

}  // namespace

Polynomial& Polynomial::operator+=(const Polynomial& rhs) {
  require_same_ring(*ring_, *rhs.ring_);
  terms_ = merge_add(terms_, rhs.terms_, *ring_, false);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& rhs) {
  require_same_ring(*ring_, *rhs.ring_);
  terms_ = merge_add(terms_, rhs.terms_, *ring_, true);
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  require_same_ring(*a.ring_, *b.ring_);
  const auto& field = a.ring_->field();
  std::unordered_map<ExponentVector, std::uint32_t, ExponentHash> acc;
  acc.reserve(a.size() * b.size());
  for (const auto& s : a.terms_) {
    for (const auto& t : b.terms_) {
      auto& c = acc[s.exponents * t.exponents];
      c = field.add(c, field.mul(s.coeff, t.coeff));
    }
  }
  Terms terms;
  terms.reserve(acc.size());
  for (const auto& [e, c] : acc) {
    if (c != 0) terms.push_back({e, c});
  }
  return Polynomial(a.ring_, std::move(terms));
}

Polynomial Polynomial::scaled(std::uint32_t coeff) const {
  coeff %= ring_->characteristic();
  if (coeff == 0) return Polynomial(ring_);
  Polynomial r = *this;
  for (auto& t : r.terms_) t.coeff = ring_->field().mul(t.coeff, coeff);
  return r;
}

Polynomial Polynomial::monic() const {
  if (terms_.empty()) return *this;
  return scaled(ring_->field().inv(terms_.front().coeff));
}

Polynomial Polynomial::rebind(Ring ring) const {
  if (ring->num_variables() != ring_->num_variables() ||
      ring->characteristic() != ring_->characteristic()) {
    throw std::invalid_argument("rebind to incompatible ring");
  }
  return Polynomial(std::move(ring), terms_);
}

std::string Polynomial::to_string() const { return ring_->format_terms(terms_); }

bool is_power_of(std::uint64_t q, std::uint64_t p) noexcept {
  if (q == 0 || p < 2) return false;
  while (q % p == 0) q /= p;
  return q == 1;
}

Polynomial pow(const Polynomial& f, std::uint64_t n) {
  Polynomial result = Polynomial::constant(f.ring(), 1);
  Polynomial base = f;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1;
    if (n > 0) base = base * base;
  }
  return result;
}

Polynomial frobenius_pow(const Polynomial& f, std::uint64_t q) {
  const auto p = f.ring()->characteristic();
  if (!is_power_of(q, p)) {
    throw std::invalid_argument(std::to_string(q) + " is not a power of the characteristic " +
                                std::to_string(p));
  }
  const auto& field = f.ring()->field();
  Terms terms;
  terms.reserve(f.size());
  for (const auto& t : f.terms()) {
    terms.push_back({t.exponents.scaled(q), field.pow(FpElement{t.coeff}, q).residue});
  }
  // scaling by q preserves the order, so the result is already canonical
  return Polynomial::from_canonical(f.ring(), std::move(terms));
}

// ---------------------------------------------------------------------------
// Ideal

Ideal::Ideal(Ring ring) : ring_(std::move(ring)) {}

Ideal::Ideal(Ring ring, std::vector<Polynomial> generators) : ring_(std::move(ring)) {
  for (auto& g : generators) {
    require_same_ring(*ring_, *g.ring());
    if (!g.is_zero()) gens_.push_back(std::move(g));
  }
}

Ideal Ideal::unit(Ring ring) {
  auto one = Polynomial::constant(ring, 1);
  return Ideal(std::move(ring), {one});
}

Ideal Ideal::maximal_at_origin(Ring ring) {
  std::vector<Polynomial> gens;
  for (std::size_t i = 0; i < ring->num_variables(); ++i) {
    gens.push_back(Polynomial::variable(ring, i));
  }
  return Ideal(std::move(ring), std::move(gens));
}

bool Ideal::is_monomial() const noexcept {
  return std::all_of(gens_.begin(), gens_.end(),
                     [](const Polynomial& g) { return g.is_monomial(); });
}

bool Ideal::is_homogeneous() const noexcept {
  return std::all_of(gens_.begin(), gens_.end(),
                     [](const Polynomial& g) { return g.is_homogeneous(); });
}

std::string Ideal::fingerprint() const {
  std::vector<std::string> parts;
  parts.reserve(gens_.size());
  for (const auto& g : gens_) parts.push_back(g.monic().to_string());
  std::sort(parts.begin(), parts.end());
  parts.erase(std::unique(parts.begin(), parts.end()), parts.end());
  std::string s = ring_->fingerprint() + "|";
  for (const auto& p : parts) s += p + ";";
  return s;
}

std::string Ideal::to_string() const {
  std::string s = "(";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) s += ", ";
    s += gens_[i].to_string();
  }
  return s + ")";
}

Ideal operator+(const Ideal& a, const Ideal& b) {
  require_same_ring(*a.ring(), *b.ring());
  auto gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Ideal(a.ring(), std::move(gens));
}

}  // namespace fthresh
