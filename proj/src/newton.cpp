#include "fthresh/newton.hpp"

#include <algorithm>
#include <functional>
#include <limits>
#include <numeric>
#include <optional>
#include <set>

namespace fthresh {

namespace {

using Vec = std::vector<BigRational>;

void require_polyhedral(std::size_t d) {
  if (d > kMaxPolyhedralDimension) {
    throw PreconditionError("polyhedral computations support at most " +
                            std::to_string(kMaxPolyhedralDimension) + " variables");
  }
}

std::vector<ExponentVector> minimalize(std::vector<ExponentVector> gens) {
  std::sort(gens.begin(), gens.end());
  gens.erase(std::unique(gens.begin(), gens.end()), gens.end());
  std::vector<ExponentVector> out;
  for (const auto& g : gens) {
    const bool redundant = std::any_of(gens.begin(), gens.end(), [&](const ExponentVector& h) {
      return h != g && h.divides(g);
    });
    if (!redundant) out.push_back(g);
  }
  return out;
}

// Visits every u with 0 <= u_i < bounds_i, last coordinate fastest.
void for_each_in_box(const std::vector<std::uint64_t>& bounds,
                     const std::function<void(const ExponentVector&)>& visit) {
  const std::size_t d = bounds.size();
  for (const auto b : bounds) {
    if (b == 0) return;
  }
  ExponentVector u(d);
  for (;;) {
    visit(u);
    std::size_t i = d;
    while (i > 0) {
      --i;
      if (++u[i] < bounds[i]) break;
      u[i] = 0;
      if (i == 0) return;
    }
    if (d == 0) return;
  }
}

BigRational dot(const Vec& w, const ExponentVector& u) {
  BigRational s;
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (u[i] != 0) s += w[i] * BigRational(static_cast<long>(u[i]));
  }
  return s;
}

BigRational dot(const Vec& a, const Vec& b) {
  BigRational s;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

Vec normalized(Vec v) {
  BigRational sum;
  for (const auto& x : v) sum += x;
  for (auto& x : v) x /= sum;
  return v;
}

std::size_t rank_of(std::vector<Vec> rows) {
  std::size_t rank = 0;
  const std::size_t cols = rows.empty() ? 0 : rows.front().size();
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < rows.size() && rows[pivot][c].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[rank], rows[pivot]);
    for (std::size_t r = rank + 1; r < rows.size(); ++r) {
      if (rows[r][c].is_zero()) continue;
      const BigRational f = rows[r][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[r][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

BigRational determinant(std::vector<Vec> m) {
  const std::size_t n = m.size();
  BigRational det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    while (pivot < n && m[pivot][c].is_zero()) ++pivot;
    if (pivot == n) return BigRational(0);
    if (pivot != c) {
      std::swap(m[pivot], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c].is_zero()) continue;
      const BigRational f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

Vec to_vec(const ExponentVector& u) {
  Vec v;
  for (std::size_t i = 0; i < u.size(); ++i) v.emplace_back(static_cast<long>(u[i]));
  return v;
}

BigRational factorial(std::size_t n) {
  BigRational f(1);
  for (std::size_t k = 2; k <= n; ++k) f *= BigRational(static_cast<long>(k));
  return f;
}

}  // namespace

MonomialIdeal::MonomialIdeal(std::size_t d, std::vector<ExponentVector> generators) : d_(d) {
  if (d > kMaxVariables) throw std::invalid_argument("too many variables");
  for (const auto& g : generators) {
    if (g.size() != d) throw std::invalid_argument("exponent vector length mismatch");
  }
  gens_ = minimalize(std::move(generators));
}

MonomialIdeal MonomialIdeal::from_ideal(const Ideal& ideal) {
  if (ideal.ring()->has_relations()) {
    throw PreconditionError("monomial ideal routines require a polynomial ring without relations");
  }
  if (!ideal.is_monomial()) throw PreconditionError("ideal " + ideal.to_string() + " is not monomial");
  std::vector<ExponentVector> gens;
  for (const auto& g : ideal.generators()) gens.push_back(g.leading_term().exponents);
  return MonomialIdeal(ideal.ring()->num_variables(), std::move(gens));
}

MonomialIdeal MonomialIdeal::maximal(std::size_t d) {
  std::vector<ExponentVector> gens;
  for (std::size_t i = 0; i < d; ++i) {
    ExponentVector e(d);
    e[i] = 1;
    gens.push_back(e);
  }
  return MonomialIdeal(d, std::move(gens));
}

MonomialIdeal MonomialIdeal::diagonal(const std::vector<std::uint32_t>& exponents) {
  const std::size_t d = exponents.size();
  std::vector<ExponentVector> gens;
  for (std::size_t i = 0; i < d; ++i) {
    ExponentVector e(d);
    e[i] = exponents[i];
    gens.push_back(e);
  }
  return MonomialIdeal(d, std::move(gens));
}

Ideal MonomialIdeal::to_ideal(const Ring& ring) const {
  if (ring->num_variables() != d_) throw std::invalid_argument("ring has wrong variable count");
  std::vector<Polynomial> gens;
  for (const auto& g : gens_) gens.push_back(Polynomial::monomial(ring, g));
  return Ideal(ring, std::move(gens));
}

bool MonomialIdeal::is_unit() const noexcept {
  return gens_.size() == 1 && gens_.front().is_one();
}

bool MonomialIdeal::contains(const ExponentVector& u) const noexcept {
  return std::any_of(gens_.begin(), gens_.end(), [&](const ExponentVector& g) {
    return g.divides(u);
  });
}

bool MonomialIdeal::is_zero_dimensional() const noexcept {
  for (std::size_t i = 0; i < d_; ++i) {
    const bool has = std::any_of(gens_.begin(), gens_.end(), [&](const ExponentVector& g) {
      for (std::size_t k = 0; k < d_; ++k) {
        if (k != i && g[k] != 0) return false;
      }
      return true;
    });
    if (!has) return false;
  }
  return true;
}

std::vector<std::uint32_t> MonomialIdeal::pure_powers() const {
  if (!is_zero_dimensional()) throw PreconditionError("monomial ideal is not zero-dimensional");
  std::vector<std::uint32_t> out(d_, std::numeric_limits<std::uint32_t>::max());
  for (const auto& g : gens_) {
    std::size_t support = 0, axis = 0;
    for (std::size_t k = 0; k < d_; ++k) {
      if (g[k] != 0) {
        ++support;
        axis = k;
      }
    }
    if (support == 0) return std::vector<std::uint32_t>(d_, 0);
    if (support == 1) out[axis] = std::min(out[axis], g[axis]);
  }
  return out;
}

MonomialIdeal MonomialIdeal::power(std::uint32_t r) const {
  std::vector<ExponentVector> current{ExponentVector(d_)};
  for (std::uint32_t k = 0; k < r; ++k) {
    std::vector<ExponentVector> next;
    for (const auto& c : current) {
      for (const auto& g : gens_) next.push_back(c * g);
    }
    current = minimalize(std::move(next));
  }
  return MonomialIdeal(d_, std::move(current));
}

MonomialIdeal MonomialIdeal::bracket(std::uint64_t q) const {
  std::vector<ExponentVector> gens;
  for (const auto& g : gens_) gens.push_back(g.scaled(q));
  return MonomialIdeal(d_, std::move(gens));
}

MonomialIdeal MonomialIdeal::operator+(const MonomialIdeal& other) const {
  if (other.d_ != d_) throw std::invalid_argument("dimension mismatch");
  auto gens = gens_;
  gens.insert(gens.end(), other.gens_.begin(), other.gens_.end());
  return MonomialIdeal(d_, std::move(gens));
}

std::vector<ExponentVector> MonomialIdeal::staircase() const {
  const auto powers = pure_powers();
  std::vector<ExponentVector> out;
  for_each_in_box(std::vector<std::uint64_t>(powers.begin(), powers.end()),
                  [&](const ExponentVector& u) {
                    if (!contains(u)) out.push_back(u);
                  });
  return out;
}

std::uint64_t MonomialIdeal::colength() const { return staircase().size(); }

NewtonPolyhedron newton_polyhedron(const MonomialIdeal& a) {
  const std::size_t d = a.dimension();
  require_polyhedral(d);
  if (a.is_zero()) throw PreconditionError("Newton polyhedron of the zero ideal");
  const std::size_t D = d + 1;  // (w, t)

  std::vector<Vec> constraints;
  std::vector<Vec> rays;
  for (std::size_t i = 0; i < D; ++i) {
    Vec e(D);
    e[i] = 1;
    constraints.push_back(e);
    rays.push_back(e);
  }
  const auto zero_set = [&](const Vec& r) {
    std::vector<char> z(constraints.size());
    for (std::size_t k = 0; k < constraints.size(); ++k) z[k] = dot(constraints[k], r).is_zero();
    return z;
  };

  for (const auto& g : a.generators()) {
    Vec row = to_vec(g);
    row.emplace_back(-1);
    std::vector<BigRational> values;
    values.reserve(rays.size());
    for (const auto& r : rays) values.push_back(dot(row, r));
    if (std::none_of(values.begin(), values.end(), [](const BigRational& v) { return v.sign() < 0; })) {
      constraints.push_back(row);
      continue;
    }
    std::vector<std::vector<char>> zeros;
    zeros.reserve(rays.size());
    for (const auto& r : rays) zeros.push_back(zero_set(r));

    std::vector<Vec> next;
    for (std::size_t k = 0; k < rays.size(); ++k) {
      if (values[k].sign() >= 0) next.push_back(rays[k]);
    }
    for (std::size_t i = 0; i < rays.size(); ++i) {
      if (values[i].sign() <= 0) continue;
      for (std::size_t j = 0; j < rays.size(); ++j) {
        if (values[j].sign() >= 0) continue;
        std::vector<char> common(constraints.size());
        std::size_t count = 0;
        for (std::size_t k = 0; k < constraints.size(); ++k) {
          common[k] = zeros[i][k] && zeros[j][k];
          count += common[k] ? 1 : 0;
        }
        if (count + 2 < D) continue;
        bool adjacent = true;
        for (std::size_t m = 0; m < rays.size() && adjacent; ++m) {
          if (m == i || m == j) continue;
          bool contains = true;
          for (std::size_t k = 0; k < constraints.size() && contains; ++k) {
            if (common[k] && !zeros[m][k]) contains = false;
          }
          if (contains) adjacent = false;
        }
        if (!adjacent) continue;
        Vec combo(D);
        for (std::size_t k = 0; k < D; ++k) {
          combo[k] = values[i] * rays[j][k] - values[j] * rays[i][k];
        }
        next.push_back(normalized(std::move(combo)));
      }
    }
    constraints.push_back(row);
    rays = std::move(next);
  }

  NewtonPolyhedron P;
  P.d = d;
  for (const auto& r : rays) {
    if (r[d].sign() <= 0) continue;
    Vec w(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(d));
    for (auto& x : w) x /= r[d];
    P.facets.push_back(std::move(w));
  }
  std::sort(P.facets.begin(), P.facets.end());
  P.facets.erase(std::unique(P.facets.begin(), P.facets.end()), P.facets.end());
  return P;
}

BigRational lambda_shifted(const NewtonPolyhedron& P, const ExponentVector& u) {
  if (P.facets.empty()) throw PreconditionError("lambda is unbounded for the unit ideal");
  ExponentVector shifted = u;
  for (std::size_t i = 0; i < P.d; ++i) shifted[i] += 1;
  BigRational best = dot(P.facets.front(), shifted);
  for (const auto& w : P.facets) best = min(best, dot(w, shifted));
  return best;
}

bool newton_member(const ExponentVector& u, const NewtonPolyhedron& P) {
  return std::all_of(P.facets.begin(), P.facets.end(),
                     [&](const Vec& w) { return dot(w, u) >= BigRational(1); });
}

bool newton_member(const std::vector<BigRational>& u, const NewtonPolyhedron& P) {
  if (std::any_of(u.begin(), u.end(), [](const BigRational& x) { return x.sign() < 0; })) {
    return false;
  }
  return std::all_of(P.facets.begin(), P.facets.end(),
                     [&](const Vec& w) { return dot(w, u) >= BigRational(1); });
}

ThresholdWitness monomial_fthreshold(const MonomialIdeal& a, const MonomialIdeal& J) {
  if (a.dimension() != J.dimension()) throw std::invalid_argument("dimension mismatch");
  if (a.is_zero() || J.is_zero()) throw PreconditionError("ideals must be nonzero");
  if (!J.is_zero_dimensional()) throw PreconditionError("J is not zero-dimensional");
  if (J.is_unit()) throw PreconditionError("J is the unit ideal");
  if (a.is_unit()) throw PreconditionError("a is the unit ideal");
  const auto P = newton_polyhedron(a);
  std::optional<ThresholdWitness> best;
  for (const auto& u : J.staircase()) {
    const BigRational l = lambda_shifted(P, u);
    if (!best || best->value < l) best = ThresholdWitness{l, u};
  }
  return *best;
}

BigRational monomial_fpt(const MonomialIdeal& a) {
  if (a.is_unit()) throw PreconditionError("a is the unit ideal");
  return lambda_shifted(newton_polyhedron(a), ExponentVector(a.dimension()));
}

MonomialTestIdealReport test_ideal_monomial(const MonomialIdeal& a, const BigRational& c) {
  if (c.sign() < 0) throw PreconditionError("exponent c must be nonnegative");
  if (a.is_unit()) throw PreconditionError("a is the unit ideal");
  const auto P = newton_polyhedron(a);
  const std::size_t d = a.dimension();
  // a minimal generator u has u_i * w_i <= c for some facet with w_i > 0
  std::vector<std::uint64_t> bounds(d, 1);
  for (std::size_t i = 0; i < d; ++i) {
    std::optional<BigRational> smallest;
    for (const auto& w : P.facets) {
      if (w[i].sign() > 0 && (!smallest || w[i] < *smallest)) smallest = w[i];
    }
    if (smallest) bounds[i] = (c / *smallest).floor().get_ui() + 2;
  }
  std::vector<ExponentVector> gens;
  for_each_in_box(bounds, [&](const ExponentVector& u) {
    if (lambda_shifted(P, u) > c) gens.push_back(u);
  });
  return {c, MonomialIdeal(d, std::move(gens))};
}

std::vector<BigRational> jumping_exponents(const MonomialIdeal& a, const BigRational& bound) {
  if (!a.is_zero_dimensional()) throw PreconditionError("a is not zero-dimensional");
  if (a.is_unit()) throw PreconditionError("a is the unit ideal");
  const auto P = newton_polyhedron(a);
  const auto powers = a.pure_powers();
  // lambda(u) >= (u_i + 1) / m_i, so u_i < m_i * bound
  std::vector<std::uint64_t> bounds;
  for (const auto m : powers) {
    const BigRational limit = BigRational(static_cast<long>(m)) * bound;
    bounds.push_back(limit.sign() > 0 ? limit.ceil().get_ui() + 1 : 0);
  }
  std::set<BigRational> values;
  for_each_in_box(bounds, [&](const ExponentVector& u) {
    const BigRational l = lambda_shifted(P, u);
    if (l < bound) values.insert(l);
  });
  return {values.begin(), values.end()};
}

CovolumeReport covolume_mult(const MonomialIdeal& a) {
  const std::size_t d = a.dimension();
  require_polyhedral(d);
  if (!a.is_zero_dimensional()) throw PreconditionError("a is not zero-dimensional");
  CovolumeReport report;
  report.colength = a.colength();
  if (a.is_unit() || d == 0) {
    report.covolume = 0;
    report.multiplicity = 0;
    return report;
  }
  const auto P = newton_polyhedron(a);

  // supporting hyperplanes: facets (rhs 1) and coordinate planes (rhs 0)
  struct Plane {
    Vec normal;
    BigRational rhs;
  };
  std::vector<Plane> planes;
  for (const auto& w : P.facets) planes.push_back({w, BigRational(1)});
  for (std::size_t i = 0; i < d; ++i) {
    Vec e(d);
    e[i] = 1;
    planes.push_back({e, BigRational(0)});
  }
  std::vector<Vec> vertices;
  for (const auto& g : a.generators()) {
    std::vector<Vec> tight;
    for (const auto& pl : planes) {
      if (dot(pl.normal, g) == pl.rhs) tight.push_back(pl.normal);
    }
    if (rank_of(tight) == d) vertices.push_back(to_vec(g));
  }
  const auto on_plane = [&](std::size_t v, const Plane& pl) {
    return dot(pl.normal, vertices[v]) == pl.rhs;
  };
  const auto affine_dim = [&](const std::vector<std::size_t>& S) -> std::size_t {
    if (S.empty()) return 0;
    std::vector<Vec> diffs;
    for (std::size_t k = 1; k < S.size(); ++k) {
      Vec dv(d);
      for (std::size_t i = 0; i < d; ++i) dv[i] = vertices[S[k]][i] - vertices[S[0]][i];
      diffs.push_back(std::move(dv));
    }
    return rank_of(std::move(diffs));
  };

  // pulling triangulation of the face spanned by S (dimension k)
  std::function<std::vector<std::vector<std::size_t>>(const std::vector<std::size_t>&, std::size_t)>
      triangulate = [&](const std::vector<std::size_t>& S, std::size_t k) {
        std::vector<std::vector<std::size_t>> out;
        if (k == 0) {
          out.push_back({S.front()});
          return out;
        }
        const std::size_t apex = S.front();
        std::set<std::vector<std::size_t>> faces;
        for (const auto& pl : planes) {
          std::vector<std::size_t> T;
          for (const auto v : S) {
            if (on_plane(v, pl)) T.push_back(v);
          }
          if (T.size() < k || T.size() == S.size()) continue;
          if (std::find(T.begin(), T.end(), apex) != T.end()) continue;
          if (affine_dim(T) != k - 1) continue;
          faces.insert(std::move(T));
        }
        for (const auto& T : faces) {
          for (auto simplex : triangulate(T, k - 1)) {
            simplex.push_back(apex);
            out.push_back(std::move(simplex));
          }
        }
        return out;
      };

  BigRational total;
  for (const auto& w : P.facets) {
    std::vector<std::size_t> S;
    for (std::size_t v = 0; v < vertices.size(); ++v) {
      if (dot(w, vertices[v]) == BigRational(1)) S.push_back(v);
    }
    for (const auto& simplex : triangulate(S, d - 1)) {
      std::vector<Vec> m;
      for (const auto v : simplex) m.push_back(vertices[v]);
      total += determinant(std::move(m)).abs();
    }
  }
  report.covolume = total / factorial(d);
  report.multiplicity = total;
  return report;
}

std::uint64_t nu_monomial_oracle(const MonomialIdeal& a, const MonomialIdeal& J, std::uint64_t q,
                                 std::uint64_t max_cells) {
  if (a.dimension() != J.dimension()) throw std::invalid_argument("dimension mismatch");
  if (!J.is_zero_dimensional()) throw PreconditionError("J is not zero-dimensional");
  if (J.is_unit()) throw PreconditionError("J is the unit ideal");
  if (a.is_unit()) throw PreconditionError("a is the unit ideal");
  const std::size_t d = a.dimension();
  const auto powers = J.pure_powers();
  std::vector<std::uint64_t> bounds;
  std::uint64_t cells = 1;
  for (const auto m : powers) {
    bounds.push_back(q * m);
    if (cells > max_cells / bounds.back()) {
      throw BudgetExceeded("monomial nu oracle: staircase box exceeds " +
                           std::to_string(max_cells) + " cells");
    }
    cells *= bounds.back();
  }
  const MonomialIdeal Jq = J.bracket(q);
  std::vector<std::uint64_t> stride(d, 1);
  for (std::size_t i = d; i-- > 1;) stride[i - 1] = stride[i] * bounds[i];
  std::vector<std::uint32_t> ord(cells, 0);
  std::uint64_t best = 0;
  std::uint64_t index = 0;
  for_each_in_box(bounds, [&](const ExponentVector& u) {
    std::uint32_t value = 0;
    for (const auto& g : a.generators()) {
      if (!g.divides(u)) continue;
      std::uint64_t back = index;
      for (std::size_t i = 0; i < d; ++i) back -= g[i] * stride[i];
      value = std::max(value, ord[back] + 1);
    }
    ord[index] = value;
    if (value > best && !Jq.contains(u)) best = value;
    ++index;
  });
  return best;
}

}  // namespace fthresh
