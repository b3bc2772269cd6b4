#pragma once

// Independent reference computations for the tests. Nothing here uses the
// library: polynomials are plain maps, membership is Gaussian elimination in
// a single graded degree, and LPs are solved by a dense exact simplex.

#include <gmpxx.h>

#include <algorithm>
#include <climits>
#include <cstdint>
#include <functional>
#include <map>
#include <stdexcept>
#include <vector>

namespace oracle {

using Exps = std::vector<int>;
using Poly = std::map<Exps, std::int64_t>;

inline std::int64_t mod(std::int64_t v, std::int64_t p) {
  v %= p;
  return v < 0 ? v + p : v;
}

inline std::int64_t inverse(std::int64_t a, std::int64_t p) {
  std::int64_t r = 1, b = mod(a, p), e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * b % p;
    b = b * b % p;
    e >>= 1;
  }
  return r;
}

inline int degree(const Exps& u) {
  int d = 0;
  for (int x : u) d += x;
  return d;
}

inline Poly mul(const Poly& a, const Poly& b, std::int64_t p) {
  Poly out;
  for (const auto& [u, c] : a) {
    for (const auto& [v, k] : b) {
      Exps w(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) w[i] = u[i] + v[i];
      auto& slot = out[w];
      slot = mod(slot + c * k, p);
    }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

inline Poly power(const Poly& f, int n, std::int64_t p) {
  Poly r{{Exps(f.begin()->first.size(), 0), 1}};
  for (int i = 0; i < n; ++i) r = mul(r, f, p);
  return r;
}

inline Poly monomial(const Exps& u) { return Poly{{u, 1}}; }

inline void monomials_of_degree(int nvars, int d, Exps& cur, int i, std::vector<Exps>& out) {
  if (i == nvars - 1) {
    cur[i] = d;
    out.push_back(cur);
    return;
  }
  for (int k = d; k >= 0; --k) {
    cur[i] = k;
    monomials_of_degree(nvars, d - k, cur, i + 1, out);
  }
}

inline std::vector<Exps> monomials_of_degree(int nvars, int d) {
  std::vector<Exps> out;
  if (d < 0) return out;
  Exps cur(nvars, 0);
  monomials_of_degree(nvars, d, cur, 0, out);
  return out;
}

inline int poly_degree(const Poly& f) {
  if (f.empty()) throw std::invalid_argument("zero polynomial has no degree");
  const int d = degree(f.begin()->first);
  for (const auto& [u, c] : f) {
    if (degree(u) != d) throw std::invalid_argument("polynomial is not homogeneous");
  }
  return d;
}

/// Degree-D part of a homogeneous ideal as a dense row-echelon span over F_p.
class GradedSpan {
 public:
  GradedSpan(std::int64_t p, int nvars, const std::vector<Poly>& gens, int D) : p_(p) {
    const auto cols = monomials_of_degree(nvars, D);
    for (std::size_t i = 0; i < cols.size(); ++i) index_[cols[i]] = i;
    pivot_row_.assign(cols.size(), -1);
    for (const auto& g : gens) {
      if (g.empty()) continue;
      const int dg = poly_degree(g);
      for (const auto& m : monomials_of_degree(nvars, D - dg)) insert(dense(mul(g, monomial(m), p_)));
    }
  }

  bool contains(const Poly& f) const {
    if (f.empty()) return true;
    if (poly_degree(f) != degree(index_.begin()->first)) return false;
    auto v = dense(f);
    reduce(v);
    return std::all_of(v.begin(), v.end(), [](std::int64_t x) { return x == 0; });
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::vector<std::int64_t> dense(const Poly& f) const {
    std::vector<std::int64_t> v(index_.size(), 0);
    for (const auto& [u, c] : f) v[index_.at(u)] = c;
    return v;
  }

  void reduce(std::vector<std::int64_t>& v) const {
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (v[j] == 0 || pivot_row_[j] < 0) continue;
      const auto& row = rows_[static_cast<std::size_t>(pivot_row_[j])];
      const std::int64_t c = v[j];
      for (std::size_t k = j; k < v.size(); ++k) {
        if (row[k]) v[k] = mod(v[k] - c * row[k], p_);
      }
    }
  }

  void insert(std::vector<std::int64_t> v) {
    reduce(v);
    const auto it = std::find_if(v.begin(), v.end(), [](std::int64_t x) { return x != 0; });
    if (it == v.end()) return;
    const std::size_t j = static_cast<std::size_t>(it - v.begin());
    const std::int64_t inv = inverse(v[j], p_);
    for (auto& x : v) x = x * inv % p_;
    pivot_row_[j] = static_cast<long>(rows_.size());
    rows_.push_back(std::move(v));
  }

  std::int64_t p_;
  std::map<Exps, std::size_t> index_;
  std::vector<long> pivot_row_;
  std::vector<std::vector<std::int64_t>> rows_;
};

/// f in the homogeneous ideal generated by gens.
inline bool graded_member(std::int64_t p, int nvars, const std::vector<Poly>& gens, const Poly& f) {
  if (f.empty()) return true;
  return GradedSpan(p, nvars, gens, poly_degree(f)).contains(f);
}

/// All products of r generators (with repetition), homogeneous gens only.
inline void products(const std::vector<Poly>& gens, int r, std::int64_t p, std::size_t start,
                     const Poly& acc, const std::function<bool(const Poly&)>& visit, bool& stop) {
  if (stop) return;
  if (r == 0) {
    if (!visit(acc)) stop = true;
    return;
  }
  for (std::size_t i = start; i < gens.size() && !stop; ++i) {
    products(gens, r - 1, p, i, mul(acc, gens[i], p), visit, stop);
  }
}

/// a^r not in J^[q] + rels, inputs homogeneous and a generated in one
/// degree. Containment is monotone in r, so nu = r iff this holds at r and
/// fails at r + 1.
inline bool power_escapes(std::int64_t p, int nvars, const std::vector<Poly>& a,
                          const std::vector<Poly>& J, const std::vector<Poly>& rels, int q, int r) {
  std::vector<Poly> ideal = rels;
  for (const auto& g : J) ideal.push_back(power(g, q, p));
  const GradedSpan span(p, nvars, ideal, r * poly_degree(a.front()));
  bool stop = false;
  products(a, r, p, 0, monomial(Exps(nvars, 0)),
           [&](const Poly& f) { return f.empty() || span.contains(f); }, stop);
  return stop;
}

/// max c.x subject to A x <= b, x >= 0, with b >= 0. Dense simplex with
/// Bland's rule over exact rationals. Throws on unboundedness.
inline mpq_class lp_max(const std::vector<std::vector<mpq_class>>& A, const std::vector<mpq_class>& b,
                        const std::vector<mpq_class>& c) {
  const std::size_t m = A.size(), n = c.size();
  // tableau rows: [A | I | b], objective row: [-c | 0 | 0]
  std::vector<std::vector<mpq_class>> T(m + 1, std::vector<mpq_class>(n + m + 1));
  std::vector<std::size_t> basis(m);
  for (std::size_t i = 0; i < m; ++i) {
    if (b[i] < 0) throw std::invalid_argument("lp_max needs b >= 0");
    for (std::size_t j = 0; j < n; ++j) T[i][j] = A[i][j];
    T[i][n + i] = 1;
    T[i][n + m] = b[i];
    basis[i] = n + i;
  }
  for (std::size_t j = 0; j < n; ++j) T[m][j] = -c[j];
  for (;;) {
    std::size_t enter = n + m;
    for (std::size_t j = 0; j < n + m; ++j) {
      if (T[m][j] < 0) {
        enter = j;
        break;
      }
    }
    if (enter == n + m) return T[m][n + m];
    std::size_t leave = m;
    mpq_class best;
    for (std::size_t i = 0; i < m; ++i) {
      if (T[i][enter] <= 0) continue;
      const mpq_class ratio = T[i][n + m] / T[i][enter];
      if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
        leave = i;
        best = ratio;
      }
    }
    if (leave == m) throw std::runtime_error("unbounded LP");
    const mpq_class piv = T[leave][enter];
    for (auto& v : T[leave]) v /= piv;
    for (std::size_t i = 0; i <= m; ++i) {
      if (i == leave || T[i][enter] == 0) continue;
      const mpq_class f = T[i][enter];
      for (std::size_t j = 0; j <= n + m; ++j) T[i][j] -= f * T[leave][j];
    }
    basis[leave] = enter;
  }
}

/// lambda(u) = max t with u + 1 in t * (conv(gens) + orthant), as the LP
/// max sum(y) s.t. sum y_g g <= u + 1, y >= 0.
inline mpq_class lambda_lp(const std::vector<Exps>& gens, const Exps& u) {
  const std::size_t d = u.size();
  std::vector<std::vector<mpq_class>> A(d, std::vector<mpq_class>(gens.size()));
  std::vector<mpq_class> b(d), c(gens.size(), 1);
  for (std::size_t i = 0; i < d; ++i) {
    b[i] = u[i] + 1;
    for (std::size_t k = 0; k < gens.size(); ++k) A[i][k] = gens[k][i];
  }
  return lp_max(A, b, c);
}

/// u in P(gens): lambda(u - 1) >= 1, written directly as feasibility of
/// sum y_g g <= u with sum y = 1 through the same LP.
inline bool newton_member_lp(const std::vector<Exps>& gens, const Exps& u) {
  std::vector<std::vector<mpq_class>> A(u.size(), std::vector<mpq_class>(gens.size()));
  std::vector<mpq_class> b(u.size()), c(gens.size(), 1);
  for (std::size_t i = 0; i < u.size(); ++i) {
    b[i] = u[i];
    for (std::size_t k = 0; k < gens.size(); ++k) A[i][k] = gens[k][i];
  }
  return lp_max(A, b, c) >= 1;
}

inline bool divides(const Exps& a, const Exps& b) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] > b[i]) return false;
  }
  return true;
}

/// Largest r with x^u in a^r for a monomial ideal a, by recursion on u.
class PowerTable {
 public:
  explicit PowerTable(std::vector<Exps> gens) : gens_(std::move(gens)) {}

  int operator()(const Exps& u) {
    if (auto it = memo_.find(u); it != memo_.end()) return it->second;
    int best = 0;
    for (const auto& g : gens_) {
      if (!divides(g, u)) continue;
      Exps v(u.size());
      for (std::size_t i = 0; i < u.size(); ++i) v[i] = u[i] - g[i];
      best = std::max(best, (*this)(v) + 1);
    }
    memo_[u] = best;
    return best;
  }

 private:
  std::vector<Exps> gens_;
  std::map<Exps, int> memo_;
};

inline void box(const Exps& hi, Exps& cur, std::size_t i, const std::function<void(const Exps&)>& f) {
  if (i == hi.size()) {
    f(cur);
    return;
  }
  for (int k = 0; k <= hi[i]; ++k) {
    cur[i] = k;
    box(hi, cur, i + 1, f);
  }
}

inline void for_box(const Exps& hi, const std::function<void(const Exps&)>& f) {
  Exps cur(hi.size(), 0);
  box(hi, cur, 0, f);
}

/// max{r : a^r not in J^[q]} for monomial a, J with J zero-dimensional.
inline int monomial_nu(const std::vector<Exps>& a, const std::vector<Exps>& J, int q) {
  PowerTable pt(a);
  const std::size_t d = a.front().size();
  Exps hi(d, INT_MAX);
  for (const auto& g : J) {
    int nz = -1, count = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (g[i]) {
        nz = static_cast<int>(i);
        ++count;
      }
    }
    if (count == 1) hi[nz] = std::min(hi[nz], g[nz] * q - 1);
  }
  int best = -1;
  for_box(hi, [&](const Exps& u) {
    for (const auto& g : J) {
      Exps gq(d);
      for (std::size_t i = 0; i < d; ++i) gq[i] = g[i] * q;
      if (divides(gq, u)) return;
    }
    best = std::max(best, pt(u));
  });
  return best;
}

/// l(R/a^n) for a zero-dimensional monomial ideal, by counting.
inline std::int64_t monomial_colength_power(const std::vector<Exps>& a, int n) {
  PowerTable pt(a);
  const std::size_t d = a.front().size();
  Exps hi(d, INT_MAX);
  for (const auto& g : a) {
    int nz = -1, count = 0;
    for (std::size_t i = 0; i < d; ++i) {
      if (g[i]) {
        nz = static_cast<int>(i);
        ++count;
      }
    }
    if (count == 1) hi[nz] = std::min(hi[nz], g[nz] * n - 1);
  }
  std::int64_t count = 0;
  for_box(hi, [&](const Exps& u) {
    if (pt(u) < n) ++count;
  });
  return count;
}

}  // namespace oracle
