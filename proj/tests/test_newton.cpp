#include <doctest.h>

#include <optional>
#include <random>

#include "bridge.hpp"
#include "fthresh/newton.hpp"

using namespace fthresh;

namespace {

MonomialIdeal mono(std::size_t d, std::vector<ExponentVector> gens) { return MonomialIdeal(d, std::move(gens)); }

BigRational Q(long n, long d = 1) { return BigRational(n, d); }

BigRational from_mpq(const mpq_class& v) { return BigRational::from_mpz(v.get_num(), v.get_den()); }

std::vector<oracle::Exps> exps(const MonomialIdeal& a) {
  std::vector<oracle::Exps> out;
  for (const auto& g : a.generators()) out.push_back(to_exps(g));
  return out;
}

MonomialIdeal random_zero_dim(std::mt19937_64& rng, std::size_t d, std::uint32_t hi) {
  std::uniform_int_distribution<std::uint32_t> pp(1, hi), e(0, hi);
  std::vector<ExponentVector> gens;
  for (std::size_t i = 0; i < d; ++i) {
    ExponentVector u(d);
    u[i] = pp(rng);
    gens.push_back(u);
  }
  for (int k = std::uniform_int_distribution<int>(0, 3)(rng); k > 0; --k) {
    ExponentVector u(d);
    for (std::size_t i = 0; i < d; ++i) u[i] = e(rng);
    if (!u.is_one()) gens.push_back(u);
  }
  return MonomialIdeal(d, gens);
}

}  // namespace

TEST_CASE("monomial ideals are minimalized") {
  const auto a = mono(2, {{2, 0}, {2, 1}, {0, 3}, {1, 3}});
  CHECK(a.generators().size() == 2);
  CHECK(a.is_zero_dimensional());
  CHECK(a.pure_powers() == std::vector<std::uint32_t>{2, 3});
  CHECK(a.colength() == 6);
  CHECK(a.contains({3, 0}));
  CHECK_FALSE(a.contains({1, 2}));
  CHECK_FALSE(mono(2, {{1, 1}}).is_zero_dimensional());
  CHECK(mono(2, {{0, 0}}).is_unit());
  CHECK(MonomialIdeal::maximal(2).power(2) == mono(2, {{2, 0}, {1, 1}, {0, 2}}));
  CHECK(a.bracket(2) == mono(2, {{4, 0}, {0, 6}}));
}

TEST_CASE("Newton polyhedra facets") {
  using Facets = std::vector<std::vector<BigRational>>;
  CHECK(newton_polyhedron(mono(2, {{2, 0}, {0, 3}})).facets == Facets{{Q(1, 2), Q(1, 3)}});
  CHECK(newton_polyhedron(mono(2, {{2, 0}, {0, 2}})).facets == Facets{{Q(1, 2), Q(1, 2)}});
  CHECK(newton_polyhedron(mono(2, {{2, 0}, {1, 1}, {0, 3}})).facets ==
        Facets{{Q(1, 2), Q(1, 2)}, {Q(2, 3), Q(1, 3)}});
  CHECK(newton_polyhedron(MonomialIdeal::maximal(3)).facets == Facets{{Q(1), Q(1), Q(1)}});
  CHECK_THROWS(newton_polyhedron(mono(2, {})));
  CHECK_THROWS(newton_polyhedron(MonomialIdeal::maximal(5)));
}

TEST_CASE("facet description agrees with LP feasibility") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 2 + trial % 3;
    const auto a = random_zero_dim(rng, d, 5);
    const auto P = newton_polyhedron(a);
    const auto gens = exps(a);
    for (const auto& w : P.facets) {
      bool tight = false;
      for (const auto& g : a.generators()) {
        BigRational dot;
        for (std::size_t i = 0; i < d; ++i) dot += w[i] * Q(g[i]);
        CHECK(dot >= 1);
        tight = tight || dot == 1;
      }
      CHECK(tight);
    }
    std::uniform_int_distribution<int> coord(0, 24);
    for (int k = 0; k < 40; ++k) {
      std::vector<BigRational> u(d);
      oracle::Exps scaled(d);
      for (std::size_t i = 0; i < d; ++i) {
        scaled[i] = coord(rng);
        u[i] = Q(scaled[i], 4);
      }
      // u in P iff 4u in 4P
      std::vector<oracle::Exps> g4;
      for (auto g : gens) {
        for (auto& x : g) x *= 4;
        g4.push_back(g);
      }
      CHECK(newton_member(u, P) == oracle::newton_member_lp(g4, scaled));
    }
  }
}

TEST_CASE("shifted lambda") {
  const auto P = newton_polyhedron(mono(2, {{2, 0}, {0, 3}}));
  CHECK(lambda_shifted(P, {0, 0}) == Q(5, 6));
  CHECK(lambda_shifted(P, {3, 3}) == Q(10, 3));
  CHECK(lambda_shifted(newton_polyhedron(MonomialIdeal::maximal(2)), {1, 1}) == 4);
}

TEST_CASE("lambda matches the LP scaling definition") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = 1 + trial % 4;
    const auto a = random_zero_dim(rng, d, 5);
    const auto P = newton_polyhedron(a);
    std::uniform_int_distribution<std::uint32_t> e(0, 6);
    for (int k = 0; k < 10; ++k) {
      ExponentVector u(d);
      for (std::size_t i = 0; i < d; ++i) u[i] = e(rng);
      CHECK(lambda_shifted(P, u) == from_mpq(oracle::lambda_lp(exps(a), to_exps(u))));
    }
  }
}

TEST_CASE("exact monomial thresholds") {
  const auto a = mono(2, {{2, 0}, {0, 3}});
  const auto J = mono(2, {{4, 0}, {0, 4}});
  const auto w = monomial_fthreshold(a, J);
  CHECK(w.value == Q(10, 3));
  CHECK(w.argmax == ExponentVector{3, 3});
  // m^k against m^l in d variables: (d + l - 1) / k
  CHECK(monomial_fthreshold(MonomialIdeal::maximal(2).power(2), MonomialIdeal::maximal(2).power(3)).value == 2);
  CHECK(monomial_fthreshold(MonomialIdeal::maximal(3).power(2), MonomialIdeal::maximal(3).power(2)).value ==
        Q(4, 2));
  CHECK(monomial_fthreshold(MonomialIdeal::maximal(2), mono(2, {{2, 0}, {0, 2}})).value == 4);
  CHECK_THROWS_AS(monomial_fthreshold(a, mono(2, {{1, 1}})), PreconditionError);
  CHECK(monomial_fpt(a) == Q(5, 6));
}

TEST_CASE("threshold equals the LP maximum over the staircase") {
  std::mt19937_64 rng(77);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto a = random_zero_dim(rng, d, 4);
    const auto J = random_zero_dim(rng, d, 4);
    mpq_class best = 0;
    for (const auto& u : J.staircase()) best = std::max(best, oracle::lambda_lp(exps(a), to_exps(u)));
    CHECK(monomial_fthreshold(a, J).value == from_mpq(best));
    // scaling law
    CHECK(monomial_fthreshold(a.power(2), J).value == monomial_fthreshold(a, J).value / 2);
  }
}

TEST_CASE("test ideals and jumping exponents") {
  const auto a = mono(2, {{2, 0}, {0, 3}});
  CHECK(test_ideal_monomial(a, Q(5, 6)).ideal == MonomialIdeal::maximal(2));
  CHECK(test_ideal_monomial(MonomialIdeal::maximal(2), 0).ideal == mono(2, {{0, 0}}));
  CHECK(jumping_exponents(a, Q(3, 2)) == std::vector<BigRational>{Q(5, 6), Q(7, 6), Q(4, 3)});
  CHECK_THROWS(test_ideal_monomial(a, -1));
}

TEST_CASE("test ideals decrease and jump exactly at the jumping exponents") {
  const auto a = mono(2, {{2, 0}, {1, 1}, {0, 3}});
  const auto jumps = jumping_exponents(a, Q(3));
  std::optional<MonomialIdeal> prev;
  std::vector<BigRational> seen;
  for (long k = 0; k <= 72; ++k) {
    const BigRational c(k, 24);
    const auto t = test_ideal_monomial(a, c).ideal;
    if (prev) {
      for (const auto& g : t.generators()) CHECK(prev->contains(g));
    }
    // a jump at c means tau(a^c) differs from tau(a^(c - eps))
    if (k > 0) {
      const auto before = test_ideal_monomial(a, c - BigRational(1, 10000)).ideal;
      if (!(before == t) && c < 3) seen.push_back(c);
    }
    prev = t;
  }
  for (const auto& c : seen) CHECK(std::find(jumps.begin(), jumps.end(), c) != jumps.end());
  CHECK(jumps.front() == monomial_fpt(a));
}

TEST_CASE("threshold is the smallest c with tau inside J") {
  std::mt19937_64 rng(8);
  for (int trial = 0; trial < 15; ++trial) {
    const std::size_t d = 1 + trial % 2;
    const auto a = random_zero_dim(rng, d, 3);
    const auto J = random_zero_dim(rng, d, 3);
    const auto c = monomial_fthreshold(a, J).value;
    const auto inside = [&](const BigRational& t) {
      const auto tau = test_ideal_monomial(a, t).ideal;
      for (const auto& g : tau.generators()) {
        if (!J.contains(g)) return false;
      }
      return true;
    };
    CHECK(inside(c));
    CHECK_FALSE(inside(c - BigRational(1, 1000)));
  }
}

TEST_CASE("Newton membership") {
  const auto P = newton_polyhedron(mono(2, {{2, 0}, {0, 2}}));
  CHECK(newton_member(ExponentVector{1, 1}, P));
  CHECK_FALSE(newton_member(ExponentVector{1, 0}, P));
  CHECK(newton_member(ExponentVector{2, 0}, P));
}

TEST_CASE("covolume multiplicities") {
  const auto r = covolume_mult(mono(2, {{2, 0}, {0, 3}}));
  CHECK(r.covolume == 3);
  CHECK(r.multiplicity == 6);
  CHECK(r.colength == 6);
  for (std::uint32_t k = 1; k <= 4; ++k) {
    CHECK(covolume_mult(MonomialIdeal::maximal(2).power(k)).multiplicity == Q(k * k));
    CHECK(covolume_mult(MonomialIdeal::maximal(3).power(k)).multiplicity == Q(k * k * k));
  }
  CHECK(covolume_mult(mono(2, {{3, 0}, {0, 5}})).multiplicity == 15);
  CHECK(covolume_mult(mono(2, {{4, 0}, {1, 1}, {0, 4}})).multiplicity == 8);
  CHECK_THROWS(covolume_mult(mono(2, {{1, 1}})));
}

TEST_CASE("covolume agrees with Hilbert-Samuel differences") {
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t d = 1 + trial % 3;
    const auto a = random_zero_dim(rng, d, 3);
    const auto gens = exps(a);
    // for monomial ideals l(R/a^n) is polynomial for large n; the d-th
    // difference of consecutive values is then e(a)
    const int n0 = 6;
    std::vector<mpz_class> vals;
    for (int n = n0; n <= n0 + static_cast<int>(d); ++n) vals.push_back(oracle::monomial_colength_power(gens, n));
    for (std::size_t k = 0; k < d; ++k) {
      for (std::size_t i = 0; i + 1 < vals.size() - k; ++i) vals[i] = vals[i + 1] - vals[i];
    }
    CHECK(covolume_mult(a).multiplicity == BigRational::from_mpz(vals.front(), 1));
    CHECK(covolume_mult(a).colength == static_cast<std::uint64_t>(oracle::monomial_colength_power(gens, 1)));
  }
}

TEST_CASE("nu oracle values") {
  const auto a = mono(2, {{2, 0}, {0, 3}});
  const auto J = mono(2, {{4, 0}, {0, 4}});
  CHECK(nu_monomial_oracle(a, J, 2) == 5);
  CHECK(nu_monomial_oracle(a, J, 4) == 12);
  CHECK(nu_monomial_oracle(a, J, 8) == 25);
  for (std::uint64_t q : {2u, 3u, 4u, 9u}) {
    CHECK(nu_monomial_oracle(MonomialIdeal::maximal(2), MonomialIdeal::maximal(2), q) == 2 * (q - 1));
  }
  CHECK_THROWS_AS(nu_monomial_oracle(a, J, 1u << 20, 1000), BudgetExceeded);
}
