#include <doctest.h>

#include <algorithm>
#include <random>

#include "fthresh/bounds.hpp"
#include "fthresh/multiplicity.hpp"
#include "fthresh/newton.hpp"
#include "fthresh/session.hpp"

using namespace fthresh;

namespace {

bool has(const std::vector<std::string>& v, const std::string& s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

}  // namespace

TEST_CASE("colengths") {
  const auto f5 = parse_session("char 5\nvars x y\nideal M = x^2, y^2\nideal P = y\n");
  CHECK(colength(f5.ideal("M")) == 4);
  CHECK_THROWS_AS(colength(f5.ideal("P")), PreconditionError);
  const auto e8 = parse_session("char 7\nvars x y z\nrel x^2+y^3+z^5\nideal a = x, z\nideal J = y, z\n");
  CHECK(colength(e8.ideal("J")) == 2);
  CHECK(colength(e8.ideal("a")) == 3);
}

TEST_CASE("parameter multiplicities") {
  const auto e8 = parse_session("char 7\nvars x y z\nrel x^2+y^3+z^5\nideal a = x, z\nideal J = y, z\n");
  const auto r = mult_parameter(e8.ideal("J"));
  CHECK(r.multiplicity == 2);
  CHECK(r.method == MultiplicityMethod::colength_cm);
  CHECK(to_string(r.method) == "colength_CM");
  CHECK(has(r.assumptions, "Cohen-Macaulay verified: hypersurface"));
  CHECK(has(r.assumptions, "parameter ideal verified by dimension check"));
  CHECK(mult_parameter(e8.ideal("a")).multiplicity == 3);

  const auto f5 = parse_session("char 5\nvars x y\nideal a = x^2, y^3\nideal b = x^2, y^3, x*y\n");
  CHECK(mult_parameter(f5.ideal("a")).multiplicity == 6);
  CHECK(mult_parameter(f5.ideal("a")).multiplicity ==
        covolume_mult(MonomialIdeal::from_ideal(f5.ideal("a"))).multiplicity);
  CHECK_THROWS_AS(mult_parameter(f5.ideal("b")), PreconditionError);

  const auto a1 = parse_session("char 3\nvars x y z\nrel xy - z^2\nideal m = x, y, z\nideal J = x, y\n");
  CHECK_THROWS_AS(mult_parameter(a1.ideal("m")), PreconditionError);
  // (x, y) is a system of parameters of the A1 point, colength 2 = e(m)
  CHECK(mult_parameter(a1.ideal("J")).multiplicity == 2);
  CHECK(colength(a1.ideal("m")) == 1);

  const auto ci = parse_session("char 3\nvars x y z w\nrel xy - z^2\nrel zw - x^3\nideal J = y, w\n");
  const auto rc = mult_parameter(ci.ideal("J"));
  CHECK(rc.multiplicity == 6);
  CHECK(has(rc.assumptions, "CM assumed"));
}

TEST_CASE("diagonal parameter ideals have product multiplicity") {
  const auto s = parse_session("char 2\nvars x y z\nideal J = x^3, y^2, z^5\n");
  CHECK(mult_parameter(s.ideal("J")).multiplicity == 30);
  CHECK(mult_parameter(bracket_power(s.ideal("J"), 2)).multiplicity == 240);
}

TEST_CASE("Hilbert-Samuel estimates") {
  const auto f5 = parse_session("char 5\nvars x y\nideal a = x^2, y^3\nideal m = x, y\n");
  const auto h = hs_estimate(f5.ideal("a"), 2);
  CHECK(h.lengths == std::vector<std::uint64_t>{6, 18});
  CHECK(h.values == std::vector<BigRational>{12, 9});
  CHECK(*h.extrapolation == 6);

  const auto hm = hs_estimate(f5.ideal("m"), 4);
  CHECK(hm.values.front() == 2);
  CHECK(hm.values[1] == BigRational(3, 2));
  CHECK(*hm.extrapolation == 1);
  CHECK(hm.stabilized);

  const auto a1 = parse_session("char 3\nvars x y z\nrel xy - z^2\nideal m = x, y, z\n");
  const auto ha = hs_estimate(a1.ideal("m"), 3);
  CHECK(ha.lengths == std::vector<std::uint64_t>{1, 4, 9});
  CHECK(*ha.extrapolation == 2);
  CHECK(ha.stabilized);
  const auto rm = multiplicity(a1.ideal("m"));
  CHECK(rm.method == MultiplicityMethod::hs_limit_estimate);
  CHECK_FALSE(rm.exact);
  CHECK(rm.multiplicity == 2);
  CHECK(has(rm.assumptions, "estimate"));
}

TEST_CASE("Hilbert-Samuel extrapolation matches covolume on the battery") {
  for (const auto& [a, exps] : battery_instances(20260101, 25)) {
    const std::size_t d = a.dimension();
    if (d > 2) continue;
    const auto R = RingContext::make(2, d == 1 ? std::vector<std::string>{"x"}
                                               : std::vector<std::string>{"x", "y"});
    const auto h = hs_estimate(a.to_ideal(R), 7);
    CHECK(h.stabilized);
    CHECK(*h.extrapolation == covolume_mult(a).multiplicity);
  }
}

TEST_CASE("multiplicity is unchanged by adding integral elements") {
  const auto R = RingContext::make(2, {"x", "y"});
  const auto a = MonomialIdeal(2, {{4, 0}, {0, 4}});
  const auto abar = MonomialIdeal(2, {{4, 0}, {0, 4}, {2, 2}, {3, 1}, {1, 3}});
  CHECK(covolume_mult(a).multiplicity == covolume_mult(abar).multiplicity);
  const auto r = multiplicity(abar.to_ideal(R));
  CHECK(r.method == MultiplicityMethod::covolume_monomial);
  CHECK(r.multiplicity == 16);
}

TEST_CASE("colength bounds e/d! on the battery") {
  for (const auto& [a, exps] : battery_instances(7, 40)) {
    BigRational fact(1);
    for (std::size_t k = 2; k <= a.dimension(); ++k) fact *= BigRational(static_cast<long>(k));
    CHECK(BigRational(static_cast<long>(a.colength())) >= covolume_mult(a).multiplicity / fact);
  }
}

TEST_CASE("non primary ideals are rejected") {
  const auto s = parse_session("char 3\nvars x y\nideal a = x + 1, y\nideal b = x*y\n");
  CHECK_THROWS_AS(multiplicity(s.ideal("a")), PreconditionError);
  CHECK_THROWS_AS(multiplicity(s.ideal("b")), PreconditionError);
  CHECK_THROWS_AS(hs_estimate(s.ideal("b"), 2), PreconditionError);
}
