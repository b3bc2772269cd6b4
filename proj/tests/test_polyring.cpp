#include <doctest.h>

#include <random>

#include "fthresh/errors.hpp"
#include "fthresh/polyring.hpp"
#include "fthresh/session.hpp"

using namespace fthresh;

namespace {

Polynomial parse(const Ring& R, const char* text) { return parse_polynomial(R, text); }

Polynomial random_poly(const Ring& R, std::mt19937_64& rng, int terms, int maxdeg) {
  std::uniform_int_distribution<int> e(0, maxdeg);
  std::uniform_int_distribution<std::int64_t> c(0, 1000);
  Terms t;
  for (int i = 0; i < terms; ++i) {
    ExponentVector u(R->num_variables());
    for (std::size_t j = 0; j < R->num_variables(); ++j) u[j] = e(rng);
    t.push_back({u, R->field().element(c(rng)).residue});
  }
  return Polynomial(R, t);
}

}  // namespace

TEST_CASE("grevlex and lex comparisons") {
  const MonomialOrder grevlex{};
  const MonomialOrder lex{OrderKind::lex};
  CHECK(order_compare({1, 1, 0}, {0, 0, 2}, grevlex) == std::strong_ordering::greater);
  CHECK(order_compare({1, 0}, {0, 5}, lex) == std::strong_ordering::greater);
  CHECK(order_compare({3, 0}, {2, 1}, grevlex) == std::strong_ordering::greater);
  CHECK(order_compare({2, 1, 0}, {2, 1, 0}, grevlex) == std::strong_ordering::equal);
  CHECK_THROWS_AS(order_compare({1, 0}, {1, 0, 0}, grevlex), std::invalid_argument);
}

TEST_CASE("orders are total, transitive and multiplicative") {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::uint32_t> e(0, 6);
  for (const MonomialOrder ord : {MonomialOrder{}, MonomialOrder{OrderKind::lex}}) {
    for (int i = 0; i < 300; ++i) {
      ExponentVector a(3), b(3), c(3);
      for (int j = 0; j < 3; ++j) {
        a[j] = e(rng);
        b[j] = e(rng);
        c[j] = e(rng);
      }
      const auto ab = order_compare(a, b, ord);
      CHECK(order_compare(b, a, ord) == 0 <=> ab);
      CHECK(order_compare(a * c, b * c, ord) == ab);
      if (ab < 0 && order_compare(b, c, ord) < 0) CHECK(order_compare(a, c, ord) < 0);
      CHECK(order_compare(ExponentVector(3), a * c, ord) <= 0);
    }
  }
}

TEST_CASE("polynomial arithmetic") {
  const auto R2 = RingContext::make(2, {"x", "y"});
  CHECK(pow(parse(R2, "x+y"), 2) == parse(R2, "x^2+y^2"));
  const auto R3 = RingContext::make(3, {"x", "y"});
  CHECK(pow(parse(R3, "x+y"), 3) == parse(R3, "x^3+y^3"));
  const auto R5 = RingContext::make(5, {"x", "y"});
  const auto prod = parse(R5, "x+y") * parse(R5, "x-y");
  CHECK(prod == parse(R5, "x^2+4y^2"));
  CHECK(prod.to_string() == "x^2 + 4*y^2");
  CHECK((parse(R5, "x") - parse(R5, "x")).is_zero());
  const auto other = RingContext::make(7, {"x", "y"});
  CHECK_THROWS(parse(R5, "x") + parse(other, "x"));
}

TEST_CASE("ring laws and Frobenius on random samples") {
  std::mt19937_64 rng(17);
  for (std::uint32_t p : {2u, 3u, 5u, 7u}) {
    const auto R = RingContext::make(p, {"x", "y", "z"});
    for (int i = 0; i < 100; ++i) {
      const auto f = random_poly(R, rng, 4, 3);
      const auto g = random_poly(R, rng, 3, 3);
      const auto h = random_poly(R, rng, 3, 2);
      CHECK((f + g) + h == f + (g + h));
      CHECK(f * g == g * f);
      CHECK(f * (g + h) == f * g + f * h);
      CHECK(pow(f, p) == frobenius_pow(f, p));
    }
    const auto f = random_poly(R, rng, 3, 2);
    CHECK(pow(f, p * p) == frobenius_pow(f, p * p));
    CHECK_THROWS_AS(frobenius_pow(f, p + 1), std::invalid_argument);
  }
}

TEST_CASE("session parsing") {
  const auto s = parse_session("char 7\nvars x y z\nrel x^2+y^3+z^5\nideal a = x, z\nideal J = y, z\n");
  CHECK(s.ring->characteristic() == 7);
  CHECK(s.ring->relation_terms().size() == 1);
  CHECK(s.ideal("a").num_generators() == 2);
  CHECK(s.has_ideal("J"));
  CHECK_THROWS_AS(s.ideal("b"), PreconditionError);

  const auto t = parse_session("char 5\nvars x y\nideal m = x, y\n");
  CHECK_FALSE(t.ring->has_relations());
  CHECK(t.ideal("m").to_string() == "(x, y)");

  const auto u = parse_session("# comment\nchar 3\nvars x y z\nideal I = 2*x*y - z^2, (x+y)^2, xy\n");
  CHECK(u.ideal("I").generators()[0] == parse(u.ring, "-x*y+2z^2"));
  CHECK(u.ideal("I").generators()[1] == parse(u.ring, "x^2+2xy+y^2"));
  CHECK(u.ideal("I").generators()[2] == parse(u.ring, "x*y"));
}

TEST_CASE("session errors carry positions") {
  CHECK_THROWS_WITH_AS(parse_session("char 4\nvars x\n"), doctest::Contains("not prime"), ParseError);
  try {
    parse_session("char 5\nvars x y\nideal a = x + w\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
    CHECK(std::string(e.what()).find("unknown variable") != std::string::npos);
  }
  CHECK_THROWS_AS(parse_session("char 5\nvars x\nideal a = x\nideal a = x^2\n"), ParseError);
  CHECK_THROWS_AS(parse_session("char 5\nvars x\nideal a = x +\n"), ParseError);
  CHECK_THROWS_AS(parse_session("vars x\nideal a = x\n"), ParseError);
  CHECK_THROWS_AS(parse_session("char 5\nvars a b c d e f g h i\n"), ParseError);
  CHECK_THROWS_AS(parse_session("char 5\nvars x\nfrobnicate\n"), ParseError);
}

TEST_CASE("session round trip") {
  const char* texts[] = {
      "char 7\nvars x y z\nrel x^2+y^3+z^5\nideal a = x, z\nideal J = y, z\n",
      "char 2\nvars x y z w\nrel xy - zw\nideal m = x, y, z, w\n",
      "char 3\nvars x y\norder lex\nideal I = x^3 + 2*x*y^2 + 1, y^4 - x\n",
  };
  for (const char* text : texts) {
    const auto s = parse_session(text);
    const auto printed = print_session(s);
    const auto again = parse_session(printed);
    CHECK(again.ring->fingerprint() == s.ring->fingerprint());
    REQUIRE(again.ideals.size() == s.ideals.size());
    for (std::size_t i = 0; i < s.ideals.size(); ++i) {
      CHECK(again.ideals[i].name == s.ideals[i].name);
      CHECK(again.ideals[i].ideal.fingerprint() == s.ideals[i].ideal.fingerprint());
    }
    CHECK(print_session(again) == printed);
  }
}
