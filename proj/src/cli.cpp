#include "fthresh/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <optional>
#include <ostream>
#include <sstream>

#include "fthresh/bounds.hpp"
#include "fthresh/closure.hpp"
#include "fthresh/frobenius.hpp"
#include "fthresh/groebner.hpp"
#include "fthresh/multiplicity.hpp"
#include "fthresh/newton.hpp"
#include "fthresh/session.hpp"

namespace fthresh::cli {

namespace {

using Json = nlohmann::ordered_json;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string session;
  std::string num;
  std::string den;
  std::string J;
  std::string I;
  unsigned emax = 2;
  bool assert_f_pure = false;
  std::uint64_t budget = 0;
  bool json = false;
  std::string c;
  std::string bound;
  unsigned nmax = 4;
  std::uint64_t seed = 1;
  std::size_t count = 50;
};

struct Output {
  Json json = Json::object();
  std::ostringstream text;
};

std::string rat(const BigRational& r) { return r.to_fraction_string(); }
std::string approx(const BigRational& r) { return "~" + r.to_decimal(6); }

Json opt_rat(const std::optional<BigRational>& r) { return r ? Json(rat(*r)) : Json(nullptr); }

BigRational ratio(std::uint64_t num, std::uint64_t den) {
  return BigRational::from_mpz(mpz_class(std::to_string(num)), mpz_class(std::to_string(den)));
}

BigRational parse_rational(const std::string& flag, const std::string& text) {
  try {
    return BigRational::parse(text);
  } catch (const std::exception&) {
    throw UsageError(flag + " expects a rational number, got '" + text + "'");
  }
}

const std::string& need(const std::string& value, const char* flag) {
  if (value.empty()) throw UsageError(std::string("missing required option ") + flag);
  return value;
}

class Context {
 public:
  explicit Context(const Options& opts) : opts_(opts) {
    const auto& path = need(opts.session, "--session");
    if (!std::filesystem::exists(path)) throw UsageError("session file not found: " + path);
    session_ = load_session(path);
  }

  const Options& opts() const { return opts_; }
  const Ring& ring() const { return session_.ring; }
  const Ideal& ideal(const std::string& value, const char* flag) const {
    const auto& name = need(value, flag);
    if (!session_.has_ideal(name)) throw UsageError("no ideal named '" + name + "' in the session");
    return session_.ideal(name);
  }

  MonomialIdeal monomial(const std::string& value, const char* flag) const {
    const Ideal& I = ideal(value, flag);
    if (ring()->has_relations()) {
      throw PreconditionError("monomial path needs a polynomial ring (the session has relations)");
    }
    if (!I.is_monomial()) throw PreconditionError("ideal " + value + " is not monomial");
    if (ring()->num_variables() > kMaxPolyhedralDimension) {
      throw PreconditionError("monomial path supports at most " +
                              std::to_string(kMaxPolyhedralDimension) + " variables");
    }
    return MonomialIdeal::from_ideal(I);
  }

  /// The F-purity assertion, checked by Fedder's criterion where possible.
  std::string f_pure_status() const {
    if (!ring()->has_relations()) return "polynomial ring";
    if (!opts_.assert_f_pure) return "not assumed";
    if (ring()->relation_terms().size() == 1) {
      if (!fedder_f_pure(ring())) {
        throw PreconditionError("F-purity asserted but Fedder's criterion fails for this hypersurface");
      }
      return "asserted; verified by Fedder's criterion";
    }
    return "asserted; unverified";
  }

 private:
  const Options& opts_;
  Session session_;
};

Json ring_json(const Ring& ring) {
  Json j;
  j["characteristic"] = ring->characteristic();
  j["variables"] = ring->variables();
  Json rels = Json::array();
  for (const auto& r : ring->relations()) rels.push_back(r.to_string());
  j["relations"] = rels;
  return j;
}

Json sequence_json(const NuSequence& seq) {
  Json rows = Json::array();
  for (const auto& e : seq.entries) {
    rows.push_back({{"e", e.e}, {"q", e.q}, {"nu", e.nu}, {"nu_over_q", rat(ratio(e.nu, e.q))}});
  }
  return {{"numerator", seq.numerator.to_string()},
          {"denominator", seq.denominator.to_string()},
          {"entries", rows},
          {"f_pure_assumed", seq.f_pure_assumed},
          {"containment_exponent", seq.containment_exponent}};
}

void sequence_table(const NuSequence& seq, std::ostream& out) {
  out << "e\tq\tnu\tnu_over_q\tapprox\n";
  for (const auto& e : seq.entries) {
    const auto r = ratio(e.nu, e.q);
    out << e.e << '\t' << e.q << '\t' << e.nu << '\t' << r.to_string() << '\t' << approx(r) << '\n';
  }
}

Json estimate_json(const ThresholdEstimate& est) {
  return {{"sup_lower", rat(est.sup_lower)},
          {"sup_lower_certified", est.sup_lower_certified},
          {"affine_fit", opt_rat(est.affine_fit)},
          {"upper_hint", opt_rat(est.upper_hint)},
          {"exact", opt_rat(est.exact)},
          {"provenance", to_string(est.provenance)}};
}

void estimate_lines(const ThresholdEstimate& est, std::ostream& out) {
  out << "sup_lower\t" << est.sup_lower.to_string() << '\t' << approx(est.sup_lower) << '\t'
      << (est.sup_lower_certified ? "certified lower bound" : "uncertified") << '\n';
  if (est.affine_fit) {
    out << "affine_fit\t" << est.affine_fit->to_string() << '\t' << approx(*est.affine_fit)
        << "\theuristic\n";
  }
  if (est.upper_hint) {
    out << "upper_hint\t" << est.upper_hint->to_string() << '\t' << approx(*est.upper_hint) << '\n';
  }
  if (est.exact) {
    out << "exact\t" << est.exact->to_string() << '\t' << approx(*est.exact) << '\t'
        << to_string(est.provenance) << '\n';
  }
}

Json strings(const std::vector<std::string>& v) { return Json(v); }

void list_lines(const char* key, const std::vector<std::string>& items, std::ostream& out) {
  for (const auto& s : items) out << key << '\t' << s << '\n';
}

std::optional<ThresholdWitness> exact_monomial(const Context& ctx, const Ideal& a, const Ideal& J) {
  if (ctx.ring()->has_relations() || !a.is_monomial() || !J.is_monomial() ||
      ctx.ring()->num_variables() > kMaxPolyhedralDimension) {
    return std::nullopt;
  }
  const auto mJ = MonomialIdeal::from_ideal(J);
  if (!mJ.is_zero_dimensional()) return std::nullopt;
  return monomial_fthreshold(MonomialIdeal::from_ideal(a), mJ);
}

void cmd_nu(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const Ideal& a = ctx.ideal(opts.num, "--num");
  const Ideal& J = ctx.ideal(opts.den, "--den");
  const auto fpure = ctx.f_pure_status();
  const auto seq = nu_sequence(a, J, opts.emax, opts.assert_f_pure);
  o.json["sequence"] = sequence_json(seq);
  o.json["f_pure"] = fpure;
  sequence_table(seq, o.text);
  o.text << "# f_pure\t" << fpure << '\n';
}

void cmd_fthresh(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const Ideal& a = ctx.ideal(opts.num, "--num");
  const Ideal& J = ctx.ideal(opts.den, "--den");
  const auto fpure = ctx.f_pure_status();
  const auto seq = nu_sequence(a, J, opts.emax, opts.assert_f_pure);
  auto est = threshold_estimate(seq);
  std::optional<ExponentVector> argmax;
  if (const auto w = exact_monomial(ctx, a, J)) {
    est.exact = w->value;
    est.provenance = ThresholdProvenance::polyhedral;
    argmax = w->argmax;
  }
  o.json["sequence"] = sequence_json(seq);
  o.json["estimate"] = estimate_json(est);
  if (argmax) o.json["argmax"] = argmax->to_string();
  o.json["f_pure"] = fpure;
  sequence_table(seq, o.text);
  o.text << '\n';
  estimate_lines(est, o.text);
  o.text << "f_pure\t" << fpure << '\n';
}

void cmd_fthresh_exact(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const auto a = ctx.monomial(opts.num, "--num");
  const auto J = ctx.monomial(opts.den, "--den");
  if (!J.is_zero_dimensional()) throw PreconditionError("J is not primary to the origin");
  const auto w = monomial_fthreshold(a, J);
  o.json["threshold"] = rat(w.value);
  o.json["argmax"] = w.argmax.to_string();
  o.json["provenance"] = to_string(ThresholdProvenance::polyhedral);
  o.text << w.value.to_string() << " at u=" << w.argmax.to_string() << '\n';
}

void cmd_fpt(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const Ideal& a = ctx.ideal(opts.num, "--num");
  if (!ctx.ring()->has_relations() && a.is_monomial() &&
      ctx.ring()->num_variables() <= kMaxPolyhedralDimension) {
    const auto v = monomial_fpt(MonomialIdeal::from_ideal(a));
    o.json["fpt"] = rat(v);
    o.json["provenance"] = to_string(ThresholdProvenance::polyhedral);
    o.text << v.to_string() << '\t' << approx(v) << "\texact\n";
    return;
  }
  // fpt(a) = c^m(a) at the origin; only the nu sequence is available
  const auto fpure = ctx.f_pure_status();
  const auto seq = nu_sequence(a, Ideal::maximal_at_origin(ctx.ring()), opts.emax, opts.assert_f_pure);
  const auto est = threshold_estimate(seq);
  o.json["sequence"] = sequence_json(seq);
  o.json["estimate"] = estimate_json(est);
  o.json["f_pure"] = fpure;
  sequence_table(seq, o.text);
  o.text << '\n';
  estimate_lines(est, o.text);
  o.text << "f_pure\t" << fpure << '\n';
}

void cmd_testideal(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const auto a = ctx.monomial(opts.num, "--num");
  const auto c = parse_rational("--c", need(opts.c, "--c"));
  if (c.sign() < 0) throw UsageError("--c must be nonnegative");
  const auto rep = test_ideal_monomial(a, c);
  const auto ideal = rep.ideal.to_ideal(ctx.ring());
  o.json["c"] = rat(rep.c);
  o.json["test_ideal"] = ideal.to_string();
  o.text << "tau(a^" << rep.c.to_string() << ")\t" << ideal.to_string() << '\n';
}

void cmd_jumps(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const auto a = ctx.monomial(opts.num, "--num");
  const auto bound = parse_rational("--bound", need(opts.bound, "--bound"));
  const auto jumps = jumping_exponents(a, bound);
  Json arr = Json::array();
  for (const auto& j : jumps) {
    arr.push_back(rat(j));
    o.text << j.to_string() << '\t' << approx(j) << '\n';
  }
  o.json["bound"] = rat(bound);
  o.json["jumping_exponents"] = arr;
}

void cmd_newton(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const auto a = ctx.monomial(opts.num, "--num");
  const auto P = newton_polyhedron(a);
  Json facets = Json::array();
  o.text << "# facets w with <w,u> >= 1\n";
  for (const auto& w : P.facets) {
    Json row = Json::array();
    for (std::size_t i = 0; i < w.size(); ++i) {
      row.push_back(rat(w[i]));
      o.text << (i ? "\t" : "") << w[i].to_string();
    }
    o.text << '\n';
    facets.push_back(row);
  }
  o.json["dimension"] = P.d;
  o.json["facets"] = facets;
  o.json["fpt"] = rat(monomial_fpt(a));
  o.text << "fpt\t" << monomial_fpt(a).to_string() << '\n';
}

void cmd_mult(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const Ideal& a = ctx.ideal(opts.num, "--num");
  const auto rep = multiplicity(a, opts.nmax);
  o.json["multiplicity"] = rat(rep.multiplicity);
  o.json["colength"] = rep.colength;
  o.json["method"] = to_string(rep.method);
  o.json["exact"] = rep.exact;
  o.json["assumptions"] = strings(rep.assumptions);
  o.text << "multiplicity\t" << rep.multiplicity.to_string() << '\t'
         << (rep.exact ? "exact" : "estimate") << '\n';
  o.text << "colength\t" << rep.colength << '\n';
  o.text << "method\t" << to_string(rep.method) << '\n';
  list_lines("assumption", rep.assumptions, o.text);
}

void cmd_length(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const Ideal& a = ctx.ideal(opts.num, "--num");
  const auto n = colength(a);
  o.json["colength"] = n;
  o.text << n << '\n';
}

void cmd_hs(const Context& ctx, Output& o) {
  const auto& opts = ctx.opts();
  const Ideal& a = ctx.ideal(opts.num, "--num");
  const auto est = hs_estimate(a, opts.nmax);
  Json rows = Json::array();
  o.text << "n\tlength\td!*length/n^d\tapprox\n";
  for (std::size_t i = 0; i < est.lengths.size(); ++i) {
    rows.push_back({{"n", i + 1}, {"length", est.lengths[i]}, {"value", rat(est.values[i])}});
    o.text << i + 1 << '\t' << est.lengths[i] << '\t' << est.values[i].to_string() << '\t'
           << approx(est.values[i]) << '\n';
  }
  o.json["d"] = est.d;
  o.json["rows"] = rows;
  o.json["extrapolation"] = opt_rat(est.extrapolation);
  o.json["stabilized"] = est.stabilized;
  if (est.extrapolation) {
    o.text << "\nextrapolation\t" << est.extrapolation->to_string() << '\t'
           << (est.stabilized ? "stabilized" : "not stabilized") << '\n';
  }
}

Json verdict_json(const ClosureVerdict& v) {
  Json j;
  j["verdict"] = to_string(v.kind);
  j["summary"] = v.summary;
  j["e_max"] = v.e_max;
  j["d"] = v.d;
  if (v.certificate) {
    j["certificate"] = {{"q0", v.certificate->q0},
                        {"statement", v.certificate->statement},
                        {"verified", v.certificate->verified},
                        {"persistence_checked", v.certificate->persistence_checked},
                        {"persists", v.certificate->persists}};
  }
  if (v.nu_evidence) j["nu_evidence"] = sequence_json(*v.nu_evidence);
  if (!v.newton_evidence.empty()) {
    Json arr = Json::array();
    for (const auto& n : v.newton_evidence) {
      arr.push_back({{"exponent", n.exponent.to_string()}, {"in_newton_polyhedron", n.member}});
    }
    j["newton_evidence"] = arr;
  }
  j["witness_q"] = v.witness_q ? Json(*v.witness_q) : Json(nullptr);
  j["hypotheses"] = strings(v.hypotheses);
  return j;
}

void verdict_text(const ClosureVerdict& v, std::ostream& out) {
  out << v.summary << '\n';
  out << "verdict\t" << to_string(v.kind) << '\n';
  if (v.certificate) {
    out << "certificate\t" << v.certificate->statement << '\n';
    out << "verified\t" << (v.certificate->verified ? "yes" : "no") << '\n';
    if (v.certificate->persistence_checked) {
      out << "persists\t" << (v.certificate->persists ? "yes" : "no") << '\n';
    }
  }
  for (const auto& n : v.newton_evidence) {
    out << "newton\t" << n.exponent.to_string() << '\t' << (n.member ? "in P(J)" : "outside P(J)")
        << '\n';
  }
  if (v.nu_evidence) {
    out << '\n';
    sequence_table(*v.nu_evidence, out);
  }
  list_lines("hypothesis", v.hypotheses, out);
}

void cmd_closure(const Context& ctx, Output& o, const std::string& kind) {
  const auto& opts = ctx.opts();
  const Ideal& J = ctx.ideal(opts.J, "--J");
  const Ideal& I = ctx.ideal(opts.I, "--I");
  ClosureVerdict v;
  if (kind == "tight") {
    v = tight_certificate(J, I, opts.emax);
  } else {
    ctx.f_pure_status();
    v = integral_test(I, J, opts.emax, opts.assert_f_pure);
  }
  o.json["closure"] = kind;
  o.json["result"] = verdict_json(v);
  verdict_text(v, o.text);
}

Json bound_json(const BoundReport& r) {
  return {{"lhs", rat(r.lhs)},
          {"rhs", rat(r.rhs)},
          {"factor", rat(r.factor)},
          {"d", r.d},
          {"verdict", to_string(r.verdict)},
          {"threshold", estimate_json(r.threshold)},
          {"rhs_at_fit", opt_rat(r.rhs_at_fit)},
          {"assumptions", strings(r.assumptions)},
          {"note", r.note}};
}

void bound_text(const BoundReport& r, std::ostream& out) {
  out << "verdict\t" << to_string(r.verdict) << '\n';
  out << "lhs\t" << r.lhs.to_string() << '\t' << approx(r.lhs) << '\n';
  out << "rhs\t" << r.rhs.to_string() << '\t' << approx(r.rhs) << '\n';
  if (r.rhs_at_fit) {
    out << "rhs_at_fit\t" << r.rhs_at_fit->to_string() << '\t' << approx(*r.rhs_at_fit) << '\n';
  }
  estimate_lines(r.threshold, out);
  if (!r.note.empty()) out << "note\t" << r.note << '\n';
  list_lines("assumption", r.assumptions, out);
}

std::vector<std::uint32_t> diagonal_exponents(const MonomialIdeal& J) {
  if (!J.is_zero_dimensional() || J.generators().size() != J.dimension()) {
    throw PreconditionError("J is not of the form (x_1^a_1, ..., x_d^a_d)");
  }
  return J.pure_powers();
}

void cmd_check(const Context& ctx, Output& o, const std::string& kind) {
  const auto& opts = ctx.opts();
  o.json["check"] = kind;
  if (kind == "conjecture") {
    const Ideal& a = ctx.ideal(opts.num, "--num");
    const Ideal& J = ctx.ideal(opts.den, "--den");
    const auto fpure = ctx.f_pure_status();
    const auto r = conjecture_check(a, J, opts.emax, opts.assert_f_pure);
    o.json["report"] = bound_json(r);
    o.json["f_pure"] = fpure;
    bound_text(r, o.text);
    o.text << "f_pure\t" << fpure << '\n';
  } else if (kind == "diagonal") {
    const auto a = ctx.monomial(opts.num, "--num");
    const auto exps = diagonal_exponents(ctx.monomial(opts.den, "--den"));
    const auto r = diagonal_check(a, exps);
    o.json["report"] = bound_json(r);
    bound_text(r, o.text);
  } else if (kind == "another") {
    const auto a = ctx.monomial(opts.num, "--num");
    const auto J = ctx.monomial(opts.den, "--den");
    const auto r = another_check(a, J);
    o.json["report"] = bound_json(r);
    bound_text(r, o.text);
  } else if (kind == "homogeneous") {
    const Ideal& a = ctx.ideal(opts.num, "--num");
    const Ideal& J = ctx.ideal(opts.den, "--den");
    const auto h = homogeneous_check(a, J);
    Json prefix = Json::array();
    for (const auto& [l, r] : h.prefix) prefix.push_back({l, r});
    o.json["a_degrees"] = h.a_degrees;
    o.json["j_degrees"] = h.j_degrees;
    o.json["N"] = h.N;
    o.json["t"] = h.t;
    o.json["prefix"] = prefix;
    o.json["final_inequality"] = {h.final_inequality.first, h.final_inequality.second};
    o.json["report"] = bound_json(h.bound);
    o.text << "N\t" << h.N << '\n';
    for (std::size_t i = 0; i < h.t.size(); ++i) o.text << "t" << i + 1 << '\t' << h.t[i] << '\n';
    for (std::size_t i = 0; i < h.prefix.size(); ++i) {
      o.text << "prefix" << i + 1 << '\t' << h.prefix[i].first << " >= " << h.prefix[i].second << '\n';
    }
    o.text << "final\t" << h.final_inequality.first << " >= " << h.final_inequality.second << '\n';
    bound_text(h.bound, o.text);
  } else if (kind == "onedim") {
    const Ideal& a = ctx.ideal(opts.num, "--num");
    const Ideal& J = ctx.ideal(opts.den, "--den");
    const auto fpure = ctx.f_pure_status();
    const auto r = onedim_check(a, J, opts.emax, opts.assert_f_pure);
    o.json["e_a"] = rat(r.e_a);
    o.json["e_J"] = rat(r.e_J);
    o.json["predicted"] = rat(r.predicted);
    o.json["gap"] = rat(r.gap);
    o.json["sequence"] = sequence_json(r.sequence);
    o.json["estimate"] = estimate_json(r.threshold);
    o.json["assumptions"] = strings(r.assumptions);
    sequence_table(r.sequence, o.text);
    o.text << '\n';
    estimate_lines(r.threshold, o.text);
    o.text << "e(a)\t" << r.e_a.to_string() << '\n';
    o.text << "e(J)\t" << r.e_J.to_string() << '\n';
    o.text << "predicted\t" << r.predicted.to_string() << '\t' << approx(r.predicted) << '\n';
    o.text << "gap\t" << r.gap.to_string() << '\n';
    list_lines("assumption", r.assumptions, o.text);
  }
}

void cmd_battery(const Options& opts, Output& o) {
  const auto rep = run_battery(opts.seed, opts.count);
  Json rows = Json::array();
  o.text << "# seed " << rep.seed << '\n';
  o.text << "d\ta\tJ\te(a)\tc\tdiagonal_rhs\tanother_rhs\tverdict\n";
  for (const auto& e : rep.entries) {
    const std::vector<std::string> all = {"x", "y", "z", "w"};
    const auto ring =
        RingContext::make(2, std::vector<std::string>(all.begin(), all.begin() + e.a.dimension()));
    const auto a = e.a.to_ideal(ring).to_string();
    const auto J = MonomialIdeal::diagonal(e.j_exponents).to_ideal(ring).to_string();
    const auto& c = *e.diagonal.threshold.exact;
    rows.push_back({{"d", e.a.dimension()},
                    {"a", a},
                    {"J", J},
                    {"multiplicity", rat(e.diagonal.lhs)},
                    {"threshold", rat(c)},
                    {"diagonal_rhs", rat(e.diagonal.rhs)},
                    {"another_rhs", rat(e.another.rhs)},
                    {"diagonal", to_string(e.diagonal.verdict)},
                    {"another", to_string(e.another.verdict)}});
    o.text << e.a.dimension() << '\t' << a << '\t' << J << '\t' << e.diagonal.lhs.to_string() << '\t'
           << c.to_string() << '\t' << e.diagonal.rhs.to_string() << '\t'
           << e.another.rhs.to_string() << '\t' << to_string(e.diagonal.verdict) << '\n';
  }
  o.json["seed"] = rep.seed;
  o.json["instances"] = rows;
}

int report_error(std::ostream& err, int code, const std::string& kind, const std::string& what) {
  err << "fthresh: " << kind << ": " << what << '\n';
  return code;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options opts;
  CLI::App app{"F-thresholds and related invariants in positive characteristic", "fthresh"};
  app.require_subcommand(1);
  app.add_option("--session", opts.session, "session file");
  app.add_option("--num", opts.num, "numerator ideal a");
  app.add_option("--den", opts.den, "denominator ideal J");
  app.add_option("--J", opts.J, "parameter ideal J");
  app.add_option("--I", opts.I, "ideal I");
  app.add_option("--emax", opts.emax, "largest e with q = p^e")->check(CLI::Range(1, 6));
  app.add_flag("--assert-f-pure", opts.assert_f_pure, "assert the ring is F-pure");
  app.add_option("--budget", opts.budget, "reduction step budget")->check(CLI::PositiveNumber);
  app.add_flag("--json", opts.json, "emit one JSON object");
  app.add_option("--c", opts.c, "exponent for testideal");
  app.add_option("--bound", opts.bound, "upper bound for jumps");
  app.add_option("--nmax", opts.nmax, "largest power for hs")->check(CLI::Range(1, 12));
  app.add_option("--seed", opts.seed, "battery seed");
  app.add_option("--count", opts.count, "battery size")->check(CLI::Range(1, 10000));

  const std::vector<std::string> simple = {"nu",       "fthresh", "fthresh-exact", "fpt",
                                           "testideal", "jumps",   "newton",        "mult",
                                           "length",    "hs",      "battery"};
  for (const auto& name : simple) app.add_subcommand(name)->fallthrough();
  auto* closure = app.add_subcommand("closure")->fallthrough()->require_subcommand(1);
  for (const char* name : {"tight", "integral"}) closure->add_subcommand(name)->fallthrough();
  auto* check = app.add_subcommand("check")->fallthrough()->require_subcommand(1);
  for (const char* name : {"conjecture", "diagonal", "homogeneous", "onedim", "another"}) {
    check->add_subcommand(name)->fallthrough();
  }

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    return report_error(err, kUsage, "usage", e.what());
  }

  const Budget saved = default_budget();
  if (opts.budget > 0) set_default_budget(Budget{opts.budget});
  struct Restore {
    Budget b;
    ~Restore() { set_default_budget(b); }
  } restore{saved};

  const auto* sub = app.get_subcommands().front();
  const std::string name = sub->get_name();
  Output o;
  try {
    o.json["command"] = name;
    if (name == "battery") {
      cmd_battery(opts, o);
    } else {
      const Context ctx(opts);
      o.json["ring"] = ring_json(ctx.ring());
      if (name == "nu") cmd_nu(ctx, o);
      else if (name == "fthresh") cmd_fthresh(ctx, o);
      else if (name == "fthresh-exact") cmd_fthresh_exact(ctx, o);
      else if (name == "fpt") cmd_fpt(ctx, o);
      else if (name == "testideal") cmd_testideal(ctx, o);
      else if (name == "jumps") cmd_jumps(ctx, o);
      else if (name == "newton") cmd_newton(ctx, o);
      else if (name == "mult") cmd_mult(ctx, o);
      else if (name == "length") cmd_length(ctx, o);
      else if (name == "hs") cmd_hs(ctx, o);
      else if (name == "closure") {
        const auto kind = sub->get_subcommands().front()->get_name();
        o.json["command"] = name + " " + kind;
        cmd_closure(ctx, o, kind);
      } else if (name == "check") {
        const auto kind = sub->get_subcommands().front()->get_name();
        o.json["command"] = name + " " + kind;
        cmd_check(ctx, o, kind);
      }
    }
  } catch (const UsageError& e) {
    return report_error(err, kUsage, "usage", e.what());
  } catch (const ParseError& e) {
    return report_error(err, kUsage, "parse error", e.what());
  } catch (const PreconditionError& e) {
    return report_error(err, kPrecondition, "precondition violated", e.what());
  } catch (const BudgetExceeded& e) {
    return report_error(err, kBudget, "budget exceeded", e.what());
  } catch (const InvariantBreach& e) {
    return report_error(err, kInvariant, "internal invariant breach", e.what());
  } catch (const std::invalid_argument& e) {
    return report_error(err, kUsage, "invalid argument", e.what());
  } catch (const std::exception& e) {
    return report_error(err, kInvariant, "internal error", e.what());
  }

  if (opts.json) {
    out << o.json.dump(2) << '\n';
  } else {
    out << o.text.str();
  }
  return kOk;
}

}  // namespace fthresh::cli
