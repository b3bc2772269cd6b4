#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fthresh/cli.hpp"
#include "fthresh/frobenius.hpp"
#include "fthresh/newton.hpp"
#include "fthresh/session.hpp"

using namespace fthresh;
namespace fs = std::filesystem;

namespace {

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string write_session(const std::string& name, const std::string& text) {
  const auto dir = fs::temp_directory_path() / "fthresh_cli_test";
  fs::create_directories(dir);
  const auto path = dir / name;
  std::ofstream(path) << text;
  return path.string();
}

const std::string kE8 = "char 7\nvars x y z\nrel x^2+y^3+z^5\nideal a = x, z\nideal J = y, z\n";
const std::string kMono = "char 2\nvars x y\nideal a = x^2, y^3\nideal J = x^4, y^4\nideal m = x, y\n";
const std::string kReg = "char 3\nvars x y\nideal J = x^2, y^2\nideal I = x^2, y^2, x*y\nideal X = x\n";

}  // namespace

TEST_CASE("fthresh on the E8 surface") {
  const auto path = write_session("e8.ring", kE8);
  const auto r = run({"fthresh", "--session", path, "--num", "a", "--den", "J", "--emax", "2",
                      "--assert-f-pure"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("e\tq\tnu\tnu_over_q\tapprox\n") == 0);
  CHECK(r.out.find("1\t7\t11\t11/7\t~1.571429\n") != std::string::npos);
  CHECK(r.out.find("2\t49\t81\t81/49\t~1.653061\n") != std::string::npos);
  CHECK(r.out.find("sup_lower\t81/49") != std::string::npos);
  CHECK(r.out.find("affine_fit\t5/3") != std::string::npos);
  CHECK(r.out.find("verified by Fedder's criterion") != std::string::npos);
}

TEST_CASE("fthresh-exact and monomial commands") {
  const auto path = write_session("mono.ring", kMono);
  const auto r = run({"fthresh-exact", "--session", path, "--num", "a", "--den", "J"});
  REQUIRE(r.code == 0);
  CHECK(r.out == "10/3 at u=(3,3)\n");

  const auto f = run({"fpt", "--session", path, "--num", "a", "--json"});
  REQUIRE(f.code == 0);
  CHECK(nlohmann::json::parse(f.out)["fpt"] == "5/6");

  const auto j = run({"jumps", "--session", path, "--num", "a", "--bound", "3/2", "--json"});
  REQUIRE(j.code == 0);
  CHECK(nlohmann::json::parse(j.out)["jumping_exponents"] ==
        nlohmann::json::array({"5/6", "7/6", "4/3"}));

  const auto m = run({"mult", "--session", path, "--num", "a", "--json"});
  REQUIRE(m.code == 0);
  CHECK(nlohmann::json::parse(m.out)["multiplicity"] == "6/1");
  CHECK(run({"length", "--session", path, "--num", "J"}).code == 0);
  CHECK(run({"newton", "--session", path, "--num", "a"}).code == 0);
  CHECK(run({"hs", "--session", path, "--num", "a", "--nmax", "3"}).code == 0);
  CHECK(run({"testideal", "--session", path, "--num", "a", "--c", "1"}).code == 0);
}

TEST_CASE("closure tight on the regular example") {
  const auto path = write_session("reg.ring", kReg);
  const auto r = run({"closure", "tight", "--session", path, "--J", "J", "--I", "I", "--emax", "2"});
  REQUIRE(r.code == 0);
  CHECK(r.out.find("NOT in tight closure; certificate q0=3") != std::string::npos);
  const auto i = run({"closure", "integral", "--session", path, "--J", "J", "--I", "X", "--json"});
  REQUIRE(i.code == 0);
  CHECK(nlohmann::json::parse(i.out)["result"]["verdict"] == "not_in_integral_closure");
}

TEST_CASE("exit codes") {
  const auto path = write_session("reg2.ring", kReg);
  CHECK(run({}).code == cli::kUsage);
  CHECK(run({"nosuch"}).code == cli::kUsage);
  CHECK(run({"nu", "--session", path, "--num", "nope", "--den", "J"}).code == cli::kUsage);
  CHECK(run({"nu", "--session", path, "--num", "X", "--den", "J", "--emax", "9"}).code == cli::kUsage);
  CHECK(run({"nu", "--session", path, "--num", "X", "--den", "J", "--budget", "0"}).code == cli::kUsage);
  CHECK(run({"nu", "--session", "/nonexistent/file", "--num", "X", "--den", "J"}).code == cli::kUsage);
  const auto bad = write_session("bad.ring", "char 4\nvars x\n");
  CHECK(run({"nu", "--session", bad, "--num", "X", "--den", "J"}).code == cli::kUsage);
  // J = (x) is not a full system of parameters in two variables
  const auto pre = run({"closure", "tight", "--session", path, "--J", "X", "--I", "I"});
  CHECK(pre.code == cli::kPrecondition);
  CHECK(pre.err.find("system of parameters") != std::string::npos);
  const auto e8 = write_session("e8b.ring", kE8);
  CHECK(run({"nu", "--session", e8, "--num", "a", "--den", "J", "--emax", "2", "--budget", "10"}).code ==
        cli::kBudget);
  CHECK(run({"--help"}).code == cli::kOk);
}

TEST_CASE("check subcommands") {
  const auto mono = write_session("mono2.ring", kMono);
  const auto d = run({"check", "diagonal", "--session", mono, "--num", "a", "--den", "J", "--json"});
  REQUIRE(d.code == 0);
  const auto dj = nlohmann::json::parse(d.out);
  CHECK(dj["command"] == "check diagonal");
  CHECK(dj["report"]["lhs"] == "6/1");
  CHECK(dj["report"]["rhs"] == "144/25");
  const auto a = run({"check", "another", "--session", mono, "--num", "a", "--den", "J", "--json"});
  REQUIRE(a.code == 0);
  CHECK(nlohmann::json::parse(a.out)["report"]["rhs"] == "63/25");
  const auto h = run({"check", "homogeneous", "--session", mono, "--num", "m", "--den", "J", "--json"});
  REQUIRE(h.code == 0);
  const auto e8 = write_session("e8c.ring", kE8);
  const auto c = run({"check", "conjecture", "--session", e8, "--num", "a", "--den", "J", "--emax", "2",
                      "--assert-f-pure", "--json"});
  REQUIRE(c.code == 0);
  CHECK(nlohmann::json::parse(c.out)["report"]["verdict"] == "holds_given_lower_bound");
  const auto cusp = write_session("cusp.ring", "char 5\nvars x y\nrel y^2 - x^3\nideal m = x, y\nideal X = x\n");
  const auto o = run({"check", "onedim", "--session", cusp, "--num", "m", "--den", "X", "--json"});
  REQUIRE(o.code == 0);
  CHECK(nlohmann::json::parse(o.out)["gap"] == "0/1");
}

TEST_CASE("JSON round trip matches library values") {
  const auto path = write_session("e8d.ring", kE8);
  const auto r = run({"nu", "--session", path, "--num", "a", "--den", "J", "--emax", "2", "--json"});
  REQUIRE(r.code == 0);
  const auto j = nlohmann::json::parse(r.out);
  const auto s = load_session(path);
  const auto seq = nu_sequence(s.ideal("a"), s.ideal("J"), 2);
  const auto& rows = j["sequence"]["entries"];
  REQUIRE(rows.size() == seq.entries.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i]["q"].get<std::uint64_t>() == seq.entries[i].q);
    CHECK(rows[i]["nu"].get<std::uint64_t>() == seq.entries[i].nu);
    const auto ratio = BigRational::parse(rows[i]["nu_over_q"].get<std::string>());
    CHECK(ratio == BigRational(static_cast<long>(seq.entries[i].nu)) /
                       BigRational(static_cast<long>(seq.entries[i].q)));
  }
  CHECK(j["ring"]["characteristic"] == 7);

  const auto mono = write_session("mono3.ring", kMono);
  const auto f = nlohmann::json::parse(
      run({"fthresh-exact", "--session", mono, "--num", "a", "--den", "J", "--json"}).out);
  const auto w = monomial_fthreshold(MonomialIdeal(2, {{2, 0}, {0, 3}}), MonomialIdeal::diagonal({4, 4}));
  CHECK(BigRational::parse(f["threshold"].get<std::string>()) == w.value);
  CHECK(f["argmax"] == w.argmax.to_string());
}

TEST_CASE("determinism") {
  const auto path = write_session("e8e.ring", kE8);
  const std::vector<std::string> args{"fthresh", "--session", path, "--num", "a", "--den", "J", "--emax", "2"};
  CHECK(run(args).out == run(args).out);
  const std::vector<std::string> battery{"battery", "--seed", "7", "--count", "40", "--json"};
  CHECK(run(battery).out == run(battery).out);
}

TEST_CASE("the installed binary reports exit codes") {
  const std::string exe = FTHRESH_CLI_PATH;
  const auto path = write_session("reg3.ring", kReg);
  const auto status = [&](const std::string& rest) {
    const int raw = std::system((exe + " " + rest + " > /dev/null 2>&1").c_str());
    return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  };
  CHECK(status("closure tight --session " + path + " --J J --I I") == 0);
  CHECK(status("closure tight --session " + path + " --J X --I I") == 2);
  CHECK(status("bogus") == 1);
}
