#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "skein/invariants.hpp"
#include "skein/serialize.hpp"
#include "skein/skein.hpp"
#include "support/fixtures.hpp"

using namespace skein;
using skein::testing::fixture_path;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout and stderr, merged
};

RunResult run_cli(const std::string& args, const std::string& env_prefix = "") {
  static int counter = 0;
  const std::string out_path = "/tmp/skein_cli_" + std::to_string(getpid()) + "_" +
                               std::to_string(++counter) + ".out";
  const std::string cmd =
      env_prefix + std::string(SKEIN_CLI_PATH) + " " + args + " > " + out_path + " 2>&1";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(out_path);
  std::ostringstream buf;
  buf << in.rdbuf();
  r.output = buf.str();
  std::remove(out_path.c_str());
  return r;
}

std::vector<std::string> lines_of(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::vector<std::string> fields_of(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : line) {
    if (ch == '\t') {
      out.push_back(cur);
      cur.clear();
      continue;
    }
    cur += ch;
  }
  out.push_back(cur);
  return out;
}

std::string fx(const std::string& name) { return fixture_path(name); }

}  // namespace

TEST_CASE("bracket command prints the normal form") {
  RunResult r = run_cli("bracket " + fx("hopf.dgm"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == "A^6 + A^2 + A^-2 + A^-6 * empty\n");

  RunResult series = run_cli("bracket " + fx("hopf.dgm") + " --coeff hseries -N 2");
  CHECK(series.exit_code == 0);
  CHECK(series.output == "4 + 5/2*h^2 + O(h^3) * empty\n");
}

TEST_CASE("machine output round-trips through the parsers") {
  RunResult r = run_cli("bracket " + fx("trefoil.dgm") + " --format machine");
  REQUIRE(r.exit_code == 0);
  std::vector<std::string> rows = lines_of(r.output);
  REQUIRE(rows.size() >= 2);
  CHECK(rows[0] == "surface\tdisk");

  SkeinElement direct = bracket_resolve(parse_diagram(skein::testing::read_fixture("trefoil.dgm")));
  SkeinElement parsed = SkeinElement::zero(SurfaceKind::disk);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> f = fields_of(rows[i]);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == "term");
    parsed.add_term(parse_multicurve(f[1], SurfaceKind::disk), parse_laurent(f[2]));
  }
  CHECK(parsed == direct);
}

TEST_CASE("product and cable commands") {
  RunResult r = run_cli("product '(1,0)' '(0,1)'");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "A^-1 * (1,-1)\nA * (1,1)\n");

  RunResult z = run_cli("product 'z^2' 'z^3'");
  CHECK(z.exit_code == 0);
  CHECK(z.output == "1 * z^5\n");

  RunResult cab = run_cli("cable '(1,0)*2,(0,1)'");
  CHECK(cab.exit_code == 0);
  CHECK(cab.output == "2 * (0,1)\nA^-2 * (2,-1)\nA^2 * (2,1)\n");

  RunResult unl = run_cli("cable 'O*2'");
  CHECK(unl.exit_code == 0);
  CHECK(unl.output == "A^4 + 2 + A^-4 * empty\n");
}

TEST_CASE("poisson both methods agree") {
  RunResult r = run_cli("poisson '(1,0)' '(0,1)' --method both");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "statesum:\n1/2 * (1,-1)\n-1/2 * (1,1)\ncommutator:\n1/2 * (1,-1)\n-1/2 * (1,1)\nAGREE\n");

  RunResult machine = run_cli("poisson '(1,0)' '(0,1)' --method both --format machine");
  CHECK(machine.exit_code == 0);
  std::vector<std::string> rows = lines_of(machine.output);
  REQUIRE(!rows.empty());
  CHECK(rows.back() == "verdict\tAGREE");

  RunResult ss = run_cli("poisson '(1,0)^2' '(0,1)' --method statesum");
  CHECK(ss.exit_code == 0);
  CHECK(ss.output == "-1 * (2,-1)\n1 * (2,1)\n");
}

TEST_CASE("goldman evaluates numerically") {
  RunResult r = run_cli("goldman '(1,0)' '(0,1)' --rep " + fx("diag.rep"));
  CHECK(r.exit_code == 0);
  CHECK(r.output == "2 0\n");

  RunResult leibniz = run_cli("goldman '(1,0)^2' '(0,1)' --rep " + fx("diag.rep"));
  CHECK(leibniz.exit_code == 0);
  CHECK(leibniz.output == "-10 0\n");
}

TEST_CASE("fti table and valuation") {
  RunResult table = run_cli("fti " + fx("unknot0.sng") + " --table -N 2");
  CHECK(table.exit_code == 0);
  CHECK(table.output == "(0, empty, -2)\n(2, empty, -1/4)\n");

  RunResult val = run_cli("fti " + fx("kink1.sng") + " --valuation -N 4");
  CHECK(val.exit_code == 0);
  CHECK(val.output == "1\n");

  RunResult machine = run_cli("fti " + fx("kink1.sng") + " --valuation -N 0 --format machine");
  CHECK(machine.exit_code == 0);
  CHECK(machine.output == "valuation\tlower\t1\n");
}

TEST_CASE("jones series and machine coefficients") {
  RunResult r = run_cli("jones " + fx("unknot0.dgm") + " -N 4");
  CHECK(r.exit_code == 0);
  CHECK(r.output == "-2 - 1/4*h^2 - 1/192*h^4 + O(h^5)\n");

  RunResult machine = run_cli("jones " + fx("trefoil.dgm") + " -N 5 --format machine");
  REQUIRE(machine.exit_code == 0);
  std::vector<std::string> rows = lines_of(machine.output);
  REQUIRE(!rows.empty());
  CHECK(rows[0] == "order\t5");
  TruncatedSeries direct = jones(parse_diagram(skein::testing::read_fixture("trefoil.dgm")), 5);
  TruncatedSeries parsed(5);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    std::vector<std::string> f = fields_of(rows[i]);
    REQUIRE(f.size() == 3);
    CHECK(f[0] == "coeff");
    parsed.set(std::stoi(f[1]), parse_rational(f[2]));
  }
  CHECK(parsed == direct);
}

TEST_CASE("span prints witnesses and fails honestly") {
  RunResult r = run_cli("span --generators '(1,0),(0,1),(1,1)' --target '(2,1)' --degree 2 -N 2");
  CHECK(r.exit_code == 0);
  std::vector<std::string> rows = lines_of(r.output);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == "SUCCESS");
  CHECK(rows[1] ==
        "(+ (* (-1 + 1/2*h - 1/8*h^2 + O(h^3)) ((0,1))) "
        "(* (-1 + 1/4*h - 1/32*h^2 + O(h^3)) ((1,0) (1,1))))");

  RunResult machine =
      run_cli("span --generators '(1,0),(0,1),(1,1)' --target '(2,1)' --degree 2 -N 2 --format machine");
  CHECK(machine.exit_code == 0);
  std::vector<std::string> mrows = lines_of(machine.output);
  REQUIRE(mrows.size() == 4);
  CHECK(mrows[0] == "witness\t2");
  CHECK(mrows[1] == "term\t1\t-1 + 1/2*h - 1/8*h^2 + O(h^3)");
  CHECK(mrows[2] == "term\t0,2\t-1 + 1/4*h - 1/32*h^2 + O(h^3)");

  RunResult fail = run_cli("span --generators '(1,0)' --target '(2,1)' --degree 3 -N 2");
  CHECK(fail.exit_code == 1);
  CHECK(fail.output == "FAILURE: (2,1) not spanned at degree 3\n");
}

TEST_CASE("quantize-check sweeps pass") {
  RunResult r = run_cli("quantize-check --max-slope 1 --reps 1");
  CHECK(r.exit_code == 0);
  CHECK(r.output ==
        "product rule: 16 ordered pairs agree\n"
        "evaluation morphism: 16 checks within 1e-08\n"
        "poisson map: 16 checks within 1e-08\nPASS\n");

  RunResult machine = run_cli("quantize-check --max-slope 1 --reps 2 --format machine");
  CHECK(machine.exit_code == 0);
  CHECK(machine.output ==
        "check\tproduct-rule\tpass\t16\ncheck\tmorphism\tpass\t32\ncheck\tpoisson-map\tpass\t32\n");
}

TEST_CASE("normal-form accepts bare diagrams and weighted combinations") {
  RunResult bare = run_cli("normal-form " + fx("unknot0.dgm") + " -N 2");
  CHECK(bare.exit_code == 0);
  CHECK(bare.output == "-2 - 1/4*h^2 + O(h^3) * empty\n");

  const std::string path = "/tmp/skein_cli_comb_" + std::to_string(getpid()) + ".cmb";
  {
    std::ofstream out(path);
    out << "term -A^3\nsurface disk\nloop\n";
    out << "term 1/2\nsurface disk\ncrossing c: ports a, a, b, b\n";
  }
  RunResult comb = run_cli("normal-form " + path + " -N 3");
  std::remove(path.c_str());
  CHECK(comb.exit_code == 0);
  CHECK(comb.output == "-3 - 9/4*h - 39/32*h^2 - 63/128*h^3 + O(h^4) * empty\n");
}

TEST_CASE("exit codes distinguish usage errors from computation failures") {
  CHECK(run_cli("bracket /nonexistent.dgm").exit_code == 2);
  CHECK(run_cli("product '(2,4)' '(1,0)'").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("--help").exit_code == 0);

  const std::string path = "/tmp/skein_cli_bad_" + std::to_string(getpid()) + ".dgm";
  {
    std::ofstream out(path);
    out << "surface disk\ncrossing c: ports a\n";
  }
  RunResult bad = run_cli("bracket " + path);
  std::remove(path.c_str());
  CHECK(bad.exit_code == 2);
  CHECK(bad.output.find("line 2") != std::string::npos);

  RunResult bound = run_cli("bracket " + fx("trefoil.dgm") + " --max-crossings 2");
  CHECK(bound.exit_code == 1);
}

TEST_CASE("output is byte-identical across runs and honors the order variable") {
  for (const std::string& args :
       {"bracket " + fx("trefoil.dgm") + " --coeff hseries", "jones " + fx("hopf.dgm"),
        std::string("quantize-check --max-slope 1 --reps 1 --seed 7")}) {
    RunResult a = run_cli(args);
    RunResult b = run_cli(args);
    CHECK(a.exit_code == b.exit_code);
    CHECK(a.output == b.output);
  }

  RunResult plain = run_cli("jones " + fx("unknot0.dgm"));
  CHECK(plain.output.find("O(h^9)") != std::string::npos);  // default order 8
  RunResult env = run_cli("jones " + fx("unknot0.dgm"), "SKEIN_ORDER=3 ");
  CHECK(env.output.find("O(h^4)") != std::string::npos);
  RunResult both = run_cli("jones " + fx("unknot0.dgm") + " -N 2", "SKEIN_ORDER=3 ");
  CHECK(both.output.find("O(h^3)") != std::string::npos);  // flag beats the variable
}
