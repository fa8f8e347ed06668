#include <algorithm>
#include <cstdio>
#include <fstream>
#include <set>

#include "doctest.h"
#include "fonctex/cli.hpp"
#include "fonctex/error.hpp"
#include "json.hpp"

using namespace fonctex;
using Json = nlohmann::json;

namespace {

RunOutcome run_text(const std::string& text) { return run(ExperimentConfig::parse(text)); }

Json report_of(const RunOutcome& r) { return Json::parse(r.report); }

std::string temp_path(const std::string& name) { return "/tmp/fonctex_test_" + name; }

void write(const std::string& path, const std::string& text) { std::ofstream(path) << text; }

}  // namespace

TEST_CASE("config round trip and validation") {
  const std::string text = "cat = PN(Z/2,3)\ncommand = psf\nfunctor = builtin:Id\nn = 0\nseed = 7\nsupport = A1\n";
  const ExperimentConfig c = ExperimentConfig::parse(text);
  CHECK(c.serialize() == text);
  CHECK(ExperimentConfig::parse(c.serialize()) == c);
  CHECK(c.seed() == 7);

  const ExperimentConfig loose = ExperimentConfig::parse("# comment\n  n=2   # trailing\n\ncommand =degree\n");
  CHECK(loose.get("n") == "2");
  CHECK(ExperimentConfig::parse(loose.serialize()) == loose);

  CHECK_THROWS_AS(ExperimentConfig::parse("colour = red\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("n = -1\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("enum_cap = 0\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("field = 4\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("n = 1\nn = 2\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("command = frobnicate\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("ring = Q\n"), UsageError);
  CHECK_THROWS_AS(ExperimentConfig::parse("just text\n"), UsageError);
  CHECK(ExperimentConfig::parse("enum_cap = 1000\n").caps().enumeration == 1000);
}

TEST_CASE("builtin functors") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  CHECK(builtin_functor("Id", c, 2).dims() == std::vector<size_t>{0, 1, 2});
  CHECK(builtin_functor("Lambda2", c, 2).dims() == std::vector<size_t>{0, 0, 1});
  CHECK(builtin_functor("T3", c, 2).dims() == std::vector<size_t>{0, 1, 8});
  CHECK(builtin_functor("Gamma2", c, 2).dims() == std::vector<size_t>{0, 1, 3});
  CHECK(same_data(builtin_functor("P(A1)", c, 2), standard_projective(c, 1, 2)));
  CHECK(same_data(builtin_functor("Lin(A2)", c, 2), standard_projective(c, 2, 2)));
  CHECK_THROWS_AS(builtin_functor("Id2", c, 2), UsageError);
  CHECK_THROWS_AS(builtin_functor("P(A9)", c, 2), UsageError);
  CHECK_THROWS_AS(builtin_functor("Id", c, 3), UsageError);

  const FinCat z4 = truncated_additive(FinRing(4), 1);
  CHECK(default_field(z4) == 2);
  CHECK(builtin_functor("Id", z4, 2).dims() == std::vector<size_t>{0, 1});
}

TEST_CASE("functor files round trip") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  for (const char* name : {"Id", "T2", "S2", "P(A1)"}) {
    const FunRep f = builtin_functor(name, c, 2);
    const std::string text = write_functor(f);
    const FunRep g = read_functor(text);
    CAPTURE(name);
    CHECK(same_data(f, g));
    CHECK(write_functor(g) == text);
  }
  const FinCat q = truncated_additive(FinRing(3), 1);
  const FunRep s2 = builtin_functor("S2", q, 3);
  CHECK(same_data(read_functor(write_functor(s2)), s2));

  const std::string small = write_functor(builtin_functor("Id", truncated_additive(FinRing(2), 1), 2));
  CHECK(small ==
        "fonctex-functor 1\ncategory PN(Z/2,1)\nfield 2\nlabel Id\ndims 0 1\n"
        "# src dst index | matrix entries, row-major\n"
        "A0 A0 0 |\nA0 A1 0 |\nA1 A0 0 |\nA1 A1 0 | 0\nA1 A1 1 | 1\n");
}

TEST_CASE("malformed functor files are usage errors") {
  const std::string good = "fonctex-functor 1\ncategory PN(Z/2,1)\nfield 2\ndims 0 1\n"
                           "A0 A0 0 |\nA0 A1 0 |\nA1 A0 0 |\nA1 A1 0 | 0\nA1 A1 1 | 1\n";
  CHECK(read_functor(good).dims() == std::vector<size_t>{0, 1});
  auto bad = [&](const std::string& from, const std::string& to) {
    std::string s = good;
    s.replace(s.find(from), from.size(), to);
    return s;
  };
  CHECK_THROWS_AS(read_functor(bad("fonctex-functor 1", "functor")), UsageError);
  CHECK_THROWS_AS(read_functor(bad("dims 0 1", "dims 0 1 2")), UsageError);
  CHECK_THROWS_AS(read_functor(bad("A1 A1 1 | 1", "A1 A1 1 | 2")), UsageError);
  CHECK_THROWS_AS(read_functor(bad("A1 A1 1 | 1", "A1 A1 1 | 1 0")), UsageError);
  CHECK_THROWS_AS(read_functor(bad("A1 A1 0 | 0\nA1 A1 1 | 1", "A1 A1 1 | 1\nA1 A1 0 | 0")), UsageError);
  CHECK_THROWS_AS(read_functor(bad("A1 A1 1 | 1\n", "")), UsageError);
  CHECK_THROWS_AS(read_functor(good + "A1 A1 2 | 1\n"), UsageError);
  CHECK_THROWS_AS(read_functor(bad("field 2", "field 6")), UsageError);
  CHECK_THROWS_AS(read_functor_file("/nonexistent/functor.txt"), UsageError);
}

TEST_CASE("mutated functor files fail validation") {
  const FinCat c = truncated_additive(FinRing(2), 2);
  const std::string text = write_functor(builtin_functor("Id", c, 2));
  // Send the zero endomorphism of A1 to 1; then F(g) F(0) != F(g o 0) for nonzero g : A1 -> A2.
  std::string mutated = text;
  const std::string from = "A1 A1 0 | 0\n";
  mutated.replace(mutated.find(from), from.size(), "A1 A1 0 | 1\n");
  const std::string path = temp_path("mutated.txt");
  write(path, mutated);
  CHECK_THROWS_AS(load_functor(path, c, 2), InvariantViolation);

  const RunOutcome r = run_text("command = degree\ncat = PN(Z/2,2)\nwindow = 1\nfunctor = " + path + "\n");
  CHECK(r.exit_code == 3);
  CHECK(report_of(r)["error"]["kind"] == "invariant");

  const std::string ok_path = temp_path("id.txt");
  write(ok_path, text);
  const RunOutcome ok = run_text("command = degree\ncat = PN(Z/2,2)\nwindow = 1\nfunctor = " + ok_path + "\n");
  CHECK(ok.exit_code == 0);
  CHECK(report_of(ok)["results"]["degree"] == 1);
  // A file for another category is refused.
  CHECK(run_text("command = degree\ncat = PN(Z/2,3)\nfunctor = " + ok_path + "\n").exit_code == 1);
  std::remove(path.c_str());
  std::remove(ok_path.c_str());
}

TEST_CASE("exit codes") {
  CHECK(run_text("command = psf\ncat = PN(Z/2,2)\n").exit_code == 1);
  CHECK(run_text("command = degree\ncat = PN(Z/2,2)\nfunctor = builtin:Id\nwindow = 5\n").exit_code == 1);
  CHECK(run_text("n = 1\n").exit_code == 1);
  const RunOutcome cap = run_text("command = ext\ncat = PN(Z/2,2)\nF = builtin:Id\nG = builtin:T2\nenum_cap = 3\n");
  CHECK(cap.exit_code == 2);
  CHECK(report_of(cap)["error"]["kind"] == "cap");
  CHECK(run_text("command = selftest\n").exit_code == 0);
}

TEST_CASE("reports are deterministic and tagged") {
  const std::vector<std::string> configs{
      "command = degree\ncat = PN(Z/2,4)\nfunctor = builtin:const\nwindow = 3\n",
      "command = psf\ncat = PN(Z/2,3)\nfunctor = builtin:Id\nsupport = A1\nn = 0\noracle = bar\n",
      "command = present\ncat = PN(Z/2,2)\nfunctor = builtin:Lambda2\nn = 1\n",
      "command = ext\ncat = PN(Z/2,2)\nF = builtin:Id\nG = builtin:Id\nimax = 1\nmethod = both\n",
      "command = ext-compare\nring = Z/2\nn = 2\nN = 3\nd = 1\nimax = 0\n",
      "command = hh\ncat = PN(Z/2,2)\nbifunctor = builtin:lmhh\nF = builtin:Id\nt = A2\nimax = 1\n",
      "command = hh-stab\nring = Z/2\nbifunctor = builtin:const\nd = 0\nimax = 1\nnmax = 2\n",
      "command = kunneth\ncat = PN(Z/2,1)\nF = builtin:Id\nG = builtin:Id\nU = builtin:const\nV = builtin:P(A1)\n",
  };
  const std::set<std::string> statuses{"theorem-implied", "data-only", "falsifier"};
  for (const std::string& text : configs) {
    CAPTURE(text);
    const RunOutcome a = run_text(text), b = run_text(text);
    CHECK(a.exit_code == 0);
    Json ja = report_of(a), jb = report_of(b);
    CHECK(ja.contains("runtime_ms"));
    ja.erase("runtime_ms");
    jb.erase("runtime_ms");
    CHECK(ja.dump() == jb.dump());
    CHECK(ja["version"] == kVersion);
    CHECK(ja.contains("N"));
    CHECK(ja["caps"]["enumeration"].is_number());
    CHECK(ja["config"] == Json(ExperimentConfig::parse(text).entries()));
    REQUIRE(!ja["verdicts"].empty());
    for (const Json& v : ja["verdicts"]) CHECK(statuses.count(v["status"].get<std::string>()));
  }
}

TEST_CASE("command results") {
  const Json psf = report_of(run_text("command = psf\ncat = PN(Z/2,3)\nfunctor = builtin:Id\nsupport = A1\nn = 0\n"));
  CHECK(psf["results"]["holds"] == true);
  CHECK(psf["verdicts"][0]["status"] == "theorem-implied");
  CHECK(psf["results"]["sharpness_probes"].size() == 1);
  CHECK(psf["notes"].size() >= 1);

  const Json l2 = report_of(run_text("command = psf\ncat = PN(Z/2,3)\nfunctor = builtin:Lambda2\nsupport = A1\nn = 0\n"));
  CHECK(l2["results"]["holds"] == false);
  CHECK(l2["verdicts"][0]["status"] == "data-only");
  CHECK(l2["results"]["certificate"]["failure_object"] == "A2");

  const Json hh = report_of(run_text("command = hh\ncat = PN(Z/2,2)\nbifunctor = builtin:lmhh\nF = builtin:Id\nt = A1\nimax = 2\n"));
  CHECK(hh["results"]["dims"] == Json({1, 0, 0}));
  CHECK(hh["verdicts"][0]["status"] == "theorem-implied");

  const Json mon = report_of(run_text("command = hh\ncat = M(Z/2,2)\nbifunctor = builtin:dualtensor\nimax = 2\nmethod = both\n"));
  CHECK(mon["results"]["dims"] == Json({1, 0, 1}));

  const RunOutcome st = run_text("command = hh-stab\nring = Z/2\nbifunctor = builtin:const\nd = 0\nimax = 2\nnmax = 2\n");
  CHECK(report_of(st)["results"]["verdict"] == "PASS");
  CHECK(st.csv.rfind("i,n,dim_src,dim_dst,injective,surjective,in_paper_range,required_flag,pass\n", 0) == 0);
  CHECK(std::count(st.csv.begin(), st.csv.end(), '\n') == 7);

  const Json empty = report_of(run_text("command = hh-stab\nring = Z/2\nbifunctor = builtin:const\nd = 0\nnmax = 0\nN = 1\n"));
  CHECK(empty["results"]["verdict"] == "insufficient data");

  const Json deg = report_of(run_text("command = degree\ncat = PN(Z/3,4)\nfunctor = builtin:S2\nwindow = 3\n"));
  CHECK(deg["results"]["degree"] == 2);
  CHECK(deg["results"]["definitions_agree"] == true);
  CHECK(deg["field"] == 3);
}
