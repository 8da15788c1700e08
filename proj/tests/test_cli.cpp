#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "fpr/harness.hpp"

using namespace fpr;

namespace {

struct Run {
  int rc = -1;
  std::string out;
};

Run fpr_run(const std::string& args, const std::string& env = "") {
  const char* bin = std::getenv("FPR_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = env + " '" + std::string(bin) + "' " + args + " 2>/dev/null";
  Run r;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  int status = pclose(p);
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<Json> lines(const std::string& s) {
  std::vector<Json> out;
  std::istringstream in(s);
  for (std::string line; std::getline(in, line);)
    if (!line.empty()) out.push_back(Json::parse(line));
  return out;
}

}  // namespace

TEST_CASE("formula") {
  auto r = fpr_run("formula tab:class/Sp/Oeps/b1 --n 6 --q 2 --eps -");
  CHECK(r.rc == 0);
  auto j = Json::parse(r.out);
  CHECK(j["value"] == "4/7");
  CHECK(j["formula_id"] == "tab:class/Sp/Oeps/b1");
  CHECK(!j["anchor"].get<std::string>().empty());

  CHECK(fpr_run("--output human formula subset-rcycle --n 7 --l 3 --r 5").out == "0\n");
  CHECK(fpr_run("--output human formula partition-transposition --n 6").out == "2/5\n");
  CHECK(fpr_run("--output human formula tab:class/L/P1/transvection --n=3 --q=2").out == "3/7\n");

  CHECK(fpr_run("formula nosuch --n 1").rc == 2);
  CHECK(fpr_run("formula subset-rcycle --n 7 --l x --r 5").rc == 2);
  CHECK(fpr_run("formula tab:class/U/P1/omega --n 4 --q 2").rc == 3);

  auto list = lines(fpr_run("formula list").out);
  REQUIRE(list.size() > 30);
  for (const auto& f : list) {
    CHECK(f.contains("id"));
    CHECK(f["params"].is_array());
    CHECK(f.contains("anchor"));
  }
}

TEST_CASE("brute") {
  auto r = fpr_run("brute --group catalog:sp6-P1 --scan");
  CHECK(r.rc == 0);
  auto j = Json::parse(r.out);
  // 1/(q+1) + q(q^(n-2)-1)/((q+1)(q^n-1)) at n = 6, q = 2
  CHECK(j["max_fpr"]["2"]["fpr"] == (BigRational(1, 3) + BigRational(2 * 15, 3 * 63)).str());
  CHECK(j["order"] == "1451520");
  CHECK(j["degree"] == 63);

  CHECK(fpr_run("brute --group catalog:a5-natural --min-index").out == "2\n");

  const std::string path = "/tmp/fpr_cli_test_group.json";
  std::ofstream(path) << R"j({"degree": 4, "generators": [[1, 2, 3, 0], "(0 1)"], "name": "S4"})j";
  auto e = Json::parse(fpr_run("brute --group file:" + path + " --element 'cycles:(0 1)'").out);
  CHECK(e["fpr"] == "1/2");
  CHECK(e["ind"] == 1);
  CHECK(e["order"] == "24");

  CHECK(fpr_run("brute --group catalog:sp6-P1 --scan", "FPR_CLOSURE_CAP=1000").rc == 4);
  CHECK(fpr_run("brute --group catalog:nosuch").rc == 2);
  CHECK(fpr_run("brute --group catalog:s6-P1").rc == 2);
  CHECK(fpr_run("brute --group nowhere").rc == 2);
}

TEST_CASE("classify") {
  auto r = fpr_run("classify --family Sp --n 6 --q 2 --action Oeps:- --r 2");
  CHECK(r.rc == 0);
  auto j = Json::parse(r.out);
  REQUIRE(j["exceptions"].size() == 1);
  CHECK(j["exceptions"][0]["fpr"] == "4/7");

  auto s = Json::parse(fpr_run("classify --family SymAlt --n 10 --action subsets:2 --r 3").out);
  CHECK(s["exceptions"].size() == 1);

  auto u = fpr_run("classify --family U --n 5 --q 3 --action P1 --r 5");
  CHECK(u.rc == 0);
  CHECK(Json::parse(u.out)["exceptions"].empty());

  auto spec = fpr_run(R"(classify --spec '{"family":"Symplectic","n":6,"q":2}' --action Oeps:- --r 2)");
  CHECK(Json::parse(spec.out)["exceptions"].size() == 1);

  CHECK(fpr_run("classify --family Sp --n 5 --q 2 --action P1 --r 2").rc == 2);
  CHECK(fpr_run("classify --family Sp --n 6 --q 2 --action P1 --r 4").rc == 2);
  CHECK(fpr_run("classify --family Nope --n 6 --action P1 --r 2").rc == 2);
}

TEST_CASE("mindeg and minindex") {
  auto d = Json::parse(fpr_run("mindeg --family Sporadic --name M22:2 --action 'catalog:L3(4).2_2'").out);
  CHECK(d["mu"] == "14");
  auto i = Json::parse(fpr_run("minindex --family U --n 4 --q 2 --ext .2 --action P2").out);
  CHECK(i["ind"] == "6");
  auto o = fpr_run("minindex --family Affine --p 7 --d 1 --name C3 --action natural");
  CHECK(o.rc == 3);
  auto ob = Json::parse(fpr_run("minindex --family Affine --p 7 --d 1 --name C3 --action natural --r 3").out);
  CHECK(ob["lower"] == "4");
}

TEST_CASE("verify") {
  auto r = fpr_run("verify tables --no-timing");
  CHECK(r.rc == 0);
  auto reps = lines(r.out);
  REQUIRE(!reps.empty());
  for (const auto& j : reps) {
    CHECK(j["status"] == "pass");
    CHECK(!j.contains("ms"));
    for (const char* k : {"case", "computed", "expected", "provenance", "degree"}) CHECK(j.contains(k));
  }
  auto again = fpr_run("verify tables --no-timing --parallelism 3");
  CHECK(again.out == r.out);

  auto one = fpr_run("verify case:m22.2/2B");
  CHECK(one.rc == 0);
  CHECK(Json::parse(one.out)["computed"] == "4/11");
  CHECK(fpr_run("verify nosuch").rc == 2);
  CHECK(fpr_run("verify case:nosuch").rc == 2);

  auto csv = fpr_run("--output csv verify diagonal");
  CHECK(csv.out.rfind("case,status,", 0) == 0);
}

TEST_CASE("catalog list") {
  auto groups = lines(fpr_run("catalog list").out);
  CHECK(groups.size() == catalog_groups().size());
  auto cases = lines(fpr_run("catalog list --cases").out);
  CHECK(cases.size() == catalog().size());
  CHECK(fpr_run("").rc == 2);
}
