#include <doctest.h>

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <string>

#include <json.hpp>

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args) {
  const std::string cmd = std::string(FERMATBALL_CLI) + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t n;
  while ((n = fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), n);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

const std::string kData = FERMATBALL_DATA_DIR;

}  // namespace

TEST_CASE("verify suites exit 0 and report every check") {
  for (const char* suite : {"fano", "chern", "namba", "lattice", "dm"}) {
    const auto r = run(std::string("verify ") + suite);
    CHECK(r.code == 0);
    const auto j = nlohmann::json::parse(r.out);
    CHECK(j["suite"] == suite);
    CHECK(j["summary"]["total"] == j["summary"]["passed"]);
    CHECK(j["summary"]["total"].get<int>() == static_cast<int>(j["checks"].size()));
  }
}

TEST_CASE("named checks") {
  const auto chern = nlohmann::json::parse(run("verify chern").out);
  bool found = false;
  for (const auto& c : chern["checks"])
    if (c["id"] == "log_chern.S") {
      found = true;
      CHECK(c["expected"] == "81=3*27");
      CHECK(c["pass"] == true);
      CHECK(c["provenance"] == "paper");
    }
  CHECK(found);
  const auto fano = nlohmann::json::parse(run("verify fano").out);
  found = false;
  for (const auto& c : fano["checks"])
    if (c["id"] == "points.count") found = c["expected"] == "135";
  CHECK(found);
  const auto namba = nlohmann::json::parse(run("verify namba").out);
  found = false;
  for (const auto& c : namba["checks"])
    if (c["id"] == "cover_group.p2") found = c["computed"] == "(Z/3)^5";
  CHECK(found);
}

TEST_CASE("json and markdown carry the same check ids") {
  const auto json = nlohmann::json::parse(run("--format json verify all").out);
  const auto md = run("--format md verify all").out;
  CHECK(json["checks"].size() >= 40);
  for (const auto& c : json["checks"]) CHECK(md.find("| " + c["id"].get<std::string>() + " |") != std::string::npos);
}

TEST_CASE("reports are deterministic across runs and worker counts") {
  const auto a = run("verify all");
  const auto b = run("verify all");
  const auto c = run("--workers 4 verify all");
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const auto s1 = run("--workers 1 lattice search --height 7");
  const auto s3 = run("--workers 3 lattice search --height 7");
  CHECK(s1.out == s3.out);
}

TEST_CASE("exit code 1 when a check fails") {
  CHECK(run("lattice quotient --level 3 --compare-rank 5").code == 1);
  CHECK(run("lattice quotient --level 3 --compare-rank 6").code == 0);
}

TEST_CASE("exit code 2 on usage and input errors") {
  CHECK(run("").code == 2);
  CHECK(run("verify").code == 2);
  CHECK(run("verify everything").code == 2);
  CHECK(run("--format xml verify fano").code == 2);
  CHECK(run("lattice search").code == 2);
  CHECK(run("dm enumerate --max-den 30").code == 2);
  CHECK(run("namba classify /nonexistent/file.arr").code == 2);
  CHECK(run("dm periods --mu 1/3,1/3,1/3,1/3,1/3 --points 0,1,2,3,4").code == 2);
  CHECK(run("lattice member \"1 0 0\"").code == 2);
  CHECK(run("lattice quotient --level 3 --budget 5").code == 2);
  CHECK(run("--help").code == 0);
}

TEST_CASE("bundled arrangement files") {
  const auto p2 = run("namba classify " + kData + "/p2-quadrilateral.arr");
  CHECK(p2.code == 0);
  const auto j = nlohmann::json::parse(p2.out);
  CHECK(j["data"]["rank"] == 1);
  CHECK(j["data"]["branches"].size() == 6);
  CHECK(j["data"]["group"] == "(Z/3)^5");
  CHECK(j["data"]["gram"][0][0] == "1");
  const auto dp5 = nlohmann::json::parse(run("namba classify " + kData + "/dp5-ten-curves.arr").out);
  CHECK(dp5["data"]["rank"] == 5);
  CHECK(dp5["data"]["branches"].size() == 10);
  CHECK(dp5["data"]["group"] == "(Z/3)^5");
}

TEST_CASE("queries") {
  const auto member = nlohmann::json::parse(run("lattice member \"w 0 0 0 1 0 0 0 1\"").out);
  CHECK(member["data"]["in_gamma"] == true);
  const auto swap = nlohmann::json::parse(run("lattice member \"0 1 0 1 0 0 0 0 1\"").out);
  CHECK(swap["data"]["unitary"] == true);
  CHECK(swap["data"]["in_gamma"] == false);
  const auto search = nlohmann::json::parse(run("lattice search --height 1").out);
  CHECK(search["data"]["count"] == 27);
  const auto periods = run("dm periods --mu 1/3,1/3,1/3,1/3,2/3 --points \"0,1,0.3+0.8I,-0.6+0.2I,0.5-0.7I\"");
  CHECK(periods.code == 0);
  CHECK(nlohmann::json::parse(periods.out)["data"]["rank"] == 3);
  const auto single = nlohmann::json::parse(
      run("dm periods --samples 1 --mu 1/3,1/3,1/3,1/3,2/3 --points \"0,1,0.3+0.8I,-0.6+0.2I,0.5-0.7I\"").out);
  CHECK(single["data"]["rank"] == 1);
  CHECK(single["data"]["degenerate"] == true);
}

TEST_CASE("global options are accepted after the subcommand") {
  const auto before = run("--format json verify chern");
  const auto after = run("verify chern --format json");
  CHECK(after.code == 0);
  CHECK(before.out == after.out);
  CHECK(run("verify chern --format md").out.rfind("# chern", 0) == 0);
}
