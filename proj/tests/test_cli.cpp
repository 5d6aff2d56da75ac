#include <doctest.h>

#include <array>
#include <cstdio>
#include <string>

TEST_SUITE("cli") {

namespace {

std::pair<int, std::string> run(const std::string& args) {
  std::string cmd = std::string(OPCHAIN_CLI_PATH) + " " + args + " 2>/dev/null";
  std::array<char, 4096> buf;
  std::string out;
  FILE* p = popen(cmd.c_str(), "r");
  REQUIRE(p != nullptr);
  while (fgets(buf.data(), buf.size(), p)) out += buf.data();
  int rc = pclose(p);
  return {rc, out};
}

}  // namespace

TEST_CASE("moments command emits sqrt(pi) for the plain Gaussian") {
  auto [rc, out] = run("moments --weight gj --A 1 --B 0 --t 0 --k 0 --digits 60");
  CHECK(rc == 0);
  CHECK(out.find("1.77245385090551602729816748334114518279754945612238712821380778985") !=
        std::string::npos);
}

TEST_CASE("identical configs give byte-identical output") {
  auto a = run("recurrence --weight spg --alpha 1 --t 0.1 --n 6 --digits 80 --format csv");
  auto b = run("recurrence --weight spg --alpha 1 --t 0.1 --n 6 --digits 80 --format csv");
  CHECK(a.first == 0);
  CHECK(a.second == b.second);
  CHECK(a.second.find("# config:") == 0);
  CHECK(a.second.find("asymptoticRatio") != std::string::npos);
}

TEST_CASE("ode-residual adjudicates and exits zero on pass") {
  auto [rc, out] = run("ode-residual --weight df --alpha 1 --t 1 --n 5 --digits 80");
  CHECK(rc == 0);
  CHECK(out.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(out.find("lambda-convention") != std::string::npos);
}

TEST_CASE("painleve-certify produces a verdict json") {
  auto [rc, out] =
      run("painleve-certify --family spg --n 3 --alpha 1 --window 1:2 --tol 1e-12 --digits 60");
  CHECK(rc == 0);
  CHECK(out.find("\"verdict\": \"pass\"") != std::string::npos);
  CHECK(out.find("maxResidual") != std::string::npos);
}

TEST_CASE("errata command lists the adjudication ledger") {
  auto [rc, out] = run("errata --digits 60");
  CHECK(rc == 0);
  for (const char* id : {"spg-qn-stray-8", "df-alpha-convention", "gj-eta-power",
                         "deformed-heun-sign", "q-display-sigma-argument", "gj-piv-instance",
                         "jc-pvi-denominator", "spg-moment-variable", "lndelta-small-s"}) {
    CHECK(out.find(id) != std::string::npos);
  }
}

TEST_CASE("weight-json input and error reporting") {
  auto ok = run(R"(moments --weight-json {\"family\":\"jc\",\"params\":{\"alpha\":\"1\",\"a\":\"0.5\"}} --k 0 --digits 60)");
  CHECK(ok.first == 0);
  auto bad = run("moments --weight spg --alpha -1 --t 1 --k 0");
  CHECK(bad.first != 0);
}

}  // TEST_SUITE
