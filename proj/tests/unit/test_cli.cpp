#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"

namespace fs = std::filesystem;
using qrja::cli::run;

namespace {

struct Scratch {
  fs::path root = fs::temp_directory_path() / "qrja-test-cli";
  Scratch() {
    fs::remove_all(root);
    fs::create_directories(root);
  }
  ~Scratch() { fs::remove_all(root); }

  std::string file(const std::string& name, const std::string& body) const {
    std::ofstream(root / name) << body;
    return (root / name).string();
  }
  std::string out() const { return (root / "out").string(); }
};

int call(std::vector<std::string> args, std::string* printed = nullptr) {
  std::ostringstream o, e;
  const int code = run(args, o, e);
  if (printed) *printed = o.str() + e.str();
  return code;
}

}  // namespace

TEST_CASE("aggregate writes ratings and maps exponent errors to exit code 3") {
  Scratch s;
  const auto js = s.file("j.csv", "a,b,y,w\n0,1,1,1\n1,2,1,1\n0,2,3,1\n");
  std::string printed;
  CHECK(call({"aggregate", js, "--p", "2", "--out", s.out()}, &printed) == qrja::cli::kOk);
  CHECK(printed.find("loss 0.333") != std::string::npos);
  CHECK(fs::exists(fs::path(s.out()) / "ratings.csv"));
  CHECK(fs::exists(fs::path(s.out()) / "result.json"));
  CHECK(call({"aggregate", js, "--p", "0.5", "--out", s.out()}, &printed) == qrja::cli::kUnsupportedExponent);
  CHECK(printed.find("NP-hard") != std::string::npos);
}

TEST_CASE("iteration cap reports non-convergence with exit code 2") {
  Scratch s;
  const auto js = s.file("j.csv", "a,b,y\n0,1,1\n1,2,4\n2,3,-2\n3,0,7\n0,2,1\n");
  CHECK(call({"aggregate", js, "--p", "1.5", "--max-iterations", "1", "--tolerance", "1e-14", "--out", s.out()}) ==
        qrja::cli::kNotConverged);
}

TEST_CASE("unknown method is exit code 4 and missing input is exit code 1") {
  Scratch s;
  const auto cs = s.file("c.csv", "contest,contestant,score\n1,a,1\n1,b,2\n2,a,3\n2,b,1\n");
  std::string printed;
  CHECK(call({"evaluate", cs, "--methods", "mean,nope", "--out", s.out()}, &printed) == qrja::cli::kUnknownMethod);
  CHECK(printed.find("qrja-l1") != std::string::npos);
  CHECK(call({"evaluate", cs, "--out", s.out()}) == qrja::cli::kOk);
  CHECK(fs::exists(fs::path(s.out()) / "metrics.csv"));
  CHECK(call({"aggregate", (s.root / "missing.csv").string(), "--out", s.out()}) == qrja::cli::kIoError);
}

TEST_CASE("reduce-maxcut verifies small graphs and rejects p >= 1") {
  Scratch s;
  const auto g = s.file("g.txt", "3\n0 1\n1 2\n0 2\n");
  std::string printed;
  CHECK(call({"reduce-maxcut", g, "--p", "0.5", "--out", s.out()}, &printed) == qrja::cli::kOk);
  CHECK(printed.find("k* = 2") != std::string::npos);
  CHECK(call({"reduce-maxcut", g, "--p", "1", "--out", s.out()}) == qrja::cli::kUnsupportedExponent);
}

TEST_CASE("help exits 0 and self-test passes") {
  std::string printed;
  CHECK(call({"--help"}, &printed) == qrja::cli::kOk);
  CHECK(printed.find("reduce-maxcut") != std::string::npos);
  CHECK(call({"self-test"}, &printed) == qrja::cli::kOk);
  CHECK(printed.find("FAIL") == std::string::npos);
}
