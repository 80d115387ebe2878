// SPDX-License-Identifier: Apache-2.0
#include "ctdiam/io.hpp"

#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace fs = std::filesystem;
using ctdiam::Json;

namespace {

struct Sandbox {
  fs::path dir;

  explicit Sandbox(const std::string& name) : dir(fs::temp_directory_path() / ("ctdiam_cli_" + name)) {
    fs::remove_all(dir);
    fs::create_directories(dir);
  }
  ~Sandbox() { fs::remove_all(dir); }

  fs::path write(const std::string& file, const std::string& text) const {
    std::ofstream(dir / file) << text;
    return dir / file;
  }
};

// Runs the tool and returns its exit status; stdout and stderr go to `log`.
int run(const std::string& args, const fs::path& log) {
  const std::string cmd = std::string("\"") + CTDIAM_CLI + "\" " + args + " > \"" + log.string() + "\" 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

const char* kFivePoints = R"({
  "body": {"kind": "simplex", "dim": 1},
  "mesh": {"kind": "explicit", "points": [-1, -0.5, 0, 0.5, 1]},
  "k_max": 2,
  "strategy": "brute-force"
})";

}  // namespace

TEST_SUITE("cli") {
  TEST_CASE("tdiam writes its artifacts") {
    Sandbox box("tdiam");
    const auto cfg = box.write("c.json", kFivePoints);
    REQUIRE(run("tdiam --config " + cfg.string() + " --out " + (box.dir / "o").string(), box.dir / "log") == 0);
    const auto csv = slurp(box.dir / "o" / "diameter.csv");
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
    const auto report = Json::parse(slurp(box.dir / "o" / "report.json"));
    REQUIRE(report.contains("rows"));
    CHECK(report.at("rows").size() == 2);
    CHECK(report.at("rows")[1].at("delta_k").get<double>() == doctest::Approx(std::cbrt(2.0)));
    const auto manifest = slurp(box.dir / "o" / "MANIFEST");
    CHECK(manifest.find("diameter.csv") != std::string::npos);
    CHECK(manifest.find("report.json") != std::string::npos);
  }

  TEST_CASE("every subcommand runs") {
    Sandbox box("all");
    const auto cfg = box.write("c.json", kFivePoints);
    for (const std::string sub : {"body-check", "enumerate", "transform", "vdm", "fekete", "leja"}) {
      CAPTURE(sub);
      CHECK(run(sub + " --config " + cfg.string() + " --k 2 --out " + (box.dir / sub).string(), box.dir / "log") == 0);
    }
    CHECK(run("cheb --config " + cfg.string() + " --k 2 --alpha 2 --out " + (box.dir / "cheb").string(),
              box.dir / "log") == 0);
    const auto cheb = Json::parse(slurp(box.dir / "cheb" / "cheb.json"));
    const auto& rec = cheb.is_array() ? cheb[0] : (cheb.contains("records") ? cheb.at("records")[0] : cheb);
    CHECK(rec.at("nu").get<double>() == doctest::Approx(0.5));
    const auto fekete = Json::parse(slurp(box.dir / "fekete" / "fekete.json"));
    CHECK(fekete.at("indices") == Json::parse("[0, 2, 4]"));
    CHECK(fekete.at("log_vdm").get<double>() == doctest::Approx(std::log(2.0)));
  }

  TEST_CASE("validation failures exit with status 2") {
    Sandbox box("bad");
    const auto unbounded =
        box.write("u.json", R"({"body": {"dim": 2, "halfspaces": [{"a": [1, -1], "b": 1}, {"a": [-1, 1], "b": 1}]}})");
    CHECK(run("body-check --config " + unbounded.string() + " --out " + box.dir.string(), box.dir / "log") == 2);
    CHECK(slurp(box.dir / "log").find("(1,1)") != std::string::npos);
    const auto broken = box.write("b.json", "{ not json");
    CHECK(run("tdiam --config " + broken.string(), box.dir / "log") == 2);
    CHECK(run("tdiam --config " + (box.dir / "missing.json").string(), box.dir / "log") == 2);
    CHECK(run("frobnicate", box.dir / "log") == 2);
  }

  TEST_CASE("outputs do not depend on the worker count") {
    Sandbox box("workers");
    const auto cfg = box.write("c.json", R"({
      "body": {"kind": "box", "sides": [1, 1]},
      "mesh": {"kind": "torus", "circles": [{"count": 5}, {"count": 4}]},
      "k_max": 1,
      "strategy": "brute-force"
    })");
    for (const std::string sub : {"tdiam", "leja", "vdm"}) {
      CAPTURE(sub);
      REQUIRE(run(sub + " --config " + cfg.string() + " --k 1 --workers 1 --out " + (box.dir / "w1").string(),
                  box.dir / "log") == 0);
      REQUIRE(run(sub + " --config " + cfg.string() + " --k 1 --workers 3 --out " + (box.dir / "w3").string(),
                  box.dir / "log") == 0);
      for (const auto& entry : fs::directory_iterator(box.dir / "w1")) {
        const auto name = entry.path().filename();
        CAPTURE(name.string());
        CHECK(slurp(box.dir / "w1" / name) == slurp(box.dir / "w3" / name));
      }
    }
  }
}
