// Integration tests driving the installed CLI binary. The path arrives via
// the MIXSYNTH_CLI environment variable (set by ctest); the suite fails
// loudly when it is missing so a misconfigured harness cannot skip silently.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include "doctest.h"
#include "json.hpp"
#include "mixsynth/json_io.hpp"

namespace fs = std::filesystem;
using namespace mixsynth;

namespace {

std::string cli_path() {
  const char* p = std::getenv("MIXSYNTH_CLI");
  REQUIRE_MESSAGE(p != nullptr, "MIXSYNTH_CLI must point at the mixsynth binary");
  return p;
}

struct TempDir {
  fs::path path;
  explicit TempDir(const std::string& name) : path(fs::path("cli_test_tmp") / name) {
    fs::remove_all(path);
    fs::create_directories(path);
  }
};

int run(const std::string& cmd) {
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), ("missing file: " + p.string()).c_str());
  return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

}  // namespace

TEST_CASE("cli mix writes parseable outputs with an in-regime bound") {
  TempDir dir("mix");
  const std::string base = cli_path() + std::string(" mix --target \"Rz(0.3)\" --eps 1e-3") +
                           " --oracle synthetic --seed 7 --out-ensemble " +
                           (dir.path / "e.json").string() + " --out-trace " +
                           (dir.path / "t.jsonl").string() + " --out-report " +
                           (dir.path / "r.json").string();
  CHECK(run(base + " 2>/dev/null") == 0);

  const EnsembleFile ens = ensemble_from_json_text(slurp(dir.path / "e.json"));
  CHECK(ens.ensemble.construction == "hull");
  const HullTrace trace = trace_from_jsonl_text(slurp(dir.path / "t.jsonl"));
  CHECK(trace.terminated);
  std::optional<double> bound;
  const LemmaReport report = report_from_json_text(slurp(dir.path / "r.json"), &bound);
  REQUIRE(bound.has_value());
  CHECK(report.bound_diamond_distance <= 10.0 * 1e-3 * 1e-3);
  CHECK(*bound <= 10.0 * 1e-3 * 1e-3);
}

TEST_CASE("cli runs are byte-identical for identical seeds") {
  TempDir a("det_a"), b("det_b");
  for (const TempDir* d : {&a, &b}) {
    const std::string cmd = cli_path() + std::string(" mix --target \"Rz(0.25)\" --eps 1e-3") +
                            " --oracle synthetic --seed 42 --out-ensemble " +
                            (d->path / "e.json").string() + " --out-trace " +
                            (d->path / "t.jsonl").string() + " --out-report " +
                            (d->path / "r.json").string() + " 2>/dev/null";
    CHECK(run(cmd) == 0);
  }
  CHECK(slurp(a.path / "e.json") == slurp(b.path / "e.json"));
  CHECK(slurp(a.path / "t.jsonl") == slurp(b.path / "t.jsonl"));
  CHECK(slurp(a.path / "r.json") == slurp(b.path / "r.json"));
}

TEST_CASE("cli reports a missing target file as a config error") {
  TempDir dir("missing");
  const std::string cmd = cli_path() + std::string(" mix --target ") +
                          (dir.path / "nope.json").string() + " --eps 1e-3 --out-ensemble " +
                          (dir.path / "e.json").string() + " --out-trace " +
                          (dir.path / "t.jsonl").string() + " --out-report " +
                          (dir.path / "r.json").string();
  CHECK(run(cmd + " 2>" + (dir.path / "err.txt").string()) == 2);
  CHECK(slurp(dir.path / "err.txt").find("nope.json") != std::string::npos);
}

TEST_CASE("cli warns outside the theorem regime and drops the claim") {
  TempDir dir("regime");
  const std::string cmd = cli_path() + std::string(" mix --target \"Rz(0.3)\" --eps 0.02") +
                          " --oracle synthetic --seed 1 --out-ensemble " +
                          (dir.path / "e.json").string() + " --out-trace " +
                          (dir.path / "t.jsonl").string() + " --out-report " +
                          (dir.path / "r.json").string();
  CHECK(run(cmd + " 2>" + (dir.path / "err.txt").string()) == 0);
  CHECK(slurp(dir.path / "err.txt").find("outside theorem regime") != std::string::npos);
  std::optional<double> bound;
  report_from_json_text(slurp(dir.path / "r.json"), &bound);
  CHECK_FALSE(bound.has_value());
}

TEST_CASE("cli axial pipeline with certification") {
  TempDir dir("axial");
  const std::string cmd = cli_path() + std::string(" axial --theta 0.3 --eps 1e-3 --seed 3") +
                          " --out-ensemble " + (dir.path / "e.json").string() +
                          " --out-report " + (dir.path / "r.json").string() + " 2>/dev/null";
  CHECK(run(cmd) == 0);
  const EnsembleFile ens = ensemble_from_json_text(slurp(dir.path / "e.json"));
  CHECK(ens.ensemble.construction == "axial");
  CHECK(ens.q.has_value());
  CHECK(ens.ensemble.members.size() <= 4);
  CHECK(ens.ensemble.b <= 3e-6);

  const std::string cert_cmd = cli_path() + std::string(" certify --ensemble ") +
                               (dir.path / "e.json").string() + " --out " +
                               (dir.path / "c.json").string() + " 2>/dev/null";
  CHECK(run(cert_cmd) == 0);
  const DiamondCertificate cert = certificate_from_json_text(slurp(dir.path / "c.json"));
  CHECK(cert.upper <= 5e-6);
}

TEST_CASE("cli axial rejects a non-axial target") {
  TempDir dir("nonaxial");
  const std::string cmd = cli_path() + std::string(" axial --target \"Rx(0.3)\" --eps 1e-3") +
                          " --out-ensemble " + (dir.path / "e.json").string() +
                          " --out-report " + (dir.path / "r.json").string() + " 2>/dev/null";
  CHECK(run(cmd) == 2);
}

TEST_CASE("cli certify flags a corrupted ensemble and rejects a broken simplex") {
  TempDir dir("corrupt");
  const std::string mix_cmd = cli_path() + std::string(" mix --target \"Rz(0.3)\" --eps 1e-3") +
                              " --oracle synthetic --seed 7 --out-ensemble " +
                              (dir.path / "e.json").string() + " --out-trace " +
                              (dir.path / "t.jsonl").string() + " --out-report " +
                              (dir.path / "r.json").string() + " 2>/dev/null";
  REQUIRE(run(mix_cmd) == 0);

  // Move 0.2 of probability mass between two members (the simplex survives,
  // the mixture no longer cancels).
  nlohmann::json j = nlohmann::json::parse(slurp(dir.path / "e.json"));
  REQUIRE(j["members"].size() >= 2);
  std::size_t hi = 0;
  for (std::size_t i = 1; i < j["members"].size(); ++i)
    if (j["members"][i]["p"].get<double>() > j["members"][hi]["p"].get<double>()) hi = i;
  const std::size_t other = hi == 0 ? 1 : 0;
  const double shift = std::min(0.2, j["members"][hi]["p"].get<double>() * 0.5);
  j["members"][hi]["p"] = j["members"][hi]["p"].get<double>() - shift;
  j["members"][other]["p"] = j["members"][other]["p"].get<double>() + shift;
  {
    std::ofstream out(dir.path / "bad.json", std::ios::binary);
    out << j.dump();
  }
  const int rc = run(cli_path() + std::string(" certify --ensemble ") +
                     (dir.path / "bad.json").string() + " --out " +
                     (dir.path / "c.json").string() + " 2>/dev/null");
  CHECK(rc == 20);
  const std::string cert_text = slurp(dir.path / "c.json");
  CHECK(cert_text.find("\"falsified\":true") != std::string::npos);

  // Now break the simplex outright: schema error.
  j["members"][0]["p"] = j["members"][0]["p"].get<double>() + 0.1;
  {
    std::ofstream out(dir.path / "worse.json", std::ios::binary);
    out << j.dump();
  }
  CHECK(run(cli_path() + std::string(" certify --ensemble ") + (dir.path / "worse.json").string() +
            " --out " + (dir.path / "c2.json").string() + " 2>/dev/null") == 3);
}

TEST_CASE("cli savings validates ranges and handles a single point") {
  TempDir dir("savings");
  CHECK(run(cli_path() + std::string(" savings --alpha 10 --eps-min 1e-2 --eps-max 1e-12 --out ") +
            (dir.path / "s.csv").string() + " 2>/dev/null") == 2);
  CHECK(run(cli_path() + std::string(" savings --alpha 10 --eps-min 1e-8 --eps-max 1e-8") +
            " --points 1 --out " + (dir.path / "s.csv").string() + " 2>/dev/null") == 0);
  const auto pts = savings_from_csv_text(slurp(dir.path / "s.csv"));
  REQUIRE(pts.size() == 1);
  CHECK(pts[0].eps == 1e-8);
}

TEST_CASE("cli mix works with the exhaustive oracle at desk scale") {
  TempDir dir("desk");
  const std::string cmd = cli_path() + std::string(" mix --target \"Rz(0.35)\" --eps 0.25") +
                          " --oracle exhaustive --budget 4 --out-ensemble " +
                          (dir.path / "e.json").string() + " --out-trace " +
                          (dir.path / "t.jsonl").string() + " --out-report " +
                          (dir.path / "r.json").string();
  CHECK(run(cmd + " 2>/dev/null") == 0);
  const EnsembleFile ens = ensemble_from_json_text(slurp(dir.path / "e.json"));
  for (const EnsembleMember& m : ens.ensemble.members) CHECK(m.costed.word.has_value());
}
