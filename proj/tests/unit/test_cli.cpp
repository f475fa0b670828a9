#include <doctest.h>

#include <json.hpp>

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "risplace/cli.hpp"
#include "risplace/report.hpp"

using namespace risplace;

namespace {

struct Outcome {
  int code = 0;
  std::string out;
  std::string err;
};

Outcome run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "risplace");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out;
  std::ostringstream err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::string config_path(const std::string& name) {
  return std::string(RISPLACE_SOURCE_DIR) + "/configs/" + name;
}

// Scenario file in the system temp directory, removed on scope exit.
class TempFile {
 public:
  TempFile(const std::string& name, const std::string& text)
      : path_(std::filesystem::temp_directory_path() / ("risplace_test_" + name)) {
    std::ofstream(path_) << text;
  }
  ~TempFile() { std::filesystem::remove(path_); }
  [[nodiscard]] std::string path() const { return path_.string(); }

 private:
  std::filesystem::path path_;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

}  // namespace

TEST_CASE("command line errors exit with code 2") {
  CHECK(run_cli({}).code == cli::kConfigError);
  CHECK(run_cli({"launch"}).code == cli::kConfigError);
  CHECK(run_cli({"sweep"}).code == cli::kConfigError);
  CHECK(run_cli({"sweep", "--config", config_path("small_ris_span30.yaml"), "--format", "xml"})
            .code == cli::kConfigError);
}

TEST_CASE("help exits cleanly") {
  const auto r = run_cli({"--help"});
  CHECK(r.code == cli::kSuccess);
  CHECK(r.out.find("sweep") != std::string::npos);
}

TEST_CASE("bad scenario files exit with code 2 and name the field") {
  const auto missing = run_cli({"sweep", "--config", "/nonexistent.yaml"});
  CHECK(missing.code == cli::kConfigError);
  const TempFile bad("bad.yaml", "geometry:\n  lateral_ofset_m: 4\n");
  const auto r = run_cli({"sweep", "--config", bad.path()});
  CHECK(r.code == cli::kConfigError);
  CHECK(r.err.find("lateral_ofset_m") != std::string::npos);
}

TEST_CASE("unwritable output exits with code 3") {
  const auto r = run_cli({"sweep", "--config", config_path("small_ris_span30.yaml"), "--out",
                          "/nonexistent/dir/out.csv"});
  CHECK(r.code == cli::kRuntimeError);
}

TEST_CASE("CSV sweep layout") {
  const auto r = run_cli({"sweep", "--config", config_path("small_ris_span30.yaml")});
  REQUIRE(r.code == cli::kSuccess);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 51);
  CHECK(rows[0] == report::kCsvHeader);
  CHECK(rows[1].rfind("r1h,0,", 0) == 0);
  CHECK(rows[50].rfind("r1h,30,", 0) == 0);
  CHECK(rows[1].find("SMALL_RIS") != std::string::npos);
  CHECK(std::count(rows[1].begin(), rows[1].end(), ',') == 13);
}

TEST_CASE("JSON sweep layout") {
  const auto r = run_cli(
      {"sweep", "--config", config_path("small_ris_span30.yaml"), "--format", "json"});
  REQUIRE(r.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["sweep_var"] == "r1h");
  REQUIRE(doc["records"].size() == 50);
  const auto& first = doc["records"][0];
  CHECK(first["M"] == 10404);
  CHECK(first["regime"] == "SMALL_RIS");
  CHECK(first["snr_exact_dB"].is_number());
}

TEST_CASE("files, plot and diagnostics") {
  const auto dir = std::filesystem::temp_directory_path();
  const std::string csv = (dir / "risplace_test_out.csv").string();
  const std::string svg = (dir / "risplace_test_plot.svg").string();
  const auto r = run_cli({"sweep", "--config", config_path("small_ris_span30.yaml"), "--out", csv,
                          "--plot", svg, "--diagnostics", "--threads", "2"});
  REQUIRE(r.code == cli::kSuccess);
  CHECK(r.out.empty());
  const auto rows = lines(read_file(csv));
  REQUIRE(rows.size() == 51);
  CHECK(rows[0] == std::string(report::kCsvHeader) + "," + report::kDiagnosticsHeader);
  CHECK(std::count(rows[5].begin(), rows[5].end(), ',') == 18);
  CHECK(read_file(svg).find("<svg") != std::string::npos);
  std::filesystem::remove(csv);
  std::filesystem::remove(svg);
}

TEST_CASE("points outside the model's domain become empty cells") {
  const TempFile grazing("grazing.yaml",
                         "geometry:\n  tx_rx_horizontal_m: 30\n  lateral_offset_m: 0.05\n"
                         "sweep:\n  variable: r1h\n  from: 0\n  to: 30\n  steps: 4\n");
  const auto r = run_cli({"sweep", "--config", grazing.path()});
  REQUIRE(r.code == cli::kSuccess);
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[4].find(",,") != std::string::npos);
  CHECK(r.err.find("point 30") != std::string::npos);
}

TEST_CASE("sweep output does not depend on the worker count") {
  const auto one = run_cli({"sweep", "--config", config_path("small_ris_span30.yaml"), "--threads",
                            "1", "--diagnostics"});
  const auto four = run_cli({"sweep", "--config", config_path("small_ris_span30.yaml"),
                             "--threads", "4", "--diagnostics"});
  REQUIRE(one.code == cli::kSuccess);
  CHECK(one.out == four.out);
}

TEST_CASE("optimize reports stationary points and the oracle gap") {
  const TempFile sym("sym.yaml",
                     "geometry:\n  tx_rx_horizontal_m: 80\n  lateral_offset_m: 45\n"
                     "  tx_height_m: 4\n  rx_height_m: 4\n"
                     "model:\n  mode: small\n"
                     "placement:\n  oracle_mode: small\n");
  const auto r = run_cli({"optimize", "--config", sym.path(), "--oracle"});
  REQUIRE(r.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc["results"].size() == 1);
  const auto& res = doc["results"][0];
  CHECK(res["solver"] == "SMALL");
  CHECK(res["r1h_opt_m"].get<double>() == doctest::Approx(40.0).epsilon(1e-9));
  CHECK(res["discriminant"].get<double>() < 0.0);
  CHECK(res["stationary_points"].size() == 1);
  CHECK(res["stationary_points"][0]["kind"] == "local_max");
  CHECK(res["oracle"]["gap_fraction_of_rh"].get<double>() < 1e-6);
}

TEST_CASE("optimize flags a surface too large for the small-surface solver") {
  const TempFile big("big.yaml",
                     "ris:\n  area_m2: 0.046\n"
                     "geometry:\n  tx_rx_horizontal_m: 30\n  lateral_offset_m: 5\n"
                     "model:\n  mode: small\n");
  const auto r = run_cli({"optimize", "--config", big.path()});
  REQUIRE(r.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["results"][0]["regime_violation"] == true);
}

TEST_CASE("optimize over an offset sweep gives one result per value") {
  const auto r = run_cli({"optimize", "--config", config_path("optimum_vs_offset_small.yaml")});
  REQUIRE(r.code == cli::kSuccess);
  const auto doc = nlohmann::json::parse(r.out);
  CHECK(doc["sweep_var"] == "ys");
  CHECK(doc["results"].size() == 40);
}

TEST_CASE("validate reports every anchor and the exit code reflects them") {
  const auto r = run_cli({"validate"});
  const auto rows = lines(r.out);
  REQUIRE(rows.size() == 11);
  bool all = true;
  for (std::size_t i = 0; i < 10; ++i) {
    const bool pass = rows[i].rfind("PASS ", 0) == 0;
    CHECK((pass || rows[i].rfind("FAIL ", 0) == 0));
    all = all && pass;
  }
  CHECK(r.code == (all ? cli::kSuccess : cli::kAnchorFailure));
  CHECK(rows[10].find("anchors passed") != std::string::npos);
}

TEST_CASE("validate as JSON") {
  const auto r = run_cli({"validate", "--json"});
  const auto doc = nlohmann::json::parse(r.out);
  REQUIRE(doc.size() == 10);
  for (const auto& a : doc) {
    CHECK(a.contains("name"));
    CHECK(a["actual"].is_number());
  }
}

TEST_CASE("validate detects a perturbed first-null constant") {
  const auto count_fail = [](const std::string& text) {
    int n = 0;
    for (const auto& l : lines(text)) n += l.rfind("FAIL ", 0) == 0 ? 1 : 0;
    return n;
  };
  const auto base = run_cli({"validate"});
  const auto bent = run_cli({"validate", "--null-factor", "1.25"});
  CHECK(bent.code == cli::kAnchorFailure);
  CHECK(count_fail(bent.out) > count_fail(base.out));
}
