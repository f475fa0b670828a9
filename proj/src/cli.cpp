#include "risplace/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>
#include <string>

#include "risplace/config.hpp"
#include "risplace/report.hpp"

namespace risplace::cli {

namespace {

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot open '" + path + "' for writing");
  f << text;
  if (!f) throw Error("failed writing '" + path + "'");
}

std::string short_number(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

struct SweepArgs {
  std::string config;
  std::string out;
  std::string format;
  std::string plot;
  bool diagnostics = false;
  unsigned threads = 0;
};

struct OptimizeArgs {
  std::string config;
  std::string out;
  bool oracle = false;
  unsigned threads = 0;
};

struct ValidateArgs {
  bool json = false;
  double null_factor = antenna::kFirstNullFactor;
};

int do_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  config::ScenarioConfig cfg = config::load_config(a.config);
  if (a.format == "csv") cfg.format = config::OutputFormat::Csv;
  if (a.format == "json") cfg.format = config::OutputFormat::Json;
  const auto records = report::run_sweep(cfg, a.threads, a.diagnostics);
  for (const auto& r : records) {
    if (!r.error.empty()) err << "point " << report::format_number(r.value) << ": " << r.error << '\n';
  }

  std::ostringstream text;
  if (cfg.format == config::OutputFormat::Json) {
    report::write_json(text, cfg, records, a.diagnostics);
  } else {
    report::write_csv(text, cfg, records, a.diagnostics);
  }
  const std::string path = !a.out.empty() ? a.out : cfg.output_path.value_or("");
  if (path.empty()) {
    out << text.str();
  } else {
    write_file(path, text.str());
  }
  if (!a.plot.empty()) {
    std::ostringstream svg;
    report::write_svg(svg, cfg, records);
    write_file(a.plot, svg.str());
  }
  return kSuccess;
}

int do_optimize(const OptimizeArgs& a, std::ostream& out) {
  const config::ScenarioConfig cfg = config::load_config(a.config);
  const std::string text = report::optimize(cfg, a.oracle, a.threads).dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    write_file(a.out, text);
  }
  return kSuccess;
}

int do_validate(const ValidateArgs& a, std::ostream& out) {
  const auto anchors = report::run_anchors(a.null_factor);
  bool all = true;
  for (const auto& r : anchors) all = all && r.pass;
  if (a.json) {
    nlohmann::ordered_json doc = nlohmann::ordered_json::array();
    for (const auto& r : anchors) {
      doc.push_back({{"name", r.name},
                     {"expected", r.expected},
                     {"tolerance", r.tolerance},
                     {"actual", r.actual},
                     {"pass", r.pass}});
    }
    out << doc.dump(2) << '\n';
  } else {
    int passed = 0;
    for (const auto& r : anchors) {
      passed += r.pass ? 1 : 0;
      out << (r.pass ? "PASS " : "FAIL ") << r.name
          << " expected=" << short_number(r.expected) << " tolerance=" << short_number(r.tolerance)
          << " actual=" << report::format_number(r.actual) << '\n';
    }
    out << passed << "/" << anchors.size() << " anchors passed\n";
  }
  return all ? kSuccess : kAnchorFailure;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"RIS link budget and placement calculator", "risplace"};
  app.require_subcommand(1);

  SweepArgs sweep_args;
  auto* sweep = app.add_subcommand("sweep", "Evaluate SNR over a grid of one variable");
  sweep->add_option("--config", sweep_args.config, "Scenario YAML file")->required();
  sweep->add_option("--out", sweep_args.out, "Output file (default: output.path or stdout)");
  sweep->add_option("--format", sweep_args.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  sweep->add_flag("--diagnostics", sweep_args.diagnostics, "Append per-unit spread columns");
  sweep->add_option("--threads", sweep_args.threads, "Worker threads (0 = all cores)");
  sweep->add_option("--plot", sweep_args.plot, "Also write an SVG line plot to this path");

  OptimizeArgs opt_args;
  auto* optimize = app.add_subcommand("optimize", "Optimal surface position");
  optimize->add_option("--config", opt_args.config, "Scenario YAML file")->required();
  optimize->add_option("--out", opt_args.out, "Output file (default: stdout)");
  optimize->add_flag("--oracle", opt_args.oracle, "Cross-check with a brute-force search");
  optimize->add_option("--threads", opt_args.threads, "Worker threads (0 = all cores)");

  ValidateArgs val_args;
  auto* validate = app.add_subcommand("validate", "Check the built-in reference anchors");
  validate->add_flag("--json", val_args.json, "Report as JSON");
  validate->add_option("--null-factor", val_args.null_factor,
                       "First-null constant used by the anchors (default 1.22)")
      ->check(CLI::PositiveNumber);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kConfigError;
  }

  try {
    if (*sweep) return do_sweep(sweep_args, out, err);
    if (*optimize) return do_optimize(opt_args, out);
    return do_validate(val_args, out);
  } catch (const config::ConfigError& e) {
    err << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kRuntimeError;
  }
}

}  // namespace risplace::cli
