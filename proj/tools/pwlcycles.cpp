// pwlcycles: certified bounds and numerical verification of crossing limit
// cycles for two-zone planar piecewise linear systems.
//
// Exit codes: 0 conclusive, 1 malformed input or unwritable output,
// 2 verification requested on a system violating the hypotheses,
// 3 inconclusive bound, 4 more cycles observed than certified.

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pwlcycles/report.hpp"

namespace fs = std::filesystem;
using namespace pwlcycles;

namespace {

enum class Mode { Bound, Verify, Emit };

struct Options {
  std::string path;
  std::string json_out;
  std::string csv_out;
  std::optional<double> y0_max;
  double tol = 1e-12;
  std::size_t samples = 400;
};

int severity(int code) {
  switch (code) {
    case 4: return 4;
    case 1: return 3;
    case 2: return 2;
    case 3: return 1;
    default: return 0;
  }
}

bool write_text(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) return false;
  out << text;
  return static_cast<bool>(out);
}

int run_one(const fs::path& file, Mode mode, const Options& opt, const fs::path& json_out, const fs::path& csv_out) {
  const auto start = std::chrono::steady_clock::now();
  AnalysisReport report;
  try {
    report = analyze_bound(load_descriptor(file.string()));
  } catch (const Error& e) {
    std::cerr << file.string() << ": error: " << e.what() << "\n";
    return 1;
  }
  if (report.descriptor.name.empty()) report.descriptor.name = file.stem().string();

  int code = report.bound.conclusive() ? 0 : 3;
  std::vector<DisplacementSample> scan;
  if (mode != Mode::Bound) {
    if (!report.canonical || !report.hypotheses.condition_H()) {
      std::cout << human_summary(report);
      std::cerr << file.string() << ": hypothesis violation: "
                << (report.canonical ? "condition (H) fails" : "no transversal crossing")
                << "; the half-maps are undefined, nothing to verify\n";
      return 2;
    }
    VerifyOptions vo;
    if (opt.y0_max) vo.y0_max = *opt.y0_max;
    vo.tol = opt.tol;
    vo.samples = opt.samples;
    try {
      report.verification =
          run_verification(*report.canonical, report.hypotheses, report.bound.upper_bound, vo, &scan);
    } catch (const Error& e) {
      std::cerr << file.string() << ": error: " << e.what() << "\n";
      return 1;
    }
    if (report.verification->exceeds_bound()) code = 4;
  }
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::cout << human_summary(report);

  if (mode == Mode::Emit) {
    std::ostringstream csv;
    write_scan_csv(csv, scan);
    fs::path dump = csv_out;
    dump.replace_extension(".dump.json");
    const std::string dump_text = conic_resultant_dump(*report.canonical, report.canonical->b_star).dump(2) + "\n";
    if (!write_text(csv_out, csv.str()) || !write_text(dump, dump_text)) {
      std::cerr << "error: cannot write " << csv_out.string() << " or " << dump.string() << "\n";
      return 1;
    }
    std::cout << "wrote " << csv_out.string() << " and " << dump.string() << "\n";
  }
  if (!json_out.empty()) {
    if (!write_text(json_out, report_to_json(report).dump(2) + "\n")) {
      std::cerr << "error: cannot write " << json_out.string() << "\n";
      return 1;
    }
  }
  return code;
}

int run(Mode mode, const Options& opt) {
  const fs::path input(opt.path);
  std::error_code ec;
  if (!fs::is_directory(input, ec)) {
    fs::path csv = opt.csv_out.empty() ? fs::path(input.stem().string() + ".scan.csv") : fs::path(opt.csv_out);
    return run_one(input, mode, opt, opt.json_out, csv);
  }

  // Batch mode: every *.json in the directory, in name order; --json and
  // --csv name output directories.
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(input, ec))
    if (entry.is_regular_file() && entry.path().extension() == ".json") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  if (files.empty()) {
    std::cerr << "error: no .json descriptors in " << input.string() << "\n";
    return 1;
  }
  for (const std::string& dir : {opt.json_out, opt.csv_out}) {
    if (dir.empty()) continue;
    fs::create_directories(dir, ec);
    if (!fs::is_directory(dir)) {
      std::cerr << "error: cannot create directory " << dir << "\n";
      return 1;
    }
  }
  int worst = 0;
  for (const auto& f : files) {
    const std::string stem = f.stem().string();
    const fs::path json = opt.json_out.empty() ? fs::path() : fs::path(opt.json_out) / (stem + ".report.json");
    const fs::path csv = (opt.csv_out.empty() ? fs::path(".") : fs::path(opt.csv_out)) / (stem + ".scan.csv");
    const int code = run_one(f, mode, opt, json, csv);
    if (severity(code) > severity(worst)) worst = code;
  }
  return worst;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certified upper bounds and numerical verification of crossing limit cycles"};
  app.set_version_flag("--version", std::string(PWLCYCLES_VERSION));
  app.require_subcommand(1);

  Options opt;
  Mode mode = Mode::Bound;
  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("path", opt.path, "descriptor file, or a directory of descriptors")->required();
    sub->add_option("--json", opt.json_out, "write the JSON report here (a directory in batch mode)");
  };
  auto add_numeric = [&opt](CLI::App* sub) {
    sub->add_option("--y0-max", opt.y0_max, "upper end of the scanned y0 range");
    sub->add_option("--tol", opt.tol, "integration and root tolerance")->check(CLI::PositiveNumber);
    sub->add_option("--samples", opt.samples, "number of scan points")->check(CLI::Range(64, 1000000));
  };

  auto* bound = app.add_subcommand("bound", "certified upper bound on the number of crossing limit cycles");
  add_common(bound);
  auto* verify = app.add_subcommand("verify", "bound plus a numerical search for the cycles");
  add_common(verify);
  add_numeric(verify);
  auto* emit = app.add_subcommand("emit", "verify and write the displacement scan CSV and the exact conic/resultant dump");
  add_common(emit);
  add_numeric(emit);
  emit->add_option("--csv", opt.csv_out, "scan CSV path (a directory in batch mode); the dump goes next to it");

  bound->callback([&] { mode = Mode::Bound; });
  verify->callback([&] { mode = Mode::Verify; });
  emit->callback([&] { mode = Mode::Emit; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  return run(mode, opt);
}
