// bsideal run <spec.json|dir> [--json|--text] [--slope-bound N] [--seed-corpus]
//             [--check-golden DIR] [--write-golden DIR]
//
// Exit codes: 0 all checks pass, 1 a check failed (or golden mismatch),
// 2 usage/parse error, 3 solver bounds exhausted. With several entries the
// worst code wins in the order 2 > 3 > 1 > 0.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "bsideal/pipeline.hpp"

namespace fs = std::filesystem;
using namespace bsideal;

namespace {

constexpr const char* kMemEnv = "BSIDEAL_SOLVER_MEM_MB";
// Estimated bytes per cell of the dense system the solver assembles.
constexpr std::size_t kBytesPerCell = 64;

struct Entry {
  std::string id;
  Json report;
  int exit_code = 0;
};

int severity(int code) {
  switch (code) {
    case exit_usage: return 3;
    case exit_bounds: return 2;
    case exit_check_failed: return 1;
    default: return 0;
  }
}

int worst(int a, int b) { return severity(a) >= severity(b) ? a : b; }

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(errc::parse_error, "cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<fs::path> collect(const fs::path& p) {
  std::vector<fs::path> out;
  if (fs::is_directory(p)) {
    for (const auto& e : fs::directory_iterator(p))
      if (e.is_regular_file() && e.path().extension() == ".json") out.push_back(e.path());
    std::sort(out.begin(), out.end());
  } else {
    out.push_back(p);
  }
  return out;
}

Entry run_file(const fs::path& p, const RunOptions& opts) {
  Entry e;
  e.id = p.stem().string();
  try {
    const ProblemSpec spec = spec_from_json(parse_json_text(read_file(p)), e.id);
    e.id = spec.id;
    RunResult r = run(spec, opts);
    e.report = std::move(r.report);
    e.exit_code = r.exit_code;
  } catch (const Error& err) {
    e.report = Json{{"id", e.id}, {"status", err.code()}, {"error", Json{{"code", err.code()}, {"message", err.what()}}}};
    e.exit_code = err.code() == errc::no_solution ? exit_bounds : exit_usage;
    std::cerr << p.string() << ": " << err.what() << "\n";
  }
  return e;
}

std::string render(const Json& report, bool json) { return json ? report.dump(2) + "\n" : render_text(report); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bernstein-Sato ideal toolkit"};
  app.require_subcommand(1);
  auto* cmd = app.add_subcommand("run", "run problem descriptions and print reports");

  std::string input;
  bool as_json = false, as_text = false, seed = false;
  int slope_bound = 8;
  std::string golden_check, golden_write;
  cmd->add_option("spec", input, "problem JSON file or directory of them");
  auto* jflag = cmd->add_flag("--json", as_json, "JSON report");
  auto* tflag = cmd->add_flag("--text", as_text, "text report (default)");
  jflag->excludes(tflag);
  cmd->add_option("--slope-bound", slope_bound, "largest |L_i| tried for hyperplane slopes")
      ->check(CLI::Range(1, 64));
  cmd->add_flag("--seed-corpus", seed, "also run the bundled corpus");
  auto* gc = cmd->add_option("--check-golden", golden_check, "compare reports with DIR/<id>.txt|json");
  auto* gw = cmd->add_option("--write-golden", golden_write, "write reports to DIR/<id>.txt|json");
  gc->excludes(gw);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : exit_usage;
  }

  RunOptions opts;
  opts.slope_bound = slope_bound;
  if (const char* mem = std::getenv(kMemEnv)) {
    try {
      std::size_t pos = 0;
      const unsigned long long mb = std::stoull(mem, &pos);
      if (pos != std::string(mem).size() || mb == 0) throw std::invalid_argument(mem);
      opts.max_matrix_cells = static_cast<std::size_t>(mb) * 1024 * 1024 / kBytesPerCell;
    } catch (const std::exception&) {
      std::cerr << kMemEnv << " must be a positive whole number of megabytes\n";
      return exit_usage;
    }
  }

  std::vector<fs::path> files;
  if (!input.empty()) {
    if (!fs::exists(input)) {
      std::cerr << "no such file or directory: " << input << "\n";
      return exit_usage;
    }
    auto more = collect(input);
    files.insert(files.end(), more.begin(), more.end());
  }
  if (seed) {
    auto more = collect(BSIDEAL_CORPUS_DIR);
    files.insert(files.end(), more.begin(), more.end());
  }
  if (files.empty()) {
    std::cerr << "nothing to run: give a spec path or --seed-corpus\n";
    return exit_usage;
  }

  std::vector<Entry> entries;
  for (const auto& f : files) entries.push_back(run_file(f, opts));
  std::stable_sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.id < b.id; });

  int code = exit_pass;
  for (const auto& e : entries) code = worst(code, e.exit_code);
  const std::string ext = as_json ? ".json" : ".txt";

  if (!golden_write.empty()) {
    fs::create_directories(golden_write);
    for (const auto& e : entries) {
      std::ofstream out(fs::path(golden_write) / (e.id + ext), std::ios::binary);
      out << render(e.report, as_json);
    }
    return code;
  }

  if (!golden_check.empty()) {
    int golden = exit_pass;
    for (const auto& e : entries) {
      const fs::path g = fs::path(golden_check) / (e.id + ext);
      std::string status = "ok";
      if (!fs::exists(g)) {
        status = "missing";
      } else if (read_file(g) != render(e.report, as_json)) {
        status = "mismatch";
      }
      if (status != "ok") golden = exit_check_failed;
      std::cout << e.id << ": " << status << "\n";
    }
    return worst(code, golden);
  }

  if (as_json) {
    if (entries.size() == 1) {
      std::cout << entries.front().report.dump(2) << "\n";
    } else {
      Json all = Json::array();
      for (const auto& e : entries) all.push_back(e.report);
      std::cout << all.dump(2) << "\n";
    }
  } else {
    for (std::size_t k = 0; k < entries.size(); ++k) {
      if (k) std::cout << "\n";
      std::cout << render_text(entries[k].report);
    }
  }
  return code;
}
