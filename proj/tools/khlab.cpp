#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "khlab/envelope.hpp"
#include "khlab/error.hpp"
#include "khlab/fixtures.hpp"
#include "khlab/io.hpp"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitParse = 2;
constexpr int kExitCap = 3;
constexpr int kExitMismatch = 4;

struct Common {
  int t_max = 64;
  std::string certify = "gotzmann";
  std::string format = "json";
  std::string out;
  bool cm = false;
  bool smooth = false;
  unsigned threads = 1;
};

void add_common(CLI::App* cmd, Common& c) {
  cmd->add_option("--t-max", c.t_max, "Largest level examined by the fit")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--certify", c.certify, "gotzmann, bounds or window=W");
  cmd->add_option("--format", c.format, "json, csv or text");
  cmd->add_option("--out", c.out, "Write output here instead of stdout");
  cmd->add_flag("--cm", c.cm, "Assert the semigroup ring is Cohen-Macaulay");
  cmd->add_flag("--smooth", c.smooth, "Assert the variety is smooth");
  cmd->add_option("--threads", c.threads, "Worker threads for sumset levels");
}

khlab::AnalyzeOptions options_from(const Common& c) {
  khlab::AnalyzeOptions o;
  o.t_max = c.t_max;
  khlab::parse_certify(c.certify, o);
  o.flags.cohen_macaulay = c.cm;
  o.flags.smooth = c.smooth;
  o.fold.max_points = khlab::max_points_from_env();
  o.fold.threads = c.threads;
  return o;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw khlab::Error(khlab::ErrorKind::InvalidInput, "cannot write " + path);
  f << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sumset growth, Khovanskii polynomials and phase-transition bounds"};
  app.require_subcommand(1);

  Common analyze_opts;
  std::string subset_path;
  auto* analyze = app.add_subcommand("analyze", "Analyse a finite subset of Z^n");
  analyze->add_option("input", subset_path, "Subset file (.json or comma-separated .txt)")
      ->required();
  add_common(analyze, analyze_opts);

  Common gt_opts;
  std::string system_path;
  bool with_rl = false;
  auto* gt = app.add_subcommand("gt", "Analyse the GT-subset of a congruence system");
  gt->add_option("input", system_path, "System file {\"n\", \"moduli\", \"rows\"}")->required();
  add_common(gt, gt_opts);
  gt->add_flag("--rl", with_rl, "Also build rl(A) and check its complement");

  std::string filter, fixtures_out;
  unsigned fixture_threads = 1;
  auto* fixtures = app.add_subcommand("fixtures", "Run the embedded example corpus");
  fixtures->add_option("--filter", filter, "Only fixtures whose id contains this text");
  fixtures->add_option("--threads", fixture_threads, "Fixtures run in parallel");
  fixtures->add_option("--out", fixtures_out, "Write the table here instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitParse;
  }

  try {
    if (*analyze) {
      const khlab::AnalyzeOptions o = options_from(analyze_opts);
      const auto fmt = khlab::parse_format(analyze_opts.format);
      const auto env = khlab::analyze_subset(khlab::read_points_file(subset_path), o);
      emit(khlab::render(env, fmt), analyze_opts.out);
    } else if (*gt) {
      const khlab::AnalyzeOptions o = options_from(gt_opts);
      const auto fmt = khlab::parse_format(gt_opts.format);
      const auto env = khlab::analyze_gt(khlab::read_system_file(system_path), o, with_rl);
      emit(khlab::render(env, fmt), gt_opts.out);
    } else if (*fixtures) {
      khlab::FoldOptions fold;
      fold.max_points = khlab::max_points_from_env();
      const auto results =
          khlab::run_fixtures(khlab::builtin_fixtures(), filter, fold, fixture_threads);
      emit(khlab::render_fixture_table(results), fixtures_out);
      for (const auto& r : results)
        if (!r.pass) return kExitMismatch;
    }
  } catch (const khlab::ResourceCapError& e) {
    std::cerr << "resource cap: " << e.what() << " (last complete level " << e.level() << ")\n";
    return kExitCap;
  } catch (const khlab::Error& e) {
    std::cerr << e.what() << "\n";
    const bool input = e.kind() == khlab::ErrorKind::Parse ||
                       e.kind() == khlab::ErrorKind::InvalidInput;
    return input ? kExitParse : kExitFailure;
  }
  return 0;
}
