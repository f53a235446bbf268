// ineqsim: command-line front end for single runs and parameter sweeps.
//
//   ineqsim run   --config run.json   --out DIR [--seed U64] [--force]
//   ineqsim sweep --config sweep.json --out DIR [--seed U64] [--parallelism K] [--force]
//   ineqsim version
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime or I/O error.

#include <unistd.h>

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ineq/ineq.hpp"

namespace fs = std::filesystem;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitRuntime = 2;

struct Options {
  std::string config;
  std::string out;
  std::optional<std::uint64_t> seed;
  std::size_t parallelism = 1;
  bool force = false;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Results are built in a hidden sibling directory and renamed over the
// target only once everything has been written.
class StagedOutput {
 public:
  StagedOutput(const fs::path& target, bool force) : target_(fs::absolute(target)) {
    if (fs::exists(target_)) {
      if (!fs::is_directory(target_)) throw UsageError(target_.string() + " exists and is not a directory");
      if (!fs::is_empty(target_) && !force) {
        throw UsageError(target_.string() + " is not empty (use --force to replace it)");
      }
    }
    fs::create_directories(target_.parent_path());
    staging_ = target_.parent_path() /
               ("." + target_.filename().string() + ".partial-" + std::to_string(::getpid()));
    fs::remove_all(staging_);
    fs::create_directories(staging_);
  }

  StagedOutput(const StagedOutput&) = delete;
  StagedOutput& operator=(const StagedOutput&) = delete;

  ~StagedOutput() {
    if (!committed_) {
      std::error_code ec;
      fs::remove_all(staging_, ec);
    }
  }

  const fs::path& dir() const { return staging_; }

  void commit() {
    fs::remove_all(target_);
    fs::rename(staging_, target_);
    committed_ = true;
  }

 private:
  fs::path target_;
  fs::path staging_;
  bool committed_ = false;
};

int cmd_run(const Options& opt) {
  ineq::SimConfig cfg = ineq::parse_sim_config(ineq::read_file(opt.config));
  if (opt.seed) cfg.seed = *opt.seed;
  StagedOutput out(opt.out, opt.force);
  ineq::write_file(out.dir() / "metadata.json", ineq::to_json(cfg));
  const auto records = ineq::run_to_files(cfg, 0, out.dir() / "timeseries.csv", out.dir() / "snapshots");
  const auto summary = ineq::aggregate(records, cfg.burn_in());
  out.commit();
  std::cerr << "done: " << records.size() << " generations, mean f_c " << ineq::format_real(summary.mean_f_c)
            << " over generations >= " << cfg.burn_in() << "\n";
  return kExitOk;
}

int cmd_sweep(const Options& opt) {
  ineq::SweepSpec spec = ineq::parse_sweep_spec(ineq::read_file(opt.config));
  if (opt.seed) spec.master_seed = *opt.seed;
  if (opt.parallelism < 1) throw ineq::ConfigError("parallelism", "requires parallelism >= 1");
  StagedOutput out(opt.out, opt.force);
  ineq::write_file(out.dir() / "metadata.json", ineq::to_json(spec));
  const auto rows = ineq::run_experiment(spec, opt.parallelism, out.dir(), [](std::size_t k, std::size_t total) {
    std::cerr << "\rruns " << k << "/" << total << std::flush;
  });
  std::cerr << "\n";
  out.commit();
  std::cerr << "done: " << rows.size() << " cells\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Inequity-aversion prisoner's dilemma simulator"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&opt](CLI::App* sub) {
    sub->add_option("--config", opt.config, "Configuration document (JSON)")->required();
    sub->add_option("--out", opt.out, "Output directory")->required();
    sub->add_option("--seed", opt.seed, "Seed override (master seed for sweeps)");
    sub->add_flag("--force", opt.force, "Replace a non-empty output directory");
  };
  CLI::App* run = app.add_subcommand("run", "Run one simulation");
  add_common(run);
  CLI::App* sweep = app.add_subcommand("sweep", "Run a parameter sweep");
  add_common(sweep);
  sweep->add_option("--parallelism", opt.parallelism, "Concurrent simulations")->check(CLI::PositiveNumber);
  CLI::App* version = app.add_subcommand("version", "Print the version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    std::cerr << app.help();
    return kExitUsage;
  }

  try {
    if (version->parsed()) {
      std::cout << "ineqsim " << ineq::kVersion << "\n";
      return kExitOk;
    }
    if (run->parsed()) return cmd_run(opt);
    return cmd_sweep(opt);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ineq::ParseError& e) {
    std::cerr << "error: " << opt.config << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const ineq::ConfigError& e) {
    std::cerr << "error: " << opt.config << ": " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
