#ifndef INEQ_EXPERIMENT_HPP
#define INEQ_EXPERIMENT_HPP

// Parameter sweeps: expansion into seeded runs, aggregation and the CSV
// artifacts. Output bytes depend only on the sweep spec, never on the
// number of worker threads.

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <optional>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <system_error>
#include <thread>
#include <vector>

#include "config.hpp"
#include "grid.hpp"
#include "metrics.hpp"
#include "rng.hpp"
#include "simulation.hpp"

namespace ineq {

struct SweepSpec {
  ModelKind model = ModelKind::Mixed;
  std::vector<std::size_t> n;  // mixed
  std::vector<std::size_t> ns;  // mixed
  std::vector<std::size_t> rows;  // lattice
  std::vector<std::size_t> cols;  // lattice
  std::vector<double> cb;
  std::vector<double> mu{0.1};
  std::size_t runs_per_cell = 1;
  std::uint64_t master_seed = 0;
  // Scalars shared by every cell: gmax, burn_in_frac, init_coop_frac,
  // lambda_init_*, torus, reproduction_includes_self, snapshot_every.
  SimConfig base;
};

struct SweepEntry {
  SimConfig cfg;  // cfg.seed holds the derived seed
  std::size_t cell = 0;
  std::size_t run = 0;
};

class SpecError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

namespace detail {

template <typename T>
std::vector<T> sorted_unique(std::vector<T> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

template <typename T>
void require_nonempty(const std::vector<T>& v, const char* field) {
  if (v.empty()) throw SpecError(field, "requires at least one value");
}

}  // namespace detail

/// Parameter cells in ascending tuple order, (n, ns, cb, mu) for mixed and
/// (rows, cols, cb, mu) for lattice. Duplicate list values collapse.
inline std::vector<SimConfig> expand_cells(const SweepSpec& spec) {
  using detail::sorted_unique;
  if (spec.runs_per_cell < 1) throw SpecError("runs_per_cell", "requires runs_per_cell >= 1");
  detail::require_nonempty(spec.cb, "cb");
  detail::require_nonempty(spec.mu, "mu");
  std::vector<std::pair<std::size_t, std::size_t>> shapes;
  if (spec.model == ModelKind::Mixed) {
    detail::require_nonempty(spec.n, "n");
    detail::require_nonempty(spec.ns, "ns");
    for (const auto n : sorted_unique(spec.n)) {
      for (const auto ns : sorted_unique(spec.ns)) shapes.emplace_back(n, ns);
    }
  } else {
    detail::require_nonempty(spec.rows, "rows");
    detail::require_nonempty(spec.cols, "cols");
    for (const auto r : sorted_unique(spec.rows)) {
      for (const auto c : sorted_unique(spec.cols)) shapes.emplace_back(r, c);
    }
  }
  std::vector<SimConfig> cells;
  for (const auto& [a, b] : shapes) {
    for (const double cb : sorted_unique(spec.cb)) {
      for (const double mu : sorted_unique(spec.mu)) {
        SimConfig c = spec.base;
        c.model = spec.model;
        if (spec.model == ModelKind::Mixed) {
          c.n = a;
          c.ns = b;
          c.rows = c.cols = 0;
        } else {
          c.rows = a;
          c.cols = b;
          c.n = a * b;
        }
        c.cb = cb;
        c.mu = mu;
        try {
          validate(c);
        } catch (const ConfigError& e) {
          throw SpecError(e.field(), std::string("invalid sweep value: ") + e.what());
        }
        cells.push_back(c);
      }
    }
  }
  return cells;
}

/// Cross product of cells and run indices with seeds from derive_seed.
inline std::vector<SweepEntry> expand_sweep(const SweepSpec& spec) {
  const auto cells = expand_cells(spec);
  std::vector<SweepEntry> out;
  out.reserve(cells.size() * spec.runs_per_cell);
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    for (std::size_t run = 0; run < spec.runs_per_cell; ++run) {
      SweepEntry e{cells[cell], cell, run};
      e.cfg.seed = derive_seed(spec.master_seed, cell, run);
      out.push_back(e);
    }
  }
  return out;
}

struct RunSummary {
  double mean_f_c = 0.0;
  double std_f_c = 0.0;  // population convention
  std::optional<double> mean_lambda_coop;
};

class WindowError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Time statistics over records[burn_in, end).
inline RunSummary aggregate(std::span<const GenerationRecord> records, std::size_t burn_in) {
  if (burn_in >= records.size()) throw WindowError("aggregate: burn-in leaves an empty window");
  const auto window = records.subspan(burn_in);
  const auto count = static_cast<double>(window.size());
  RunSummary s;
  double sum = 0.0;
  for (const auto& r : window) sum += r.f_c;
  s.mean_f_c = sum / count;
  double ss = 0.0;
  for (const auto& r : window) ss += (r.f_c - s.mean_f_c) * (r.f_c - s.mean_f_c);
  s.std_f_c = std::sqrt(ss / count);
  double lsum = 0.0;
  std::size_t lcount = 0;
  for (const auto& r : window) {
    if (r.mean_lambda_coop) {
      lsum += *r.mean_lambda_coop;
      ++lcount;
    }
  }
  if (lcount > 0) s.mean_lambda_coop = lsum / static_cast<double>(lcount);
  return s;
}

struct SweepRow {
  SimConfig cell;
  std::size_t runs = 0;
  double mean_f_c = 0.0;
  double std_f_c = 0.0;  // across runs
  std::optional<double> mean_lambda_coop;
};

/// Cross-run mean and population std of per-run time means.
inline SweepRow combine_runs(const SimConfig& cell, std::span<const RunSummary> runs) {
  SweepRow row;
  row.cell = cell;
  row.runs = runs.size();
  double sum = 0.0;
  for (const auto& r : runs) sum += r.mean_f_c;
  row.mean_f_c = sum / static_cast<double>(runs.size());
  double ss = 0.0;
  for (const auto& r : runs) ss += (r.mean_f_c - row.mean_f_c) * (r.mean_f_c - row.mean_f_c);
  row.std_f_c = std::sqrt(ss / static_cast<double>(runs.size()));
  double lsum = 0.0;
  std::size_t lcount = 0;
  for (const auto& r : runs) {
    if (r.mean_lambda_coop) {
      lsum += *r.mean_lambda_coop;
      ++lcount;
    }
  }
  if (lcount > 0) row.mean_lambda_coop = lsum / static_cast<double>(lcount);
  return row;
}

// ---- CSV -----------------------------------------------------------------

inline constexpr const char* kTimeseriesHeader =
    "run,generation,f_c,mean_lambda_coop,mean_lambda_all,games_cc,games_cd,games_dd,games_declined,"
    "largest_coop_cluster,frac_within_cluster,payoff_classes";

inline constexpr const char* kSweepHeader =
    "model,n,rows,cols,ns,cb,mu,runs,gens,burn_in,mean_f_c,std_f_c,mean_lambda_coop";

/// Six significant digits, shortest form, independent of the C locale.
inline std::string format_real(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

inline std::string format_real(const std::optional<double>& x) { return x ? format_real(*x) : std::string(); }

template <typename T>
std::string format_opt(const std::optional<T>& x) {
  return x ? std::to_string(*x) : std::string();
}

inline void write_timeseries(std::ostream& os, std::size_t run, std::span<const GenerationRecord> records) {
  os << kTimeseriesHeader << '\n';
  for (const auto& r : records) {
    os << run << ',' << r.generation << ',' << format_real(r.f_c) << ',' << format_real(r.mean_lambda_coop) << ','
       << format_real(r.mean_lambda_all) << ',' << r.tally.cc << ',' << r.tally.cd << ',' << r.tally.dd << ','
       << r.tally.declined << ',' << format_opt(r.largest_coop_cluster) << ','
       << format_real(r.frac_within_cluster) << ',' << r.payoff_classes << '\n';
  }
}

inline void write_sweep_row(std::ostream& os, const SweepRow& row) {
  const SimConfig& c = row.cell;
  const bool mixed = c.model == ModelKind::Mixed;
  os << model_name(c.model) << ',' << c.population_size() << ',' << (mixed ? "" : std::to_string(c.rows)) << ','
     << (mixed ? "" : std::to_string(c.cols)) << ',' << (mixed ? std::to_string(c.ns) : "") << ','
     << format_real(c.cb) << ',' << format_real(c.mu) << ',' << row.runs << ',' << c.gmax << ',' << c.burn_in()
     << ',' << format_real(row.mean_f_c) << ',' << format_real(row.std_f_c) << ','
     << format_real(row.mean_lambda_coop) << '\n';
}

inline void write_sweep(std::ostream& os, std::span<const SweepRow> rows) {
  os << kSweepHeader << '\n';
  for (const auto& r : rows) write_sweep_row(os, r);
}

// ---- files ---------------------------------------------------------------

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open " + path.string() + " for writing");
  f << content;
  f.flush();
  if (!f) throw IoError("write failed: " + path.string());
}

inline std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

inline constexpr const char* kClusterSidecar = "clusters.csv";

inline std::string snapshot_filename(std::size_t generation) {
  std::ostringstream ss;
  ss << "gen_" << std::setw(5) << std::setfill('0') << generation << ".txt";
  return ss.str();
}

/// Writes gen_<NNNNN>.txt files plus a clusters.csv sidecar with one
/// "generation,largest_coop_cluster" line per snapshot.
class SnapshotWriter {
 public:
  explicit SnapshotWriter(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::filesystem::create_directories(dir_);
    sidecar_ << "generation,largest_coop_cluster\n";
  }

  void operator()(std::size_t generation, const LatticeGrid& grid, std::size_t largest) {
    write_file(dir_ / snapshot_filename(generation), snapshot(grid) + "\n");
    sidecar_ << generation << ',' << largest << '\n';
  }

  void finish() { write_file(dir_ / kClusterSidecar, sidecar_.str()); }

 private:
  std::filesystem::path dir_;
  std::ostringstream sidecar_;
};

/// Runs one configuration, writing its timeseries to `csv_path` and, for
/// lattice runs with snapshot_every set, snapshots under `snapshot_dir`.
inline std::vector<GenerationRecord> run_to_files(const SimConfig& cfg, std::size_t run_index,
                                                  const std::filesystem::path& csv_path,
                                                  const std::filesystem::path& snapshot_dir) {
  std::vector<GenerationRecord> records;
  if (cfg.model == ModelKind::Lattice && cfg.snapshot_every) {
    SnapshotWriter writer(snapshot_dir);
    records = run_simulation(cfg, cfg.seed, std::ref(writer));
    writer.finish();
  } else {
    records = run_simulation(cfg, cfg.seed);
  }
  std::ostringstream ts;
  write_timeseries(ts, run_index, records);
  write_file(csv_path, ts.str());
  return records;
}

inline std::string run_stem(std::size_t cell, std::size_t run) {
  return "run_" + std::to_string(cell) + "_" + std::to_string(run);
}

/// Executes every entry of the sweep with up to `parallelism` concurrent
/// simulations. Writes <out>/sweep.csv, <out>/runs/run_<cell>_<index>.csv
/// and <out>/snapshots/run_<cell>_<index>/ when snapshots are enabled.
/// `progress`, when set, receives (completed, total) from worker threads.
inline std::vector<SweepRow> run_experiment(const SweepSpec& spec, std::size_t parallelism,
                                            const std::filesystem::path& out,
                                            const std::function<void(std::size_t, std::size_t)>& progress = {}) {
  if (parallelism < 1) throw SpecError("parallelism", "requires parallelism >= 1");
  const auto cells = expand_cells(spec);
  const auto entries = expand_sweep(spec);
  std::filesystem::create_directories(out / "runs");

  std::vector<RunSummary> summaries(entries.size());
  std::vector<std::exception_ptr> errors(entries.size());
  std::atomic<std::size_t> next{0};
  std::atomic<std::size_t> done{0};
  std::mutex progress_mutex;

  auto worker = [&] {
    for (std::size_t k = next.fetch_add(1); k < entries.size(); k = next.fetch_add(1)) {
      const SweepEntry& e = entries[k];
      try {
        const auto stem = run_stem(e.cell, e.run);
        const auto records = run_to_files(e.cfg, e.run, out / "runs" / (stem + ".csv"), out / "snapshots" / stem);
        summaries[k] = aggregate(records, e.cfg.burn_in());
      } catch (...) {
        errors[k] = std::current_exception();
      }
      const std::size_t finished = done.fetch_add(1) + 1;
      if (progress) {
        std::lock_guard lock(progress_mutex);
        progress(finished, entries.size());
      }
    }
  };

  const std::size_t threads = std::min(parallelism, entries.size());
  {
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
  }
  for (const auto& err : errors) {
    if (err) std::rethrow_exception(err);
  }

  std::vector<SweepRow> rows;
  rows.reserve(cells.size());
  for (std::size_t cell = 0; cell < cells.size(); ++cell) {
    const std::span<const RunSummary> runs(summaries.data() + cell * spec.runs_per_cell, spec.runs_per_cell);
    rows.push_back(combine_runs(cells[cell], runs));
  }
  std::ostringstream csv;
  write_sweep(csv, rows);
  write_file(out / "sweep.csv", csv.str());
  return rows;
}

}  // namespace ineq

#endif  // INEQ_EXPERIMENT_HPP
