#include <algorithm>
#include <filesystem>
#include <set>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include <gtest/gtest.h>

#include "ineq/experiment.hpp"

using namespace ineq;
namespace fs = std::filesystem;

namespace {

SweepSpec mixed_spec() {
  SweepSpec s;
  s.model = ModelKind::Mixed;
  s.n = {20};
  s.ns = {4};
  s.cb = {0.45};
  s.base.gmax = 30;
  s.runs_per_cell = 1;
  s.master_seed = 7;
  return s;
}

GenerationRecord rec_with(double f) {
  GenerationRecord r;
  r.f_c = f;
  return r;
}

class TempDir {
 public:
  TempDir() {
    static int counter = 0;
    path_ = fs::temp_directory_path() /
            ("ineq_experiment_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  const fs::path& path() const { return path_; }

 private:
  fs::path path_;
};

}  // namespace

TEST(ExpandSweep, SingleCell) {
  const auto entries = expand_sweep(mixed_spec());
  ASSERT_EQ(entries.size(), 1u);
  EXPECT_EQ(entries[0].cell, 0u);
  EXPECT_EQ(entries[0].run, 0u);
  EXPECT_EQ(entries[0].cfg.seed, derive_seed(7, 0, 0));
}

TEST(ExpandSweep, CrossProductCount) {
  auto s = mixed_spec();
  s.n = {150};
  s.ns = {6, 8, 10, 12};
  s.cb = {0.3, 0.5};
  s.runs_per_cell = 20;
  const auto entries = expand_sweep(s);
  EXPECT_EQ(entries.size(), 160u);
  std::set<std::uint64_t> seeds;
  for (const auto& e : entries) seeds.insert(e.cfg.seed);
  EXPECT_EQ(seeds.size(), entries.size());
}

TEST(ExpandSweep, DeterministicOrderAndSeeds) {
  auto s = mixed_spec();
  s.ns = {8, 4, 6};
  s.cb = {0.5, 0.2};
  s.runs_per_cell = 3;
  const auto a = expand_sweep(s);
  const auto b = expand_sweep(s);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t k = 0; k < a.size(); ++k) {
    EXPECT_EQ(a[k].cfg.seed, b[k].cfg.seed);
    EXPECT_EQ(a[k].cfg.ns, b[k].cfg.ns);
    EXPECT_EQ(a[k].cfg.cb, b[k].cfg.cb);
  }
  // cells ascend as (n, ns, cb, mu)
  EXPECT_EQ(a.front().cfg.ns, 4u);
  EXPECT_EQ(a.front().cfg.cb, 0.2);
  EXPECT_EQ(a.back().cfg.ns, 8u);
  EXPECT_EQ(a.back().cfg.cb, 0.5);
}

TEST(ExpandSweep, DuplicatesCollapse) {
  auto s = mixed_spec();
  s.cb = {0.4, 0.4, 0.2};
  EXPECT_EQ(expand_cells(s).size(), 2u);
}

TEST(ExpandSweep, RejectsInvalidCell) {
  auto s = mixed_spec();
  s.n = {10};
  s.ns = {10};
  EXPECT_THROW(expand_sweep(s), SpecError);
  s.ns = {4};
  s.runs_per_cell = 0;
  EXPECT_THROW(expand_sweep(s), SpecError);
  s.runs_per_cell = 1;
  s.cb = {};
  EXPECT_THROW(expand_sweep(s), SpecError);
}

TEST(Aggregate, ConstantSeries) {
  std::vector<GenerationRecord> r(100, rec_with(0.8));
  const auto s = aggregate(r, 33);
  EXPECT_NEAR(s.mean_f_c, 0.8, 1e-12);
  EXPECT_NEAR(s.std_f_c, 0.0, 1e-12);
  EXPECT_FALSE(s.mean_lambda_coop.has_value());
}

TEST(Aggregate, Alternating) {
  std::vector<GenerationRecord> r;
  for (int k = 0; k < 100; ++k) r.push_back(rec_with(k % 2));
  EXPECT_DOUBLE_EQ(aggregate(r, 0).mean_f_c, 0.5);
  EXPECT_DOUBLE_EQ(aggregate(r, 0).std_f_c, 0.5);
}

TEST(Aggregate, ThreeValues) {
  std::vector<GenerationRecord> r{rec_with(0.2), rec_with(0.4), rec_with(0.9)};
  const auto s = aggregate(r, 0);
  EXPECT_NEAR(s.mean_f_c, 0.5, 1e-12);
  EXPECT_NEAR(s.std_f_c, 0.294392, 1e-6);
}

TEST(Aggregate, LambdaSkipsUndefined) {
  std::vector<GenerationRecord> r(4, rec_with(0.5));
  r[1].mean_lambda_coop = 2.0;
  r[3].mean_lambda_coop = 4.0;
  EXPECT_DOUBLE_EQ(*aggregate(r, 0).mean_lambda_coop, 3.0);
  EXPECT_DOUBLE_EQ(*aggregate(r, 2).mean_lambda_coop, 4.0);
}

TEST(Aggregate, EmptyWindowThrows) {
  std::vector<GenerationRecord> r(10, rec_with(0.5));
  EXPECT_THROW(aggregate(r, 10), WindowError);
  EXPECT_THROW(aggregate({}, 0), WindowError);
}

TEST(CombineRuns, MeanAndPopulationStd) {
  SimConfig c;
  const std::vector<RunSummary> runs{{0.2, 0.0, 1.0}, {0.6, 0.0, std::nullopt}};
  const auto row = combine_runs(c, runs);
  EXPECT_EQ(row.runs, 2u);
  EXPECT_DOUBLE_EQ(row.mean_f_c, 0.4);
  EXPECT_DOUBLE_EQ(row.std_f_c, 0.2);
  EXPECT_DOUBLE_EQ(*row.mean_lambda_coop, 1.0);
}

TEST(Csv, Headers) {
  EXPECT_STREQ(kTimeseriesHeader,
               "run,generation,f_c,mean_lambda_coop,mean_lambda_all,games_cc,games_cd,games_dd,games_declined,"
               "largest_coop_cluster,frac_within_cluster,payoff_classes");
  EXPECT_STREQ(kSweepHeader, "model,n,rows,cols,ns,cb,mu,runs,gens,burn_in,mean_f_c,std_f_c,mean_lambda_coop");
}

TEST(Csv, FormatReal) {
  EXPECT_EQ(format_real(0.45), "0.45");
  EXPECT_EQ(format_real(1.0), "1");
  EXPECT_EQ(format_real(0.0), "0");
  EXPECT_EQ(format_real(1.0 / 3.0), "0.333333");
  EXPECT_EQ(format_real(2.0 / 3.0), "0.666667");
  EXPECT_EQ(format_real(std::optional<double>{}), "");
}

TEST(Csv, MixedRecordLeavesLatticeColumnsEmpty) {
  GenerationRecord r;
  r.generation = 3;
  r.f_c = 0.5;
  r.mean_lambda_all = 2.5;
  r.tally.cc = 4;
  r.payoff_classes = 7;
  std::ostringstream os;
  write_timeseries(os, 2, std::span<const GenerationRecord>(&r, 1));
  EXPECT_EQ(os.str(), std::string(kTimeseriesHeader) + "\n2,3,0.5,,2.5,4,0,0,0,,,7\n");
}

TEST(Csv, SweepRowShapes) {
  SweepRow mixed;
  mixed.cell.n = 150;
  mixed.cell.ns = 8;
  mixed.cell.cb = 0.4;
  mixed.cell.gmax = 300;
  mixed.runs = 5;
  mixed.mean_f_c = 0.5;
  std::ostringstream a;
  write_sweep_row(a, mixed);
  EXPECT_EQ(a.str(), "mixed,150,,,8,0.4,0.1,5,300,100,0.5,0,\n");

  SweepRow lat = mixed;
  lat.cell.model = ModelKind::Lattice;
  lat.cell.rows = 10;
  lat.cell.cols = 12;
  lat.mean_lambda_coop = 1.25;
  std::ostringstream b;
  write_sweep_row(b, lat);
  EXPECT_EQ(b.str(), "lattice,120,10,12,,0.4,0.1,5,300,100,0.5,0,1.25\n");
}

TEST(SnapshotFiles, NamesAndSidecar) {
  EXPECT_EQ(snapshot_filename(0), "gen_00000.txt");
  EXPECT_EQ(snapshot_filename(1234), "gen_01234.txt");
  TempDir tmp;
  SimConfig c;
  c.model = ModelKind::Lattice;
  c.rows = 4;
  c.cols = 5;
  c.cb = 0.3;
  c.gmax = 12;
  c.snapshot_every = 4;
  c.seed = 9;
  const auto records = run_to_files(c, 0, tmp.path() / "ts.csv", tmp.path() / "snaps");
  for (std::size_t g : {0u, 4u, 8u}) {
    const auto text = read_file(tmp.path() / "snaps" / snapshot_filename(g));
    const auto grid = parse_snapshot(text);
    EXPECT_EQ(grid.rows, 4u);
    EXPECT_EQ(grid.cols, 5u);
    EXPECT_EQ(largest_coop_cluster(grid, true), *records[g].largest_coop_cluster);
  }
  EXPECT_FALSE(fs::exists(tmp.path() / "snaps" / snapshot_filename(12)));
  std::ostringstream expect;
  expect << "generation,largest_coop_cluster\n";
  for (std::size_t g : {0u, 4u, 8u}) expect << g << ',' << *records[g].largest_coop_cluster << '\n';
  EXPECT_EQ(read_file(tmp.path() / "snaps" / kClusterSidecar), expect.str());
}

TEST(RunExperiment, AllCooperatorsWithoutMutation) {
  TempDir tmp;
  auto s = mixed_spec();
  s.base.gmax = 1;
  s.base.burn_in_frac = 0.0;
  s.mu = {0.0};
  s.base.init_coop_frac = 1.0;
  const auto rows = run_experiment(s, 1, tmp.path());
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].mean_f_c, 1.0);
  EXPECT_EQ(rows[0].std_f_c, 0.0);
  EXPECT_TRUE(fs::exists(tmp.path() / "runs" / "run_0_0.csv"));
}

TEST(RunExperiment, OneRowPerHeatmapCell) {
  TempDir tmp;
  auto s = mixed_spec();
  s.n = {20, 30};
  s.ns = {4, 6, 8};
  s.runs_per_cell = 2;
  s.base.gmax = 10;
  const auto rows = run_experiment(s, 3, tmp.path());
  EXPECT_EQ(rows.size(), 6u);
  std::set<std::pair<std::size_t, std::size_t>> seen;
  for (const auto& r : rows) seen.insert({r.cell.ns, r.cell.n});
  EXPECT_EQ(seen.size(), 6u);
  const auto csv = read_file(tmp.path() / "sweep.csv");
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 7);
}

TEST(RunExperiment, ParallelismDoesNotChangeOutput) {
  TempDir one, eight;
  auto s = mixed_spec();
  s.ns = {4, 8};
  s.cb = {0.3, 0.6};
  s.runs_per_cell = 3;
  s.base.gmax = 40;
  run_experiment(s, 1, one.path());
  run_experiment(s, 8, eight.path());
  EXPECT_EQ(read_file(one.path() / "sweep.csv"), read_file(eight.path() / "sweep.csv"));
  for (const auto& e : expand_sweep(s)) {
    const auto name = run_stem(e.cell, e.run) + ".csv";
    EXPECT_EQ(read_file(one.path() / "runs" / name), read_file(eight.path() / "runs" / name)) << name;
  }
}

TEST(RunExperiment, LatticeSweepWritesSnapshots) {
  TempDir tmp;
  SweepSpec s;
  s.model = ModelKind::Lattice;
  s.rows = {4};
  s.cols = {4, 5};
  s.cb = {0.45};
  s.base.gmax = 6;
  s.base.snapshot_every = 3;
  s.runs_per_cell = 2;
  const auto rows = run_experiment(s, 2, tmp.path());
  EXPECT_EQ(rows.size(), 2u);
  EXPECT_TRUE(fs::exists(tmp.path() / "snapshots" / "run_1_1" / "gen_00003.txt"));
  EXPECT_TRUE(fs::exists(tmp.path() / "snapshots" / "run_0_0" / kClusterSidecar));
}

TEST(RunExperiment, RejectsZeroParallelism) {
  TempDir tmp;
  EXPECT_THROW(run_experiment(mixed_spec(), 0, tmp.path()), SpecError);
}
