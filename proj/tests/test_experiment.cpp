#include "waltz/benchmarks.hpp"
#include "waltz/experiment.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace waltz;

namespace {

SweepSpec small_sweep() {
  SweepSpec s;
  s.benchmark = {"cnu", 2, 1, 0, 0.5, 0};
  s.strategies = {"qubit-only-8cx", "mixed-radix-ccz", "full-ququart-ccz"};
  s.axis = SweepAxis::CircuitSize;
  s.values = {2, 3};
  s.n_states = 5;
  s.seed = 4;
  return s;
}

std::vector<std::string> split(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(item);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

TEST(RunExperiment, RecordsCompileAndEstimate) {
  const LogicalCircuit c = generate({"cnu", 2, 1, 0, 0.5, 0});
  TrajectoryConfig cfg;
  cfg.n_states = 0;
  const RunRecord r = run_experiment(c, "cnu2", Strategy::preset("full-ququart-ccz"), NoiseConfig{}, cfg);
  EXPECT_EQ(r.n_qubits, 3);
  EXPECT_EQ(r.n_devices, 2);
  EXPECT_FALSE(r.fidelity.has_value());
  const auto j = r.to_json();
  EXPECT_TRUE(j.at("mean_fidelity").is_null());
  EXPECT_TRUE(j.at("std_error").is_null());
  EXPECT_EQ(j.at("strategy"), "full-ququart-ccz");
}

TEST(RunExperiment, ZeroNoiseGivesUnitFidelity) {
  const LogicalCircuit c = generate({"cuccaro", 1, 1, 0, 0.5, 0});
  TrajectoryConfig cfg;
  cfg.n_states = 10;
  const RunRecord r = run_experiment(c, "add", Strategy::preset("mixed-radix-ccz"), NoiseConfig::zero_noise(), cfg);
  ASSERT_TRUE(r.fidelity.has_value());
  EXPECT_NEAR(r.fidelity->mean, 1.0, 1e-10);
  EXPECT_EQ(r.eps.total_eps, 1.0);
}

TEST(Axis, NamesRoundTrip) {
  for (SweepAxis a : {SweepAxis::CircuitSize, SweepAxis::QuquartGateErrorMultiplier, SweepAxis::CoherenceMultiplier,
                      SweepAxis::CxFraction}) {
    EXPECT_EQ(axis_from_name(axis_name(a)), a);
  }
  EXPECT_THROW((void)axis_from_name("depth"), std::invalid_argument);
}

TEST(Sweep, RowsFollowValueThenStrategy) {
  SweepSpec s = small_sweep();
  s.values = {2, 3, 4, 5, 6};
  s.n_states = 0;
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 15U);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].strategy, s.strategies[i % 3]);
    EXPECT_EQ(rows[i].axis_value, s.values[i / 3]);
    EXPECT_EQ(rows[i].n_qubits, 2 * static_cast<int>(s.values[i / 3]) - 1);
    EXPECT_TRUE(rows[i].error.empty());
  }
}

TEST(Sweep, StrategiesShareTheCellSeed) {
  const auto rows = run_sweep(small_sweep());
  EXPECT_EQ(rows[0].seed, rows[1].seed);
  EXPECT_EQ(rows[0].seed, cell_seed(4, 0));
  EXPECT_EQ(rows[3].seed, cell_seed(4, 1));
  EXPECT_NE(rows[0].seed, rows[3].seed);
}

TEST(Sweep, WorkersDoNotChangeResults) {
  SweepSpec a = small_sweep();
  SweepSpec b = small_sweep();
  b.workers = 4;
  const auto ra = run_sweep(a);
  const auto rb = run_sweep(b);
  ASSERT_EQ(ra.size(), rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    EXPECT_EQ(ra[i].mean_fidelity, rb[i].mean_fidelity);
    EXPECT_EQ(ra[i].total_eps, rb[i].total_eps);
  }
}

TEST(Sweep, NoiseAxesLowerTheEstimate) {
  SweepSpec s = small_sweep();
  s.strategies = {"full-ququart-ccz"};
  s.n_states = 0;
  s.axis = SweepAxis::QuquartGateErrorMultiplier;
  s.values = {1, 2, 4};
  auto rows = run_sweep(s);
  EXPECT_GT(rows[0].gate_eps, rows[1].gate_eps);
  EXPECT_GT(rows[1].gate_eps, rows[2].gate_eps);
  s.axis = SweepAxis::CoherenceMultiplier;
  rows = run_sweep(s);
  EXPECT_GT(rows[0].coherence_eps, rows[1].coherence_eps);
  EXPECT_EQ(rows[0].gate_eps, rows[1].gate_eps);
}

TEST(Sweep, FailingCellsBecomeErrorRows) {
  SweepSpec s = small_sweep();
  s.max_dimension = 16;
  const auto rows = run_sweep(s);
  ASSERT_EQ(rows.size(), 6U);
  int failed = 0;
  for (const auto& r : rows) failed += !r.error.empty();
  EXPECT_GT(failed, 0);
  std::ostringstream out;
  for (const auto& r : rows) write_csv_row(out, r);
  std::stringstream lines(out.str());
  std::string line;
  int i = 0;
  while (std::getline(lines, line)) {
    const auto cells = split(line);
    ASSERT_EQ(cells.size(), csv_columns().size());
    if (!rows[i].error.empty()) EXPECT_TRUE(cells[8].empty());
    ++i;
  }
}

TEST(Sweep, ValidationRejectsBadSpecs) {
  SweepSpec s = small_sweep();
  s.strategies.clear();
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = small_sweep();
  s.values.clear();
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s = small_sweep();
  s.strategies = {"nope"};
  EXPECT_ANY_THROW(s.validate());
}

TEST(Csv, HeaderMatchesColumns) {
  std::ostringstream out;
  write_csv_header(out);
  EXPECT_EQ(out.str(),
            "family,n_qubits,strategy,axis,axis_value,gate_eps,coherence_eps,total_eps,mean_fidelity,std_error,"
            "duration_ns,swap_count,seed,error\n");
}
