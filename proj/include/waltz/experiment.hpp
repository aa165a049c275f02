#pragma once

#include "waltz/benchmarks.hpp"
#include "waltz/compiler.hpp"
#include "waltz/estimator.hpp"
#include "waltz/noise.hpp"
#include "waltz/simulator.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace waltz {

struct RunRecord {
  std::string circuit;
  std::string strategy;
  int n_qubits = 0;
  int n_devices = 0;
  int n_states = 0;
  std::uint64_t seed = 0;
  double duration_ns = 0.0;
  int swap_count = 0;
  std::map<std::string, int> gate_counts;
  EpsReport eps;
  std::optional<FidelityResult> fidelity;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Compiles on the standard library, then estimates and simulates under
/// `noise`. Simulation is skipped when `config.n_states` is 0.
[[nodiscard]] RunRecord run_experiment(const LogicalCircuit& circuit, const std::string& circuit_name,
                                       const Strategy& strategy, const NoiseConfig& noise,
                                       const TrajectoryConfig& config);

enum class SweepAxis : std::uint8_t { CircuitSize, QuquartGateErrorMultiplier, CoherenceMultiplier, CxFraction };

[[nodiscard]] std::string_view axis_name(SweepAxis axis);
[[nodiscard]] SweepAxis axis_from_name(std::string_view name);

struct SweepSpec {
  BenchmarkSpec benchmark;
  std::vector<std::string> strategies;
  SweepAxis axis = SweepAxis::CircuitSize;
  /// Circuit-size values are the family size parameter.
  std::vector<double> values;
  std::uint64_t seed = 1;
  int n_states = 200;
  int trajectories_per_state = 1;
  std::size_t max_dimension = kDefaultMaxDimension;
  NoiseConfig noise;
  int workers = 1;

  /// Throws std::invalid_argument.
  void validate() const;
};

struct SweepRow {
  std::string family;
  int n_qubits = 0;
  std::string strategy;
  std::string axis;
  double axis_value = 0.0;
  double gate_eps = 0.0;
  double coherence_eps = 0.0;
  double total_eps = 0.0;
  double mean_fidelity = 0.0;
  double std_error = 0.0;
  double duration_ns = 0.0;
  int swap_count = 0;
  std::uint64_t seed = 0;
  std::string error;
};

/// Trajectory seed for the `index`-th axis value.
[[nodiscard]] std::uint64_t cell_seed(std::uint64_t base_seed, std::uint64_t index);

/// One row per (axis value, strategy), in that nesting order. Failing cells
/// carry a message in `error`.
[[nodiscard]] std::vector<SweepRow> run_sweep(const SweepSpec& spec);

[[nodiscard]] const std::vector<std::string>& csv_columns();
void write_csv_header(std::ostream& out);
void write_csv_row(std::ostream& out, const SweepRow& row);

}  // namespace waltz
