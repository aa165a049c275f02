#include "waltz/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace waltz {

nlohmann::json RunRecord::to_json() const {
  nlohmann::json j{{"circuit", circuit},
                   {"strategy", strategy},
                   {"n_qubits", n_qubits},
                   {"n_devices", n_devices},
                   {"n_states", n_states},
                   {"seed", seed},
                   {"duration_ns", duration_ns},
                   {"swap_count", swap_count},
                   {"gate_counts", gate_counts},
                   {"gate_eps", eps.gate_eps},
                   {"coherence_eps", eps.coherence_eps},
                   {"total_eps", eps.total_eps},
                   {"device_coherence", eps.device_coherence}};
  if (fidelity) {
    j["mean_fidelity"] = fidelity->mean;
    j["std_error"] = fidelity->std_error;
  } else {
    j["mean_fidelity"] = nullptr;
    j["std_error"] = nullptr;
  }
  return j;
}

RunRecord run_experiment(const LogicalCircuit& circuit, const std::string& circuit_name, const Strategy& strategy,
                         const NoiseConfig& noise, const TrajectoryConfig& config) {
  const CompileResult compiled = compile(circuit, strategy);
  const GateLibrary lib = noise.library();
  RunRecord r;
  r.circuit = circuit_name;
  r.strategy = strategy.name();
  r.n_qubits = circuit.n_qubits();
  r.n_devices = compiled.circuit.n_devices();
  r.n_states = config.n_states;
  r.seed = config.seed;
  r.duration_ns = compiled.duration_ns();
  r.swap_count = compiled.swap_count;
  r.gate_counts = compiled.gate_counts();
  r.eps = total_eps(compiled.circuit, compiled.schedule, noise.t1_base_ns, lib, noise.coherence_multiplier);
  if (!noise.enable_gate_errors) {
    r.eps.gate_eps = 1.0;
  }
  if (!noise.enable_damping) {
    r.eps.coherence_eps = 1.0;
    std::fill(r.eps.device_coherence.begin(), r.eps.device_coherence.end(), 1.0);
  }
  r.eps.total_eps = r.eps.gate_eps * r.eps.coherence_eps;
  if (config.n_states > 0) {
    r.fidelity = average_fidelity(circuit, compiled, noise, config);
  }
  return r;
}

std::string_view axis_name(SweepAxis axis) {
  switch (axis) {
    case SweepAxis::CircuitSize:
      return "circuit_size";
    case SweepAxis::QuquartGateErrorMultiplier:
      return "ququart_gate_error_multiplier";
    case SweepAxis::CoherenceMultiplier:
      return "coherence_multiplier";
    case SweepAxis::CxFraction:
      return "cx_fraction";
  }
  return "";
}

SweepAxis axis_from_name(std::string_view name) {
  for (SweepAxis a : {SweepAxis::CircuitSize, SweepAxis::QuquartGateErrorMultiplier, SweepAxis::CoherenceMultiplier,
                      SweepAxis::CxFraction}) {
    if (axis_name(a) == name) {
      return a;
    }
  }
  throw std::invalid_argument("unknown sweep axis '" + std::string(name) + "'");
}

void SweepSpec::validate() const {
  if (strategies.empty()) {
    throw std::invalid_argument("sweep needs at least one strategy");
  }
  for (const auto& s : strategies) {
    (void)Strategy::preset(s);
  }
  if (values.empty()) {
    throw std::invalid_argument("sweep needs at least one axis value");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!std::isfinite(values[i])) {
      throw std::invalid_argument("axis values must be finite");
    }
    if (i > 0 && values[i] < values[i - 1]) {
      throw std::invalid_argument("axis values must be sorted");
    }
  }
  if (axis == SweepAxis::CircuitSize) {
    for (double v : values) {
      if (v != std::floor(v) || v < 1) {
        throw std::invalid_argument("circuit sizes must be positive integers");
      }
    }
  }
  if (axis == SweepAxis::CxFraction) {
    for (double v : values) {
      if (v < 0.0 || v > 1.0) {
        throw std::invalid_argument("cx fractions must lie in [0, 1]");
      }
    }
  }
  if (n_states < 0 || trajectories_per_state < 1 || workers < 1) {
    throw std::invalid_argument("bad state, trajectory or worker count");
  }
}

std::uint64_t cell_seed(std::uint64_t base_seed, std::uint64_t index) {
  Rng rng = derive_rng(base_seed, index);
  return rng();
}

namespace {

SweepRow run_cell(const SweepSpec& spec, std::size_t value_index, const std::string& strategy_name) {
  SweepRow row;
  const double v = spec.values[value_index];
  row.family = spec.benchmark.family;
  row.strategy = strategy_name;
  row.axis = std::string(axis_name(spec.axis));
  row.axis_value = v;
  row.seed = cell_seed(spec.seed, value_index);

  BenchmarkSpec bench = spec.benchmark;
  NoiseConfig noise = spec.noise;
  switch (spec.axis) {
    case SweepAxis::CircuitSize:
      bench.size = static_cast<int>(v);
      break;
    case SweepAxis::QuquartGateErrorMultiplier:
      noise.ququart_error_multiplier = v;
      break;
    case SweepAxis::CoherenceMultiplier:
      noise.coherence_multiplier = v;
      break;
    case SweepAxis::CxFraction:
      bench.cx_fraction = v;
      break;
  }
  try {
    const LogicalCircuit circuit = generate(bench);
    row.n_qubits = circuit.n_qubits();
    TrajectoryConfig tc;
    tc.n_states = spec.n_states;
    tc.trajectories_per_state = spec.trajectories_per_state;
    tc.seed = row.seed;
    tc.max_dimension = spec.max_dimension;
    const RunRecord r = run_experiment(circuit, bench.family, Strategy::preset(strategy_name), noise, tc);
    row.gate_eps = r.eps.gate_eps;
    row.coherence_eps = r.eps.coherence_eps;
    row.total_eps = r.eps.total_eps;
    row.duration_ns = r.duration_ns;
    row.swap_count = r.swap_count;
    if (r.fidelity) {
      row.mean_fidelity = r.fidelity->mean;
      row.std_error = r.fidelity->std_error;
    } else {
      row.mean_fidelity = std::nan("");
      row.std_error = std::nan("");
    }
  } catch (const std::exception& e) {
    row.error = e.what();
  }
  return row;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) {
    return s;
  }
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') {
      out += '"';
    }
    out += c == '\n' ? ' ' : c;
  }
  return out + "\"";
}

std::string csv_number(double v, bool blank) {
  if (blank || std::isnan(v)) {
    return "";
  }
  std::ostringstream os;
  os << std::setprecision(12) << v;
  return os.str();
}

}  // namespace

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const std::size_t n_strat = spec.strategies.size();
  const std::size_t n_cells = spec.values.size() * n_strat;
  std::vector<SweepRow> rows(n_cells);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < n_cells; i = next++) {
      rows[i] = run_cell(spec, i / n_strat, spec.strategies[i % n_strat]);
    }
  };
  const auto n_workers = static_cast<std::size_t>(std::min<std::size_t>(spec.workers, n_cells));
  if (n_workers <= 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < n_workers; ++w) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  return rows;
}

const std::vector<std::string>& csv_columns() {
  static const std::vector<std::string> cols{"family",      "n_qubits",   "strategy",    "axis",     "axis_value",
                                             "gate_eps",    "coherence_eps", "total_eps", "mean_fidelity",
                                             "std_error",   "duration_ns", "swap_count", "seed",     "error"};
  return cols;
}

void write_csv_header(std::ostream& out) {
  const auto& cols = csv_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    out << (i ? "," : "") << cols[i];
  }
  out << '\n';
}

void write_csv_row(std::ostream& out, const SweepRow& r) {
  const bool failed = !r.error.empty();
  out << csv_escape(r.family) << ',' << (failed && r.n_qubits == 0 ? "" : std::to_string(r.n_qubits)) << ','
      << csv_escape(r.strategy) << ',' << r.axis << ',' << csv_number(r.axis_value, false) << ','
      << csv_number(r.gate_eps, failed) << ',' << csv_number(r.coherence_eps, failed) << ','
      << csv_number(r.total_eps, failed) << ',' << csv_number(r.mean_fidelity, failed) << ','
      << csv_number(r.std_error, failed) << ',' << csv_number(r.duration_ns, failed) << ','
      << (failed ? "" : std::to_string(r.swap_count)) << ',' << r.seed << ',' << csv_escape(r.error) << '\n';
}

}  // namespace waltz
