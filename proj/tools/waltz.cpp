#include "waltz/benchmarks.hpp"
#include "waltz/circuit_io.hpp"
#include "waltz/compiler.hpp"
#include "waltz/experiment.hpp"
#include "waltz/gate_library.hpp"
#include "waltz/noise.hpp"
#include "waltz/simulator.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;
constexpr int kExitRefused = 3;

constexpr const char* kNoiseEnv = "WALTZ_NOISE_CONFIG";

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write " + path);
  }
  out << text;
}

waltz::NoiseConfig resolve_noise(const std::string& flag, bool zero_noise) {
  if (zero_noise) {
    return waltz::NoiseConfig::zero_noise();
  }
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv(kNoiseEnv)) {
      path = env;
    }
  }
  return path.empty() ? waltz::NoiseConfig{} : waltz::load_noise_config(path);
}

std::vector<double> parse_values(const std::string& text) {
  std::vector<double> out;
  if (const auto colon = text.find(':'); colon != std::string::npos) {
    // start:stop[:step], inclusive of stop.
    std::vector<double> parts;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ':')) {
      parts.push_back(std::stod(item));
    }
    if (parts.size() < 2 || parts.size() > 3) {
      throw std::invalid_argument("range must be start:stop[:step]");
    }
    const double step = parts.size() == 3 ? parts[2] : 1.0;
    if (!(step > 0.0)) {
      throw std::invalid_argument("range step must be positive");
    }
    const auto n = static_cast<long>(std::floor((parts[1] - parts[0]) / step + 1e-9));
    for (long i = 0; i <= n; ++i) {
      out.push_back(parts[0] + static_cast<double>(i) * step);
    }
    return out;
  }
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    out.push_back(std::stod(item));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Ququart compiler and noisy simulator"};
  app.require_subcommand(1);

  // bench
  auto* bench = app.add_subcommand("bench", "Generate a benchmark circuit");
  waltz::BenchmarkSpec bspec;
  std::string bench_out;
  bench->add_option("family", bspec.family, "cnu, cuccaro, qram, select or synthetic")
      ->required()
      ->check(CLI::IsMember({"cnu", "cuccaro", "qram", "select", "synthetic"}));
  int controls = 0, bits = 0, address_bits = 0, index_bits = 0, qubits = 0;
  bench->add_option("--controls", controls, "cnu control count");
  bench->add_option("--bits", bits, "cuccaro operand width");
  bench->add_option("--address-bits", address_bits, "qram address width");
  bench->add_option("--index-bits", index_bits, "select index width");
  bench->add_option("--targets", bspec.n_targets, "select target count");
  bench->add_option("--qubits", qubits, "synthetic qubit count");
  bench->add_option("--gates", bspec.n_gates, "synthetic gate count");
  bench->add_option("--cx-fraction", bspec.cx_fraction, "synthetic CX fraction")->check(CLI::Range(0.0, 1.0));
  bench->add_option("--seed", bspec.seed, "random seed");
  bench->add_option("-o,--output", bench_out, "output path (default stdout)");

  // compile
  auto* comp = app.add_subcommand("compile", "Compile a circuit under a strategy");
  std::string comp_in, comp_strategy, comp_out, comp_report;
  comp->add_option("circuit", comp_in, "circuit text file")->required()->check(CLI::ExistingFile);
  comp->add_option("-s,--strategy", comp_strategy, "strategy preset")
      ->required()
      ->check(CLI::IsMember(waltz::Strategy::preset_names()));
  comp->add_option("-o,--output", comp_out, "physical circuit (JSON lines)");
  comp->add_option("--report", comp_report, "report path (default stdout)");

  // run
  auto* run = app.add_subcommand("run", "Compile, estimate and simulate");
  std::string run_in, run_strategy, run_noise, run_out;
  bool run_zero = false;
  waltz::TrajectoryConfig tc;
  run->add_option("circuit", run_in, "circuit text file")->required()->check(CLI::ExistingFile);
  run->add_option("-s,--strategy", run_strategy, "strategy preset")
      ->required()
      ->check(CLI::IsMember(waltz::Strategy::preset_names()));
  run->add_option("--noise", run_noise, std::string("noise config JSON (or $") + kNoiseEnv + ")");
  run->add_flag("--zero-noise", run_zero, "disable all noise");
  run->add_option("--n-states", tc.n_states, "random input states (0: estimate only)")->check(CLI::NonNegativeNumber);
  run->add_option("--trajectories", tc.trajectories_per_state, "trajectories per state")->check(CLI::PositiveNumber);
  run->add_option("--seed", tc.seed, "random seed");
  run->add_option("--max-dim", tc.max_dimension, "largest register dimension simulated");
  run->add_option("-o,--output", run_out, "record path (default stdout)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "Run a parameter sweep and emit CSV");
  waltz::SweepSpec sspec;
  std::string axis = "circuit_size", values, sweep_noise, sweep_out;
  std::vector<std::string> strategies;
  bool sweep_zero = false;
  sweep->add_option("--family", sspec.benchmark.family, "benchmark family")
      ->required()
      ->check(CLI::IsMember({"cnu", "cuccaro", "qram", "select", "synthetic"}));
  sweep->add_option("--size", sspec.benchmark.size, "family size parameter when not swept");
  sweep->add_option("--targets", sspec.benchmark.n_targets, "select target count");
  sweep->add_option("--gates", sspec.benchmark.n_gates, "synthetic gate count");
  sweep->add_option("--cx-fraction", sspec.benchmark.cx_fraction, "synthetic CX fraction when not swept");
  sweep->add_option("--strategies", strategies, "strategy presets")
      ->required()
      ->delimiter(',')
      ->check(CLI::IsMember(waltz::Strategy::preset_names()));
  sweep->add_option("--axis", axis, "circuit_size, ququart_gate_error_multiplier, coherence_multiplier or cx_fraction")
      ->check(CLI::IsMember({"circuit_size", "ququart_gate_error_multiplier", "coherence_multiplier", "cx_fraction"}));
  sweep->add_option("--values", values, "comma list or start:stop[:step]")->required();
  sweep->add_option("--seed", sspec.seed, "base seed (also seeds random benchmarks)");
  sweep->add_option("--n-states", sspec.n_states, "random input states per cell")->check(CLI::NonNegativeNumber);
  sweep->add_option("--trajectories", sspec.trajectories_per_state, "trajectories per state")
      ->check(CLI::PositiveNumber);
  sweep->add_option("--max-dim", sspec.max_dimension, "largest register dimension simulated");
  sweep->add_option("--workers", sspec.workers, "concurrent cells")->check(CLI::PositiveNumber);
  sweep->add_option("--noise", sweep_noise, std::string("noise config JSON (or $") + kNoiseEnv + ")");
  sweep->add_flag("--zero-noise", sweep_zero, "disable all noise");
  sweep->add_option("-o,--output", sweep_out, "CSV path (default stdout)");

  // gates
  auto* gates = app.add_subcommand("gates", "Print the gate table");
  bool gates_json = false;
  gates->add_flag("--json", gates_json, "JSON instead of a text table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bench) {
      if (bspec.family == "cnu") {
        bspec.size = controls;
      } else if (bspec.family == "cuccaro") {
        bspec.size = bits;
      } else if (bspec.family == "qram") {
        bspec.size = address_bits;
      } else if (bspec.family == "select") {
        bspec.size = index_bits;
      } else {
        bspec.size = qubits;
      }
      write_output(bench_out, waltz::to_text(waltz::generate(bspec)));
    } else if (*comp) {
      const auto circuit = waltz::read_text_file(comp_in);
      const auto result = waltz::compile(circuit, waltz::Strategy::preset(comp_strategy));
      if (!comp_out.empty()) {
        write_output(comp_out, waltz::to_json_lines(result));
      }
      write_output(comp_report, result.report().dump(2) + "\n");
    } else if (*run) {
      const auto circuit = waltz::read_text_file(run_in);
      const auto noise = resolve_noise(run_noise, run_zero);
      const auto name = std::filesystem::path(run_in).stem().string();
      const auto record = waltz::run_experiment(circuit, name, waltz::Strategy::preset(run_strategy), noise, tc);
      write_output(run_out, record.to_json().dump(2) + "\n");
    } else if (*sweep) {
      sspec.benchmark.seed = sspec.seed;
      sspec.strategies = strategies;
      sspec.axis = waltz::axis_from_name(axis);
      sspec.values = parse_values(values);
      sspec.noise = resolve_noise(sweep_noise, sweep_zero);
      const auto rows = waltz::run_sweep(sspec);
      std::ostringstream csv;
      waltz::write_csv_header(csv);
      for (const auto& row : rows) {
        waltz::write_csv_row(csv, row);
      }
      write_output(sweep_out, csv.str());
    } else if (*gates) {
      const auto& lib = waltz::GateLibrary::standard();
      if (gates_json) {
        std::cout << lib.to_json().dump(2) << "\n";
      } else {
        std::cout << std::left << std::setw(16) << "gate" << std::setw(14) << "class" << std::setw(10) << "radices"
                  << std::setw(14) << "duration_ns" << "fidelity\n";
        for (const auto& g : lib.gates()) {
          std::string radices;
          for (auto r : g.radices) {
            radices += std::to_string(r.dim());
          }
          std::cout << std::left << std::setw(16) << g.name << std::setw(14) << waltz::class_name(g.cls)
                    << std::setw(10) << radices << std::setw(14) << g.duration_ns << g.fidelity << "\n";
        }
      }
    }
  } catch (const waltz::CapacityError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRefused;
  } catch (const waltz::SimulationRefused& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRefused;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitOk;
}
