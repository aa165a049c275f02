#pragma once

#include "waltz/circuit.hpp"
#include "waltz/topology.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace waltz {

enum class Encoding : std::uint8_t { QubitOnly, MixedRadix, FullQuquart };
enum class Lowering : std::uint8_t { Decompose8cx, IToffoli, NativeCcx, RetargetedCcx, CczTransform, NativeCswap };
enum class CswapOrientation : std::uint8_t { Default, TargetsTogether };

[[nodiscard]] std::string_view encoding_name(Encoding e);
[[nodiscard]] std::string_view lowering_name(Lowering l);

/// How a circuit is encoded onto devices and how three-qubit gates are
/// lowered. `lowering` governs CCX; CSWAP is native only under NativeCswap
/// (CCX then goes through the CCZ form) and is otherwise rewritten as
/// CX.CCX.CX. CCZ is native whenever a ququart is available.
struct Strategy {
  Encoding encoding = Encoding::QubitOnly;
  Lowering lowering = Lowering::Decompose8cx;
  CswapOrientation cswap_orientation = CswapOrientation::Default;

  /// Throws std::invalid_argument for inadmissible combinations.
  void validate() const;

  [[nodiscard]] std::string name() const;
  [[nodiscard]] int device_count(int n_qubits) const;
  /// Radix every device rests at.
  [[nodiscard]] Radix resting_radix() const;
  /// Radix the distance metric is computed on.
  [[nodiscard]] Radix metric_radix() const;

  [[nodiscard]] static Strategy preset(std::string_view name);
  [[nodiscard]] static const std::vector<std::string>& preset_names();

  friend bool operator==(const Strategy&, const Strategy&) = default;
};

class CompileError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};
class CapacityError : public CompileError {
public:
  using CompileError::CompileError;
};
class NoProgressError : public CompileError {
public:
  using CompileError::CompileError;
};
class UnknownConfigurationError : public CompileError {
public:
  using CompileError::CompileError;
};

/// Symmetric pair weights w(i, j) = sum over moments t of o(i, j, t) / t.
class WeightTable {
public:
  explicit WeightTable(int n_qubits = 0) : w_(Eigen::MatrixXd::Zero(n_qubits, n_qubits)) {}

  [[nodiscard]] double operator()(int i, int j) const { return w_(i, j); }
  [[nodiscard]] double total(int i) const { return w_.row(i).sum(); }
  [[nodiscard]] int n_qubits() const { return static_cast<int>(w_.rows()); }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const { return w_; }
  void add(int i, int j, double v);

private:
  Eigen::MatrixXd w_;
};

[[nodiscard]] WeightTable interaction_weights(const LogicalCircuit& circuit);
/// Weights over a gate range; moments are counted from 1 at its start.
[[nodiscard]] WeightTable interaction_weights(std::span<const LogicalGate> gates, int n_qubits);

/// Per-qubit position on the devices.
struct Layout {
  std::vector<Radix> device_radix;
  std::vector<Slot> qubit_slot;

  [[nodiscard]] int n_qubits() const { return static_cast<int>(qubit_slot.size()); }
  [[nodiscard]] nlohmann::json to_json() const;
  friend bool operator==(const Layout&, const Layout&) = default;
};

/// Injective map from logical qubits to interaction-graph nodes.
class Mapping {
public:
  Mapping(int n_qubits, int n_nodes);

  [[nodiscard]] int n_qubits() const { return static_cast<int>(node_.size()); }
  [[nodiscard]] int node_of(int q) const { return node_.at(q); }
  /// Logical qubit at `node`, or -1.
  [[nodiscard]] int occupant(int node) const { return occ_.at(node); }
  [[nodiscard]] bool placed(int q) const { return node_.at(q) >= 0; }

  void place(int q, int node);
  void swap_nodes(int a, int b);

  [[nodiscard]] Layout layout(const InteractionGraph& graph) const;

private:
  std::vector<int> node_;
  std::vector<int> occ_;
};

/// Device mesh, routing graph and distance metric for one strategy.
class Architecture {
public:
  Architecture(int n_qubits, const Strategy& strategy, const GateLibrary& library = GateLibrary::standard());

  [[nodiscard]] const Strategy& strategy() const { return strategy_; }
  [[nodiscard]] const InteractionGraph& graph() const { return graph_; }
  [[nodiscard]] const Mesh& mesh() const { return graph_.mesh(); }
  [[nodiscard]] int n_devices() const { return graph_.mesh().n_devices(); }
  /// Metric distance between two routing-graph nodes.
  [[nodiscard]] double distance(int a, int b) const { return metric_(metric_node_[a], metric_node_[b]); }

private:
  Strategy strategy_;
  InteractionGraph graph_;
  DistanceTable metric_;
  std::vector<int> metric_node_;
};

/// Strategy-dependent logical rewrites applied before routing.
[[nodiscard]] LogicalCircuit prepare(const LogicalCircuit& circuit, const Strategy& strategy);

[[nodiscard]] Mapping initial_map(const LogicalCircuit& circuit, const Architecture& arch, const WeightTable& weights);

struct RouteResult {
  PhysicalCircuit circuit;
  Mapping final_mapping;
  int swap_count = 0;
};

/// Routes and lowers an already prepared circuit.
[[nodiscard]] RouteResult route(const LogicalCircuit& prepared, const Mapping& mapping, const Architecture& arch,
                                const GateLibrary& library = GateLibrary::standard());

struct CompileResult {
  Strategy strategy;
  int n_qubits = 0;
  PhysicalCircuit circuit;
  Layout initial;
  Layout final;
  Schedule schedule;
  int swap_count = 0;

  [[nodiscard]] double duration_ns() const { return schedule.duration; }
  [[nodiscard]] std::map<std::string, int> gate_counts() const;
  [[nodiscard]] int multi_device_gate_count() const;
  [[nodiscard]] nlohmann::json report() const;
};

[[nodiscard]] CompileResult compile(const LogicalCircuit& circuit, const Strategy& strategy,
                                    const GateLibrary& library = GateLibrary::standard());

/// JSON-lines form of a compiled circuit with the layouts in the header.
[[nodiscard]] std::string to_json_lines(const CompileResult& result);

}  // namespace waltz
