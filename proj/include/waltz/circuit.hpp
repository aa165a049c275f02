#pragma once

#include "waltz/gate_library.hpp"

#include <optional>
#include <string>
#include <vector>

namespace waltz {

struct LogicalGate {
  GateKind kind = GateKind::I;
  std::vector<int> qubits;  // controls before targets
  std::vector<double> params;

  friend bool operator==(const LogicalGate&, const LogicalGate&) = default;
};

/// Device-independent qubit circuit.
class LogicalCircuit {
public:
  LogicalCircuit() = default;
  explicit LogicalCircuit(int n_qubits);

  [[nodiscard]] int n_qubits() const { return n_qubits_; }
  [[nodiscard]] const std::vector<LogicalGate>& gates() const { return gates_; }
  [[nodiscard]] std::size_t size() const { return gates_.size(); }

  /// Appends after checking arity, parameter count and operand ids.
  LogicalCircuit& add(GateKind kind, std::vector<int> qubits, std::vector<double> params = {});
  LogicalCircuit& add(const LogicalGate& gate);
  LogicalCircuit& append(const LogicalCircuit& other);

  [[nodiscard]] std::size_t count(GateKind kind) const;

  friend bool operator==(const LogicalCircuit&, const LogicalCircuit&) = default;

private:
  int n_qubits_ = 0;
  std::vector<LogicalGate> gates_;
};

/// Throws std::invalid_argument if the gate is malformed for `n_qubits`.
void validate_gate(const LogicalGate& gate, int n_qubits);

/// 1-indexed ASAP moment of every gate.
[[nodiscard]] std::vector<int> asap_moments(const LogicalCircuit& circuit);

struct PhysicalInstruction {
  std::string gate;
  std::vector<int> devices;  // gate operand tuple order
  SlotAssignment slots;      // copied from the gate spec
  std::vector<int> qubits;   // logical qubit per slot entry
  double start_ns = 0.0;
  double duration_ns = 0.0;
  /// Qubit-level payload for the U family (kind and parameters).
  std::optional<LogicalGate> op;

  friend bool operator==(const PhysicalInstruction&, const PhysicalInstruction&) = default;
};

/// Placed-and-routed circuit. `device_radix` is each device's resting radix;
/// mixed-radix receivers are raised to 4 only between ENC and ENCdg.
struct PhysicalCircuit {
  std::vector<Radix> device_radix;
  std::vector<PhysicalInstruction> instructions;

  [[nodiscard]] int n_devices() const { return static_cast<int>(device_radix.size()); }
  /// Per-device simulation dimension: 4 for resting ququarts and any ENC receiver.
  [[nodiscard]] std::vector<int> simulation_dims() const;

  friend bool operator==(const PhysicalCircuit&, const PhysicalCircuit&) = default;
};

/// Occupancy level of a device: 1 while it holds at most one logical qubit,
/// 3 while it holds an encoded pair.
inline constexpr int kBareLevel = 1;
inline constexpr int kEncodedLevel = 3;

struct BusyInterval {
  double start = 0.0;
  double end = 0.0;
  int level = kBareLevel;
  std::size_t instruction = 0;
};

struct LevelSpan {
  double start = 0.0;
  double end = 0.0;
  int level = kBareLevel;
};

struct IdleGap {
  double start = 0.0;
  double length = 0.0;
  int level = kBareLevel;
};

struct Schedule {
  std::vector<std::vector<BusyInterval>> busy;  // per device, in time order
  std::vector<std::vector<LevelSpan>> levels;   // per device, covering [0, duration)
  std::vector<double> start;                    // per instruction
  double duration = 0.0;

  [[nodiscard]] int n_devices() const { return static_cast<int>(busy.size()); }
  [[nodiscard]] int level_at(int device, double t) const;
};

/// Each instruction starts when all of its devices are free; list order is
/// never changed.
[[nodiscard]] Schedule asap_schedule(const PhysicalCircuit& circuit);

/// Copies the schedule's start times into the circuit instructions.
void apply_schedule(PhysicalCircuit& circuit, const Schedule& schedule);

/// Positive-length idle periods before each busy interval and up to the end.
[[nodiscard]] std::vector<IdleGap> idle_gaps(const Schedule& schedule, int device);

struct OccupancyTimes {
  double t1 = 0.0;
  double t3 = 0.0;
};
[[nodiscard]] OccupancyTimes level_occupancy_times(const Schedule& schedule, int device);

}  // namespace waltz
