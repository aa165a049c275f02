#include "waltz/circuit.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace waltz {

LogicalCircuit::LogicalCircuit(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0) {
    throw std::invalid_argument("qubit count must be non-negative");
  }
}

void validate_gate(const LogicalGate& gate, int n_qubits) {
  if (gate.kind == GateKind::U || gate.kind == GateKind::Enc || gate.kind == GateKind::EncDg) {
    throw std::invalid_argument("gate kind " + std::string(kind_name(gate.kind)) + " is physical-only");
  }
  if (static_cast<int>(gate.qubits.size()) != arity(gate.kind)) {
    throw std::invalid_argument("operand count does not match arity of " + std::string(kind_name(gate.kind)));
  }
  if (static_cast<int>(gate.params.size()) != param_count(gate.kind)) {
    throw std::invalid_argument("parameter count does not match " + std::string(kind_name(gate.kind)));
  }
  std::set<int> seen;
  for (int q : gate.qubits) {
    if (q < 0 || q >= n_qubits) {
      throw std::invalid_argument("operand " + std::to_string(q) + " out of range");
    }
    if (!seen.insert(q).second) {
      throw std::invalid_argument("operands must be distinct");
    }
  }
}

LogicalCircuit& LogicalCircuit::add(GateKind kind, std::vector<int> qubits, std::vector<double> params) {
  return add(LogicalGate{kind, std::move(qubits), std::move(params)});
}

LogicalCircuit& LogicalCircuit::add(const LogicalGate& gate) {
  validate_gate(gate, n_qubits_);
  gates_.push_back(gate);
  return *this;
}

LogicalCircuit& LogicalCircuit::append(const LogicalCircuit& other) {
  if (other.n_qubits() > n_qubits_) {
    throw std::invalid_argument("appended circuit is wider than the target");
  }
  for (const auto& g : other.gates()) {
    add(g);
  }
  return *this;
}

std::size_t LogicalCircuit::count(GateKind kind) const {
  return static_cast<std::size_t>(
      std::count_if(gates_.begin(), gates_.end(), [kind](const LogicalGate& g) { return g.kind == kind; }));
}

std::vector<int> asap_moments(const LogicalCircuit& circuit) {
  std::vector<int> last(circuit.n_qubits(), 0);
  std::vector<int> moments;
  moments.reserve(circuit.size());
  for (const auto& g : circuit.gates()) {
    int m = 0;
    for (int q : g.qubits) {
      m = std::max(m, last[q]);
    }
    ++m;
    for (int q : g.qubits) {
      last[q] = m;
    }
    moments.push_back(m);
  }
  return moments;
}

std::vector<int> PhysicalCircuit::simulation_dims() const {
  std::vector<int> dims;
  dims.reserve(device_radix.size());
  for (Radix r : device_radix) {
    dims.push_back(r.dim());
  }
  for (const auto& inst : instructions) {
    if (inst.gate == "ENC") {
      dims.at(inst.devices.at(1)) = 4;
    }
  }
  return dims;
}

int Schedule::level_at(int device, double t) const {
  for (const auto& span : levels.at(device)) {
    if (t >= span.start && t < span.end) {
      return span.level;
    }
  }
  return levels.at(device).empty() ? kBareLevel : levels.at(device).back().level;
}

Schedule asap_schedule(const PhysicalCircuit& circuit) {
  const int n = circuit.n_devices();
  Schedule s;
  s.busy.assign(n, {});
  s.levels.assign(n, {});
  s.start.reserve(circuit.instructions.size());

  std::vector<double> ready(n, 0.0);
  for (const auto& inst : circuit.instructions) {
    double t = 0.0;
    for (int d : inst.devices) {
      t = std::max(t, ready.at(d));
    }
    s.start.push_back(t);
    for (int d : inst.devices) {
      ready[d] = t + inst.duration_ns;
    }
    s.duration = std::max(s.duration, t + inst.duration_ns);
  }

  // Encoded windows on ENC receivers, from the ENC start to the ENCdg end.
  std::vector<std::vector<std::pair<double, double>>> windows(n);
  std::vector<double> open(n, -1.0);
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& inst = circuit.instructions[i];
    if (inst.gate == "ENC") {
      open.at(inst.devices.at(1)) = s.start[i];
    } else if (inst.gate == "ENCdg") {
      const int receiver = inst.devices.at(1);
      if (open[receiver] < 0.0) {
        throw std::invalid_argument("ENCdg without a matching ENC on device " + std::to_string(receiver));
      }
      windows[receiver].emplace_back(open[receiver], s.start[i] + inst.duration_ns);
      open[receiver] = -1.0;
    }
  }
  for (int d = 0; d < n; ++d) {
    if (open[d] >= 0.0) {
      windows[d].emplace_back(open[d], s.duration);
    }
    const int resting = circuit.device_radix[d].dim() == 4 ? kEncodedLevel : kBareLevel;
    double t = 0.0;
    for (auto [a, b] : windows[d]) {
      if (a > t) {
        s.levels[d].push_back({t, a, resting});
      }
      s.levels[d].push_back({a, b, kEncodedLevel});
      t = b;
    }
    if (s.duration > t || s.levels[d].empty()) {
      s.levels[d].push_back({t, std::max(t, s.duration), resting});
    }
  }

  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& inst = circuit.instructions[i];
    for (int d : inst.devices) {
      s.busy[d].push_back({s.start[i], s.start[i] + inst.duration_ns, s.level_at(d, s.start[i]), i});
    }
  }
  return s;
}

void apply_schedule(PhysicalCircuit& circuit, const Schedule& schedule) {
  if (schedule.start.size() != circuit.instructions.size()) {
    throw std::invalid_argument("schedule does not match circuit");
  }
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    circuit.instructions[i].start_ns = schedule.start[i];
  }
}

std::vector<IdleGap> idle_gaps(const Schedule& schedule, int device) {
  std::vector<IdleGap> gaps;
  double t = 0.0;
  for (const auto& iv : schedule.busy.at(device)) {
    if (iv.start > t) {
      gaps.push_back({t, iv.start - t, schedule.level_at(device, t)});
    }
    t = iv.end;
  }
  if (schedule.duration > t) {
    gaps.push_back({t, schedule.duration - t, schedule.level_at(device, t)});
  }
  return gaps;
}

OccupancyTimes level_occupancy_times(const Schedule& schedule, int device) {
  OccupancyTimes out;
  for (const auto& span : schedule.levels.at(device)) {
    (span.level == kEncodedLevel ? out.t3 : out.t1) += span.end - span.start;
  }
  return out;
}

}  // namespace waltz
