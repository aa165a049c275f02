#include "waltz/estimator.hpp"

#include <cmath>
#include <stdexcept>

namespace waltz {

nlohmann::json EpsReport::to_json() const {
  return {{"gate_eps", gate_eps},
          {"coherence_eps", coherence_eps},
          {"total_eps", total_eps},
          {"device_coherence", device_coherence},
          {"gate_histogram", gate_histogram}};
}

double gate_eps(const PhysicalCircuit& circuit, const GateLibrary& library) {
  double p = 1.0;
  for (const auto& inst : circuit.instructions) {
    p *= library.fidelity_of(inst.gate);
  }
  return p;
}

double device_coherence_eps(const OccupancyTimes& t, double t1_base_ns, double coherence_multiplier) {
  if (!(t1_base_ns > 0.0)) {
    throw std::invalid_argument("T1 must be positive");
  }
  return std::exp(-(kBareLevel * t.t1 + kEncodedLevel * coherence_multiplier * t.t3) / t1_base_ns);
}

double coherence_eps(const Schedule& schedule, double t1_base_ns, double coherence_multiplier) {
  double p = 1.0;
  for (int d = 0; d < schedule.n_devices(); ++d) {
    p *= device_coherence_eps(level_occupancy_times(schedule, d), t1_base_ns, coherence_multiplier);
  }
  return p;
}

EpsReport total_eps(const PhysicalCircuit& circuit, const Schedule& schedule, double t1_base_ns,
                    const GateLibrary& library, double coherence_multiplier) {
  EpsReport r;
  r.gate_eps = gate_eps(circuit, library);
  r.coherence_eps = 1.0;
  for (int d = 0; d < schedule.n_devices(); ++d) {
    const double f = device_coherence_eps(level_occupancy_times(schedule, d), t1_base_ns, coherence_multiplier);
    r.device_coherence.push_back(f);
    r.coherence_eps *= f;
  }
  r.total_eps = r.gate_eps * r.coherence_eps;
  for (const auto& inst : circuit.instructions) {
    ++r.gate_histogram[inst.gate];
  }
  return r;
}

}  // namespace waltz
