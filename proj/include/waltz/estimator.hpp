#pragma once

#include "waltz/circuit.hpp"
#include "waltz/gate_library.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <string>
#include <vector>

namespace waltz {

struct EpsReport {
  double gate_eps = 1.0;
  double coherence_eps = 1.0;
  double total_eps = 1.0;
  std::vector<double> device_coherence;
  std::map<std::string, int> gate_histogram;

  [[nodiscard]] nlohmann::json to_json() const;
};

/// Product of the success probabilities of every instruction.
[[nodiscard]] double gate_eps(const PhysicalCircuit& circuit, const GateLibrary& library = GateLibrary::standard());

/// exp(-(t1 + 3 c t3) / T1) for one device; `c` scales the encoded-level rate.
[[nodiscard]] double device_coherence_eps(const OccupancyTimes& t, double t1_base_ns, double coherence_multiplier = 1.0);

[[nodiscard]] double coherence_eps(const Schedule& schedule, double t1_base_ns, double coherence_multiplier = 1.0);

[[nodiscard]] EpsReport total_eps(const PhysicalCircuit& circuit, const Schedule& schedule, double t1_base_ns,
                                  const GateLibrary& library = GateLibrary::standard(),
                                  double coherence_multiplier = 1.0);

}  // namespace waltz
