#pragma once

#include "waltz/compiler.hpp"
#include "waltz/noise.hpp"

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace waltz {

/// Amplitudes over a product of per-device dimensions; device 0 is the most
/// significant digit.
class MixedRadixState {
public:
  explicit MixedRadixState(std::vector<int> dims);
  MixedRadixState(std::vector<int> dims, Vector amplitudes);

  [[nodiscard]] const std::vector<int>& dims() const { return dims_; }
  [[nodiscard]] const Vector& amplitudes() const { return amps_; }
  [[nodiscard]] Vector& amplitudes() { return amps_; }
  [[nodiscard]] Eigen::Index size() const { return amps_.size(); }
  [[nodiscard]] std::size_t stride(int device) const { return strides_.at(device); }

  /// Applies `op` to `devices`. `op_dims` gives the dimension the operator
  /// acts on per device (default: the full device dimension); higher levels
  /// are left untouched. The operator need not be unitary.
  void apply(const Matrix& op, const std::vector<int>& devices, const std::vector<int>& op_dims = {});

  /// Population of each level of one device.
  [[nodiscard]] std::vector<double> populations(int device) const;
  [[nodiscard]] Matrix reduced_density(int device) const;

  void normalize();

private:
  std::vector<int> dims_;
  std::vector<std::size_t> strides_;
  Vector amps_;
};

class SimulationRefused : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::size_t kDefaultMaxDimension = std::size_t{1} << 24;

/// Complex-Gaussian vector, normalized.
[[nodiscard]] Vector haar_random_vector(Eigen::Index dim, Rng& rng);
[[nodiscard]] MixedRadixState haar_random_state(const std::vector<int>& dims, Rng& rng);

/// Applies a full-dimension operator to `devices`.
void apply_unitary(MixedRadixState& state, const Matrix& u, const std::vector<int>& devices);

/// Applies a logical circuit to a 2^n statevector (qubit 0 most significant).
[[nodiscard]] Vector simulate_logical(const LogicalCircuit& circuit, const Vector& input);

/// Physical index of every logical basis state under `layout`.
[[nodiscard]] std::vector<std::size_t> logical_embedding(const Layout& layout, const std::vector<int>& dims);
[[nodiscard]] MixedRadixState encode_state(const Vector& logical, const Layout& layout, const std::vector<int>& dims);
/// Logical-subspace amplitudes (not renormalized).
[[nodiscard]] Vector decode_state(const MixedRadixState& state, const Layout& layout);

/// Damps one device for an idle period of `dt` by sampling a Kraus branch.
void damp_idle(MixedRadixState& state, int device, double dt, const NoiseConfig& noise, Rng& rng);

/// Instruction matrices, computed once per circuit.
class CompiledOps {
public:
  CompiledOps(const PhysicalCircuit& circuit, const GateLibrary& library);
  [[nodiscard]] const Matrix& unitary(std::size_t i) const { return unitaries_[i]; }
  [[nodiscard]] const std::vector<int>& dims(std::size_t i) const { return dims_[i]; }
  [[nodiscard]] double error(std::size_t i) const { return errors_[i]; }

private:
  std::vector<Matrix> unitaries_;
  std::vector<std::vector<int>> dims_;
  std::vector<double> errors_;
};

/// One noisy pass: idle damping before each instruction on its devices,
/// the ideal unitary, then a sampled depolarizing error; trailing idle
/// damping up to the schedule end.
void run_trajectory(const PhysicalCircuit& circuit, const Schedule& schedule, const CompiledOps& ops,
                    MixedRadixState& state, const NoiseConfig& noise, Rng& rng);
void run_trajectory(const PhysicalCircuit& circuit, const Schedule& schedule, MixedRadixState& state,
                    const NoiseConfig& noise, Rng& rng);

struct TrajectoryConfig {
  int n_states = 200;
  int trajectories_per_state = 1;
  std::uint64_t seed = 1;
  std::size_t max_dimension = kDefaultMaxDimension;
};

struct FidelityResult {
  double mean = 0.0;
  double std_error = 0.0;
  int n_samples = 0;
};

/// Mean overlap between the ideal logical output and the decoded noisy
/// output over seeded Haar inputs.
[[nodiscard]] FidelityResult average_fidelity(const LogicalCircuit& logical, const CompileResult& compiled,
                                              const NoiseConfig& noise, const TrajectoryConfig& config);

}  // namespace waltz
