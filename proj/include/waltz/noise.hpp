#pragma once

#include "waltz/gate_library.hpp"

#include <nlohmann/json.hpp>

#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace waltz {

using Rng = std::mt19937_64;

/// Generator for stream `index` under `seed`, independent of other streams.
[[nodiscard]] Rng derive_rng(std::uint64_t seed, std::uint64_t index);

/// X_d^a Z_d^b for (a, b) in lexicographic order; entry 0 is the identity.
[[nodiscard]] std::vector<Matrix> generalized_paulis(int d);
/// X_d^a Z_d^b.
[[nodiscard]] Matrix generalized_pauli(int d, int a, int b);

/// Per-operand dimensions over which a gate's depolarizing error is drawn.
[[nodiscard]] std::vector<int> error_support(const GateSpec& gate);

/// One Pauli index (into generalized_paulis(d_i)) per operand; all zeros
/// means no error.
using PauliDraw = std::vector<int>;

[[nodiscard]] bool is_identity(const PauliDraw& draw);

/// Identity with probability 1 - eps, otherwise uniform over the D^2 - 1
/// non-identity products.
[[nodiscard]] PauliDraw sample_gate_error(Rng& rng, double eps, const std::vector<int>& dims);

/// Tensor product of the drawn Paulis, first operand most significant.
[[nodiscard]] Matrix pauli_product(const PauliDraw& draw, const std::vector<int>& dims);

/// lambda_m = 1 - exp(-rate_m * dt / T1) with rate_m = m, scaled by
/// `coherence_multiplier` for m >= 2.
[[nodiscard]] double damping_lambda(int m, double dt, double t1_base, double coherence_multiplier = 1.0);

/// K_0 = diag(1, sqrt(1 - lambda_1), ...), K_m = sqrt(lambda_m) |0><m|.
[[nodiscard]] std::vector<Matrix> damping_kraus(int d, double dt, double t1_base,
                                                double coherence_multiplier = 1.0);

/// Branch probabilities Tr(rho K_m^dagger K_m) for a reduced density matrix.
[[nodiscard]] std::vector<double> kraus_probabilities(const std::vector<Matrix>& kraus, const Matrix& rho);

/// Index m drawn with probability <psi|K_m^dagger K_m|psi>.
[[nodiscard]] int sample_kraus(Rng& rng, const std::vector<Matrix>& kraus, const Vector& psi);
[[nodiscard]] int sample_index(Rng& rng, const std::vector<double>& probabilities);

inline constexpr double kDefaultT1Ns = 163450.0;

struct NoiseConfig {
  double t1_base_ns = kDefaultT1Ns;
  std::map<std::string, double> gate_fidelity;   // per gate name
  std::map<std::string, double> class_fidelity;  // per class name
  double ququart_error_multiplier = 1.0;
  double coherence_multiplier = 1.0;
  bool enable_damping = true;
  bool enable_gate_errors = true;

  /// Gate library with overrides and the error multiplier applied.
  [[nodiscard]] GateLibrary library() const;

  [[nodiscard]] static NoiseConfig zero_noise();
  [[nodiscard]] static NoiseConfig from_json(const nlohmann::json& j);
  [[nodiscard]] nlohmann::json to_json() const;
};

[[nodiscard]] NoiseConfig load_noise_config(const std::string& path);

}  // namespace waltz
