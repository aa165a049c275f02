#include "waltz/noise.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

namespace waltz {

Rng derive_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

Matrix generalized_pauli(int d, int a, int b) {
  if (d != 2 && d != 4) {
    throw std::invalid_argument("generalized Paulis are defined for d = 2 or 4");
  }
  if (a < 0 || a >= d || b < 0 || b >= d) {
    throw std::invalid_argument("Pauli exponents out of range");
  }
  Matrix x = Matrix::Zero(d, d);
  Matrix z = Matrix::Zero(d, d);
  for (int k = 0; k < d; ++k) {
    x((k + 1) % d, k) = 1.0;
    z(k, k) = std::polar(1.0, 2.0 * kPi * k / d);
  }
  Matrix out = Matrix::Identity(d, d);
  for (int i = 0; i < a; ++i) {
    out = out * x;
  }
  for (int i = 0; i < b; ++i) {
    out = out * z;
  }
  return out;
}

std::vector<Matrix> generalized_paulis(int d) {
  std::vector<Matrix> out;
  out.reserve(static_cast<std::size_t>(d * d));
  for (int a = 0; a < d; ++a) {
    for (int b = 0; b < d; ++b) {
      out.push_back(generalized_pauli(d, a, b));
    }
  }
  return out;
}

std::vector<int> error_support(const GateSpec& gate) {
  std::vector<int> dims;
  dims.reserve(gate.radices.size());
  for (Radix r : gate.radices) {
    dims.push_back(r.dim());
  }
  return dims;
}

bool is_identity(const PauliDraw& draw) {
  return std::all_of(draw.begin(), draw.end(), [](int i) { return i == 0; });
}

PauliDraw sample_gate_error(Rng& rng, double eps, const std::vector<int>& dims) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw std::invalid_argument("error probability must lie in [0, 1)");
  }
  PauliDraw draw(dims.size(), 0);
  if (eps == 0.0) {
    return draw;
  }
  std::uniform_real_distribution<double> u(0.0, 1.0);
  if (u(rng) >= eps) {
    return draw;
  }
  std::size_t total = 1;
  for (int d : dims) {
    total *= static_cast<std::size_t>(d * d);
  }
  std::uniform_int_distribution<std::size_t> pick(1, total - 1);
  std::size_t idx = pick(rng);
  for (std::size_t i = dims.size(); i-- > 0;) {
    const auto n = static_cast<std::size_t>(dims[i] * dims[i]);
    draw[i] = static_cast<int>(idx % n);
    idx /= n;
  }
  return draw;
}

Matrix pauli_product(const PauliDraw& draw, const std::vector<int>& dims) {
  if (draw.size() != dims.size()) {
    throw std::invalid_argument("draw and dims differ in length");
  }
  Matrix out = Matrix::Identity(1, 1);
  for (std::size_t i = 0; i < dims.size(); ++i) {
    const int d = dims[i];
    out = kron(out, generalized_pauli(d, draw[i] / d, draw[i] % d));
  }
  return out;
}

double damping_lambda(int m, double dt, double t1_base, double coherence_multiplier) {
  if (dt < 0.0 || t1_base <= 0.0) {
    throw std::invalid_argument("damping needs dt >= 0 and T1 > 0");
  }
  const double rate = m >= 2 ? m * coherence_multiplier : m;
  return -std::expm1(-rate * dt / t1_base);
}

std::vector<Matrix> damping_kraus(int d, double dt, double t1_base, double coherence_multiplier) {
  if (d < 2) {
    throw std::invalid_argument("damping needs d >= 2");
  }
  std::vector<Matrix> kraus;
  Matrix k0 = Matrix::Zero(d, d);
  k0(0, 0) = 1.0;
  for (int m = 1; m < d; ++m) {
    k0(m, m) = std::sqrt(1.0 - damping_lambda(m, dt, t1_base, coherence_multiplier));
  }
  kraus.push_back(k0);
  for (int m = 1; m < d; ++m) {
    Matrix km = Matrix::Zero(d, d);
    km(0, m) = std::sqrt(damping_lambda(m, dt, t1_base, coherence_multiplier));
    kraus.push_back(km);
  }
  return kraus;
}

std::vector<double> kraus_probabilities(const std::vector<Matrix>& kraus, const Matrix& rho) {
  std::vector<double> p;
  p.reserve(kraus.size());
  for (const auto& k : kraus) {
    p.push_back(std::max(0.0, (k * rho * k.adjoint()).trace().real()));
  }
  return p;
}

int sample_index(Rng& rng, const std::vector<double>& probabilities) {
  double total = 0.0;
  for (double p : probabilities) {
    total += p;
  }
  if (!(total > 0.0)) {
    throw std::invalid_argument("branch probabilities sum to zero");
  }
  std::uniform_real_distribution<double> u(0.0, total);
  const double r = u(rng);
  double acc = 0.0;
  int last = 0;
  for (std::size_t i = 0; i < probabilities.size(); ++i) {
    if (probabilities[i] <= 0.0) {
      continue;
    }
    acc += probabilities[i];
    last = static_cast<int>(i);
    if (r < acc) {
      return last;
    }
  }
  return last;
}

int sample_kraus(Rng& rng, const std::vector<Matrix>& kraus, const Vector& psi) {
  std::vector<double> p;
  p.reserve(kraus.size());
  for (const auto& k : kraus) {
    p.push_back((k * psi).squaredNorm());
  }
  return sample_index(rng, p);
}

GateLibrary NoiseConfig::library() const {
  GateLibrary lib;
  for (const auto& [cls, f] : class_fidelity) {
    lib.set_class_fidelity(class_from_name(cls), f);
  }
  for (const auto& [name, f] : gate_fidelity) {
    lib.set_fidelity(name, f);
  }
  if (ququart_error_multiplier != 1.0) {
    lib.scale_ququart_error(ququart_error_multiplier);
  }
  return lib;
}

NoiseConfig NoiseConfig::zero_noise() {
  NoiseConfig c;
  c.enable_damping = false;
  c.enable_gate_errors = false;
  return c;
}

NoiseConfig NoiseConfig::from_json(const nlohmann::json& j) {
  static const std::vector<std::string> kKnown{"T1_base_ns",           "gate_fidelity",  "class_fidelity",
                                               "ququart_error_multiplier", "coherence_multiplier",
                                               "enable_damping",       "enable_gate_errors"};
  for (const auto& [key, value] : j.items()) {
    if (std::find(kKnown.begin(), kKnown.end(), key) == kKnown.end()) {
      throw std::invalid_argument("unknown noise config key '" + key + "'");
    }
  }
  NoiseConfig c;
  c.t1_base_ns = j.value("T1_base_ns", c.t1_base_ns);
  c.gate_fidelity = j.value("gate_fidelity", c.gate_fidelity);
  c.class_fidelity = j.value("class_fidelity", c.class_fidelity);
  c.ququart_error_multiplier = j.value("ququart_error_multiplier", c.ququart_error_multiplier);
  c.coherence_multiplier = j.value("coherence_multiplier", c.coherence_multiplier);
  c.enable_damping = j.value("enable_damping", c.enable_damping);
  c.enable_gate_errors = j.value("enable_gate_errors", c.enable_gate_errors);
  if (!(c.t1_base_ns > 0.0)) {
    throw std::invalid_argument("T1_base_ns must be positive");
  }
  if (!(c.coherence_multiplier >= 0.0) || !(c.ququart_error_multiplier >= 0.0)) {
    throw std::invalid_argument("multipliers must be non-negative");
  }
  // Validate names eagerly.
  (void)c.library();
  return c;
}

nlohmann::json NoiseConfig::to_json() const {
  return {{"T1_base_ns", t1_base_ns},
          {"gate_fidelity", gate_fidelity},
          {"class_fidelity", class_fidelity},
          {"ququart_error_multiplier", ququart_error_multiplier},
          {"coherence_multiplier", coherence_multiplier},
          {"enable_damping", enable_damping},
          {"enable_gate_errors", enable_gate_errors}};
}

NoiseConfig load_noise_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open noise config " + path);
  }
  return NoiseConfig::from_json(nlohmann::json::parse(in));
}

}  // namespace waltz
