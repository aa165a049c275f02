#include "waltz/simulator.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numeric>

namespace waltz {

namespace {

std::vector<std::size_t> make_strides(const std::vector<int>& dims) {
  std::vector<std::size_t> s(dims.size());
  std::size_t acc = 1;
  for (std::size_t i = dims.size(); i-- > 0;) {
    s[i] = acc;
    acc *= static_cast<std::size_t>(dims[i]);
  }
  return s;
}

}  // namespace

MixedRadixState::MixedRadixState(std::vector<int> dims) : dims_(std::move(dims)), strides_(make_strides(dims_)) {
  amps_ = Vector::Zero(static_cast<Eigen::Index>(product(dims_)));
  amps_(0) = 1.0;
}

MixedRadixState::MixedRadixState(std::vector<int> dims, Vector amplitudes)
    : dims_(std::move(dims)), strides_(make_strides(dims_)), amps_(std::move(amplitudes)) {
  if (static_cast<std::size_t>(amps_.size()) != product(dims_)) {
    throw std::invalid_argument("amplitude count does not match dimensions");
  }
}

void MixedRadixState::apply(const Matrix& op, const std::vector<int>& devices, const std::vector<int>& op_dims) {
  const std::size_t k = devices.size();
  std::vector<int> gd = op_dims.empty() ? std::vector<int>() : op_dims;
  if (gd.empty()) {
    for (int d : devices) {
      gd.push_back(dims_.at(d));
    }
  }
  if (gd.size() != k) {
    throw std::invalid_argument("operator dims do not match device count");
  }
  std::size_t g = 1;
  for (std::size_t i = 0; i < k; ++i) {
    if (devices[i] < 0 || devices[i] >= static_cast<int>(dims_.size()) || gd[i] > dims_[devices[i]]) {
      throw std::invalid_argument("operator does not fit the addressed devices");
    }
    g *= static_cast<std::size_t>(gd[i]);
  }
  if (static_cast<std::size_t>(op.rows()) != g || static_cast<std::size_t>(op.cols()) != g) {
    throw std::invalid_argument("operator dimension mismatch");
  }
  constexpr std::size_t kMax = 64;
  if (g > kMax) {
    throw std::invalid_argument("operator too large");
  }

  std::vector<std::size_t> offsets(g, 0);
  for (std::size_t x = 0; x < g; ++x) {
    std::size_t rem = x;
    std::size_t off = 0;
    for (std::size_t i = k; i-- > 0;) {
      off += (rem % gd[i]) * strides_[devices[i]];
      rem /= gd[i];
    }
    offsets[x] = off;
  }

  // Odometer over every device digit except the addressed ones.
  std::vector<int> free_devices;
  for (int d = 0; d < static_cast<int>(dims_.size()); ++d) {
    if (std::find(devices.begin(), devices.end(), d) == devices.end()) {
      free_devices.push_back(d);
    }
  }
  std::vector<int> digit(free_devices.size(), 0);
  std::array<Complex, kMax> in{};
  std::array<Complex, kMax> out{};
  std::size_t base = 0;
  Complex* a = amps_.data();
  while (true) {
    for (std::size_t x = 0; x < g; ++x) {
      in[x] = a[base + offsets[x]];
    }
    for (std::size_t r = 0; r < g; ++r) {
      Complex acc = 0.0;
      for (std::size_t c = 0; c < g; ++c) {
        acc += op(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) * in[c];
      }
      out[r] = acc;
    }
    for (std::size_t x = 0; x < g; ++x) {
      a[base + offsets[x]] = out[x];
    }
    std::size_t i = free_devices.size();
    while (i > 0) {
      --i;
      const int d = free_devices[i];
      if (++digit[i] < dims_[d]) {
        base += strides_[d];
        break;
      }
      base -= static_cast<std::size_t>(digit[i] - 1) * strides_[d];
      digit[i] = 0;
      if (i == 0) {
        return;
      }
    }
    if (free_devices.empty()) {
      return;
    }
  }
}

std::vector<double> MixedRadixState::populations(int device) const {
  const int d = dims_.at(device);
  const std::size_t s = strides_[device];
  std::vector<double> p(d, 0.0);
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    p[(static_cast<std::size_t>(i) / s) % d] += std::norm(amps_(i));
  }
  return p;
}

Matrix MixedRadixState::reduced_density(int device) const {
  const int d = dims_.at(device);
  const std::size_t s = strides_[device];
  Matrix rho = Matrix::Zero(d, d);
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    const auto ui = static_cast<std::size_t>(i);
    const int level = static_cast<int>((ui / s) % d);
    if (level != 0) {
      continue;
    }
    for (int r = 0; r < d; ++r) {
      const Complex ar = amps_(static_cast<Eigen::Index>(ui + r * s));
      for (int c = 0; c < d; ++c) {
        rho(r, c) += ar * std::conj(amps_(static_cast<Eigen::Index>(ui + c * s)));
      }
    }
  }
  return rho;
}

void MixedRadixState::normalize() {
  const double n = amps_.norm();
  if (!(n > 0.0)) {
    throw std::runtime_error("cannot normalize a zero state");
  }
  amps_ /= n;
}

Vector haar_random_vector(Eigen::Index dim, Rng& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const double re = g(rng);
    const double im = g(rng);
    v(i) = Complex(re, im);
  }
  v.normalize();
  return v;
}

MixedRadixState haar_random_state(const std::vector<int>& dims, Rng& rng) {
  return MixedRadixState(dims, haar_random_vector(static_cast<Eigen::Index>(product(dims)), rng));
}

void apply_unitary(MixedRadixState& state, const Matrix& u, const std::vector<int>& devices) {
  state.apply(u, devices);
}

Vector simulate_logical(const LogicalCircuit& circuit, const Vector& input) {
  const int n = circuit.n_qubits();
  if (input.size() != (Eigen::Index{1} << n)) {
    throw std::invalid_argument("input length does not match the qubit count");
  }
  MixedRadixState s(std::vector<int>(n, 2), input);
  for (const auto& g : circuit.gates()) {
    s.apply(qubit_unitary(g.kind, g.params), g.qubits);
  }
  return s.amplitudes();
}

std::vector<std::size_t> logical_embedding(const Layout& layout, const std::vector<int>& dims) {
  const int n = layout.n_qubits();
  const auto strides = make_strides(dims);
  std::vector<std::size_t> contrib(n);
  for (int q = 0; q < n; ++q) {
    const Slot s = layout.qubit_slot[q];
    const bool quq = layout.device_radix.at(s.device).dim() == 4;
    contrib[q] = (quq && s.index == 0 ? 2 : 1) * strides.at(s.device);
  }
  std::vector<std::size_t> index(std::size_t{1} << n, 0);
  for (std::size_t x = 0; x < index.size(); ++x) {
    std::size_t p = 0;
    for (int q = 0; q < n; ++q) {
      if ((x >> (n - 1 - q)) & 1U) {
        p += contrib[q];
      }
    }
    index[x] = p;
  }
  return index;
}

MixedRadixState encode_state(const Vector& logical, const Layout& layout, const std::vector<int>& dims) {
  const auto index = logical_embedding(layout, dims);
  if (static_cast<std::size_t>(logical.size()) != index.size()) {
    throw std::invalid_argument("logical state does not match the layout");
  }
  MixedRadixState s(dims);
  s.amplitudes().setZero();
  for (std::size_t x = 0; x < index.size(); ++x) {
    s.amplitudes()(static_cast<Eigen::Index>(index[x])) = logical(static_cast<Eigen::Index>(x));
  }
  return s;
}

Vector decode_state(const MixedRadixState& state, const Layout& layout) {
  const auto index = logical_embedding(layout, state.dims());
  Vector out(static_cast<Eigen::Index>(index.size()));
  for (std::size_t x = 0; x < index.size(); ++x) {
    out(static_cast<Eigen::Index>(x)) = state.amplitudes()(static_cast<Eigen::Index>(index[x]));
  }
  return out;
}

void damp_idle(MixedRadixState& state, int device, double dt, const NoiseConfig& noise, Rng& rng) {
  if (!noise.enable_damping || dt <= 0.0) {
    return;
  }
  const int d = state.dims().at(device);
  const auto kraus = damping_kraus(d, dt, noise.t1_base_ns, noise.coherence_multiplier);
  // Every K_m^dagger K_m is diagonal here, so level populations suffice.
  const auto pop = state.populations(device);
  std::vector<double> p(kraus.size(), 0.0);
  for (std::size_t m = 0; m < kraus.size(); ++m) {
    const Matrix kk = kraus[m].adjoint() * kraus[m];
    for (int l = 0; l < d; ++l) {
      p[m] += kk(l, l).real() * pop[l];
    }
  }
  const int m = sample_index(rng, p);
  state.apply(kraus[m], {device});
  state.normalize();
}

CompiledOps::CompiledOps(const PhysicalCircuit& circuit, const GateLibrary& library) {
  for (const auto& inst : circuit.instructions) {
    const GateSpec& spec = library.spec(inst.gate);
    Mat2 payload = Mat2::Identity();
    if (spec.base == GateKind::U) {
      if (!inst.op) {
        throw std::invalid_argument("U instruction without a payload");
      }
      payload = qubit_unitary(inst.op->kind, inst.op->params);
    }
    unitaries_.push_back(library.unitary_of(inst.gate, payload));
    dims_.push_back(error_support(spec));
    errors_.push_back(1.0 - spec.fidelity);
  }
}

void run_trajectory(const PhysicalCircuit& circuit, const Schedule& schedule, const CompiledOps& ops,
                    MixedRadixState& state, const NoiseConfig& noise, Rng& rng) {
  if (schedule.start.size() != circuit.instructions.size()) {
    throw std::invalid_argument("schedule does not match circuit");
  }
  std::vector<double> free_at(state.dims().size(), 0.0);
  for (std::size_t i = 0; i < circuit.instructions.size(); ++i) {
    const auto& inst = circuit.instructions[i];
    const double start = schedule.start[i];
    for (int d : inst.devices) {
      damp_idle(state, d, start - free_at[d], noise, rng);
      free_at[d] = start + inst.duration_ns;
    }
    state.apply(ops.unitary(i), inst.devices, ops.dims(i));
    if (noise.enable_gate_errors && ops.error(i) > 0.0) {
      const PauliDraw draw = sample_gate_error(rng, ops.error(i), ops.dims(i));
      if (!is_identity(draw)) {
        state.apply(pauli_product(draw, ops.dims(i)), inst.devices, ops.dims(i));
      }
    }
  }
  for (std::size_t d = 0; d < free_at.size(); ++d) {
    damp_idle(state, static_cast<int>(d), schedule.duration - free_at[d], noise, rng);
  }
}

void run_trajectory(const PhysicalCircuit& circuit, const Schedule& schedule, MixedRadixState& state,
                    const NoiseConfig& noise, Rng& rng) {
  const CompiledOps ops(circuit, noise.library());
  run_trajectory(circuit, schedule, ops, state, noise, rng);
}

FidelityResult average_fidelity(const LogicalCircuit& logical, const CompileResult& compiled,
                                const NoiseConfig& noise, const TrajectoryConfig& config) {
  if (config.n_states < 1 || config.trajectories_per_state < 1) {
    throw std::invalid_argument("state and trajectory counts must be positive");
  }
  const std::vector<int> dims = compiled.circuit.simulation_dims();
  const std::size_t dim = product(dims);
  if (dim > config.max_dimension) {
    throw SimulationRefused("register dimension " + std::to_string(dim) + " exceeds the limit " +
                            std::to_string(config.max_dimension));
  }
  const CompiledOps ops(compiled.circuit, noise.library());
  const auto in_index = logical_embedding(compiled.initial, dims);
  const auto out_index = logical_embedding(compiled.final, dims);

  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(config.n_states) * config.trajectories_per_state);
  for (int s = 0; s < config.n_states; ++s) {
    Rng rng = derive_rng(config.seed, static_cast<std::uint64_t>(s));
    const Vector psi = haar_random_vector(Eigen::Index{1} << logical.n_qubits(), rng);
    const Vector ideal = simulate_logical(logical, psi);
    for (int t = 0; t < config.trajectories_per_state; ++t) {
      MixedRadixState state(dims);
      state.amplitudes().setZero();
      for (std::size_t x = 0; x < in_index.size(); ++x) {
        state.amplitudes()(static_cast<Eigen::Index>(in_index[x])) = psi(static_cast<Eigen::Index>(x));
      }
      run_trajectory(compiled.circuit, compiled.schedule, ops, state, noise, rng);
      Complex overlap = 0.0;
      for (std::size_t x = 0; x < out_index.size(); ++x) {
        overlap += std::conj(ideal(static_cast<Eigen::Index>(x))) *
                   state.amplitudes()(static_cast<Eigen::Index>(out_index[x]));
      }
      samples.push_back(std::norm(overlap));
    }
  }

  FidelityResult r;
  r.n_samples = static_cast<int>(samples.size());
  r.mean = std::accumulate(samples.begin(), samples.end(), 0.0) / r.n_samples;
  if (r.n_samples > 1) {
    double ss = 0.0;
    for (double x : samples) {
      ss += (x - r.mean) * (x - r.mean);
    }
    r.std_error = std::sqrt(ss / (r.n_samples - 1)) / std::sqrt(static_cast<double>(r.n_samples));
  }
  return r;
}

}  // namespace waltz
