#pragma once

// Statevector reference built from gate definitions, independent of the
// library's matrices.

#include "waltz/circuit.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace ref {

using C = std::complex<double>;
using State = std::vector<C>;

inline constexpr double kPi = 3.14159265358979323846;

struct M2 {
  C a, b, c, d;
};

inline M2 single(waltz::GateKind k, const std::vector<double>& p) {
  using K = waltz::GateKind;
  const double r = 1.0 / std::sqrt(2.0);
  const C i(0.0, 1.0);
  switch (k) {
    case K::I: return {1, 0, 0, 1};
    case K::X: return {0, 1, 1, 0};
    case K::Y: return {0, -i, i, 0};
    case K::Z: return {1, 0, 0, -1};
    case K::H: return {r, r, r, -r};
    case K::S: return {1, 0, 0, i};
    case K::Sdg: return {1, 0, 0, -i};
    case K::T: return {1, 0, 0, std::polar(1.0, kPi / 4)};
    case K::Tdg: return {1, 0, 0, std::polar(1.0, -kPi / 4)};
    case K::RZ: return {std::polar(1.0, -p[0] / 2), 0, 0, std::polar(1.0, p[0] / 2)};
    case K::U3: {
      const double t = p[0], ph = p[1], la = p[2];
      return {std::cos(t / 2), -std::polar(1.0, la) * std::sin(t / 2), std::polar(1.0, ph) * std::sin(t / 2),
              std::polar(1.0, ph + la) * std::cos(t / 2)};
    }
    default: throw std::invalid_argument("not a single-qubit kind");
  }
}

inline int bit(std::size_t x, int q, int n) { return static_cast<int>((x >> (n - 1 - q)) & 1U); }
inline std::size_t mask(int q, int n) { return std::size_t{1} << (n - 1 - q); }

inline void apply(State& s, const waltz::LogicalGate& g, int n) {
  using K = waltz::GateKind;
  const auto& q = g.qubits;
  const std::size_t dim = s.size();
  switch (g.kind) {
    case K::CX:
    case K::CCX:
    case K::CZ:
    case K::CCZ:
    case K::CSdg:
    case K::IToffoli: {
      const std::size_t nc = q.size() - 1;
      const int t = q.back();
      State out = s;
      for (std::size_t x = 0; x < dim; ++x) {
        bool on = true;
        for (std::size_t c = 0; c < nc; ++c) on = on && bit(x, q[c], n);
        if (!on) continue;
        if (g.kind == K::CZ || g.kind == K::CCZ) {
          if (bit(x, t, n)) out[x] = -s[x];
        } else if (g.kind == K::CSdg) {
          if (bit(x, t, n)) out[x] = C(0, -1) * s[x];
        } else if (g.kind == K::IToffoli) {
          out[x] = C(0, 1) * s[x ^ mask(t, n)];
        } else {
          out[x] = s[x ^ mask(t, n)];
        }
      }
      s = out;
      return;
    }
    case K::SWAP:
    case K::CSWAP: {
      const int a = q[q.size() - 2], b = q.back();
      State out = s;
      for (std::size_t x = 0; x < dim; ++x) {
        if (g.kind == K::CSWAP && !bit(x, q[0], n)) continue;
        if (bit(x, a, n) != bit(x, b, n)) out[x] = s[x ^ mask(a, n) ^ mask(b, n)];
      }
      s = out;
      return;
    }
    default: {
      const M2 m = single(g.kind, g.params);
      const std::size_t mk = mask(q[0], n);
      for (std::size_t x = 0; x < dim; ++x) {
        if (x & mk) continue;
        const C v0 = s[x], v1 = s[x | mk];
        s[x] = m.a * v0 + m.b * v1;
        s[x | mk] = m.c * v0 + m.d * v1;
      }
    }
  }
}

inline State run(const waltz::LogicalCircuit& c, State s) {
  for (const auto& g : c.gates()) apply(s, g, c.n_qubits());
  return s;
}

inline State basis(int n, std::size_t x) {
  State s(std::size_t{1} << n, 0.0);
  s.at(x) = 1.0;
  return s;
}

/// Classical action on a basis state; throws if the circuit is not a
/// permutation of basis states up to phase.
inline std::size_t classical(const waltz::LogicalCircuit& c, std::size_t x) {
  const State s = run(c, basis(c.n_qubits(), x));
  for (std::size_t y = 0; y < s.size(); ++y) {
    if (std::abs(std::abs(s[y]) - 1.0) < 1e-9) return y;
  }
  throw std::runtime_error("not a classical permutation");
}

}  // namespace ref
