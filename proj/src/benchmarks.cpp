#include "waltz/benchmarks.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <stdexcept>

namespace waltz {

LogicalCircuit gen_cnu(int n_controls) {
  if (n_controls < 2) {
    throw std::invalid_argument("cnu needs at least 2 controls");
  }
  const int k = n_controls;
  LogicalCircuit c(2 * k - 1);
  const int target = 2 * k - 2;
  if (k == 2) {
    c.add(GateKind::CCX, {0, 1, target});
    return c;
  }
  const auto anc = [k](int i) { return k + i; };
  std::vector<LogicalGate> compute;
  compute.push_back({GateKind::CCX, {0, 1, anc(0)}, {}});
  for (int i = 2; i < k - 1; ++i) {
    compute.push_back({GateKind::CCX, {i, anc(i - 2), anc(i - 1)}, {}});
  }
  for (const auto& g : compute) {
    c.add(g);
  }
  c.add(GateKind::CCX, {k - 1, anc(k - 3), target});
  for (auto it = compute.rbegin(); it != compute.rend(); ++it) {
    c.add(*it);
  }
  return c;
}

namespace {

void maj(LogicalCircuit& c, int x, int y, int z) {
  c.add(GateKind::CX, {z, y});
  c.add(GateKind::CX, {z, x});
  c.add(GateKind::CCX, {x, y, z});
}

void uma(LogicalCircuit& c, int x, int y, int z) {
  c.add(GateKind::CCX, {x, y, z});
  c.add(GateKind::CX, {z, x});
  c.add(GateKind::CX, {x, y});
}

}  // namespace

LogicalCircuit gen_cuccaro(int n_bits) {
  if (n_bits < 1) {
    throw std::invalid_argument("cuccaro needs at least 1 bit");
  }
  const int n = n_bits;
  LogicalCircuit c(2 * n + 2);
  const auto a = [](int i) { return 1 + i; };
  const auto b = [n](int i) { return n + 1 + i; };
  const int carry_out = 2 * n + 1;

  maj(c, 0, b(0), a(0));
  for (int i = 1; i < n; ++i) {
    maj(c, a(i - 1), b(i), a(i));
  }
  c.add(GateKind::CX, {a(n - 1), carry_out});
  for (int i = n - 1; i >= 1; --i) {
    uma(c, a(i - 1), b(i), a(i));
  }
  uma(c, 0, b(0), a(0));
  return c;
}

LogicalCircuit gen_qram(int n_address_bits) {
  if (n_address_bits < 1) {
    throw std::invalid_argument("qram needs at least 1 address bit");
  }
  const int n = n_address_bits;
  const int leaves = 1 << n;
  LogicalCircuit c(n + 1 + leaves);
  const int bus = n;
  const auto leaf = [n](int i) { return n + 1 + i; };

  // Address qubit j weighs 2^(n-1-j); the high bit is resolved first.
  std::vector<LogicalGate> tree;
  for (int j = 0; j < n; ++j) {
    const int half = 1 << (n - 1 - j);
    for (int k = 0; k < half; ++k) {
      tree.push_back({GateKind::CSWAP, {j, leaf(k), leaf(k + half)}, {}});
    }
  }
  for (const auto& g : tree) {
    c.add(g);
  }
  c.add(GateKind::CX, {leaf(0), bus});
  for (auto it = tree.rbegin(); it != tree.rend(); ++it) {
    c.add(*it);
  }
  return c;
}

SelectValues select_values(int m_index, std::uint64_t seed) {
  if (m_index < 1 || m_index > 30) {
    throw std::invalid_argument("select index width must lie in 1..30");
  }
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(0, (1 << m_index) - 1);
  SelectValues v;
  v.v1 = pick(rng);
  do {
    v.v2 = pick(rng);
  } while (v.v2 == v.v1);
  return v;
}

LogicalCircuit gen_select(int m_index, int n_targets, std::uint64_t seed) {
  if (n_targets < 1) {
    throw std::invalid_argument("select needs at least 1 target");
  }
  const SelectValues values = select_values(m_index, seed);
  const int m = m_index;
  const int n_anc = std::max(0, m - 2);
  LogicalCircuit c(m + n_targets + n_anc);
  const auto target = [m](int i) { return m + i; };
  const auto anc = [m, n_targets](int i) { return m + n_targets + i; };

  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<int> pauli(0, 3);  // I, X, Y, Z

  for (int value : {values.v1, values.v2}) {
    std::vector<int> paulis(n_targets);
    do {
      for (auto& p : paulis) {
        p = pauli(rng);
      }
    } while (std::all_of(paulis.begin(), paulis.end(), [](int p) { return p == 0; }));

    std::vector<int> flipped;
    for (int j = 0; j < m; ++j) {
      if (((value >> (m - 1 - j)) & 1) == 0) {
        flipped.push_back(j);
        c.add(GateKind::X, {j});
      }
    }

    std::vector<LogicalGate> ladder;
    if (m >= 3) {
      ladder.push_back({GateKind::CCX, {0, 1, anc(0)}, {}});
      for (int j = 2; j < m - 1; ++j) {
        ladder.push_back({GateKind::CCX, {j, anc(j - 2), anc(j - 1)}, {}});
      }
    }
    for (const auto& g : ladder) {
      c.add(g);
    }

    std::vector<int> controls;
    if (m == 1) {
      controls = {0};
    } else if (m == 2) {
      controls = {0, 1};
    } else {
      controls = {anc(m - 3), m - 1};
    }
    const bool single = controls.size() == 1;
    for (int i = 0; i < n_targets; ++i) {
      const int t = target(i);
      std::vector<int> ops = controls;
      ops.push_back(t);
      switch (paulis[i]) {
        case 0:
          break;
        case 1:
          c.add(single ? GateKind::CX : GateKind::CCX, ops);
          break;
        case 2:
          c.add(GateKind::Sdg, {t});
          c.add(single ? GateKind::CX : GateKind::CCX, ops);
          c.add(GateKind::S, {t});
          break;
        default:
          c.add(single ? GateKind::CZ : GateKind::CCZ, ops);
          break;
      }
    }

    for (auto it = ladder.rbegin(); it != ladder.rend(); ++it) {
      c.add(*it);
    }
    for (int j : flipped) {
      c.add(GateKind::X, {j});
    }
  }
  return c;
}

LogicalCircuit gen_synthetic(int n_qubits, int n_gates, double cx_fraction, std::uint64_t seed) {
  if (n_qubits < 3) {
    throw std::invalid_argument("synthetic needs at least 3 qubits");
  }
  if (!(cx_fraction >= 0.0 && cx_fraction <= 1.0)) {
    throw std::invalid_argument("cx_fraction must lie in [0, 1]");
  }
  if (n_gates < 0) {
    throw std::invalid_argument("gate count must be non-negative");
  }
  LogicalCircuit c(n_qubits);
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::vector<int> pool(n_qubits);
  for (int g = 0; g < n_gates; ++g) {
    const bool is_cx = coin(rng) < cx_fraction;
    std::iota(pool.begin(), pool.end(), 0);
    for (int i = 0; i < 3; ++i) {
      std::uniform_int_distribution<int> pick(i, n_qubits - 1);
      std::swap(pool[i], pool[pick(rng)]);
    }
    if (is_cx) {
      c.add(GateKind::CX, {pool[0], pool[1]});
    } else {
      c.add(GateKind::CCX, {pool[0], pool[1], pool[2]});
    }
  }
  return c;
}

LogicalCircuit generate(const BenchmarkSpec& spec) {
  if (spec.family == "cnu") {
    return gen_cnu(spec.size);
  }
  if (spec.family == "cuccaro") {
    return gen_cuccaro(spec.size);
  }
  if (spec.family == "qram") {
    return gen_qram(spec.size);
  }
  if (spec.family == "select") {
    return gen_select(spec.size, spec.n_targets, spec.seed);
  }
  if (spec.family == "synthetic") {
    return gen_synthetic(spec.size, spec.n_gates, spec.cx_fraction, spec.seed);
  }
  throw std::invalid_argument("unknown benchmark family '" + spec.family + "'");
}

int benchmark_width(const BenchmarkSpec& spec) {
  if (spec.family == "cnu") {
    return 2 * spec.size - 1;
  }
  if (spec.family == "cuccaro") {
    return 2 * spec.size + 2;
  }
  if (spec.family == "qram") {
    return spec.size + 1 + (1 << spec.size);
  }
  if (spec.family == "select") {
    return spec.size + spec.n_targets + std::max(0, spec.size - 2);
  }
  if (spec.family == "synthetic") {
    return spec.size;
  }
  throw std::invalid_argument("unknown benchmark family '" + spec.family + "'");
}

}  // namespace waltz
