#pragma once

#include "waltz/circuit.hpp"

#include <cstdint>
#include <string>

namespace waltz {

/// Multi-controlled X as a V-chain of Toffolis. Controls are qubits
/// 0..n-1, ancillas n..2n-3 and the target is 2n-2.
[[nodiscard]] LogicalCircuit gen_cnu(int n_controls);

/// Cuccaro ripple-carry adder computing b += a. Layout: carry-in 0,
/// a on 1..n, b on n+1..2n, carry-out 2n+1. Bit 0 of each register is
/// the least significant one.
[[nodiscard]] LogicalCircuit gen_cuccaro(int n_bits);

/// CSWAP routing tree read: the bus (qubit n) is XOR-ed with the leaf
/// selected by the address register (qubits 0..n-1, qubit 0 most
/// significant). Leaves occupy qubits n+1..n+2^n and are restored.
[[nodiscard]] LogicalCircuit gen_qram(int n_address_bits);

/// Two seeded index values, each applying a seeded Pauli string to the
/// targets under control of the index register. Layout: index 0..m-1
/// (qubit 0 most significant), targets m..m+n-1, then max(0, m-2) ancillas.
[[nodiscard]] LogicalCircuit gen_select(int m_index, int n_targets, std::uint64_t seed);

struct SelectValues {
  int v1 = 0;
  int v2 = 0;
};
/// The index values gen_select draws for `seed`.
[[nodiscard]] SelectValues select_values(int m_index, std::uint64_t seed);

/// Random CX/CCX mix. Each gate draws its type and three distinct operands;
/// a CX uses the first two.
[[nodiscard]] LogicalCircuit gen_synthetic(int n_qubits, int n_gates, double cx_fraction, std::uint64_t seed);

struct BenchmarkSpec {
  std::string family;  // cnu, cuccaro, qram, select, synthetic
  int size = 0;        // controls, bits, address bits, index bits, qubits
  int n_targets = 1;   // select
  int n_gates = 0;     // synthetic
  double cx_fraction = 0.5;
  std::uint64_t seed = 0;
};

[[nodiscard]] LogicalCircuit generate(const BenchmarkSpec& spec);

/// Logical qubit count produced by `generate(spec)`.
[[nodiscard]] int benchmark_width(const BenchmarkSpec& spec);

}  // namespace waltz
