#pragma once

#include "waltz/linalg.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace waltz {

/// Dimension of a physical device. Only bare qubits (2) and ququarts (4)
/// are constructible.
class Radix {
public:
  constexpr Radix() = default;
  explicit Radix(int dimension);

  static constexpr Radix qubit() { return Radix(2, Tag{}); }
  static constexpr Radix ququart() { return Radix(4, Tag{}); }

  [[nodiscard]] constexpr int dim() const { return dim_; }
  [[nodiscard]] constexpr int slots() const { return dim_ == 4 ? 2 : 1; }

  friend constexpr bool operator==(Radix, Radix) = default;

private:
  struct Tag {};
  constexpr Radix(int d, Tag) : dim_(d) {}
  int dim_ = 2;
};

/// Logical position on a device. Slot 0 is the high bit of the encoding
/// |q0 q1> -> level 2*q0 + q1; bare qubits only have slot 0.
struct Slot {
  int device = 0;
  int index = 0;
  friend constexpr auto operator<=>(const Slot&, const Slot&) = default;
};

/// Where one logical operand of a qubit-level unitary lives inside the
/// physical operand tuple of a gate.
struct SlotRef {
  int position = 0;
  int slot = 0;
  friend constexpr bool operator==(const SlotRef&, const SlotRef&) = default;
};
using SlotAssignment = std::vector<SlotRef>;

enum class GateKind : std::uint8_t {
  I,
  X,
  Y,
  Z,
  H,
  S,
  Sdg,
  T,
  Tdg,
  RZ,
  U3,
  U,  // physical single-qubit gate carrying an explicit 2x2 payload
  CX,
  CZ,
  CSdg,
  SWAP,
  CCX,
  CCZ,
  CSWAP,
  IToffoli,
  Enc,
  EncDg,
};

[[nodiscard]] int arity(GateKind kind);
[[nodiscard]] int param_count(GateKind kind);
[[nodiscard]] std::string_view kind_name(GateKind kind);
/// Lower-case mnemonic used by the text circuit format ("ccx", "rz", ...).
[[nodiscard]] std::string_view kind_mnemonic(GateKind kind);
[[nodiscard]] GateKind kind_from_mnemonic(std::string_view mnemonic);

/// Canonical 2^k x 2^k matrix of a qubit-level gate, operand 0 being the most
/// significant bit. Controls precede targets (CSWAP: control first).
[[nodiscard]] Matrix qubit_unitary(GateKind kind, const std::vector<double>& params = {});

/// |q0 q1> -> level.
[[nodiscard]] int encode_level(int q0, int q1);
/// level -> (q0, q1).
[[nodiscard]] std::pair<int, int> decode_level(int level);

/// Embeds a k-qubit unitary into the space of `radices`, acting on the
/// assigned slots and as identity on every other slot.
[[nodiscard]] Matrix lift(const Matrix& u, const std::vector<Radix>& radices,
                          const SlotAssignment& assignment);

/// Two-ququart encoding permutation |a>_A |b>_B -> |0>_A |2a+b>_B.
[[nodiscard]] Matrix enc_unitary();

enum class GateClass : std::uint8_t {
  BareSingle,   // U on a bare qubit
  Internal,     // single-ququart gates
  QubitOnly,    // multi-device, all bare
  MixedRadix,   // ququart + bare
  FullQuquart,  // ququart + ququart
};

[[nodiscard]] std::string_view class_name(GateClass cls);
[[nodiscard]] GateClass class_from_name(std::string_view name);

/// Structure derived purely from a gate name's sub/superscript.
struct GateShape {
  GateKind base = GateKind::I;
  std::vector<Radix> radices;
  SlotAssignment assignment;
};

/// Parses the canonical naming grammar: `U`, `U^0`, `U^{0,1}`, `CX^0`,
/// `SWAP^in`, `CX_2`, `CX^{q0}`, `CX^{01}`, `CCX^{01q}`, `CCX^{0,01}`, `ENC`.
[[nodiscard]] GateShape parse_gate_name(std::string_view name);

struct GateSpec {
  std::string name;
  GateKind base = GateKind::I;
  std::vector<Radix> radices;
  SlotAssignment assignment;
  double duration_ns = 0.0;
  double fidelity = 1.0;
  GateClass cls = GateClass::BareSingle;

  [[nodiscard]] bool touches_ququart() const;
  [[nodiscard]] int device_count() const { return static_cast<int>(radices.size()); }
  [[nodiscard]] int qubit_count() const { return static_cast<int>(assignment.size()); }
};

class UnknownGateError : public std::invalid_argument {
public:
  explicit UnknownGateError(std::string_view name);
};

/// Every named physical gate with its duration, success probability and
/// unitary. Fidelities are overridable; durations are fixed.
class GateLibrary {
public:
  GateLibrary();

  static const GateLibrary& standard();

  [[nodiscard]] bool contains(std::string_view name) const;
  [[nodiscard]] const GateSpec& spec(std::string_view name) const;
  [[nodiscard]] double duration_of(std::string_view name) const { return spec(name).duration_ns; }
  [[nodiscard]] double fidelity_of(std::string_view name) const { return spec(name).fidelity; }

  /// `payload` is the 2x2 qubit gate for the U family and ignored otherwise.
  [[nodiscard]] Matrix unitary_of(std::string_view name, const Mat2& payload = Mat2::Identity()) const;

  [[nodiscard]] const std::vector<GateSpec>& gates() const { return gates_; }

  GateLibrary& set_fidelity(std::string_view name, double fidelity);
  GateLibrary& set_class_fidelity(GateClass cls, double fidelity);
  /// Multiplies the error 1 - F of every gate touching a ququart by `factor`.
  GateLibrary& scale_ququart_error(double factor);

  [[nodiscard]] nlohmann::json to_json() const;

private:
  std::vector<GateSpec> gates_;
  std::map<std::string, std::size_t, std::less<>> index_;
};

[[nodiscard]] double duration_of(std::string_view name);
[[nodiscard]] double fidelity_of(std::string_view name);
[[nodiscard]] Matrix unitary_of(std::string_view name, const Mat2& payload = Mat2::Identity());

}  // namespace waltz
