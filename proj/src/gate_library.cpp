#include "waltz/gate_library.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <cmath>
#include <set>
#include <string>

namespace waltz {

Radix::Radix(int dimension) : dim_(dimension) {
  if (dimension != 2 && dimension != 4) {
    throw std::invalid_argument("radix must be 2 or 4, got " + std::to_string(dimension));
  }
}

namespace {

struct KindInfo {
  GateKind kind;
  std::string_view name;
  std::string_view mnemonic;
  int arity;
  int params;
};

constexpr std::array<KindInfo, 22> kKinds{{
    {GateKind::I, "I", "id", 1, 0},
    {GateKind::X, "X", "x", 1, 0},
    {GateKind::Y, "Y", "y", 1, 0},
    {GateKind::Z, "Z", "z", 1, 0},
    {GateKind::H, "H", "h", 1, 0},
    {GateKind::S, "S", "s", 1, 0},
    {GateKind::Sdg, "Sdg", "sdg", 1, 0},
    {GateKind::T, "T", "t", 1, 0},
    {GateKind::Tdg, "Tdg", "tdg", 1, 0},
    {GateKind::RZ, "RZ", "rz", 1, 1},
    {GateKind::U3, "U3", "u3", 1, 3},
    {GateKind::U, "U", "u", 1, 0},
    {GateKind::CX, "CX", "cx", 2, 0},
    {GateKind::CZ, "CZ", "cz", 2, 0},
    {GateKind::CSdg, "CSdg", "csdg", 2, 0},
    {GateKind::SWAP, "SWAP", "swap", 2, 0},
    {GateKind::CCX, "CCX", "ccx", 3, 0},
    {GateKind::CCZ, "CCZ", "ccz", 3, 0},
    {GateKind::CSWAP, "CSWAP", "cswap", 3, 0},
    {GateKind::IToffoli, "iToffoli", "itoffoli", 3, 0},
    {GateKind::Enc, "ENC", "enc", 2, 0},
    {GateKind::EncDg, "ENCdg", "encdg", 2, 0},
}};

const KindInfo& info(GateKind kind) {
  for (const auto& k : kKinds) {
    if (k.kind == kind) {
      return k;
    }
  }
  throw std::logic_error("unhandled gate kind");
}

Matrix permutation(int dim, const std::vector<std::pair<int, int>>& swaps) {
  Matrix m = Matrix::Identity(dim, dim);
  for (auto [a, b] : swaps) {
    m(a, a) = 0.0;
    m(b, b) = 0.0;
    m(a, b) = 1.0;
    m(b, a) = 1.0;
  }
  return m;
}

}  // namespace

int arity(GateKind kind) { return info(kind).arity; }
int param_count(GateKind kind) { return info(kind).params; }
std::string_view kind_name(GateKind kind) { return info(kind).name; }
std::string_view kind_mnemonic(GateKind kind) { return info(kind).mnemonic; }

GateKind kind_from_mnemonic(std::string_view mnemonic) {
  for (const auto& k : kKinds) {
    if (k.mnemonic == mnemonic) {
      return k.kind;
    }
  }
  throw std::invalid_argument("unknown gate mnemonic '" + std::string(mnemonic) + "'");
}

Matrix qubit_unitary(GateKind kind, const std::vector<double>& params) {
  if (static_cast<int>(params.size()) != param_count(kind)) {
    throw std::invalid_argument("wrong parameter count for " + std::string(kind_name(kind)));
  }
  const Complex i(0.0, 1.0);
  const double r = 1.0 / std::sqrt(2.0);
  Matrix m;
  switch (kind) {
    case GateKind::I:
      return Matrix::Identity(2, 2);
    case GateKind::X:
      m.resize(2, 2);
      m << 0, 1, 1, 0;
      return m;
    case GateKind::Y:
      m.resize(2, 2);
      m << 0, -i, i, 0;
      return m;
    case GateKind::Z:
      m.resize(2, 2);
      m << 1, 0, 0, -1;
      return m;
    case GateKind::H:
      m.resize(2, 2);
      m << r, r, r, -r;
      return m;
    case GateKind::S:
      m.resize(2, 2);
      m << 1, 0, 0, i;
      return m;
    case GateKind::Sdg:
      m.resize(2, 2);
      m << 1, 0, 0, -i;
      return m;
    case GateKind::T:
      m.resize(2, 2);
      m << 1, 0, 0, std::polar(1.0, kPi / 4);
      return m;
    case GateKind::Tdg:
      m.resize(2, 2);
      m << 1, 0, 0, std::polar(1.0, -kPi / 4);
      return m;
    case GateKind::RZ:
      m.resize(2, 2);
      m << std::polar(1.0, -params[0] / 2), 0, 0, std::polar(1.0, params[0] / 2);
      return m;
    case GateKind::U3: {
      const double theta = params[0];
      const double phi = params[1];
      const double lambda = params[2];
      m.resize(2, 2);
      m << std::cos(theta / 2), -std::polar(1.0, lambda) * std::sin(theta / 2),
          std::polar(1.0, phi) * std::sin(theta / 2), std::polar(1.0, phi + lambda) * std::cos(theta / 2);
      return m;
    }
    case GateKind::U:
      throw std::invalid_argument("U carries an explicit payload and has no canonical matrix");
    case GateKind::CX:
      return permutation(4, {{2, 3}});
    case GateKind::CZ:
      m = Matrix::Identity(4, 4);
      m(3, 3) = -1.0;
      return m;
    case GateKind::CSdg:
      m = Matrix::Identity(4, 4);
      m(3, 3) = -i;
      return m;
    case GateKind::SWAP:
      return permutation(4, {{1, 2}});
    case GateKind::CCX:
      return permutation(8, {{6, 7}});
    case GateKind::CCZ:
      m = Matrix::Identity(8, 8);
      m(7, 7) = -1.0;
      return m;
    case GateKind::CSWAP:
      return permutation(8, {{5, 6}});
    case GateKind::IToffoli:
      m = Matrix::Identity(8, 8);
      m(6, 6) = 0.0;
      m(7, 7) = 0.0;
      m(6, 7) = i;
      m(7, 6) = i;
      return m;
    case GateKind::Enc:
    case GateKind::EncDg:
      throw std::invalid_argument("ENC relocates qubits and has no qubit-level matrix");
  }
  throw std::logic_error("unhandled gate kind");
}

int encode_level(int q0, int q1) {
  if ((q0 != 0 && q0 != 1) || (q1 != 0 && q1 != 1)) {
    throw std::invalid_argument("encode_level expects bits");
  }
  return 2 * q0 + q1;
}

std::pair<int, int> decode_level(int level) {
  if (level < 0 || level > 3) {
    throw std::invalid_argument("decode_level expects a level in 0..3");
  }
  return {level >> 1, level & 1};
}

Matrix lift(const Matrix& u, const std::vector<Radix>& radices, const SlotAssignment& assignment) {
  const int k = static_cast<int>(assignment.size());
  if (k > 4) {
    throw std::invalid_argument("lift supports at most four logical operands");
  }
  if (u.rows() != u.cols() || u.rows() != (Eigen::Index{1} << k)) {
    throw std::invalid_argument("lift: unitary dimension does not match assignment size");
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& ref : assignment) {
    if (ref.position < 0 || ref.position >= static_cast<int>(radices.size())) {
      throw std::invalid_argument("lift: operand position out of range");
    }
    if (ref.slot < 0 || ref.slot >= radices[ref.position].slots()) {
      throw std::invalid_argument("lift: slot index invalid for the operand radix");
    }
    if (!seen.insert({ref.position, ref.slot}).second) {
      throw std::invalid_argument("lift: duplicate slot in assignment");
    }
  }

  // Bit offset of each (position, slot) inside the flattened index; radix-4
  // positions contribute two bits with slot 0 as the high one.
  const int n_pos = static_cast<int>(radices.size());
  std::vector<int> pos_shift(n_pos);
  int shift = 0;
  for (int p = n_pos - 1; p >= 0; --p) {
    pos_shift[p] = shift;
    shift += radices[p].dim() == 4 ? 2 : 1;
  }
  const auto bit_of = [&](const SlotRef& ref) {
    const int width = radices[ref.position].dim() == 4 ? 2 : 1;
    return pos_shift[ref.position] + (width - 1 - ref.slot);
  };

  const Eigen::Index dim = Eigen::Index{1} << shift;
  std::size_t assigned_mask = 0;
  for (const auto& ref : assignment) {
    assigned_mask |= std::size_t{1} << bit_of(ref);
  }
  const auto logical_index = [&](std::size_t phys) {
    std::size_t l = 0;
    for (int q = 0; q < k; ++q) {
      l = (l << 1) | ((phys >> bit_of(assignment[q])) & 1U);
    }
    return static_cast<Eigen::Index>(l);
  };

  Matrix out = Matrix::Zero(dim, dim);
  for (Eigen::Index r = 0; r < dim; ++r) {
    const auto ru = static_cast<std::size_t>(r);
    const std::size_t spectator = ru & ~assigned_mask;
    const Eigen::Index lr = logical_index(ru);
    for (Eigen::Index lc = 0; lc < (Eigen::Index{1} << k); ++lc) {
      std::size_t c = spectator;
      for (int q = 0; q < k; ++q) {
        if ((static_cast<std::size_t>(lc) >> (k - 1 - q)) & 1U) {
          c |= std::size_t{1} << bit_of(assignment[q]);
        }
      }
      out(r, static_cast<Eigen::Index>(c)) = u(lr, lc);
    }
  }
  return out;
}

Matrix enc_unitary() {
  // index = 4 * level_A + level_B
  return permutation(16, {{4, 2}, {5, 3}});
}

std::string_view class_name(GateClass cls) {
  switch (cls) {
    case GateClass::BareSingle:
      return "bare_single";
    case GateClass::Internal:
      return "internal";
    case GateClass::QubitOnly:
      return "qubit_only";
    case GateClass::MixedRadix:
      return "mixed_radix";
    case GateClass::FullQuquart:
      return "full_ququart";
  }
  throw std::logic_error("unhandled gate class");
}

GateClass class_from_name(std::string_view name) {
  for (auto cls : {GateClass::BareSingle, GateClass::Internal, GateClass::QubitOnly, GateClass::MixedRadix,
                   GateClass::FullQuquart}) {
    if (class_name(cls) == name) {
      return cls;
    }
  }
  throw std::invalid_argument("unknown gate class '" + std::string(name) + "'");
}

namespace {

GateKind base_kind(std::string_view base) {
  static const std::map<std::string_view, GateKind, std::less<>> kBases{
      {"U", GateKind::U},         {"CX", GateKind::CX},       {"CZ", GateKind::CZ},
      {"CSdg", GateKind::CSdg},   {"SWAP", GateKind::SWAP},   {"CCX", GateKind::CCX},
      {"CCZ", GateKind::CCZ},     {"CSWAP", GateKind::CSWAP}, {"iToffoli", GateKind::IToffoli},
      {"ENC", GateKind::Enc},     {"ENCdg", GateKind::EncDg},
  };
  const auto it = kBases.find(base);
  if (it == kBases.end()) {
    throw UnknownGateError(base);
  }
  return it->second;
}

std::string canonical_alias(std::string_view name) {
  std::string s(name);
  const std::string dagger = "\xE2\x80\xA0";  // U+2020
  for (std::size_t pos = s.find(dagger); pos != std::string::npos; pos = s.find(dagger)) {
    s.replace(pos, dagger.size(), "dg");
  }
  return s;
}

}  // namespace

GateShape parse_gate_name(std::string_view raw) {
  const std::string name = canonical_alias(raw);
  GateShape shape;

  if (name == "ENC" || name == "ENCdg") {
    shape.base = name == "ENC" ? GateKind::Enc : GateKind::EncDg;
    shape.radices = {Radix::qubit(), Radix::ququart()};
    shape.assignment = {{0, 0}, {1, 0}};
    return shape;
  }

  if (const auto under = name.find('_'); under != std::string::npos) {
    shape.base = base_kind(std::string_view(name).substr(0, under));
    const std::string count = name.substr(under + 1);
    if (count.size() != 1 || !std::isdigit(static_cast<unsigned char>(count[0]))) {
      throw UnknownGateError(name);
    }
    const int n = count[0] - '0';
    if (n != arity(shape.base)) {
      throw UnknownGateError(name);
    }
    for (int p = 0; p < n; ++p) {
      shape.radices.push_back(Radix::qubit());
      shape.assignment.push_back({p, 0});
    }
    return shape;
  }

  const auto caret = name.find('^');
  shape.base = base_kind(std::string_view(name).substr(0, caret));
  if (caret == std::string::npos) {
    if (shape.base != GateKind::U) {
      throw UnknownGateError(name);
    }
    shape.radices = {Radix::qubit()};
    shape.assignment = {{0, 0}};
    return shape;
  }

  std::string sup = name.substr(caret + 1);
  if (!sup.empty() && sup.front() == '{') {
    if (sup.back() != '}') {
      throw UnknownGateError(name);
    }
    sup = sup.substr(1, sup.size() - 2);
  }
  if (sup.empty()) {
    throw UnknownGateError(name);
  }
  const int n_ops = arity(shape.base);

  if (shape.base == GateKind::U) {
    shape.radices = {Radix::ququart()};
    if (sup == "0" || sup == "1") {
      shape.assignment = {{0, sup[0] - '0'}};
    } else if (sup == "0,1") {
      shape.assignment = {{0, 0}, {0, 1}};
    } else {
      throw UnknownGateError(name);
    }
    return shape;
  }

  if (sup == "in") {
    if (shape.base != GateKind::SWAP) {
      throw UnknownGateError(name);
    }
    shape.radices = {Radix::ququart()};
    shape.assignment = {{0, 0}, {0, 1}};
    return shape;
  }

  const auto digit = [&](char c) {
    if (c != '0' && c != '1') {
      throw UnknownGateError(name);
    }
    return c - '0';
  };

  if (sup.size() == 1 && n_ops == 2) {
    // Internal two-qubit gate; the superscript names the target slot.
    if (shape.base != GateKind::CX) {
      throw UnknownGateError(name);
    }
    const int target = digit(sup[0]);
    shape.radices = {Radix::ququart()};
    shape.assignment = {{0, 1 - target}, {0, target}};
    return shape;
  }

  if (sup.find(',') != std::string::npos) {
    int position = 0;
    std::size_t start = 0;
    while (start <= sup.size()) {
      const auto comma = sup.find(',', start);
      const std::string group = sup.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
      if (group.empty()) {
        throw UnknownGateError(name);
      }
      shape.radices.push_back(Radix::ququart());
      for (char c : group) {
        shape.assignment.push_back({position, digit(c)});
      }
      ++position;
      if (comma == std::string::npos) {
        break;
      }
      start = comma + 1;
    }
  } else if (sup.find('q') != std::string::npos) {
    int ququart_position = -1;
    for (char c : sup) {
      if (c == 'q') {
        shape.radices.push_back(Radix::qubit());
        shape.assignment.push_back({static_cast<int>(shape.radices.size()) - 1, 0});
      } else {
        if (ququart_position < 0) {
          shape.radices.push_back(Radix::ququart());
          ququart_position = static_cast<int>(shape.radices.size()) - 1;
        }
        shape.assignment.push_back({ququart_position, digit(c)});
      }
    }
  } else if (n_ops == 2 && sup.size() == 2) {
    for (int p = 0; p < 2; ++p) {
      shape.radices.push_back(Radix::ququart());
      shape.assignment.push_back({p, digit(sup[p])});
    }
  } else {
    throw UnknownGateError(name);
  }

  if (static_cast<int>(shape.assignment.size()) != n_ops) {
    throw UnknownGateError(name);
  }
  std::set<std::pair<int, int>> seen;
  for (const auto& ref : shape.assignment) {
    if (!seen.insert({ref.position, ref.slot}).second) {
      throw UnknownGateError(name);
    }
  }
  return shape;
}

bool GateSpec::touches_ququart() const {
  return std::any_of(radices.begin(), radices.end(), [](Radix r) { return r == Radix::ququart(); });
}

UnknownGateError::UnknownGateError(std::string_view name)
    : std::invalid_argument("unknown gate '" + std::string(name) + "'") {}

namespace {

struct TableEntry {
  std::string_view name;
  double duration_ns;
};

// Pulse durations in nanoseconds.
constexpr std::array<TableEntry, 53> kDurations{{
    {"U", 35},           {"U^0", 87},         {"U^1", 66},         {"U^{0,1}", 86},
    {"CX^0", 83},        {"CX^1", 84},        {"SWAP^in", 78},

    {"CX_2", 251},       {"CZ_2", 236},       {"CSdg_2", 126},     {"SWAP_2", 504},
    {"iToffoli_3", 912},

    {"CX^{0q}", 560},    {"CX^{1q}", 632},    {"CX^{q0}", 880},    {"CX^{q1}", 812},
    {"CZ^{q0}", 384},    {"CZ^{q1}", 404},    {"SWAP^{q0}", 680},  {"SWAP^{q1}", 792},
    {"ENC", 608},        {"ENCdg", 608},

    {"CX^{00}", 544},    {"CX^{01}", 544},    {"CX^{10}", 700},    {"CX^{11}", 700},
    {"CZ^{00}", 392},    {"CZ^{01}", 488},    {"CZ^{11}", 776},    {"SWAP^{00}", 916},
    {"SWAP^{01}", 892},  {"SWAP^{11}", 964},

    {"CCX^{q01}", 619},  {"CCX^{1q0}", 697},  {"CCX^{01q}", 412},  {"CCZ^{01q}", 264},
    {"CSWAP^{01q}", 684}, {"CSWAP^{10q}", 762}, {"CSWAP^{q01}", 444},

    {"CCX^{01,0}", 536}, {"CCX^{01,1}", 552}, {"CCX^{0,01}", 785}, {"CCX^{0,10}", 785},
    {"CCX^{1,10}", 785}, {"CCX^{1,01}", 680}, {"CCZ^{01,0}", 232}, {"CCZ^{01,1}", 310},
    {"CSWAP^{01,0}", 680}, {"CSWAP^{01,1}", 744}, {"CSWAP^{10,0}", 758}, {"CSWAP^{10,1}", 822},
    {"CSWAP^{0,01}", 510}, {"CSWAP^{1,01}", 432},
}};

constexpr double kSingleDeviceFidelity = 0.999;
constexpr double kMultiDeviceFidelity = 0.99;

GateClass classify(const std::vector<Radix>& radices) {
  const bool any4 = std::any_of(radices.begin(), radices.end(), [](Radix r) { return r.dim() == 4; });
  const bool all4 = std::all_of(radices.begin(), radices.end(), [](Radix r) { return r.dim() == 4; });
  if (radices.size() == 1) {
    return any4 ? GateClass::Internal : GateClass::BareSingle;
  }
  if (!any4) {
    return GateClass::QubitOnly;
  }
  return all4 ? GateClass::FullQuquart : GateClass::MixedRadix;
}

void check_fidelity(double f) {
  if (!(f > 0.0 && f <= 1.0)) {
    throw std::invalid_argument("fidelity must lie in (0, 1]");
  }
}

}  // namespace

GateLibrary::GateLibrary() {
  gates_.reserve(kDurations.size());
  for (const auto& entry : kDurations) {
    GateShape shape = parse_gate_name(entry.name);
    GateSpec spec;
    spec.name = std::string(entry.name);
    spec.base = shape.base;
    spec.radices = std::move(shape.radices);
    spec.assignment = std::move(shape.assignment);
    spec.duration_ns = entry.duration_ns;
    spec.cls = classify(spec.radices);
    spec.fidelity = spec.radices.size() == 1 ? kSingleDeviceFidelity : kMultiDeviceFidelity;
    index_.emplace(spec.name, gates_.size());
    gates_.push_back(std::move(spec));
  }
}

const GateLibrary& GateLibrary::standard() {
  static const GateLibrary lib;
  return lib;
}

bool GateLibrary::contains(std::string_view name) const {
  return index_.find(canonical_alias(name)) != index_.end();
}

const GateSpec& GateLibrary::spec(std::string_view name) const {
  const auto it = index_.find(canonical_alias(name));
  if (it == index_.end()) {
    throw UnknownGateError(name);
  }
  return gates_[it->second];
}

Matrix GateLibrary::unitary_of(std::string_view name, const Mat2& payload) const {
  const GateSpec& g = spec(name);
  switch (g.base) {
    case GateKind::Enc:
    case GateKind::EncDg: {
      // Restriction of the 16-dimensional permutation to a bare donor.
      Matrix full = enc_unitary();
      Matrix m(8, 8);
      for (int r = 0; r < 8; ++r) {
        for (int c = 0; c < 8; ++c) {
          m(r, c) = full(r, c);
        }
      }
      return g.base == GateKind::Enc ? m : Matrix(m.adjoint());
    }
    case GateKind::U: {
      Matrix u = payload;
      if (g.assignment.size() == 2) {
        u = kron(payload, payload);
      }
      return lift(u, g.radices, g.assignment);
    }
    default:
      return lift(qubit_unitary(g.base), g.radices, g.assignment);
  }
}

GateLibrary& GateLibrary::set_fidelity(std::string_view name, double fidelity) {
  check_fidelity(fidelity);
  const auto it = index_.find(canonical_alias(name));
  if (it == index_.end()) {
    throw UnknownGateError(name);
  }
  gates_[it->second].fidelity = fidelity;
  return *this;
}

GateLibrary& GateLibrary::set_class_fidelity(GateClass cls, double fidelity) {
  check_fidelity(fidelity);
  for (auto& g : gates_) {
    if (g.cls == cls) {
      g.fidelity = fidelity;
    }
  }
  return *this;
}

GateLibrary& GateLibrary::scale_ququart_error(double factor) {
  if (!(factor >= 0.0)) {
    throw std::invalid_argument("error multiplier must be non-negative");
  }
  for (auto& g : gates_) {
    if (g.touches_ququart()) {
      // Floored at 1e-12.
      g.fidelity = std::max(1e-12, 1.0 - factor * (1.0 - g.fidelity));
    }
  }
  return *this;
}

nlohmann::json GateLibrary::to_json() const {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& g : gates_) {
    nlohmann::json radices = nlohmann::json::array();
    for (Radix r : g.radices) {
      radices.push_back(r.dim());
    }
    out.push_back({{"name", g.name},
                   {"radices", radices},
                   {"duration_ns", g.duration_ns},
                   {"fidelity", g.fidelity},
                   {"class", class_name(g.cls)}});
  }
  return out;
}

double duration_of(std::string_view name) { return GateLibrary::standard().duration_of(name); }
double fidelity_of(std::string_view name) { return GateLibrary::standard().fidelity_of(name); }
Matrix unitary_of(std::string_view name, const Mat2& payload) {
  return GateLibrary::standard().unitary_of(name, payload);
}

}  // namespace waltz
