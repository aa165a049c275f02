#include "waltz/compiler.hpp"

#include "waltz/circuit_io.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace waltz {

std::string_view encoding_name(Encoding e) {
  switch (e) {
    case Encoding::QubitOnly:
      return "qubit_only";
    case Encoding::MixedRadix:
      return "mixed_radix";
    case Encoding::FullQuquart:
      return "full_ququart";
  }
  throw std::logic_error("unhandled encoding");
}

std::string_view lowering_name(Lowering l) {
  switch (l) {
    case Lowering::Decompose8cx:
      return "decompose_8cx";
    case Lowering::IToffoli:
      return "itoffoli";
    case Lowering::NativeCcx:
      return "native_ccx";
    case Lowering::RetargetedCcx:
      return "retargeted_ccx";
    case Lowering::CczTransform:
      return "ccz_transform";
    case Lowering::NativeCswap:
      return "native_cswap";
  }
  throw std::logic_error("unhandled lowering");
}

namespace {

struct Preset {
  std::string_view name;
  Strategy strategy;
};

const std::vector<Preset>& presets() {
  using E = Encoding;
  using L = Lowering;
  using O = CswapOrientation;
  static const std::vector<Preset> kPresets{
      {"qubit-only-8cx", {E::QubitOnly, L::Decompose8cx, O::Default}},
      {"qubit-only-itoffoli", {E::QubitOnly, L::IToffoli, O::Default}},
      {"mixed-radix-ccx", {E::MixedRadix, L::NativeCcx, O::Default}},
      {"mixed-radix-retarget", {E::MixedRadix, L::RetargetedCcx, O::Default}},
      {"mixed-radix-ccz", {E::MixedRadix, L::CczTransform, O::Default}},
      {"mixed-radix-cswap", {E::MixedRadix, L::NativeCswap, O::Default}},
      {"full-ququart-ccx", {E::FullQuquart, L::NativeCcx, O::Default}},
      {"full-ququart-retarget", {E::FullQuquart, L::RetargetedCcx, O::Default}},
      {"full-ququart-ccz", {E::FullQuquart, L::CczTransform, O::Default}},
      {"full-ququart-cswap", {E::FullQuquart, L::NativeCswap, O::Default}},
      {"full-ququart-cswap-targets", {E::FullQuquart, L::NativeCswap, O::TargetsTogether}},
  };
  return kPresets;
}

}  // namespace

void Strategy::validate() const {
  const bool qubit_lowering = lowering == Lowering::Decompose8cx || lowering == Lowering::IToffoli;
  if ((encoding == Encoding::QubitOnly) != qubit_lowering) {
    throw std::invalid_argument("lowering " + std::string(lowering_name(lowering)) + " is not available for " +
                                std::string(encoding_name(encoding)));
  }
  if (cswap_orientation == CswapOrientation::TargetsTogether &&
      (encoding != Encoding::FullQuquart || lowering != Lowering::NativeCswap)) {
    throw std::invalid_argument("targets-together orientation needs full_ququart with native_cswap");
  }
}

std::string Strategy::name() const {
  for (const auto& p : presets()) {
    if (p.strategy == *this) {
      return std::string(p.name);
    }
  }
  std::string s = std::string(encoding_name(encoding)) + "/" + std::string(lowering_name(lowering));
  if (cswap_orientation == CswapOrientation::TargetsTogether) {
    s += "/targets_together";
  }
  return s;
}

int Strategy::device_count(int n_qubits) const {
  if (n_qubits <= 0) {
    return 1;
  }
  return encoding == Encoding::FullQuquart ? (n_qubits + 1) / 2 : n_qubits;
}

Radix Strategy::resting_radix() const {
  return encoding == Encoding::FullQuquart ? Radix::ququart() : Radix::qubit();
}

Radix Strategy::metric_radix() const {
  return encoding == Encoding::QubitOnly ? Radix::qubit() : Radix::ququart();
}

Strategy Strategy::preset(std::string_view name) {
  for (const auto& p : presets()) {
    if (p.name == name) {
      return p.strategy;
    }
  }
  throw UnknownConfigurationError("unknown strategy '" + std::string(name) + "'");
}

const std::vector<std::string>& Strategy::preset_names() {
  static const std::vector<std::string> kNames = [] {
    std::vector<std::string> out;
    for (const auto& p : presets()) {
      out.emplace_back(p.name);
    }
    return out;
  }();
  return kNames;
}

void WeightTable::add(int i, int j, double v) {
  w_(i, j) += v;
  w_(j, i) += v;
}

WeightTable interaction_weights(std::span<const LogicalGate> gates, int n_qubits) {
  WeightTable w(n_qubits);
  std::vector<int> last(n_qubits, 0);
  for (const auto& g : gates) {
    int m = 0;
    for (int q : g.qubits) {
      m = std::max(m, last[q]);
    }
    ++m;
    for (int q : g.qubits) {
      last[q] = m;
    }
    for (std::size_t a = 0; a < g.qubits.size(); ++a) {
      for (std::size_t b = a + 1; b < g.qubits.size(); ++b) {
        w.add(g.qubits[a], g.qubits[b], 1.0 / m);
      }
    }
  }
  return w;
}

WeightTable interaction_weights(const LogicalCircuit& circuit) {
  return interaction_weights(std::span<const LogicalGate>(circuit.gates()), circuit.n_qubits());
}

nlohmann::json Layout::to_json() const {
  nlohmann::json slots = nlohmann::json::array();
  for (const auto& s : qubit_slot) {
    slots.push_back({s.device, s.index});
  }
  return slots;
}

Mapping::Mapping(int n_qubits, int n_nodes) : node_(n_qubits, -1), occ_(n_nodes, -1) {
  if (n_qubits > n_nodes) {
    throw CapacityError("need " + std::to_string(n_qubits) + " slots, have " + std::to_string(n_nodes));
  }
}

void Mapping::place(int q, int node) {
  if (occ_.at(node) >= 0 || node_.at(q) >= 0) {
    throw std::logic_error("mapping conflict");
  }
  node_[q] = node;
  occ_[node] = q;
}

void Mapping::swap_nodes(int a, int b) {
  std::swap(occ_.at(a), occ_.at(b));
  if (occ_[a] >= 0) {
    node_[occ_[a]] = a;
  }
  if (occ_[b] >= 0) {
    node_[occ_[b]] = b;
  }
}

Layout Mapping::layout(const InteractionGraph& graph) const {
  Layout l;
  l.device_radix = graph.radices();
  for (int n : node_) {
    l.qubit_slot.push_back(graph.node(n));
  }
  return l;
}

namespace {

InteractionGraph uniform_graph(int n_devices, Radix r, const GateLibrary& library) {
  return expand(mesh_for(n_devices), std::vector<Radix>(n_devices, r), library);
}

}  // namespace

Architecture::Architecture(int n_qubits, const Strategy& strategy, const GateLibrary& library)
    : strategy_((strategy.validate(), strategy)),
      graph_(uniform_graph(strategy.device_count(n_qubits), strategy.resting_radix(), library)),
      metric_([&] {
        if (strategy.metric_radix() == strategy.resting_radix()) {
          return DistanceTable(graph_);
        }
        return DistanceTable(uniform_graph(strategy.device_count(n_qubits), strategy.metric_radix(), library));
      }()) {
  const InteractionGraph metric_graph = strategy.metric_radix() == strategy.resting_radix()
                                            ? graph_
                                            : uniform_graph(n_devices(), strategy.metric_radix(), library);
  for (int v = 0; v < graph_.n_nodes(); ++v) {
    metric_node_.push_back(metric_graph.node_id(graph_.node(v)));
  }
}

LogicalCircuit prepare(const LogicalCircuit& circuit, const Strategy& strategy) {
  strategy.validate();
  LogicalCircuit out(circuit.n_qubits());
  const bool native_cswap = strategy.lowering == Lowering::NativeCswap;
  const bool native_csdg = strategy.encoding == Encoding::QubitOnly;
  const auto controlled_phase = [&out](int a, int b, GateKind outer, GateKind inner) {
    out.add(outer, {a});
    out.add(outer, {b});
    out.add(GateKind::CX, {a, b});
    out.add(inner, {b});
    out.add(GateKind::CX, {a, b});
  };
  for (const auto& g : circuit.gates()) {
    const auto& q = g.qubits;
    switch (g.kind) {
      case GateKind::I:
        break;
      case GateKind::CSWAP:
        if (native_cswap) {
          out.add(g);
        } else {
          out.add(GateKind::CX, {q[2], q[1]});
          out.add(GateKind::CCX, {q[0], q[1], q[2]});
          out.add(GateKind::CX, {q[2], q[1]});
        }
        break;
      case GateKind::CSdg:
        if (native_csdg) {
          out.add(g);
        } else {
          controlled_phase(q[0], q[1], GateKind::Tdg, GateKind::T);
        }
        break;
      case GateKind::IToffoli:
        out.add(GateKind::CCX, {q[0], q[1], q[2]});
        controlled_phase(q[0], q[1], GateKind::T, GateKind::Tdg);
        break;
      default:
        out.add(g);
    }
  }
  return out;
}

Mapping initial_map(const LogicalCircuit& circuit, const Architecture& arch, const WeightTable& weights) {
  const InteractionGraph& graph = arch.graph();
  const int n = circuit.n_qubits();
  Mapping map(n, graph.n_nodes());
  if (n == 0) {
    return map;
  }

  int seed = 0;
  for (int q = 1; q < n; ++q) {
    if (weights.total(q) > weights.total(seed)) {
      seed = q;
    }
  }
  map.place(seed, graph.node_id(arch.mesh().center(), 0));
  std::vector<int> placed{seed};

  for (int step = 1; step < n; ++step) {
    int next = -1;
    double best_pull = -1.0;
    for (int q = 0; q < n; ++q) {
      if (map.placed(q)) {
        continue;
      }
      double pull = 0.0;
      for (int p : placed) {
        pull += weights(q, p);
      }
      if (pull > best_pull) {
        best_pull = pull;
        next = q;
      }
    }

    std::vector<int> candidates;
    for (int v = 0; v < graph.n_nodes(); ++v) {
      if (map.occupant(v) >= 0) {
        continue;
      }
      const auto& nb = graph.neighbors(v);
      if (std::any_of(nb.begin(), nb.end(), [&](int u) { return map.occupant(u) >= 0; })) {
        candidates.push_back(v);
      }
    }
    if (candidates.empty()) {
      for (int v = 0; v < graph.n_nodes(); ++v) {
        if (map.occupant(v) < 0) {
          candidates.push_back(v);
        }
      }
    }

    // Node ids are ordered by device then slot, so the first minimum wins ties.
    int best = -1;
    double best_cost = std::numeric_limits<double>::infinity();
    for (int v : candidates) {
      double cost = 0.0;
      for (int p : placed) {
        cost += weights(next, p) * arch.distance(v, map.node_of(p));
      }
      if (cost < best_cost - 1e-12) {
        best_cost = cost;
        best = v;
      }
    }
    map.place(next, best);
    placed.push_back(next);
  }
  return map;
}

namespace {

constexpr double kEps = 1e-12;

class Router {
public:
  Router(const Architecture& arch, const GateLibrary& lib, const LogicalCircuit& circuit, Mapping map)
      : arch_(arch), graph_(arch.graph()), lib_(lib), gates_(circuit.gates()), n_(circuit.n_qubits()),
        map_(std::move(map)) {
    out_.device_radix = graph_.radices();
  }

  RouteResult run() {
    for (current_ = 0; current_ < gates_.size(); ++current_) {
      const LogicalGate& g = gates_[current_];
      if (g.qubits.size() >= 2) {
        bring_together(g);
      }
      lower(g);
    }
    return {std::move(out_), std::move(map_), swaps_};
  }

private:
  const Architecture& arch_;
  const InteractionGraph& graph_;
  const GateLibrary& lib_;
  const std::vector<LogicalGate>& gates_;
  int n_;
  Mapping map_;
  PhysicalCircuit out_;
  int swaps_ = 0;
  std::size_t current_ = 0;
  // Positions of qubits moved into a ququart by ENC until the matching ENCdg.
  std::map<int, Slot> encoded_;

  Encoding encoding() const { return arch_.strategy().encoding; }
  Lowering lowering() const { return arch_.strategy().lowering; }
  int node(int q) const { return map_.node_of(q); }
  int device(int q) const { return graph_.node(node(q)).device; }
  int slot(int q) const { return graph_.node(node(q)).index; }
  double dist(int a, int b) const { return arch_.distance(node(a), node(b)); }

  bool targets_together(const LogicalGate& g) const {
    return g.kind == GateKind::CSWAP && arch_.strategy().cswap_orientation == CswapOrientation::TargetsTogether;
  }

  // ---- adjacency requirements ------------------------------------------

  bool adjacent(int a, int b) const { return graph_.adjacent(node(a), node(b)); }

  /// Operand adjacent to both others, or -1.
  int middle(const LogicalGate& g) const {
    const auto& q = g.qubits;
    for (int i = 0; i < 3; ++i) {
      const int a = q[(i + 1) % 3];
      const int b = q[(i + 2) % 3];
      if (adjacent(q[i], a) && adjacent(q[i], b)) {
        return q[i];
      }
    }
    return -1;
  }

  bool satisfied(const LogicalGate& g) const {
    const auto& q = g.qubits;
    if (q.size() == 2) {
      return adjacent(q[0], q[1]);
    }
    if (encoding() != Encoding::FullQuquart) {
      return middle(g) >= 0;
    }
    const bool triangle = adjacent(q[0], q[1]) && adjacent(q[0], q[2]) && adjacent(q[1], q[2]);
    if (!triangle) {
      return false;
    }
    return !targets_together(g) || device(q[1]) == device(q[2]);
  }

  double progress_measure(const LogicalGate& g) const {
    const auto& q = g.qubits;
    double p = 0.0;
    for (std::size_t a = 0; a < q.size(); ++a) {
      for (std::size_t b = a + 1; b < q.size(); ++b) {
        p += dist(q[a], q[b]);
      }
    }
    if (targets_together(g)) {
      p += dist(q[1], q[2]);
    }
    return p;
  }

  // ---- routing ---------------------------------------------------------

  /// Change in weighted distance when the contents of nodes u and v swap.
  double disruption(const WeightTable& w, int u, int v) const {
    const int a = map_.occupant(u);
    const int b = map_.occupant(v);
    double cost = 0.0;
    for (int k = 0; k < n_; ++k) {
      if (k == a || k == b) {
        continue;
      }
      const int nk = node(k);
      if (a >= 0) {
        cost += w(a, k) * (arch_.distance(v, nk) - arch_.distance(u, nk));
      }
      if (b >= 0) {
        cost += w(b, k) * (arch_.distance(u, nk) - arch_.distance(v, nk));
      }
    }
    return cost;
  }

  void bring_together(const LogicalGate& g) {
    if (satisfied(g)) {
      return;
    }
    const WeightTable w =
        interaction_weights(std::span<const LogicalGate>(gates_).subspan(current_), n_);
    while (!satisfied(g)) {
      const double before = progress_measure(g);
      struct Candidate {
        double cost;
        double gain;
        int qubit;
        int to;
      };
      std::optional<Candidate> best;
      std::vector<int> ops = g.qubits;
      std::sort(ops.begin(), ops.end());
      for (int q : ops) {
        const int u = node(q);
        for (int v : graph_.neighbors(u)) {
          map_.swap_nodes(u, v);
          const double after = progress_measure(g);
          map_.swap_nodes(u, v);
          const double gain = before - after;
          if (gain <= kEps) {
            continue;
          }
          const Candidate c{disruption(w, u, v), gain, q, v};
          if (!best || c.cost < best->cost - kEps ||
              (std::abs(c.cost - best->cost) <= kEps && c.gain > best->gain + kEps)) {
            best = c;
          }
        }
      }
      if (!best) {
        throw NoProgressError("no improving SWAP for gate " + std::to_string(current_));
      }
      swap(node(best->qubit), best->to);
    }
  }

  // ---- emission --------------------------------------------------------

  void emit(const std::string& name, std::vector<int> devices, std::vector<int> qubits,
            std::optional<LogicalGate> op = std::nullopt) {
    const GateSpec& spec = lib_.spec(name);
    if (static_cast<int>(devices.size()) != spec.device_count()) {
      throw std::logic_error("device count mismatch for " + name);
    }
    for (std::size_t i = 1; i < devices.size(); ++i) {
      for (std::size_t j = 0; j < i; ++j) {
        if (devices[i] == devices[j] || !arch_.mesh().adjacent(devices[i], devices[j])) {
          // Three-device gates only need a line: the last operand sits in the middle.
          const bool line_ok = devices.size() == 3 && devices[i] != devices[j] &&
                               arch_.mesh().adjacent(devices[i], devices[2]) &&
                               arch_.mesh().adjacent(devices[j], devices[2]);
          if (!line_ok) {
            throw std::logic_error("instruction " + name + " spans non-adjacent devices");
          }
        }
      }
    }
    PhysicalInstruction inst;
    inst.gate = spec.name;
    inst.devices = std::move(devices);
    inst.slots = spec.assignment;
    inst.qubits = std::move(qubits);
    inst.duration_ns = spec.duration_ns;
    inst.op = std::move(op);
    out_.instructions.push_back(std::move(inst));
  }

  void emit_swap(int u, int v) {
    const SwapChoice sw = swap_gate_for(graph_, u, v);
    const int da = graph_.node(sw.first).device;
    const int db = graph_.node(sw.second).device;
    std::vector<int> devices{da, db};
    if (da == db) {
      devices.pop_back();
    }
    emit(sw.gate, devices, {map_.occupant(sw.first), map_.occupant(sw.second)});
  }

  void swap(int u, int v) {
    emit_swap(u, v);
    map_.swap_nodes(u, v);
    ++swaps_;
  }

  void single(int q, GateKind kind, const std::vector<double>& params = {}) {
    LogicalGate op{kind, {q}, params};
    if (const auto it = encoded_.find(q); it != encoded_.end()) {
      emit("U^" + std::to_string(it->second.index), {it->second.device}, {q}, op);
    } else if (graph_.radix(device(q)).dim() == 4) {
      emit("U^" + std::to_string(slot(q)), {device(q)}, {q}, op);
    } else {
      emit("U", {device(q)}, {q}, op);
    }
  }

  void h(int q) { single(q, GateKind::H); }

  // ---- two-qubit gates -------------------------------------------------

  static std::string digits(int a, int b) { return std::to_string(a) + std::to_string(b); }

  void cx(int c, int t) {
    if (encoding() != Encoding::FullQuquart) {
      emit("CX_2", {device(c), device(t)}, {c, t});
    } else if (device(c) == device(t)) {
      emit("CX^" + std::to_string(slot(t)), {device(c)}, {c, t});
    } else {
      emit("CX^{" + digits(slot(c), slot(t)) + "}", {device(c), device(t)}, {c, t});
    }
  }

  void cz(int a, int b) {
    if (encoding() != Encoding::FullQuquart) {
      emit("CZ_2", {device(a), device(b)}, {a, b});
    } else if (device(a) == device(b)) {
      h(b);
      cx(a, b);
      h(b);
    } else {
      if (slot(a) == 1 && slot(b) == 0) {
        std::swap(a, b);
      }
      emit("CZ^{" + digits(slot(a), slot(b)) + "}", {device(a), device(b)}, {a, b});
    }
  }

  void lower_two(const LogicalGate& g) {
    const int a = g.qubits[0];
    const int b = g.qubits[1];
    switch (g.kind) {
      case GateKind::CX:
        cx(a, b);
        break;
      case GateKind::CZ:
        cz(a, b);
        break;
      case GateKind::CSdg:
        if (encoding() != Encoding::QubitOnly) {
          throw std::logic_error("CSdg should have been rewritten");
        }
        emit("CSdg_2", {device(a), device(b)}, {a, b});
        break;
      case GateKind::SWAP: {
        emit_swap(node(a), node(b));
        break;
      }
      default:
        throw UnknownConfigurationError("no two-qubit lowering for " + std::string(kind_name(g.kind)));
    }
  }

  // ---- qubit-only three-qubit gates ------------------------------------

  /// CCZ on the line a - b - c with b in the middle, eight CX.
  void ccz_8cx(int a, int b, int c) {
    single(a, GateKind::T);
    single(b, GateKind::T);
    single(c, GateKind::T);
    cx(a, b);
    single(b, GateKind::Tdg);
    cx(b, c);
    single(c, GateKind::T);
    cx(a, b);
    cx(b, c);
    single(c, GateKind::Tdg);
    cx(a, b);
    cx(b, c);
    single(c, GateKind::Tdg);
    cx(a, b);
    cx(b, c);
  }

  /// iToffoli with controls x, y on the line ends and target m in the middle,
  /// then a SWAP so that the CS-dagger correction acts on adjacent controls.
  void itoffoli(int x, int y, int m) {
    emit("iToffoli_3", {device(x), device(y), device(m)}, {x, y, m});
    const WeightTable w =
        interaction_weights(std::span<const LogicalGate>(gates_).subspan(current_ + 1), n_);
    const double cx_cost = disruption(w, node(m), node(x));
    const double cy_cost = disruption(w, node(m), node(y));
    const int partner = cy_cost < cx_cost - kEps ? y : (cx_cost < cy_cost - kEps ? x : std::min(x, y));
    swap(node(m), node(partner));
    emit("CSdg_2", {device(x), device(y)}, {x, y});
  }

  void lower_qubit_only(const LogicalGate& g) {
    const int mid = middle(g);
    const auto& q = g.qubits;
    std::vector<int> ends;
    for (int x : q) {
      if (x != mid) {
        ends.push_back(x);
      }
    }
    const bool eight = lowering() == Lowering::Decompose8cx;
    if (g.kind == GateKind::CCZ) {
      if (eight) {
        ccz_8cx(ends[0], mid, ends[1]);
      } else {
        h(mid);
        itoffoli(ends[0], ends[1], mid);
        h(mid);
      }
      return;
    }
    if (g.kind != GateKind::CCX) {
      throw UnknownConfigurationError("no qubit-only lowering for " + std::string(kind_name(g.kind)));
    }
    const int t = q[2];
    if (eight) {
      h(t);
      ccz_8cx(ends[0], mid, ends[1]);
      h(t);
      return;
    }
    if (mid == t) {
      itoffoli(q[0], q[1], t);
      return;
    }
    const int other = mid == q[0] ? q[1] : q[0];
    h(mid);
    h(t);
    itoffoli(other, t, mid);
    h(mid);
    h(t);
  }

  // ---- mixed-radix three-qubit gates -----------------------------------

  void lower_mixed(const LogicalGate& g) {
    const int mid = middle(g);
    const int hub = device(mid);
    const auto& q = g.qubits;
    const auto enc = [&](int donor) {
      emit("ENC", {device(donor), hub}, {donor, mid});
      encoded_[donor] = {hub, 0};
      encoded_[mid] = {hub, 1};
    };
    const auto dec = [&](int donor) {
      emit("ENCdg", {device(donor), hub}, {donor, mid});
      encoded_.clear();
    };
    const auto other_than = [&](int a, int b) {
      for (int x : q) {
        if (x != a && x != b) {
          return x;
        }
      }
      throw std::logic_error("operands are not distinct");
    };

    if (g.kind == GateKind::CCZ) {
      const int first = other_than(mid, -1);
      const int second = other_than(mid, first);
      const int donor = std::min(first, second);
      const int rest = std::max(first, second);
      enc(donor);
      emit("CCZ^{01q}", {hub, device(rest)}, {donor, mid, rest});
      dec(donor);
      return;
    }

    if (g.kind == GateKind::CSWAP) {
      const int c = q[0];
      if (mid != c) {
        const int donor = other_than(c, mid);
        enc(donor);
        emit("CSWAP^{q01}", {device(c), hub}, {c, donor, mid});
        dec(donor);
      } else {
        const int a = std::min(q[1], q[2]);
        const int b = std::max(q[1], q[2]);
        enc(a);
        emit("CSWAP^{10q}", {hub, device(b)}, {c, a, b});
        dec(a);
      }
      return;
    }

    if (g.kind != GateKind::CCX) {
      throw UnknownConfigurationError("no mixed-radix lowering for " + std::string(kind_name(g.kind)));
    }
    const int t = q[2];
    const int lo = std::min(q[0], q[1]);
    const int hi = std::max(q[0], q[1]);
    Lowering mode = lowering();
    if (mode == Lowering::NativeCswap) {
      mode = Lowering::CczTransform;
    }

    if (mode == Lowering::CczTransform) {
      const int donor = mid == t ? lo : other_than(mid, t);
      const int rest = other_than(mid, donor);
      enc(donor);
      h(t);
      emit("CCZ^{01q}", {hub, device(rest)}, {donor, mid, rest});
      h(t);
      dec(donor);
      return;
    }
    if (mid != t) {
      const int donor = other_than(mid, t);
      enc(donor);
      emit("CCX^{01q}", {hub, device(t)}, {donor, mid, t});
      dec(donor);
      return;
    }
    if (mode == Lowering::NativeCcx) {
      enc(lo);
      emit("CCX^{q01}", {device(hi), hub}, {hi, lo, t});
      dec(lo);
      return;
    }
    // Retarget: exchange the roles of the target and the far control.
    h(t);
    h(hi);
    enc(lo);
    emit("CCX^{01q}", {hub, device(hi)}, {lo, t, hi});
    dec(lo);
    h(t);
    h(hi);
  }

  // ---- full-ququart three-qubit gates ----------------------------------

  void lower_full(const LogicalGate& g) {
    const auto& q = g.qubits;
    int lone = -1;
    for (int i = 0; i < 3; ++i) {
      const int a = q[(i + 1) % 3];
      const int b = q[(i + 2) % 3];
      if (device(a) == device(b)) {
        lone = q[i];
      }
    }
    if (lone < 0) {
      throw UnknownConfigurationError("three-qubit operands do not share a device");
    }
    int pair0 = -1;
    int pair1 = -1;
    for (int x : q) {
      if (x != lone) {
        (slot(x) == 0 ? pair0 : pair1) = x;
      }
    }
    const int home = device(pair0);
    const int away = device(lone);
    const std::string s = std::to_string(slot(lone));

    const auto ccz = [&] { emit("CCZ^{01," + s + "}", {home, away}, {pair0, pair1, lone}); };

    if (g.kind == GateKind::CCZ) {
      ccz();
      return;
    }
    if (g.kind == GateKind::CSWAP) {
      const int c = q[0];
      if (lone == c) {
        emit("CSWAP^{" + s + ",01}", {away, home}, {c, pair0, pair1});
      } else {
        const int a = pair0 == c ? pair1 : pair0;
        emit("CSWAP^{" + std::string(slot(c) == 0 ? "01" : "10") + "," + s + "}", {home, away}, {c, a, lone});
      }
      return;
    }
    if (g.kind != GateKind::CCX) {
      throw UnknownConfigurationError("no full-ququart lowering for " + std::string(kind_name(g.kind)));
    }
    const int t = q[2];
    Lowering mode = lowering();
    if (mode == Lowering::NativeCswap) {
      mode = Lowering::CczTransform;
    }
    if (mode == Lowering::CczTransform) {
      h(t);
      ccz();
      h(t);
      return;
    }
    if (lone == t) {
      emit("CCX^{01," + s + "}", {home, away}, {pair0, pair1, t});
      return;
    }
    const int near = pair0 == t ? pair1 : pair0;
    if (mode == Lowering::NativeCcx) {
      emit("CCX^{" + s + "," + digits(slot(near), slot(t)) + "}", {away, home}, {lone, near, t});
      return;
    }
    h(lone);
    h(t);
    emit("CCX^{01," + s + "}", {home, away}, {pair0, pair1, lone});
    h(lone);
    h(t);
  }

  void lower(const LogicalGate& g) {
    switch (g.qubits.size()) {
      case 1:
        if (g.kind != GateKind::I) {
          single(g.qubits[0], g.kind, g.params);
        }
        return;
      case 2:
        lower_two(g);
        return;
      default:
        break;
    }
    switch (encoding()) {
      case Encoding::QubitOnly:
        lower_qubit_only(g);
        return;
      case Encoding::MixedRadix:
        lower_mixed(g);
        return;
      case Encoding::FullQuquart:
        lower_full(g);
        return;
    }
  }
};

}  // namespace

RouteResult route(const LogicalCircuit& prepared, const Mapping& mapping, const Architecture& arch,
                  const GateLibrary& library) {
  for (int q = 0; q < prepared.n_qubits(); ++q) {
    if (!mapping.placed(q)) {
      throw std::invalid_argument("mapping leaves qubit " + std::to_string(q) + " unplaced");
    }
  }
  Router router(arch, library, prepared, mapping);
  return router.run();
}

std::map<std::string, int> CompileResult::gate_counts() const {
  std::map<std::string, int> counts;
  for (const auto& inst : circuit.instructions) {
    ++counts[inst.gate];
  }
  return counts;
}

int CompileResult::multi_device_gate_count() const {
  return static_cast<int>(std::count_if(circuit.instructions.begin(), circuit.instructions.end(),
                                        [](const PhysicalInstruction& i) { return i.devices.size() >= 2; }));
}

nlohmann::json CompileResult::report() const {
  return {{"strategy", strategy.name()},
          {"n_qubits", n_qubits},
          {"n_devices", circuit.n_devices()},
          {"n_instructions", circuit.instructions.size()},
          {"multi_device_gates", multi_device_gate_count()},
          {"swap_count", swap_count},
          {"duration_ns", duration_ns()},
          {"gate_counts", gate_counts()},
          {"initial_mapping", initial.to_json()},
          {"final_mapping", final.to_json()}};
}

CompileResult compile(const LogicalCircuit& circuit, const Strategy& strategy, const GateLibrary& library) {
  const Architecture arch(circuit.n_qubits(), strategy, library);
  const LogicalCircuit prepared = prepare(circuit, strategy);
  const WeightTable weights = interaction_weights(prepared);
  const Mapping start = initial_map(prepared, arch, weights);
  RouteResult routed = route(prepared, start, arch, library);

  CompileResult r;
  r.strategy = strategy;
  r.n_qubits = circuit.n_qubits();
  r.initial = start.layout(arch.graph());
  r.final = routed.final_mapping.layout(arch.graph());
  r.circuit = std::move(routed.circuit);
  r.swap_count = routed.swap_count;
  r.schedule = asap_schedule(r.circuit);
  apply_schedule(r.circuit, r.schedule);
  return r;
}

std::string to_json_lines(const CompileResult& result) {
  return to_json_lines(result.circuit, {{"strategy", result.strategy.name()},
                                        {"n_qubits", result.n_qubits},
                                        {"initial_mapping", result.initial.to_json()},
                                        {"final_mapping", result.final.to_json()}});
}

}  // namespace waltz
