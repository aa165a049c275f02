#include "reference.hpp"

#include "waltz/benchmarks.hpp"
#include "waltz/compiler.hpp"
#include "waltz/simulator.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace waltz;

namespace {

ref::State random_state(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> g;
  ref::State s(std::size_t{1} << n);
  double norm = 0.0;
  for (auto& a : s) {
    a = {g(rng), g(rng)};
    norm += std::norm(a);
  }
  for (auto& a : s) a /= std::sqrt(norm);
  return s;
}

Vector to_vector(const ref::State& s) {
  Vector v(static_cast<Eigen::Index>(s.size()));
  for (std::size_t i = 0; i < s.size(); ++i) v(static_cast<Eigen::Index>(i)) = s[i];
  return v;
}

Vector compiled_output(const CompileResult& r, const ref::State& input) {
  const auto dims = r.circuit.simulation_dims();
  MixedRadixState state = encode_state(to_vector(input), r.initial, dims);
  Rng rng(0);
  run_trajectory(r.circuit, r.schedule, state, NoiseConfig::zero_noise(), rng);
  return decode_state(state, r.final);
}

double worst_fidelity(const LogicalCircuit& c, const CompileResult& r, int n_inputs, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  double worst = 1.0;
  for (int i = 0; i < n_inputs; ++i) {
    const ref::State in = random_state(c.n_qubits(), rng);
    const Vector ideal = to_vector(ref::run(c, in));
    const Vector out = compiled_output(r, in);
    worst = std::min(worst, std::norm(ideal.dot(out)));
  }
  return worst;
}

std::vector<BenchmarkSpec> small_benchmarks() {
  std::vector<BenchmarkSpec> out;
  out.push_back({"cnu", 2, 1, 0, 0.5, 0});
  out.push_back({"cnu", 3, 1, 0, 0.5, 0});
  out.push_back({"cuccaro", 1, 1, 0, 0.5, 0});
  out.push_back({"cuccaro", 2, 1, 0, 0.5, 0});
  out.push_back({"qram", 1, 1, 0, 0.5, 0});
  out.push_back({"select", 2, 2, 0, 0.5, 3});
  out.push_back({"select", 3, 1, 0, 0.5, 4});
  out.push_back({"select", 3, 2, 0, 0.5, 5});
  out.push_back({"synthetic", 5, 1, 12, 0.3, 7});
  out.push_back({"synthetic", 6, 1, 14, 0.6, 8});
  return out;
}

LogicalCircuit mixed_gates() {
  LogicalCircuit c(5);
  c.add(GateKind::H, {0}).add(GateKind::CSWAP, {0, 3, 1}).add(GateKind::CCZ, {4, 2, 0});
  c.add(GateKind::RZ, {2}, {0.4}).add(GateKind::CSdg, {1, 4}).add(GateKind::IToffoli, {3, 0, 2});
  c.add(GateKind::CSWAP, {2, 4, 0}).add(GateKind::SWAP, {1, 3}).add(GateKind::CZ, {0, 4});
  c.add(GateKind::U3, {3}, {0.3, 1.1, -0.7}).add(GateKind::CCX, {1, 2, 4}).add(GateKind::Y, {2});
  return c;
}

}  // namespace

class Equivalence : public ::testing::TestWithParam<std::string> {};

TEST_P(Equivalence, EveryFamilyMatchesLogicalStatevector) {
  const Strategy strategy = Strategy::preset(GetParam());
  for (const auto& spec : small_benchmarks()) {
    const LogicalCircuit c = generate(spec);
    ASSERT_LE(c.n_qubits(), 6);
    const CompileResult r = compile(c, strategy);
    EXPECT_GE(worst_fidelity(c, r, 100, spec.size * 31 + 1), 1.0 - 1e-9)
        << spec.family << " size " << spec.size << " under " << GetParam();
  }
}

TEST_P(Equivalence, MixedGateSetMatches) {
  const LogicalCircuit c = mixed_gates();
  const CompileResult r = compile(c, Strategy::preset(GetParam()));
  EXPECT_GE(worst_fidelity(c, r, 20, 99), 1.0 - 1e-9) << GetParam();
}

INSTANTIATE_TEST_SUITE_P(AllPresets, Equivalence, ::testing::ValuesIn(Strategy::preset_names()),
                         [](const auto& info) {
                           std::string s = info.param;
                           for (auto& ch : s) {
                             if (ch == '-') ch = '_';
                           }
                           return s;
                         });

TEST(Strategy, PresetsRoundTripNames) {
  for (const auto& name : Strategy::preset_names()) {
    EXPECT_EQ(Strategy::preset(name).name(), name);
  }
  EXPECT_THROW((void)Strategy::preset("qubit-only-ccz"), UnknownConfigurationError);
}

TEST(Strategy, RejectsInadmissibleCombinations) {
  Strategy s;
  s.encoding = Encoding::QubitOnly;
  s.lowering = Lowering::CczTransform;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.encoding = Encoding::MixedRadix;
  s.lowering = Lowering::Decompose8cx;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.lowering = Lowering::NativeCswap;
  s.cswap_orientation = CswapOrientation::TargetsTogether;
  EXPECT_THROW(s.validate(), std::invalid_argument);
  s.encoding = Encoding::FullQuquart;
  EXPECT_NO_THROW(s.validate());
}

TEST(Strategy, DeviceCounts) {
  EXPECT_EQ(Strategy::preset("qubit-only-8cx").device_count(7), 7);
  EXPECT_EQ(Strategy::preset("mixed-radix-ccz").device_count(7), 7);
  EXPECT_EQ(Strategy::preset("full-ququart-ccz").device_count(7), 4);
  EXPECT_EQ(Strategy::preset("full-ququart-ccz").device_count(10), 5);
}

TEST(GateCount, QubitOnlyToffoliUsesEightCx) {
  LogicalCircuit c(3);
  c.add(GateKind::CCX, {0, 1, 2});
  const CompileResult r = compile(c, Strategy::preset("qubit-only-8cx"));
  const auto counts = r.gate_counts();
  EXPECT_EQ(r.swap_count, 0);
  EXPECT_EQ(r.multi_device_gate_count(), 8);
  EXPECT_EQ(counts.at("CX_2"), 8);
  EXPECT_LE(counts.at("U"), 14);
}

TEST(GateCount, MixedRadixCczUsesThreeTwoDeviceGates) {
  LogicalCircuit c(3);
  c.add(GateKind::CCX, {0, 1, 2});
  const CompileResult r = compile(c, Strategy::preset("mixed-radix-ccz"));
  EXPECT_EQ(r.multi_device_gate_count(), 3);
  EXPECT_EQ(r.gate_counts().at("ENC"), 1);
  EXPECT_EQ(r.gate_counts().at("ENCdg"), 1);
}

TEST(GateCount, FullQuquartToffoliIsOneGate) {
  LogicalCircuit c(3);
  c.add(GateKind::CCX, {0, 1, 2});
  const CompileResult r = compile(c, Strategy::preset("full-ququart-ccz"));
  EXPECT_EQ(r.multi_device_gate_count(), 1);
  EXPECT_EQ(r.circuit.n_devices(), 2);
}

TEST(Weights, InverseMomentSum) {
  LogicalCircuit c(3);
  c.add(GateKind::CX, {0, 1}).add(GateKind::CX, {1, 2}).add(GateKind::CX, {0, 1});
  const WeightTable w = interaction_weights(c);
  EXPECT_NEAR(w(0, 1), 1.0 + 1.0 / 3.0, 1e-15);
  EXPECT_NEAR(w(1, 2), 0.5, 1e-15);
  EXPECT_EQ(w(0, 2), 0.0);
  EXPECT_EQ(w(1, 0), w(0, 1));
}

TEST(Weights, ThreeQubitGateCountsAllPairs) {
  LogicalCircuit c(4);
  c.add(GateKind::CCX, {0, 1, 2}).add(GateKind::CX, {2, 3});
  const WeightTable w = interaction_weights(c);
  EXPECT_EQ(w(0, 1), 1.0);
  EXPECT_EQ(w(0, 2), 1.0);
  EXPECT_EQ(w(1, 2), 1.0);
  EXPECT_EQ(w(2, 3), 0.5);
}

TEST(InitialMap, HeaviestQubitSitsAtCenter) {
  LogicalCircuit c(5);
  c.add(GateKind::CX, {3, 0}).add(GateKind::CX, {3, 1}).add(GateKind::CX, {3, 2}).add(GateKind::CX, {3, 4});
  const Architecture arch(5, Strategy::preset("qubit-only-8cx"));
  const Mapping m = initial_map(c, arch, interaction_weights(c));
  EXPECT_EQ(arch.graph().node(m.node_of(3)).device, arch.mesh().center());
  for (int q = 0; q < 5; ++q) EXPECT_TRUE(m.placed(q));
}

TEST(Mapping, RejectsOverCapacity) {
  EXPECT_THROW(Mapping(5, 4), CapacityError);
  Mapping m(2, 3);
  m.place(0, 2);
  EXPECT_EQ(m.occupant(2), 0);
  EXPECT_THROW(m.place(1, 2), std::logic_error);
  m.place(1, 0);
  m.swap_nodes(0, 2);
  EXPECT_EQ(m.node_of(0), 0);
  EXPECT_EQ(m.node_of(1), 2);
}

TEST(Compile, IsDeterministic) {
  const LogicalCircuit c = generate({"synthetic", 6, 1, 20, 0.5, 3});
  for (const auto& name : Strategy::preset_names()) {
    const Strategy s = Strategy::preset(name);
    EXPECT_EQ(to_json_lines(compile(c, s)), to_json_lines(compile(c, s))) << name;
  }
}

TEST(Compile, RoutingAddsSwapsOnlyWhenNeeded) {
  LogicalCircuit c(9);
  for (int q = 1; q < 9; ++q) c.add(GateKind::CX, {0, q});
  const CompileResult qubit = compile(c, Strategy::preset("qubit-only-8cx"));
  EXPECT_GT(qubit.swap_count, 0);
  for (const auto& inst : qubit.circuit.instructions) {
    if (inst.devices.size() == 2) {
      EXPECT_TRUE(qubit.circuit.n_devices() == 9);
    }
  }
  EXPECT_GE(worst_fidelity(c, qubit, 5, 1), 1.0 - 1e-9);
}

TEST(Compile, PhysicalGatesTouchAdjacentDevices) {
  const LogicalCircuit c = generate({"synthetic", 9, 1, 30, 0.5, 11});
  for (const auto& name : Strategy::preset_names()) {
    const CompileResult r = compile(c, Strategy::preset(name));
    const Mesh mesh = mesh_for(r.circuit.n_devices());
    for (const auto& inst : r.circuit.instructions) {
      for (std::size_t i = 1; i < inst.devices.size(); ++i) {
        const bool linked = mesh.adjacent(inst.devices[i - 1], inst.devices[i]) ||
                            mesh.adjacent(inst.devices.back(), inst.devices[i - 1]);
        EXPECT_TRUE(linked) << name << " " << inst.gate;
      }
    }
  }
}

TEST(Compile, QubitOnlyNeverEmitsQuquartGates) {
  const auto& lib = GateLibrary::standard();
  for (const auto& spec : small_benchmarks()) {
    const CompileResult r = compile(generate(spec), Strategy::preset("qubit-only-8cx"));
    for (const auto& inst : r.circuit.instructions) {
      EXPECT_FALSE(lib.spec(inst.gate).touches_ququart()) << inst.gate;
    }
  }
}

TEST(Compile, MixedRadixUsesQuquartsOnlyWhileEncoded) {
  const auto& lib = GateLibrary::standard();
  for (const auto& name : {"mixed-radix-ccz", "mixed-radix-ccx", "mixed-radix-cswap", "mixed-radix-retarget"}) {
    for (const auto& spec : small_benchmarks()) {
      const CompileResult r = compile(generate(spec), Strategy::preset(name));
      std::vector<bool> encoded(r.circuit.n_devices(), false);
      for (const auto& inst : r.circuit.instructions) {
        const GateSpec& g = lib.spec(inst.gate);
        if (inst.gate == "ENC") {
          EXPECT_FALSE(encoded[inst.devices[1]]);
          encoded[inst.devices[1]] = true;
          continue;
        }
        if (inst.gate == "ENCdg") {
          EXPECT_TRUE(encoded[inst.devices[1]]);
          encoded[inst.devices[1]] = false;
          continue;
        }
        for (std::size_t i = 0; i < inst.devices.size(); ++i) {
          if (g.radices[i].dim() == 4) EXPECT_TRUE(encoded[inst.devices[i]]) << name << " " << inst.gate;
        }
      }
      for (bool e : encoded) EXPECT_FALSE(e) << name;
    }
  }
}
