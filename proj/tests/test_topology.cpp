#include "waltz/topology.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace waltz;

TEST(Mesh, Shapes) {
  const Mesh m9 = mesh_for(9);
  EXPECT_EQ(m9.rows(), 3);
  EXPECT_EQ(m9.cols(), 3);
  const Mesh m12 = mesh_for(12);
  EXPECT_EQ(m12.rows(), 4);
  EXPECT_EQ(m12.cols(), 3);
  const Mesh m21 = mesh_for(21);
  EXPECT_EQ(m21.rows(), 5);
  EXPECT_EQ(m21.cols(), 5);
  EXPECT_EQ(m21.n_devices(), 21);
}

TEST(Mesh, NearestNeighbourEdges) {
  const Mesh m = mesh_for(9);
  EXPECT_EQ(m.edges().size(), 12U);
  EXPECT_TRUE(m.adjacent(4, 1));
  EXPECT_TRUE(m.adjacent(4, 5));
  EXPECT_FALSE(m.adjacent(0, 4));
  EXPECT_EQ(m.hops(0, 8), 4);
  EXPECT_EQ(m.center(), 4);
  EXPECT_EQ(m.neighbors(4).size(), 4U);
}

TEST(Mesh, RaggedRowDropsMissingSites) {
  const Mesh m = mesh_for(5);  // 3 x 2, last row holds one device
  EXPECT_EQ(m.rows(), 3);
  EXPECT_EQ(m.cols(), 2);
  EXPECT_EQ(m.edges().size(), 5U);
  EXPECT_TRUE(m.adjacent(2, 4));
  EXPECT_EQ(m.neighbors(4).size(), 1U);
}

TEST(InteractionGraph, TwoQuquartsFormAFourClique) {
  const InteractionGraph g = expand(mesh_for(2), {Radix::ququart(), Radix::ququart()});
  EXPECT_EQ(g.n_nodes(), 4);
  EXPECT_EQ(g.edges().size(), 6U);
}

TEST(InteractionGraph, QuquartAndQubitFormATriangle) {
  const InteractionGraph g = expand(mesh_for(2), {Radix::ququart(), Radix::qubit()});
  EXPECT_EQ(g.n_nodes(), 3);
  EXPECT_EQ(g.edges().size(), 3U);
}

TEST(InteractionGraph, IsolatedQubit) {
  const InteractionGraph g = expand(mesh_for(1), {Radix::qubit()});
  EXPECT_EQ(g.n_nodes(), 1);
  EXPECT_TRUE(g.edges().empty());
}

TEST(InteractionGraph, FullQuquartCountsMatchClosedForm) {
  for (int n : {4, 6, 9, 12}) {
    const Mesh m = mesh_for(n);
    const InteractionGraph g = expand(m, std::vector<Radix>(n, Radix::ququart()));
    EXPECT_EQ(g.n_nodes(), 2 * n);
    EXPECT_EQ(g.edges().size(), static_cast<std::size_t>(n) + 4 * m.edges().size());
  }
}

TEST(InteractionGraph, EdgesCarrySwapCosts) {
  const InteractionGraph g = expand(mesh_for(2), {Radix::ququart(), Radix::qubit()});
  const GraphEdge* in = g.edge(g.node_id(0, 0), g.node_id(0, 1));
  ASSERT_NE(in, nullptr);
  EXPECT_EQ(in->swap_gate, "SWAP^in");
  const GraphEdge* mixed = g.edge(g.node_id(0, 1), g.node_id(1, 0));
  ASSERT_NE(mixed, nullptr);
  EXPECT_EQ(mixed->swap_gate, "SWAP^{q1}");
  EXPECT_DOUBLE_EQ(mixed->weight, -std::log(0.99));
}

TEST(SwapGateFor, OrdersOperandsForTheGateName) {
  const InteractionGraph g = expand(mesh_for(2), {Radix::ququart(), Radix::ququart()});
  const SwapChoice s = swap_gate_for(g, g.node_id(0, 1), g.node_id(1, 0));
  EXPECT_EQ(s.gate, "SWAP^{01}");
  EXPECT_EQ(s.first, g.node_id(1, 0));
  EXPECT_EQ(s.second, g.node_id(0, 1));
  EXPECT_EQ(swap_gate_for(g, g.node_id(0, 1), g.node_id(1, 1)).gate, "SWAP^{11}");
}

TEST(DistanceTable, KnownDistances) {
  const InteractionGraph quq = expand(mesh_for(1), {Radix::ququart()});
  const DistanceTable dq = distance_table(quq);
  EXPECT_EQ(dq(0, 0), 0.0);
  EXPECT_DOUBLE_EQ(dq(0, 1), -std::log(0.999));

  const InteractionGraph line = expand(mesh_for(3), std::vector<Radix>(3, Radix::qubit()));
  const DistanceTable dl = distance_table(line);
  // 3 devices form a 2 x 2 mesh with one empty site: 0 - 1, 0 - 2.
  EXPECT_DOUBLE_EQ(dl(1, 2), 2 * -std::log(0.99));
}

TEST(DistanceTable, IsAMetric) {
  for (int n : {4, 7, 12, 25}) {
    for (Radix r : {Radix::qubit(), Radix::ququart()}) {
      const DistanceTable d = distance_table(expand(mesh_for(n), std::vector<Radix>(n, r)));
      const int k = d.size();
      for (int a = 0; a < k; ++a) {
        EXPECT_EQ(d(a, a), 0.0);
        for (int b = 0; b < k; ++b) {
          EXPECT_EQ(d(a, b), d(b, a));
          if (a != b) EXPECT_GT(d(a, b), 0.0);
          for (int c = 0; c < k; ++c) {
            ASSERT_LE(d(a, c), d(a, b) + d(b, c) + 1e-12);
          }
        }
      }
    }
  }
}
