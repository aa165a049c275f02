#include "waltz/topology.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace waltz {

Mesh::Mesh(int n_devices) : n_(n_devices) {
  if (n_devices < 1) {
    throw std::invalid_argument("mesh needs at least one device");
  }
  rows_ = 1;
  while (rows_ * rows_ < n_devices) {
    ++rows_;
  }
  cols_ = (n_devices + rows_ - 1) / rows_;

  adj_.assign(n_, {});
  for (int d = 0; d < n_; ++d) {
    const int c = d % cols_;
    if (c + 1 < cols_ && d + 1 < n_) {
      edges_.emplace_back(d, d + 1);
    }
    if (d + cols_ < n_) {
      edges_.emplace_back(d, d + cols_);
    }
  }
  for (auto [a, b] : edges_) {
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
  }

  hops_.assign(n_, std::vector<int>(n_, -1));
  for (int s = 0; s < n_; ++s) {
    std::queue<int> q;
    hops_[s][s] = 0;
    q.push(s);
    while (!q.empty()) {
      const int u = q.front();
      q.pop();
      for (int v : adj_[u]) {
        if (hops_[s][v] < 0) {
          hops_[s][v] = hops_[s][u] + 1;
          q.push(v);
        }
      }
    }
  }
}

bool Mesh::adjacent(int a, int b) const {
  const auto& list = adj_.at(a);
  return std::binary_search(list.begin(), list.end(), b);
}

int Mesh::hops(int a, int b) const { return hops_.at(a).at(b); }

int Mesh::center() const {
  int best = 0;
  int best_ecc = std::numeric_limits<int>::max();
  for (int d = 0; d < n_; ++d) {
    const int ecc = *std::max_element(hops_[d].begin(), hops_[d].end());
    if (ecc < best_ecc) {
      best_ecc = ecc;
      best = d;
    }
  }
  return best;
}

nlohmann::json Mesh::to_json() const {
  nlohmann::json edges = nlohmann::json::array();
  for (auto [a, b] : edges_) {
    edges.push_back({a, b});
  }
  return {{"rows", rows_}, {"cols", cols_}, {"n_devices", n_}, {"edges", edges}};
}

Mesh mesh_for(int n_devices) { return Mesh(n_devices); }

SwapChoice swap_gate_for(const InteractionGraph& graph, int a, int b) {
  const Slot sa = graph.node(a);
  const Slot sb = graph.node(b);
  if (sa.device == sb.device) {
    return {"SWAP^in", a, b};
  }
  const bool qa = graph.radix(sa.device).dim() == 4;
  const bool qb = graph.radix(sb.device).dim() == 4;
  if (!qa && !qb) {
    return {"SWAP_2", a, b};
  }
  if (qa != qb) {
    // Mixed-radix SWAPs list the bare qubit first.
    const int bare = qa ? b : a;
    const int quq = qa ? a : b;
    return {"SWAP^{q" + std::to_string(graph.node(quq).index) + "}", bare, quq};
  }
  // SWAP^{10} is SWAP^{01} with the devices exchanged.
  if (sa.index == 1 && sb.index == 0) {
    return {"SWAP^{01}", b, a};
  }
  return {"SWAP^{" + std::to_string(sa.index) + std::to_string(sb.index) + "}", a, b};
}

InteractionGraph::InteractionGraph(const Mesh& mesh, std::vector<Radix> radix_per_device, const GateLibrary& library)
    : mesh_(mesh), radix_(std::move(radix_per_device)) {
  if (static_cast<int>(radix_.size()) != mesh_.n_devices()) {
    throw std::invalid_argument("one radix per mesh device is required");
  }
  for (int d = 0; d < mesh_.n_devices(); ++d) {
    first_node_.push_back(static_cast<int>(nodes_.size()));
    for (int s = 0; s < radix_[d].slots(); ++s) {
      nodes_.push_back({d, s});
    }
  }
  adj_.assign(nodes_.size(), {});
  edge_index_.assign(nodes_.size(), std::vector<int>(nodes_.size(), -1));

  const auto add_edge = [&](int a, int b) {
    if (a > b) {
      std::swap(a, b);
    }
    const SwapChoice sw = swap_gate_for(*this, a, b);
    GraphEdge e{a, b, -std::log(library.fidelity_of(sw.gate)), sw.gate};
    edge_index_[a][b] = edge_index_[b][a] = static_cast<int>(edges_.size());
    edges_.push_back(e);
    adj_[a].push_back(b);
    adj_[b].push_back(a);
  };

  for (int d = 0; d < mesh_.n_devices(); ++d) {
    if (radix_[d].slots() == 2) {
      add_edge(node_id(d, 0), node_id(d, 1));
    }
  }
  for (auto [da, db] : mesh_.edges()) {
    for (int sa = 0; sa < radix_[da].slots(); ++sa) {
      for (int sb = 0; sb < radix_[db].slots(); ++sb) {
        add_edge(node_id(da, sa), node_id(db, sb));
      }
    }
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
  }
}

int InteractionGraph::node_id(Slot s) const {
  if (s.device < 0 || s.device >= mesh_.n_devices() || s.index < 0 || s.index >= radix_[s.device].slots()) {
    throw std::out_of_range("no such slot");
  }
  return first_node_[s.device] + s.index;
}

bool InteractionGraph::adjacent(int a, int b) const { return edge_index_.at(a).at(b) >= 0; }

const GraphEdge* InteractionGraph::edge(int a, int b) const {
  const int e = edge_index_.at(a).at(b);
  return e < 0 ? nullptr : &edges_[e];
}

nlohmann::json InteractionGraph::to_json() const {
  nlohmann::json nodes = nlohmann::json::array();
  for (const auto& n : nodes_) {
    nodes.push_back({n.device, n.index});
  }
  nlohmann::json edges = nlohmann::json::array();
  for (const auto& e : edges_) {
    edges.push_back({{"a", e.a}, {"b", e.b}, {"weight", e.weight}, {"swap", e.swap_gate}});
  }
  return {{"mesh", mesh_.to_json()}, {"nodes", nodes}, {"edges", edges}};
}

InteractionGraph expand(const Mesh& mesh, const std::vector<Radix>& radix_per_device, const GateLibrary& library) {
  return InteractionGraph(mesh, radix_per_device, library);
}

DistanceTable::DistanceTable(const InteractionGraph& graph) {
  const int n = graph.n_nodes();
  constexpr double inf = std::numeric_limits<double>::infinity();
  d_ = Eigen::MatrixXd::Constant(n, n, inf);
  for (int i = 0; i < n; ++i) {
    d_(i, i) = 0.0;
  }
  for (const auto& e : graph.edges()) {
    d_(e.a, e.b) = std::min(d_(e.a, e.b), e.weight);
    d_(e.b, e.a) = d_(e.a, e.b);
  }
  for (int k = 0; k < n; ++k) {
    for (int i = 0; i < n; ++i) {
      if (d_(i, k) == inf) {
        continue;
      }
      for (int j = 0; j < n; ++j) {
        const double via = d_(i, k) + d_(k, j);
        if (via < d_(i, j)) {
          d_(i, j) = via;
        }
      }
    }
  }
  if (!d_.allFinite()) {
    throw DisconnectedGraphError();
  }
}

DistanceTable distance_table(const InteractionGraph& graph) { return DistanceTable(graph); }

}  // namespace waltz
