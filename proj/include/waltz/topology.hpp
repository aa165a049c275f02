#pragma once

#include "waltz/gate_library.hpp"

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include <stdexcept>
#include <vector>

namespace waltz {

/// Row-major nearest-neighbour grid; the last row may be short.
class Mesh {
public:
  explicit Mesh(int n_devices);

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return cols_; }
  [[nodiscard]] int n_devices() const { return n_; }
  [[nodiscard]] int row_of(int d) const { return d / cols_; }
  [[nodiscard]] int col_of(int d) const { return d % cols_; }
  [[nodiscard]] const std::vector<int>& neighbors(int d) const { return adj_.at(d); }
  [[nodiscard]] bool adjacent(int a, int b) const;
  [[nodiscard]] const std::vector<std::pair<int, int>>& edges() const { return edges_; }

  /// Hop distance between devices.
  [[nodiscard]] int hops(int a, int b) const;
  /// Device with the smallest eccentricity; ties go to the lowest id.
  [[nodiscard]] int center() const;

  [[nodiscard]] nlohmann::json to_json() const;

private:
  int n_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<std::vector<int>> hops_;
};

[[nodiscard]] Mesh mesh_for(int n_devices);

struct GraphEdge {
  int a = 0;  // node ids, a < b
  int b = 0;
  double weight = 0.0;
  std::string swap_gate;
};

/// Slot-level connectivity: one node per (device, slot).
class InteractionGraph {
public:
  InteractionGraph(const Mesh& mesh, std::vector<Radix> radix_per_device,
                   const GateLibrary& library = GateLibrary::standard());

  [[nodiscard]] const Mesh& mesh() const { return mesh_; }
  [[nodiscard]] int n_nodes() const { return static_cast<int>(nodes_.size()); }
  [[nodiscard]] const Slot& node(int id) const { return nodes_.at(id); }
  [[nodiscard]] int node_id(Slot s) const;
  [[nodiscard]] int node_id(int device, int slot) const { return node_id(Slot{device, slot}); }
  [[nodiscard]] Radix radix(int device) const { return radix_.at(device); }
  [[nodiscard]] const std::vector<Radix>& radices() const { return radix_; }
  [[nodiscard]] const std::vector<GraphEdge>& edges() const { return edges_; }
  [[nodiscard]] const std::vector<int>& neighbors(int node) const { return adj_.at(node); }
  [[nodiscard]] bool adjacent(int a, int b) const;
  /// Edge between two nodes, or nullptr.
  [[nodiscard]] const GraphEdge* edge(int a, int b) const;

  [[nodiscard]] nlohmann::json to_json() const;

private:
  Mesh mesh_;
  std::vector<Radix> radix_;
  std::vector<Slot> nodes_;
  std::vector<int> first_node_;
  std::vector<GraphEdge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::vector<int>> edge_index_;
};

[[nodiscard]] InteractionGraph expand(const Mesh& mesh, const std::vector<Radix>& radix_per_device,
                                      const GateLibrary& library = GateLibrary::standard());

/// SWAP gate name that exchanges the contents of two adjacent slots, with
/// the device operand order it expects.
struct SwapChoice {
  std::string gate;
  int first = 0;  // node placed at device operand 0
  int second = 0;
};
[[nodiscard]] SwapChoice swap_gate_for(const InteractionGraph& graph, int a, int b);

class DisconnectedGraphError : public std::runtime_error {
public:
  DisconnectedGraphError() : std::runtime_error("interaction graph is disconnected") {}
};

/// All-pairs shortest paths with edge weight -ln(F_swap).
class DistanceTable {
public:
  explicit DistanceTable(const InteractionGraph& graph);

  [[nodiscard]] double operator()(int u, int v) const { return d_(u, v); }
  [[nodiscard]] int size() const { return static_cast<int>(d_.rows()); }
  [[nodiscard]] const Eigen::MatrixXd& matrix() const { return d_; }

private:
  Eigen::MatrixXd d_;
};

[[nodiscard]] DistanceTable distance_table(const InteractionGraph& graph);

}  // namespace waltz
