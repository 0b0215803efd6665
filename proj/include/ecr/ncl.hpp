#pragma once

// Nondeterministic Constraint Logic over AND/OR constraint graphs: machines,
// orientations (optionally with neutral edges) and the configuration graph.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ecr {

enum class VertexKind { And, Or };

const char* to_string(VertexKind k);

struct NclVertex {
  std::string id;
  VertexKind kind = VertexKind::Or;
};

struct NclEdge {
  std::string id;
  std::size_t u = 0;
  std::size_t v = 0;
  int weight = 2;
};

/// Weighted multigraph of AND/OR vertices. Edge order is insertion order and
/// fixes the coordinate order of orientations.
class NclMachine {
 public:
  std::size_t add_vertex(std::string id, VertexKind kind);
  std::size_t add_edge(std::string id, std::size_t u, std::size_t v, int weight);

  const std::vector<NclVertex>& vertices() const { return vertices_; }
  const std::vector<NclEdge>& edges() const { return edges_; }
  std::size_t num_vertices() const { return vertices_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  std::optional<std::size_t> find_vertex(const std::string& id) const;
  std::optional<std::size_t> find_edge(const std::string& id) const;

  /// Incident edge indices of vertex v in edge order.
  std::vector<std::size_t> incident(std::size_t v) const;

 private:
  std::vector<NclVertex> vertices_;
  std::vector<NclEdge> edges_;
};

struct Violation {
  std::string vertex;  // empty for edge-level problems
  std::string message;
};

/// Every degree and weight-profile problem; empty means the machine is valid.
std::vector<Violation> validate_machine(const NclMachine& m);

/// Per-edge direction. Neutral edges count toward neither endpoint.
enum class Dir : std::uint8_t { ToU, ToV, Neutral };

using Orientation = std::vector<Dir>;

class NclError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

bool is_strict(const Orientation& o);

std::vector<int> in_weights(const NclMachine& m, const Orientation& o);

/// In-weight >= 2 at every vertex. Throws NclError on a size mismatch.
bool is_valid_configuration(const NclMachine& m, const Orientation& o);

/// Valid strict orientations differing from `o` in exactly one edge.
std::vector<Orientation> configuration_neighbors(const NclMachine& m, const Orientation& o);

/// Sequence of configurations, first and last included; size() - 1 flips.
using NclWitness = std::vector<Orientation>;

struct NclReachResult {
  bool reachable = false;
  NclWitness witness;  // shortest, when reachable
  std::uint64_t visited = 0;
};

NclReachResult ncl_reachable(const NclMachine& m, const Orientation& c0, const Orientation& cr);

/// Every valid strict configuration by brute force over 2^|E| orientations.
std::vector<Orientation> enumerate_configurations(const NclMachine& m);

/// Throws NclError unless `w` is a nonempty chain of valid strict
/// configurations, consecutive ones differing in exactly one edge.
void check_witness(const NclMachine& m, const NclWitness& w);

/// Index of the single edge on which a and b differ, if exactly one.
std::optional<std::size_t> single_flip(const Orientation& a, const Orientation& b);

/// Machines used throughout the tests and examples.
namespace machines {
/// Two OR vertices joined by three parallel weight-2 edges.
NclMachine triple_or();
/// Two AND vertices joined by one weight-2 and two weight-1 edges.
NclMachine two_and();
/// AND vertices a1, a2 joined by two weight-1 edges, each with a weight-2
/// edge to its own OR vertex; the OR vertices share two weight-2 edges.
NclMachine and_or_ladder();
/// Complete graph on four OR vertices.
NclMachine k4_or();
}  // namespace machines

}  // namespace ecr
