#pragma once

// Colored multigraphs, proper (list) edge-colorings and the single-recolor
// reconfiguration graph over them.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ecr {

using Color = std::uint8_t;
using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

/// Colors are 1..k; k is capped so a vertex's used colors fit one 64-bit mask.
inline constexpr int kMaxColors = 63;

/// Total assignment edge -> color, indexed by edge id.
using Coloring = std::vector<Color>;

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  std::vector<Color> list;  // sorted, duplicate-free
  bool frozen = false;      // frozen edges carry a single-color list
  std::string name;
};

/// Undirected multigraph with a color list on every edge. Parallel edges are
/// allowed, loops are not.
class ColoredMultigraph {
 public:
  ColoredMultigraph() = default;
  explicit ColoredMultigraph(int k);

  VertexId add_vertex(std::string name = {});
  EdgeId add_edge(VertexId u, VertexId v, std::vector<Color> list, std::string name = {});
  EdgeId add_frozen_edge(VertexId u, VertexId v, Color c, std::string name = {});

  int k() const { return k_; }
  void set_k(int k);

  std::size_t num_vertices() const { return vertex_names_.size(); }
  std::size_t num_edges() const { return edges_.size(); }

  const Edge& edge(EdgeId e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::string& vertex_name(VertexId v) const { return vertex_names_.at(v); }

  void set_list(EdgeId e, std::vector<Color> list);

  std::optional<VertexId> find_vertex(const std::string& name) const;
  std::optional<EdgeId> find_edge(const std::string& name) const;

  std::vector<EdgeId> incident(VertexId v) const;
  std::size_t degree(VertexId v) const;
  std::size_t max_degree() const;

  /// Edges sharing at least one endpoint with `e`, excluding `e` itself.
  /// Parallel edges appear once.
  std::vector<std::vector<EdgeId>> edge_adjacency() const;

  /// Throws GraphError when a list is empty or leaves 1..k.
  void validate() const;

 private:
  int k_ = 0;
  std::vector<std::string> vertex_names_;
  std::vector<Edge> edges_;
};

/// True iff `f` is total, every color is drawn from its edge's list and no
/// two edges sharing an endpoint agree.
bool is_proper(const ColoredMultigraph& g, std::span<const Color> f);

/// Throws GraphError unless `f` covers exactly the edges of `g`.
void require_total(const ColoredMultigraph& g, std::span<const Color> f);

/// Restricts which edges may be recolored. Empty = all edges.
using Recolorable = std::vector<bool>;

/// Proper colorings differing from proper `f` on exactly one (recolorable) edge,
/// ordered by (edge, color).
std::vector<Coloring> coloring_neighbors(const ColoredMultigraph& g, const Coloring& f,
                                         const Recolorable& recolorable = {});

/// Backtracking enumeration in edge order, colors ascending. The visitor
/// returns false to stop early. Returns the number of colorings visited.
std::uint64_t for_each_coloring(const ColoredMultigraph& g,
                                const std::function<bool(const Coloring&)>& visit);

struct Census {
  std::uint64_t count = 0;
  std::vector<Coloring> colorings;
};

/// All proper colorings, or throws BudgetExceeded past `limit`.
Census enumerate_colorings(const ColoredMultigraph& g,
                           std::uint64_t limit = 100'000'000);

std::uint64_t count_colorings(const ColoredMultigraph& g);

struct Budget {
  std::uint64_t max_states = 100'000'000;
  std::size_t max_bytes = std::size_t{4} << 30;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Reachability { Reachable, Unreachable, BudgetExceeded };

const char* to_string(Reachability r);

struct Recolor {
  EdgeId edge = 0;
  Color color = 0;
  bool operator==(const Recolor&) const = default;
};

struct ReachResult {
  Reachability status = Reachability::Unreachable;
  std::vector<Recolor> witness;  // shortest, only when Reachable and requested
  std::uint64_t visited = 0;
};

/// Breadth-first search over proper colorings from f0 towards fr.
ReachResult reachable(const ColoredMultigraph& g, const Coloring& f0, const Coloring& fr,
                      const Budget& budget = {}, bool want_witness = true,
                      const Recolorable& recolorable = {});

/// Every coloring reachable from `f0`; throws BudgetExceeded.
std::vector<Coloring> reachable_set(const ColoredMultigraph& g, const Coloring& f0,
                                    const Budget& budget = {},
                                    const Recolorable& recolorable = {});

/// Applies `steps` to `f0`, checking that every intermediate coloring is
/// proper and each step really changes the color. Returns the final coloring.
Coloring replay(const ColoredMultigraph& g, Coloring f0, std::span<const Recolor> steps);

struct ReconfigurationGraph {
  std::vector<Coloring> nodes;  // enumeration order
  std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;  // i < j, sorted

  std::size_t num_components() const;
};

ReconfigurationGraph reconfiguration_graph(const ColoredMultigraph& g,
                                           const Recolorable& recolorable = {},
                                           std::uint64_t max_nodes = 1'000'000);

/// Node label is the coloring written as a digit string in edge order.
std::string to_dot(const ReconfigurationGraph& rg, const std::string& name = "reconf");

std::string coloring_label(std::span<const Color> f);

}  // namespace ecr
