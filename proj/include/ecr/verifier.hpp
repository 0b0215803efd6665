#pragma once

// Exhaustive checks that a gadget behaves like its NCL counterpart:
// every class of colorings sharing a boundary assignment is connected by
// internal recolorings, and contracting the classes yields exactly the
// interface graph.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecr/egraph.hpp"
#include "ecr/gadget.hpp"
#include "ecr/state_set.hpp"

namespace ecr {

using QuotientEdge = std::pair<BoundaryAssignment, BoundaryAssignment>;

/// All proper colorings of a graph grouped by boundary assignment, with an
/// index for neighbour lookups.
class ColoringSpace {
 public:
  ColoringSpace(const ColoredMultigraph& g, std::vector<EdgeId> boundary,
                std::uint64_t limit = 50'000'000);

  const ColoredMultigraph& graph() const { return *g_; }
  const std::vector<EdgeId>& boundary() const { return boundary_; }
  std::size_t size() const { return colorings_.size(); }
  const Coloring& coloring(std::size_t i) const { return colorings_[i]; }
  const std::vector<Coloring>& colorings() const { return colorings_; }

  BoundaryAssignment key(const Coloring& f) const;
  const std::map<BoundaryAssignment, std::vector<std::uint32_t>>& classes() const { return classes_; }

  /// Index of `f` among the enumerated colorings, if proper.
  std::optional<std::uint32_t> find(const Coloring& f) const;

  /// Calls visit(j) for every coloring one recolor away from coloring i,
  /// restricted to boundary or internal edges.
  template <typename Visit>
  void for_each_neighbor(std::uint32_t i, bool boundary_edges, Visit&& visit) const {
    Coloring f = colorings_[i];
    std::vector<std::uint64_t> used(g_->num_vertices(), 0);
    for (EdgeId e = 0; e < f.size(); ++e) {
      used[g_->edge(e).u] |= std::uint64_t{1} << f[e];
      used[g_->edge(e).v] |= std::uint64_t{1} << f[e];
    }
    std::vector<std::uint64_t> buf(codec_.words());
    for (EdgeId e = 0; e < f.size(); ++e) {
      if (is_boundary_[e] != boundary_edges) continue;
      const Edge& ed = g_->edge(e);
      const std::uint64_t blocked = used[ed.u] | used[ed.v];
      const Color old = f[e];
      for (Color c : ed.list) {
        if (c == old || (blocked >> c) & 1) continue;
        f[e] = c;
        codec_.pack(f, buf.data());
        const std::uint32_t j = index_.find(buf.data());
        if (j != StateSet::kNone) visit(j);
      }
      f[e] = old;
    }
  }

 private:
  const ColoredMultigraph* g_;
  std::vector<EdgeId> boundary_;
  std::vector<bool> is_boundary_;
  std::vector<Coloring> colorings_;
  std::map<BoundaryAssignment, std::vector<std::uint32_t>> classes_;
  StateCodec codec_;
  StateSet index_;
};

struct ClassReport {
  BoundaryAssignment assignment;
  std::size_t size = 0;
  std::size_t components = 0;
};

struct ConnectednessResult {
  bool pass = true;
  std::vector<ClassReport> classes;
  // First class found split, with one coloring from each of two components.
  std::optional<BoundaryAssignment> failing_class;
  std::optional<std::pair<Coloring, Coloring>> counterexample;
};

struct AdjacencyResult {
  bool pass = true;
  std::vector<BoundaryAssignment> nodes;  // realized assignments
  std::vector<QuotientEdge> edges;        // realized quotient edges
  std::vector<BoundaryAssignment> missing_nodes, extra_nodes;
  std::vector<QuotientEdge> missing_edges, extra_edges;
};

struct AlphabetResult {
  bool pass = true;
  std::optional<Coloring> counterexample;
};

struct VerificationReport {
  std::string gadget;
  std::string variant;
  std::string interface;
  int k = 0;
  std::uint64_t census = 0;
  std::optional<std::uint64_t> expected_census;
  bool census_ok = true;
  ConnectednessResult internal;
  AdjacencyResult external;
  AlphabetResult alphabet;

  bool passed() const { return census_ok && internal.pass && external.pass && alphabet.pass; }
};

std::map<BoundaryAssignment, std::vector<Coloring>> boundary_classes(const Gadget& g);

ConnectednessResult check_internal_connectedness(const ColoringSpace& space);
AdjacencyResult check_external_adjacency(const ColoringSpace& space, const InterfaceSpec& spec);
AlphabetResult check_boundary_alphabet(const ColoringSpace& space, const std::vector<Color>& alphabet);

ConnectednessResult check_internal_connectedness(const Gadget& g);
AdjacencyResult check_external_adjacency(const Gadget& g, const InterfaceSpec& spec);
AlphabetResult check_boundary_alphabet(const Gadget& g);

VerificationReport verify(const Gadget& g, const InterfaceSpec& spec);
VerificationReport verify(const Gadget& g, const ColoringSpace& space, const InterfaceSpec& spec);
VerificationReport verify(const Gadget& g);  // against derive_interface(g.interface)

/// Realized quotient as DOT; node labels are boundary assignments.
std::string quotient_to_dot(const AdjacencyResult& a, const std::string& name = "quotient");

}  // namespace ecr
