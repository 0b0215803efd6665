#pragma once

// Compiles an NCL machine into a (list) edge-coloring reconfiguration
// instance and translates configurations and witnesses in both directions.

#include <cstdint>
#include <filesystem>
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ecr/egraph.hpp"
#include "ecr/gadget.hpp"
#include "ecr/ncl.hpp"
#include "ecr/verifier.hpp"

namespace ecr {

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subdivision of every NCL edge vw into the path v v' w' w.
struct Skeleton {
  ColoredMultigraph graph;
  std::vector<EdgeId> link_edges;                       // v'w', per NCL edge
  std::vector<std::pair<EdgeId, EdgeId>> connectors;    // (vv', ww') per NCL edge, v = edge.u
};

Skeleton subdivide(const NclMachine& m);

/// A verified gadget together with its enumerated colorings, shared by all
/// placements of that gadget.
struct LoadedGadget {
  Gadget gadget;
  std::unique_ptr<ColoringSpace> space;
  VerificationReport report;
  std::map<BoundaryAssignment, std::uint32_t> canonical;  // first member in enumeration order
};

/// Loads and verifies the link/AND/OR gadgets of one variant; results are
/// cached per (variant, k, directory). Throws ReductionError when a gadget
/// fails verification.
std::shared_ptr<const LoadedGadget> loaded_gadget(InterfaceKind kind, Variant variant, int k,
                                                  const std::filesystem::path& dir = {});

/// One gadget copied into the compiled graph.
struct Placement {
  InterfaceKind kind = InterfaceKind::Link;
  std::size_t ncl_index = 0;               // NCL edge (link) or vertex (AND/OR)
  std::shared_ptr<const LoadedGadget> source;
  std::vector<EdgeId> edge_map;            // gadget edge -> compiled edge, kNoEdge if dropped
  std::vector<EdgeId> connectors;          // compiled connector edges in boundary order
  std::vector<std::size_t> ncl_edges;      // vertex gadgets: NCL edge per boundary slot

  static constexpr EdgeId kNoEdge = 0xFFFFFFFFu;
};

struct ReductionArtifact {
  Variant variant = Variant::List;
  int k = 4;
  NclMachine machine;
  ColoredMultigraph graph;
  std::vector<Placement> links;                      // per NCL edge
  std::vector<Placement> vertices;                   // per NCL vertex
  std::vector<std::pair<EdgeId, EdgeId>> connectors; // (at edge.u, at edge.v) per NCL edge
  std::vector<VertexId> color_gadget_centers;
};

/// Every link edge and vertex star replaced by its gadget; connectors are
/// shared between the vertex gadget and the link gadget.
ReductionArtifact compile(const NclMachine& m, Variant variant, int k,
                          const std::filesystem::path& gadget_dir = {});

Coloring embed_configuration(const ReductionArtifact& art, const Orientation& c);

/// (1,4) toward edge.u, (4,1) toward edge.v, (4,4) neutral. Throws
/// ReductionError on (1,1), a color outside {1,4}, or an invalid result.
Orientation project_coloring(const ReductionArtifact& art, std::span<const Color> f);

/// Recolor sequence from embed(w.front()) to embed(w.back()).
std::vector<Recolor> lift_witness(const ReductionArtifact& art, const NclWitness& w);

/// Strict NCL witness read off a proper recolor sequence starting at f0.
NclWitness project_witness(const ReductionArtifact& art, const Coloring& f0,
                           std::span<const Recolor> steps);

struct WalkReport {
  std::uint64_t steps = 0;
  std::uint64_t neutral_states = 0;   // states with at least one neutral NCL edge
  bool sound = true;
  std::string failure;
};

/// Uniform random walk over single recolors; projects every visited state.
WalkReport random_walk(const ReductionArtifact& art, const Coloring& start, std::uint64_t steps,
                       std::uint64_t seed);

struct SizeReport {
  std::size_t vertices = 0;
  std::size_t edges = 0;
  std::size_t max_degree = 0;
  std::size_t max_degree_outside_color_gadgets = 0;
  std::map<std::string, std::size_t> gadget_edges;   // per interface kind, connectors included
};

SizeReport size_report(const ReductionArtifact& art);

}  // namespace ecr
