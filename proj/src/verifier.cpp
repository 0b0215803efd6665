#include "ecr/verifier.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "ecr/union_find.hpp"

namespace ecr {

ColoringSpace::ColoringSpace(const ColoredMultigraph& g, std::vector<EdgeId> boundary,
                             std::uint64_t limit)
    : g_(&g),
      boundary_(std::move(boundary)),
      is_boundary_(g.num_edges(), false),
      codec_(g),
      index_(codec_.words()) {
  for (EdgeId e : boundary_) {
    if (e >= g.num_edges()) throw GraphError("boundary edge out of range");
    is_boundary_[e] = true;
  }
  colorings_ = enumerate_colorings(g, limit).colorings;
  std::vector<std::uint64_t> buf(codec_.words());
  for (std::uint32_t i = 0; i < colorings_.size(); ++i) {
    codec_.pack(colorings_[i], buf.data());
    index_.insert(buf.data());
    classes_[key(colorings_[i])].push_back(i);
  }
}

BoundaryAssignment ColoringSpace::key(const Coloring& f) const {
  BoundaryAssignment a;
  a.reserve(boundary_.size());
  for (EdgeId e : boundary_) a.push_back(f[e]);
  return a;
}

std::optional<std::uint32_t> ColoringSpace::find(const Coloring& f) const {
  if (!is_proper(*g_, f)) return std::nullopt;
  std::vector<std::uint64_t> buf(codec_.words());
  codec_.pack(f, buf.data());
  const std::uint32_t j = index_.find(buf.data());
  if (j == StateSet::kNone) return std::nullopt;
  return j;
}

std::map<BoundaryAssignment, std::vector<Coloring>> boundary_classes(const Gadget& g) {
  const ColoringSpace space(g.graph, g.boundary);
  std::map<BoundaryAssignment, std::vector<Coloring>> out;
  for (const auto& [key, members] : space.classes())
    for (std::uint32_t i : members) out[key].push_back(space.coloring(i));
  return out;
}

ConnectednessResult check_internal_connectedness(const ColoringSpace& space) {
  UnionFind uf(space.size());
  for (std::uint32_t i = 0; i < space.size(); ++i)
    space.for_each_neighbor(i, false, [&](std::uint32_t j) {
      if (i < j) uf.unite(i, j);
    });
  ConnectednessResult res;
  for (const auto& [key, members] : space.classes()) {
    std::set<std::uint32_t> roots;
    std::optional<std::uint32_t> other;
    const std::uint32_t first_root = uf.find(members.front());
    for (std::uint32_t i : members) {
      const std::uint32_t r = uf.find(i);
      roots.insert(r);
      if (!other && r != first_root) other = i;
    }
    res.classes.push_back({key, members.size(), roots.size()});
    if (other && res.pass) {
      res.pass = false;
      res.failing_class = key;
      res.counterexample = std::make_pair(space.coloring(members.front()), space.coloring(*other));
    }
  }
  return res;
}

AdjacencyResult check_external_adjacency(const ColoringSpace& space, const InterfaceSpec& spec) {
  AdjacencyResult res;
  std::set<QuotientEdge> realized;
  for (std::uint32_t i = 0; i < space.size(); ++i) {
    const BoundaryAssignment a = space.key(space.coloring(i));
    space.for_each_neighbor(i, true, [&](std::uint32_t j) {
      BoundaryAssignment b = space.key(space.coloring(j));
      if (a < b) realized.emplace(a, std::move(b));
    });
  }
  for (const auto& [key, members] : space.classes()) res.nodes.push_back(key);
  res.edges.assign(realized.begin(), realized.end());

  const std::set<BoundaryAssignment> want_nodes(spec.allowed.begin(), spec.allowed.end());
  const std::set<BoundaryAssignment> have_nodes(res.nodes.begin(), res.nodes.end());
  std::set<QuotientEdge> want_edges;
  for (auto [i, j] : spec.adjacency) want_edges.emplace(spec.allowed[i], spec.allowed[j]);

  std::set_difference(want_nodes.begin(), want_nodes.end(), have_nodes.begin(), have_nodes.end(),
                      std::back_inserter(res.missing_nodes));
  std::set_difference(have_nodes.begin(), have_nodes.end(), want_nodes.begin(), want_nodes.end(),
                      std::back_inserter(res.extra_nodes));
  std::set_difference(want_edges.begin(), want_edges.end(), realized.begin(), realized.end(),
                      std::back_inserter(res.missing_edges));
  std::set_difference(realized.begin(), realized.end(), want_edges.begin(), want_edges.end(),
                      std::back_inserter(res.extra_edges));
  res.pass = res.missing_nodes.empty() && res.extra_nodes.empty() && res.missing_edges.empty() &&
             res.extra_edges.empty();
  return res;
}

AlphabetResult check_boundary_alphabet(const ColoringSpace& space, const std::vector<Color>& alphabet) {
  AlphabetResult res;
  for (const auto& [key, members] : space.classes()) {
    const bool ok = std::all_of(key.begin(), key.end(), [&](Color c) {
      return std::find(alphabet.begin(), alphabet.end(), c) != alphabet.end();
    });
    if (!ok) {
      res.pass = false;
      res.counterexample = space.coloring(members.front());
      break;
    }
  }
  return res;
}

ConnectednessResult check_internal_connectedness(const Gadget& g) {
  return check_internal_connectedness(ColoringSpace(g.graph, g.boundary));
}

AdjacencyResult check_external_adjacency(const Gadget& g, const InterfaceSpec& spec) {
  return check_external_adjacency(ColoringSpace(g.graph, g.boundary), spec);
}

AlphabetResult check_boundary_alphabet(const Gadget& g) {
  return check_boundary_alphabet(ColoringSpace(g.graph, g.boundary), g.boundary_alphabet);
}

VerificationReport verify(const Gadget& g, const InterfaceSpec& spec) {
  const ColoringSpace space(g.graph, g.boundary);
  return verify(g, space, spec);
}

VerificationReport verify(const Gadget& g, const ColoringSpace& space, const InterfaceSpec& spec) {
  VerificationReport r;
  r.gadget = g.name;
  r.variant = to_string(g.variant);
  r.interface = to_string(spec.kind);
  r.k = g.k;
  r.census = space.size();
  r.expected_census = g.checksum;
  r.census_ok = !g.checksum || *g.checksum == r.census;
  r.internal = check_internal_connectedness(space);
  r.external = check_external_adjacency(space, spec);
  r.alphabet = check_boundary_alphabet(space, g.boundary_alphabet);
  return r;
}

VerificationReport verify(const Gadget& g) { return verify(g, derive_interface(g.interface)); }

std::string quotient_to_dot(const AdjacencyResult& a, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (std::size_t i = 0; i < a.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << coloring_label(a.nodes[i]) << "\"];\n";
  for (const auto& [x, y] : a.edges) {
    const auto ix = std::find(a.nodes.begin(), a.nodes.end(), x) - a.nodes.begin();
    const auto iy = std::find(a.nodes.begin(), a.nodes.end(), y) - a.nodes.begin();
    os << "  n" << ix << " -- n" << iy << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace ecr
