#include "ecr/gadget.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

#ifndef ECR_DEFAULT_GADGET_DIR
#define ECR_DEFAULT_GADGET_DIR "data/gadgets"
#endif

namespace ecr {

using nlohmann::json;

const char* to_string(Variant v) { return v == Variant::List ? "LIST" : "NONLIST"; }

const char* to_string(InterfaceKind k) {
  switch (k) {
    case InterfaceKind::Link: return "LINK";
    case InterfaceKind::And: return "AND";
    case InterfaceKind::Or: return "OR";
  }
  return "?";
}

namespace {
std::string upper(std::string s) {
  for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  return s;
}
}  // namespace

Variant parse_variant(const std::string& s) {
  const std::string u = upper(s);
  if (u == "LIST") return Variant::List;
  if (u == "NONLIST" || u == "NON-LIST") return Variant::NonList;
  throw GraphError("unknown variant '" + s + "' (expected list or nonlist)");
}

InterfaceKind parse_interface(const std::string& s) {
  const std::string u = upper(s);
  if (u == "LINK") return InterfaceKind::Link;
  if (u == "AND") return InterfaceKind::And;
  if (u == "OR") return InterfaceKind::Or;
  throw GraphError("unknown interface '" + s + "' (expected LINK, AND or OR)");
}

int min_colors(Variant v) { return v == Variant::List ? 4 : 5; }

bool InterfaceSpec::allows(const BoundaryAssignment& a) const { return index_of(a).has_value(); }

std::optional<std::size_t> InterfaceSpec::index_of(const BoundaryAssignment& a) const {
  auto it = std::lower_bound(allowed.begin(), allowed.end(), a);
  if (it == allowed.end() || *it != a) return std::nullopt;
  return static_cast<std::size_t>(it - allowed.begin());
}

namespace {

// Adjacency = all pairs of allowed assignments at Hamming distance one.
InterfaceSpec close_under_single_moves(InterfaceKind kind, std::size_t arity,
                                       std::vector<BoundaryAssignment> allowed) {
  InterfaceSpec spec;
  spec.kind = kind;
  spec.arity = arity;
  std::sort(allowed.begin(), allowed.end());
  spec.allowed = std::move(allowed);
  for (std::size_t i = 0; i < spec.allowed.size(); ++i)
    for (std::size_t j = i + 1; j < spec.allowed.size(); ++j) {
      std::size_t diff = 0;
      for (std::size_t c = 0; c < arity; ++c) diff += spec.allowed[i][c] != spec.allowed[j][c];
      if (diff == 1) spec.adjacency.emplace_back(i, j);
    }
  return spec;
}

}  // namespace

InterfaceSpec derive_interface(InterfaceKind kind) {
  const std::size_t arity = kind == InterfaceKind::Link ? 2 : 3;
  std::vector<BoundaryAssignment> allowed;
  for (unsigned mask = 0; mask < (1u << arity); ++mask) {
    BoundaryAssignment a(arity);
    for (std::size_t i = 0; i < arity; ++i) a[i] = (mask >> i) & 1 ? kInward : kOutward;
    auto in = [&](std::size_t i) { return a[i] == kInward; };
    bool ok = false;
    switch (kind) {
      case InterfaceKind::Link:
        // An NCL edge may point at one end or neither, never both.
        ok = !(in(0) && in(1));
        break;
      case InterfaceKind::And:
        // e1, e2 carry weight 1, ea weight 2.
        ok = int(in(0)) + int(in(1)) + 2 * int(in(2)) >= 2;
        break;
      case InterfaceKind::Or:
        ok = in(0) || in(1) || in(2);
        break;
    }
    if (ok) allowed.push_back(std::move(a));
  }
  return close_under_single_moves(kind, arity, std::move(allowed));
}

InterfaceSpec permute_interface(const InterfaceSpec& spec, const std::vector<std::size_t>& perm) {
  if (perm.size() != spec.arity) throw GraphError("permutation arity mismatch");
  std::vector<BoundaryAssignment> allowed;
  for (const auto& a : spec.allowed) {
    BoundaryAssignment b(spec.arity);
    for (std::size_t i = 0; i < spec.arity; ++i) b[i] = a.at(perm[i]);
    allowed.push_back(std::move(b));
  }
  return close_under_single_moves(spec.kind, spec.arity, std::move(allowed));
}

ColorGadget make_color_gadget(ColoredMultigraph& g, int k, const std::vector<Color>& forbidden,
                              VertexId attach_at) {
  if (k < 5) throw GraphError("color gadgets need k >= 5, got " + std::to_string(k));
  if (k > g.k()) throw GraphError("color gadget k exceeds the graph's color count");
  if (attach_at >= g.num_vertices()) throw GraphError("color gadget attachment vertex out of range");
  std::set<Color> forbid(forbidden.begin(), forbidden.end());
  if (forbid.empty()) throw GraphError("color gadget must forbid at least one color");
  for (Color c : forbid)
    if (c < 1 || c > k) throw GraphError("forbidden color " + std::to_string(int(c)) + " outside 1..k");
  if (static_cast<int>(forbid.size()) == k)
    throw GraphError("color gadget may not forbid all " + std::to_string(k) + " colors");

  const std::string tag = "cg" + std::to_string(g.num_vertices()) + "_" + g.vertex_name(attach_at);
  ColorGadget cg;
  cg.center = g.add_vertex(tag);
  cg.attach = attach_at;
  for (int c = 1; c <= k; ++c) {
    const auto color = static_cast<Color>(c);
    VertexId leaf = attach_at;
    if (!forbid.count(color)) leaf = g.add_vertex(tag + "_leaf" + std::to_string(c));
    cg.edges.push_back(g.add_frozen_edge(cg.center, leaf, color, tag + "_c" + std::to_string(c)));
  }
  return cg;
}

VertexId Gadget::inner(std::size_t i) const {
  const Edge& e = graph.edge(boundary.at(i));
  return e.u == ports.at(i) ? e.v : e.u;
}

std::vector<Color> Gadget::forbidden_at(const std::string& vertex) const {
  std::set<Color> out;
  for (const Attachment& a : attachments)
    if (a.vertex == vertex) out.insert(a.forbid.begin(), a.forbid.end());
  return {out.begin(), out.end()};
}

void Gadget::validate() const {
  graph.validate();
  if (boundary.size() != ports.size()) throw GraphError(name + ": boundary/port count mismatch");
  const std::size_t arity = interface == InterfaceKind::Link ? 2 : 3;
  if (boundary.size() != arity)
    throw GraphError(name + ": interface " + to_string(interface) + " needs " + std::to_string(arity) +
                     " boundary edges");
  std::set<EdgeId> seen(boundary.begin(), boundary.end());
  if (seen.size() != boundary.size()) throw GraphError(name + ": boundary edges must be distinct");
  std::set<VertexId> port_set(ports.begin(), ports.end());
  if (port_set.size() != ports.size()) throw GraphError(name + ": ports must be distinct");
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    const Edge& e = graph.edge(boundary[i]);
    if (e.u != ports[i] && e.v != ports[i])
      throw GraphError(name + ": port " + graph.vertex_name(ports[i]) + " is not an endpoint of " + e.name);
    std::size_t core_degree = 0;
    for (EdgeId o = 0; o < core_edges; ++o)
      if (graph.edge(o).u == ports[i] || graph.edge(o).v == ports[i]) ++core_degree;
    if (core_degree != 1)
      throw GraphError(name + ": port " + graph.vertex_name(ports[i]) + " must touch only its connector");
  }
  if (variant == Variant::List)
    for (EdgeId e = 0; e < graph.num_edges(); ++e)
      if (graph.edge(e).list.back() > 4)
        throw GraphError(name + ": list gadget edge " + graph.edge(e).name + " uses a color above 4");
}

Gadget parse_gadget(const std::string& json_text, int k) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::exception& ex) {
    throw GraphError(std::string("gadget file is not valid JSON: ") + ex.what());
  }
  try {
    Gadget gd;
    gd.name = j.at("name").get<std::string>();
    gd.variant = parse_variant(j.at("variant").get<std::string>());
    gd.interface = parse_interface(j.at("interface").get<std::string>());
    if (k < min_colors(gd.variant))
      throw GraphError(std::string(to_string(gd.variant)) + " gadgets need k >= " +
                       std::to_string(min_colors(gd.variant)) + ", got " + std::to_string(k));
    gd.k = k;
    if (j.contains("checksum")) gd.checksum = j.at("checksum").get<std::uint64_t>();

    ColoredMultigraph g(k);
    for (const auto& v : j.at("vertices")) {
      const std::string name = v.is_string() ? v.get<std::string>() : v.at("id").get<std::string>();
      if (g.find_vertex(name)) throw GraphError("duplicate vertex " + name);
      g.add_vertex(name);
    }
    auto vertex = [&](const std::string& name) {
      auto id = g.find_vertex(name);
      if (!id) throw GraphError("unknown vertex " + name);
      return *id;
    };
    std::vector<Color> full;
    for (int c = 1; c <= k; ++c) full.push_back(static_cast<Color>(c));
    for (const auto& e : j.at("edges")) {
      const std::string id = e.at("id").get<std::string>();
      if (g.find_edge(id)) throw GraphError("duplicate edge " + id);
      std::vector<Color> list = full;
      if (e.contains("list")) list = e.at("list").get<std::vector<Color>>();
      else if (gd.variant == Variant::List) throw GraphError("list gadget edge " + id + " has no list");
      g.add_edge(vertex(e.at("u").get<std::string>()), vertex(e.at("v").get<std::string>()), list, id);
    }
    gd.core_edges = g.num_edges();
    for (const auto& b : j.at("boundary")) {
      auto id = g.find_edge(b.get<std::string>());
      if (!id) throw GraphError("unknown boundary edge " + b.get<std::string>());
      gd.boundary.push_back(*id);
    }
    for (const auto& p : j.at("ports")) gd.ports.push_back(vertex(p.get<std::string>()));

    if (j.contains("color_gadgets")) {
      if (gd.variant == Variant::List) throw GraphError("list gadgets take no color gadgets");
      for (const auto& a : j.at("color_gadgets")) {
        Attachment at{a.at("at").get<std::string>(), a.at("forbid").get<std::vector<Color>>()};
        for (const Attachment& prev : gd.attachments)
          if (prev.vertex == at.vertex) throw GraphError("vertex " + at.vertex + " carries two color gadgets");
        std::vector<Color> forbid = at.forbid;
        for (Color c : at.forbid)
          if (c < 1 || c > 5) throw GraphError("declared forbidden colors must lie in 1..5");
        for (int c = 6; c <= k; ++c) forbid.push_back(static_cast<Color>(c));
        gd.color_gadgets.push_back(make_color_gadget(g, k, forbid, vertex(at.vertex)));
        gd.attachments.push_back(std::move(at));
      }
    }
    gd.graph = std::move(g);
    gd.validate();
    return gd;
  } catch (const json::exception& ex) {
    throw GraphError(std::string("ill-formed gadget file: ") + ex.what());
  }
}

std::filesystem::path default_gadget_dir() {
  if (const char* env = std::getenv("ECR_GADGET_DIR")) return env;
  return ECR_DEFAULT_GADGET_DIR;
}

Gadget load_gadget(const std::string& name, Variant variant, int k, const std::filesystem::path& dir) {
  std::string lower = to_string(variant);
  for (char& c : lower) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  const auto path = (dir.empty() ? default_gadget_dir() : dir) / (lower + "_" + name + ".json");
  std::ifstream in(path);
  if (!in) throw GraphError("gadget file not found: " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  Gadget gd = parse_gadget(ss.str(), k);
  if (gd.name != name || gd.variant != variant)
    throw GraphError(path.string() + " does not describe the " + std::string(to_string(variant)) + " " + name +
                     " gadget");
  if (gd.checksum) {
    const std::uint64_t census = count_colorings(gd.graph);
    if (census != *gd.checksum)
      throw GraphError(path.string() + ": census " + std::to_string(census) + " does not match checksum " +
                       std::to_string(*gd.checksum));
  }
  return gd;
}

}  // namespace ecr
