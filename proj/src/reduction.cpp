#include "ecr/reduction.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <random>
#include <set>
#include <tuple>
#include <unordered_map>

namespace ecr {

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

std::vector<Color> all_colors(int k) {
  std::vector<Color> out;
  for (int c = 1; c <= k; ++c) out.push_back(static_cast<Color>(c));
  return out;
}

void require_valid_machine(const NclMachine& m) {
  if (auto v = validate_machine(m); !v.empty())
    throw ReductionError("invalid NCL machine: " + (v.front().vertex.empty() ? "" : v.front().vertex + ": ") +
                         v.front().message);
}

}  // namespace

Skeleton subdivide(const NclMachine& m) {
  require_valid_machine(m);
  Skeleton s;
  s.graph = ColoredMultigraph(4);
  for (const NclVertex& v : m.vertices()) s.graph.add_vertex(v.id);
  for (const NclEdge& e : m.edges()) {
    const VertexId vp = s.graph.add_vertex(e.id + "'" + m.vertices()[e.u].id);
    const VertexId wp = s.graph.add_vertex(e.id + "'" + m.vertices()[e.v].id);
    const EdgeId cu = s.graph.add_edge(static_cast<VertexId>(e.u), vp, {kInward, kOutward},
                                       e.id + "@" + m.vertices()[e.u].id);
    const EdgeId link = s.graph.add_edge(vp, wp, all_colors(4), e.id);
    const EdgeId cv = s.graph.add_edge(wp, static_cast<VertexId>(e.v), {kInward, kOutward},
                                       e.id + "@" + m.vertices()[e.v].id);
    s.link_edges.push_back(link);
    s.connectors.emplace_back(cu, cv);
  }
  return s;
}

std::shared_ptr<const LoadedGadget> loaded_gadget(InterfaceKind kind, Variant variant, int k,
                                                  const std::filesystem::path& dir) {
  static std::mutex mu;
  static std::map<std::tuple<int, int, int, std::string>, std::shared_ptr<const LoadedGadget>> cache;
  const auto resolved = dir.empty() ? default_gadget_dir() : dir;
  const auto key = std::make_tuple(int(kind), int(variant), k, resolved.string());
  std::lock_guard lock(mu);
  if (auto it = cache.find(key); it != cache.end()) return it->second;

  auto lg = std::make_shared<LoadedGadget>();
  try {
    lg->gadget = load_gadget(lower(to_string(kind)), variant, k, resolved);
  } catch (const GraphError& ex) {
    throw ReductionError(ex.what());
  }
  if (lg->gadget.interface != kind)
    throw ReductionError("gadget " + lg->gadget.name + " declares interface " + to_string(lg->gadget.interface));
  lg->space = std::make_unique<ColoringSpace>(lg->gadget.graph, lg->gadget.boundary);
  lg->report = verify(lg->gadget, *lg->space, derive_interface(kind));
  if (!lg->report.passed())
    throw ReductionError(std::string(to_string(variant)) + " " + to_string(kind) + " gadget fails verification");
  for (const auto& [a, members] : lg->space->classes()) lg->canonical[a] = members.front();
  cache.emplace(key, lg);
  return lg;
}

namespace {

// Boundary slot order of a vertex gadget: AND puts the two weight-1 edges
// first (by edge index), then the weight-2 edge; OR uses edge index order.
std::vector<std::size_t> slot_order(const NclMachine& m, std::size_t v) {
  std::vector<std::size_t> inc = m.incident(v);
  if (m.vertices()[v].kind == VertexKind::And)
    std::stable_sort(inc.begin(), inc.end(),
                     [&](std::size_t a, std::size_t b) { return m.edges()[a].weight < m.edges()[b].weight; });
  return inc;
}

struct Copier {
  ColoredMultigraph& out;
  std::vector<VertexId>& centers;

  // Copies the gadget except its ports and the color gadgets at the ports.
  // Returns gadget vertex -> compiled vertex (kNone for dropped vertices).
  std::vector<VertexId> place(const Gadget& gd, const std::string& prefix, Placement& p) {
    constexpr VertexId kNone = 0xFFFFFFFFu;
    const ColoredMultigraph& g = gd.graph;
    std::vector<bool> dropped(g.num_vertices(), false);
    for (VertexId port : gd.ports) dropped[port] = true;
    std::set<VertexId> kept_centers;
    for (const ColorGadget& cg : gd.color_gadgets) {
      if (!dropped[cg.attach]) {
        kept_centers.insert(cg.center);
        continue;
      }
      dropped[cg.center] = true;
      for (EdgeId e : cg.edges) {
        const Edge& ed = g.edge(e);
        dropped[ed.u == cg.center ? ed.v : ed.u] = true;
      }
      dropped[cg.attach] = true;
    }
    std::vector<VertexId> vmap(g.num_vertices(), kNone);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (dropped[v]) continue;
      vmap[v] = out.add_vertex(prefix + g.vertex_name(v));
      if (kept_centers.count(v)) centers.push_back(vmap[v]);
    }
    p.edge_map.assign(g.num_edges(), Placement::kNoEdge);
    std::set<EdgeId> boundary(gd.boundary.begin(), gd.boundary.end());
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      if (boundary.count(e) || vmap[ed.u] == kNone || vmap[ed.v] == kNone) continue;
      p.edge_map[e] = ed.frozen ? out.add_frozen_edge(vmap[ed.u], vmap[ed.v], ed.list.front(), prefix + ed.name)
                                : out.add_edge(vmap[ed.u], vmap[ed.v], ed.list, prefix + ed.name);
    }
    return vmap;
  }
};

// Colors a connector can take given the color gadgets at its two ends.
std::vector<Color> connector_palette(const Edge& e, const std::vector<Color>& f1, const std::vector<Color>& f2) {
  std::vector<Color> out;
  for (Color c : e.list)
    if (!std::count(f1.begin(), f1.end(), c) && !std::count(f2.begin(), f2.end(), c)) out.push_back(c);
  return out;
}

// A connector shared by a vertex gadget and a link gadget must have the same
// palette in both gadgets and in the compiled graph, where its ends are the
// two inner vertices.
void require_matching_ends(const Gadget& vg, std::size_t vslot, const Gadget& lg, std::size_t lslot) {
  const Edge& ve = vg.graph.edge(vg.boundary[vslot]);
  const Edge& le = lg.graph.edge(lg.boundary[lslot]);
  const auto v_inner = vg.forbidden_at(vg.graph.vertex_name(vg.inner(vslot)));
  const auto l_inner = lg.forbidden_at(lg.graph.vertex_name(lg.inner(lslot)));
  const auto in_vertex = connector_palette(ve, v_inner, vg.forbidden_at(vg.graph.vertex_name(vg.ports[vslot])));
  const auto in_link = connector_palette(le, l_inner, lg.forbidden_at(lg.graph.vertex_name(lg.ports[lslot])));
  const auto compiled = connector_palette(le, v_inner, l_inner);
  if (ve.list != le.list || in_vertex != in_link || in_link != compiled)
    throw ReductionError("connector " + std::to_string(vslot) + " of the " + vg.name + " gadget and connector " +
                         std::to_string(lslot) + " of the " + lg.name + " gadget have different palettes");
}

}  // namespace

ReductionArtifact compile(const NclMachine& m, Variant variant, int k, const std::filesystem::path& gadget_dir) {
  if (k < min_colors(variant))
    throw ReductionError(std::string(to_string(variant)) + " instances need k >= " +
                         std::to_string(min_colors(variant)) + ", got " + std::to_string(k));
  if (k > kMaxColors) throw ReductionError("k exceeds " + std::to_string(kMaxColors));
  require_valid_machine(m);

  ReductionArtifact art;
  art.variant = variant;
  art.k = k;
  art.machine = m;
  art.graph = ColoredMultigraph(k);
  Copier copier{art.graph, art.color_gadget_centers};

  bool has_and = false, has_or = false;
  for (const auto& v : m.vertices()) (v.kind == VertexKind::And ? has_and : has_or) = true;
  const auto link = loaded_gadget(InterfaceKind::Link, variant, k, gadget_dir);
  const auto andg = has_and ? loaded_gadget(InterfaceKind::And, variant, k, gadget_dir) : nullptr;
  const auto org = has_or ? loaded_gadget(InterfaceKind::Or, variant, k, gadget_dir) : nullptr;
  for (const auto& vg : {andg, org})
    if (vg)
      for (std::size_t s = 0; s < 3; ++s)
        for (std::size_t l = 0; l < 2; ++l) require_matching_ends(vg->gadget, s, link->gadget, l);

  std::vector<std::vector<VertexId>> link_vmap, vertex_vmap;
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    Placement p;
    p.kind = InterfaceKind::Link;
    p.ncl_index = e;
    p.source = link;
    link_vmap.push_back(copier.place(link->gadget, "link[" + m.edges()[e].id + "]/", p));
    art.links.push_back(std::move(p));
  }
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    const bool is_and = m.vertices()[v].kind == VertexKind::And;
    Placement p;
    p.kind = is_and ? InterfaceKind::And : InterfaceKind::Or;
    p.ncl_index = v;
    p.source = is_and ? andg : org;
    p.ncl_edges = slot_order(m, v);
    vertex_vmap.push_back(copier.place(p.source->gadget, std::string(is_and ? "and" : "or") + "[" +
                                                             m.vertices()[v].id + "]/",
                                       p));
    p.connectors.assign(3, Placement::kNoEdge);
    art.vertices.push_back(std::move(p));
  }

  art.connectors.assign(m.num_edges(), {Placement::kNoEdge, Placement::kNoEdge});
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const NclEdge& ed = m.edges()[e];
    Placement& lp = art.links[e];
    lp.connectors.assign(2, Placement::kNoEdge);
    for (std::size_t side = 0; side < 2; ++side) {
      const std::size_t v = side == 0 ? ed.u : ed.v;
      Placement& vp = art.vertices[v];
      const std::size_t slot = std::find(vp.ncl_edges.begin(), vp.ncl_edges.end(), e) - vp.ncl_edges.begin();
      const Gadget& vg = vp.source->gadget;
      const Gadget& lg = link->gadget;
      const EdgeId c = art.graph.add_edge(vertex_vmap[v][vg.inner(slot)], link_vmap[e][lg.inner(side)],
                                          lg.graph.edge(lg.boundary[side]).list,
                                          "conn[" + ed.id + "@" + m.vertices()[v].id + "]");
      lp.connectors[side] = c;
      lp.edge_map[lg.boundary[side]] = c;
      vp.connectors[slot] = c;
      vp.edge_map[vg.boundary[slot]] = c;
      (side == 0 ? art.connectors[e].first : art.connectors[e].second) = c;
    }
  }
  art.graph.validate();
  return art;
}

namespace {

Color connector_color(const Orientation& c, std::size_t e, bool at_u) {
  const bool inward = c[e] == (at_u ? Dir::ToU : Dir::ToV);
  return inward ? kInward : kOutward;
}

BoundaryAssignment assignment_of(const Placement& p, std::span<const Color> f) {
  BoundaryAssignment a;
  for (EdgeId c : p.connectors) a.push_back(f[c]);
  return a;
}

void write_local(const Placement& p, const Coloring& local, Coloring& f) {
  for (EdgeId e = 0; e < p.edge_map.size(); ++e)
    if (p.edge_map[e] != Placement::kNoEdge) f[p.edge_map[e]] = local[e];
}

Coloring read_local(const Placement& p, std::span<const Color> f) {
  const ColoredMultigraph& g = p.source->gadget.graph;
  Coloring local(g.num_edges());
  for (EdgeId e = 0; e < g.num_edges(); ++e)
    local[e] = p.edge_map[e] != Placement::kNoEdge ? f[p.edge_map[e]] : g.edge(e).list.front();
  return local;
}

std::string placement_name(const ReductionArtifact& art, const Placement& p) {
  if (p.kind == InterfaceKind::Link) return "link gadget of " + art.machine.edges()[p.ncl_index].id;
  return std::string(to_string(p.kind)) + " gadget of " + art.machine.vertices()[p.ncl_index].id;
}

}  // namespace

Coloring embed_configuration(const ReductionArtifact& art, const Orientation& c) {
  const NclMachine& m = art.machine;
  if (c.size() != m.num_edges()) throw ReductionError("configuration size does not match the machine");
  if (!is_strict(c) || !is_valid_configuration(m, c))
    throw ReductionError("embed_configuration needs a valid configuration without neutral edges");
  Coloring f(art.graph.num_edges(), 0);
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    f[art.connectors[e].first] = connector_color(c, e, true);
    f[art.connectors[e].second] = connector_color(c, e, false);
  }
  auto fill = [&](const Placement& p) {
    const BoundaryAssignment a = assignment_of(p, f);
    auto it = p.source->canonical.find(a);
    if (it == p.source->canonical.end())
      throw ReductionError("boundary assignment " + coloring_label(a) + " is not realized by the " +
                           placement_name(art, p));
    write_local(p, p.source->space->coloring(it->second), f);
  };
  for (const Placement& p : art.links) fill(p);
  for (const Placement& p : art.vertices) fill(p);
  return f;
}

Orientation project_coloring(const ReductionArtifact& art, std::span<const Color> f) {
  if (!is_proper(art.graph, f)) throw ReductionError("project_coloring needs a proper coloring");
  const NclMachine& m = art.machine;
  Orientation o(m.num_edges());
  for (std::size_t e = 0; e < m.num_edges(); ++e) {
    const Color cu = f[art.connectors[e].first], cv = f[art.connectors[e].second];
    auto ok = [](Color c) { return c == kInward || c == kOutward; };
    if (!ok(cu) || !ok(cv))
      throw ReductionError("connector of NCL edge " + m.edges()[e].id + " carries a color outside {1,4}");
    if (cu == kInward && cv == kInward)
      throw ReductionError("NCL edge " + m.edges()[e].id + " points at both ends");
    o[e] = cu == kInward ? Dir::ToU : cv == kInward ? Dir::ToV : Dir::Neutral;
  }
  if (!is_valid_configuration(m, o))
    throw ReductionError("projected orientation is not a valid configuration");
  return o;
}

namespace {

// Internal recolorings inside one placement, from its current local coloring
// to the nearest coloring accepted by `goal`.
template <typename Goal>
void local_move(const ReductionArtifact& art, const Placement& p, Coloring& f, std::vector<Recolor>& steps,
                Goal&& goal) {
  const ColoringSpace& space = *p.source->space;
  const auto start = space.find(read_local(p, f));
  if (!start) throw ReductionError("current coloring is not a coloring of the " + placement_name(art, p));
  std::unordered_map<std::uint32_t, std::uint32_t> parent{{*start, *start}};
  std::deque<std::uint32_t> queue{*start};
  std::optional<std::uint32_t> hit;
  while (!queue.empty() && !hit) {
    const std::uint32_t i = queue.front();
    queue.pop_front();
    if (goal(space.coloring(i))) {
      hit = i;
      break;
    }
    space.for_each_neighbor(i, false, [&](std::uint32_t j) {
      if (parent.emplace(j, i).second) queue.push_back(j);
    });
  }
  if (!hit) throw ReductionError("no internal recoloring of the " + placement_name(art, p) + " reaches the goal");
  std::vector<std::uint32_t> path;
  for (std::uint32_t x = *hit; x != *start; x = parent[x]) path.push_back(x);
  path.push_back(*start);
  std::reverse(path.begin(), path.end());
  for (std::size_t s = 1; s < path.size(); ++s) {
    const Coloring& a = space.coloring(path[s - 1]);
    const Coloring& b = space.coloring(path[s]);
    for (EdgeId e = 0; e < a.size(); ++e)
      if (a[e] != b[e]) {
        const EdgeId ge = p.edge_map[e];
        if (ge == Placement::kNoEdge) throw ReductionError("internal move touches a dropped edge");
        steps.push_back({ge, b[e]});
        f[ge] = b[e];
      }
  }
}

// Recolors the connector `slot` of the link placement (and the matching slot
// of the vertex placement) to `color`, first steering both gadgets into a
// coloring where that single move is proper.
void move_connector(const ReductionArtifact& art, std::size_t e, std::size_t side, Color color, Coloring& f,
                    std::vector<Recolor>& steps) {
  const Placement& lp = art.links[e];
  const NclEdge& ed = art.machine.edges()[e];
  const Placement& vp = art.vertices[side == 0 ? ed.u : ed.v];
  const std::size_t vslot = std::find(vp.ncl_edges.begin(), vp.ncl_edges.end(), e) - vp.ncl_edges.begin();
  for (auto [p, slot] : {std::pair{&vp, vslot}, std::pair{&lp, side}}) {
    const ColoringSpace& space = *p->source->space;
    const EdgeId be = p->source->gadget.boundary[slot];
    local_move(art, *p, f, steps, [&](const Coloring& local) {
      Coloring moved = local;
      moved[be] = color;
      return space.find(moved).has_value();
    });
  }
  const EdgeId c = side == 0 ? art.connectors[e].first : art.connectors[e].second;
  steps.push_back({c, color});
  f[c] = color;
}

}  // namespace

std::vector<Recolor> lift_witness(const ReductionArtifact& art, const NclWitness& w) {
  std::vector<Recolor> steps;
  if (w.empty()) return steps;
  try {
    check_witness(art.machine, w);
  } catch (const NclError& ex) {
    throw ReductionError(std::string("lift_witness: ") + ex.what());
  }
  Coloring f = embed_configuration(art, w.front());
  for (std::size_t i = 1; i < w.size(); ++i) {
    const std::size_t e = *single_flip(w[i - 1], w[i]);
    // The end the edge currently points at turns outward first, passing
    // through the neutral state, then the other end turns inward.
    const std::size_t from = w[i - 1][e] == Dir::ToU ? 0 : 1;
    move_connector(art, e, from, kOutward, f, steps);
    move_connector(art, e, 1 - from, kInward, f, steps);
  }
  for (const auto* group : {&art.links, &art.vertices})
    for (const Placement& p : *group) {
      const std::uint32_t target = p.source->canonical.at(assignment_of(p, f));
      const Coloring& want = p.source->space->coloring(target);
      local_move(art, p, f, steps, [&](const Coloring& local) { return local == want; });
    }
  return steps;
}

NclWitness project_witness(const ReductionArtifact& art, const Coloring& f0, std::span<const Recolor> steps) {
  const ColoredMultigraph& g = art.graph;
  if (f0.size() != g.num_edges() || !is_proper(g, f0))
    throw ReductionError("project_witness needs a proper starting coloring");
  Orientation strict = project_coloring(art, f0);
  if (!is_strict(strict)) throw ReductionError("starting coloring has neutral NCL edges");

  std::vector<std::uint64_t> used(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    used[g.edge(e).u] |= std::uint64_t{1} << f0[e];
    used[g.edge(e).v] |= std::uint64_t{1} << f0[e];
  }
  std::vector<std::size_t> ncl_of(g.num_edges(), SIZE_MAX);
  for (std::size_t e = 0; e < art.connectors.size(); ++e)
    ncl_of[art.connectors[e].first] = ncl_of[art.connectors[e].second] = e;

  Coloring f = f0;
  NclWitness out{strict};
  for (std::size_t s = 0; s < steps.size(); ++s) {
    const Recolor& r = steps[s];
    const std::string where = "step " + std::to_string(s);
    if (r.edge >= g.num_edges()) throw ReductionError(where + " names an unknown edge");
    const Edge& ed = g.edge(r.edge);
    if (r.color == f[r.edge]) throw ReductionError(where + " does not change a color");
    if (!std::binary_search(ed.list.begin(), ed.list.end(), r.color))
      throw ReductionError(where + " uses a color outside the edge's list");
    const std::uint64_t bit_old = std::uint64_t{1} << f[r.edge], bit_new = std::uint64_t{1} << r.color;
    if (((used[ed.u] | used[ed.v]) & bit_new) != 0) throw ReductionError(where + " makes the coloring improper");
    used[ed.u] = (used[ed.u] & ~bit_old) | bit_new;
    used[ed.v] = (used[ed.v] & ~bit_old) | bit_new;
    f[r.edge] = r.color;
    const std::size_t e = ncl_of[r.edge];
    if (e == SIZE_MAX) continue;
    const Color cu = f[art.connectors[e].first], cv = f[art.connectors[e].second];
    if ((cu != kInward && cu != kOutward) || (cv != kInward && cv != kOutward) || (cu == kInward && cv == kInward))
      throw ReductionError(where + " leaves the connectors of NCL edge " + art.machine.edges()[e].id +
                           " in an impossible state");
    if (cu == kOutward && cv == kOutward) continue;  // neutral: keep the previous direction
    const Dir d = cu == kInward ? Dir::ToU : Dir::ToV;
    if (d == strict[e]) continue;
    strict[e] = d;
    out.push_back(strict);
  }
  try {
    check_witness(art.machine, out);
  } catch (const NclError& ex) {
    throw ReductionError(std::string("projected witness is invalid: ") + ex.what());
  }
  return out;
}

WalkReport random_walk(const ReductionArtifact& art, const Coloring& start, std::uint64_t steps,
                       std::uint64_t seed) {
  const ColoredMultigraph& g = art.graph;
  if (!is_proper(g, start)) throw ReductionError("random walk needs a proper starting coloring");
  std::mt19937_64 rng(seed);
  std::vector<std::uint64_t> used(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    used[g.edge(e).u] |= std::uint64_t{1} << start[e];
    used[g.edge(e).v] |= std::uint64_t{1} << start[e];
  }
  Coloring f = start;
  WalkReport rep;
  std::vector<Recolor> moves;
  for (; rep.steps < steps; ++rep.steps) {
    moves.clear();
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const Edge& ed = g.edge(e);
      const std::uint64_t blocked = used[ed.u] | used[ed.v];
      for (Color c : ed.list)
        if (!((blocked >> c) & 1)) moves.push_back({e, c});
    }
    if (moves.empty()) break;
    const Recolor r = moves[std::uniform_int_distribution<std::size_t>(0, moves.size() - 1)(rng)];
    const Edge& ed = g.edge(r.edge);
    const std::uint64_t bit_old = std::uint64_t{1} << f[r.edge], bit_new = std::uint64_t{1} << r.color;
    used[ed.u] = (used[ed.u] & ~bit_old) | bit_new;
    used[ed.v] = (used[ed.v] & ~bit_old) | bit_new;
    f[r.edge] = r.color;
    try {
      if (!is_strict(project_coloring(art, f))) ++rep.neutral_states;
    } catch (const ReductionError& ex) {
      rep.sound = false;
      rep.failure = "after " + std::to_string(rep.steps + 1) + " steps: " + ex.what();
      ++rep.steps;
      break;
    }
  }
  return rep;
}

SizeReport size_report(const ReductionArtifact& art) {
  SizeReport r;
  r.vertices = art.graph.num_vertices();
  r.edges = art.graph.num_edges();
  const std::set<VertexId> centers(art.color_gadget_centers.begin(), art.color_gadget_centers.end());
  std::vector<std::size_t> deg(art.graph.num_vertices(), 0);
  for (const Edge& e : art.graph.edges()) ++deg[e.u], ++deg[e.v];
  for (VertexId v = 0; v < deg.size(); ++v) {
    r.max_degree = std::max(r.max_degree, deg[v]);
    if (!centers.count(v)) r.max_degree_outside_color_gadgets = std::max(r.max_degree_outside_color_gadgets, deg[v]);
  }
  for (const auto* group : {&art.links, &art.vertices})
    for (const Placement& p : *group) r.gadget_edges[to_string(p.kind)] = p.source->gadget.graph.num_edges();
  return r;
}

}  // namespace ecr
