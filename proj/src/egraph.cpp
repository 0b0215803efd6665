#include "ecr/egraph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "ecr/state_set.hpp"
#include "ecr/union_find.hpp"

namespace ecr {

namespace {

std::uint64_t bit(Color c) { return std::uint64_t{1} << c; }

// Used-color mask per vertex; assumes a proper coloring.
std::vector<std::uint64_t> vertex_masks(const ColoredMultigraph& g, std::span<const Color> f) {
  std::vector<std::uint64_t> used(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    used[g.edge(e).u] |= bit(f[e]);
    used[g.edge(e).v] |= bit(f[e]);
  }
  return used;
}

bool in_list(const Edge& e, Color c) { return std::binary_search(e.list.begin(), e.list.end(), c); }

// Calls `emit(e, c)` for every legal single recolor of proper `f`.
template <typename Emit>
void for_each_move(const ColoredMultigraph& g, std::span<const Color> f,
                   const std::vector<std::uint64_t>& used, const Recolorable& recolorable,
                   Emit&& emit) {
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (!recolorable.empty() && !recolorable[e]) continue;
    const Edge& ed = g.edge(e);
    const std::uint64_t blocked = used[ed.u] | used[ed.v];
    for (Color c : ed.list) {
      if (c == f[e] || (blocked & bit(c))) continue;
      emit(e, c);
    }
  }
}

void check_recolorable(const ColoredMultigraph& g, const Recolorable& r) {
  if (!r.empty() && r.size() != g.num_edges())
    throw GraphError("recolorable mask size does not match edge count");
}

}  // namespace

ColoredMultigraph::ColoredMultigraph(int k) { set_k(k); }

void ColoredMultigraph::set_k(int k) {
  if (k < 0 || k > kMaxColors) throw GraphError("color count out of range: " + std::to_string(k));
  k_ = k;
}

VertexId ColoredMultigraph::add_vertex(std::string name) {
  const auto id = static_cast<VertexId>(vertex_names_.size());
  if (name.empty()) name = "v" + std::to_string(id);
  vertex_names_.push_back(std::move(name));
  return id;
}

EdgeId ColoredMultigraph::add_edge(VertexId u, VertexId v, std::vector<Color> list,
                                   std::string name) {
  if (u >= num_vertices() || v >= num_vertices()) throw GraphError("edge endpoint out of range");
  if (u == v) throw GraphError("loops are not allowed (vertex " + vertex_names_[u] + ")");
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
  const auto id = static_cast<EdgeId>(edges_.size());
  if (name.empty()) name = "e" + std::to_string(id);
  edges_.push_back(Edge{u, v, std::move(list), false, std::move(name)});
  return id;
}

EdgeId ColoredMultigraph::add_frozen_edge(VertexId u, VertexId v, Color c, std::string name) {
  const EdgeId id = add_edge(u, v, {c}, std::move(name));
  edges_[id].frozen = true;
  return id;
}

void ColoredMultigraph::set_list(EdgeId e, std::vector<Color> list) {
  std::sort(list.begin(), list.end());
  list.erase(std::unique(list.begin(), list.end()), list.end());
  Edge& ed = edges_.at(e);
  if (ed.frozen && list != ed.list) throw GraphError("cannot change the list of frozen edge " + ed.name);
  ed.list = std::move(list);
}

std::optional<VertexId> ColoredMultigraph::find_vertex(const std::string& name) const {
  for (VertexId v = 0; v < vertex_names_.size(); ++v)
    if (vertex_names_[v] == name) return v;
  return std::nullopt;
}

std::optional<EdgeId> ColoredMultigraph::find_edge(const std::string& name) const {
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (edges_[e].name == name) return e;
  return std::nullopt;
}

std::vector<EdgeId> ColoredMultigraph::incident(VertexId v) const {
  std::vector<EdgeId> out;
  for (EdgeId e = 0; e < edges_.size(); ++e)
    if (edges_[e].u == v || edges_[e].v == v) out.push_back(e);
  return out;
}

std::size_t ColoredMultigraph::degree(VertexId v) const { return incident(v).size(); }

std::size_t ColoredMultigraph::max_degree() const {
  std::vector<std::size_t> deg(num_vertices(), 0);
  for (const Edge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg.empty() ? 0 : *std::max_element(deg.begin(), deg.end());
}

std::vector<std::vector<EdgeId>> ColoredMultigraph::edge_adjacency() const {
  std::vector<std::vector<EdgeId>> at(num_vertices());
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    at[edges_[e].u].push_back(e);
    at[edges_[e].v].push_back(e);
  }
  std::vector<std::vector<EdgeId>> adj(edges_.size());
  for (EdgeId e = 0; e < edges_.size(); ++e) {
    for (VertexId x : {edges_[e].u, edges_[e].v})
      for (EdgeId o : at[x])
        if (o != e) adj[e].push_back(o);
    std::sort(adj[e].begin(), adj[e].end());
    adj[e].erase(std::unique(adj[e].begin(), adj[e].end()), adj[e].end());
  }
  return adj;
}

void ColoredMultigraph::validate() const {
  for (const Edge& e : edges_) {
    if (e.list.empty()) throw GraphError("edge " + e.name + " has an empty list");
    if (e.list.front() < 1 || e.list.back() > k_)
      throw GraphError("edge " + e.name + " has a color outside 1.." + std::to_string(k_));
    if (e.frozen && e.list.size() != 1) throw GraphError("frozen edge " + e.name + " must have one color");
  }
}

void require_total(const ColoredMultigraph& g, std::span<const Color> f) {
  if (f.size() != g.num_edges())
    throw GraphError("coloring covers " + std::to_string(f.size()) + " edges, graph has " +
                     std::to_string(g.num_edges()));
}

bool is_proper(const ColoredMultigraph& g, std::span<const Color> f) {
  require_total(g, f);
  std::vector<std::uint64_t> used(g.num_vertices(), 0);
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (f[e] > kMaxColors || !in_list(ed, f[e])) return false;
    if ((used[ed.u] | used[ed.v]) & bit(f[e])) return false;
    used[ed.u] |= bit(f[e]);
    used[ed.v] |= bit(f[e]);
  }
  return true;
}

std::vector<Coloring> coloring_neighbors(const ColoredMultigraph& g, const Coloring& f,
                                         const Recolorable& recolorable) {
  check_recolorable(g, recolorable);
  if (!is_proper(g, f)) throw GraphError("coloring_neighbors: input coloring is not proper");
  std::vector<Coloring> out;
  const auto used = vertex_masks(g, f);
  for_each_move(g, f, used, recolorable, [&](EdgeId e, Color c) {
    out.push_back(f);
    out.back()[e] = c;
  });
  return out;
}

std::uint64_t for_each_coloring(const ColoredMultigraph& g,
                                const std::function<bool(const Coloring&)>& visit) {
  g.validate();
  const std::size_t m = g.num_edges();
  Coloring f(m, 0);
  std::vector<std::uint64_t> used(g.num_vertices(), 0);
  std::vector<std::size_t> pos(m, 0);  // next list position to try per level
  std::uint64_t count = 0;
  if (m == 0) {
    visit(f);
    return 1;
  }
  // Single-color edges go first so that they prune everything after them.
  std::vector<EdgeId> order(m);
  for (EdgeId e = 0; e < m; ++e) order[e] = e;
  std::stable_partition(order.begin(), order.end(), [&](EdgeId e) { return g.edge(e).list.size() == 1; });
  std::size_t i = 0;
  pos[0] = 0;
  while (true) {
    const EdgeId e = order[i];
    const Edge& ed = g.edge(e);
    if (f[e] != 0) {  // undo the previous choice at this level
      used[ed.u] &= ~bit(f[e]);
      used[ed.v] &= ~bit(f[e]);
      f[e] = 0;
    }
    const std::uint64_t blocked = used[ed.u] | used[ed.v];
    bool placed = false;
    while (pos[i] < ed.list.size()) {
      const Color c = ed.list[pos[i]++];
      if (blocked & bit(c)) continue;
      f[e] = c;
      used[ed.u] |= bit(c);
      used[ed.v] |= bit(c);
      placed = true;
      break;
    }
    if (!placed) {
      if (i == 0) break;
      --i;
      continue;
    }
    if (i + 1 == m) {
      ++count;
      if (!visit(f)) return count;
      continue;  // try next color at the last level
    }
    ++i;
    pos[i] = 0;
  }
  return count;
}

Census enumerate_colorings(const ColoredMultigraph& g, std::uint64_t limit) {
  Census out;
  bool over = false;
  for_each_coloring(g, [&](const Coloring& f) {
    if (out.count == limit) {
      over = true;
      return false;
    }
    ++out.count;
    out.colorings.push_back(f);
    return true;
  });
  if (over) throw BudgetExceeded("enumeration exceeded " + std::to_string(limit) + " colorings");
  return out;
}

std::uint64_t count_colorings(const ColoredMultigraph& g) {
  return for_each_coloring(g, [](const Coloring&) { return true; });
}

const char* to_string(Reachability r) {
  switch (r) {
    case Reachability::Reachable: return "REACHABLE";
    case Reachability::Unreachable: return "UNREACHABLE";
    case Reachability::BudgetExceeded: return "BUDGET_EXCEEDED";
  }
  return "?";
}

namespace {

struct SearchOutcome {
  bool found = false;
  bool exhausted_budget = false;
  std::uint32_t target = StateSet::kNone;
};

// Breadth-first exploration from f0; `stop_at` (may be null) ends the search
// early. Parent links are kept when `parents` is non-null.
SearchOutcome bfs(const ColoredMultigraph& g, const Coloring& f0, const Coloring* stop_at,
                  const Budget& budget, const Recolorable& recolorable, StateSet& seen,
                  const StateCodec& codec, std::vector<std::uint32_t>* parents,
                  std::vector<Recolor>* moves) {
  const std::size_t w = codec.words();
  std::vector<std::uint64_t> buf(w), goal(w);
  if (stop_at) codec.pack(*stop_at, goal.data());
  codec.pack(f0, buf.data());
  seen.insert(buf.data());
  if (parents) {
    parents->push_back(StateSet::kNone);
    moves->push_back({});
  }
  SearchOutcome out;
  Coloring f(g.num_edges());
  const std::size_t per_state_extra = parents ? sizeof(std::uint32_t) + sizeof(Recolor) : 0;
  for (std::uint32_t head = 0; head < seen.size(); ++head) {
    codec.unpack(seen.state(head), f.data());
    const auto used = vertex_masks(g, f);
    bool over = false;
    for_each_move(g, f, used, recolorable, [&](EdgeId e, Color c) {
      if (out.found || over) return;
      const Color old = f[e];
      f[e] = c;
      codec.pack(f, buf.data());
      f[e] = old;
      auto [idx, inserted] = seen.insert(buf.data());
      if (!inserted) return;
      if (parents) {
        parents->push_back(head);
        moves->push_back({e, c});
      }
      if (stop_at && std::equal(buf.begin(), buf.end(), goal.begin())) {
        out.found = true;
        out.target = idx;
        return;
      }
      if (seen.size() > budget.max_states ||
          seen.bytes() + seen.size() * per_state_extra > budget.max_bytes)
        over = true;
    });
    if (out.found) return out;
    if (over) {
      out.exhausted_budget = true;
      return out;
    }
  }
  return out;
}

}  // namespace

ReachResult reachable(const ColoredMultigraph& g, const Coloring& f0, const Coloring& fr,
                      const Budget& budget, bool want_witness, const Recolorable& recolorable) {
  check_recolorable(g, recolorable);
  if (!is_proper(g, f0)) throw GraphError("reachable: initial coloring is not proper");
  if (!is_proper(g, fr)) throw GraphError("reachable: target coloring is not proper");
  ReachResult res;
  if (f0 == fr) {
    res.status = Reachability::Reachable;
    res.visited = 1;
    return res;
  }
  const StateCodec codec(g);
  StateSet seen(codec.words());
  std::vector<std::uint32_t> parents;
  std::vector<Recolor> moves;
  const auto out = bfs(g, f0, &fr, budget, recolorable, seen, codec,
                       want_witness ? &parents : nullptr, want_witness ? &moves : nullptr);
  res.visited = seen.size();
  if (out.found) {
    res.status = Reachability::Reachable;
    if (want_witness) {
      for (std::uint32_t s = out.target; parents[s] != StateSet::kNone; s = parents[s])
        res.witness.push_back(moves[s]);
      std::reverse(res.witness.begin(), res.witness.end());
    }
  } else {
    res.status = out.exhausted_budget ? Reachability::BudgetExceeded : Reachability::Unreachable;
  }
  return res;
}

std::vector<Coloring> reachable_set(const ColoredMultigraph& g, const Coloring& f0,
                                    const Budget& budget, const Recolorable& recolorable) {
  check_recolorable(g, recolorable);
  if (!is_proper(g, f0)) throw GraphError("reachable_set: initial coloring is not proper");
  const StateCodec codec(g);
  StateSet seen(codec.words());
  const auto out = bfs(g, f0, nullptr, budget, recolorable, seen, codec, nullptr, nullptr);
  if (out.exhausted_budget)
    throw BudgetExceeded("reachable_set exceeded " + std::to_string(budget.max_states) + " states");
  std::vector<Coloring> res(seen.size(), Coloring(g.num_edges()));
  for (std::uint32_t i = 0; i < seen.size(); ++i) codec.unpack(seen.state(i), res[i].data());
  return res;
}

Coloring replay(const ColoredMultigraph& g, Coloring f, std::span<const Recolor> steps) {
  if (!is_proper(g, f)) throw GraphError("replay: initial coloring is not proper");
  for (std::size_t i = 0; i < steps.size(); ++i) {
    const Recolor& s = steps[i];
    if (s.edge >= g.num_edges()) throw GraphError("replay: step " + std::to_string(i) + " names an unknown edge");
    if (f[s.edge] == s.color)
      throw GraphError("replay: step " + std::to_string(i) + " does not change edge " + g.edge(s.edge).name);
    f[s.edge] = s.color;
    if (!is_proper(g, f))
      throw GraphError("replay: step " + std::to_string(i) + " produces an improper coloring");
  }
  return f;
}

std::size_t ReconfigurationGraph::num_components() const {
  UnionFind uf(nodes.size());
  std::size_t comps = nodes.size();
  for (auto [a, b] : edges)
    if (uf.unite(a, b)) --comps;
  return comps;
}

ReconfigurationGraph reconfiguration_graph(const ColoredMultigraph& g,
                                           const Recolorable& recolorable,
                                           std::uint64_t max_nodes) {
  check_recolorable(g, recolorable);
  ReconfigurationGraph rg;
  rg.nodes = enumerate_colorings(g, max_nodes).colorings;
  const StateCodec codec(g);
  StateSet index(codec.words());
  std::vector<std::uint64_t> buf(codec.words());
  for (const Coloring& f : rg.nodes) {
    codec.pack(f, buf.data());
    index.insert(buf.data());
  }
  for (std::uint32_t i = 0; i < rg.nodes.size(); ++i) {
    Coloring f = rg.nodes[i];
    const auto used = vertex_masks(g, f);
    for_each_move(g, f, used, recolorable, [&](EdgeId e, Color c) {
      const Color old = f[e];
      f[e] = c;
      codec.pack(f, buf.data());
      f[e] = old;
      const std::uint32_t j = index.find(buf.data());
      if (j != StateSet::kNone && i < j) rg.edges.emplace_back(i, j);
    });
  }
  std::sort(rg.edges.begin(), rg.edges.end());
  return rg;
}

std::string coloring_label(std::span<const Color> f) {
  const bool wide = std::any_of(f.begin(), f.end(), [](Color c) { return c > 9; });
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (wide && i) s += '.';
    s += std::to_string(int(f[i]));
  }
  return s;
}

std::string to_dot(const ReconfigurationGraph& rg, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (std::size_t i = 0; i < rg.nodes.size(); ++i)
    os << "  n" << i << " [label=\"" << coloring_label(rg.nodes[i]) << "\"];\n";
  for (auto [a, b] : rg.edges) os << "  n" << a << " -- n" << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace ecr
