#include "ecr/ncl.hpp"

#include <algorithm>
#include <deque>
#include <unordered_map>

namespace ecr {

const char* to_string(VertexKind k) { return k == VertexKind::And ? "AND" : "OR"; }

std::size_t NclMachine::add_vertex(std::string id, VertexKind kind) {
  if (find_vertex(id)) throw NclError("duplicate NCL vertex " + id);
  vertices_.push_back({std::move(id), kind});
  return vertices_.size() - 1;
}

std::size_t NclMachine::add_edge(std::string id, std::size_t u, std::size_t v, int weight) {
  if (u >= vertices_.size() || v >= vertices_.size()) throw NclError("NCL edge endpoint out of range");
  if (find_edge(id)) throw NclError("duplicate NCL edge " + id);
  edges_.push_back({std::move(id), u, v, weight});
  return edges_.size() - 1;
}

std::optional<std::size_t> NclMachine::find_vertex(const std::string& id) const {
  for (std::size_t i = 0; i < vertices_.size(); ++i)
    if (vertices_[i].id == id) return i;
  return std::nullopt;
}

std::optional<std::size_t> NclMachine::find_edge(const std::string& id) const {
  for (std::size_t i = 0; i < edges_.size(); ++i)
    if (edges_[i].id == id) return i;
  return std::nullopt;
}

std::vector<std::size_t> NclMachine::incident(std::size_t v) const {
  std::vector<std::size_t> out;
  for (std::size_t e = 0; e < edges_.size(); ++e)
    if (edges_[e].u == v || edges_[e].v == v) out.push_back(e);
  return out;
}

std::vector<Violation> validate_machine(const NclMachine& m) {
  std::vector<Violation> out;
  for (const NclEdge& e : m.edges()) {
    if (e.weight != 1 && e.weight != 2)
      out.push_back({"", "edge " + e.id + " has weight " + std::to_string(e.weight) + " (must be 1 or 2)"});
    if (e.u == e.v) out.push_back({m.vertices()[e.u].id, "edge " + e.id + " is a loop"});
  }
  for (std::size_t v = 0; v < m.num_vertices(); ++v) {
    const NclVertex& vx = m.vertices()[v];
    const auto inc = m.incident(v);
    if (inc.size() != 3) {
      out.push_back({vx.id, "degree " + std::to_string(inc.size()) + " != 3"});
      continue;
    }
    std::vector<int> w;
    for (std::size_t e : inc) w.push_back(m.edges()[e].weight);
    std::sort(w.begin(), w.end());
    const std::vector<int> want = vx.kind == VertexKind::And ? std::vector<int>{1, 1, 2} : std::vector<int>{2, 2, 2};
    if (w != want)
      out.push_back({vx.id, std::string(to_string(vx.kind)) + " vertex needs weights " +
                                (vx.kind == VertexKind::And ? "{1,1,2}" : "{2,2,2}")});
  }
  return out;
}

bool is_strict(const Orientation& o) {
  return std::none_of(o.begin(), o.end(), [](Dir d) { return d == Dir::Neutral; });
}

std::vector<int> in_weights(const NclMachine& m, const Orientation& o) {
  if (o.size() != m.num_edges())
    throw NclError("orientation has " + std::to_string(o.size()) + " entries, machine has " +
                   std::to_string(m.num_edges()) + " edges");
  std::vector<int> in(m.num_vertices(), 0);
  for (std::size_t e = 0; e < o.size(); ++e) {
    const NclEdge& ed = m.edges()[e];
    if (o[e] == Dir::ToU) in[ed.u] += ed.weight;
    else if (o[e] == Dir::ToV) in[ed.v] += ed.weight;
  }
  return in;
}

bool is_valid_configuration(const NclMachine& m, const Orientation& o) {
  const auto in = in_weights(m, o);
  return std::all_of(in.begin(), in.end(), [](int w) { return w >= 2; });
}

namespace {

Dir reversed(Dir d) { return d == Dir::ToU ? Dir::ToV : Dir::ToU; }

void require_valid_strict(const NclMachine& m, const Orientation& o, const char* what) {
  if (!is_strict(o)) throw NclError(std::string(what) + " has neutral edges");
  if (!is_valid_configuration(m, o)) throw NclError(std::string(what) + " is not a valid configuration");
}

// Bit e set = edge e directed toward its v endpoint.
std::uint64_t encode(const Orientation& o) {
  std::uint64_t x = 0;
  for (std::size_t e = 0; e < o.size(); ++e)
    if (o[e] == Dir::ToV) x |= std::uint64_t{1} << e;
  return x;
}

Orientation decode(std::uint64_t x, std::size_t n) {
  Orientation o(n);
  for (std::size_t e = 0; e < n; ++e) o[e] = (x >> e) & 1 ? Dir::ToV : Dir::ToU;
  return o;
}

}  // namespace

std::vector<Orientation> configuration_neighbors(const NclMachine& m, const Orientation& o) {
  require_valid_strict(m, o, "configuration");
  std::vector<Orientation> out;
  Orientation n = o;
  for (std::size_t e = 0; e < o.size(); ++e) {
    n[e] = reversed(o[e]);
    if (is_valid_configuration(m, n)) out.push_back(n);
    n[e] = o[e];
  }
  return out;
}

NclReachResult ncl_reachable(const NclMachine& m, const Orientation& c0, const Orientation& cr) {
  require_valid_strict(m, c0, "initial configuration");
  require_valid_strict(m, cr, "target configuration");
  if (m.num_edges() > 64) throw NclError("ncl_reachable supports at most 64 edges");
  NclReachResult res;
  const std::uint64_t start = encode(c0), goal = encode(cr);
  std::unordered_map<std::uint64_t, std::uint64_t> parent{{start, start}};
  std::deque<std::uint64_t> queue{start};
  bool found = start == goal;
  while (!queue.empty() && !found) {
    const std::uint64_t cur = queue.front();
    queue.pop_front();
    for (const Orientation& n : configuration_neighbors(m, decode(cur, m.num_edges()))) {
      const std::uint64_t x = encode(n);
      if (!parent.emplace(x, cur).second) continue;
      if (x == goal) {
        found = true;
        break;
      }
      queue.push_back(x);
    }
  }
  res.visited = parent.size();
  res.reachable = found;
  if (found) {
    for (std::uint64_t x = goal;; x = parent[x]) {
      res.witness.push_back(decode(x, m.num_edges()));
      if (x == start) break;
    }
    std::reverse(res.witness.begin(), res.witness.end());
  }
  return res;
}

std::vector<Orientation> enumerate_configurations(const NclMachine& m) {
  if (m.num_edges() > 24) throw NclError("brute-force enumeration limited to 24 edges");
  std::vector<Orientation> out;
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << m.num_edges()); ++x) {
    Orientation o = decode(x, m.num_edges());
    if (is_valid_configuration(m, o)) out.push_back(std::move(o));
  }
  return out;
}

std::optional<std::size_t> single_flip(const Orientation& a, const Orientation& b) {
  if (a.size() != b.size()) return std::nullopt;
  std::optional<std::size_t> at;
  for (std::size_t e = 0; e < a.size(); ++e) {
    if (a[e] == b[e]) continue;
    if (at) return std::nullopt;
    at = e;
  }
  return at;
}

void check_witness(const NclMachine& m, const NclWitness& w) {
  if (w.empty()) throw NclError("empty NCL witness");
  for (std::size_t i = 0; i < w.size(); ++i) {
    require_valid_strict(m, w[i], ("witness step " + std::to_string(i)).c_str());
    if (i > 0 && !single_flip(w[i - 1], w[i]))
      throw NclError("witness steps " + std::to_string(i - 1) + " and " + std::to_string(i) +
                     " do not differ in exactly one edge");
  }
}

namespace machines {

NclMachine triple_or() {
  NclMachine m;
  const auto u = m.add_vertex("u", VertexKind::Or);
  const auto v = m.add_vertex("v", VertexKind::Or);
  m.add_edge("a", u, v, 2);
  m.add_edge("b", u, v, 2);
  m.add_edge("c", u, v, 2);
  return m;
}

NclMachine two_and() {
  NclMachine m;
  const auto u = m.add_vertex("u", VertexKind::And);
  const auto v = m.add_vertex("v", VertexKind::And);
  m.add_edge("a", u, v, 2);
  m.add_edge("b", u, v, 1);
  m.add_edge("c", u, v, 1);
  return m;
}

NclMachine and_or_ladder() {
  NclMachine m;
  const auto a1 = m.add_vertex("a1", VertexKind::And);
  const auto a2 = m.add_vertex("a2", VertexKind::And);
  const auto o1 = m.add_vertex("o1", VertexKind::Or);
  const auto o2 = m.add_vertex("o2", VertexKind::Or);
  m.add_edge("p", a1, a2, 1);
  m.add_edge("q", a1, a2, 1);
  m.add_edge("r", a1, o1, 2);
  m.add_edge("s", a2, o2, 2);
  m.add_edge("t", o1, o2, 2);
  m.add_edge("w", o1, o2, 2);
  return m;
}

NclMachine k4_or() {
  NclMachine m;
  for (const char* id : {"w", "x", "y", "z"}) m.add_vertex(id, VertexKind::Or);
  int n = 0;
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = i + 1; j < 4; ++j) m.add_edge("e" + std::to_string(n++), i, j, 2);
  return m;
}

}  // namespace machines

}  // namespace ecr
