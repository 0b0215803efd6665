#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "ecr/egraph.hpp"
#include "ecr/gadget.hpp"
#include "ecr/state_set.hpp"
#include "oracles.hpp"

using namespace ecr;

namespace {

// Three-edge path with the coloring sequence f0 -> f1 -> f2.
ColoredMultigraph fig1_path() {
  ColoredMultigraph g(3);
  for (int i = 0; i < 4; ++i) g.add_vertex("v" + std::to_string(i));
  g.add_edge(0, 1, {1, 2}, "e1");
  g.add_edge(1, 2, {2, 3}, "e2");
  g.add_edge(2, 3, {1, 3}, "e3");
  return g;
}

ColoredMultigraph two_adjacent() {
  ColoredMultigraph g(2);
  for (int i = 0; i < 3; ++i) g.add_vertex();
  g.add_edge(0, 1, {1, 2});
  g.add_edge(1, 2, {1, 2});
  return g;
}

ColoredMultigraph random_graph(std::mt19937& rng, int nv, int ne, int k) {
  ColoredMultigraph g(k);
  for (int i = 0; i < nv; ++i) g.add_vertex();
  std::uniform_int_distribution<int> pick(0, nv - 1);
  for (int i = 0; i < ne; ++i) {
    int u = pick(rng), v = pick(rng);
    while (v == u) v = pick(rng);
    std::vector<Color> list;
    for (int c = 1; c <= k; ++c)
      if (rng() % 3 != 0) list.push_back(static_cast<Color>(c));
    if (list.empty()) list.push_back(static_cast<Color>(1 + rng() % k));
    g.add_edge(u, v, list);
  }
  return g;
}

ColoredMultigraph reversed_edges(const ColoredMultigraph& g) {
  ColoredMultigraph r(g.k());
  for (VertexId v = 0; v < g.num_vertices(); ++v) r.add_vertex(g.vertex_name(v));
  for (EdgeId e = g.num_edges(); e-- > 0;) r.add_edge(g.edge(e).u, g.edge(e).v, g.edge(e).list);
  return r;
}

}  // namespace

TEST_CASE("is_proper basics") {
  ColoredMultigraph one(2);
  one.add_vertex();
  one.add_vertex();
  one.add_edge(0, 1, {1, 2});
  CHECK(is_proper(one, Coloring{1}));
  CHECK_FALSE(is_proper(one, Coloring{3}));
  CHECK_FALSE(is_proper(two_adjacent(), Coloring{1, 1}));
  CHECK(is_proper(two_adjacent(), Coloring{1, 2}));
  CHECK_THROWS_AS(require_total(one, Coloring{}), GraphError);
}

TEST_CASE("three-edge path: f0, f1, f2 are proper and f0 reaches f2 in two steps") {
  const auto g = fig1_path();
  const Coloring f0{1, 2, 1}, f1{1, 3, 1}, f2{2, 3, 1};
  CHECK(is_proper(g, f0));
  CHECK(is_proper(g, f1));
  CHECK(is_proper(g, f2));
  const auto nb = coloring_neighbors(g, f0);
  CHECK(std::find(nb.begin(), nb.end(), f1) != nb.end());
  const auto r = reachable(g, f0, f2);
  REQUIRE(r.status == Reachability::Reachable);
  CHECK(r.witness.size() == 2);
  CHECK(replay(g, f0, r.witness) == f2);
}

TEST_CASE("coloring neighbors") {
  ColoredMultigraph one(2);
  one.add_vertex();
  one.add_vertex();
  one.add_edge(0, 1, {1, 2});
  CHECK(coloring_neighbors(one, Coloring{1}) == std::vector<Coloring>{{2}});
  CHECK(coloring_neighbors(two_adjacent(), Coloring{1, 2}).empty());
}

TEST_CASE("parallel edges must differ") {
  ColoredMultigraph g(2);
  g.add_vertex();
  g.add_vertex();
  g.add_edge(0, 1, {1, 2});
  g.add_edge(0, 1, {1, 2});
  CHECK_FALSE(is_proper(g, Coloring{1, 1}));
  CHECK(count_colorings(g) == 2);
  CHECK_THROWS_AS(g.add_edge(0, 0, {1}), GraphError);
}

TEST_CASE("triangle with two colors has no colorings") {
  ColoredMultigraph g(2);
  for (int i = 0; i < 3; ++i) g.add_vertex();
  g.add_edge(0, 1, {1, 2});
  g.add_edge(1, 2, {1, 2});
  g.add_edge(2, 0, {1, 2});
  CHECK(count_colorings(g) == 0);
}

TEST_CASE("enumeration matches the odometer oracle and is order independent") {
  std::mt19937 rng(7);
  for (int t = 0; t < 40; ++t) {
    const auto g = random_graph(rng, 5, 6, 4);
    const auto brute = oracle::all_colorings(g);
    const auto census = enumerate_colorings(g);
    CHECK(census.count == brute.size());
    std::set<Coloring> a(census.colorings.begin(), census.colorings.end());
    std::set<Coloring> b(brute.begin(), brute.end());
    CHECK(a == b);
    CHECK(count_colorings(reversed_edges(g)) == census.count);
  }
}

TEST_CASE("enumeration budget") {
  ColoredMultigraph g(4);
  for (int i = 0; i < 8; ++i) g.add_vertex();
  for (int i = 0; i < 4; ++i) g.add_edge(2 * i, 2 * i + 1, {1, 2, 3, 4});
  CHECK(count_colorings(g) == 256);
  CHECK_THROWS_AS(enumerate_colorings(g, 100), BudgetExceeded);
}

TEST_CASE("reachability examples") {
  const auto g = two_adjacent();
  CHECK(reachable(g, Coloring{1, 2}, Coloring{2, 1}).status == Reachability::Unreachable);
  const auto same = reachable(g, Coloring{1, 2}, Coloring{1, 2});
  CHECK(same.status == Reachability::Reachable);
  CHECK(same.witness.empty());

  ColoredMultigraph path(4);
  for (int i = 0; i < 7; ++i) path.add_vertex();
  for (int i = 0; i < 6; ++i) path.add_edge(i, i + 1, {1, 2, 3, 4});
  Budget tiny;
  tiny.max_states = 3;
  CHECK(reachable(path, Coloring{1, 2, 1, 2, 1, 2}, Coloring{2, 1, 2, 1, 2, 1}, tiny).status ==
        Reachability::BudgetExceeded);
}

TEST_CASE("reachability agrees with reconfiguration graph components") {
  std::mt19937 rng(11);
  for (int t = 0; t < 25; ++t) {
    const auto g = random_graph(rng, 5, 5, 3);
    const auto rg = reconfiguration_graph(g);
    if (rg.nodes.size() < 2) continue;
    std::vector<int> comp(rg.nodes.size(), -1);
    std::vector<std::vector<std::uint32_t>> adj(rg.nodes.size());
    for (auto [a, b] : rg.edges) {
      adj[a].push_back(b);
      adj[b].push_back(a);
    }
    int nc = 0;
    for (std::size_t s = 0; s < comp.size(); ++s) {
      if (comp[s] >= 0) continue;
      std::vector<std::uint32_t> st{static_cast<std::uint32_t>(s)};
      comp[s] = nc;
      while (!st.empty()) {
        auto x = st.back();
        st.pop_back();
        for (auto y : adj[x])
          if (comp[y] < 0) comp[y] = nc, st.push_back(y);
      }
      ++nc;
    }
    CHECK(rg.num_components() == static_cast<std::size_t>(nc));
    for (std::size_t i = 0; i < rg.nodes.size(); i += 3)
      for (std::size_t j = 0; j < rg.nodes.size(); j += 4) {
        const auto r = reachable(g, rg.nodes[i], rg.nodes[j]);
        CHECK((r.status == Reachability::Reachable) == (comp[i] == comp[j]));
        if (r.status == Reachability::Reachable) CHECK(replay(g, rg.nodes[i], r.witness) == rg.nodes[j]);
      }
  }
}

TEST_CASE("coloring neighbors are symmetric") {
  std::mt19937 rng(3);
  for (int t = 0; t < 20; ++t) {
    const auto g = random_graph(rng, 4, 5, 4);
    for (const auto& f : oracle::all_colorings(g))
      for (const auto& n : coloring_neighbors(g, f)) {
        const auto back = coloring_neighbors(g, n);
        CHECK(std::find(back.begin(), back.end(), f) != back.end());
      }
  }
}

TEST_CASE("single edge with three colors gives K3") {
  ColoredMultigraph g(3);
  g.add_vertex();
  g.add_vertex();
  g.add_edge(0, 1, {1, 2, 3});
  const auto rg = reconfiguration_graph(g);
  CHECK(rg.nodes.size() == 3);
  CHECK(rg.edges.size() == 3);
  CHECK(to_dot(rg).find("n0 -- n1") != std::string::npos);
}

TEST_CASE("frozen color-gadget star never moves") {
  ColoredMultigraph g(5);
  const VertexId a = g.add_vertex("a");
  const VertexId b = g.add_vertex("b");
  g.add_edge(a, b, {1, 2, 3, 4, 5}, "free");
  const ColorGadget cg = make_color_gadget(g, 5, {2, 3}, a);
  const auto rg = reconfiguration_graph(g);
  CHECK(rg.nodes.size() == 3);
  for (const auto& f : rg.nodes)
    for (Color c = 1; c <= 5; ++c) CHECK(f[cg.edges[c - 1]] == c);
  const auto r = reachable(g, rg.nodes.front(), rg.nodes.back());
  REQUIRE(r.status == Reachability::Reachable);
  for (const Recolor& s : r.witness) CHECK(s.edge == 0);
}

TEST_CASE("replay rejects improper or idle steps") {
  const auto g = fig1_path();
  CHECK_THROWS_AS(replay(g, Coloring{1, 2, 1}, std::vector<Recolor>{{1, 1}}), GraphError);
  CHECK_THROWS_AS(replay(g, Coloring{1, 2, 1}, std::vector<Recolor>{{0, 1}}), GraphError);
}

TEST_CASE("state codec round trip and set") {
  std::mt19937 rng(5);
  const auto g = random_graph(rng, 6, 9, 5);
  const auto all = oracle::all_colorings(g);
  StateCodec codec(g);
  StateSet set(codec.words());
  std::vector<std::uint64_t> buf(codec.words());
  for (const auto& f : all) {
    codec.pack(f, buf.data());
    Coloring back(f.size());
    codec.unpack(buf.data(), back.data());
    CHECK(back == f);
    CHECK(set.insert(buf.data()).second);
  }
  CHECK(set.size() == all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    codec.pack(all[i], buf.data());
    CHECK(set.find(buf.data()) == i);
    CHECK_FALSE(set.insert(buf.data()).second);
  }
}

TEST_CASE("graph validation") {
  ColoredMultigraph g(3);
  g.add_vertex();
  g.add_vertex();
  CHECK_THROWS_AS(g.add_edge(0, 7, {1}), GraphError);
  const EdgeId e = g.add_edge(0, 1, {1, 2});
  CHECK_NOTHROW(g.validate());
  g.set_list(e, {});
  CHECK_THROWS_AS(g.validate(), GraphError);
  g.set_list(e, {4});
  CHECK_THROWS_AS(g.validate(), GraphError);
}
