#include <doctest.h>

#include <algorithm>
#include <set>

#include "ecr/reduction.hpp"
#include "oracles.hpp"

using namespace ecr;

namespace {

std::vector<NclMachine> small_machines() {
  return {machines::triple_or(), machines::two_and(), machines::and_or_ladder(), machines::k4_or(),
          oracle::k33_or()};
}

std::vector<Orientation> valid_configs(const NclMachine& m) {
  std::vector<Orientation> out;
  for (std::uint32_t x : oracle::valid_masks(m)) out.push_back(oracle::to_orientation(x, m.num_edges()));
  return out;
}

}  // namespace

TEST_CASE("subdivision of the triple-edge OR machine") {
  const Skeleton s = subdivide(machines::triple_or());
  CHECK(s.graph.num_vertices() == 2 + 6);
  CHECK(s.graph.num_edges() == 9);
  CHECK(s.link_edges.size() == 3);
  CHECK(s.connectors.size() == 3);
  for (VertexId v = 0; v < 2; ++v) CHECK(s.graph.degree(v) == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    const Edge& link = s.graph.edge(s.link_edges[i]);
    const Edge& a = s.graph.edge(s.connectors[i].first);
    const Edge& b = s.graph.edge(s.connectors[i].second);
    CHECK((a.u == 0 || a.v == 0));
    CHECK((b.u == 1 || b.v == 1));
    CHECK((link.u == a.u || link.u == a.v || link.v == a.u || link.v == a.v));
    CHECK((link.u == b.u || link.u == b.v || link.v == b.u || link.v == b.v));
  }
}

TEST_CASE("list compilation does not depend on the declared k") {
  for (const auto& m : small_machines()) {
    const auto a = compile(m, Variant::List, 4);
    const auto b = compile(m, Variant::List, 9);
    CHECK(b.k == 9);
    REQUIRE(a.graph.num_edges() == b.graph.num_edges());
    CHECK(a.graph.num_vertices() == b.graph.num_vertices());
    for (EdgeId e = 0; e < a.graph.num_edges(); ++e) {
      CHECK(a.graph.edge(e).list == b.graph.edge(e).list);
      CHECK(a.graph.edge(e).u == b.graph.edge(e).u);
      CHECK(a.graph.edge(e).v == b.graph.edge(e).v);
    }
  }
  CHECK_THROWS_AS(compile(machines::triple_or(), Variant::List, 3), ReductionError);
  CHECK_THROWS_AS(compile(machines::triple_or(), Variant::NonList, 4), ReductionError);
}

TEST_CASE("every connector is shared by exactly one link and one vertex gadget") {
  for (Variant v : {Variant::List, Variant::NonList}) {
    const auto art = compile(machines::and_or_ladder(), v, min_colors(v));
    std::map<EdgeId, int> link_uses, vertex_uses;
    for (const auto& p : art.links)
      for (EdgeId e : p.connectors) ++link_uses[e];
    for (const auto& p : art.vertices)
      for (EdgeId e : p.connectors) ++vertex_uses[e];
    for (const auto& [a, b] : art.connectors) {
      CHECK(link_uses[a] == 1);
      CHECK(link_uses[b] == 1);
      CHECK(vertex_uses[a] == 1);
      CHECK(vertex_uses[b] == 1);
    }
    CHECK(link_uses.size() == 2 * art.machine.num_edges());
    CHECK(vertex_uses.size() == 2 * art.machine.num_edges());
  }
}

TEST_CASE("embed and project round trip; embedding is injective") {
  for (Variant v : {Variant::List, Variant::NonList})
    for (const auto& m : small_machines()) {
      REQUIRE(m.num_edges() <= 12);
      const auto art = compile(m, v, min_colors(v));
      std::set<Coloring> images;
      for (const auto& c : valid_configs(m)) {
        const Coloring f = embed_configuration(art, c);
        CHECK(is_proper(art.graph, f));
        const Orientation back = project_coloring(art, f);
        CHECK(back == c);
        CHECK(is_strict(back));
        images.insert(f);
      }
      CHECK(images.size() == valid_configs(m).size());
    }
}

TEST_CASE("embedding rejects invalid configurations") {
  const auto art = compile(machines::two_and(), Variant::List, 4);
  Orientation bad(3, Dir::ToU);
  CHECK_THROWS(embed_configuration(art, bad));
}

TEST_CASE("projection reports improper input") {
  const auto art = compile(machines::triple_or(), Variant::List, 4);
  Coloring f = embed_configuration(art, valid_configs(art.machine).front());
  f[art.connectors[0].first] = 1;
  f[art.connectors[0].second] = 1;
  CHECK_THROWS(project_coloring(art, f));
}

TEST_CASE("a link neutral transition projects to a valid configuration with a neutral edge") {
  const auto art = compile(machines::triple_or(), Variant::List, 4);
  const auto cfgs = valid_configs(art.machine);
  bool saw_neutral = false;
  for (const auto& a : cfgs)
    for (const auto& b : configuration_neighbors(art.machine, a)) {
      const auto steps = lift_witness(art, {a, b});
      Coloring f = embed_configuration(art, a);
      for (const Recolor& s : steps) {
        f[s.edge] = s.color;
        const Orientation o = project_coloring(art, f);
        CHECK(is_valid_configuration(art.machine, o));
        if (!is_strict(o)) saw_neutral = true;
      }
      CHECK(f == embed_configuration(art, b));
    }
  CHECK(saw_neutral);
}

TEST_CASE("lifted witnesses replay and project back to strict NCL witnesses") {
  for (Variant v : {Variant::List, Variant::NonList}) {
    const auto art = compile(machines::and_or_ladder(), v, min_colors(v));
    const auto cfgs = valid_configs(art.machine);
    for (std::size_t j = 1; j < cfgs.size(); j += 3) {
      const auto r = ncl_reachable(art.machine, cfgs[0], cfgs[j]);
      if (!r.reachable) continue;
      const auto steps = lift_witness(art, r.witness);
      const Coloring f0 = embed_configuration(art, r.witness.front());
      CHECK(replay(art.graph, f0, steps) == embed_configuration(art, r.witness.back()));
      const auto w = project_witness(art, f0, steps);
      CHECK_NOTHROW(check_witness(art.machine, w));
      CHECK(w.front() == r.witness.front());
      CHECK(w.back() == r.witness.back());
    }
  }
}

TEST_CASE("random walks stay sound") {
  for (Variant v : {Variant::List, Variant::NonList})
    for (const auto& m : {machines::triple_or(), machines::and_or_ladder()}) {
      const auto art = compile(m, v, min_colors(v));
      const auto start = embed_configuration(art, valid_configs(m).front());
      const auto rep = random_walk(art, start, 20000, 17);
      CHECK(rep.sound);
      CHECK(rep.steps == 20000);
    }
}

TEST_CASE("list instances have maximum degree three") {
  for (const auto& m : small_machines()) CHECK(size_report(compile(m, Variant::List, 4)).max_degree == 3);
}

TEST_CASE("non-list maximum degree equals k at color-gadget centers") {
  for (const auto& m : {machines::triple_or(), machines::two_and(), machines::and_or_ladder()})
    for (int k : {5, 6, 7}) {
      const auto art = compile(m, Variant::NonList, k);
      const auto rep = size_report(art);
      CHECK(rep.max_degree == static_cast<std::size_t>(k));
      CHECK(rep.max_degree_outside_color_gadgets < static_cast<std::size_t>(k));
      REQUIRE_FALSE(art.color_gadget_centers.empty());
      for (VertexId c : art.color_gadget_centers) CHECK(art.graph.degree(c) == static_cast<std::size_t>(k));
    }
}

TEST_CASE("non-list gadget sizes grow linearly in k") {
  const auto m = machines::and_or_ladder();
  const auto r5 = size_report(compile(m, Variant::NonList, 5));
  const auto r6 = size_report(compile(m, Variant::NonList, 6));
  const auto r7 = size_report(compile(m, Variant::NonList, 7));
  for (const auto& [kind, n5] : r5.gadget_edges) {
    INFO(kind);
    CHECK(r6.gadget_edges.at(kind) - n5 == r7.gadget_edges.at(kind) - r6.gadget_edges.at(kind));
    CHECK(r6.gadget_edges.at(kind) > n5);
  }
}

TEST_CASE("two-AND non-list edge count is gadget sizes with shared connectors counted once") {
  const int k = 5;
  const auto art = compile(machines::two_and(), Variant::NonList, k);
  const auto and_g = load_gadget("and", Variant::NonList, k);
  const auto link_g = load_gadget("link", Variant::NonList, k);
  // Ports merge into the neighbouring gadget's inner vertex, so their color
  // gadgets are not copied; the six connectors are counted once.
  auto own_edges = [&](const Gadget& g) {
    std::size_t n = g.graph.num_edges();
    for (const ColorGadget& cg : g.color_gadgets)
      if (std::count(g.ports.begin(), g.ports.end(), cg.attach)) n -= cg.edges.size();
    return n;
  };
  const std::size_t want = 2 * own_edges(and_g) + 3 * own_edges(link_g) - 6;
  CHECK(art.graph.num_edges() == want);
}

TEST_CASE("swapping the two weight-1 edges of an AND vertex keeps the compiled size") {
  NclMachine a = machines::two_and();
  NclMachine b;
  for (const auto& v : a.vertices()) b.add_vertex(v.id, v.kind);
  const auto& e = a.edges();
  b.add_edge(e[0].id, e[0].u, e[0].v, e[0].weight);
  b.add_edge(e[2].id, e[2].u, e[2].v, e[2].weight);
  b.add_edge(e[1].id, e[1].u, e[1].v, e[1].weight);
  const auto ca = compile(a, Variant::List, 4);
  const auto cb = compile(b, Variant::List, 4);
  CHECK(ca.graph.num_edges() == cb.graph.num_edges());
  CHECK(valid_configs(a).size() == valid_configs(b).size());
  for (const auto& c : valid_configs(b)) CHECK(project_coloring(cb, embed_configuration(cb, c)) == c);
}
