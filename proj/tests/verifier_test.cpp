#include <doctest.h>

#include <set>

#include "ecr/gadget.hpp"
#include "ecr/io.hpp"
#include "ecr/verifier.hpp"
#include "oracles.hpp"

using namespace ecr;

namespace {

// Two boundary-sharing colorings that cannot reach each other internally:
// boundary edge b = {1}, internal edges x, y share a vertex with b and each
// other, both on {2,3}.
ColoredMultigraph split_class() {
  ColoredMultigraph g(4);
  const VertexId p = g.add_vertex("p");
  const VertexId a = g.add_vertex("a");
  const VertexId q = g.add_vertex("q");
  g.add_edge(p, a, {1}, "b");
  g.add_edge(a, q, {2, 3}, "x");
  g.add_edge(a, q, {2, 3}, "y");
  return g;
}

}  // namespace

TEST_CASE("single-edge toy boundary classes") {
  ColoredMultigraph g(4);
  g.add_vertex();
  g.add_vertex();
  g.add_edge(0, 1, {1, 4});
  const ColoringSpace space(g, {0});
  REQUIRE(space.classes().size() == 2);
  CHECK(space.classes().at({1}).size() == 1);
  CHECK(space.classes().at({4}).size() == 1);
}

TEST_CASE("split class is reported with a counterexample pair") {
  const auto g = split_class();
  const ColoringSpace space(g, {0});
  const auto r = check_internal_connectedness(space);
  CHECK_FALSE(r.pass);
  REQUIRE(r.counterexample);
  REQUIRE(r.failing_class);
  CHECK(*r.failing_class == BoundaryAssignment{1});
  const auto& [f, h] = *r.counterexample;
  CHECK(f != h);
  CHECK(is_proper(g, f));
  CHECK(is_proper(g, h));
  CHECK(reachable(g, f, h).status == Reachability::Unreachable);
}

TEST_CASE("boundary alphabet violation is caught") {
  ColoredMultigraph g(4);
  g.add_vertex();
  g.add_vertex();
  g.add_edge(0, 1, {1, 3, 4});
  const ColoringSpace space(g, {0});
  const auto r = check_boundary_alphabet(space, {1, 4});
  CHECK_FALSE(r.pass);
  REQUIRE(r.counterexample);
  CHECK((*r.counterexample)[0] == 3);
}

TEST_CASE("bundled gadgets pass every check in both variants") {
  for (Variant v : {Variant::List, Variant::NonList})
    for (const char* name : {"link", "and", "or"}) {
      const Gadget g = load_gadget(name, v, min_colors(v));
      const auto r = verify(g);
      INFO(name << " " << to_string(v));
      CHECK(r.internal.pass);
      CHECK(r.external.pass);
      CHECK(r.alphabet.pass);
      CHECK(r.census_ok);
      for (const auto& c : r.internal.classes) CHECK(c.components == 1);
    }
}

TEST_CASE("list link and AND quotients") {
  const auto link = verify(load_gadget("link", Variant::List, 4));
  CHECK(link.external.nodes.size() == 3);
  CHECK(link.external.edges.size() == 2);
  const auto and_r = verify(load_gadget("and", Variant::List, 4));
  CHECK(and_r.external.nodes.size() == 5);
  CHECK(and_r.external.edges.size() == 5);
  CHECK(quotient_to_dot(and_r.external).find("n0") != std::string::npos);
}

TEST_CASE("a gadget checked against the wrong interface fails with a diff") {
  const Gadget and_g = load_gadget("and", Variant::List, 4);
  const auto r = check_external_adjacency(and_g, derive_interface(InterfaceKind::Or));
  CHECK_FALSE(r.pass);
  CHECK(r.missing_nodes.size() + r.extra_nodes.size() + r.missing_edges.size() + r.extra_edges.size() > 0);
  CHECK(r.missing_nodes.size() == 2);
}

TEST_CASE("quotient commutes with boundary relabelling") {
  Gadget g = load_gadget("and", Variant::List, 4);
  const auto spec = derive_interface(InterfaceKind::And);
  const std::vector<std::size_t> perm{1, 0, 2};
  std::vector<EdgeId> relabelled;
  for (std::size_t i : perm) relabelled.push_back(g.boundary[i]);
  const ColoringSpace space(g.graph, relabelled);
  CHECK(check_external_adjacency(space, permute_interface(spec, perm)).pass);

  Gadget o = load_gadget("or", Variant::List, 4);
  const std::vector<std::size_t> rot{2, 0, 1};
  std::vector<EdgeId> rb;
  for (std::size_t i : rot) rb.push_back(o.boundary[i]);
  const ColoringSpace os(o.graph, rb);
  CHECK(check_external_adjacency(os, permute_interface(derive_interface(InterfaceKind::Or), rot)).pass);
  CHECK(check_internal_connectedness(os).pass);
}

TEST_CASE("class sizes sum to the census and match a brute-force partition") {
  const Gadget g = load_gadget("and", Variant::List, 4);
  const auto r = verify(g);
  const auto brute = oracle::all_colorings(g.graph);
  std::map<BoundaryAssignment, std::size_t> sizes;
  for (const auto& f : brute) {
    BoundaryAssignment key;
    for (EdgeId b : g.boundary) key.push_back(f[b]);
    ++sizes[key];
  }
  std::size_t total = 0;
  for (const auto& c : r.internal.classes) {
    CHECK(sizes.at(c.assignment) == c.size);
    total += c.size;
  }
  CHECK(total == r.census);
  CHECK(brute.size() == r.census);
}

TEST_CASE("verification is deterministic") {
  const Gadget g = load_gadget("or", Variant::List, 4);
  CHECK(report_to_json(verify(g)).dump() == report_to_json(verify(g)).dump());
}

TEST_CASE("report JSON carries the counterexample") {
  Gadget g;
  g.name = "split";
  g.graph = split_class();
  g.boundary = {0};
  const ColoringSpace space(g.graph, g.boundary);
  VerificationReport r;
  r.internal = check_internal_connectedness(space);
  const json j = report_to_json(r);
  CHECK(j["internal_connectedness"]["pass"] == false);
  CHECK(j["internal_connectedness"]["counterexample"].size() == 2);
}
