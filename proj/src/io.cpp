#include "ecr/io.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace ecr {

namespace {

std::string text(const json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw InputError("expected a string or integer identifier, got " + j.dump());
}

template <typename F>
auto guarded(const char* what, F&& f) {
  try {
    return f();
  } catch (const json::exception& ex) {
    throw InputError(std::string("ill-formed ") + what + ": " + ex.what());
  }
}

}  // namespace

json read_json_file(const std::filesystem::path& p) {
  std::ifstream in(p);
  if (!in) throw InputError("cannot open " + p.string());
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw InputError(p.string() + ": " + ex.what());
  }
}

void write_json_file(const std::filesystem::path& p, const json& j) {
  std::ofstream out(p);
  if (!out) throw InputError("cannot write " + p.string());
  out << j.dump(2) << "\n";
}

NclMachine machine_from_json(const json& j) {
  return guarded("NCL machine", [&] {
    NclMachine m;
    for (const auto& v : j.at("vertices")) {
      const std::string kind = v.at("kind").get<std::string>();
      if (kind != "AND" && kind != "OR") throw InputError("vertex kind must be AND or OR, got " + kind);
      try {
        m.add_vertex(text(v.at("id")), kind == "AND" ? VertexKind::And : VertexKind::Or);
      } catch (const NclError& ex) {
        throw InputError(ex.what());
      }
    }
    for (const auto& e : j.at("edges")) {
      auto u = m.find_vertex(text(e.at("u")));
      auto v = m.find_vertex(text(e.at("v")));
      if (!u || !v) throw InputError("edge " + text(e.at("id")) + " names an unknown vertex");
      try {
        m.add_edge(text(e.at("id")), *u, *v, e.at("weight").get<int>());
      } catch (const NclError& ex) {
        throw InputError(ex.what());
      }
    }
    return m;
  });
}

json machine_to_json(const NclMachine& m) {
  json j;
  j["vertices"] = json::array();
  for (const auto& v : m.vertices()) j["vertices"].push_back({{"id", v.id}, {"kind", to_string(v.kind)}});
  j["edges"] = json::array();
  for (const auto& e : m.edges())
    j["edges"].push_back({{"id", e.id},
                          {"u", m.vertices()[e.u].id},
                          {"v", m.vertices()[e.v].id},
                          {"weight", e.weight}});
  return j;
}

Orientation orientation_from_json(const NclMachine& m, const json& j) {
  return guarded("orientation", [&] {
    if (!j.is_object()) throw InputError("orientation must be an object mapping edge id to head vertex");
    Orientation o(m.num_edges(), Dir::Neutral);
    std::vector<bool> seen(m.num_edges(), false);
    for (auto it = j.begin(); it != j.end(); ++it) {
      auto e = m.find_edge(it.key());
      if (!e) throw InputError("orientation names unknown edge " + it.key());
      const std::string head = text(it.value());
      const NclEdge& ed = m.edges()[*e];
      if (head == "NEUTRAL") o[*e] = Dir::Neutral;
      else if (head == m.vertices()[ed.u].id) o[*e] = Dir::ToU;
      else if (head == m.vertices()[ed.v].id) o[*e] = Dir::ToV;
      else throw InputError("edge " + ed.id + " cannot point at " + head);
      seen[*e] = true;
    }
    for (std::size_t e = 0; e < seen.size(); ++e)
      if (!seen[e]) throw InputError("orientation misses edge " + m.edges()[e].id);
    return o;
  });
}

json orientation_to_json(const NclMachine& m, const Orientation& o) {
  json j = json::object();
  for (std::size_t e = 0; e < o.size(); ++e) {
    const NclEdge& ed = m.edges()[e];
    j[ed.id] = o[e] == Dir::Neutral ? std::string("NEUTRAL")
                                    : m.vertices()[o[e] == Dir::ToU ? ed.u : ed.v].id;
  }
  return j;
}

json ncl_witness_to_json(const NclMachine& m, const NclWitness& w) {
  json j = json::array();
  for (const auto& o : w) j.push_back(orientation_to_json(m, o));
  return j;
}

ColoredMultigraph instance_from_json(const json& j) {
  return guarded("instance", [&] {
    try {
      ColoredMultigraph g(j.at("k").get<int>());
      for (const auto& v : j.at("vertices")) {
        const std::string id = v.is_object() ? text(v.at("id")) : text(v);
        if (g.find_vertex(id)) throw InputError("duplicate vertex " + id);
        g.add_vertex(id);
      }
      std::map<std::string, VertexId> vid;
      for (VertexId v = 0; v < g.num_vertices(); ++v) vid[g.vertex_name(v)] = v;
      std::map<std::string, bool> eids;
      for (const auto& e : j.at("edges")) {
        const std::string id = text(e.at("id"));
        if (!eids.emplace(id, true).second) throw InputError("duplicate edge " + id);
        auto u = vid.find(text(e.at("u")));
        auto v = vid.find(text(e.at("v")));
        if (u == vid.end() || v == vid.end()) throw InputError("edge " + id + " names an unknown vertex");
        if (e.contains("frozen") && !e.at("frozen").is_null()) {
          const auto c = e.at("frozen").get<int>();
          if (e.contains("list") && e.at("list") != json::array({c}))
            throw InputError("frozen edge " + id + " must have list [" + std::to_string(c) + "]");
          g.add_frozen_edge(u->second, v->second, static_cast<Color>(c), id);
        } else {
          g.add_edge(u->second, v->second, e.at("list").get<std::vector<Color>>(), id);
        }
      }
      g.validate();
      return g;
    } catch (const GraphError& ex) {
      throw InputError(ex.what());
    }
  });
}

json instance_to_json(const ColoredMultigraph& g) {
  json j;
  j["k"] = g.k();
  j["vertices"] = json::array();
  for (VertexId v = 0; v < g.num_vertices(); ++v) j["vertices"].push_back(g.vertex_name(v));
  j["edges"] = json::array();
  for (const Edge& e : g.edges()) {
    json je{{"id", e.name}, {"u", g.vertex_name(e.u)}, {"v", g.vertex_name(e.v)}, {"list", e.list}};
    if (e.frozen) je["frozen"] = e.list.front();
    j["edges"].push_back(std::move(je));
  }
  return j;
}

Coloring coloring_from_json(const ColoredMultigraph& g, const json& j) {
  return guarded("coloring", [&] {
    if (!j.is_object()) throw InputError("coloring must map edge id to color");
    std::map<std::string, EdgeId> eid;
    for (EdgeId e = 0; e < g.num_edges(); ++e) eid[g.edge(e).name] = e;
    Coloring f(g.num_edges(), 0);
    for (auto it = j.begin(); it != j.end(); ++it) {
      auto e = eid.find(it.key());
      if (e == eid.end()) throw InputError("coloring names unknown edge " + it.key());
      const int c = it.value().get<int>();
      if (c < 1 || c > kMaxColors) throw InputError("color out of range on edge " + it.key());
      f[e->second] = static_cast<Color>(c);
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e)
      if (f[e] == 0) throw InputError("coloring misses edge " + g.edge(e).name);
    return f;
  });
}

json coloring_to_json(const ColoredMultigraph& g, std::span<const Color> f) {
  require_total(g, f);
  json j = json::object();
  for (EdgeId e = 0; e < g.num_edges(); ++e) j[g.edge(e).name] = f[e];
  return j;
}

std::vector<Recolor> witness_from_json(const ColoredMultigraph& g, const json& j) {
  return guarded("witness", [&] {
    std::map<std::string, EdgeId> eid;
    for (EdgeId e = 0; e < g.num_edges(); ++e) eid[g.edge(e).name] = e;
    std::vector<Recolor> w;
    for (const auto& s : j) {
      auto e = eid.find(text(s.at("edge")));
      if (e == eid.end()) throw InputError("witness names unknown edge " + text(s.at("edge")));
      w.push_back({e->second, static_cast<Color>(s.at("color").get<int>())});
    }
    return w;
  });
}

json witness_to_json(const ColoredMultigraph& g, std::span<const Recolor> w) {
  json j = json::array();
  for (const Recolor& s : w) j.push_back({{"edge", g.edge(s.edge).name}, {"color", s.color}});
  return j;
}

json assignment_to_json(const BoundaryAssignment& a) {
  json j = json::array();
  for (Color c : a) j.push_back(int(c));
  return j;
}

json report_to_json(const VerificationReport& r) {
  json j;
  j["gadget"] = r.gadget;
  j["variant"] = r.variant;
  j["interface"] = r.interface;
  j["k"] = r.k;
  j["census"] = r.census;
  j["expected_census"] = r.expected_census ? json(*r.expected_census) : json(nullptr);
  j["census_ok"] = r.census_ok;
  j["passed"] = r.passed();

  json classes = json::array();
  for (const auto& c : r.internal.classes)
    classes.push_back({{"assignment", assignment_to_json(c.assignment)},
                       {"size", c.size},
                       {"components", c.components}});
  j["classes"] = classes;
  j["internal_connectedness"] = {{"pass", r.internal.pass}};
  if (r.internal.counterexample) {
    j["internal_connectedness"]["failing_class"] = assignment_to_json(*r.internal.failing_class);
    j["internal_connectedness"]["counterexample"] = {r.internal.counterexample->first,
                                                     r.internal.counterexample->second};
  }
  auto edges = [](const std::vector<QuotientEdge>& es) {
    json a = json::array();
    for (const auto& [x, y] : es) a.push_back({assignment_to_json(x), assignment_to_json(y)});
    return a;
  };
  auto nodes = [](const std::vector<BoundaryAssignment>& ns) {
    json a = json::array();
    for (const auto& n : ns) a.push_back(assignment_to_json(n));
    return a;
  };
  j["quotient"] = {{"nodes", nodes(r.external.nodes)}, {"edges", edges(r.external.edges)}};
  j["external_adjacency"] = {{"pass", r.external.pass},
                             {"missing_nodes", nodes(r.external.missing_nodes)},
                             {"extra_nodes", nodes(r.external.extra_nodes)},
                             {"missing_edges", edges(r.external.missing_edges)},
                             {"extra_edges", edges(r.external.extra_edges)}};
  j["boundary_alphabet"] = {{"pass", r.alphabet.pass}};
  if (r.alphabet.counterexample) j["boundary_alphabet"]["counterexample"] = *r.alphabet.counterexample;
  return j;
}

json placements_to_json(const ReductionArtifact& art) {
  auto one = [&](const Placement& p, const std::string& owner) {
    json edges = json::object();
    const Gadget& g = p.source->gadget;
    for (EdgeId e = 0; e < p.edge_map.size(); ++e)
      if (p.edge_map[e] != Placement::kNoEdge) edges[g.graph.edge(e).name] = art.graph.edge(p.edge_map[e]).name;
    json conn = json::array();
    for (EdgeId e : p.connectors) conn.push_back(art.graph.edge(e).name);
    return json{{"owner", owner}, {"gadget", to_string(p.kind)}, {"connectors", conn}, {"edges", edges}};
  };
  json j;
  j["variant"] = to_string(art.variant);
  j["k"] = art.k;
  j["links"] = json::array();
  for (const Placement& p : art.links) j["links"].push_back(one(p, art.machine.edges()[p.ncl_index].id));
  j["vertices"] = json::array();
  for (const Placement& p : art.vertices) j["vertices"].push_back(one(p, art.machine.vertices()[p.ncl_index].id));
  return j;
}

}  // namespace ecr
