// Command-line front end: gadget verification, compilation, reachability and
// oracle comparison. JSON reports go to stdout, one-line summaries to stderr.

#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "ecr/egraph.hpp"
#include "ecr/gadget.hpp"
#include "ecr/io.hpp"
#include "ecr/ncl.hpp"
#include "ecr/reduction.hpp"
#include "ecr/verifier.hpp"

namespace {

using namespace ecr;

enum Status : int { kPass = 0, kFail = 1, kBudget = 2, kInput = 3 };

struct Common {
  std::string variant = "list";
  int k = 0;  // 0 = variant minimum
  std::uint64_t budget = 100'000'000;
  std::string gadget_dir;
};

Variant variant_of(const Common& c) {
  try {
    return parse_variant(c.variant);
  } catch (const std::exception& ex) {
    throw InputError(ex.what());
  }
}

int k_of(const Common& c) {
  const Variant v = variant_of(c);
  const int k = c.k == 0 ? min_colors(v) : c.k;
  if (k < min_colors(v))
    throw InputError(std::string(to_string(v)) + " needs k >= " + std::to_string(min_colors(v)));
  if (k > kMaxColors) throw InputError("k exceeds " + std::to_string(kMaxColors));
  return k;
}

std::filesystem::path dir_of(const Common& c) {
  return c.gadget_dir.empty() ? default_gadget_dir() : std::filesystem::path(c.gadget_dir);
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

void note(const std::string& s) { std::cerr << s << "\n"; }

NclMachine load_machine(const std::string& path) {
  NclMachine m = machine_from_json(read_json_file(path));
  const auto violations = validate_machine(m);
  if (!violations.empty()) {
    std::string msg = "invalid NCL machine:";
    for (const auto& v : violations) msg += " " + (v.vertex.empty() ? "" : v.vertex + ": ") + v.message + ";";
    throw InputError(msg);
  }
  return m;
}

Orientation load_config(const NclMachine& m, const std::string& path) {
  Orientation o = orientation_from_json(m, read_json_file(path));
  if (!is_strict(o) || !is_valid_configuration(m, o))
    throw InputError(path + " is not a valid strict configuration");
  return o;
}

int cmd_verify_gadget(const std::string& name, const Common& c) {
  const Variant v = variant_of(c);
  const int k = k_of(c);
  Gadget g = load_gadget(name, v, k, dir_of(c));
  const ColoringSpace space(g.graph, g.boundary, c.budget);
  const VerificationReport r = verify(g, space, derive_interface(g.interface));
  json j = report_to_json(r);
  emit(j);
  note(name + " (" + to_string(v) + ", k=" + std::to_string(k) + "): census " + std::to_string(r.census) +
       (r.passed() ? ", pass" : ", FAIL"));
  return r.passed() ? kPass : kFail;
}

int cmd_compile(const std::string& machine_path, const Common& c, const std::string& out,
                const std::string& placements_out) {
  const NclMachine m = load_machine(machine_path);
  const Variant v = variant_of(c);
  const int k = k_of(c);
  const ReductionArtifact art = compile(m, v, k, dir_of(c));
  const SizeReport sr = size_report(art);
  json report{{"variant", to_string(v)},
              {"k", k},
              {"vertices", sr.vertices},
              {"edges", sr.edges},
              {"max_degree", sr.max_degree},
              {"max_degree_outside_color_gadgets", sr.max_degree_outside_color_gadgets},
              {"gadget_edges", sr.gadget_edges}};
  if (out.empty()) {
    report["instance"] = instance_to_json(art.graph);
  } else {
    write_json_file(out, instance_to_json(art.graph));
    report["instance_file"] = out;
  }
  if (!placements_out.empty()) {
    write_json_file(placements_out, placements_to_json(art));
    report["placements_file"] = placements_out;
  } else {
    report["placements"] = placements_to_json(art);
  }
  emit(report);
  note("compiled " + std::to_string(m.num_vertices()) + " NCL vertices into " + std::to_string(sr.vertices) +
       " vertices / " + std::to_string(sr.edges) + " edges, max degree " + std::to_string(sr.max_degree));
  return kPass;
}

int cmd_embed(const std::string& machine_path, const std::string& config_path, const Common& c) {
  const NclMachine m = load_machine(machine_path);
  const Orientation o = load_config(m, config_path);
  const ReductionArtifact art = compile(m, variant_of(c), k_of(c), dir_of(c));
  emit(coloring_to_json(art.graph, embed_configuration(art, o)));
  note("embedded configuration of " + std::to_string(m.num_edges()) + " NCL edges");
  return kPass;
}

int cmd_solve(const std::string& inst, const std::string& f0p, const std::string& frp, const Common& c,
              bool witness) {
  const ColoredMultigraph g = instance_from_json(read_json_file(inst));
  const Coloring f0 = coloring_from_json(g, read_json_file(f0p));
  const Coloring fr = coloring_from_json(g, read_json_file(frp));
  if (!is_proper(g, f0)) throw InputError(f0p + " is not a proper coloring");
  if (!is_proper(g, fr)) throw InputError(frp + " is not a proper coloring");
  Budget b;
  b.max_states = c.budget;
  const ReachResult r = reachable(g, f0, fr, b, witness);
  json j{{"status", to_string(r.status)}, {"visited", r.visited}};
  if (r.status == Reachability::Reachable && witness) j["witness"] = witness_to_json(g, r.witness);
  emit(j);
  note(std::string(to_string(r.status)) + " after " + std::to_string(r.visited) + " states");
  switch (r.status) {
    case Reachability::Reachable: return kPass;
    case Reachability::Unreachable: return kFail;
    default: return kBudget;
  }
}

int cmd_oracle_check(const std::string& machine_path, const std::string& c0p, const std::string& crp,
                     const Common& c, bool witness) {
  const NclMachine m = load_machine(machine_path);
  const Orientation c0 = load_config(m, c0p);
  const Orientation cr = load_config(m, crp);
  const NclReachResult nr = ncl_reachable(m, c0, cr);
  const ReductionArtifact art = compile(m, variant_of(c), k_of(c), dir_of(c));
  const Coloring f0 = embed_configuration(art, c0);
  const Coloring fr = embed_configuration(art, cr);
  Budget b;
  b.max_states = c.budget;
  const ReachResult cr_res = reachable(art.graph, f0, fr, b, witness);
  json j{{"ncl", nr.reachable ? "REACHABLE" : "UNREACHABLE"},
         {"ncl_visited", nr.visited},
         {"coloring", to_string(cr_res.status)},
         {"coloring_visited", cr_res.visited}};
  if (nr.reachable) j["ncl_witness"] = ncl_witness_to_json(m, nr.witness);
  int status = kPass;
  if (cr_res.status == Reachability::BudgetExceeded) {
    j["agree"] = nullptr;
    status = kBudget;
  } else {
    const bool agree = nr.reachable == (cr_res.status == Reachability::Reachable);
    j["agree"] = agree;
    if (!agree) status = kFail;
    if (cr_res.status == Reachability::Reachable && witness) {
      const NclWitness back = project_witness(art, f0, cr_res.witness);
      j["coloring_witness_steps"] = cr_res.witness.size();
      j["projected_witness"] = ncl_witness_to_json(m, back);
    }
  }
  emit(j);
  note(std::string("ncl ") + (nr.reachable ? "REACHABLE" : "UNREACHABLE") + ", coloring " +
       to_string(cr_res.status) + (status == kPass ? ": agree" : status == kFail ? ": DISAGREE" : ": budget"));
  return status;
}

int cmd_export_dot(const std::string& target, const Common& c, bool quotient, const std::string& dot_path,
                   std::uint64_t max_nodes) {
  std::string dot;
  json j;
  const bool is_file = target.find('/') != std::string::npos || target.ends_with(".json");
  if (is_file) {
    if (!std::filesystem::exists(target)) throw InputError("no such file: " + target);
    if (quotient) throw InputError("--quotient needs a gadget name");
    const ColoredMultigraph g = instance_from_json(read_json_file(target));
    const ReconfigurationGraph rg = reconfiguration_graph(g, {}, max_nodes);
    dot = to_dot(rg, "reconf");
    j = {{"target", target}, {"nodes", rg.nodes.size()}, {"edges", rg.edges.size()},
         {"components", rg.num_components()}};
  } else {
    const Gadget g = load_gadget(target, variant_of(c), k_of(c), dir_of(c));
    if (quotient) {
      const ColoringSpace space(g.graph, g.boundary, c.budget);
      const AdjacencyResult a = check_external_adjacency(space, derive_interface(g.interface));
      dot = quotient_to_dot(a, target + "_quotient");
      j = {{"target", target}, {"quotient", true}, {"nodes", a.nodes.size()}, {"edges", a.edges.size()}};
    } else {
      const ReconfigurationGraph rg = reconfiguration_graph(g.graph, {}, max_nodes);
      dot = to_dot(rg, target);
      j = {{"target", target}, {"nodes", rg.nodes.size()}, {"edges", rg.edges.size()},
           {"components", rg.num_components()}};
    }
  }
  if (dot_path.empty()) {
    j["dot"] = dot;
  } else {
    std::ofstream os(dot_path);
    if (!os) throw InputError("cannot write " + dot_path);
    os << dot;
    j["dot_file"] = dot_path;
  }
  emit(j);
  note("exported " + j["nodes"].dump() + " nodes, " + j["edges"].dump() + " edges");
  return kPass;
}

template <typename F>
int guarded(F&& f) {
  try {
    return f();
  } catch (const BudgetExceeded& ex) {
    emit(json{{"error", "budget exceeded"}, {"detail", ex.what()}});
    note(std::string("budget exceeded: ") + ex.what());
    return kBudget;
  } catch (const InputError& ex) {
    emit(json{{"error", "input"}, {"detail", ex.what()}});
    note(std::string("input error: ") + ex.what());
    return kInput;
  } catch (const GraphError& ex) {
    emit(json{{"error", "input"}, {"detail", ex.what()}});
    note(std::string("input error: ") + ex.what());
    return kInput;
  } catch (const NclError& ex) {
    emit(json{{"error", "input"}, {"detail", ex.what()}});
    note(std::string("input error: ") + ex.what());
    return kInput;
  } catch (const json::exception& ex) {
    emit(json{{"error", "input"}, {"detail", ex.what()}});
    note(std::string("input error: ") + ex.what());
    return kInput;
  } catch (const ReductionError& ex) {
    emit(json{{"error", "reduction"}, {"detail", ex.what()}});
    note(std::string("reduction failed: ") + ex.what());
    return kFail;
  }
}

void add_common(CLI::App* app, Common& c, bool budget = true) {
  app->add_option("--variant", c.variant, "list or nonlist")->check(CLI::IsMember({"list", "nonlist"}));
  app->add_option("-k", c.k, "number of colors (default: 4 for list, 5 for nonlist)");
  app->add_option("--gadget-dir", c.gadget_dir, "directory with gadget JSON files");
  if (budget) app->add_option("--budget-states", c.budget, "state budget for enumeration and search");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"edge-coloring reconfiguration workbench"};
  app.require_subcommand(1);
  Common c;
  bool no_witness = false;
  std::string a1, a2, a3, out, placements, dot;
  bool quotient = false;
  std::uint64_t max_nodes = 1'000'000;

  auto* vg = app.add_subcommand("verify-gadget", "verify a bundled gadget");
  vg->add_option("name", a1, "link, and or or")->required();
  add_common(vg, c);

  auto* cp = app.add_subcommand("compile", "compile an NCL machine");
  cp->add_option("machine", a1)->required();
  cp->add_option("-o,--output", out, "write the instance JSON here");
  cp->add_option("--placements", placements, "write the placement map here");
  add_common(cp, c, false);

  auto* em = app.add_subcommand("embed", "coloring of the compiled instance for an NCL configuration");
  em->add_option("machine", a1)->required();
  em->add_option("config", a2)->required();
  add_common(em, c, false);

  auto* so = app.add_subcommand("solve", "decide reachability between two colorings");
  so->add_option("instance", a1)->required();
  so->add_option("f0", a2)->required();
  so->add_option("fr", a3)->required();
  so->add_option("--budget-states", c.budget);
  so->add_flag("--no-witness", no_witness);

  auto* oc = app.add_subcommand("oracle-check", "compare NCL and compiled reachability");
  oc->add_option("machine", a1)->required();
  oc->add_option("c0", a2)->required();
  oc->add_option("cr", a3)->required();
  oc->add_flag("--no-witness", no_witness);
  add_common(oc, c);

  auto* ed = app.add_subcommand("export-dot", "reconfiguration graph or quotient as DOT");
  ed->add_option("target", a1, "gadget name or instance JSON file")->required();
  ed->add_flag("--quotient", quotient, "contract boundary classes");
  ed->add_option("--dot", dot, "write DOT here instead of embedding it in the report");
  ed->add_option("--max-nodes", max_nodes);
  add_common(ed, c);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kInput;
  }

  if (*vg) return guarded([&] { return cmd_verify_gadget(a1, c); });
  if (*cp) return guarded([&] { return cmd_compile(a1, c, out, placements); });
  if (*em) return guarded([&] { return cmd_embed(a1, a2, c); });
  if (*so) return guarded([&] { return cmd_solve(a1, a2, a3, c, !no_witness); });
  if (*oc) return guarded([&] { return cmd_oracle_check(a1, a2, a3, c, !no_witness); });
  if (*ed) return guarded([&] { return cmd_export_dot(a1, c, quotient, dot, max_nodes); });
  return kInput;
}
