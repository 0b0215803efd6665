#pragma once

// JSON encodings of machines, configurations, instances, colorings,
// witnesses and reports.

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "ecr/egraph.hpp"
#include "ecr/ncl.hpp"
#include "ecr/reduction.hpp"
#include "ecr/verifier.hpp"

namespace ecr {

using nlohmann::json;

class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

json read_json_file(const std::filesystem::path& p);
void write_json_file(const std::filesystem::path& p, const json& j);

/// {"vertices":[{"id","kind"}],"edges":[{"id","u","v","weight"}]}
NclMachine machine_from_json(const json& j);
json machine_to_json(const NclMachine& m);

/// Edge id -> head vertex id or "NEUTRAL".
Orientation orientation_from_json(const NclMachine& m, const json& j);
json orientation_to_json(const NclMachine& m, const Orientation& o);
json ncl_witness_to_json(const NclMachine& m, const NclWitness& w);

/// {"k","vertices":[ids],"edges":[{"id","u","v","list","frozen"?}]}
ColoredMultigraph instance_from_json(const json& j);
json instance_to_json(const ColoredMultigraph& g);

/// Edge id -> color.
Coloring coloring_from_json(const ColoredMultigraph& g, const json& j);
json coloring_to_json(const ColoredMultigraph& g, std::span<const Color> f);

/// [{"edge","color"}...]
std::vector<Recolor> witness_from_json(const ColoredMultigraph& g, const json& j);
json witness_to_json(const ColoredMultigraph& g, std::span<const Recolor> w);

json assignment_to_json(const BoundaryAssignment& a);
json report_to_json(const VerificationReport& r);

/// Gadget placements of a compiled instance: per NCL edge and vertex, the
/// gadget kind and the compiled edge ids of its connectors and internal edges.
json placements_to_json(const ReductionArtifact& art);

}  // namespace ecr
