#pragma once

// Gadgets for the link edges and the AND/OR vertex stars, the boundary
// behaviour they must realise, and the color-restricting star used by the
// non-list construction.

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ecr/egraph.hpp"

namespace ecr {

enum class Variant { List, NonList };
enum class InterfaceKind { Link, And, Or };

const char* to_string(Variant v);
const char* to_string(InterfaceKind k);
Variant parse_variant(const std::string& s);
InterfaceKind parse_interface(const std::string& s);

/// Connector color meaning "directed into the NCL vertex".
inline constexpr Color kInward = 1;
/// Connector color meaning "directed out of the NCL vertex".
inline constexpr Color kOutward = 4;

/// Minimum color count per variant.
int min_colors(Variant v);

/// Colors on the boundary edges, in boundary order.
using BoundaryAssignment = std::vector<Color>;

/// The reconfiguration graph a gadget must realise on its boundary: allowed
/// assignments over {1,4} and the single-coordinate moves between them.
struct InterfaceSpec {
  InterfaceKind kind = InterfaceKind::Link;
  std::size_t arity = 0;
  std::vector<BoundaryAssignment> allowed;                  // sorted
  std::vector<std::pair<std::size_t, std::size_t>> adjacency;  // indices into allowed, i < j, sorted

  bool allows(const BoundaryAssignment& a) const;
  std::optional<std::size_t> index_of(const BoundaryAssignment& a) const;
};

InterfaceSpec derive_interface(InterfaceKind kind);

/// Same spec with boundary coordinates relabelled: coordinate i of the result
/// is coordinate perm[i] of `spec`.
InterfaceSpec permute_interface(const InterfaceSpec& spec, const std::vector<std::size_t>& perm);

/// Star of k frozen edges at a fresh center; the edges frozen to the
/// forbidden colors end at `attach_at`, the others at fresh leaves.
struct ColorGadget {
  VertexId center = 0;
  VertexId attach = 0;
  std::vector<EdgeId> edges;  // edges[c - 1] is frozen to color c
};

ColorGadget make_color_gadget(ColoredMultigraph& g, int k, const std::vector<Color>& forbidden,
                              VertexId attach_at);

/// Declared color-gadget attachment of a non-list gadget. `forbid` lists the
/// gadget-specific colors in 1..5; colors 6..k are added on expansion.
struct Attachment {
  std::string vertex;
  std::vector<Color> forbid;
};

struct Gadget {
  std::string name;
  Variant variant = Variant::List;
  InterfaceKind interface = InterfaceKind::Link;
  int k = 4;
  ColoredMultigraph graph;             // color gadgets already expanded
  std::vector<EdgeId> boundary;        // connector edges, in interface order
  std::vector<VertexId> ports;         // outer endpoint of each connector
  std::vector<Color> boundary_alphabet{kInward, kOutward};
  std::optional<std::uint64_t> checksum;
  std::vector<Attachment> attachments;
  std::vector<ColorGadget> color_gadgets;  // parallel to attachments
  std::size_t core_edges = 0;          // edges before color-gadget expansion

  /// Endpoint of boundary edge i that lies inside the gadget.
  VertexId inner(std::size_t i) const;
  /// Colors forbidden at `v` by attached color gadgets (1..5 part only).
  std::vector<Color> forbidden_at(const std::string& vertex) const;

  /// Structural checks: boundary edges distinct, ports of degree one inside
  /// the core, list-variant colors within 1..4. Throws GraphError.
  void validate() const;
};

/// Parses gadget JSON text, expanding color gadgets for `k`.
Gadget parse_gadget(const std::string& json_text, int k);

/// Loads `<dir>/<variant>_<name>.json`.
Gadget load_gadget(const std::string& name, Variant variant, int k,
                   const std::filesystem::path& dir = {});

/// Directory holding the bundled gadget files (ECR_GADGET_DIR overrides).
std::filesystem::path default_gadget_dir();

}  // namespace ecr
