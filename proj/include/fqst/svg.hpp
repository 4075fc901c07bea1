#pragma once

// Static SVG drawing of a solved tree: terminals as filled circles, Steiner
// points as open circles, edges as lines labelled with their flow.

#include <string>

#include "fqst/tree.hpp"

namespace fqst {

// Byte-identical output for identical input. Zero-length edges become
// round-capped dots.
std::string render_svg(const SolvedTree& tree);

// Terminals only, for instances without a topology.
std::string render_instance_svg(const Instance& instance);

}  // namespace fqst
