#pragma once

#include "augmatch/instance.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace augmatch {

// Options for render_svg. `scale` is input units per pixel (coordinates are
// divided by it); must be positive. With show_colors, cross vertices are
// drawn as x-glyphs (<path class="vertex">) and circle vertices as rings
// (<circle class="vertex">); without it every vertex is a filled dot.
// Mandatory edges are solid <line class="edge"> elements, highlight edges
// dashed <line class="highlight"> elements. With show_provenance and a
// provenance document, one labeled <rect class="gadget-box"> is drawn around
// each gadget's vertices.
struct RenderOptions {
  Rat scale = Rat(1);
  bool show_colors = true;
  bool show_provenance = false;
  std::optional<std::vector<std::pair<int, int>>> highlight;  // vertex id pairs
};

// Deterministic standalone SVG document for an instance; identical inputs
// yield byte-identical output. `provenance_json` is the sidecar written by
// the compiler (used only when show_provenance is set). Throws
// std::invalid_argument on scale <= 0 or unparseable provenance.
std::string render_svg(const MatchingInstance& inst,
                       const std::optional<std::string>& provenance_json,
                       const RenderOptions& opts = {});

}  // namespace augmatch
