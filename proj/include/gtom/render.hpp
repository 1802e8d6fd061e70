#pragma once

#include <string>

#include "gtom/subdivision.hpp"

namespace gtom {

struct RenderSpec {
  double scale = 120.0;  // pixels per unit of the dilated simplex
  bool show_dual = false;
  bool labels = false;
};

/// SVG 1.1 drawing of the mixed subdivision of P_G for d = 2 (a segment)
/// or d = 3 (equilateral embedding), optionally with the dashed dual sketch.
/// Output depends only on the subdivision and the render options.
std::string render_mixed(const Subdivision& s, const RenderSpec& spec);

}  // namespace gtom
