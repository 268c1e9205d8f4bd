#pragma once

#include <cstdint>
#include <string>

#include "lucaskit/lucas.hpp"

namespace lucaskit {

enum class RenderFormat { ascii, svg };

struct RenderOptions {
  RenderFormat format = RenderFormat::ascii;
  bool show_values = false;  // exact entries; requires p <= 67 so they stay in range
  double cell_size = 24.0;   // SVG hexagon height in user units
};

/// Pascal's triangle rows 0..p-1 in the sheared layout: row r at level r,
/// cell (r, s) centered at horizontal offset s + (p-1-r)/2.  Cells whose
/// (r, s) lies in dset are highlighted (ASCII: bracketed; SVG: filled
/// hexagon).  Output is deterministic.
std::string render_triangle(std::uint64_t p, const DSet& dset, const RenderOptions& opts);

}  // namespace lucaskit
