#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "isokin/chains.hpp"

namespace isokin {

struct RenderPanel {
  std::string title;
  ChainConfiguration config;
  std::optional<Vec2> centroid;
  /// Points of the generating set, drawn underneath the chain.
  std::vector<Vec2> set_points;
};

struct RenderOptions {
  std::size_t columns = 3;
  double panel_size = 240.0;
};

/// Row-major grid of panels, y axis pointing up. Output depends only on the
/// input values; coordinates are written with fixed precision.
std::string render_svg(std::span<const RenderPanel> panels, const RenderOptions& options = {});

}  // namespace isokin
