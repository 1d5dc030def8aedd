#pragma once

// Static figure of a two-dimensional fan.

#include "tropcount/polyhedral.hpp"

#include <string>

namespace tropcount {

/// Rays as labeled spokes, two-dimensional cones as alternately shaded wedges.
/// Throws UnsupportedRank unless the fan has rank 2.
std::string fan_svg(const Fan& fan, const std::string& title = {});

}  // namespace tropcount
