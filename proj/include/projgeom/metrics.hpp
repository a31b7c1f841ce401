#pragma once

#include "projgeom/fields.hpp"

namespace projgeom {

// Built-in metrics with exact (jet-propagated) derivatives.

// dx^2 + dy^2
MetricField flat_metric();

// 4 (dx^2 + dy^2) / (1 - x^2 - y^2)^2 on the unit disc, K = -1.
MetricField poincare_metric();

// 4 (dx^2 + dy^2) / (1 + x^2 + y^2)^2, the round unit sphere in stereographic coordinates, K = 1.
MetricField sphere_stereographic_metric();

// exp(2 x^2 y) (dx^2 + dy^2); non-constant curvature, used as a negative control.
MetricField bump_metric();

}  // namespace projgeom
