#pragma once

#include <string>
#include <vector>

#include "peakval/model.hpp"

namespace peakval {

/// Piecewise-linear cost over the peak grid (the expected-future-cost curve).
struct CostCurve {
    PeakGrid grid;
    std::vector<double> values;  // [EUR], one per grid point
};

/// Linear interpolation, clamped to the grid range.
double interpolate(const CostCurve& c, double p);

/// Curve invariants: non-decreasing values, slopes bounded by the peak tariff.
std::vector<std::string> validate_curve(const CostCurve& c, double peak_tariff);

}  // namespace peakval
