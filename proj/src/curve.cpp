#include "peakval/curve.hpp"

#include <algorithm>
#include <cmath>

namespace peakval {

double interpolate(const CostCurve& c, double p) {
    const auto& xs = c.grid.points;
    if (p <= xs.front()) return c.values.front();
    if (p >= xs.back()) return c.values.back();
    const auto it = std::upper_bound(xs.begin(), xs.end(), p);
    const size_t hi = static_cast<size_t>(it - xs.begin());
    const size_t lo = hi - 1;
    const double w = (p - xs[lo]) / (xs[hi] - xs[lo]);
    return c.values[lo] + w * (c.values[hi] - c.values[lo]);
}

std::vector<std::string> validate_curve(const CostCurve& c, double peak_tariff) {
    std::vector<std::string> out;
    if (static_cast<int>(c.values.size()) != c.grid.size()) {
        out.push_back("curve values/grid length mismatch");
        return out;
    }
    for (int n = 0; n + 1 < c.grid.size(); ++n) {
        const double dp = c.grid.points[n + 1] - c.grid.points[n];
        const double slope = (c.values[n + 1] - c.values[n]) / dp;
        if (slope < -1e-9)
            out.push_back("curve decreasing at segment " + std::to_string(n));
        if (slope > peak_tariff + 1e-6)
            out.push_back("curve slope exceeds peak tariff at segment " + std::to_string(n));
    }
    return out;
}

}  // namespace peakval
