#pragma once

#include <string>
#include <vector>

#include "llab/common.hpp"
#include "llab/geometry.hpp"

namespace llab {

// d_n = (prod_{i<j} |x_i-x_j|)^{2/(n(n-1))}, computed in the log domain.
// Throws on points closer than 1e-14 (degenerate configuration).
double discrete_diameter(const std::vector<Vec2>& points);

struct FeketeConfig {
    std::uint64_t seed = 1;
    int starts = 2;
    int max_sweeps = 600;
    int reseat_every = 12;       // sweeps between global reseat passes
    int reseat_candidates = 6;   // proposals per point per pass
    double move_tol = 1e-10;     // sweep convergence threshold, relative to the set diameter
};

struct FeketeResult {
    std::vector<Vec2> points;
    double log_energy = 0.0;  // sum_{i<j} ln|x_i - x_j|
    bool converged = true;    // false is a warning, never silent
};

// n points on the boundary of the set locally maximizing the pairwise
// distance product (coordinate-wise projected gradient ascent, multi-start;
// deterministic under a fixed seed, best start wins and ties break toward
// the lowest start index).
FeketeResult fekete_points(const PlanarSet& set, int n, const FeketeConfig& cfg = {});

struct CapacityEstimate {
    double value = 0.0;
    int n_points = 0;
    std::vector<std::pair<int, double>> diameters;  // (n, d_n)
    bool extrapolated = true;  // false when the 1/n fit looks untrustworthy
    double residual = 0.0;     // relative rms of the fit
    bool optimizer_warning = false;
    bool monotone = true;  // d_n non-increasing along the schedule
};

// Runs fekete_points along the schedule and extrapolates d_n ~ cap(1 + c/n).
CapacityEstimate capacity(const PlanarSet& set, const std::vector<int>& n_schedule,
                          const FeketeConfig& cfg = {});

std::string capacity_estimate_to_json(const CapacityEstimate& est);

// Inward-offset smooth closed curves inside a region; offsets too large to
// keep a valid curve are skipped with a notice.
std::vector<PlanarSet> curve_schedule(const PlanarSet& region, const std::vector<double>& offsets,
                                      std::vector<std::string>* notices = nullptr);

// Polygonal (or exact, for disks) outer approximation of the closed
// delta-neighborhood; always contains the input set.
PlanarSet outer_thickening(const PlanarSet& set, double delta);

}  // namespace llab
