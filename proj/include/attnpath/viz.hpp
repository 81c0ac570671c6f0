#pragma once

#include "attnpath/aoi_registry.hpp"
#include "attnpath/scanpath.hpp"

#include <Eigen/Dense>

#include <span>
#include <string>
#include <string_view>

namespace attnpath {

/// Cell grid over the picture canvas. `values` is height x width (row = y).
struct HeatGrid {
    int width = 0;
    int height = 0;
    double cell_size = 0.0;
    Eigen::MatrixXd values;

    double total() const { return values.sum(); }
};

/// Heat mass is accumulated in integer ticks of 2^-30 s, so grid sums are
/// exact and independent of summation order.
inline constexpr double kHeatTicksPerSecond = 1073741824.0;

/// Empty grid of ceil(canvas / cell_size) cells.
HeatGrid make_grid(const AoiRegistry& registry, double cell_size);

/// Adds one isotropic Gaussian per fixation, sigma = sigma_scale * radius,
/// normalized over the grid so each fixation contributes exactly its
/// time_spent_s (to tick resolution).
HeatGrid accumulate_heatmap(std::span<const Scanpath> paths, const AoiRegistry& registry, double cell_size = 5.0,
                            double sigma_scale = 0.5);

/// Cellwise a/sum(a) - b/sum(b). A zero-mass input stays all zero.
HeatGrid diff_heatmap(const HeatGrid& a, const HeatGrid& b);

/// Plain PGM (P2, maxval 255), linearly scaled by the grid maximum.
std::string heatmap_to_pgm(const HeatGrid& grid, std::string_view comment = {});

struct SignedPgm {
    std::string positive;
    std::string negative;
};

/// Positive and negative parts of a signed grid, both scaled by max |value|.
SignedPgm diff_to_pgm(const HeatGrid& grid, std::string_view comment = {});

struct SvgStyle {
    double base_px = 4.0;
    double scale_px = 20.0;  ///< pixels per second of time_spent
    double min_radius_px = 4.0;
    double max_radius_px = 60.0;
    std::string background;  ///< optional image href drawn under the path
};

/// Displayed circle radius for a fixation, clamped to [min, max].
double display_radius(const Fixation& f, const SvgStyle& style);

/// One circle per fixation and a numbered arrow between consecutive
/// fixations, on a blank canvas the size of the registry's picture.
std::string render_scanpath_svg(const Scanpath& path, const AoiRegistry& registry, const SvgStyle& style = {},
                                std::string_view comment = {});

}  // namespace attnpath
