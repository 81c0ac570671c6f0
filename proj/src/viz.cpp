#include "attnpath/viz.hpp"

#include "attnpath/errors.hpp"
#include "attnpath/text.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace attnpath {

namespace {

using TickGrid = Eigen::Matrix<std::int64_t, Eigen::Dynamic, Eigen::Dynamic>;

void add_fixation(TickGrid& ticks, double cell_size, const Fixation& f, double sigma_scale) {
    const std::int64_t mass = std::llround(f.time_spent_s * kHeatTicksPerSecond);
    if (mass == 0) return;
    const Eigen::Index rows = ticks.rows();
    const Eigen::Index cols = ticks.cols();
    const double sigma = sigma_scale * f.radius;
    const double reach = 6.0 * sigma;

    auto cell_of = [&](double v, Eigen::Index n) {
        return std::clamp<Eigen::Index>(static_cast<Eigen::Index>(std::floor(v / cell_size)), 0, n - 1);
    };
    const Eigen::Index c0 = cell_of(f.x - reach, cols), c1 = cell_of(f.x + reach, cols);
    const Eigen::Index r0 = cell_of(f.y - reach, rows), r1 = cell_of(f.y + reach, rows);

    Eigen::MatrixXd weight = Eigen::MatrixXd::Zero(r1 - r0 + 1, c1 - c0 + 1);
    for (Eigen::Index r = r0; r <= r1; ++r) {
        const double dy = (static_cast<double>(r) + 0.5) * cell_size - f.y;
        for (Eigen::Index c = c0; c <= c1; ++c) {
            const double dx = (static_cast<double>(c) + 0.5) * cell_size - f.x;
            weight(r - r0, c - c0) = std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
        }
    }
    const double sum = weight.sum();
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        // Kernel narrower than a cell: everything lands in the containing cell.
        ticks(cell_of(f.y, rows), cell_of(f.x, cols)) += mass;
        return;
    }

    std::int64_t placed = 0;
    Eigen::Index peak_r = 0, peak_c = 0;
    weight.maxCoeff(&peak_r, &peak_c);
    for (Eigen::Index r = 0; r < weight.rows(); ++r) {
        for (Eigen::Index c = 0; c < weight.cols(); ++c) {
            const std::int64_t q = std::llround(weight(r, c) / sum * static_cast<double>(mass));
            ticks(r0 + r, c0 + c) += q;
            placed += q;
        }
    }
    ticks(r0 + peak_r, c0 + peak_c) += mass - placed;
}

std::string pgm(const Eigen::MatrixXd& values, double scale_max, std::string_view comment) {
    std::string out = "P2\n";
    if (!comment.empty()) {
        out += "# ";
        out += comment;
        out += '\n';
    }
    out += std::to_string(values.cols()) + ' ' + std::to_string(values.rows()) + "\n255\n";
    for (Eigen::Index r = 0; r < values.rows(); ++r) {
        std::size_t line = 0;
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            const long level =
                scale_max > 0.0 ? std::lround(std::clamp(values(r, c) / scale_max, 0.0, 1.0) * 255.0) : 0;
            std::string token = std::to_string(level);
            if (line > 0 && line + token.size() + 1 > 70) {
                out += '\n';
                line = 0;
            }
            if (line > 0) {
                out += ' ';
                ++line;
            }
            out += token;
            line += token.size();
        }
        out += '\n';
    }
    return out;
}

std::string xml_escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            case '"': out += "&quot;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) {
    return fixed(v, 2);
}

}  // namespace

HeatGrid make_grid(const AoiRegistry& registry, double cell_size) {
    if (!(cell_size > 0.0)) throw ValidationError("heatmap: cell_size must be positive");
    HeatGrid grid;
    grid.cell_size = cell_size;
    grid.width = std::max(1, static_cast<int>(std::ceil(registry.canvas_w() / cell_size)));
    grid.height = std::max(1, static_cast<int>(std::ceil(registry.canvas_h() / cell_size)));
    grid.values = Eigen::MatrixXd::Zero(grid.height, grid.width);
    return grid;
}

HeatGrid accumulate_heatmap(std::span<const Scanpath> paths, const AoiRegistry& registry, double cell_size,
                            double sigma_scale) {
    if (!(sigma_scale > 0.0)) throw ValidationError("heatmap: sigma_scale must be positive");
    HeatGrid grid = make_grid(registry, cell_size);
    TickGrid ticks = TickGrid::Zero(grid.height, grid.width);
    for (const auto& path : paths) {
        for (const auto& f : path.fixations) add_fixation(ticks, cell_size, f, sigma_scale);
    }
    grid.values = ticks.cast<double>() / kHeatTicksPerSecond;
    return grid;
}

HeatGrid diff_heatmap(const HeatGrid& a, const HeatGrid& b) {
    if (a.width != b.width || a.height != b.height || a.cell_size != b.cell_size) {
        throw ValidationError("diff_heatmap: grid dimensions differ");
    }
    auto normalized = [](const HeatGrid& g) -> Eigen::MatrixXd {
        const double t = g.total();
        return t > 0.0 ? Eigen::MatrixXd(g.values / t) : Eigen::MatrixXd(g.values);
    };
    HeatGrid out = a;
    out.values = normalized(a) - normalized(b);
    return out;
}

std::string heatmap_to_pgm(const HeatGrid& grid, std::string_view comment) {
    const double top = grid.values.size() ? grid.values.maxCoeff() : 0.0;
    return pgm(grid.values, top, comment);
}

SignedPgm diff_to_pgm(const HeatGrid& grid, std::string_view comment) {
    const double top = grid.values.size() ? grid.values.cwiseAbs().maxCoeff() : 0.0;
    const Eigen::MatrixXd pos = grid.values.cwiseMax(0.0);
    const Eigen::MatrixXd neg = (-grid.values).cwiseMax(0.0);
    return {pgm(pos, top, comment), pgm(neg, top, comment)};
}

double display_radius(const Fixation& f, const SvgStyle& style) {
    return std::clamp(style.base_px + style.scale_px * f.time_spent_s, style.min_radius_px, style.max_radius_px);
}

std::string render_scanpath_svg(const Scanpath& path, const AoiRegistry& registry, const SvgStyle& style,
                                std::string_view comment) {
    const std::string w = num(registry.canvas_w());
    const std::string h = num(registry.canvas_h());
    std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n";
    out += "<svg xmlns=\"http://www.w3.org/2000/svg\" xmlns:xlink=\"http://www.w3.org/1999/xlink\" version=\"1.1\" "
           "width=\"" + w + "\" height=\"" + h + "\" viewBox=\"0 0 " + w + " " + h + "\">\n";
    if (!comment.empty()) out += "<!-- " + xml_escape(comment) + " -->\n";
    if (!path.session_id.empty()) out += "<title>" + xml_escape(path.session_id) + "</title>\n";
    out += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerWidth=\"6\" "
           "markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"#444444\"/></marker></defs>\n";
    out += "<rect x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h + "\" fill=\"#ffffff\"/>\n";
    if (!style.background.empty()) {
        out += "<image x=\"0\" y=\"0\" width=\"" + w + "\" height=\"" + h + "\" xlink:href=\"" +
               xml_escape(style.background) + "\"/>\n";
    }

    const auto& fx = path.fixations;
    out += "<g class=\"saccades\" stroke=\"#444444\" stroke-width=\"1.50\" fill=\"none\">\n";
    for (std::size_t i = 1; i < fx.size(); ++i) {
        const Fixation& a = fx[i - 1];
        const Fixation& b = fx[i];
        double x1 = a.x, y1 = a.y, x2 = b.x, y2 = b.y;
        const double dx = x2 - x1, dy = y2 - y1;
        const double dist = std::hypot(dx, dy);
        const double ra = display_radius(a, style), rb = display_radius(b, style);
        if (dist > ra + rb) {
            x1 += dx / dist * ra;
            y1 += dy / dist * ra;
            x2 -= dx / dist * rb;
            y2 -= dy / dist * rb;
        }
        out += "<line x1=\"" + num(x1) + "\" y1=\"" + num(y1) + "\" x2=\"" + num(x2) + "\" y2=\"" + num(y2) +
               "\" marker-end=\"url(#arrow)\"/>\n";
        out += "<text x=\"" + num((x1 + x2) / 2) + "\" y=\"" + num((y1 + y2) / 2 - 3) +
               "\" font-family=\"sans-serif\" font-size=\"10\" fill=\"#444444\" stroke=\"none\">" +
               std::to_string(i) + "</text>\n";
    }
    out += "</g>\n";

    out += "<g class=\"fixations\">\n";
    for (std::size_t i = 0; i < fx.size(); ++i) {
        const Fixation& f = fx[i];
        out += "<circle cx=\"" + num(f.x) + "\" cy=\"" + num(f.y) + "\" r=\"" + num(display_radius(f, style)) +
               "\" fill=\"#1f77b4\" fill-opacity=\"0.45\" stroke=\"#1f4e79\" stroke-width=\"1.00\"><title>" +
               xml_escape(f.aoi_name) + " " + fixed(f.time_spent_s, 2) + " s</title></circle>\n";
        out += "<text x=\"" + num(f.x) + "\" y=\"" + num(f.y + 4) +
               "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"middle\" fill=\"#000000\">" +
               std::to_string(i + 1) + "</text>\n";
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace attnpath
