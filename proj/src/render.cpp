#include "fcb/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fcb/error.hpp"
#include "fcb/io.hpp"

namespace fcb {

std::string sparsity_pbm(const Eigen::MatrixXd& m, bool blocks, int scale) {
    if (scale < 1) throw Error(ErrorCode::usage, "render scale must be >= 1");
    const Eigen::Index step = blocks ? 3 : 1;
    if (blocks && (m.rows() % 3 != 0 || m.cols() % 3 != 0))
        throw Error(ErrorCode::domain, "block view needs dimensions divisible by 3");
    const Eigen::Index rows = m.rows() / step, cols = m.cols() / step;

    std::string out = "P1\n# format_version " + std::to_string(kFormatVersion) + "\n" +
                      std::to_string(cols * scale) + " " + std::to_string(rows * scale) + "\n";
    for (Eigen::Index i = 0; i < rows; ++i) {
        std::string line;
        for (Eigen::Index j = 0; j < cols; ++j) {
            const bool dark = (m.block(i * step, j * step, step, step).array() != 0.0).any();
            for (int s = 0; s < scale; ++s) {
                if (!line.empty()) line += ' ';
                line += dark ? '1' : '0';
            }
        }
        for (int s = 0; s < scale; ++s) out += line + "\n";
    }
    return out;
}

void render_sparsity(const Eigen::MatrixXd& m, const std::filesystem::path& path, bool blocks, int scale) {
    write_file(path, sparsity_pbm(m, blocks, scale));
}

namespace {

struct Point {
    double x, y;
};

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", std::abs(v) < 0.005 ? 0.0 : v);
    return buf;
}

const char* kPalette[] = {"#d62728", "#1f77b4", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf",
                          "#8c564b", "#e377c2", "#bcbd22", "#7f7f7f", "#393b79", "#637939"};

}  // namespace

std::string frame_svg(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis* basis) {
    const bool planar = model.dimension() == Dimension::planar;
    auto project = [&](const Node& n) -> Point {
        if (planar) return {n.xyz[0], n.xyz[1]};
        return {n.xyz[0] + 0.5 * n.xyz[1], n.xyz[2] + 0.35 * n.xyz[1]};
    };

    std::vector<Point> pts;
    for (const auto& n : model.nodes()) pts.push_back(project(n));
    double min_x = pts.front().x, max_x = min_x, min_y = pts.front().y, max_y = min_y;
    for (const auto& p : pts) {
        min_x = std::min(min_x, p.x), max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y), max_y = std::max(max_y, p.y);
    }
    const double span = std::max({max_x - min_x, max_y - min_y, 1.0});
    const double s = 400.0 / span;
    const double margin = 40.0;
    const double ground_y = min_y - 0.25 * span;
    auto sx = [&](double x) { return margin + (x - min_x) * s; };
    auto sy = [&](double y) { return margin + (max_y - y) * s; };
    const double width = 2 * margin + (max_x - min_x) * s;
    const double height = 2 * margin + (max_y - ground_y) * s;

    std::string out = "<svg xmlns=\"http://www.w3.org/2000/svg\" data-format-version=\"" +
                      std::to_string(kFormatVersion) + "\" width=\"" + num(width) + "\" height=\"" + num(height) +
                      "\">\n";
    out += "<g id=\"members\" stroke=\"black\" stroke-width=\"2\">\n";
    for (std::size_t m = 0; m < model.members().size(); ++m) {
        const auto a = project(model.end_a(m)), b = project(model.end_b(m));
        out += "<line data-member=\"" + std::to_string(model.members()[m].id) + "\" x1=\"" + num(sx(a.x)) +
               "\" y1=\"" + num(sy(a.y)) + "\" x2=\"" + num(sx(b.x)) + "\" y2=\"" + num(sy(b.y)) + "\"/>\n";
    }
    out += "</g>\n";

    out += "<g id=\"supports\">\n";
    out += "<line x1=\"" + num(sx(min_x)) + "\" y1=\"" + num(sy(ground_y)) + "\" x2=\"" + num(sx(max_x)) +
           "\" y2=\"" + num(sy(ground_y)) + "\" stroke=\"goldenrod\" stroke-width=\"3\"/>\n";
    for (int id : model.supports()) {
        const auto p = project(model.nodes()[model.node_index(id)]);
        out += "<line class=\"fictitious\" x1=\"" + num(sx(p.x)) + "\" y1=\"" + num(sy(p.y)) + "\" x2=\"" +
               num(sx(p.x)) + "\" y2=\"" + num(sy(ground_y)) +
               "\" stroke=\"goldenrod\" stroke-dasharray=\"4 3\"/>\n";
        out += "<rect x=\"" + num(sx(p.x) - 5) + "\" y=\"" + num(sy(p.y)) +
               "\" width=\"10\" height=\"5\" fill=\"dimgray\"/>\n";
    }
    out += "</g>\n";

    if (basis) {
        out += "<g id=\"cycles\" fill=\"none\" stroke-width=\"1.5\">\n";
        for (std::size_t k = 0; k < basis->cycles.size(); ++k) {
            const auto& cycle = basis->cycles[k];
            // Members pulled slightly toward the cycle centroid so overlapping cycles stay visible.
            double cx = 0, cy = 0;
            for (int m : cycle.members) {
                const auto a = project(model.end_a(static_cast<std::size_t>(m)));
                const auto b = project(model.end_b(static_cast<std::size_t>(m)));
                cx += a.x + b.x, cy += a.y + b.y;
            }
            cx /= 2.0 * cycle.members.size(), cy /= 2.0 * cycle.members.size();
            const double pull = 0.06 + 0.02 * static_cast<double>(k % 4);
            out += "<g class=\"cycle\" data-cycle=\"" + std::to_string(k + 1) + "\" stroke=\"" +
                   kPalette[k % std::size(kPalette)] + "\">\n";
            for (int m : cycle.members) {
                const auto mi = static_cast<std::size_t>(m);
                Point a = project(model.end_a(mi)), b = project(model.end_b(mi));
                // A leg to the merged ground is drawn down to the ground line.
                if (graph.member(m).a == graph.ground()) a.y = ground_y;
                if (graph.member(m).b == graph.ground()) b.y = ground_y;
                a = {a.x + pull * (cx - a.x), a.y + pull * (cy - a.y)};
                b = {b.x + pull * (cx - b.x), b.y + pull * (cy - b.y)};
                out += "<line x1=\"" + num(sx(a.x)) + "\" y1=\"" + num(sy(a.y)) + "\" x2=\"" + num(sx(b.x)) +
                       "\" y2=\"" + num(sy(b.y)) + "\"/>\n";
            }
            out += "</g>\n";
        }
        out += "</g>\n";
    }
    out += "</svg>\n";
    return out;
}

void render_frame(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis* basis,
                  const std::filesystem::path& path) {
    write_file(path, frame_svg(model, graph, basis));
}

}  // namespace fcb
