#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

#include "fcb/basis.hpp"
#include "fcb/model.hpp"

namespace fcb {

/// Plain PBM (P1): one dark pixel per non-zero entry, or per non-zero 3x3
/// block when `blocks` is set, each drawn as a `scale` x `scale` square.
std::string sparsity_pbm(const Eigen::MatrixXd& m, bool blocks = false, int scale = 1);
void render_sparsity(const Eigen::MatrixXd& m, const std::filesystem::path& path, bool blocks = false, int scale = 1);

/// SVG drawing of the frame: members, supports, dashed fictitious links to a
/// ground line, and every cycle of `basis` traced in its own colour.
/// Space frames are drawn in an oblique projection.
std::string frame_svg(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis* basis = nullptr);
void render_frame(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis* basis,
                  const std::filesystem::path& path);

}  // namespace fcb
