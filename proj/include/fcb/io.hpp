#pragma once

#include <Eigen/Dense>
#include <filesystem>
#include <string>

#include "fcb/force.hpp"
#include "fcb/model.hpp"

namespace fcb {

inline constexpr int kFormatVersion = 1;

/// Frame file (JSON):
///   { "format_version": 1, "dimension": 2,
///     "sections": { "name": { "A": .., "I": .., "E": .. } },
///     "nodes":    [ { "id": 1, "xyz": [x, y] }, ... ],
///     "members":  [ { "id": 1, "a": 1, "b": 2, "section": "name" }, ... ],
///     "supports": [ 1, 2 ] }
/// Errors are Error(parse) naming the offending field.
StructuralModel parse_model_text(const std::string& text);
StructuralModel parse_model(const std::filesystem::path& path);
std::string write_model_text(const StructuralModel& model);
void write_model(const StructuralModel& model, const std::filesystem::path& path);

/// Load-case file: { "format_version": 1, "loads": [ { "node": 5, "fx": .., "fy": .., "moment": .. } ] }
LoadCase parse_load_case_text(const std::string& text);
LoadCase parse_load_case(const std::filesystem::path& path);

/// Dense matrix text: "rows cols" then row-major values.
Eigen::MatrixXd parse_matrix_text(const std::string& text);
Eigen::MatrixXd read_matrix(const std::filesystem::path& path);
std::string write_matrix_text(const Eigen::MatrixXd& m);
void write_matrix(const Eigen::MatrixXd& m, const std::filesystem::path& path);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, const std::string& content);

}  // namespace fcb
