#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcb/basis.hpp"
#include "fcb/metrics.hpp"
#include "fcb/model.hpp"
#include "fcb/parallel.hpp"

namespace fcb {

struct CompareConfig {
    std::vector<AlgorithmSpec> algorithms;
    WeightVariant weights = WeightVariant::sum;
    int alpha = 2;
    bool numeric = true;  // condition numbers of G (planar only)
    Execution execution = Execution::parallel;
};

struct CompareRow {
    std::string name;
    int cycles = 0;
    int total_length = 0;
    OverlapObjectives overlap;
    int xd = 0;
    int completed_from_tree = 0;
    IndependenceAudit audit;
    std::optional<ConditionReport> condition;
};

struct CompareReport {
    std::string title;
    std::vector<CompareRow> rows;
    std::vector<std::string> warnings;
};

/// One row per algorithm, in the configured order. Runs may execute
/// concurrently; results are collected in order.
CompareReport run_compare(const StructuralModel& model, const CompareConfig& config, std::string title = {});

/// Builds G for a basis and returns its condition report.
ConditionReport basis_condition(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis& basis);

std::string format_table(const CompareReport& report);
std::string format_csv(const CompareReport& report);

/// printf-style "%.6g" and "%.6E" helpers used by every report.
std::string fmt_g(double v);
std::string fmt_e(double v);

}  // namespace fcb
