#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcb/cycles.hpp"
#include "fcb/model.hpp"
#include "fcb/parallel.hpp"

namespace fcb {

enum class Ordering { weight_descending, length_ascending };

/// One of the five basis-selection algorithms, or the spanning-tree baseline (id 0).
///   1: SRT cycles,  weight-descending greedy
///   2: SRTM cycles, weight-descending greedy
///   3: SRT cycles,  length-ascending greedy
///   4: SRTM cycles, length-ascending greedy
///   5: SRTM cycles, inadmissible generators processed first and kept out of
///      later cycles; ordering configurable (weight-descending by default)
struct AlgorithmSpec {
    int id = 1;
    TreeKind tree = TreeKind::srt;
    Ordering ordering = Ordering::weight_descending;
    bool avoid_inadmissible = false;

    static AlgorithmSpec make(int id, std::optional<Ordering> override_ordering = std::nullopt);
    static AlgorithmSpec baseline();
    std::string name() const;
};

/// Tally of the two independence controls run side by side during selection.
struct IndependenceAudit {
    int decisions = 0;
    int disagreements = 0;
};

struct CycleBasis {
    std::vector<CycleVector> cycles;
    AlgorithmSpec algorithm;
    int member_count = 0;
    int completed_from_tree = 0;  // cycles added by the fundamental-cycle completion step
    IndependenceAudit audit;

    int total_length() const;
};

struct GenerateOptions {
    Execution execution = Execution::parallel;
    bool cross_check = true;  // also run the admissible-expansion control
};

/// Candidate cycles, one per non-bridge generator member, in member order.
/// For algorithm 5 inadmissible generators come first, ascending by weight.
std::vector<CycleVector> generate_candidates(const WeightedGraph& graph, const AlgorithmSpec& spec,
                                             const AdmissibilityPartition* partition,
                                             Execution execution = Execution::parallel);

/// Sorts candidates by the algorithm's ordering; ties keep generator order.
void order_candidates(std::vector<CycleVector>& candidates, Ordering ordering);

CycleBasis generate_basis(const WeightedGraph& graph, const AlgorithmSpec& spec,
                          const AdmissibilityPartition* partition = nullptr,
                          const GenerateOptions& options = {});

/// Fundamental cycles of an SRT rooted at the ground node (node 0 when the
/// graph has no ground), one per chord in ascending member order.
CycleBasis baseline_tree_basis(const WeightedGraph& graph);

/// Cycles x members matrix over GF(2); row order follows the basis.
struct IncidenceMatrix {
    int members = 0;
    std::vector<BitVector> rows;

    int cycles() const noexcept { return static_cast<int>(rows.size()); }
    bool at(int i, int j) const { return rows[static_cast<std::size_t>(i)].test(static_cast<std::size_t>(j)); }
    std::size_t ones() const;
};

/// D = C C^t over the integers with the row intersection coefficients.
struct AdjacencyMatrix {
    int size = 0;
    std::vector<int> entries;  // row-major size x size
    std::vector<int> sigma;    // sigma[i] = #{ j > i : C_i and C_j share a member }

    int at(int i, int j) const { return entries[static_cast<std::size_t>(i * size + j)]; }
    int nonzeros() const;
};

IncidenceMatrix incidence_matrix(const CycleBasis& basis);
/// Throws Error(internal) if chi(D) != b1 + 2 * sum(sigma).
AdjacencyMatrix adjacency_matrix(const IncidenceMatrix& c, Execution execution = Execution::parallel);

/// Overlap objectives sum_i L(U_i & C_{i+1}) and sum_i W(U_i & C_{i+1}), where
/// U_i is the union of the first i cycles.
struct OverlapObjectives {
    int length = 0;
    double weight = 0.0;
};
OverlapObjectives overlap_objectives(const WeightedGraph& graph, const CycleBasis& basis);

}  // namespace fcb
