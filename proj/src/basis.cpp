#include "fcb/basis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fcb/error.hpp"

namespace fcb {

int max_threads() {
#ifdef _OPENMP
    return omp_get_max_threads();
#else
    return 1;
#endif
}

AlgorithmSpec AlgorithmSpec::make(int id, std::optional<Ordering> override_ordering) {
    AlgorithmSpec s;
    s.id = id;
    switch (id) {
        case 1: s.tree = TreeKind::srt; s.ordering = Ordering::weight_descending; break;
        case 2: s.tree = TreeKind::srtm; s.ordering = Ordering::weight_descending; break;
        case 3: s.tree = TreeKind::srt; s.ordering = Ordering::length_ascending; break;
        case 4: s.tree = TreeKind::srtm; s.ordering = Ordering::length_ascending; break;
        case 5:
            s.tree = TreeKind::srtm;
            s.ordering = override_ordering.value_or(Ordering::weight_descending);
            s.avoid_inadmissible = true;
            break;
        default: throw Error(ErrorCode::usage, "algorithm id must be in 1..5, got " + std::to_string(id));
    }
    return s;
}

AlgorithmSpec AlgorithmSpec::baseline() {
    AlgorithmSpec s;
    s.id = 0;
    s.tree = TreeKind::srt;
    s.ordering = Ordering::length_ascending;
    return s;
}

std::string AlgorithmSpec::name() const {
    if (id == 0) return "baseline";
    std::string n = "alg" + std::to_string(id);
    if (id == 5) n += ordering == Ordering::weight_descending ? "w" : "l";
    return n;
}

int CycleBasis::total_length() const {
    int total = 0;
    for (const auto& c : cycles) total += c.length();
    return total;
}

namespace {

// Sort key insensitive to summation-order round-off in cycle weights.
double weight_key(double w) {
    if (w == 0.0) return 0.0;
    const double scale = std::pow(10.0, 11 - static_cast<int>(std::floor(std::log10(std::abs(w)))));
    return std::round(w * scale) / scale;
}

// Cycle on generator m, with `blocked` masked when that still leaves a cycle.
std::optional<CycleVector> masked_cycle(const WeightedGraph& graph, int m, TreeKind kind,
                                        const std::vector<char>& blocked) {
    if (!blocked.empty())
        if (auto c = min_cycle_on_member(graph, m, kind, blocked)) return c;
    return min_cycle_on_member(graph, m, kind);
}

}  // namespace

std::vector<CycleVector> generate_candidates(const WeightedGraph& graph, const AlgorithmSpec& spec,
                                             const AdmissibilityPartition* partition, Execution execution) {
    const int members = graph.member_count();

    std::vector<int> order;  // generator processing order
    std::vector<int> masked_prefix(static_cast<std::size_t>(members), 0);
    if (spec.avoid_inadmissible) {
        if (!partition) throw Error(ErrorCode::usage, "algorithm 5 requires an admissibility partition");
        order = partition->inadmissible;
        for (std::size_t j = 0; j < order.size(); ++j)
            masked_prefix[static_cast<std::size_t>(order[j])] = static_cast<int>(j);
        for (int m = 0; m < members; ++m)
            if (partition->is_admissible[static_cast<std::size_t>(m)]) order.push_back(m);
    } else {
        order.resize(static_cast<std::size_t>(members));
        std::iota(order.begin(), order.end(), 0);
    }

    const auto na_count = static_cast<int>(spec.avoid_inadmissible ? partition->inadmissible.size() : 0);
    std::vector<std::optional<CycleVector>> slots(order.size());
    const bool parallel = execution == Execution::parallel;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int k = 0; k < static_cast<int>(order.size()); ++k) {
        const int m = order[static_cast<std::size_t>(k)];
        if (k < na_count) {
            // The j-th inadmissible generator avoids the j-1 lighter ones.
            std::vector<char> blocked(static_cast<std::size_t>(members), 0);
            for (int j = 0; j < masked_prefix[static_cast<std::size_t>(m)]; ++j)
                blocked[static_cast<std::size_t>(partition->inadmissible[static_cast<std::size_t>(j)])] = 1;
            slots[static_cast<std::size_t>(k)] = masked_cycle(graph, m, spec.tree, blocked);
        } else {
            slots[static_cast<std::size_t>(k)] = min_cycle_on_member(graph, m, spec.tree);
        }
    }

    std::vector<CycleVector> out;
    out.reserve(slots.size());
    for (auto& s : slots)
        if (s) out.push_back(std::move(*s));
    return out;
}

void order_candidates(std::vector<CycleVector>& candidates, Ordering ordering) {
    if (ordering == Ordering::weight_descending)
        std::ranges::stable_sort(candidates, [](const CycleVector& x, const CycleVector& y) {
            return weight_key(x.weight) > weight_key(y.weight);
        });
    else
        std::ranges::stable_sort(candidates, {}, &CycleVector::length);
}

namespace {

std::vector<CycleVector> fundamental_cycles(const WeightedGraph& graph) {
    std::vector<char> in_tree(static_cast<std::size_t>(graph.member_count()), 0);
    std::vector<int> parent_node(static_cast<std::size_t>(graph.node_count()), -1);
    std::vector<int> parent_member(static_cast<std::size_t>(graph.node_count()), -1);
    std::vector<char> reached(static_cast<std::size_t>(graph.node_count()), 0);

    std::vector<int> roots;
    roots.push_back(graph.ground().value_or(0));
    for (int n = 0; n < graph.node_count(); ++n) roots.push_back(n);
    for (int root : roots) {
        if (graph.node_count() == 0 || reached[static_cast<std::size_t>(root)]) continue;
        const auto tree = build_srt(graph, root);
        for (int n = 0; n < graph.node_count(); ++n) {
            if (!tree.reached(n)) continue;
            reached[static_cast<std::size_t>(n)] = 1;
            parent_node[static_cast<std::size_t>(n)] = tree.parent_node[static_cast<std::size_t>(n)];
            parent_member[static_cast<std::size_t>(n)] = tree.parent_member[static_cast<std::size_t>(n)];
            if (tree.parent_member[static_cast<std::size_t>(n)] >= 0)
                in_tree[static_cast<std::size_t>(tree.parent_member[static_cast<std::size_t>(n)])] = 1;
        }
    }

    std::vector<CycleVector> out;
    for (int m = 0; m < graph.member_count(); ++m) {
        if (in_tree[static_cast<std::size_t>(m)]) continue;
        BitVector bits(static_cast<std::size_t>(graph.member_count()));
        bits.set(static_cast<std::size_t>(m));
        for (int end : {graph.member(m).a, graph.member(m).b})
            for (int n = end; parent_member[static_cast<std::size_t>(n)] >= 0;
                 n = parent_node[static_cast<std::size_t>(n)])
                bits.flip(static_cast<std::size_t>(parent_member[static_cast<std::size_t>(n)]));
        out.push_back(CycleVector::from_bits(graph, bits, m));
    }
    return out;
}

}  // namespace

CycleBasis generate_basis(const WeightedGraph& graph, const AlgorithmSpec& spec,
                          const AdmissibilityPartition* partition, const GenerateOptions& options) {
    const int rank = cycle_rank(graph);
    auto candidates = generate_candidates(graph, spec, partition, options.execution);
    order_candidates(candidates, spec.ordering);

    CycleBasis basis;
    basis.algorithm = spec;
    basis.member_count = graph.member_count();

    Gf2Eliminator table(static_cast<std::size_t>(graph.member_count()));
    CycleUnion cycle_union(graph);
    for (auto& c : candidates) {
        if (static_cast<int>(basis.cycles.size()) == rank) break;
        const bool independent = table.is_independent(c.bits);
        if (options.cross_check) {
            ++basis.audit.decisions;
            if (independent != cycle_union.admissible(c)) ++basis.audit.disagreements;
        }
        if (!independent) continue;
        table.insert(c.bits);
        cycle_union.add(c);
        basis.cycles.push_back(std::move(c));
    }

    if (static_cast<int>(basis.cycles.size()) < rank) {
        for (auto& c : fundamental_cycles(graph)) {
            if (static_cast<int>(basis.cycles.size()) == rank) break;
            if (!table.insert(c.bits)) continue;
            basis.cycles.push_back(std::move(c));
            ++basis.completed_from_tree;
        }
    }
    if (static_cast<int>(basis.cycles.size()) != rank)
        throw Error(ErrorCode::internal, "basis selection found " + std::to_string(basis.cycles.size()) +
                                             " independent cycles, expected " + std::to_string(rank));
    return basis;
}

CycleBasis baseline_tree_basis(const WeightedGraph& graph) {
    CycleBasis basis;
    basis.algorithm = AlgorithmSpec::baseline();
    basis.member_count = graph.member_count();
    basis.cycles = fundamental_cycles(graph);
    return basis;
}

std::size_t IncidenceMatrix::ones() const {
    std::size_t n = 0;
    for (const auto& r : rows) n += r.count();
    return n;
}

int AdjacencyMatrix::nonzeros() const {
    return static_cast<int>(std::ranges::count_if(entries, [](int v) { return v != 0; }));
}

IncidenceMatrix incidence_matrix(const CycleBasis& basis) {
    IncidenceMatrix c;
    c.members = basis.member_count;
    c.rows.reserve(basis.cycles.size());
    for (const auto& cycle : basis.cycles) c.rows.push_back(cycle.bits);
    return c;
}

AdjacencyMatrix adjacency_matrix(const IncidenceMatrix& c, Execution execution) {
    AdjacencyMatrix d;
    const int n = c.cycles();
    d.size = n;
    d.entries.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0);
    d.sigma.assign(static_cast<std::size_t>(n), 0);
    const bool parallel = execution == Execution::parallel;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int i = 0; i < n; ++i) {
        const auto& ri = c.rows[static_cast<std::size_t>(i)];
        for (int j = 0; j < n; ++j) {
            const int shared = static_cast<int>(ri.count_common(c.rows[static_cast<std::size_t>(j)]));
            d.entries[static_cast<std::size_t>(i * n + j)] = shared;
            if (j > i && shared != 0) ++d.sigma[static_cast<std::size_t>(i)];
        }
    }

    const int sigma_sum = std::accumulate(d.sigma.begin(), d.sigma.end(), 0);
    if (d.nonzeros() != n + 2 * sigma_sum)
        throw Error(ErrorCode::internal, "adjacency identity chi(CC^t) = b1 + 2 sum(sigma) violated");
    return d;
}

OverlapObjectives overlap_objectives(const WeightedGraph& graph, const CycleBasis& basis) {
    OverlapObjectives o;
    if (basis.cycles.empty()) return o;
    BitVector seen = basis.cycles.front().bits;
    for (std::size_t i = 1; i < basis.cycles.size(); ++i) {
        for (int m : basis.cycles[i].members) {
            if (seen.test(static_cast<std::size_t>(m))) {
                ++o.length;
                o.weight += graph.weight(m);
            } else {
                seen.set(static_cast<std::size_t>(m));
            }
        }
    }
    return o;
}

}  // namespace fcb
