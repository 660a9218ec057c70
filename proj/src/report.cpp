#include "fcb/report.hpp"

#include <algorithm>
#include <cstdio>
#include <exception>

#include "fcb/error.hpp"
#include "fcb/force.hpp"
#include "fcb/io.hpp"

namespace fcb {

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
    return buf;
}

std::string fmt_e(double v) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.6E", v == 0.0 ? 0.0 : v);
    return buf;
}

ConditionReport basis_condition(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis& basis) {
    const auto fm = unassembled_flexibility(model);
    return condition_report(assemble_g(build_b1(model, graph, basis), fm));
}

CompareReport run_compare(const StructuralModel& model, const CompareConfig& config, std::string title) {
    if (config.algorithms.empty()) throw Error(ErrorCode::usage, "compare needs at least one algorithm");

    CompareReport report;
    report.title = std::move(title);
    const auto graph = build_graph(model, config.weights);
    const auto partition = classify_members(graph, config.alpha);
    bool numeric = config.numeric;
    if (numeric && model.dimension() != Dimension::planar) {
        report.warnings.push_back("3D model: condition numbers need a 3D force method; reporting combinatorial columns only");
        numeric = false;
    }

    const auto n = static_cast<int>(config.algorithms.size());
    std::vector<CompareRow> rows(static_cast<std::size_t>(n));
    std::vector<std::exception_ptr> failures(static_cast<std::size_t>(n));
    const bool parallel = config.execution == Execution::parallel;

#pragma omp parallel for schedule(dynamic) if (parallel)
    for (int k = 0; k < n; ++k) {
        try {
            const auto& spec = config.algorithms[static_cast<std::size_t>(k)];
            const auto basis = spec.id == 0 ? baseline_tree_basis(graph)
                                            : generate_basis(graph, spec, &partition, {Execution::serial, true});
            auto& row = rows[static_cast<std::size_t>(k)];
            row.name = spec.name();
            row.cycles = static_cast<int>(basis.cycles.size());
            row.total_length = basis.total_length();
            row.overlap = overlap_objectives(graph, basis);
            row.xd = adjacency_matrix(incidence_matrix(basis), Execution::serial).nonzeros();
            row.completed_from_tree = basis.completed_from_tree;
            row.audit = basis.audit;
            if (numeric) row.condition = basis_condition(model, graph, basis);
        } catch (...) {
            failures[static_cast<std::size_t>(k)] = std::current_exception();
        }
    }
    for (const auto& f : failures)
        if (f) std::rethrow_exception(f);

    report.rows = std::move(rows);
    return report;
}

namespace {

std::vector<std::string> header(bool numeric) {
    std::vector<std::string> h{"algorithm", "cycles", "sum_L", "overlap_L", "overlap_W", "X(D)"};
    if (numeric) h.insert(h.end(), {"PL", "PN", "log10_PN", "PDET", "log10_PDET", "nnz_blocks", "g16", "g8"});
    return h;
}

std::vector<std::string> cells(const CompareRow& r, bool numeric) {
    std::vector<std::string> c{r.name, std::to_string(r.cycles), std::to_string(r.total_length),
                               std::to_string(r.overlap.length), fmt_g(r.overlap.weight), std::to_string(r.xd)};
    if (numeric) {
        const auto& k = *r.condition;
        c.insert(c.end(), {fmt_g(k.pl), fmt_e(k.pn.value), fmt_g(k.pn.log10_abs), fmt_e(k.pdet.value),
                           fmt_g(k.pdet.log10_abs), std::to_string(k.nnz_blocks), fmt_g(k.good_digits_double),
                           fmt_g(k.good_digits_single)});
    }
    return c;
}

bool has_numeric(const CompareReport& report) {
    return !report.rows.empty() &&
           std::ranges::all_of(report.rows, [](const CompareRow& r) { return r.condition.has_value(); });
}

}  // namespace

std::string format_table(const CompareReport& report) {
    const bool numeric = has_numeric(report);
    std::vector<std::vector<std::string>> grid{header(numeric)};
    for (const auto& r : report.rows) grid.push_back(cells(r, numeric));

    std::vector<std::size_t> width(grid.front().size(), 0);
    for (const auto& row : grid)
        for (std::size_t j = 0; j < row.size(); ++j) width[j] = std::max(width[j], row[j].size());

    std::string out;
    if (!report.title.empty()) out += report.title + "\n";
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::string line;
        for (std::size_t j = 0; j < grid[i].size(); ++j) {
            const auto& cell = grid[i][j];
            const std::string pad(width[j] - cell.size(), ' ');
            line += j == 0 ? cell + pad : "  " + pad + cell;
        }
        out += line + "\n";
        if (i == 0) out += std::string(line.size(), '-') + "\n";
    }
    return out;
}

std::string format_csv(const CompareReport& report) {
    const bool numeric = has_numeric(report);
    std::string out = "# format_version=" + std::to_string(kFormatVersion) + "\n";
    auto join = [](const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
        return s + "\n";
    };
    out += join(header(numeric));
    for (const auto& r : report.rows) out += join(cells(r, numeric));
    return out;
}

}  // namespace fcb
