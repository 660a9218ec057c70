#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "fcb/basis.hpp"
#include "fcb/error.hpp"
#include "fcb/force.hpp"
#include "fcb/grid.hpp"
#include "fcb/io.hpp"
#include "fcb/metrics.hpp"
#include "fcb/render.hpp"
#include "fcb/report.hpp"

using namespace fcb;

namespace {

struct Source {
    std::string model_path;
    int stories = 0;
    int spans = 0;
    int bays_y = 0;
    double bay_width = 3.0;
    double story_height = 3.0;
    std::string pattern = "homogeneous";
    std::string weights = "sum";
    int alpha = 2;
};

void add_source(CLI::App* cmd, Source& s) {
    cmd->add_option("-m,--model", s.model_path, "Frame file (JSON)");
    cmd->add_option("--stories", s.stories, "Generate a grid frame with this many stories");
    cmd->add_option("--spans", s.spans, "Grid spans along x");
    cmd->add_option("--bays-y", s.bays_y, "Grid bays along y (> 0 builds a space frame)");
    cmd->add_option("--bay-width", s.bay_width, "Grid bay width");
    cmd->add_option("--story-height", s.story_height, "Grid story height");
    cmd->add_option("--pattern", s.pattern, "homogeneous | weak-beams | weak-columns | checker");
    cmd->add_option("--weights", s.weights, "Member weight variant: sum | sqrt");
    cmd->add_option("--alpha", s.alpha, "F-admissibility factor");
}

StructuralModel load_model(const Source& s) {
    if (!s.model_path.empty()) return parse_model(s.model_path);
    if (s.stories < 1 || s.spans < 1) throw Error(ErrorCode::usage, "give --model or --stories/--spans");
    GridSpec g;
    g.stories = s.stories;
    g.spans = s.spans;
    g.bays_y = s.bays_y;
    g.bay_width = s.bay_width;
    g.story_height = s.story_height;
    g.pattern = parse_pattern(s.pattern);
    return generate_grid(g);
}

WeightVariant weight_variant(const std::string& name) {
    if (name == "sum") return WeightVariant::sum;
    if (name == "sqrt") return WeightVariant::sqrt_sum;
    throw Error(ErrorCode::usage, "unknown weight variant '" + name + "'");
}

std::optional<Ordering> ordering(const std::string& name) {
    if (name.empty()) return std::nullopt;
    if (name == "weight") return Ordering::weight_descending;
    if (name == "length") return Ordering::length_ascending;
    throw Error(ErrorCode::usage, "unknown ordering '" + name + "'");
}

AlgorithmSpec algorithm(const std::string& id, const std::string& order) {
    if (id == "baseline" || id == "0") return AlgorithmSpec::baseline();
    int n = 0;
    try {
        n = std::stoi(id);
    } catch (const std::exception&) {
        throw Error(ErrorCode::usage, "unknown algorithm '" + id + "'");
    }
    return AlgorithmSpec::make(n, ordering(order));
}

CycleBasis make_basis(const WeightedGraph& graph, const AlgorithmSpec& spec, int alpha) {
    if (spec.id == 0) return baseline_tree_basis(graph);
    const auto partition = classify_members(graph, alpha);
    return generate_basis(graph, spec, &partition);
}

void emit(const std::string& out, const std::string& text) {
    if (out.empty() || out == "-")
        std::cout << text;
    else
        write_file(out, text);
}

std::string member_list(const StructuralModel& model, const CycleVector& c) {
    std::string s;
    for (int m : c.members) s += (s.empty() ? "" : " ") + std::to_string(model.members()[static_cast<std::size_t>(m)].id);
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sub-optimal cycle bases and force-method conditioning for skeletal frames"};
    app.set_config("--config", "", "Configuration file (TOML/INI); command-line flags take precedence");
    app.require_subcommand(1);

    Source src;
    std::string out;
    std::string algo = "1";
    std::string order;

    auto* gen = app.add_subcommand("generate", "Write a generated grid frame as a frame file");
    add_source(gen, src);
    gen->add_option("-o,--out", out, "Output path (default stdout)");

    auto* cyc = app.add_subcommand("cycles", "Select a cycle basis and print it");
    add_source(cyc, src);
    cyc->add_option("-a,--algorithm", algo, "1..5 or baseline");
    cyc->add_option("--order", order, "Ordering override for algorithm 5: weight | length");
    cyc->add_option("-o,--out", out, "Output path (default stdout)");

    std::string loads_path;
    std::string b1_out, g_out;
    auto* frc = app.add_subcommand("force", "Solve the force method for a load case");
    add_source(frc, src);
    frc->add_option("-a,--algorithm", algo, "1..5 or baseline");
    frc->add_option("--order", order, "Ordering override for algorithm 5");
    frc->add_option("-l,--loads", loads_path, "Load-case file")->required();
    frc->add_option("--b1-out", b1_out, "Write B1 as a matrix file");
    frc->add_option("--g-out", g_out, "Write G as a matrix file");
    frc->add_option("-o,--out", out, "Output path (default stdout)");

    std::string matrix_path;
    auto* cnd = app.add_subcommand("condition", "Condition numbers of G, or of a matrix file");
    add_source(cnd, src);
    cnd->add_option("-a,--algorithm", algo, "1..5 or baseline");
    cnd->add_option("--order", order, "Ordering override for algorithm 5");
    cnd->add_option("--matrix", matrix_path, "Matrix file instead of a frame");
    cnd->add_option("-o,--out", out, "Output path (default stdout)");

    std::vector<std::string> algos;
    std::string format = "table";
    bool serial = false;
    auto* cmp = app.add_subcommand("compare", "Compare algorithms on one frame");
    add_source(cmp, src);
    cmp->add_option("-a,--algorithms", algos, "Algorithms to compare (1..5, baseline)")->delimiter(',');
    cmp->add_option("--order", order, "Ordering override for algorithm 5");
    cmp->add_option("--format", format, "table | csv")->check(CLI::IsMember({"table", "csv"}));
    cmp->add_flag("--serial", serial, "Run the algorithms one after another");
    cmp->add_option("-o,--out", out, "Output path (default stdout)");

    std::string kind = "sparsity";
    std::string which = "g";
    bool blocks = false;
    int scale = 1;
    auto* rnd = app.add_subcommand("render", "Render a sparsity image (PBM) or a frame drawing (SVG)");
    add_source(rnd, src);
    rnd->add_option("-a,--algorithm", algo, "1..5 or baseline");
    rnd->add_option("--order", order, "Ordering override for algorithm 5");
    rnd->add_option("--kind", kind, "sparsity | frame")->check(CLI::IsMember({"sparsity", "frame"}));
    rnd->add_option("--matrix", which, "Sparsity source: g | d")->check(CLI::IsMember({"g", "d"}));
    rnd->add_flag("--blocks", blocks, "One pixel per 3x3 block");
    rnd->add_option("--scale", scale, "Pixels per entry");
    rnd->add_option("-o,--out", out, "Output path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    }

    try {
        if (*gen) {
            emit(out, write_model_text(load_model(src)));
            return 0;
        }

        if (*cnd && !matrix_path.empty()) {
            const auto r = condition_report(read_matrix(matrix_path));
            emit(out, "PL " + fmt_g(r.pl) + "\nPN " + fmt_e(r.pn.value) + "\nlog10_PN " + fmt_g(r.pn.log10_abs) +
                          "\nPDET " + fmt_e(r.pdet.value) + "\nlog10_PDET " + fmt_g(r.pdet.log10_abs) + "\nnnz " +
                          std::to_string(r.nnz_entries) + "\ng16 " + fmt_g(r.good_digits_double) + "\ng8 " +
                          fmt_g(r.good_digits_single) + "\n");
            return 0;
        }

        const auto model = load_model(src);
        const auto graph = build_graph(model, weight_variant(src.weights));

        if (*cmp) {
            CompareConfig config;
            for (const auto& a : algos) config.algorithms.push_back(algorithm(a, order));
            config.weights = weight_variant(src.weights);
            config.alpha = src.alpha;
            config.execution = serial ? Execution::serial : Execution::parallel;
            const auto report = run_compare(model, config);
            for (const auto& w : report.warnings) std::cerr << "warning: " << w << "\n";
            emit(out, format == "csv" ? format_csv(report) : format_table(report));
            return 0;
        }

        const auto spec = algorithm(algo, order);
        const auto basis = make_basis(graph, spec, src.alpha);

        if (*cyc) {
            const auto d = adjacency_matrix(incidence_matrix(basis));
            std::string text = "algorithm " + spec.name() + "\nb1 " + std::to_string(basis.cycles.size()) +
                               "\nsum_L " + std::to_string(basis.total_length()) + "\nX(D) " +
                               std::to_string(d.nonzeros()) + "\n";
            if (basis.completed_from_tree)
                text += "completed_from_tree " + std::to_string(basis.completed_from_tree) + "\n";
            for (std::size_t k = 0; k < basis.cycles.size(); ++k)
                text += "cycle " + std::to_string(k + 1) + ": " + member_list(model, basis.cycles[k]) + "\n";
            emit(out, text);
            return 0;
        }

        if (*frc) {
            const auto loads = parse_load_case(loads_path);
            const auto sol = solve_force_method(model, graph, basis, loads);
            if (!b1_out.empty()) write_matrix(build_b1(model, graph, basis), b1_out);
            if (!g_out.empty())
                write_matrix(assemble_g(build_b1(model, graph, basis), unassembled_flexibility(model)), g_out);
            std::string text = "algorithm " + spec.name() + "\ncompatibility_residual " +
                               fmt_e(sol.compatibility_residual) + "\nmember N V M\n";
            for (std::size_t m = 0; m < model.members().size(); ++m) {
                const auto i = static_cast<Eigen::Index>(3 * m);
                text += std::to_string(model.members()[m].id) + " " + fmt_g(sol.r[i]) + " " + fmt_g(sol.r[i + 1]) +
                        " " + fmt_g(sol.r[i + 2]) + "\n";
            }
            emit(out, text);
            return 0;
        }

        if (*cnd) {
            const auto r = basis_condition(model, graph, basis);
            emit(out, "algorithm " + spec.name() + "\nPL " + fmt_g(r.pl) + "\nPN " + fmt_e(r.pn.value) +
                          "\nlog10_PN " + fmt_g(r.pn.log10_abs) + "\nPDET " + fmt_e(r.pdet.value) + "\nlog10_PDET " +
                          fmt_g(r.pdet.log10_abs) + "\nnnz_blocks " + std::to_string(r.nnz_blocks) + "\ng16 " +
                          fmt_g(r.good_digits_double) + "\ng8 " + fmt_g(r.good_digits_single) + "\n");
            return 0;
        }

        if (*rnd) {
            if (kind == "frame") {
                render_frame(model, graph, &basis, out);
            } else if (which == "d") {
                const auto d = adjacency_matrix(incidence_matrix(basis));
                Eigen::MatrixXd m(d.size, d.size);
                for (int i = 0; i < d.size; ++i)
                    for (int j = 0; j < d.size; ++j) m(i, j) = d.at(i, j);
                render_sparsity(m, out, false, scale);
            } else {
                const auto g = assemble_g(build_b1(model, graph, basis), unassembled_flexibility(model));
                render_sparsity(g, out, blocks, scale);
            }
            return 0;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
        return e.code() == ErrorCode::usage ? 2 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
