#include "fcb/force.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "fcb/error.hpp"

namespace fcb {

namespace {

using Vec3 = Eigen::Vector3d;  // (Fx, Fy, Mz) or (N, V, M)

void require_planar(const StructuralModel& model, const char* what) {
    if (model.dimension() != Dimension::planar)
        throw Error(ErrorCode::unsupported_3d, std::string(what) + " is only available for planar frames");
}

Eigen::Vector2d position(const Node& n) { return {n.xyz[0], n.xyz[1]}; }

// Moves a force acting at `from` so that it acts at `to`.
Vec3 transfer(const Vec3& f, const Eigen::Vector2d& from, const Eigen::Vector2d& to) {
    const Eigen::Vector2d d = from - to;
    return {f[0], f[1], f[2] + d.x() * f[1] - d.y() * f[0]};
}

// Global <-> local (N, V, M). The map is its own inverse.
Eigen::Matrix3d rotation(const StructuralModel& model, std::size_t m) {
    const auto a = position(model.end_a(m));
    const auto b = position(model.end_b(m));
    const double len = model.length(m);
    const double c = (b.x() - a.x()) / len;
    const double s = (b.y() - a.y()) / len;
    Eigen::Matrix3d t;
    t << c, s, 0, s, -c, 0, 0, 0, 1;
    return t;
}

// Members of a simple cycle in traversal order with +1 for a->b, -1 for b->a.
std::vector<std::pair<int, int>> walk_cycle(const WeightedGraph& graph, const CycleVector& cycle) {
    const int start = cycle.generator >= 0 ? cycle.generator : cycle.members.front();
    if (!cycle.bits.test(static_cast<std::size_t>(start)))
        throw Error(ErrorCode::internal, "cycle generator is not a cycle member");

    std::vector<std::pair<int, int>> out{{start, +1}};
    std::vector<char> used(static_cast<std::size_t>(graph.member_count()), 0);
    used[static_cast<std::size_t>(start)] = 1;
    int node = graph.member(start).b;
    while (out.size() < cycle.members.size()) {
        int next = -1;
        int degree = 0;
        for (int m : graph.incident(node)) {
            if (!cycle.bits.test(static_cast<std::size_t>(m))) continue;
            ++degree;
            if (!used[static_cast<std::size_t>(m)] && next < 0) next = m;
        }
        if (degree != 2 || next < 0) throw Error(ErrorCode::internal, "stress systems need simple cycles");
        used[static_cast<std::size_t>(next)] = 1;
        out.emplace_back(next, graph.member(next).a == node ? +1 : -1);
        node = graph.other_end(next, node);
    }
    if (node != graph.member(start).a) throw Error(ErrorCode::internal, "stress systems need simple cycles");
    return out;
}

void accumulate_block(Eigen::Ref<Eigen::Matrix3d> out, const Eigen::Ref<const Eigen::Matrix3d>& bi,
                      const Eigen::Matrix3d& f, const Eigen::Ref<const Eigen::Matrix3d>& bj) {
    out.noalias() += bi.transpose() * (f * bj);
}

void check_positive_definite(const Matrix& g) {
    if (g.rows() == 0) return;
    Eigen::LDLT<Matrix> ldlt(g);
    const Vector d = ldlt.vectorD();
    const double scale = d.cwiseAbs().maxCoeff();
    if (ldlt.info() != Eigen::Success || !(scale > 0.0) || d.minCoeff() <= 1e-13 * scale)
        throw Error(ErrorCode::rank_deficient, "G = B1^t Fm B1 is singular; B1 is rank deficient");
}

}  // namespace

Eigen::Matrix3d member_flexibility(const Section& section, double length) {
    if (!(length > 0.0)) throw Error(ErrorCode::domain, "member length must be positive");
    const double ea = section.modulus * section.area;
    const double ei = section.modulus * section.inertia;
    const double l = length;
    Eigen::Matrix3d f;
    f << l / ea, 0, 0,
         0, l * l * l / (3 * ei), l * l / (2 * ei),
         0, l * l / (2 * ei), l / ei;
    return f;
}

Matrix UnassembledFlexibility::dense() const {
    const auto n = static_cast<Eigen::Index>(3 * blocks.size());
    Matrix out = Matrix::Zero(n, n);
    for (std::size_t m = 0; m < blocks.size(); ++m)
        out.block<3, 3>(static_cast<Eigen::Index>(3 * m), static_cast<Eigen::Index>(3 * m)) = blocks[m];
    return out;
}

Matrix UnassembledFlexibility::apply(const Matrix& x) const {
    if (x.rows() != static_cast<Eigen::Index>(3 * blocks.size()))
        throw Error(ErrorCode::domain, "Fm * x: row count mismatch");
    Matrix out(x.rows(), x.cols());
    for (std::size_t m = 0; m < blocks.size(); ++m) {
        const auto r = static_cast<Eigen::Index>(3 * m);
        out.middleRows<3>(r).noalias() = blocks[m] * x.middleRows<3>(r);
    }
    return out;
}

UnassembledFlexibility unassembled_flexibility(const StructuralModel& model) {
    require_planar(model, "the flexibility matrix");
    UnassembledFlexibility fm;
    fm.blocks.reserve(model.members().size());
    for (std::size_t m = 0; m < model.members().size(); ++m)
        fm.blocks.push_back(member_flexibility(model.section_of(m), model.length(m)));
    return fm;
}

Matrix build_b1(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis& basis) {
    require_planar(model, "B1");
    const auto members = static_cast<Eigen::Index>(model.members().size());
    if (graph.member_count() != members || basis.member_count != members)
        throw Error(ErrorCode::domain, "B1: graph, basis and model disagree on the member count");

    Matrix b1 = Matrix::Zero(3 * members, 3 * static_cast<Eigen::Index>(basis.cycles.size()));
    for (std::size_t k = 0; k < basis.cycles.size(); ++k) {
        const auto walk = walk_cycle(graph, basis.cycles[k]);
        const auto g = static_cast<std::size_t>(walk.front().first);
        const auto cut = position(model.end_a(g));
        const Eigen::Matrix3d tg = rotation(model, g);
        for (int unit = 0; unit < 3; ++unit) {
            const Vec3 x = tg * Vec3::Unit(unit);
            const auto col = static_cast<Eigen::Index>(3 * k) + unit;
            for (const auto& [m, sign] : walk) {
                const auto mi = static_cast<std::size_t>(m);
                const Vec3 fa = sign * transfer(x, cut, position(model.end_a(mi)));
                b1.block<3, 1>(3 * m, col) = rotation(model, mi) * fa;
            }
        }
    }
    return b1;
}

ParticularSolution build_b0(const StructuralModel& model, const WeightedGraph& graph, const LoadCase& loads) {
    require_planar(model, "B0");
    if (!graph.ground()) throw Error(ErrorCode::domain, "B0: the graph has no ground node");

    std::map<int, int> graph_node;  // model id -> graph index
    for (int n = 0; n < graph.node_count(); ++n)
        if (graph.node_ids()[static_cast<std::size_t>(n)] >= 0) graph_node[graph.node_ids()[static_cast<std::size_t>(n)]] = n;

    ParticularSolution out;
    std::vector<std::pair<Vec3, double>> units;  // unit load, magnitude
    for (const auto& load : loads.loads) {
        if (!model.find_node(load.node))
            throw Error(ErrorCode::invalid_load, "load references missing node " + std::to_string(load.node));
        if (!std::isfinite(load.fx) || !std::isfinite(load.fy) || !std::isfinite(load.moment))
            throw Error(ErrorCode::invalid_load, "load at node " + std::to_string(load.node) + " is not finite");
        const double values[3] = {load.fx, load.fy, load.moment};
        for (int d = 0; d < 3; ++d) {
            if (values[d] == 0.0) continue;
            if (model.is_supported(load.node))
                throw Error(ErrorCode::invalid_load, "load applied at supported node " + std::to_string(load.node));
            out.components.push_back({load.node, d});
            units.emplace_back(Vec3::Unit(d), values[d]);
        }
    }

    const auto tree = build_srt(graph, *graph.ground());
    const auto members = static_cast<Eigen::Index>(model.members().size());
    out.b0 = Matrix::Zero(3 * members, static_cast<Eigen::Index>(units.size()));
    out.p.resize(static_cast<Eigen::Index>(units.size()));
    for (std::size_t k = 0; k < units.size(); ++k) {
        const auto& comp = out.components[k];
        const auto at = position(model.nodes()[model.node_index(comp.node)]);
        out.p[static_cast<Eigen::Index>(k)] = units[k].second;
        int child = graph_node.at(comp.node);
        for (int m : tree.path_to_root(child)) {
            const auto mi = static_cast<std::size_t>(m);
            const int sign = model.members()[mi].node_a == graph.node_ids()[static_cast<std::size_t>(child)] ? 1 : -1;
            const Vec3 fa = sign * transfer(units[k].first, at, position(model.end_a(mi)));
            out.b0.block<3, 1>(3 * m, static_cast<Eigen::Index>(k)) = rotation(model, mi) * fa;
            child = tree.parent_node[static_cast<std::size_t>(child)];
        }
    }
    return out;
}

Matrix assemble_g(const Matrix& b1, const UnassembledFlexibility& fm, Execution execution) {
    const auto members = static_cast<Eigen::Index>(fm.blocks.size());
    if (b1.rows() != 3 * members || b1.cols() % 3 != 0)
        throw Error(ErrorCode::domain, "G: B1 must be 3M x 3b with M matching Fm");
    const Eigen::Index cycles = b1.cols() / 3;
    Matrix g = Matrix::Zero(b1.cols(), b1.cols());

    if (execution == Execution::serial) {
        for (Eigen::Index m = 0; m < members; ++m) {
            const auto& f = fm.blocks[static_cast<std::size_t>(m)];
            for (Eigen::Index i = 0; i < cycles; ++i)
                for (Eigen::Index j = 0; j < cycles; ++j)
                    accumulate_block(g.block<3, 3>(3 * i, 3 * j), b1.block<3, 3>(3 * m, 3 * i), f,
                                     b1.block<3, 3>(3 * m, 3 * j));
        }
    } else {
        std::vector<std::vector<Eigen::Index>> support(static_cast<std::size_t>(cycles));
        for (Eigen::Index i = 0; i < cycles; ++i)
            for (Eigen::Index m = 0; m < members; ++m)
                if (!b1.block<3, 3>(3 * m, 3 * i).isZero(0.0)) support[static_cast<std::size_t>(i)].push_back(m);

#pragma omp parallel for schedule(dynamic)
        for (Eigen::Index i = 0; i < cycles; ++i) {
            const auto& si = support[static_cast<std::size_t>(i)];
            for (Eigen::Index j = i; j < cycles; ++j) {
                const auto& sj = support[static_cast<std::size_t>(j)];
                Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
                auto a = si.begin();
                auto b = sj.begin();
                while (a != si.end() && b != sj.end()) {
                    if (*a < *b) { ++a; continue; }
                    if (*b < *a) { ++b; continue; }
                    accumulate_block(acc, b1.block<3, 3>(3 * *a, 3 * i), fm.blocks[static_cast<std::size_t>(*a)],
                                     b1.block<3, 3>(3 * *a, 3 * j));
                    ++a;
                    ++b;
                }
                g.block<3, 3>(3 * i, 3 * j) = acc;
                if (j != i) g.block<3, 3>(3 * j, 3 * i) = acc.transpose();
            }
        }
    }

    g = (0.5 * (g + g.transpose())).eval();
    check_positive_definite(g);
    return g;
}

ForceSolution solve_force_method(const StructuralModel& model, const WeightedGraph& graph, const CycleBasis& basis,
                                 const LoadCase& loads) {
    const auto fm = unassembled_flexibility(model);
    const Matrix b1 = build_b1(model, graph, basis);
    const auto particular = build_b0(model, graph, loads);
    const Matrix g = assemble_g(b1, fm);

    const Vector r0 = particular.b0 * particular.p;
    const Vector rhs = b1.transpose() * fm.apply(r0);
    ForceSolution s;
    s.q = -g.ldlt().solve(rhs);
    s.r = r0 + b1 * s.q;
    const Matrix fr = fm.apply(s.r);
    s.v0 = particular.b0.transpose() * fr;
    const double denom = rhs.norm();
    const double residual = (b1.transpose() * fr).norm();
    s.compatibility_residual = denom > 0.0 ? residual / denom : residual;
    return s;
}

double equilibrium_residual(const StructuralModel& model, const Vector& r, const LoadCase& applied) {
    require_planar(model, "the equilibrium check");
    const auto members = model.members().size();
    if (r.size() != static_cast<Eigen::Index>(3 * members))
        throw Error(ErrorCode::domain, "equilibrium check: force vector must have 3M entries");

    std::vector<Vec3> balance(model.nodes().size(), Vec3::Zero());
    double scale = r.size() ? r.cwiseAbs().maxCoeff() : 0.0;
    for (const auto& load : applied.loads) {
        const Vec3 p(load.fx, load.fy, load.moment);
        balance[model.node_index(load.node)] += p;
        scale = std::max(scale, p.cwiseAbs().maxCoeff());
    }
    for (std::size_t m = 0; m < members; ++m) {
        const Vec3 fa = rotation(model, m) * r.segment<3>(static_cast<Eigen::Index>(3 * m));
        const auto pa = position(model.end_a(m));
        const auto pb = position(model.end_b(m));
        const Vec3 fb = -transfer(fa, pa, pb);
        balance[model.node_index(model.members()[m].node_a)] -= fa;
        balance[model.node_index(model.members()[m].node_b)] -= fb;
    }

    double worst = 0.0;
    for (std::size_t n = 0; n < balance.size(); ++n)
        if (!model.is_supported(model.nodes()[n].id)) worst = std::max(worst, balance[n].cwiseAbs().maxCoeff());
    return scale > 0.0 ? worst / scale : worst;
}

}  // namespace fcb
