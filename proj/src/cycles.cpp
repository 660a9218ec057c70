#include "fcb/cycles.hpp"

#include <algorithm>
#include <numeric>

#include "fcb/error.hpp"

namespace fcb {

std::vector<int> RouteTree::path_to_root(int n) const {
    std::vector<int> path;
    while (parent_member[static_cast<std::size_t>(n)] >= 0) {
        path.push_back(parent_member[static_cast<std::size_t>(n)]);
        n = parent_node[static_cast<std::size_t>(n)];
    }
    return path;
}

std::vector<int> RouteTree::members() const {
    std::vector<int> out;
    for (int m : parent_member)
        if (m >= 0) out.push_back(m);
    std::ranges::sort(out);
    return out;
}

TreeGrower::TreeGrower(const WeightedGraph& graph, int root, TreeKind kind, const std::vector<char>& blocked)
    : graph_(graph), blocked_(blocked) {
    if (root < 0 || root >= graph.node_count()) throw Error(ErrorCode::domain, "tree root out of range");
    const auto n = static_cast<std::size_t>(graph.node_count());
    tree_.root = root;
    tree_.kind = kind;
    tree_.label.assign(n, -1);
    tree_.parent_node.assign(n, -1);
    tree_.parent_member.assign(n, -1);
    tree_.label[static_cast<std::size_t>(root)] = 0;
    tier_ = {root};
    reached_order_ = {root};
}

void TreeGrower::attach(int node, int parent, int member) {
    const auto i = static_cast<std::size_t>(node);
    tree_.label[i] = tree_.label[static_cast<std::size_t>(parent)] + 1;
    tree_.parent_node[i] = parent;
    tree_.parent_member[i] = member;
    reached_order_.push_back(node);
}

bool TreeGrower::expand() {
    if (expand_regular()) return true;
    if (tree_.kind == TreeKind::srtm) return expand_fallback();
    return false;
}

bool TreeGrower::expand_regular() {
    std::vector<int> next;
    std::vector<int> candidates;
    for (int u : tier_) {
        candidates.clear();
        double sum = 0.0;
        int count = 0;
        for (int m : graph_.incident(u)) {
            if (!blocked_.empty() && blocked_[static_cast<std::size_t>(m)]) continue;
            sum += graph_.weight(m);
            ++count;
            if (!tree_.reached(graph_.other_end(m, u))) candidates.push_back(m);
        }
        if (tree_.kind == TreeKind::srtm && count > 0) {
            const double mean = sum / count;
            std::erase_if(candidates, [&](int m) { return graph_.weight(m) < mean; });
            std::ranges::stable_sort(candidates, [&](int x, int y) { return graph_.weight(x) > graph_.weight(y); });
        }
        for (int m : candidates) {
            const int v = graph_.other_end(m, u);
            if (tree_.reached(v)) continue;
            attach(v, u, m);
            next.push_back(v);
        }
    }
    if (next.empty()) return false;
    std::ranges::sort(next);
    tier_ = std::move(next);
    ++depth_;
    return true;
}

bool TreeGrower::expand_fallback() {
    // Every unreached node next to the tree hangs off its heaviest usable member.
    std::vector<int> next;
    std::vector<std::pair<int, int>> links;  // (node, member)
    for (int v = 0; v < graph_.node_count(); ++v) {
        if (tree_.reached(v)) continue;
        int best = -1;
        for (int m : graph_.incident(v)) {
            if (!blocked_.empty() && blocked_[static_cast<std::size_t>(m)]) continue;
            if (!tree_.reached(graph_.other_end(m, v))) continue;
            if (best < 0 || graph_.weight(m) > graph_.weight(best)) best = m;
        }
        if (best >= 0) links.emplace_back(v, best);
    }
    for (auto [v, m] : links) {
        attach(v, graph_.other_end(m, v), m);
        next.push_back(v);
    }
    if (next.empty()) return false;
    tier_ = std::move(next);
    ++depth_;
    return true;
}

namespace {

RouteTree grow_full(const WeightedGraph& graph, int root, TreeKind kind, std::optional<int> forbidden) {
    std::vector<char> blocked;
    if (forbidden) {
        blocked.assign(static_cast<std::size_t>(graph.member_count()), 0);
        blocked.at(static_cast<std::size_t>(*forbidden)) = 1;
    }
    TreeGrower grower(graph, root, kind, blocked);
    while (grower.expand()) {
    }
    RouteTree tree = std::move(grower).release();
    tree.forbidden = forbidden;
    return tree;
}

}  // namespace

RouteTree build_srt(const WeightedGraph& graph, int root, std::optional<int> forbidden) {
    return grow_full(graph, root, TreeKind::srt, forbidden);
}

RouteTree build_srtm(const WeightedGraph& graph, int root, std::optional<int> forbidden) {
    return grow_full(graph, root, TreeKind::srtm, forbidden);
}

bool is_cycle_set(const WeightedGraph& graph, std::span<const int> members) {
    std::vector<int> degree(static_cast<std::size_t>(graph.node_count()), 0);
    for (int m : members) {
        ++degree[static_cast<std::size_t>(graph.member(m).a)];
        ++degree[static_cast<std::size_t>(graph.member(m).b)];
    }
    return std::ranges::all_of(degree, [](int d) { return d % 2 == 0; });
}

CycleVector CycleVector::from_members(const WeightedGraph& graph, std::vector<int> members, int generator) {
    std::ranges::sort(members);
    if (std::ranges::adjacent_find(members) != members.end())
        throw Error(ErrorCode::internal, "cycle lists a member twice");
    if (!is_cycle_set(graph, members)) throw Error(ErrorCode::internal, "member set is not a cycle set");
    CycleVector c;
    c.bits = BitVector(static_cast<std::size_t>(graph.member_count()));
    for (int m : members) {
        c.bits.set(static_cast<std::size_t>(m));
        c.weight += graph.weight(m);
    }
    c.members = std::move(members);
    c.generator = generator;
    return c;
}

CycleVector CycleVector::from_bits(const WeightedGraph& graph, const BitVector& bits, int generator) {
    std::vector<int> members;
    for (int m = 0; m < graph.member_count(); ++m)
        if (bits.test(static_cast<std::size_t>(m))) members.push_back(m);
    return from_members(graph, std::move(members), generator);
}

std::optional<CycleVector> min_cycle_on_member(const WeightedGraph& graph, int member, TreeKind kind,
                                               const std::vector<char>& blocked) {
    if (member < 0 || member >= graph.member_count()) throw Error(ErrorCode::domain, "member out of range");
    std::vector<char> mask = blocked;
    mask.resize(static_cast<std::size_t>(graph.member_count()), 0);
    mask[static_cast<std::size_t>(member)] = 1;

    const auto& gm = graph.member(member);
    TreeGrower from_a(graph, gm.a, kind, mask);
    TreeGrower from_b(graph, gm.b, kind, mask);

    // Checks the freshly labelled tier of one tree against the other tree.
    auto meet = [&](const TreeGrower& grown, const TreeGrower& other) -> int {
        int best = -1;
        int best_sum = 0;
        for (int v : grown.last_tier()) {
            if (!other.tree().reached(v)) continue;
            const int sum = grown.tree().label[static_cast<std::size_t>(v)] +
                            other.tree().label[static_cast<std::size_t>(v)];
            if (best < 0 || sum < best_sum || (sum == best_sum && v < best)) {
                best = v;
                best_sum = sum;
            }
        }
        return best;
    };

    int common = -1;
    bool a_alive = true, b_alive = true;
    bool turn_a = true;
    while (common < 0 && (a_alive || b_alive)) {
        if (turn_a && a_alive) {
            a_alive = from_a.expand();
            if (a_alive) common = meet(from_a, from_b);
        } else if (!turn_a && b_alive) {
            b_alive = from_b.expand();
            if (b_alive) common = meet(from_b, from_a);
        }
        turn_a = !turn_a;
    }
    if (common < 0) return std::nullopt;

    std::vector<int> members = from_a.tree().path_to_root(common);
    auto other = from_b.tree().path_to_root(common);
    members.insert(members.end(), other.begin(), other.end());
    members.push_back(member);
    return CycleVector::from_members(graph, std::move(members), member);
}

std::optional<CycleVector> min_cycle_through_node(const WeightedGraph& graph, int member, int node) {
    const auto tree = build_srt(graph, node, member);
    const auto& gm = graph.member(member);
    if (!tree.reached(gm.a) || !tree.reached(gm.b)) return std::nullopt;
    BitVector bits(static_cast<std::size_t>(graph.member_count()));
    for (int m : tree.path_to_root(gm.a)) bits.flip(static_cast<std::size_t>(m));
    for (int m : tree.path_to_root(gm.b)) bits.flip(static_cast<std::size_t>(m));
    bits.set(static_cast<std::size_t>(member));
    auto cycle = CycleVector::from_bits(graph, bits, member);
    // Shared leading routes cancel; then the cycle no longer visits the node.
    const bool visits = std::ranges::any_of(cycle.members, [&](int m) {
        return graph.member(m).a == node || graph.member(m).b == node;
    });
    if (!visits) return std::nullopt;
    return cycle;
}

BitVector Gf2Eliminator::reduce(BitVector v) const {
    for (std::size_t i = 0; i < rows_.size(); ++i)
        if (v.test(pivots_[i])) v ^= rows_[i];
    return v;
}

bool Gf2Eliminator::insert(const BitVector& v) {
    if (v.size() != width_) throw Error(ErrorCode::internal, "GF(2) vector width mismatch");
    BitVector r = reduce(v);
    if (!r.any()) return false;
    pivots_.push_back(r.lowest());
    rows_.push_back(std::move(r));
    return true;
}

bool is_independent(std::span<const CycleVector> basis, const CycleVector& candidate) {
    Gf2Eliminator table(candidate.bits.size());
    for (const auto& c : basis) table.insert(c.bits);
    return table.is_independent(candidate.bits);
}

std::size_t gf2_rank(std::span<const BitVector> vectors) {
    if (vectors.empty()) return 0;
    Gf2Eliminator table(vectors.front().size());
    for (const auto& v : vectors) table.insert(v);
    return table.rank();
}

CycleUnion::CycleUnion(const WeightedGraph& graph)
    : graph_(&graph), members_(static_cast<std::size_t>(graph.member_count())) {}

int CycleUnion::betti_of(const BitVector& members) const {
    const auto& g = *graph_;
    std::vector<int> parent(static_cast<std::size_t>(g.node_count()), -1);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int edges = 0, nodes = 0, components = 0;
    for (int m = 0; m < g.member_count(); ++m) {
        if (!members.test(static_cast<std::size_t>(m))) continue;
        ++edges;
        for (int n : {g.member(m).a, g.member(m).b}) {
            if (parent[n] < 0) {
                parent[n] = n;
                ++nodes;
                ++components;
            }
        }
        int ra = find(g.member(m).a), rb = find(g.member(m).b);
        if (ra != rb) {
            parent[std::max(ra, rb)] = std::min(ra, rb);
            --components;
        }
    }
    return edges - nodes + components;
}

int CycleUnion::betti_with(const CycleVector& candidate) const {
    BitVector u = members_;
    for (int m : candidate.members) u.set(static_cast<std::size_t>(m));
    return betti_of(u);
}

void CycleUnion::add(const CycleVector& cycle) {
    for (int m : cycle.members) members_.set(static_cast<std::size_t>(m));
    betti_ = betti_of(members_);
}

bool admissible_expansion(const CycleUnion& union_so_far, const CycleVector& candidate) {
    return union_so_far.admissible(candidate);
}

}  // namespace fcb
