#pragma once

#include <optional>
#include <span>
#include <vector>

#include "fcb/bitvector.hpp"
#include "fcb/model.hpp"

namespace fcb {

enum class TreeKind { srt, srtm };

/// Shortest route tree (SRT) or its weight-pruned variant (SRTM).
/// label[n] is the tier of node n, or -1 when the tree never reached it.
struct RouteTree {
    int root = 0;
    TreeKind kind = TreeKind::srt;
    std::optional<int> forbidden;
    std::vector<int> label;
    std::vector<int> parent_node;    // -1 for the root and unreached nodes
    std::vector<int> parent_member;  // -1 for the root and unreached nodes

    bool reached(int n) const { return label[static_cast<std::size_t>(n)] >= 0; }
    /// Members on the tree path from n up to the root, starting at n.
    std::vector<int> path_to_root(int n) const;
    /// All tree members, ascending.
    std::vector<int> members() const;
};

RouteTree build_srt(const WeightedGraph& graph, int root, std::optional<int> forbidden = std::nullopt);
RouteTree build_srtm(const WeightedGraph& graph, int root, std::optional<int> forbidden = std::nullopt);

/// Tier-by-tier tree growth shared by the tree builders and the two-tree
/// cycle search. Members flagged in `blocked` are never used.
class TreeGrower {
public:
    TreeGrower(const WeightedGraph& graph, int root, TreeKind kind, const std::vector<char>& blocked);

    /// Labels the next tier. Returns false once nothing more can be reached.
    /// For SRTM, a tier that pruning leaves empty is replaced by a fallback tier
    /// attaching stranded neighbours through their heaviest available member.
    bool expand();

    std::span<const int> last_tier() const noexcept { return tier_; }
    int depth() const noexcept { return depth_; }
    const RouteTree& tree() const noexcept { return tree_; }
    RouteTree release() && { return std::move(tree_); }

private:
    bool expand_regular();
    bool expand_fallback();
    void attach(int node, int parent, int member);

    const WeightedGraph& graph_;
    const std::vector<char>& blocked_;
    RouteTree tree_;
    std::vector<int> tier_;
    std::vector<int> reached_order_;
    int depth_ = 0;
};

/// A cycle set over the members of one graph: a GF(2) vector with even
/// degree at every node it touches.
struct CycleVector {
    std::vector<int> members;  // ascending member indices
    BitVector bits;
    double weight = 0.0;
    int generator = -1;

    int length() const noexcept { return static_cast<int>(members.size()); }

    /// Builds from a member list; throws Error(internal) if some node has odd degree.
    static CycleVector from_members(const WeightedGraph& graph, std::vector<int> members, int generator = -1);
    static CycleVector from_bits(const WeightedGraph& graph, const BitVector& bits, int generator = -1);

    bool operator==(const CycleVector& o) const { return bits == o.bits; }
};

/// True when every node touched by the member set has even degree in it.
bool is_cycle_set(const WeightedGraph& graph, std::span<const int> members);

/// Minimal cycle on a generator member: two trees of the given kind grow from
/// the member's ends (member excluded) in alternating tiers until they share a
/// node. Returns nullopt for a bridge. Extra members can be excluded through
/// `blocked` (indexed by member, may be empty).
std::optional<CycleVector> min_cycle_on_member(const WeightedGraph& graph, int member, TreeKind kind,
                                               const std::vector<char>& blocked = {});

/// Shortest cycle on `member` that passes through `node`, found by an SRT
/// rooted at the node. Not used by the basis algorithms.
std::optional<CycleVector> min_cycle_through_node(const WeightedGraph& graph, int member, int node);

/// Incremental GF(2) row-echelon table used to test cycle independence.
class Gf2Eliminator {
public:
    explicit Gf2Eliminator(std::size_t width) : width_(width) {}

    /// Reduces v against the stored rows; zero result means v is in their span.
    BitVector reduce(BitVector v) const;
    bool is_independent(const BitVector& v) const { return reduce(v).any(); }
    /// Adds v if independent; returns whether it was added.
    bool insert(const BitVector& v);
    std::size_t rank() const noexcept { return rows_.size(); }

private:
    std::size_t width_;
    std::vector<BitVector> rows_;
    std::vector<std::size_t> pivots_;
};

bool is_independent(std::span<const CycleVector> basis, const CycleVector& candidate);

/// GF(2) rank of a list of vectors.
std::size_t gf2_rank(std::span<const BitVector> vectors);

/// Union of accepted cycles, tracked for the admissible-expansion test:
/// a cycle is admissible when it raises the union's first Betti number by one.
class CycleUnion {
public:
    explicit CycleUnion(const WeightedGraph& graph);

    int betti() const noexcept { return betti_; }
    int betti_with(const CycleVector& candidate) const;
    bool admissible(const CycleVector& candidate) const { return betti_with(candidate) == betti_ + 1; }
    void add(const CycleVector& cycle);
    const BitVector& members() const noexcept { return members_; }

private:
    int betti_of(const BitVector& members) const;

    const WeightedGraph* graph_;
    BitVector members_;
    int betti_ = 0;
};

bool admissible_expansion(const CycleUnion& union_so_far, const CycleVector& candidate);

}  // namespace fcb
