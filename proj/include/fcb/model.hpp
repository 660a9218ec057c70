#pragma once

#include <array>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace fcb {

enum class Dimension { planar, spatial };

/// Cross-section properties. Units: m^2, m^4, t/m^2.
struct Section {
    double area = 0.0;
    double inertia = 0.0;
    double modulus = 0.0;

    bool operator==(const Section&) const = default;
};

struct Node {
    int id = 0;
    std::array<double, 3> xyz{};  // z is 0 for planar models

    bool operator==(const Node&) const = default;
};

struct Member {
    int id = 0;
    int node_a = 0;
    int node_b = 0;
    std::string section;

    bool operator==(const Member&) const = default;
};

/// A skeletal frame: joints, members with section references and fully fixed
/// supports. Immutable once constructed; the constructor validates every
/// invariant and throws Error(invalid_model) naming the offending item.
///
/// Nodes and members are stored sorted by id, so member index i here is the
/// same as member index i in the graph built from this model.
class StructuralModel {
public:
    StructuralModel(Dimension dimension, std::vector<Node> nodes, std::vector<Member> members,
                    std::map<std::string, Section> sections, std::vector<int> supports);

    Dimension dimension() const noexcept { return dimension_; }
    std::span<const Node> nodes() const noexcept { return nodes_; }
    std::span<const Member> members() const noexcept { return members_; }
    const std::map<std::string, Section>& sections() const noexcept { return sections_; }
    std::span<const int> supports() const noexcept { return supports_; }

    /// Position of the node with the given id in nodes(); throws if absent.
    std::size_t node_index(int node_id) const;
    std::optional<std::size_t> find_node(int node_id) const;
    bool is_supported(int node_id) const;

    const Section& section_of(std::size_t member_index) const;
    double length(std::size_t member_index) const;
    const Node& end_a(std::size_t member_index) const;
    const Node& end_b(std::size_t member_index) const;

    bool operator==(const StructuralModel&) const = default;

private:
    Dimension dimension_;
    std::vector<Node> nodes_;
    std::vector<Member> members_;
    std::map<std::string, Section> sections_;
    std::vector<int> supports_;
};

enum class WeightVariant { sum, sqrt_sum };

/// Stiffness-based member weight from the diagonal of the planar member
/// stiffness matrix: 2(EA/L + 12EI/L^3 + 4EI/L), or the same with square roots
/// of each term. Spatial members add a second bending plane with the same I.
double member_weight(const Section& section, double length, WeightVariant variant,
                     Dimension dimension = Dimension::planar);

struct GraphMember {
    int id = 0;  // model member id (or position for hand-built graphs)
    int a = 0;   // graph node index
    int b = 0;
};

/// Contracted graph model of a frame. All supported joints collapse into a
/// single ground node (index 0); free joints follow in ascending id order.
class WeightedGraph {
public:
    WeightedGraph(int node_count, std::vector<GraphMember> members, std::vector<double> weights,
                  std::optional<int> ground = std::nullopt, std::vector<int> node_ids = {});

    int node_count() const noexcept { return node_count_; }
    int member_count() const noexcept { return static_cast<int>(members_.size()); }
    int component_count() const noexcept { return components_; }
    std::optional<int> ground() const noexcept { return ground_; }

    std::span<const GraphMember> members() const noexcept { return members_; }
    const GraphMember& member(int m) const { return members_[static_cast<std::size_t>(m)]; }
    double weight(int m) const { return weights_[static_cast<std::size_t>(m)]; }
    std::span<const double> weights() const noexcept { return weights_; }

    /// Incident member indices of a node, ascending.
    std::span<const int> incident(int node) const { return incident_[static_cast<std::size_t>(node)]; }
    int other_end(int m, int node) const {
        const auto& e = member(m);
        return e.a == node ? e.b : e.a;
    }

    /// Model node id per graph node; the ground node maps to -1.
    std::span<const int> node_ids() const noexcept { return node_ids_; }

private:
    int node_count_;
    std::vector<GraphMember> members_;
    std::vector<double> weights_;
    std::optional<int> ground_;
    std::vector<int> node_ids_;
    std::vector<std::vector<int>> incident_;
    int components_ = 0;
};

/// Number of connected components (isolated nodes count).
int count_components(int node_count, std::span<const GraphMember> members);

WeightedGraph build_graph(const StructuralModel& model, WeightVariant variant = WeightVariant::sum);

struct AdmissibilityPartition {
    std::vector<int> admissible;    // member indices, ascending
    std::vector<int> inadmissible;  // member indices, ascending weight then index
    std::vector<bool> is_admissible;
    int alpha = 2;
    double mean_weight = 0.0;
};

/// A member is F-admissible when W(m) >= mean(W) / alpha.
AdmissibilityPartition classify_members(const WeightedGraph& graph, int alpha = 2);

/// First Betti number M - N + b0.
int cycle_rank(const WeightedGraph& graph);

}  // namespace fcb
