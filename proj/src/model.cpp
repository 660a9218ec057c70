#include "fcb/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#include "fcb/error.hpp"

namespace fcb {

std::string_view to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::invalid_model: return "invalid_model";
        case ErrorCode::disconnected_structure: return "disconnected_structure";
        case ErrorCode::domain: return "domain";
        case ErrorCode::parse: return "parse";
        case ErrorCode::unsupported_3d: return "unsupported_3d";
        case ErrorCode::rank_deficient: return "rank_deficient";
        case ErrorCode::not_symmetric: return "not_symmetric";
        case ErrorCode::not_positive_definite: return "not_positive_definite";
        case ErrorCode::zero_row: return "zero_row";
        case ErrorCode::chopped_pivot_breakdown: return "chopped_pivot_breakdown";
        case ErrorCode::invalid_load: return "invalid_load";
        case ErrorCode::usage: return "usage";
        case ErrorCode::io: return "io";
        case ErrorCode::internal: return "internal";
    }
    return "unknown";
}

namespace {

[[noreturn]] void invalid(const std::string& what) { throw Error(ErrorCode::invalid_model, what); }

}  // namespace

StructuralModel::StructuralModel(Dimension dimension, std::vector<Node> nodes,
                                 std::vector<Member> members,
                                 std::map<std::string, Section> sections, std::vector<int> supports)
    : dimension_(dimension),
      nodes_(std::move(nodes)),
      members_(std::move(members)),
      sections_(std::move(sections)),
      supports_(std::move(supports)) {
    std::ranges::sort(nodes_, {}, &Node::id);
    std::ranges::sort(members_, {}, &Member::id);
    std::ranges::sort(supports_);

    for (std::size_t i = 1; i < nodes_.size(); ++i)
        if (nodes_[i].id == nodes_[i - 1].id)
            invalid("duplicate node id " + std::to_string(nodes_[i].id));
    for (std::size_t i = 1; i < members_.size(); ++i)
        if (members_[i].id == members_[i - 1].id)
            invalid("duplicate member id " + std::to_string(members_[i].id));
    for (std::size_t i = 1; i < supports_.size(); ++i)
        if (supports_[i] == supports_[i - 1])
            invalid("duplicate support at node " + std::to_string(supports_[i]));

    if (dimension_ == Dimension::planar)
        for (const auto& n : nodes_)
            if (n.xyz[2] != 0.0)
                invalid("planar node " + std::to_string(n.id) + " has a non-zero z coordinate");

    for (const auto& [name, s] : sections_)
        if (!(s.area > 0.0) || !(s.inertia > 0.0) || !(s.modulus > 0.0))
            invalid("section '" + name + "' must have A > 0, I > 0 and E > 0");

    std::set<std::pair<int, int>> ends;
    for (const auto& m : members_) {
        const auto tag = "member " + std::to_string(m.id);
        if (!find_node(m.node_a)) invalid(tag + " references missing node " + std::to_string(m.node_a));
        if (!find_node(m.node_b)) invalid(tag + " references missing node " + std::to_string(m.node_b));
        if (m.node_a == m.node_b) invalid(tag + " has identical end nodes");
        if (!sections_.contains(m.section)) invalid(tag + " references missing section '" + m.section + "'");
        if (!ends.insert(std::minmax(m.node_a, m.node_b)).second)
            invalid(tag + " duplicates the end nodes of another member");
    }

    if (supports_.empty()) invalid("model has no supports");
    for (int s : supports_)
        if (!find_node(s)) invalid("support references missing node " + std::to_string(s));

    for (std::size_t i = 0; i < members_.size(); ++i)
        if (!(length(i) > 0.0)) invalid("member " + std::to_string(members_[i].id) + " has zero length");
}

std::optional<std::size_t> StructuralModel::find_node(int node_id) const {
    auto it = std::ranges::lower_bound(nodes_, node_id, {}, &Node::id);
    if (it == nodes_.end() || it->id != node_id) return std::nullopt;
    return static_cast<std::size_t>(it - nodes_.begin());
}

std::size_t StructuralModel::node_index(int node_id) const {
    if (auto i = find_node(node_id)) return *i;
    invalid("no node with id " + std::to_string(node_id));
}

bool StructuralModel::is_supported(int node_id) const {
    return std::ranges::binary_search(supports_, node_id);
}

const Section& StructuralModel::section_of(std::size_t member_index) const {
    return sections_.at(members_.at(member_index).section);
}

const Node& StructuralModel::end_a(std::size_t member_index) const {
    return nodes_[node_index(members_.at(member_index).node_a)];
}

const Node& StructuralModel::end_b(std::size_t member_index) const {
    return nodes_[node_index(members_.at(member_index).node_b)];
}

double StructuralModel::length(std::size_t member_index) const {
    const auto& a = end_a(member_index).xyz;
    const auto& b = end_b(member_index).xyz;
    return std::hypot(b[0] - a[0], b[1] - a[1], b[2] - a[2]);
}

double member_weight(const Section& section, double length, WeightVariant variant,
                     Dimension dimension) {
    if (!(length > 0.0)) throw Error(ErrorCode::domain, "member length must be positive");
    const double ei = section.modulus * section.inertia;
    const double axial = section.modulus * section.area / length;
    const double shear = 12.0 * ei / (length * length * length);
    const double rotation = 4.0 * ei / length;
    const int planes = dimension == Dimension::planar ? 1 : 2;
    if (variant == WeightVariant::sum) return 2.0 * (axial + planes * (shear + rotation));
    return 2.0 * (std::sqrt(axial) + planes * (std::sqrt(shear) + std::sqrt(rotation)));
}

int count_components(int node_count, std::span<const GraphMember> members) {
    std::vector<int> parent(static_cast<std::size_t>(node_count));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    int components = node_count;
    for (const auto& m : members) {
        int ra = find(m.a), rb = find(m.b);
        if (ra != rb) {
            parent[std::max(ra, rb)] = std::min(ra, rb);
            --components;
        }
    }
    return components;
}

WeightedGraph::WeightedGraph(int node_count, std::vector<GraphMember> members,
                             std::vector<double> weights, std::optional<int> ground,
                             std::vector<int> node_ids)
    : node_count_(node_count),
      members_(std::move(members)),
      weights_(std::move(weights)),
      ground_(ground),
      node_ids_(std::move(node_ids)),
      incident_(static_cast<std::size_t>(node_count)) {
    if (weights_.size() != members_.size())
        throw Error(ErrorCode::internal, "graph: one weight per member required");
    if (ground_ && (*ground_ < 0 || *ground_ >= node_count_))
        throw Error(ErrorCode::internal, "graph: ground node out of range");
    if (node_ids_.empty()) {
        node_ids_.resize(static_cast<std::size_t>(node_count_));
        std::iota(node_ids_.begin(), node_ids_.end(), 0);
    }
    for (std::size_t m = 0; m < members_.size(); ++m) {
        const auto& e = members_[m];
        if (e.a < 0 || e.b < 0 || e.a >= node_count_ || e.b >= node_count_ || e.a == e.b)
            throw Error(ErrorCode::internal, "graph: member " + std::to_string(e.id) + " has invalid ends");
        if (!(weights_[m] > 0.0))
            throw Error(ErrorCode::domain, "graph: member weights must be positive");
        incident_[static_cast<std::size_t>(e.a)].push_back(static_cast<int>(m));
        incident_[static_cast<std::size_t>(e.b)].push_back(static_cast<int>(m));
    }
    components_ = count_components(node_count_, members_);
}

WeightedGraph build_graph(const StructuralModel& model, WeightVariant variant) {
    const auto nodes = model.nodes();
    std::vector<int> graph_index(nodes.size(), 0);
    std::vector<int> node_ids{-1};
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (model.is_supported(nodes[i].id)) continue;
        graph_index[i] = static_cast<int>(node_ids.size());
        node_ids.push_back(nodes[i].id);
    }

    std::vector<GraphMember> members;
    std::vector<double> weights;
    const auto model_members = model.members();
    for (std::size_t m = 0; m < model_members.size(); ++m) {
        const auto& mm = model_members[m];
        const int a = graph_index[model.node_index(mm.node_a)];
        const int b = graph_index[model.node_index(mm.node_b)];
        if (a == 0 && b == 0)
            throw Error(ErrorCode::invalid_model,
                        "member " + std::to_string(mm.id) + " connects two supported nodes");
        members.push_back({mm.id, a, b});
        weights.push_back(member_weight(model.section_of(m), model.length(m), variant, model.dimension()));
    }

    const auto node_count = static_cast<int>(node_ids.size());
    WeightedGraph graph(node_count, std::move(members), std::move(weights), 0, std::move(node_ids));
    if (graph.component_count() != 1) {
        // Name one node that the ground cannot reach.
        std::vector<bool> seen(static_cast<std::size_t>(graph.node_count()), false);
        std::vector<int> stack{0};
        seen[0] = true;
        while (!stack.empty()) {
            int n = stack.back();
            stack.pop_back();
            for (int m : graph.incident(n)) {
                int o = graph.other_end(m, n);
                if (!seen[static_cast<std::size_t>(o)]) {
                    seen[static_cast<std::size_t>(o)] = true;
                    stack.push_back(o);
                }
            }
        }
        auto it = std::ranges::find(seen, false);
        const int lost = graph.node_ids()[static_cast<std::size_t>(it - seen.begin())];
        throw Error(ErrorCode::disconnected_structure,
                    "disconnected structure: node " + std::to_string(lost) + " is not reachable from a support");
    }
    return graph;
}

AdmissibilityPartition classify_members(const WeightedGraph& graph, int alpha) {
    if (graph.member_count() == 0) throw Error(ErrorCode::domain, "classify_members: graph has no members");
    if (alpha < 1) throw Error(ErrorCode::domain, "classify_members: alpha must be >= 1");

    AdmissibilityPartition p;
    p.alpha = alpha;
    const auto w = graph.weights();
    p.mean_weight = std::accumulate(w.begin(), w.end(), 0.0) / static_cast<double>(w.size());
    const double threshold = p.mean_weight / alpha;
    p.is_admissible.resize(w.size());
    for (int m = 0; m < graph.member_count(); ++m) {
        const bool ok = graph.weight(m) >= threshold;
        p.is_admissible[static_cast<std::size_t>(m)] = ok;
        (ok ? p.admissible : p.inadmissible).push_back(m);
    }
    std::ranges::stable_sort(p.inadmissible, [&](int x, int y) { return graph.weight(x) < graph.weight(y); });
    return p;
}

int cycle_rank(const WeightedGraph& graph) {
    return graph.member_count() - graph.node_count() + graph.component_count();
}

}  // namespace fcb
