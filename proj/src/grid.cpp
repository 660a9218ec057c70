#include "fcb/grid.hpp"

#include "fcb/error.hpp"

namespace fcb {

PropertyPattern parse_pattern(const std::string& name) {
    if (name == "homogeneous") return PropertyPattern::homogeneous;
    if (name == "weak-beams") return PropertyPattern::weak_beams;
    if (name == "weak-columns") return PropertyPattern::weak_columns;
    if (name == "checker") return PropertyPattern::checker;
    throw Error(ErrorCode::usage, "unknown property pattern '" + name + "'");
}

std::string to_string(PropertyPattern pattern) {
    switch (pattern) {
        case PropertyPattern::homogeneous: return "homogeneous";
        case PropertyPattern::weak_beams: return "weak-beams";
        case PropertyPattern::weak_columns: return "weak-columns";
        case PropertyPattern::checker: return "checker";
    }
    return "homogeneous";
}

namespace {

bool is_light(PropertyPattern pattern, bool column, int story, int bay) {
    switch (pattern) {
        case PropertyPattern::homogeneous: return false;
        case PropertyPattern::weak_beams: return !column;
        case PropertyPattern::weak_columns: return column;
        case PropertyPattern::checker: return ((story + bay) % 2 == 0) != column;
    }
    return false;
}

}  // namespace

StructuralModel generate_grid(const GridSpec& spec) {
    if (spec.stories < 1 || spec.spans < 1 || spec.bays_y < 0)
        throw Error(ErrorCode::usage, "grid needs stories >= 1, spans >= 1 and bays_y >= 0");
    if (!(spec.bay_width > 0.0) || !(spec.story_height > 0.0))
        throw Error(ErrorCode::usage, "grid bay width and story height must be positive");

    const bool spatial = spec.bays_y > 0;
    const int nx = spec.spans + 1;
    const int ny = spatial ? spec.bays_y + 1 : 1;
    const int per_level = nx * ny;
    auto node_id = [&](int level, int i, int k) { return level * per_level + k * nx + i + 1; };

    std::vector<Node> nodes;
    std::vector<int> supports;
    for (int level = 0; level <= spec.stories; ++level)
        for (int k = 0; k < ny; ++k)
            for (int i = 0; i < nx; ++i) {
                Node n{node_id(level, i, k), {i * spec.bay_width, 0.0, 0.0}};
                if (spatial) {
                    n.xyz[1] = k * spec.bay_width;
                    n.xyz[2] = level * spec.story_height;
                } else {
                    n.xyz[1] = level * spec.story_height;
                }
                nodes.push_back(n);
                if (level == 0) supports.push_back(n.id);
            }

    std::vector<Member> members;
    auto add = [&](int a, int b, bool light) {
        members.push_back({static_cast<int>(members.size()) + 1, a, b, light ? "light" : "heavy"});
    };
    for (int s = 1; s <= spec.stories; ++s) {
        for (int k = 0; k < ny; ++k)
            for (int i = 0; i < nx; ++i)
                add(node_id(s - 1, i, k), node_id(s, i, k), is_light(spec.pattern, true, s, i + k));
        for (int k = 0; k < ny; ++k)
            for (int i = 0; i + 1 < nx; ++i)
                add(node_id(s, i, k), node_id(s, i + 1, k), is_light(spec.pattern, false, s, i + k));
        if (spatial)
            for (int k = 0; k + 1 < ny; ++k)
                for (int i = 0; i < nx; ++i)
                    add(node_id(s, i, k), node_id(s, i, k + 1), is_light(spec.pattern, false, s, i + k + 1));
    }

    std::map<std::string, Section> sections{{"heavy", spec.heavy}, {"light", spec.light}};
    return StructuralModel(spatial ? Dimension::spatial : Dimension::planar, std::move(nodes),
                           std::move(members), std::move(sections), std::move(supports));
}

}  // namespace fcb
