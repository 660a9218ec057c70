#pragma once

#include <string>
#include <vector>

#include "fcb/model.hpp"

namespace fcb {

/// Section assignment of a generated frame.
///   homogeneous  every member uses the heavy section
///   weak-beams   beams light, columns heavy
///   weak-columns columns light, beams heavy
///   checker      light and heavy alternate by (story + bay) parity
enum class PropertyPattern { homogeneous, weak_beams, weak_columns, checker };

PropertyPattern parse_pattern(const std::string& name);
std::string to_string(PropertyPattern pattern);

/// Rectangular frame with fixed column bases. `bays_y` > 0 builds a space
/// frame with `spans` x `bays_y` bays per floor.
struct GridSpec {
    int stories = 1;
    int spans = 1;
    int bays_y = 0;
    double bay_width = 3.0;
    double story_height = 3.0;
    PropertyPattern pattern = PropertyPattern::homogeneous;
    Section heavy{0.00970, 0.00019610, 2.1e7};
    Section light{0.00106, 0.00000171, 2.1e7};
};

StructuralModel generate_grid(const GridSpec& spec);

}  // namespace fcb
