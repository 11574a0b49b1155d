#include "unjoin/attribute_set.hpp"

namespace unjoin {

std::string AttributeSet::to_string() const {
    std::string out = "{";
    bool first = true;
    for (int i : indices()) {
        if (!first) out += ',';
        out += std::to_string(i);
        first = false;
    }
    out += '}';
    return out;
}

}  // namespace unjoin
