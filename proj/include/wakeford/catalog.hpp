#pragma once

#include <string>
#include <vector>

namespace wakeford {

/// Fixed, ordered roster of concrete groups the verification sweeps run over:
/// cyclic and dihedral families, the quaternion group, small symmetric groups,
/// and a few non-cyclic direct products, filtered by order.
inline std::vector<std::string> catalog_specs(int max_order) {
    std::vector<std::string> out;
    for (int n = 2; n <= max_order; ++n) out.push_back("cyclic:" + std::to_string(n));
    for (int m = 2; 2 * m <= max_order; ++m) out.push_back("dihedral:" + std::to_string(m));
    if (max_order >= 8) out.push_back("quaternion");
    if (max_order >= 6) out.push_back("symmetric:3");
    if (max_order >= 24) out.push_back("symmetric:4");
    struct Prod {
        int order;
        const char* spec;
    };
    static constexpr Prod kProducts[] = {
        {4, "product:(cyclic:2,cyclic:2)"},
        {8, "product:(cyclic:2,cyclic:4)"},
        {8, "product:(cyclic:2,product:(cyclic:2,cyclic:2))"},
        {9, "product:(cyclic:3,cyclic:3)"},
        {12, "product:(cyclic:2,cyclic:6)"},
        {16, "product:(cyclic:2,cyclic:8)"},
        {16, "product:(cyclic:4,cyclic:4)"},
        {16, "product:(cyclic:2,product:(cyclic:2,cyclic:4))"},
        {18, "product:(cyclic:3,cyclic:6)"},
        {20, "product:(cyclic:2,cyclic:10)"},
        {24, "product:(cyclic:2,cyclic:12)"},
    };
    for (const Prod& p : kProducts)
        if (p.order <= max_order) out.push_back(p.spec);
    return out;
}

} // namespace wakeford
