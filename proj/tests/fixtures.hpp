#pragma once

#include <utility>
#include <vector>

#include "vacant/graph.hpp"

namespace fixtures {

// Complete graph on four vertices: the unique simple 3-regular graph on 4.
inline vacant::RegularGraph k4() {
    return vacant::RegularGraph(
        4, 3, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
}

// Petersen graph: outer 5-cycle 0-4, spokes, inner pentagram 5-9. Girth 5,
// one-step spectral gap 2/3.
inline vacant::RegularGraph petersen() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 5; ++i) {
        e.emplace_back(i, (i + 1) % 5);
        e.emplace_back(i, i + 5);
        e.emplace_back(5 + i, 5 + (i + 2) % 5);
    }
    std::vector<std::pair<int, int>> norm;
    for (auto [a, b] : e) norm.emplace_back(std::min(a, b), std::max(a, b));
    return vacant::RegularGraph(10, 3, norm);
}

// Heawood graph via LCF [5,-5]^7: 3-regular on 14 vertices, girth 6, so
// radius-2 balls are trees.
inline vacant::RegularGraph heawood() {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i < 14; ++i) e.emplace_back(std::min(i, (i + 1) % 14), std::max(i, (i + 1) % 14));
    for (int i = 0; i < 14; i += 2) e.emplace_back(std::min(i, (i + 5) % 14), std::max(i, (i + 5) % 14));
    return vacant::RegularGraph(14, 3, e);
}

// Complete graph on d+1 vertices (d-regular).
inline vacant::RegularGraph complete(int d) {
    std::vector<std::pair<int, int>> e;
    for (int i = 0; i <= d; ++i)
        for (int j = i + 1; j <= d; ++j) e.emplace_back(i, j);
    return vacant::RegularGraph(d + 1, d, e);
}

}  // namespace fixtures
