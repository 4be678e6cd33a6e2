#pragma once

#include <random>

#include "looij/fan.hpp"

namespace fx {

inline looij::Fan make(std::initializer_list<std::pair<long, long>> rs) {
    std::vector<looij::RaySpec> v;
    for (auto [d, b] : rs) v.push_back({d, b, ""});
    return looij::build_fan(v);
}

inline looij::Fan p2() { return make({{1, 0}, {1, 0}, {1, 0}}); }
inline looij::Fan cubic() { return make({{-1, 2}, {-1, 2}, {-1, 2}}); }
inline looij::Fan one_blowup() { return make({{0, 1}, {1, 0}, {1, 0}}); }
inline looij::Fan mixed4() { return make({{-1, 1}, {0, 0}, {-2, 2}, {0, 0}}); }
inline looij::Fan e7() { return make({{-1, 2}, {-2, 3}, {-3, 4}}); }
inline looij::Fan e8() { return make({{-1, 2}, {-2, 3}, {-4, 5}}); }
inline looij::Fan square() { return make({{0, 0}, {0, 0}, {0, 0}, {0, 0}}); }

inline looij::TropPoint pt(int s, long a, long b) { return {s, a, b}; }

// random nonzero integral point with coordinates in [0, c]
inline looij::TropPoint random_point(std::mt19937& g, const looij::Fan& f, long c) {
    std::uniform_int_distribution<int> sd(0, f.n() - 1);
    std::uniform_int_distribution<long> cd(0, c);
    while (true) {
        looij::TropPoint p{sd(g), cd(g), cd(g)};
        if (!p.is_zero()) return looij::normalize(f, p);
    }
}

}  // namespace fx
