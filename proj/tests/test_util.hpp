#pragma once

// Shared helpers for the unit suites: deterministic rngs and small generators.

#include <cmath>
#include <random>
#include <vector>

#include "bandfold/geom.hpp"

namespace testutil {

using bandfold::kPi;
using bandfold::Point2;

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline double uniform(std::mt19937_64& g, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(g);
}

inline int uniform_int(std::mt19937_64& g, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline Point2 random_disk_point(std::mt19937_64& g, double radius = 1.0) {
    while (true) {
        const Point2 p{uniform(g, -radius, radius), uniform(g, -radius, radius)};
        if (p.norm2() <= radius * radius) return p;
    }
}

// Convex chain from turn magnitudes; curl < 0 gives a cw-curling chain.
inline bandfold::PolyChain convex_chain_from_angles(const std::vector<double>& interior_angles,
                                                    const std::vector<double>& lengths,
                                                    double start_dir, int curl) {
    bandfold::PolyChain chain;
    chain.push_back({0.0, 0.0});
    double dir = start_dir;
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        if (i > 0) dir += curl * (kPi - interior_angles[i - 1]);
        chain.push_back(chain.back() + Point2{std::cos(dir), std::sin(dir)} * lengths[i]);
    }
    return chain;
}

inline bandfold::PolyChain random_convex_chain(std::mt19937_64& g, int min_segs = 3,
                                               int max_segs = 9) {
    const int segs = uniform_int(g, min_segs, max_segs);
    std::vector<double> angles, lengths;
    for (int i = 0; i < segs; ++i) lengths.push_back(uniform(g, 0.2, 1.0));
    double total_turn = 0.0;
    for (int i = 0; i < segs - 1; ++i) {
        const double a = uniform(g, kPi / 2 + 0.05, kPi - 0.02);
        angles.push_back(a);
        total_turn += kPi - a;
    }
    (void)total_turn;
    const int curl = uniform_int(g, 0, 1) ? 1 : -1;
    return convex_chain_from_angles(angles, lengths, uniform(g, 0.0, 2 * kPi), curl);
}

}  // namespace testutil
