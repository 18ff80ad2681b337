#pragma once

#include <cstdint>
#include <vector>

#include "uwidth/projection.hpp"

namespace uw {

struct Example1Options {
    double grid = 0.25;        // extraction step for the cover patch
    double width_grid = 0.5;   // extraction step for the width search on M
    double trunc = 5;          // cover patch radius
    double radius = 1;         // fibers measured near the basepoint
    std::size_t seeds = 2;     // sweep seeds on M, drawn from `seed`
    std::size_t budget = 1;    // search moves after the seed pass
    double diameter_tol = 0.1;
    std::uint64_t seed = 0;
};

struct Example1Row {
    int R = 0;
    double width_M_best = 0;     // certified upper bound on M (search + sweeps)
    double width_slack = 0;      // mesh slack + sweep step on M
    double width_cover_cert = 0; // largest projection fiber on the cover patch
    double cover_slack = 0;
    double diam = 0;             // realised distance between two points of M
    std::size_t M_vertices = 0, cover_vertices = 0, fibers = 0, evaluations = 0;
    bool cert_holds = false;
};

Example1Row example1_row(int R, const Example1Options& opt = {});

}  // namespace uw
