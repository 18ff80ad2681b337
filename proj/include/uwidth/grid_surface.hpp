#pragma once

#include <array>
#include <vector>

#include "uwidth/complex.hpp"

namespace uw {

// Closed surface M: the set of points equidistant from Z (the integer grid lines)
// and its dual Z + (1/2,1/2,1/2), modulo the lattice generated by
// v1 = (R,0,0), v2 = (0,R,0), v3 = (1/2,1/2,1/2+R).
struct GridSurface {
    int R = 0;
    double grid = 0.25;
    MetricComplex complex;                  // no ambient coordinates: M does not embed
    std::vector<Vec3> position;             // per vertex, in the fundamental box
    std::vector<std::array<int, 3>> shift;  // per edge a->b: lattice translation picked up
    std::array<Vec3, 3> lattice;            // v1, v2, v3
};

GridSurface grid_surface(int R, double grid = 0.25);

double distance_to_grid(Vec3 p);       // to Z
double distance_to_dual_grid(Vec3 p);  // to Z + (1/2,1/2,1/2)
// Nearest point of Z; ties resolved towards the lowest axis.
Vec3 nearest_grid_point(Vec3 p);

}  // namespace uw
