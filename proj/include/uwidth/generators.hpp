#pragma once

#include <map>
#include <string>

#include "uwidth/complex.hpp"

namespace uw {

// Cycle of circumference L made of n equal edges.
MetricComplex cycle_graph(double L, int n);
// Path of `stem` unit edges from leaf 0 to a hub, then `prongs` legs of `leg` unit edges.
MetricComplex y_graph(int prongs = 3, int stem = 1, int leg = 1);
// Single edge of the given length.
MetricComplex segment(double length);
// Equilateral triangle with side s.
MetricComplex equilateral_triangle(double s = 1);

// Flat L x L torus: unit squares split by a diagonal, opposite sides identified.
MetricComplex flat_torus(int L, double cell = 1);
// Flat annulus (cylinder) of circumference L and height H, cells of side `cell`.
MetricComplex annulus(double L, double H, double cell = 1);
// Square [0,side]^2 triangulated in cells of side `cell`.
MetricComplex disk(double side = 1, double cell = 1);
// Double of a corner-truncated equilateral triangle along its long sides.  Cuffs have
// length 2*k*s*scale and seams (N-2k)*s*scale with lattice spacing s = 0.25.
MetricComplex pair_of_pants(double scale = 1, int N = 12, int k = 2);
// Presentation complex of <a | a^n>: a circle of m edges with a disk attached along a^n.
MetricComplex presentation_complex(int n, int m = 4, double edge = 1);
// Chain of regular tetrahedra, each glued to the next along a face.
MetricComplex stacked_tetrahedra(int count = 2, double side = 1);

using Params = std::map<std::string, double>;
// Named generator dispatch; kinds use '-' or '_' interchangeably.
MetricComplex generate_example(const std::string& kind, const Params& params);

}  // namespace uw
