#pragma once

#include <array>
#include <vector>

#include "uwidth/cover.hpp"

namespace uw {

// Nearest-point map from a patch of the periodic grid surface to the grid lines Z,
// with node spacing `step` along the lines.  Fiber diameters are measured in the
// patch, in grid units.  The surface repeats under unit translations, so the
// fibers near the basepoint stand for all of them once every node class is seen.
struct ProjectionCertificate {
    double step = 0;
    double bound = 3;
    double radius = 0;            // fibers with a vertex this close to the basepoint
    double max_fiber = 0;
    std::array<double, 3> worst_node{};
    std::size_t nodes = 0;        // fibers measured
    std::size_t unresolved = 0;   // fibers reaching the truncation or beyond the cutoff
    std::size_t bridged = 0;      // vertex pairs of a cell landing on unconnected nodes
    std::size_t classes = 0, all_classes = 0;  // node classes modulo the unit lattice: measured / in the image
    double mesh_slack = 0;
    bool holds = false;
    std::vector<double> fiber;    // per measured node
};

// Throws NotGridSurface unless the patch carries lattice positions of a grid surface.
ProjectionCertificate projection_width_certificate(const CoverPatch& p, double radius = 2, double bound = 3,
                                                   double step = 0.25);

}  // namespace uw
