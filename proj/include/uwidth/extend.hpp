#pragma once

#include <utility>
#include <vector>

#include "uwidth/complex.hpp"

namespace uw {

// Simplicial map from the vertices of a complex to a graph: the endpoints of every
// edge go to equal or adjacent nodes, and each cell maps onto the span of its vertices.
struct GraphMap {
    std::size_t num_nodes = 0;
    std::vector<std::pair<Id, Id>> edges;
    std::vector<Id> vertex_node;
};

struct ExtensionResult {
    int dim = 0;
    double k = 0;              // simplex diameter bound
    double d = 0;              // measured fiber bound on the 2-skeleton
    double certified = 0;      // d, or d + 2 k dim when there are higher cells
    double measured = 0;       // measured fiber bound after extending
    bool holds = false;
    std::vector<double> fiber_before, fiber_after;  // per node
};

// Copy of c without its 3-cells.
MetricComplex two_skeleton(const MetricComplex& c);

// Extends f over the 3-cells of c: each tetrahedron goes into the image of its
// boundary.  Fibers are measured on vertex sets in the edge-graph metric of c.
ExtensionResult extend_to_full_complex(const MetricComplex& c, const GraphMap& f, double k);

}  // namespace uw
