#pragma once

#include <utility>
#include <vector>

#include "uwidth/metric.hpp"

namespace uw {

// One slab component: points with distance value in [r0, r1) that are connected
// inside the slab.
struct SweepNode {
    int slab = 0;
    double r0 = 0, r1 = 0;
    std::vector<Id> vertices;  // refined vertices with value in the slab
    std::vector<Id> edges;     // refined edges meeting the slab
    std::size_t fiber_size = 0;  // number of samples measured
    double diameter = 0;         // extrinsic, over the samples
};

struct SweepQuotient {
    std::vector<PointOnComplex> sources;
    double step = 0;
    double mesh_slack = 0;
    std::vector<double> value;  // distance field on refined vertices
    std::vector<SweepNode> nodes;
    std::vector<std::pair<Id, Id>> adjacency;  // between nodes of consecutive slabs
    std::vector<Id> assignment;                 // refined vertex -> node
    std::vector<double> critical_radii;         // slab boundaries where the matching is not 1-1
    std::vector<std::vector<Id>> arcs;          // maximal runs of nodes joined 1-1

    double width() const;   // max node diameter
    Id widest() const;      // node attaining it
    // itemised slack: 2 (mesh slack + step)
    double slack() const { return 2 * (mesh_slack + step); }
    bool is_forest() const;  // no cycles in Y
    std::size_t num_components() const;
};

struct SweepOptions {
    double step = 0;       // 0 means h
    bool measure = true;   // compute fiber diameters
    double offset = 0;     // levels at offset + k step
};

SweepQuotient sweep_quotient(const RefinedComplex& rc, const std::vector<PointOnComplex>& sources,
                             const SweepOptions& opt = {});

// Every refined point on the given base edges, as sweep sources.
std::vector<PointOnComplex> points_along(const RefinedComplex& rc, const std::vector<Id>& base_edges);

// Samples describing the closure of a node's fiber: slab vertices and the points
// where slab edges cross the slab boundaries.
std::vector<Sample> node_samples(const RefinedComplex& rc, const SweepQuotient& q, Id node);

}  // namespace uw
