#pragma once

#include <limits>
#include <vector>

#include "uwidth/refine.hpp"

namespace uw {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

// Shortest-path distances on the distance graph from a set of seeds.  When
// targets are given the search stops once all of them are settled (other entries
// may then be upper bounds or infinite).  Ties are settled by vertex id.
std::vector<double> shortest_paths(const RefinedComplex& rc, const std::vector<Seed>& seeds,
                                   const std::vector<Id>* targets = nullptr, double cutoff = kInf);

// Same, restricted to vertices with allowed[v] != 0 and arcs between them.
std::vector<double> shortest_paths_within(const RefinedComplex& rc, const std::vector<Seed>& seeds,
                                          const std::vector<char>& allowed);

// First settled vertex with is_target[v] != 0 (kNone when unreachable within cutoff).
std::pair<Id, double> nearest_target(const RefinedComplex& rc, const std::vector<Seed>& seeds,
                                     const std::vector<char>& is_target, double cutoff = kInf);

// Shortest path (vertex sequence in the distance graph) between two vertices.
std::vector<Id> shortest_path(const RefinedComplex& rc, Id from, Id to);

struct DistanceField {
    std::vector<PointOnComplex> source;
    std::vector<double> value;  // per refined vertex
    double h = 0;
};

DistanceField distance_field(const RefinedComplex& rc, const std::vector<PointOnComplex>& sources);

// A point of the refined mesh given by up to two seeds; points interior to a
// refined edge also record the edge and their offset from edge.a, so that two
// points on one edge are compared directly.
struct Sample {
    std::vector<Seed> seeds;
    Id edge = kNone;
    double pos = 0;

    static Sample at(Id v) { return {{{v, 0.0}}, kNone, 0}; }
    static Sample on_edge(const MetricComplex& m, Id e, double from_a);
};

struct DiameterResult {
    double value = 0;
    std::size_t i = 0, j = 0;  // indices of a far pair
    std::size_t searches = 0;  // number of single-source searches used
    bool exact = true;
    double lower = 0;          // a realised pair distance; equals value when exact
};

// Exact extrinsic diameter of a finite sample set (bounding-eccentricity scheme).
// With rel_tol > 0 the search may stop early and return an upper bound within
// that relative tolerance of max(true diameter, floor).
DiameterResult sample_diameter(const RefinedComplex& rc, const std::vector<Sample>& pts, double rel_tol = 0,
                               double floor = 0);
DiameterResult vertex_diameter(const RefinedComplex& rc, const std::vector<Id>& verts);

enum class DiameterMode { Extrinsic, Intrinsic };

double subset_diameter(const RefinedComplex& rc, const std::vector<PointOnComplex>& pts,
                       DiameterMode mode = DiameterMode::Extrinsic);

}  // namespace uw
