#pragma once

#include <functional>
#include <vector>

#include "uwidth/complex.hpp"
#include "uwidth/cover.hpp"

namespace uw {

// +1 keeps the stored vertex order (v0, v1, v2) of a triangle, -1 reverses it, so that
// neighbouring triangles cross their shared edge in opposite directions.
// Throws UnsupportedTopology on a non-orientable surface.
std::vector<int> orient_surface(const MetricComplex& c);
// The oriented boundary of t runs a -> b, i.e. t lies to the left of a -> b.
bool runs_along(const MetricComplex& c, const std::vector<int>& orient, Id t, Id a, Id b);

// Components of the boundary edges (edges on one triangle), where edges only join
// edges of the same kind: lifted boundary (true) or truncation frontier (false).
struct BoundaryPieces {
    std::vector<Id> edge_piece;     // kNone off the boundary
    std::vector<char> piece_true;
    std::size_t count = 0;
    std::vector<Id> pieces_at(const MetricComplex& c, Id v) const;
};
BoundaryPieces boundary_pieces(const MetricComplex& c, const std::vector<char>& true_boundary);

// A finite piece of a covering space with its projection to the surface below.
struct Patch {
    MetricComplex complex;
    std::vector<Id> proj;             // vertex -> surface vertex, kNone when ambiguous
    std::vector<char> true_boundary;  // per edge: lies over the surface boundary
    Id basepoint = 0;
};
Patch patch_from_cover(const CoverPatch& p);

// A strip [-M, M] x [0, L] glued into the cut along an arc.  Column 0 is the left
// copy of the arc (it keeps the old ids) and the last column the right copy.
struct InsertedStrip {
    std::vector<Id> arc;                  // old vertex ids, bottom to top
    std::vector<double> rows;             // arc length at each arc vertex
    std::vector<std::vector<Id>> grid;    // [column][row] -> new vertex
    std::vector<Id> edges;                // edges created inside the strip
};

struct StripResult {
    MetricComplex complex;
    std::vector<double> columns;          // x positions, -M .. M
    std::vector<InsertedStrip> strips;
    std::vector<Id> origin;               // new vertex -> old vertex (kNone inside strips)
    std::vector<Id> right_copy;           // old vertex -> right copy (kNone off the arcs)
    std::vector<Id> edge_map;             // old edge -> new edge (left copy for arc edges)
    std::vector<char> true_boundary;      // carried over, plus the strip top and bottom rows
    double M = 0;
};

// `left(t, i, k)` says whether triangle t, which contains arc edge k of arc i, lies to
// the left of that edge when the arc runs bottom to top.  Arcs must be simple,
// pairwise disjoint, meet the boundary exactly at their endpoints, and have at
// least one edge.  Throws ArcNotSimple otherwise.
using LeftTest = std::function<bool(Id t, std::size_t arc, std::size_t k)>;
StripResult insert_strips(const MetricComplex& c, const std::vector<std::vector<Id>>& arcs,
                          const std::vector<double>& columns, const LeftTest& left,
                          const std::vector<char>& true_boundary);

// Single arc on a surface, left decided by orientation; columns evenly spaced below h.
StripResult insert_strip(const MetricComplex& c, const std::vector<Id>& arc, double M, double h);

// Strip columns with the x extent squeezed from [-M, M] to [-tau, tau].
MetricComplex squeeze_strips(const StripResult& s, double tau);

// Largest ratio d_after / d_before over pairs drawn from the given vertices
// (same vertex ids on both sides).
double stretch_factor(const MetricComplex& before, const MetricComplex& after, const std::vector<Id>& sample);

// Complete lifts of a surface arc in a patch, as vertex paths.  Lifts that leave the
// patch, or pass a vertex whose star is truncated, are dropped.
std::vector<std::vector<Id>> find_lifts(const Patch& p, const MetricComplex& surface, const std::vector<Id>& arc);

struct BoundaryArc {
    std::vector<Id> path;  // patch vertices
    double length = 0;
    Id from = kNone, to = kNone;  // boundary classes joined
};

// Shortest path in the piece of the patch containing the basepoint between two
// distinct boundary classes.  Cut edges (and their vertices) bound the piece and join
// boundary classes; a path that would end on one raises ArcsIntersect.
BoundaryArc shortest_boundary_arc(const Patch& p, const std::vector<char>& cut_edge);

struct CutArc {
    std::vector<Id> path;      // surface vertices, boundary to boundary
    double length = 0;
    Id from = kNone, to = kNone;  // boundary classes of the lift's endpoints
    std::vector<Id> lift;      // the lift it was found on
};

// Shortest arc joining distinct boundary components of the universal cover, found on a
// cover patch of radius `trunc` (0 picks twice the diameter) and projected down.
// Throws IsDisk, UnsupportedTopology (closed surface) or ArcNotSimple.
CutArc shortest_essential_arc(const MetricComplex& surface, double trunc = 0);

// Arc found in a patch over `surface`, projected and checked.
CutArc project_arc(const Patch& p, const MetricComplex& surface, const BoundaryArc& a);

}  // namespace uw
