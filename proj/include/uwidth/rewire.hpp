#pragma once

#include <string>
#include <vector>

#include "uwidth/separator.hpp"
#include "uwidth/surface_cut.hpp"

namespace uw {

// What one side of a lifted arc looks like along the arc.  Rows are arc vertices,
// bottom to top; after nudging Z meets the arc only at vertices.
struct SideTrace {
    struct Contact {
        bool top = false, bottom = false, other = false;
    };
    std::size_t rows = 0;
    std::vector<int> z_at;         // per arc vertex: Z component on this side, or -1
    std::vector<int> u_at_vertex;  // per arc vertex off Z: complement component, else -1
    std::vector<int> u_at_edge;    // per arc edge: complement component
    std::vector<Contact> z, u;     // components touching the arc, numbered from 0
    std::vector<std::vector<Id>> z_vertices, u_vertices;  // their (closure) vertices
};

// `side` flags the triangles of this side of the arc (closure taken implicitly).
SideTrace side_trace(const Patch& p, const Subcomplex& z, const std::vector<Id>& arc, const std::vector<char>& side);

// Rectilinear copy of one side inside [0, e] x [0, L], drawn on a grid whose column c
// sits at e / 2^(levels - c) for c >= 1 and at 0 for c = 0; rows are the arc rows.
struct DrawnPiece {
    int z = -1;              // side component, or -1 for a standalone column
    int level = 0;           // vertical at e / 2^level
    std::size_t r0 = 0, r1 = 0;
    std::vector<std::size_t> rows;  // horizontal segments
};

struct EndChecks {
    bool end_column = false;       // the far column lies in Z'
    bool touches_attach_side = false;  // every piece reaches column 0
    bool trace_matches = false;    // column 0 repeats the arc trace
    bool boundary_reach = false;   // overshoots only toward permitted boundary
    bool disjoint = false;         // drawn pieces neither touch nor split
    bool all() const { return end_column && touches_attach_side && trace_matches && boundary_reach && disjoint; }
    std::string failed() const;
};

struct DrawnEnd {
    bool special = false;
    long p = -1;                   // 2k for arc vertex k, 2k+1 for arc edge k (non-special)
    std::vector<DrawnPiece> pieces;
    int levels = 0;                // columns beyond 0
    // checked on the local grid
    EndChecks checks;
    std::size_t z_pieces = 0, u_pieces = 0;
    // per vertex / horizontal edge / vertical edge of the local grid: piece index or -1
    std::vector<std::vector<int>> vertex, hedge, vedge;
    std::vector<std::pair<std::size_t, std::size_t>> u_rows;  // row span of each complement piece
    std::vector<int> u_match;      // complement piece -> side complement component
};

// Throws CaseDetectionAmbiguous when neither case applies.
DrawnEnd draw_end(const SideTrace& t, int levels = -1);
// Recomputes the checks of a drawn end against its trace.
EndChecks check_end(DrawnEnd& d, const SideTrace& t);

struct FillCertificate {
    bool holds = false;
    double worst = 0;   // largest distance excess over D found
    double slack = 0;
    std::size_t samples = 0;
};

// d(x, .) stays within D + slack along the arc between rows a1 and a2, given both ends
// and a path between them through `right` inside B(x, D).  PreconditionUnmet otherwise.
FillCertificate fillin_check(const RefinedComplex& rc, const std::vector<Id>& arc, const std::vector<char>& right, Id x,
                             std::size_t a1, std::size_t a2, double D);
// `kind` per vertex: 0 off the boundary, 1 bottom, 2 top, 3 any other component.
FillCertificate fillout_check(const RefinedComplex& rc, const std::vector<Id>& arc, const std::vector<char>& right,
                              const std::vector<int>& kind, Id x, Id b, double D);

struct EndReport {
    std::size_t lift = 0;
    bool left_end = true;    // drawn from the right side at x = -M
    bool special = false;
    long p = -1;
    std::size_t z_pieces = 0, u_pieces = 0;
    int levels = 0;
    EndChecks checks;
    double reach_excess = 0;  // max d(x, arc(t)) - D over attached points and drawn rows
};

struct RewireResult {
    StripResult strip;           // the patch with strips glued in
    Subcomplex z_before;         // nudged, on the old patch
    Subcomplex z;                // rewired, on the new patch
    std::vector<std::vector<Id>> lifts;   // lifts actually cut
    std::vector<Id> cut_edges;   // middle column edges in the new patch
    double D = 0, L = 0, eps = 0, eps_prime = 0, M = 0;
    std::size_t nudged = 0;
    std::vector<EndReport> ends;
    std::vector<std::string> notes;
    bool properties_hold = true;
    double reach_excess = 0;
    double slack = 0;            // mesh slack of the old patch
};

struct RewireOptions {
    double eps = 0.1;
    double M = 0;       // 0 picks 2 D + 1
    double D = 0;       // 0 measures the nudged Z on the old patch
    bool certify = true;
};

// Cuts the patch along each lift, glues in strips and rewires Z on them.  The
// surface and its orientation decide the sides of the lifts.
RewireResult rewire_lifts(const Patch& p, const MetricComplex& surface, const std::vector<int>& orient,
                          const Subcomplex& z, const std::vector<std::vector<Id>>& lifts, const RewireOptions& opt);

// Projection of the new patch onto the surface with the same strips glued in.
std::vector<Id> strip_projection(const Patch& old, const RewireResult& up, const StripResult& down);

// Strip columns for the given end levels.
std::vector<double> strip_columns(double M, double eps, double eps_prime, int left_levels, int right_levels);

}  // namespace uw
