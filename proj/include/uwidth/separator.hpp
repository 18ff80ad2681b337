#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "uwidth/components.hpp"
#include "uwidth/extend.hpp"
#include "uwidth/sweep.hpp"

namespace uw {

// A closed 1-subcomplex Z of the refined mesh together with the path components
// of Z and of its complement.  Complement components hold open cells; their
// closures are measured.  Diameters are extrinsic, over vertices and edge midpoints.
struct Separator {
    Subcomplex z;
    std::vector<CellSet> z_components;
    std::vector<CellSet> complement_components;
    std::vector<double> z_diameters, complement_diameters;
    std::vector<std::array<PointOnComplex, 2>> z_far, complement_far;  // on the mesh
    double width = 0;
    double mesh_slack = 0;

    std::size_t num_components() const { return z_components.size() + complement_components.size(); }
};

struct SeparatorVerdict {
    bool accepted = false;
    Separator separator;
    // the widest offending component when rejected
    bool in_z = false;
    std::size_t component = 0;
    std::array<PointOnComplex, 2> far{};
    double diameter = 0;
    std::string report;
};

// Components and diameters of Z (closed first); Z may not contain triangles.
// rel_tol > 0 allows diameters to be upper bounds within that relative tolerance.
Separator measure_separator(const RefinedComplex& rc, const Subcomplex& z, double rel_tol = 0);
SeparatorVerdict verify_separator(const RefinedComplex& rc, const Subcomplex& z, double D);

// Refined edges making up the given base edges.
Subcomplex refined_edges(const RefinedComplex& rc, const std::vector<Id>& base_edges);

// Z from a labelling of the mesh vertices: each top cell takes the label of its
// lowest vertex under `key` (ties by id), and Z is everything whose star carries
// more than one label.
Subcomplex label_frontier(const RefinedComplex& rc, const std::vector<Id>& label, const std::vector<double>& key);

// Z as the frontier between bands of width `band` inside the slab components.
Subcomplex sweep_frontier(const RefinedComplex& rc, const SweepQuotient& q, double band);

// Separator of width at most q.width() + eps; the band width is halved from
// q.step until the bound is met.  Throws FiberBoundViolated when it never is.
Separator separator_from_map(const RefinedComplex& rc, const SweepQuotient& q, double eps);

// Same for a simplicial map given on the mesh vertices with claimed fiber bound D.
// Fibers are vertex sets of the cells lying over each node.
Separator separator_from_map(const RefinedComplex& rc, const GraphMap& f, double D, double eps);
std::vector<double> graph_map_fibers(const RefinedComplex& rc, const GraphMap& f);

// Map to a graph with one node per Z component and a cone node per complement
// component, joined by incidence.
struct SeparatorMap {
    std::size_t num_z = 0;
    GraphMap map;                  // on mesh vertices
    std::vector<Id> edge_node;     // mesh edge collapsed to a Z node, else kNone
    std::vector<double> fiber;     // re-measured, per node
    double bound = 0;
};

SeparatorMap map_from_separator(const RefinedComplex& rc, const Separator& s);
// Preimage of the Z nodes.
Subcomplex separator_preimage(const RefinedComplex& rc, const SeparatorMap& m);

struct SearchOptions {
    std::size_t budget = 16;  // neighbour evaluations after the seed pass
    double step = 0;          // initial level spacing, 0 means h
    double diameter_tol = 0;  // passed to measure_separator
};

struct SearchResult {
    Separator best;
    std::size_t seed = 0;
    double offset = 0, step = 0;
    std::size_t evaluations = 0;
    std::vector<double> history;  // best width after each evaluation
};

// Sweep separators from each seed, then greedy moves of the level circles: shift
// all of them by one mesh edge either way or merge every other one.  A move is
// taken only if it lowers the width.  Deterministic; ties go to the earlier seed.
SearchResult search_separator(const RefinedComplex& rc, const std::vector<PointOnComplex>& seeds,
                              const SearchOptions& opt = {});

// `mesh <n>` followed by `z <edge> [t0 t1]` lines over mesh edges; t0 == t1 in
// {0, 1} names an endpoint.  Partial segments are rejected.
void write_separator(std::ostream& out, const RefinedComplex& rc, const Subcomplex& z);
Subcomplex read_separator(std::istream& in, const RefinedComplex& rc);

}  // namespace uw
