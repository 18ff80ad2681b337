#pragma once

#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "uwidth/complex.hpp"
#include "uwidth/group.hpp"
#include "uwidth/grid_surface.hpp"
#include "uwidth/refine.hpp"

namespace uw {

// Spanning-tree presentation of the fundamental group, then simplified.
struct FundamentalGroup {
    Id basepoint = 0;
    std::vector<char> tree_edge;
    std::vector<Id> generator_edges;  // one raw generator per non-tree edge
    std::vector<Word> relators;       // one raw relator per triangle, over raw generators
    Group group;                      // simplified group
    bool exact = true;                // false when only the abelianisation was recognised
    std::vector<Group::Element> edge_element;  // per edge, traversed a -> b, in `group`
    // abelianisation rank (first Betti number)
    int betti1 = 0;
};

FundamentalGroup fundamental_group(const MetricComplex& c, Id basepoint = 0);

struct DeckGroupSpec {
    Group group;                                // deck group of the cover
    std::vector<Group::Element> edge_element;   // monodromy per edge a -> b
    enum class Structure { Finite, VirtuallyCyclic, Other } structure = Structure::Other;
    // optional ambient data for lattice covers: lifted position = position + sum g_i * vector_i
    std::vector<Vec3> lattice_vectors;
    std::vector<Vec3> positions;
};

DeckGroupSpec universal_cover_spec(const FundamentalGroup& pi);
// Regular cover with deck group pi / <<subgroup>>.  Only abelian groups (and Z) support
// nontrivial subgroups; anything else raises NonNormalSubgroup.
DeckGroupSpec regular_cover_spec(const FundamentalGroup& pi, const std::vector<Word>& subgroup);
// Cover of a grid surface with deck group Z^3 / sublattice (rows in lattice coordinates).
DeckGroupSpec lattice_cover_spec(const GridSurface& g, const std::vector<std::array<int, 3>>& sublattice = {});

struct CoverPatch {
    MetricComplex base;
    DeckGroupSpec deck;
    MetricComplex complex;                 // lifted cells
    std::vector<Id> vertex_base, edge_base, tri_base;
    std::vector<Group::Element> vertex_sheet, edge_sheet, tri_sheet;
    std::vector<char> frontier;            // lifted vertex with some lifted neighbour missing
    Id basepoint = 0;                      // lift of the base basepoint at the identity sheet
    Id base_basepoint = 0;
    double truncation_radius = 0;
    double isometry_radius = 0;            // half the shortest essential loop found
    double systole = 0;
    double complete_radius = 0;            // no frontier vertex closer than this to the basepoint
    std::size_t sheets = 0;                // distinct group elements present

    Id lift(Id base_vertex, const Group::Element& g) const;
    std::string sheet_table() const;       // `sheet <cell> <word>` lines

private:
    friend CoverPatch build_cover(const MetricComplex&, const DeckGroupSpec&, double, Id, double);
    std::unordered_map<std::string, Id> index_;
};

// Sheet expansion out to R_trunc from the lift of `basepoint`; `h` sets the refinement
// used for the local-isometry radius measurement (0 means the default).
CoverPatch build_cover(const MetricComplex& c, const DeckGroupSpec& g, double R_trunc, Id basepoint = 0,
                       double h = 0);

// Closed edge path on the base, as a vertex sequence with front() == back().
struct LoopWord {
    std::vector<Id> vertices;
};

Group::Element monodromy(const MetricComplex& c, const DeckGroupSpec& g, const std::vector<Id>& path);

// Lift of a base vertex path starting at the given lifted vertex.
std::vector<Id> lift_path(const CoverPatch& p, const std::vector<Id>& path, Id start);

// Projection of refined cover vertices onto refined base vertices, for a refinement of
// the cover complex and a refinement of the base at the same scale.
std::vector<Id> refined_projection(const CoverPatch& p, const RefinedComplex& cover, const RefinedComplex& base);

// Lift of a path on the refined base through refined cover adjacency.
std::vector<Id> lift_refined_path(const RefinedComplex& cover, const std::vector<Id>& proj,
                                  const std::vector<Id>& path, Id start);

}  // namespace uw
