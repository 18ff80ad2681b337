#pragma once

#include <array>
#include <vector>

#include "uwidth/complex.hpp"

namespace uw {

struct PointOnComplex {
    enum class Kind { Vertex, Edge, Triangle };
    Kind kind = Kind::Vertex;
    Id cell = 0;
    // Edge: bary[0] weights edge.a, bary[1] weights edge.b.  Triangle: weights of v[0..2].
    std::array<double, 3> bary{1, 0, 0};

    static PointOnComplex vertex(Id v) { return {Kind::Vertex, v, {1, 0, 0}}; }
    // t measured from edge.a towards edge.b, in [0,1]
    static PointOnComplex on_edge(Id e, double t) { return {Kind::Edge, e, {1 - t, t, 0}}; }
    static PointOnComplex in_triangle(Id t, double b0, double b1, double b2) {
        return {Kind::Triangle, t, {b0, b1, b2}};
    }
};

// A refined vertex with a distance offset; sources and samples are lists of these.
struct Seed {
    Id v;
    double offset;
};

// Uniform Steiner subdivision: every base edge is cut into n = 2^k equal pieces
// (smallest power of two with longest/n <= h) and every triangle into n^2 similar
// copies.  Distances run on the refined edges plus, inside each base triangle,
// straight chords between all refined points on its boundary.
class RefinedComplex {
public:
    RefinedComplex() = default;
    // force_n > 0 fixes the subdivision count instead of deriving it from h
    RefinedComplex(const MetricComplex& base, double h, int force_n = 0);

    const MetricComplex& base() const { return base_; }
    const MetricComplex& mesh() const { return mesh_; }
    double h() const { return h_; }
    int subdivisions() const { return n_; }
    double mesh_slack() const;  // additive distance slack carried by the discretisation

    // base vertex v keeps id v in the mesh
    const std::vector<Id>& edge_chain(Id base_edge) const { return chains_[base_edge]; }
    Id tri_parent(Id t) const { return tri_parent_[t]; }
    Id edge_parent(Id e) const { return edge_parent_[e]; }
    // base triangle containing a refined vertex (kNone for base vertices/edges in no triangle)
    const std::vector<Id>& tri_points(Id base_tri) const { return tri_points_[base_tri]; }

    std::vector<Seed> locate(const PointOnComplex& p) const;

    // distance graph in CSR form
    std::span<const Id> neighbors(Id v) const { return {adj_.data() + off_[v], adj_.data() + off_[v + 1]}; }
    std::span<const double> weights(Id v) const { return {w_.data() + off_[v], w_.data() + off_[v + 1]}; }
    std::size_t num_vertices() const { return mesh_.num_vertices(); }

private:
    void build_graph();

    MetricComplex base_, mesh_;
    double h_ = 0;
    int n_ = 1;
    std::vector<std::vector<Id>> chains_;
    std::vector<Id> tri_parent_, edge_parent_;
    std::vector<std::vector<Id>> tri_points_;          // all refined points of each base triangle
    std::vector<std::vector<std::array<double, 2>>> tri_xy_;  // their planar positions
    std::vector<Id> off_, adj_;
    std::vector<double> w_;
};

// Planar layout of a triangle with v[0] at the origin and v[1] on the positive x axis.
std::array<std::array<double, 2>, 3> triangle_layout(const MetricComplex& c, Id t);

MetricComplex steiner_refine(const MetricComplex& c, double h);
double default_h(const MetricComplex& c);

}  // namespace uw
