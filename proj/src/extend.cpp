#include "uwidth/extend.hpp"

#include <algorithm>
#include <set>

#include "uwidth/metric.hpp"

namespace uw {

MetricComplex two_skeleton(const MetricComplex& c) {
    auto d = describe(c);
    d.tets.clear();
    BuildOptions o;
    o.surface = c.surface_mode();
    o.infer_boundary = false;
    return build_complex(d, o);
}

namespace {

double vertex_set_diameter(const std::vector<std::vector<double>>& dist, const std::set<Id>& vs) {
    double best = 0;
    for (Id a : vs)
        for (Id b : vs) best = std::max(best, dist[a][b]);
    return best;
}

}  // namespace

ExtensionResult extend_to_full_complex(const MetricComplex& c, const GraphMap& f, double k) {
    if (f.vertex_node.size() != c.num_vertices()) throw Error(ErrorCode::BadParam, "map does not cover every vertex");
    std::set<std::pair<Id, Id>> adj;
    for (auto [a, b] : f.edges) {
        adj.insert({a, b});
        adj.insert({b, a});
    }
    for (auto& e : c.edges()) {
        Id a = f.vertex_node[e.a], b = f.vertex_node[e.b];
        if (a != b && !adj.count({a, b})) throw Error(ErrorCode::BadParam, "map is not simplicial on an edge");
    }

    // edge-graph metric on the vertices
    RefinedComplex rc(two_skeleton(c), c.longest_edge(), 1);
    std::vector<std::vector<double>> dist;
    for (Id v = 0; v < c.num_vertices(); ++v) dist.push_back(shortest_paths(rc, {{v, 0.0}}));

    auto too_large = [&](const std::vector<Id>& vs) {
        for (Id a : vs)
            for (Id b : vs)
                if (dist[a][b] > k * (1 + 1e-12)) return true;
        return false;
    };
    for (auto& e : c.edges())
        if (too_large({e.a, e.b})) throw Error(ErrorCode::SimplexTooLarge, "edge longer than k");
    for (auto& t : c.triangles())
        if (too_large({t.v[0], t.v[1], t.v[2]})) throw Error(ErrorCode::SimplexTooLarge, "triangle wider than k");
    for (Id t = 0; t < c.num_tets(); ++t) {
        auto& v = c.tet(t);
        if (too_large({v[0], v[1], v[2], v[3]})) throw Error(ErrorCode::SimplexTooLarge, "tetrahedron wider than k");
    }

    // a cell lies over node y when y is among the nodes of its vertices
    std::vector<std::set<Id>> fiber(f.num_nodes);
    auto add_cell = [&](std::initializer_list<Id> vs, const std::set<Id>& image) {
        for (Id y : image)
            for (Id v : vs) fiber[y].insert(v);
    };
    for (Id v = 0; v < c.num_vertices(); ++v) fiber[f.vertex_node[v]].insert(v);
    for (auto& e : c.edges()) add_cell({e.a, e.b}, {f.vertex_node[e.a], f.vertex_node[e.b]});
    for (auto& t : c.triangles())
        add_cell({t.v[0], t.v[1], t.v[2]},
                 {f.vertex_node[t.v[0]], f.vertex_node[t.v[1]], f.vertex_node[t.v[2]]});

    ExtensionResult r;
    r.dim = c.dim();
    r.k = k;
    for (auto& s : fiber) r.fiber_before.push_back(vertex_set_diameter(dist, s));
    r.d = r.fiber_before.empty() ? 0 : *std::max_element(r.fiber_before.begin(), r.fiber_before.end());

    // each tetrahedron maps into the image of its boundary
    for (Id t = 0; t < c.num_tets(); ++t) {
        auto& v = c.tet(t);
        std::set<Id> image;
        for (Id x : v) image.insert(f.vertex_node[x]);
        add_cell({v[0], v[1], v[2], v[3]}, image);
    }
    for (auto& s : fiber) r.fiber_after.push_back(vertex_set_diameter(dist, s));
    r.measured = r.fiber_after.empty() ? 0 : *std::max_element(r.fiber_after.begin(), r.fiber_after.end());
    r.certified = c.num_tets() ? r.d + 2 * k * r.dim : r.d;
    r.holds = r.measured <= r.certified + 1e-12;
    return r;
}

}  // namespace uw
