#include <doctest.h>

#include <cmath>
#include <random>
#include <set>

#include "uwidth/components.hpp"

#include "uwidth/generators.hpp"
#include "uwidth/sweep.hpp"
#include "uwidth/thin_triangle.hpp"
#include "uwidth/tree_fiber.hpp"

using namespace uw;

namespace {

std::vector<PointOnComplex> bottom_circle(const RefinedComplex& rc, int nx) {
    std::vector<Id> es;
    for (int i = 0; i < nx; ++i) es.push_back(rc.base().find_edge(Id(i), Id((i + 1) % nx)));
    return points_along(rc, es);
}

}  // namespace

TEST_CASE("sweep on a circle") {
    auto c = cycle_graph(8, 8);
    RefinedComplex rc(c, 0.25);
    auto q = sweep_quotient(rc, {PointOnComplex::vertex(0)});
    CHECK(q.width() <= 2 * q.step + 1e-9);
    // sphere components are single points, so Y is the circle again
    CHECK(!q.is_forest());
    CHECK(q.adjacency.size() == q.nodes.size());
    CHECK(q.num_components() == 1);
    // the two arms of the circle are separate until they meet at the antipode
    int two = 0;
    for (auto& n : q.nodes) two += n.slab == 5;
    CHECK(two == 2);
}

TEST_CASE("sweep on a Y graph reproduces the Y") {
    auto y = y_graph(3, 1, 1);
    RefinedComplex rc(y, 0.125);
    auto q = sweep_quotient(rc, {PointOnComplex::vertex(0)});
    CHECK(q.width() <= 2 * q.step + 1e-9);
    CHECK(q.is_forest());
    // past the hub there are three components per slab
    int far_slab = int(1.5 / q.step);
    int count = 0;
    for (auto& n : q.nodes) count += n.slab == far_slab;
    CHECK(count == 3);
    // arcs: the stem and three prongs, one critical radius at the hub
    CHECK(q.arcs.size() == 4);
}

TEST_CASE("sweep on a flat cylinder from the bottom circle") {
    auto c = annulus(4, 3);
    RefinedComplex rc(c, 0.25);
    auto q = sweep_quotient(rc, bottom_circle(rc, 4));
    // oracle: a band of height s on a flat cylinder of circumference 4 has diameter sqrt(4 + s^2)
    double oracle = std::sqrt(4 + q.step * q.step);
    CHECK(q.width() <= 2 + 2 * q.step);
    CHECK(q.width() == doctest::Approx(oracle).epsilon(0.02));
    CHECK(q.is_forest());
    for (auto& n : q.nodes) CHECK(n.r1 - n.r0 == doctest::Approx(q.step));
}

TEST_CASE("sweep assignment is continuous and fibers are connected") {
    auto t = flat_torus(4);
    RefinedComplex rc(t, 0.5);
    auto q = sweep_quotient(rc, {PointOnComplex::vertex(0)});
    auto& m = rc.mesh();
    std::set<std::pair<Id, Id>> adj(q.adjacency.begin(), q.adjacency.end());
    for (auto& e : m.edges()) {
        Id a = q.assignment[e.a], b = q.assignment[e.b];
        CHECK((a == b || adj.count({a, b}) || adj.count({b, a})));
    }
    for (Id i = 0; i < q.nodes.size(); ++i) {
        auto cs = components(m, Subcomplex::from_edges(m, q.nodes[i].edges));
        CHECK(cs.size() == 1);
    }
}

TEST_CASE("sweep width is stable under halving the step") {
    auto c = annulus(4, 3);
    RefinedComplex rc(c, 0.25);
    auto src = std::vector<PointOnComplex>{PointOnComplex::vertex(0)};
    auto a = sweep_quotient(rc, src, {0.5});
    auto b = sweep_quotient(rc, src, {0.25});
    CHECK(b.width() <= a.width() + 2 * 0.5);
    auto d = sweep_quotient(RefinedComplex(disk(2, 0.5), 0.25), {PointOnComplex::vertex(0)});
    CHECK(d.is_forest());
}

TEST_CASE("polygon tree fiber: forced and constant cases") {
    PolygonTreeMap tri;
    tri.tree = {4, {{0, 1}, {0, 2}, {0, 3}}};
    tri.edge_image = {{1, 0, 2}, {2, 0, 3}, {3, 0, 1}};
    auto f = polygon_tree_fiber(tri);
    CHECK(f.point == 0);

    PolygonTreeMap flat;
    flat.tree = {2, {{0, 1}}};
    flat.edge_image = {{1}, {1}, {1}, {1}, {1}};
    f = polygon_tree_fiber(flat);
    CHECK(f.point == 1);
    CHECK(f.edge == std::array<std::size_t, 3>{0, 1, 2});

    PolygonTreeMap bad = tri;
    bad.edge_image[1] = {3, 0, 2};
    CHECK_THROWS_AS(polygon_tree_fiber(bad), Error);
}

TEST_CASE("polygon tree fiber on a square over a segment") {
    // segment 0-1-2-3-4, square edges alternate between the halves
    PolygonTreeMap sq;
    sq.tree = {5, {{0, 1}, {1, 2}, {2, 3}, {3, 4}}};
    sq.edge_image = {{2, 1, 0}, {0, 1, 2}, {2, 3, 4}, {4, 3, 2}};
    auto f = polygon_tree_fiber(sq);
    for (int k = 0; k < 3; ++k) CHECK(sq.edge_image[f.edge[k]][f.position[k]] == f.point);
    CHECK(f.edge[1] == (f.edge[0] + 1) % 4);
    CHECK(f.edge[2] == (f.edge[1] + 1) % 4);
    CHECK(brute_force_fiber(sq).point != kNone);
}

TEST_CASE("polygon tree fiber on random instances") {
    std::mt19937 rng(7);
    for (int it = 0; it < 100; ++it) {
        std::size_t nt = 2 + rng() % 20;
        PolygonTreeMap m;
        m.tree.num_vertices = nt;
        for (Id v = 1; v < nt; ++v) m.tree.edges.push_back({Id(rng() % v), v});
        RootedTree rt(m.tree);
        std::vector<std::vector<Id>> adj(nt);
        for (auto [a, b] : m.tree.edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        std::size_t n = 3 + rng() % 8;
        Id cur = rng() % nt, start = cur;
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Id> w{cur};
            std::size_t len = rng() % 6;
            for (std::size_t k = 0; k < len; ++k) {
                cur = adj[cur][rng() % adj[cur].size()];
                w.push_back(cur);
            }
            if (i + 1 == n) {
                // walk back to the start along the tree geodesic
                while (cur != start) {
                    Id l = rt.lca(cur, start);
                    if (cur != l) {
                        for (Id u : adj[cur])
                            if (rt.depth(u) < rt.depth(cur)) {
                                cur = u;
                                break;
                            }
                    } else {
                        Id s = start;
                        while (rt.depth(s) > rt.depth(cur) + 1)
                            for (Id u : adj[s])
                                if (rt.depth(u) < rt.depth(s)) {
                                    s = u;
                                    break;
                                }
                        cur = s;
                    }
                    w.push_back(cur);
                }
            }
            m.edge_image.push_back(w);
        }
        auto f = polygon_tree_fiber(m);
        for (int k = 0; k < 3; ++k) CHECK(m.edge_image[f.edge[k]][f.position[k]] == f.point);
        CHECK(f.edge[1] == (f.edge[0] + 1) % n);
        CHECK(f.edge[2] == (f.edge[1] + 1) % n);
        CHECK(brute_force_fiber(m).point != kNone);
    }
}

TEST_CASE("thin triangle bound") {
    using P = std::array<double, 2>;
    auto d = [](const P& p, const P& q) { return std::hypot(p[0] - q[0], p[1] - q[1]); };
    P o{0, 0};
    auto r = thin_triangle_bound(d, o, P{1, 1}, P{1, 1}, P{1, 1}, P{1, 1}, P{1, 1}, 0.0, 0.0);
    CHECK(r.bound == 0);
    CHECK(r.measured == 0);

    // sector of radius 5 and angle pi/6; x1, x2 at radius 4 on the two sides, x3 on the arc bisector
    double th = std::acos(-1.0) / 6;
    P a{5, 0}, b{5 * std::cos(th), 5 * std::sin(th)};
    P x1{4, 0}, x2{4 * std::cos(th), 4 * std::sin(th)};
    P x3{5 * std::cos(th / 2), 5 * std::sin(th / 2)};
    // oracle: the largest pairwise distance is the chord 2 * 4 sin(pi/12) = 2.0706
    double eps = std::max({d(x1, x2), d(x1, x3), d(x2, x3)});
    CHECK(eps == doctest::Approx(8 * std::sin(th / 2)));
    r = thin_triangle_bound(d, o, a, b, x1, x2, x3, eps, 0.0);
    CHECK(r.holds);
    CHECK(r.measured == doctest::Approx(10 * std::sin(th / 2)));
    CHECK(r.bound == doctest::Approx(3 * eps));
    // with eps = 1.1 the pairwise hypothesis fails
    CHECK_THROWS_AS(thin_triangle_bound(d, o, a, b, x1, x2, x3, 1.1, 0.0), Error);

    // x3 far from the sphere
    try {
        thin_triangle_bound(d, o, a, b, x1, x2, P{1, 0}, 10.0, 0.1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::PreconditionUnmet);
    }
}
