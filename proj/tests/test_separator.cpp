#include <doctest.h>

#include <cmath>
#include <numeric>
#include <sstream>

#include "uwidth/generators.hpp"
#include "uwidth/separator.hpp"

using namespace uw;

namespace {

// base edges of row j of annulus(L, H)
std::vector<Id> meridian(const MetricComplex& c, int L, int j) {
    std::vector<Id> out;
    for (int i = 0; i < L; ++i) out.push_back(c.find_edge(Id(j * L + i), Id(j * L + (i + 1) % L)));
    return out;
}

}  // namespace

TEST_CASE("boundary meridian leaves one tube") {
    auto c = annulus(4, 3);
    RefinedComplex rc(c, 0.5);
    auto z = refined_edges(rc, meridian(c, 4, 0));
    auto v = verify_separator(rc, z, 10);
    CHECK(v.accepted);
    auto& s = v.separator;
    REQUIRE(s.z_components.size() == 1);
    REQUIRE(s.complement_components.size() == 1);
    // oracle: flat cylinder, half circumference by full height
    double tube = std::sqrt(4.0 + 9.0);
    CHECK(s.z_diameters[0] == doctest::Approx(2).epsilon(0.02));
    CHECK(std::abs(s.complement_diameters[0] - tube) <= 2 * rc.mesh_slack());
    CHECK(verify_separator(rc, z, s.width).accepted);
    auto no = verify_separator(rc, z, s.width - 0.01);
    CHECK_FALSE(no.accepted);
    CHECK_FALSE(no.in_z);
    CHECK(no.diameter == s.width);
    CHECK(no.report.find("complement component 0") != std::string::npos);
}

TEST_CASE("two meridians cut the cylinder into thirds") {
    auto c = annulus(4, 3);
    RefinedComplex rc(c, 0.5);
    auto rows = meridian(c, 4, 1);
    auto top = meridian(c, 4, 2);
    rows.insert(rows.end(), top.begin(), top.end());
    auto z = refined_edges(rc, rows);
    auto s = measure_separator(rc, z);
    CHECK(s.z_components.size() == 2);
    CHECK(s.complement_components.size() == 3);
    double third = std::sqrt(4.0 + 1.0);
    for (double d : s.complement_diameters) CHECK(std::abs(d - third) <= 2 * rc.mesh_slack());
    CHECK(verify_separator(rc, z, std::max(2.0, s.width)).accepted);

    auto sm = map_from_separator(rc, s);
    CHECK(sm.map.num_nodes == 5);
    // incidence oracle: bottom and top tubes touch one circle, the middle both
    CHECK(sm.map.edges.size() == 4);
    std::vector<int> deg(5, 0);
    for (auto [a, b] : sm.map.edges) ++deg[a], ++deg[b];
    std::sort(deg.begin(), deg.end());
    CHECK(deg == std::vector<int>{1, 1, 2, 2, 2});
    CHECK(sm.bound == doctest::Approx(s.width));
    auto back = separator_preimage(rc, sm);
    CHECK(back.edge == s.z.edge);
    CHECK(back.vertex == s.z.vertex);
}

TEST_CASE("empty separator measures the whole space") {
    auto c = annulus(4, 3);
    RefinedComplex rc(c, 0.5);
    auto s = measure_separator(rc, Subcomplex::empty(rc.mesh()));
    CHECK(s.z_components.empty());
    CHECK(s.complement_components.size() == 1);
    std::vector<Id> all(rc.num_vertices());
    std::iota(all.begin(), all.end(), Id(0));
    double d = vertex_diameter(rc, all).value;
    CHECK(s.width >= d - 1e-12);
    CHECK(verify_separator(rc, Subcomplex::empty(rc.mesh()), s.width).accepted);
    CHECK_FALSE(verify_separator(rc, Subcomplex::empty(rc.mesh()), d - 0.01).accepted);
    auto sm = map_from_separator(rc, s);
    CHECK(sm.map.num_nodes == 1);
    CHECK(sm.map.edges.empty());
}

TEST_CASE("sweep separator and round trip on a cylinder") {
    auto c = annulus(4, 3);
    RefinedComplex rc(c, 0.5);
    auto q = sweep_quotient(rc, points_along(rc, meridian(c, 4, 0)), {0.5});
    double eps = 2 * rc.mesh_slack();
    auto s = separator_from_map(rc, q, eps);
    MESSAGE("sweep width " << q.width() << " separator width " << s.width);
    CHECK(s.width <= q.width() + eps);
    CHECK(verify_separator(rc, s.z, q.width() + eps).accepted);
    auto sm = map_from_separator(rc, s);
    CHECK(sm.bound <= q.width() + eps);
    auto back = verify_separator(rc, separator_preimage(rc, sm), s.width);
    CHECK(back.accepted);
    CHECK(back.separator.width == doctest::Approx(s.width));
}

TEST_CASE("constant map gives the empty separator") {
    auto c = annulus(4, 2);
    RefinedComplex rc(c, 1, 1);
    GraphMap f;
    f.num_nodes = 1;
    f.vertex_node.assign(rc.num_vertices(), 0);
    double d = graph_map_fibers(rc, f)[0];
    auto s = separator_from_map(rc, f, d, 0.5);
    CHECK(s.z_components.empty());
    CHECK(s.width >= d - 1e-12);
    CHECK_THROWS_AS(separator_from_map(rc, f, d - 0.5, 0.5), Error);
}

TEST_CASE("identity map on a graph cuts at the branch vertices") {
    auto c = y_graph(3, 1, 1);
    RefinedComplex rc(c, 1, 1);
    auto& m = rc.mesh();
    GraphMap f;
    f.num_nodes = m.num_vertices();
    f.vertex_node.resize(m.num_vertices());
    std::iota(f.vertex_node.begin(), f.vertex_node.end(), Id(0));
    for (auto& e : m.edges()) f.edges.push_back({e.a, e.b});
    auto fib = graph_map_fibers(rc, f);
    double D = *std::max_element(fib.begin(), fib.end());
    auto s = separator_from_map(rc, f, D, 0.1);
    for (Id v = 0; v < m.num_vertices(); ++v) CHECK(bool(s.z.vertex[v]) == (m.incident_edges(v).size() > 1));
    for (double d : s.z_diameters) CHECK(d == 0);
    CHECK(s.width == doctest::Approx(1));
}

TEST_CASE("separator search") {
    SUBCASE("cylinder from the boundary") {
        auto c = annulus(4, 3);
        RefinedComplex rc(c, 0.5);
        std::vector<PointOnComplex> seeds = {PointOnComplex::vertex(0), PointOnComplex::vertex(2)};
        auto r = search_separator(rc, seeds, {8, 0.5});
        double slack = 2 * (rc.mesh_slack() + 0.5);
        MESSAGE("cylinder search width " << r.best.width << " slack " << slack);
        CHECK(r.best.width <= 2 + slack);
        CHECK(verify_separator(rc, r.best.z, r.best.width).accepted);
    }
    SUBCASE("monotone in the budget and deterministic") {
        auto c = flat_torus(6);
        RefinedComplex rc(c, 1);
        std::vector<PointOnComplex> seeds = {PointOnComplex::vertex(0)};
        double prev = kInf;
        for (std::size_t b : {1, 2, 4, 8}) {
            auto r = search_separator(rc, seeds, {b, 1});
            CHECK(r.best.width <= prev + 1e-12);
            prev = r.best.width;
            CHECK(r.evaluations <= seeds.size() + b);
        }
        auto again = search_separator(rc, seeds, {8, 1});
        CHECK(again.best.width == prev);
        double slack = 2 * (rc.mesh_slack() + 1);
        MESSAGE("torus search width " << prev);
        CHECK(prev >= 3);
        CHECK(prev <= 6 + slack);
    }
    SUBCASE("single triangle") {
        auto c = equilateral_triangle(1);
        RefinedComplex rc(c, 0.25);
        auto r = search_separator(rc, {PointOnComplex::vertex(0)}, {4, 2});
        CHECK(r.best.z_components.empty());
        CHECK(r.best.width <= 1 + rc.mesh_slack());
    }
}

TEST_CASE("separator file round trip") {
    auto c = annulus(4, 3);
    RefinedComplex rc(c, 0.5);
    auto z = refined_edges(rc, meridian(c, 4, 1));
    z.vertex[rc.edge_chain(c.find_edge(0, 4))[1]] = 1;  // a lone point
    std::stringstream ss;
    write_separator(ss, rc, z);
    auto back = read_separator(ss, rc);
    CHECK(back.edge == z.edge);
    CHECK(back.vertex == z.vertex);

    std::istringstream bad("mesh " + std::to_string(rc.subdivisions()) + "\nz 0 0.2 0.6\n");
    CHECK_THROWS_AS(read_separator(bad, rc), Error);
    std::istringstream wrong("mesh 99\n");
    CHECK_THROWS_AS(read_separator(wrong, rc), Error);
}
