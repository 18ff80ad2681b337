#include <doctest.h>

#include <cmath>
#include <map>

#include "uwidth/generators.hpp"
#include "uwidth/metric.hpp"
#include "uwidth/surface_cut.hpp"

using namespace uw;

namespace {

// all-pairs distances over edges by Floyd-Warshall
std::vector<std::vector<double>> all_pairs(const MetricComplex& c) {
    std::size_t n = c.num_vertices();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (std::size_t i = 0; i < n; ++i) d[i][i] = 0;
    for (auto& e : c.edges()) d[e.a][e.b] = d[e.b][e.a] = std::min(d[e.a][e.b], e.length);
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

// boundary circles as vertex classes
std::vector<int> boundary_class(const MetricComplex& c) {
    std::vector<int> cls(c.num_vertices(), -1);
    int next = 0;
    for (Id s = 0; s < c.num_vertices(); ++s) {
        if (!c.is_boundary_vertex(s) || cls[s] >= 0) continue;
        std::vector<Id> st{s};
        cls[s] = next;
        while (!st.empty()) {
            Id u = st.back();
            st.pop_back();
            for (Id e : c.incident_edges(u)) {
                if (!c.is_boundary_edge(e)) continue;
                Id w = c.edge(e).other(u);
                if (cls[w] < 0) cls[w] = next, st.push_back(w);
            }
        }
        ++next;
    }
    return cls;
}

std::vector<Id> column(int L, int H, int i) {
    std::vector<Id> out;
    for (int j = 0; j <= H; ++j) out.push_back(Id(j * L + i));
    return out;
}

}  // namespace

TEST_CASE("orientation is consistent") {
    auto c = pair_of_pants(1, 8, 2);
    auto o = orient_surface(c);
    for (Id e = 0; e < c.num_edges(); ++e) {
        auto t = c.edge_triangles(e);
        if (t.size() != 2) continue;
        auto& ed = c.edge(e);
        CHECK(runs_along(c, o, t[0], ed.a, ed.b) != runs_along(c, o, t[1], ed.a, ed.b));
    }
}

TEST_CASE("shortest essential arc") {
    SUBCASE("annulus") {
        auto c = annulus(4, 3);
        auto a = shortest_essential_arc(c);
        CHECK(a.length == doctest::Approx(3));
        CHECK(a.path.size() == 4);
        auto cls = boundary_class(c);
        CHECK(cls[a.path.front()] != cls[a.path.back()]);
        CHECK(a.from != a.to);
    }
    SUBCASE("pair of pants against exhaustive search") {
        auto c = pair_of_pants(1, 8, 2);
        auto a = shortest_essential_arc(c);
        auto d = all_pairs(c);
        auto cls = boundary_class(c);
        double best = kInf;
        for (Id u = 0; u < c.num_vertices(); ++u)
            for (Id v = 0; v < c.num_vertices(); ++v)
                if (cls[u] >= 0 && cls[v] >= 0 && cls[u] != cls[v]) best = std::min(best, d[u][v]);
        MESSAGE("pants arc " << a.length << " oracle " << best);
        CHECK(a.length == doctest::Approx(best));
        CHECK(cls[a.path.front()] != cls[a.path.back()]);
        double sum = 0;
        for (std::size_t k = 0; k + 1 < a.path.size(); ++k) sum += c.edge(c.find_edge(a.path[k], a.path[k + 1])).length;
        CHECK(sum == doctest::Approx(a.length));
    }
    SUBCASE("disk") {
        try {
            shortest_essential_arc(disk(2, 1));
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::IsDisk);
        }
    }
    SUBCASE("closed surface") {
        try {
            shortest_essential_arc(flat_torus(4));
            CHECK(false);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::UnsupportedTopology);
        }
    }
}

TEST_CASE("strip insertion") {
    auto c = annulus(8, 3);
    auto arc = column(8, 3, 0);
    for (double M : {0.5, 1.0}) {
        auto s = insert_strip(c, arc, M, 0.25);
        auto& n = s.complex;
        CHECK(n.euler_characteristic() == c.euler_characteristic());
        // still an annulus: two boundary circles
        auto cls = boundary_class(n);
        CHECK(*std::max_element(cls.begin(), cls.end()) == 1);
        RefinedComplex rn(n, n.longest_edge(), 1);
        auto dist = shortest_paths(rn, {{Id(8 + 7), 0.0}});
        // oracle: across the strip 2 + 2M, the long way round 6
        CHECK(dist[8 + 1] == doctest::Approx(std::min(2 + 2 * M, 6.0)));
        // the left copy keeps its ids, the right copy sits across the strip
        CHECK(dist[8] == doctest::Approx(1));
        CHECK(dist[s.right_copy[8]] == doctest::Approx(1 + 2 * M));
        CHECK(s.strips[0].rows.back() == doctest::Approx(3));
        std::size_t tb = 0;
        for (char f : s.true_boundary) tb += f;
        std::size_t rim = 0;
        for (Id e = 0; e < n.num_edges(); ++e) rim += n.is_boundary_edge(e);
        CHECK(tb == rim);
    }
    SUBCASE("squeezed strips") {
        double M = 2, eps = 0.1;
        auto s = insert_strip(c, arc, M, 0.5);
        auto sq = squeeze_strips(s, M * eps);
        std::vector<Id> sample;
        for (Id v = 0; v < s.complex.num_vertices(); v += 3) sample.push_back(v);
        CHECK(stretch_factor(s.complex, sq, sample) <= 1 + 1e-9);
        // original vertices: squeezed distances within 2 M eps of the uncut ones
        RefinedComplex r0(c, c.longest_edge(), 1), r1(sq, sq.longest_edge(), 1);
        for (Id u : {Id(0), Id(9), Id(15)}) {
            auto d0 = shortest_paths(r0, {{u, 0.0}});
            auto d1 = shortest_paths(r1, {{u, 0.0}});
            for (Id v = 0; v < c.num_vertices(); ++v) {
                CHECK(d1[v] >= d0[v] - 1e-9);
                CHECK(d1[v] <= d0[v] + 2 * M * eps + 1e-9);
            }
        }
    }
    SUBCASE("bad arcs") {
        CHECK_THROWS_AS(insert_strip(c, {0, 8, 16}, 1, 0.5), Error);    // stops inside
        CHECK_THROWS_AS(insert_strip(c, {0, 1, 9, 17, 25}, 1, 0.5), Error);  // starts along the boundary
        CHECK_THROWS_AS(insert_strip(c, {0, 8, 9, 8, 16, 24}, 1, 0.5), Error);
    }
}

TEST_CASE("lifts and arcs in a cover patch") {
    auto c = annulus(4, 3);
    auto pi = fundamental_group(c);
    auto cp = build_cover(c, universal_cover_spec(pi), 12, 0);
    auto p = patch_from_cover(cp);
    auto arc = column(4, 3, 0);
    auto lifts = find_lifts(p, c, arc);
    CHECK(lifts.size() >= 3);
    for (auto& l : lifts) {
        REQUIRE(l.size() == arc.size());
        for (std::size_t k = 0; k < l.size(); ++k) CHECK(p.proj[l[k]] == arc[k]);
    }
    auto pieces = boundary_pieces(p.complex, p.true_boundary);
    std::size_t truthy = 0;
    for (char t : pieces.piece_true) truthy += t;
    CHECK(truthy == 2);

    auto b = shortest_boundary_arc(p, {});
    CHECK(b.length == doctest::Approx(3));
    auto ca = project_arc(p, c, b);
    CHECK(ca.path.size() == 4);

    // a cut through the basepoint's sheet blocks the lifted columns
    std::vector<char> cut(p.complex.num_edges(), 0);
    for (auto& l : lifts)
        for (std::size_t k = 0; k + 1 < l.size(); ++k) cut[p.complex.find_edge(l[k], l[k + 1])] = 1;
    bool base_on_cut = false;
    for (auto& l : lifts) base_on_cut |= std::find(l.begin(), l.end(), p.basepoint) != l.end();
    if (!base_on_cut) {
        try {
            shortest_boundary_arc(p, cut);
        } catch (const Error& e) {
            CHECK(e.code() == ErrorCode::ArcsIntersect);
        }
    }
}
