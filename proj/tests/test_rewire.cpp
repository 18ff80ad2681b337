#include <doctest.h>

#include <set>

#include "uwidth/generators.hpp"
#include "uwidth/metric.hpp"
#include "uwidth/rewire.hpp"

using namespace uw;

namespace {

SideTrace::Contact contact(bool top, bool bottom, bool other = false) {
    SideTrace::Contact c;
    c.top = top, c.bottom = bottom, c.other = other;
    return c;
}

// trace from per-row letters: Z component per vertex, complement per vertex/edge
SideTrace make_trace(std::vector<int> z_at, std::vector<int> u_at_vertex, std::vector<int> u_at_edge,
                     std::vector<SideTrace::Contact> z, std::vector<SideTrace::Contact> u) {
    SideTrace t;
    t.rows = z_at.size();
    t.z_at = std::move(z_at);
    t.u_at_vertex = std::move(u_at_vertex);
    t.u_at_edge = std::move(u_at_edge);
    t.z = std::move(z);
    t.u = std::move(u);
    t.z_vertices.resize(t.z.size());
    t.u_vertices.resize(t.u.size());
    return t;
}

// independent oracle: grid points covered by each drawn piece
std::vector<std::set<std::pair<int, int>>> rasterise(const DrawnEnd& d) {
    std::vector<std::set<std::pair<int, int>>> out;
    for (auto& p : d.pieces) {
        std::set<std::pair<int, int>> pts;
        int col = d.levels - p.level;
        for (auto r : p.rows)
            for (int c = 0; c <= col; ++c) pts.insert({c, int(r)});
        for (auto r = p.r0; r <= p.r1; ++r) pts.insert({col, int(r)});
        out.push_back(pts);
    }
    return out;
}

bool pairwise_disjoint(const std::vector<std::set<std::pair<int, int>>>& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
        for (std::size_t j = i + 1; j < s.size(); ++j)
            for (auto& p : s[i])
                if (s[j].count(p)) return false;
    return true;
}

struct PatchCase {
    MetricComplex surface;
    std::vector<int> orient;
    Patch patch;
    std::vector<std::vector<Id>> lifts;
    CutArc arc;
};

PatchCase patch_case(const MetricComplex& s, double trunc) {
    PatchCase pc;
    pc.surface = s;
    pc.orient = orient_surface(s);
    auto cp = build_cover(s, universal_cover_spec(fundamental_group(s)), trunc, 0);
    pc.patch = patch_from_cover(cp);
    pc.arc = project_arc(pc.patch, s, shortest_boundary_arc(pc.patch, {}));
    pc.lifts = find_lifts(pc.patch, s, pc.arc.path);
    return pc;
}

}  // namespace

TEST_CASE("special case: one component joins top and bottom") {
    // rows 0..4, Z meets the arc at rows 1 and 3
    auto t = make_trace({-1, 0, -1, 0, -1}, {0, -1, 1, -1, 2}, {0, 1, 1, 2}, {contact(true, true)},
                        {contact(false, true), contact(false, false), contact(true, false)});
    auto d = draw_end(t);
    CHECK(d.special);
    REQUIRE(d.pieces.size() == 1);
    CHECK(d.pieces[0].level == 0);
    CHECK(d.pieces[0].r0 == 0);
    CHECK(d.pieces[0].r1 == 4);
    CHECK(d.pieces[0].rows == std::vector<std::size_t>{1, 3});
    CHECK(d.checks.all());
    CHECK(d.u_pieces == 3);
}

TEST_CASE("nested components get nested verticals") {
    // A joins top and bottom at row 4; B loops from row 1 to row 3 around C at row 2;
    // D runs from row 6 to the top
    auto t = make_trace({-1, 1, 2, 1, 0, -1, 3, -1, -1}, {0, -1, -1, -1, -1, 2, -1, 3, 3}, {0, 1, 1, 0, 2, 2, 3, 3},
                        {contact(true, true), contact(false, false), contact(false, false), contact(true, false)},
                        {contact(false, true), contact(false, false), contact(true, false), contact(true, false)});
    auto d = draw_end(t);
    CHECK(d.special);
    REQUIRE(d.pieces.size() == 4);
    std::set<int> levels;
    for (auto& p : d.pieces) levels.insert(p.level);
    CHECK(levels.size() == 4);
    CHECK(d.pieces[0].z == 0);
    CHECK(d.pieces[1].z == 1);  // adjacent to A first, from the bottom
    CHECK(d.pieces[3].r1 == 8);
    CHECK(pairwise_disjoint(rasterise(d)));
    CHECK(d.checks.all());
    MESSAGE("failed checks: " << d.checks.failed());
}

TEST_CASE("non-special case flanks p") {
    auto t = make_trace({-1, 0, -1, -1, -1, 1, -1}, {0, -1, 1, 1, 1, -1, 2}, {0, 1, 1, 1, 1, 2},
                        {contact(false, true), contact(true, false)},
                        {contact(false, true), contact(false, false, true), contact(true, false)});
    auto d = draw_end(t);
    CHECK_FALSE(d.special);
    CHECK(d.p == 3);
    REQUIRE(d.pieces.size() == 3);
    CHECK(d.pieces[0].z == -1);  // the end column on its own
    CHECK(d.pieces[0].r0 == 0);
    CHECK(d.pieces[0].r1 == 6);
    CHECK(d.pieces[1].z == 0);
    CHECK(d.pieces[1].r0 == 0);
    CHECK(d.pieces[1].r1 == 1);
    CHECK(d.pieces[2].z == 1);
    CHECK(d.pieces[2].r0 == 5);
    CHECK(d.pieces[2].r1 == 6);
    CHECK(pairwise_disjoint(rasterise(d)));
    CHECK(d.checks.all());
}

TEST_CASE("ambiguous trace is reported") {
    // a single complement component touching only the bottom
    auto t = make_trace({-1, -1}, {0, 0}, {0}, {}, {contact(false, true)});
    CHECK_THROWS_AS(draw_end(t), Error);
}

TEST_CASE("strip columns") {
    auto cols = strip_columns(3, 0.1, 0.05, 2, 3);
    CHECK(cols.front() == -3);
    CHECK(cols.back() == 3);
    CHECK(std::find(cols.begin(), cols.end(), 0.0) != cols.end());
    CHECK(cols[2] == doctest::Approx(-3 + 0.05));
    CHECK(cols[cols.size() - 4] == doctest::Approx(3 - 0.05));
    for (std::size_t i = 1; i < cols.size(); ++i) CHECK(cols[i] > cols[i - 1]);
    // mid spacing below eps'
    for (std::size_t i = 3; i + 4 < cols.size(); ++i) CHECK(cols[i] - cols[i - 1] < 0.05);
    CHECK(std::find_if(cols.begin(), cols.end(), [](double x) { return std::abs(x - (-3 + 0.1)) < 1e-12; }) !=
          cols.end());
}

TEST_CASE("rewiring on an annulus cover patch") {
    auto s = steiner_refine(annulus(4, 3), 0.5);
    auto pc = patch_case(s, 10);
    REQUIRE(pc.lifts.size() >= 2);
    RefinedComplex rc(pc.patch.complex, pc.patch.complex.longest_edge(), 1);
    auto sr = search_separator(rc, {PointOnComplex::vertex(pc.patch.basepoint)}, {4, 1});
    RewireOptions opt;
    opt.eps = 0.1;
    auto r = rewire_lifts(pc.patch, s, pc.orient, sr.best.z, pc.lifts, opt);
    MESSAGE("D " << r.D << " L " << r.L << " M " << r.M << " lifts " << r.lifts.size() << " nudged " << r.nudged
                 << " reach excess " << r.reach_excess << " slack " << r.slack);
    CHECK(r.properties_hold);
    for (auto& e : r.ends) CHECK_MESSAGE(e.checks.all(), e.checks.failed());
    CHECK(r.L <= r.D);
    RefinedComplex rn(r.strip.complex, r.strip.complex.longest_edge(), 1);
    double slack = rc.mesh_slack() + 1;
    auto v = verify_separator(rn, r.z, (1 + opt.eps) * r.D + 2 * slack);
    MESSAGE("rewired width " << v.separator.width);
    CHECK(v.accepted);
    CHECK(r.strip.complex.euler_characteristic() == pc.patch.complex.euler_characteristic());

    // projection onto the surface with the same strip
    auto down = insert_strips(
        s, {pc.arc.path}, r.strip.columns,
        [&](Id t, std::size_t, std::size_t k) { return runs_along(s, pc.orient, t, pc.arc.path[k], pc.arc.path[k + 1]); },
        std::vector<char>(s.num_edges(), 1));
    auto proj = strip_projection(pc.patch, r, down);
    std::size_t mapped = 0;
    for (Id v = 0; v < proj.size(); ++v) {
        if (proj[v] == kNone) continue;
        ++mapped;
    }
    CHECK(mapped > proj.size() / 2);
    // every edge between mapped vertices maps to an edge of the same length
    for (auto& e : r.strip.complex.edges()) {
        if (proj[e.a] == kNone || proj[e.b] == kNone) continue;
        Id f = down.complex.find_edge(proj[e.a], proj[e.b]);
        REQUIRE(f != kNone);
        CHECK(down.complex.edge(f).length == doctest::Approx(e.length));
    }
}

TEST_CASE("fill-in and fill-out certificates") {
    auto s = steiner_refine(annulus(4, 3), 0.5);
    auto pc = patch_case(s, 10);
    auto& c = pc.patch.complex;
    RefinedComplex rc(c, c.longest_edge(), 1);
    // the lift through the middle of the patch
    auto lift = pc.lifts[0];
    for (auto& l : pc.lifts)
        if (std::find(l.begin(), l.end(), pc.patch.basepoint) != l.end()) lift = l;
    auto o = pc.orient;
    std::vector<char> right(c.num_vertices(), 0), on(c.num_vertices(), 0);
    for (Id v : lift) on[v] = 1;
    // flood the right side from triangles right of the first lift edge
    std::vector<char> tri(c.num_triangles(), 0), cut(c.num_edges(), 0);
    for (std::size_t k = 0; k + 1 < lift.size(); ++k) cut[c.find_edge(lift[k], lift[k + 1])] = 1;
    std::vector<Id> st;
    for (std::size_t k = 0; k + 1 < lift.size(); ++k)
        for (Id t : c.edge_triangles(c.find_edge(lift[k], lift[k + 1]))) {
            auto& tv = c.triangle(t).v;
            Id bt = s.find_triangle(pc.patch.proj[tv[0]], pc.patch.proj[tv[1]], pc.patch.proj[tv[2]]);
            if (!runs_along(s, o, bt, pc.patch.proj[lift[k]], pc.patch.proj[lift[k + 1]]) && !tri[t])
                tri[t] = 1, st.push_back(t);
        }
    while (!st.empty()) {
        Id t = st.back();
        st.pop_back();
        for (Id e : c.triangle(t).e) {
            if (cut[e]) continue;
            for (Id u : c.edge_triangles(e))
                if (!tri[u]) tri[u] = 1, st.push_back(u);
        }
    }
    for (Id t = 0; t < c.num_triangles(); ++t)
        if (tri[t])
            for (Id v : c.triangle(t).v)
                if (!on[v]) right[v] = 1;

    // x one edge left of the middle of the lift
    Id mid = lift[lift.size() / 2], x = kNone;
    for (Id e : c.incident_edges(mid)) {
        Id w = c.edge(e).other(mid);
        if (!right[w] && !on[w]) x = w;
    }
    REQUIRE(x != kNone);
    auto dx = shortest_paths(rc, {{x, 0.0}});

    SUBCASE("degenerate interval") {
        auto f = fillin_check(rc, lift, right, x, 2, 2, dx[lift[2]] + 1e-9);
        CHECK(f.holds);
        CHECK(f.samples == 1);
    }
    SUBCASE("interval through the right side") {
        double D = std::max(dx[lift.front()], dx[lift.back()]) + 0.5;
        auto f = fillin_check(rc, lift, right, x, 0, lift.size() - 1, D);
        CHECK(f.holds);
        CHECK(f.samples == lift.size());
        // oracle: direct distance field over the interval
        double worst = 0;
        for (Id v : lift) worst = std::max(worst, dx[v]);
        CHECK(f.worst == doctest::Approx(worst - D));
    }
    SUBCASE("precondition") {
        CHECK_THROWS_AS(fillin_check(rc, lift, right, x, 0, lift.size() - 1, 0.1), Error);
        CHECK_THROWS_AS(fillin_check(rc, lift, right, lift[1], 0, 1, 10), Error);
    }
    SUBCASE("fill-out toward the bottom") {
        std::vector<int> kind(c.num_vertices(), 0);
        for (Id e = 0; e < c.num_edges(); ++e)
            if (pc.patch.true_boundary[e]) kind[c.edge(e).a] = kind[c.edge(e).b] = 1;
        Id b = kNone;
        for (Id e : c.incident_edges(lift.front())) {
            Id w = c.edge(e).other(lift.front());
            if (right[w] && kind[w]) b = w;
        }
        REQUIRE(b != kNone);
        double D = dx[b] + 0.25;
        auto f = fillout_check(rc, lift, right, kind, x, b, D);
        CHECK(f.holds);
    }
}

TEST_CASE("rewiring on a pair-of-pants cover patch") {
    auto s = pair_of_pants(1, 8, 2);
    auto pc = patch_case(s, 6);
    REQUIRE(!pc.lifts.empty());
    RefinedComplex rc(pc.patch.complex, pc.patch.complex.longest_edge(), 1);
    auto sr = search_separator(rc, {PointOnComplex::vertex(pc.patch.basepoint)}, {2, 0.5});
    RewireOptions opt;
    auto r = rewire_lifts(pc.patch, s, pc.orient, sr.best.z, pc.lifts, opt);
    MESSAGE("pants D " << r.D << " L " << r.L << " lifts " << r.lifts.size() << " ends " << r.ends.size()
                       << " excess " << r.reach_excess);
    CHECK(r.properties_hold);
    RefinedComplex rn(r.strip.complex, r.strip.complex.longest_edge(), 1);
    double slack = rc.mesh_slack() + 0.5;
    CHECK(verify_separator(rn, r.z, (1 + opt.eps) * r.D + 2 * slack).accepted);
}
