#include <doctest.h>

#include <cmath>
#include <sstream>

#include "uwidth/components.hpp"
#include "uwidth/cover.hpp"
#include "uwidth/generators.hpp"
#include "uwidth/metric.hpp"

using namespace uw;

TEST_CASE("complex validation") {
    ComplexBuilder b;
    Id a = b.add_vertex(), c = b.add_vertex(), d = b.add_vertex();
    b.edge(a, c, 1);
    b.edge(c, d, 1);
    b.edge(d, a, 3);
    b.triangle(a, c, d);
    CHECK_THROWS_AS(b.build(), Error);
    try {
        b.build();
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TriangleInequalityViolated);
    }

    ComplexBuilder z;
    z.add_vertex();
    z.add_vertex();
    z.edge(0, 1, 0);
    try {
        z.build();
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NonPositiveLength);
    }

    ComplexBuilder g;
    for (int i = 0; i < 4; ++i) g.add_vertex();
    g.edge(0, 1, 1);
    g.edge(2, 3, 1);
    try {
        g.build();
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::Disconnected1Skeleton);
    }
}

TEST_CASE("text round trip") {
    auto t = flat_torus(4);
    std::stringstream s;
    write_complex(s, t);
    auto back = build_complex(parse_complex(s), [] {
        BuildOptions o;
        o.surface = true;
        return o;
    }());
    CHECK(back.num_vertices() == t.num_vertices());
    CHECK(back.num_edges() == t.num_edges());
    CHECK(back.num_triangles() == t.num_triangles());
    CHECK(back.euler_characteristic() == 0);
}

TEST_CASE("generator shapes") {
    CHECK(flat_torus(6).num_triangles() == 72);
    CHECK(flat_torus(6).euler_characteristic() == 0);
    CHECK(annulus(6, 3).euler_characteristic() == 0);
    CHECK(annulus(6, 3).has_boundary());
    CHECK(disk(2, 1).euler_characteristic() == 1);
    auto p = pair_of_pants();
    CHECK(p.euler_characteristic() == -1);
    CHECK(presentation_complex(3).euler_characteristic() == 1);
    CHECK(y_graph().num_vertices() == 5);
}

TEST_CASE("refinement is nested and idempotent") {
    auto t = flat_torus(3);
    RefinedComplex r1(t, 0.5), r2(t, 0.25);
    CHECK(r1.subdivisions() == 4);  // diagonal sqrt 2 / 4 <= 0.5
    CHECK(r2.subdivisions() == 8);
    auto m = steiner_refine(t, 0.5);
    auto m2 = steiner_refine(m, 0.5);
    CHECK(m.num_vertices() == m2.num_vertices());
    CHECK(m.num_triangles() == 16 * t.num_triangles());
    CHECK(m.euler_characteristic() == 0);
}

TEST_CASE("distances on a flat torus") {
    auto t = flat_torus(6);
    RefinedComplex rc(t, 0.25);
    auto d = shortest_paths(rc, {{0, 0.0}});
    CHECK(d[1] == doctest::Approx(1.0));
    CHECK(d[3] == doctest::Approx(3.0));
    // (3,3): straight line length 3 sqrt 2 along diagonals
    CHECK(d[3 * 6 + 3] == doctest::Approx(3 * std::sqrt(2.0)));
    // chords make the (1,2) distance exact
    CHECK(d[2 * 6 + 1] == doctest::Approx(std::sqrt(5.0)).epsilon(1e-9));
}

TEST_CASE("diameter of samples") {
    auto c = cycle_graph(8, 8);
    RefinedComplex rc(c, 0.5);
    std::vector<Id> all;
    for (Id v = 0; v < rc.num_vertices(); ++v) all.push_back(v);
    CHECK(vertex_diameter(rc, all).value == doctest::Approx(4.0));
}

TEST_CASE("fundamental groups") {
    auto tor = fundamental_group(flat_torus(4));
    CHECK(tor.group.kind() == Group::Kind::Abelian);
    CHECK(tor.group.rank() == 2);
    CHECK(tor.group.free_rank() == 2);
    CHECK(tor.exact);
    CHECK(tor.betti1 == 2);

    auto cyc = fundamental_group(cycle_graph(5, 5));
    CHECK(cyc.group.free_rank() == 1);
    CHECK(!cyc.group.is_finite());

    auto pants = fundamental_group(pair_of_pants());
    CHECK(pants.group.kind() == Group::Kind::Free);
    CHECK(pants.group.rank() == 2);

    for (int n : {2, 3, 5}) {
        auto z = fundamental_group(presentation_complex(n));
        CHECK(z.group.is_finite());
        CHECK(z.group.order() == n);
    }
    auto ann = fundamental_group(annulus(6, 2));
    CHECK(ann.group.free_rank() == 1);
    CHECK(fundamental_group(disk(2, 1)).group.is_trivial());
}

TEST_CASE("covers of the torus") {
    auto t = flat_torus(4);
    auto pi = fundamental_group(t);
    auto spec = universal_cover_spec(pi);
    auto p = build_cover(t, spec, 6.0);
    CHECK(p.sheets > 1);
    CHECK(p.systole == doctest::Approx(4.0));
    CHECK(p.isometry_radius == doctest::Approx(2.0));
    CHECK(p.complete_radius > 2.0);
    // every lifted triangle projects to a base triangle with matching edge lengths
    for (Id x = 0; x < p.complex.num_triangles(); ++x) {
        auto& tr = p.complex.triangle(x);
        auto& bt = t.triangle(p.tri_base[x]);
        for (int i = 0; i < 3; ++i) {
            CHECK(p.vertex_base[tr.v[i]] == bt.v[i]);
            CHECK(p.complex.edge(tr.e[i]).length == t.edge(bt.e[i]).length);
        }
    }
    // a loop around one direction has nontrivial monodromy
    std::vector<Id> loop{0, 1, 2, 3, 0};
    CHECK(!spec.group.is_identity(monodromy(t, spec, loop)));
    auto lifted = lift_path(p, loop, p.basepoint);
    CHECK(lifted.front() != lifted.back());

    // finite cyclic cover: Z^2 / <(4,0) in one generator>
    auto dbl = regular_cover_spec(pi, {Word{1, 1}});
    CHECK(dbl.group.free_rank() == 1);
    CHECK(dbl.structure == DeckGroupSpec::Structure::VirtuallyCyclic);
}

TEST_CASE("cover truncation") {
    auto t = flat_torus(4);
    auto spec = universal_cover_spec(fundamental_group(t));
    try {
        build_cover(t, spec, 1.0);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::TruncationTooSmall);
    }
    auto p = build_cover(t, spec, 4.0);
    std::vector<Id> far;
    for (int i = 0; i < 12; ++i) far.push_back(Id(i % 4));
    far.push_back(0);
    try {
        lift_path(p, far, p.basepoint);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::LiftLeavesTruncation);
    }
}
