#include <doctest.h>

#include "uwidth/extend.hpp"
#include "uwidth/generators.hpp"
#include "uwidth/sweep.hpp"

using namespace uw;

namespace {

GraphMap sweep_map(const MetricComplex& c, double step) {
    auto sk = two_skeleton(c);
    RefinedComplex rc(sk, sk.longest_edge(), 1);
    auto q = sweep_quotient(rc, {PointOnComplex::vertex(0)}, {step, false});
    GraphMap f;
    f.num_nodes = q.nodes.size();
    f.edges = q.adjacency;
    f.vertex_node.assign(q.assignment.begin(), q.assignment.begin() + long(c.num_vertices()));
    return f;
}

}  // namespace

TEST_CASE("extension of a 2-complex is the identity") {
    auto c = equilateral_triangle(1);
    auto f = sweep_map(c, 1);
    auto r = extend_to_full_complex(c, f, 1);
    CHECK(r.certified == r.d);
    CHECK(r.measured == r.d);
    CHECK(r.holds);
}

TEST_CASE("extension over one tetrahedron") {
    auto c = stacked_tetrahedra(1, 1);
    CHECK(c.dim() == 3);
    auto f = sweep_map(c, 1);
    auto r = extend_to_full_complex(c, f, 1);
    CHECK(r.certified == doctest::Approx(r.d + 6));
    CHECK(r.holds);
}

TEST_CASE("extension over two stacked tetrahedra") {
    auto c = stacked_tetrahedra(2, 1);
    auto f = sweep_map(c, 1);
    auto r = extend_to_full_complex(c, f, 1);
    CHECK(r.holds);
    // oracle: every pair of vertices is within two edges, so no fiber exceeds 2
    CHECK(r.measured <= 2);
    CHECK(r.measured - r.d <= 2 * r.k);
    for (std::size_t y = 0; y < r.fiber_after.size(); ++y) CHECK(r.fiber_after[y] >= r.fiber_before[y]);
}

TEST_CASE("extension rejects wide simplices") {
    auto c = stacked_tetrahedra(1, 2);
    auto f = sweep_map(c, 2);
    try {
        extend_to_full_complex(c, f, 1);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::SimplexTooLarge);
    }
}
