#include <doctest.h>

#include "uwidth/generators.hpp"
#include "uwidth/grid_surface.hpp"
#include "uwidth/projection.hpp"

using namespace uw;

TEST_CASE("projection of the periodic grid surface to the grid lines") {
    auto g = grid_surface(2);
    auto cp = build_cover(g.complex, lattice_cover_spec(g), 5, 0);
    auto pc = projection_width_certificate(cp, 1);
    MESSAGE("fibers " << pc.nodes << " max " << pc.max_fiber << " classes " << pc.classes << "/" << pc.all_classes);
    CHECK(pc.holds);
    CHECK(pc.unresolved == 0);
    CHECK(pc.classes == pc.all_classes);
    CHECK(pc.max_fiber <= 3);
    // a fiber holds at least the vertices mapped to its node, at least a cell apart
    CHECK(pc.max_fiber >= g.grid);
    CHECK(pc.fiber.size() == pc.nodes);
}

TEST_CASE("projection needs a grid surface") {
    auto t = flat_torus(4);
    auto cp = build_cover(t, universal_cover_spec(fundamental_group(t)), 4, 0);
    try {
        projection_width_certificate(cp);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotGridSurface);
    }
}
