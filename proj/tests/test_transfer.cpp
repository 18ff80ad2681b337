#include <doctest.h>

#include "uwidth/generators.hpp"
#include "uwidth/transfer.hpp"

using namespace uw;

namespace {

TransferCertificate run(const MetricComplex& c, double trunc, double h) {
    auto spec = universal_cover_spec(fundamental_group(c));
    auto p = build_cover(c, spec, trunc, 0, h);
    TransferOptions o;
    o.h = h;
    return transfer_certificate(p, o);
}

}  // namespace

TEST_CASE("transfer on the Z/3 presentation complex") {
    auto c = presentation_complex(3);
    auto t = run(c, 40, 0.5);
    CHECK(t.structure == DeckGroupSpec::Structure::Finite);
    CHECK(t.factor == 3);
    CHECK(t.cover_is_tree);
    CHECK(t.holds);
    CHECK(t.slack <= 2 * (0.5 + 0.5) + 1e-12);
    CHECK(t.diagnostic.ran);
    MESSAGE("Z/3: base width " << t.base_width << " D " << t.D << " note " << t.diagnostic.note);
    CHECK(t.diagnostic.note.empty());
    CHECK(t.diagnostic.thin_holds);
    CHECK((t.diagnostic.m == 1 || t.diagnostic.m == 3));
}

TEST_CASE("transfer on an annulus") {
    auto c = annulus(4, 3);
    auto t = run(c, 16, 0.5);
    CHECK(t.structure == DeckGroupSpec::Structure::VirtuallyCyclic);
    CHECK(t.factor == 6);
    CHECK(t.holds);
    MESSAGE("annulus: base width " << t.base_width << " D " << t.D << " note " << t.diagnostic.note);
    CHECK(t.diagnostic.note.empty());
    CHECK(t.diagnostic.thin_holds);
}

TEST_CASE("transfer on a disk is the degenerate finite case") {
    auto t = run(disk(2, 1), 8, 0.5);
    CHECK(t.factor == 3);
    CHECK(t.holds);
    CHECK(t.base_width <= 3 * t.D + t.slack);
}

TEST_CASE("transfer rejects large groups") {
    auto c = flat_torus(4);
    auto spec = universal_cover_spec(fundamental_group(c));
    auto p = build_cover(c, spec, 8);
    try {
        transfer_certificate(p);
        CHECK(false);
    } catch (const Error& e) {
        CHECK(e.code() == ErrorCode::NotVirtuallyCyclic);
    }
}
