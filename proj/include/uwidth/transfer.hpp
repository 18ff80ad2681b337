#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "uwidth/cover.hpp"
#include "uwidth/sweep.hpp"
#include "uwidth/tree_fiber.hpp"

namespace uw {

// The argument run on the widest sphere component of the base: build the loop(s)
// through it, lift a trivial power to the cover, find a fiber of the cover's tree
// map meeting three consecutive pieces, and check the thin-triangle bound.
struct TransferDiagnostic {
    bool ran = false;
    std::string note;
    Id node = kNone;                // base sweep node examined
    std::array<Id, 3> ends{kNone, kNone, kNone};  // a, b (and c) on the component
    std::int64_t m = 0, n = 0;      // loop exponents
    std::size_t loop_pieces = 0;
    double loop_length = 0;
    PolygonFiber fiber;
    std::array<Id, 3> x{kNone, kNone, kNone};  // projected fiber witnesses on the base
    std::array<Id, 2> pair{kNone, kNone};      // endpoints the thin-triangle bound covers
    double eps = 0, delta = 0;
    double thin_bound = 0, measured = 0;
    bool thin_holds = false;
};

struct TransferCertificate {
    DeckGroupSpec::Structure structure = DeckGroupSpec::Structure::Other;
    double factor = 0;       // 3 (finite) or 6 (virtually cyclic)
    double D = 0;            // cover tree-map fiber bound over the complete ball
    double base_width = 0;   // max sphere-component diameter on the base
    double slack = 0;        // 2 (mesh slack + step)
    double bound = 0;        // factor * D + slack
    bool holds = false;
    bool cover_is_tree = false;
    double complete_radius = 0;
    double required_radius = 0;  // half the lifted diagnostic loop length
    SweepQuotient base_sweep, cover_sweep;
    TransferDiagnostic diagnostic;
};

struct TransferOptions {
    double h = 0;     // 0: default_h(base)
    double step = 0;  // 0: h
    bool diagnose = true;
    int max_exponent = 64;
};

TransferCertificate transfer_certificate(const CoverPatch& cover, const TransferOptions& opt = {});

}  // namespace uw
