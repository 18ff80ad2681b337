#pragma once

#include <cmath>
#include <string>

#include "uwidth/error.hpp"

namespace uw {

struct ThinTriangleResult {
    double bound = 0;     // 3 eps + 4 delta
    double measured = 0;  // d(a, b)
    bool holds = false;   // measured <= bound + slack
};

// Checks the hypotheses numerically (with additive slack) and returns the bound on
// d(a,b).  `d` is any symmetric distance functor on P.  Hypotheses:
//   x1 on a geodesic from x0 to a, x2 on one from x0 to b;
//   a, b, x3 within delta of a sphere component around x0, so their distances to x0
//   differ pairwise by at most 2 delta;
//   d(xi, xj) <= eps.
template <class P, class Dist>
ThinTriangleResult thin_triangle_bound(Dist&& d, const P& x0, const P& a, const P& b, const P& x1, const P& x2,
                                       const P& x3, double eps, double delta, double slack = 1e-9) {
    if (eps < 0 || delta < 0) throw Error(ErrorCode::BadParam, "eps and delta must be nonnegative");
    auto need = [&](double lhs, double rhs, const std::string& what) {
        if (lhs > rhs + slack)
            throw Error(ErrorCode::PreconditionUnmet,
                        what + " (" + std::to_string(lhs) + " > " + std::to_string(rhs) + ")");
    };
    double r_a = d(x0, a), r_b = d(x0, b), r_3 = d(x0, x3);
    need(d(x0, x1) + d(x1, a), r_a, "x1 is not on a geodesic from x0 to a");
    need(d(x0, x2) + d(x2, b), r_b, "x2 is not on a geodesic from x0 to b");
    need(std::abs(r_a - r_3), 2 * delta, "a and x3 are not at matching distance from x0");
    need(std::abs(r_b - r_3), 2 * delta, "b and x3 are not at matching distance from x0");
    need(d(x1, x2), eps, "d(x1,x2) exceeds eps");
    need(d(x1, x3), eps, "d(x1,x3) exceeds eps");
    need(d(x2, x3), eps, "d(x2,x3) exceeds eps");
    ThinTriangleResult r;
    r.bound = 3 * eps + 4 * delta;
    r.measured = d(a, b);
    r.holds = r.measured <= r.bound + slack;
    return r;
}

}  // namespace uw
