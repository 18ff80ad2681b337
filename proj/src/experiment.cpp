#include "uwidth/experiment.hpp"

#include <random>

#include "uwidth/error.hpp"
#include "uwidth/grid_surface.hpp"
#include "uwidth/metric.hpp"
#include "uwidth/separator.hpp"

namespace uw {

Example1Row example1_row(int R, const Example1Options& opt) {
    if (R < 2) throw Error(ErrorCode::BadParam, "R must be an integer of at least 2");
    if (opt.seeds < 1) throw Error(ErrorCode::BadParam, "need at least one sweep seed");
    Example1Row row;
    row.R = R;

    auto coarse = grid_surface(R, opt.width_grid);
    auto& m = coarse.complex;
    row.M_vertices = m.num_vertices();
    RefinedComplex rc(m, m.longest_edge(), 1);

    // double sweep: a realised distance, so a lower bound on the diameter
    auto d0 = shortest_paths(rc, {{0, 0.0}});
    Id far = Id(std::max_element(d0.begin(), d0.end()) - d0.begin());
    auto d1 = shortest_paths(rc, {{far, 0.0}});
    row.diam = *std::max_element(d1.begin(), d1.end());

    std::mt19937_64 rng(opt.seed);
    std::uniform_int_distribution<Id> pick(0, Id(m.num_vertices() - 1));
    std::vector<PointOnComplex> seeds{PointOnComplex::vertex(far)};
    while (seeds.size() < opt.seeds) seeds.push_back(PointOnComplex::vertex(pick(rng)));
    SearchOptions so;
    so.budget = opt.budget;
    so.step = opt.width_grid;
    so.diameter_tol = opt.diameter_tol;
    auto sr = search_separator(rc, seeds, so);
    row.width_M_best = sr.best.width;
    row.width_slack = rc.mesh_slack() + so.step;
    row.evaluations = sr.evaluations;

    auto fine = grid_surface(R, opt.grid);
    auto cp = build_cover(fine.complex, lattice_cover_spec(fine), opt.trunc, 0);
    row.cover_vertices = cp.complex.num_vertices();
    auto pc = projection_width_certificate(cp, opt.radius);
    row.width_cover_cert = pc.max_fiber;
    row.cover_slack = pc.mesh_slack;
    row.fibers = pc.nodes;
    row.cert_holds = pc.holds;
    return row;
}

}  // namespace uw
