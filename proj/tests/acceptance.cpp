// Acceptance run: one PASS/FAIL line per criterion.  `uwidth_acceptance 3 5` runs a subset.
#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <map>
#include <queue>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include "uwidth/experiment.hpp"
#include "uwidth/extend.hpp"
#include "uwidth/generators.hpp"
#include "uwidth/metric.hpp"
#include "uwidth/pipeline.hpp"
#include "uwidth/rewire.hpp"
#include "uwidth/separator.hpp"
#include "uwidth/sweep.hpp"
#include "uwidth/thin_triangle.hpp"
#include "uwidth/transfer.hpp"
#include "uwidth/tree_fiber.hpp"

using namespace uw;

namespace {

using Clock = std::chrono::steady_clock;

double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    std::vector<std::string> failures;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            if (failures.size() < 5) failures.push_back(what);
        }
    }
};

// ---- 1: transfer constants

void criterion1(Outcome& o) {
    struct Case {
        std::string name;
        MetricComplex c;
        double trunc;
        double factor;
    };
    std::vector<Case> cases;
    cases.push_back({"Z/3", presentation_complex(3), 40, 3});
    for (auto [L, H] : std::vector<std::pair<double, double>>{{3, 2}, {4, 3}, {5, 2}, {6, 4}})
        cases.push_back({"annulus(" + std::to_string(int(L)) + "," + std::to_string(int(H)) + ")", annulus(L, H),
                         4 * (L + H), 6});
    const double h = 0.5;
    double worst_time = 0;
    for (auto& k : cases) {
        auto t0 = Clock::now();
        try {
            auto p = build_cover(k.c, universal_cover_spec(fundamental_group(k.c)), k.trunc, 0, h);
            TransferOptions opt;
            opt.h = h;
            auto t = transfer_certificate(p, opt);
            double step = t.base_sweep.step;
            double secs = since(t0);
            worst_time = std::max(worst_time, secs);
            o.require(t.factor == k.factor, k.name + ": factor " + std::to_string(t.factor));
            o.require(t.slack <= 2 * (h + step) + 1e-12, k.name + ": slack too large");
            o.require(t.base_width <= k.factor * t.D + t.slack, k.name + ": base width above factor * D + slack");
            o.require(t.holds, k.name + ": certificate does not hold");
            o.require(secs < 60, k.name + ": over 60 s");
            o.detail << k.name << " " << t.base_width << "<=" << k.factor << "*" << t.D << "+" << t.slack << "; ";
        } catch (const Error& e) {
            o.require(false, k.name + ": " + e.what());
        }
    }
    o.detail << "slowest " << worst_time << " s";
}

// ---- 2: thin triangles in planar sectors

// Intrinsic metric of a flat sector of opening `theta` with apex at the origin:
// points given in polar form (r, angle in [0, theta]).
struct Sector {
    double theta;
    double operator()(const std::array<double, 2>& p, const std::array<double, 2>& q) const {
        double da = std::abs(p[1] - q[1]);
        if (da >= std::acos(-1.0)) return p[0] + q[0];
        return std::sqrt(std::max(0.0, p[0] * p[0] + q[0] * q[0] - 2 * p[0] * q[0] * std::cos(da)));
    }
};

void criterion2(Outcome& o) {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> U(0, 1);
    const double pi = std::acos(-1.0);
    double worst_ratio = 0;
    int cases = 0;
    for (; cases < 200; ++cases) {
        Sector d{(0.2 + 1.8 * U(rng)) * pi};
        using P = std::array<double, 2>;
        P x0{0, 0};
        double r = 1 + 9 * U(rng);
        double delta = 0.5 * U(rng);
        auto near = [&](double angle) { return P{std::max(0.0, r + delta * (2 * U(rng) - 1)), angle}; };
        double ta = d.theta * U(rng), tb = d.theta * U(rng);
        P a = near(ta), b = near(tb), x3 = near(d.theta * U(rng));
        P x1{a[0] * U(rng), ta}, x2{b[0] * U(rng), tb};
        double eps = std::max({d(x1, x2), d(x1, x3), d(x2, x3)});
        double dl = std::max(std::abs(d(x0, a) - d(x0, x3)), std::abs(d(x0, b) - d(x0, x3))) / 2;
        try {
            auto res = thin_triangle_bound(d, x0, a, b, x1, x2, x3, eps, dl);
            // independent recomputation of the claim
            double measured = d(a, b);
            o.require(measured <= 3 * eps + 4 * dl + 1e-9, "case " + std::to_string(cases) + " violates the bound");
            o.require(res.holds && std::abs(res.measured - measured) < 1e-12, "case " + std::to_string(cases));
            if (eps + dl > 0) worst_ratio = std::max(worst_ratio, measured / (3 * eps + 4 * dl));
        } catch (const Error& e) {
            o.require(false, "case " + std::to_string(cases) + ": " + e.what());
        }
    }
    o.detail << cases << " sectors, worst d(a,b)/(3eps+4delta) " << worst_ratio;
}

// ---- 3: polygon maps to trees

PolygonTreeMap random_polygon_map(std::mt19937_64& rng) {
    PolygonTreeMap m;
    std::size_t nt = 2 + rng() % 40;  // up to 40 edges
    m.tree.num_vertices = nt;
    for (Id v = 1; v < nt; ++v) m.tree.edges.push_back({Id(rng() % v), v});
    std::vector<std::vector<Id>> adj(nt);
    for (auto [a, b] : m.tree.edges) adj[a].push_back(b), adj[b].push_back(a);
    Id start = rng() % nt;
    std::vector<Id> parent(nt, kNone);
    std::queue<Id> q;
    q.push(start);
    parent[start] = start;
    while (!q.empty()) {
        Id v = q.front();
        q.pop();
        for (Id u : adj[v])
            if (parent[u] == kNone) parent[u] = v, q.push(u);
    }
    std::size_t n = 3 + rng() % 10;  // up to 12 sides
    Id cur = start;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<Id> w{cur};
        std::size_t len = rng() % 7;
        for (std::size_t k = 0; k < len; ++k) {
            auto& nb = adj[cur];
            cur = rng() % 4 == 0 ? cur : nb[rng() % nb.size()];
            w.push_back(cur);
        }
        if (i + 1 == n)
            while (cur != start) w.push_back(cur = parent[cur]);
        m.edge_image.push_back(w);
    }
    return m;
}

bool brute_scan(const PolygonTreeMap& m) {
    std::size_t n = m.edge_image.size();
    for (Id v = 0; v < m.tree.num_vertices; ++v)
        for (std::size_t i = 0; i < n; ++i) {
            bool all = true;
            for (std::size_t k = 0; k < 3 && all; ++k) {
                auto& w = m.edge_image[(i + k) % n];
                all = std::find(w.begin(), w.end(), v) != w.end();
            }
            if (all) return true;
        }
    return false;
}

void criterion3(Outcome& o) {
    std::mt19937_64 rng(3);
    int found = 0;
    for (int it = 0; it < 500; ++it) {
        auto m = random_polygon_map(rng);
        std::size_t n = m.edge_image.size();
        std::string tag = "instance " + std::to_string(it);
        o.require(brute_scan(m), tag + ": brute-force scan found no fiber");
        try {
            auto f = polygon_tree_fiber(m);
            bool same = f.point != kNone;
            for (int k = 0; k < 3 && same; ++k)
                same = f.edge[k] < n && f.position[k] < m.edge_image[f.edge[k]].size() &&
                       m.edge_image[f.edge[k]][f.position[k]] == f.point;
            bool consecutive = f.edge[1] == (f.edge[0] + 1) % n && f.edge[2] == (f.edge[1] + 1) % n;
            o.require(same && consecutive, tag + ": witnesses disagree");
            found += same && consecutive;
        } catch (const Error& e) {
            o.require(false, tag + ": " + e.what());
        }
    }
    o.detail << found << "/500 witnessed fibers";
}

// ---- 4: separator and map round trip

void criterion4(Outcome& o) {
    std::vector<std::pair<std::string, MetricComplex>> spaces = {
        {"annulus(4,3)", annulus(4, 3)},        {"flat_torus(4)", flat_torus(4)},
        {"disk(2,1)", disk(2, 1)},              {"triangle", equilateral_triangle(1)},
        {"Z/3", presentation_complex(3)},       {"cycle(6)", cycle_graph(6, 6)},
        {"y_graph", y_graph(3, 1, 1)},          {"pants", pair_of_pants(1, 8, 2)}};
    for (auto& [name, c] : spaces) {
        try {
            RefinedComplex rc(c, 0.5);
            auto q = sweep_quotient(rc, {PointOnComplex::vertex(0)}, {0.5});
            double eps = std::max(2 * rc.mesh_slack(), 0.05);
            auto s = separator_from_map(rc, q, eps);
            auto sm = map_from_separator(rc, s);
            auto back = verify_separator(rc, separator_preimage(rc, sm), s.width);
            bool ok = s.width <= q.width() + eps && verify_separator(rc, s.z, q.width() + eps).accepted &&
                      sm.bound <= q.width() + eps && back.accepted && back.separator.width <= s.width;
            o.require(ok, name + ": round trip loses the bound");
            o.detail << name << " " << q.width() << "->" << s.width << "->" << sm.bound << "; ";
        } catch (const Error& e) {
            o.require(false, name + ": " + e.what());
        }
    }
}

// ---- 5: rewiring randomized separators

void criterion5(Outcome& o) {
    struct Family {
        MetricComplex s;
        double trunc;
        int count;
    };
    std::vector<Family> fams;
    fams.push_back({steiner_refine(annulus(4, 3), 0.5), 10, 20});
    fams.push_back({steiner_refine(annulus(3, 2), 0.5), 8, 10});
    fams.push_back({annulus(6, 3), 14, 8});
    fams.push_back({pair_of_pants(1, 8, 2), 6, 12});
    std::mt19937_64 rng(5);
    int done = 0, ok = 0;
    const double eps = 0.1;
    for (auto& fam : fams) {
        auto orient = orient_surface(fam.s);
        auto cp = build_cover(fam.s, universal_cover_spec(fundamental_group(fam.s)), fam.trunc, 0);
        auto P = patch_from_cover(cp);
        auto arc = project_arc(P, fam.s, shortest_boundary_arc(P, {}));
        auto lifts = find_lifts(P, fam.s, arc.path);
        RefinedComplex rc(P.complex, P.complex.longest_edge(), 1);
        for (int i = 0; i < fam.count; ++i, ++done) {
            std::string tag = "case " + std::to_string(done);
            Id seed = Id(rng() % P.complex.num_vertices());
            double step = std::array<double, 3>{0.5, 1, 1.5}[rng() % 3];
            std::size_t budget = 1 + rng() % 3;
            try {
                auto sr = search_separator(rc, {PointOnComplex::vertex(seed)}, {budget, step});
                RewireOptions ro;
                ro.eps = eps;
                auto r = rewire_lifts(P, fam.s, orient, sr.best.z, lifts, ro);
                bool props = r.properties_hold;
                for (auto& e : r.ends) props = props && e.checks.all();
                RefinedComplex rn(r.strip.complex, r.strip.complex.longest_edge(), 1);
                double slack = rc.mesh_slack() + step;
                bool verified = verify_separator(rn, r.z, (1 + eps) * r.D + 2 * slack).accepted;
                o.require(props, tag + ": rewiring properties fail");
                o.require(verified, tag + ": rewired separator too wide");
                ok += props && verified;
            } catch (const Error& e) {
                o.require(false, tag + ": " + e.what());
            }
        }
    }
    o.detail << ok << "/" << done << " rewired separators verified with all properties";
}

// ---- 6: surface pipeline

void criterion6(Outcome& o) {
    std::vector<std::pair<std::string, MetricComplex>> surfaces;
    for (double L : {3, 4, 6})
        for (double H : {2, 3, 5})
            surfaces.push_back({"annulus(" + std::to_string(int(L)) + "," + std::to_string(int(H)) + ")", annulus(L, H)});
    surfaces.push_back({"pants", pair_of_pants(1, 8, 2)});
    double slowest = 0;
    for (auto& [name, s] : surfaces) {
        auto t0 = Clock::now();
        try {
            PipelineOptions po;
            po.eps = 0.1;
            auto p = surface_pipeline(s, po);
            double secs = since(t0);
            slowest = std::max(slowest, secs);
            double r = double(p.rank);
            double bound = std::pow(1 + po.eps, r) * std::pow(1 + 2 * po.eps, r + 1) * p.D_cover + p.slack;
            o.require(p.verified, name + ": final separator not verified");
            o.require(p.final_width <= bound, name + ": final width above the bound");
            o.require(p.final_width >= p.direct_width - p.slack, name + ": final width below direct search");
            o.require(secs < 180, name + ": over 3 min");
            o.detail << name << " " << p.final_width << "<=" << bound << "; ";
        } catch (const Error& e) {
            o.require(false, name + ": " + e.what());
        }
    }
    o.detail << "slowest " << slowest << " s";
}

// ---- 7: genus-R grid surfaces

void criterion7(Outcome& o) {
    std::map<int, Example1Row> rows;
    for (int R : {2, 4, 8}) {
        auto t0 = Clock::now();
        try {
            auto row = example1_row(R);
            rows[R] = row;
            double secs = since(t0);
            o.require(row.cert_holds, "R=" + std::to_string(R) + ": projection certificate incomplete");
            o.require(row.width_cover_cert <= 3, "R=" + std::to_string(R) + ": cover fibers above 3");
            o.require(row.diam >= R / 2.0, "R=" + std::to_string(R) + ": diameter below R/2");
            o.require(secs < 300, "R=" + std::to_string(R) + ": over 5 min");
            o.detail << "R=" << R << " width " << row.width_M_best << " cover " << row.width_cover_cert << " diam "
                     << row.diam << " (" << secs << " s); ";
        } catch (const Error& e) {
            o.require(false, "R=" + std::to_string(R) + ": " + e.what());
        }
    }
    if (rows.count(4) && rows.count(8)) {
        double ratio = rows[8].width_M_best / rows[4].width_M_best;
        o.require(ratio >= 1.4 && ratio <= 2.6, "width ratio R=8/R=4 is " + std::to_string(ratio));
        o.detail << "ratio " << ratio << " (upper bounds only; the lower bound is not certified)";
    }
}

// ---- 8: extension over 3-simplices

// all-pairs edge-graph distances, the oracle for the extended fibers
std::vector<std::vector<double>> floyd(const MetricComplex& c) {
    std::size_t n = c.num_vertices();
    std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
    for (Id v = 0; v < n; ++v) d[v][v] = 0;
    for (auto& e : c.edges()) d[e.a][e.b] = d[e.b][e.a] = std::min(d[e.a][e.b], e.length);
    for (Id k = 0; k < n; ++k)
        for (Id i = 0; i < n; ++i)
            for (Id j = 0; j < n; ++j) d[i][j] = std::min(d[i][j], d[i][k] + d[k][j]);
    return d;
}

void criterion8(Outcome& o) {
    for (int count : {1, 2, 3, 5, 8})
        for (double step : {1.0, 2.0}) {
            std::string tag = "stack " + std::to_string(count) + " step " + std::to_string(step);
            try {
                auto c = stacked_tetrahedra(count, 1);
                auto sk = two_skeleton(c);
                RefinedComplex rc(sk, sk.longest_edge(), 1);
                auto q = sweep_quotient(rc, {PointOnComplex::vertex(0)}, {step, false});
                GraphMap f;
                f.num_nodes = q.nodes.size();
                f.edges = q.adjacency;
                f.vertex_node.assign(q.assignment.begin(), q.assignment.begin() + long(c.num_vertices()));
                const double k = 1;
                auto r = extend_to_full_complex(c, f, k);
                auto d = floyd(c);
                double diam = 0;
                for (auto& row : d) diam = std::max(diam, *std::max_element(row.begin(), row.end()));
                o.require(r.measured <= r.d + 2 * k * r.dim, tag + ": extended fibers above d + 2k dim");
                o.require(r.measured <= diam, tag + ": fiber wider than the complex");
                o.require(r.holds, tag + ": extension does not hold");
                o.detail << "n=" << count << " " << r.measured << "<=" << r.d << "+" << 2 * k * r.dim << "; ";
            } catch (const Error& e) {
                o.require(false, tag + ": " + e.what());
            }
        }
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::function<void(Outcome&)>> all = {criterion1, criterion2, criterion3, criterion4,
                                                      criterion5, criterion6, criterion7, criterion8};
    std::set<int> pick;
    for (int i = 1; i < argc; ++i) pick.insert(std::atoi(argv[i]));
    bool every = true;
    for (int i = 1; i <= int(all.size()); ++i) {
        if (!pick.empty() && !pick.count(i)) continue;
        Outcome o;
        auto t0 = Clock::now();
        try {
            all[i - 1](o);
        } catch (const std::exception& e) {
            o.require(false, std::string("uncaught: ") + e.what());
        }
        std::cout << "criterion " << i << ": " << (o.pass ? "PASS" : "FAIL") << "  [" << since(t0) << " s] "
                  << o.detail.str() << "\n";
        for (auto& f : o.failures) std::cout << "    " << f << "\n";
        std::cout.flush();
        every = every && o.pass;
    }
    return every ? 0 : 1;
}
