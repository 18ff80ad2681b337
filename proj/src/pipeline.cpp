#include "uwidth/pipeline.hpp"

#include <cmath>
#include <sstream>

#include "uwidth/cover.hpp"
#include "uwidth/error.hpp"
#include "uwidth/metric.hpp"

namespace uw {

namespace {

struct StripCoord {
    int strip = -1;
    double x = 0, t = 0;
};

std::vector<char> rim_edges(const MetricComplex& c) {
    std::vector<char> out(c.num_edges(), 0);
    for (Id e = 0; e < c.num_edges(); ++e) out[e] = c.is_boundary_edge(e);
    return out;
}

MetricComplex squeeze_all(const MetricComplex& c, const std::vector<StripCoord>& at, const std::vector<int>& edge_strip,
                          double M, double tau) {
    auto d = describe(c);
    double f = tau / M;
    for (Id e = 0; e < c.num_edges(); ++e) {
        if (edge_strip[e] < 0) continue;
        auto& p = at[c.edge(e).a];
        auto& q = at[c.edge(e).b];
        d.edges[e].length = std::hypot(f * (p.x - q.x), p.t - q.t);
    }
    BuildOptions o;
    o.surface = true;
    return build_complex(d, o);
}

RefinedComplex as_mesh(const MetricComplex& c) { return RefinedComplex(c, c.longest_edge(), 1); }

}  // namespace

PipelineResult surface_pipeline(const MetricComplex& s0, const PipelineOptions& opt) {
    if (!(opt.eps > 0 && opt.eps < 1)) throw Error(ErrorCode::BadParam, "eps must lie in (0, 1)");
    if (opt.margin < 0) throw Error(ErrorCode::BadParam, "negative strip margin");
    bool rim = false;
    for (Id e = 0; e < s0.num_edges() && !rim; ++e) rim = s0.is_boundary_edge(e);
    if (!rim) throw Error(ErrorCode::UnsupportedTopology, "closed surface: the cover width is not finite beyond the sphere");
    orient_surface(s0);

    PipelineResult out;
    out.eps = opt.eps;
    const double eps = opt.eps;
    const double step = opt.step > 0 ? opt.step : s0.longest_edge();
    out.cover_step = step;
    SearchOptions so;
    so.budget = opt.budget;
    so.step = step;

    auto r0 = as_mesh(s0);
    SearchResult direct;
    if (opt.direct) {
        direct = search_separator(r0, {PointOnComplex::vertex(0)}, so);
        out.direct_width = direct.best.width;
        out.direct_slack = r0.mesh_slack() + step;
    }

    auto pi = fundamental_group(s0);
    if (pi.group.is_trivial()) {
        out.disk = true;
        if (!opt.direct) direct = search_separator(r0, {PointOnComplex::vertex(0)}, so);
        out.surface = s0;
        out.z = direct.best.z;
        out.D_cover = out.final_width = direct.best.width;
        out.mesh_slack = r0.mesh_slack();
        out.slack = 2 * (out.mesh_slack + step);
        out.bound = out.D_cover + out.slack;
        out.verified = verify_separator(r0, out.z, out.bound).accepted;
        out.collapse_stretch = 1;
        out.notes.push_back("disk: the surface is its own universal cover");
        return out;
    }
    const std::size_t r = std::size_t(pi.betti1);
    out.rank = r;

    std::vector<Id> all(s0.num_vertices());
    for (Id v = 0; v < all.size(); ++v) all[v] = v;
    double trunc = opt.trunc > 0 ? opt.trunc : 3 * vertex_diameter(r0, all).value;
    auto cp = build_cover(s0, universal_cover_spec(pi), trunc, 0);
    Patch P = patch_from_cover(cp);
    out.cover_vertices = P.complex.num_vertices();
    auto rp = as_mesh(P.complex);
    auto sr = search_separator(rp, {PointOnComplex::vertex(P.basepoint)}, so);
    out.D_cover = sr.best.width;
    double mesh_slack = rp.mesh_slack();
    out.eps_prime = std::min(eps, eps * out.D_cover);
    out.M = std::pow(1 + 2 * eps, double(r)) * out.D_cover + opt.margin;

    Subcomplex Z = sr.best.z;
    MetricComplex S = s0;
    std::vector<StripCoord> at(S.num_vertices());
    std::vector<int> estrip(S.num_edges(), -1);
    std::vector<char> cut(P.complex.num_edges(), 0);

    for (std::size_t i = 1; i <= r; ++i) {
        PipelineStage st;
        st.index = i;
        BoundaryArc b;
        try {
            b = shortest_boundary_arc(P, cut);
        } catch (const Error& e) {
            if (e.code() != ErrorCode::ArcsIntersect) throw;
            std::ostringstream m;
            m << "stage " << i << ": arc meets an earlier cut; need M > " << out.M;
            throw Error(ErrorCode::ArcsIntersect, m.str());
        }
        if (b.length >= out.M) {
            std::ostringstream m;
            m << "stage " << i << ": arc length " << b.length << " needs M above it, have " << out.M;
            throw Error(ErrorCode::ArcsIntersect, m.str());
        }
        auto arc = project_arc(P, S, b);
        auto lifts = find_lifts(P, S, arc.path);
        auto orient = orient_surface(S);
        RewireOptions ro;
        ro.eps = eps;
        ro.M = out.M;
        auto rw = rewire_lifts(P, S, orient, Z, lifts, ro);

        auto down = insert_strips(
            S, {arc.path}, rw.strip.columns,
            [&](Id t, std::size_t, std::size_t k) { return runs_along(S, orient, t, arc.path[k], arc.path[k + 1]); },
            rim_edges(S));
        auto proj = strip_projection(P, rw, down);

        std::vector<StripCoord> at2(down.complex.num_vertices());
        for (Id v = 0; v < at2.size(); ++v)
            if (down.origin[v] != kNone) at2[v] = at[down.origin[v]];
        auto& g = down.strips[0];
        for (std::size_t col = 0; col < g.grid.size(); ++col)
            for (std::size_t k = 0; k < g.grid[col].size(); ++k)
                at2[g.grid[col][k]] = {int(i - 1), down.columns[col], g.rows[k]};
        std::vector<int> estrip2(down.complex.num_edges(), -1);
        for (Id e = 0; e < S.num_edges(); ++e)
            if (down.edge_map[e] != kNone) estrip2[down.edge_map[e]] = estrip[e];
        for (Id e : g.edges) estrip2[e] = int(i - 1);

        std::vector<char> cut2(rw.strip.complex.num_edges(), 0);
        for (Id e = 0; e < cut.size(); ++e)
            if (cut[e] && rw.strip.edge_map[e] != kNone) cut2[rw.strip.edge_map[e]] = 1;
        for (Id e : rw.cut_edges) cut2[e] = 1;

        auto rn = as_mesh(rw.strip.complex);
        mesh_slack = std::max(mesh_slack, rn.mesh_slack());
        st.arc_length = arc.length;
        st.arc = arc.path;
        st.M = out.M;
        st.D = rw.D;
        st.rewired_width = measure_separator(rn, rw.z).width;
        st.lifts = rw.lifts.size();
        st.nudged = rw.nudged;
        st.ends = rw.ends.size();
        st.patch_vertices = rw.strip.complex.num_vertices();
        st.surface_vertices = down.complex.num_vertices();
        st.properties_hold = rw.properties_hold;
        st.reach_excess = rw.reach_excess;
        st.notes = rw.notes;
        out.stages.push_back(std::move(st));

        Id base = P.basepoint;
        P = Patch{std::move(rw.strip.complex), std::move(proj), std::move(rw.strip.true_boundary), base};
        Z = std::move(rw.z);
        S = std::move(down.complex);
        at = std::move(at2);
        estrip = std::move(estrip2);
        cut = std::move(cut2);
    }

    // the piece of the patch around the basepoint, cut along every middle column
    auto& c = P.complex;
    std::vector<char> dom(c.num_triangles(), 0);
    std::vector<Id> stack;
    for (Id t : c.vertex_triangles(P.basepoint))
        if (!dom[t]) dom[t] = 1, stack.push_back(t);
    while (!stack.empty()) {
        Id t = stack.back();
        stack.pop_back();
        for (Id e : c.triangle(t).e) {
            if (cut[e]) continue;
            for (Id u : c.edge_triangles(e))
                if (!dom[u]) dom[u] = 1, stack.push_back(u);
        }
    }
    std::vector<char> hit(S.num_triangles(), 0);
    std::size_t count = 0;
    for (Id t = 0; t < c.num_triangles(); ++t) {
        if (!dom[t]) continue;
        auto& v = c.triangle(t).v;
        Id a = P.proj[v[0]], b = P.proj[v[1]], d = P.proj[v[2]];
        Id s = (a == kNone || b == kNone || d == kNone) ? kNone : S.find_triangle(a, b, d);
        if (s == kNone || hit[s])
            throw Error(ErrorCode::TruncationTooSmall, "the cut patch piece is not a fundamental domain; raise --trunc");
        hit[s] = 1;
        ++count;
    }
    if (count != S.num_triangles())
        throw Error(ErrorCode::TruncationTooSmall, "the cut patch piece misses part of the surface; raise --trunc");

    auto zf = Subcomplex::empty(S);
    for (Id e = 0; e < c.num_edges(); ++e) {
        if (!Z.edge[e]) continue;
        bool inside = false;
        for (Id t : c.edge_triangles(e)) inside |= dom[t] != 0;
        if (!inside) continue;
        Id f = S.find_edge(P.proj[c.edge(e).a], P.proj[c.edge(e).b]);
        if (f == kNone) throw Error(ErrorCode::CertificateFailed, "separator edge does not project to an edge");
        zf.edge[f] = 1;
    }
    for (Id v = 0; v < c.num_vertices(); ++v) {
        if (!Z.vertex[v]) continue;
        bool inside = false;
        for (Id t : c.vertex_triangles(v)) inside |= dom[t] != 0;
        if (inside && P.proj[v] != kNone) zf.vertex[P.proj[v]] = 1;
    }
    for (Id e = 0; e < S.num_edges(); ++e) {
        auto& ed = S.edge(e);
        if (estrip[e] >= 0 && at[ed.a].x == 0 && at[ed.b].x == 0) zf.edge[e] = 1;
    }
    zf = zf.closed(S);

    out.tau = opt.tau > 0 ? opt.tau : out.eps_prime;
    out.surface = squeeze_all(S, at, estrip, out.M, out.tau);
    out.z = zf;
    auto rq = as_mesh(out.surface);
    mesh_slack = std::max(mesh_slack, rq.mesh_slack());
    out.mesh_slack = mesh_slack;
    out.slack = 2 * (mesh_slack + step);
    out.bound = std::pow(1 + eps, double(r)) * std::pow(1 + 2 * eps, double(r + 1)) * out.D_cover + out.slack;
    auto v = verify_separator(rq, out.z, out.bound);
    out.final_width = v.separator.width;
    out.verified = v.accepted;

    // the original vertices keep their ids throughout
    std::vector<Id> sample;
    std::size_t stride = std::max<std::size_t>(1, s0.num_vertices() / 12);
    for (Id u = 0; u < s0.num_vertices(); u += Id(stride)) sample.push_back(u);
    out.collapse_stretch = stretch_factor(s0, out.surface, sample);
    return out;
}

}  // namespace uw
