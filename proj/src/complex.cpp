#include "uwidth/complex.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

namespace uw {

const char* error_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::NonPositiveLength: return "NonPositiveLength";
        case ErrorCode::TriangleInequalityViolated: return "TriangleInequalityViolated";
        case ErrorCode::Disconnected1Skeleton: return "Disconnected1Skeleton";
        case ErrorCode::SourceNotOnComplex: return "SourceNotOnComplex";
        case ErrorCode::EmptySubset: return "EmptySubset";
        case ErrorCode::TruncationTooSmall: return "TruncationTooSmall";
        case ErrorCode::NonNormalSubgroup: return "NonNormalSubgroup";
        case ErrorCode::LiftLeavesTruncation: return "LiftLeavesTruncation";
        case ErrorCode::BadParam: return "BadParam";
        case ErrorCode::NotGridSurface: return "NotGridSurface";
        case ErrorCode::InvalidPolygon: return "InvalidPolygon";
        case ErrorCode::PreconditionUnmet: return "PreconditionUnmet";
        case ErrorCode::NotVirtuallyCyclic: return "NotVirtuallyCyclic";
        case ErrorCode::SimplexTooLarge: return "SimplexTooLarge";
        case ErrorCode::FiberBoundViolated: return "FiberBoundViolated";
        case ErrorCode::IsDisk: return "IsDisk";
        case ErrorCode::ArcNotSimple: return "ArcNotSimple";
        case ErrorCode::InfiniteIntersection: return "InfiniteIntersection";
        case ErrorCode::CaseDetectionAmbiguous: return "CaseDetectionAmbiguous";
        case ErrorCode::ArcsIntersect: return "ArcsIntersect";
        case ErrorCode::UnsupportedTopology: return "UnsupportedTopology";
        case ErrorCode::CertificateFailed: return "CertificateFailed";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::ResourceLimit: return "ResourceLimit";
    }
    return "Error";
}

double norm(Vec3 a) { return std::sqrt(a.x * a.x + a.y * a.y + a.z * a.z); }

namespace {

std::uint64_t pair_key(Id a, Id b) {
    if (a > b) std::swap(a, b);
    return (std::uint64_t(a) << 32) | b;
}

template <class Map>
Id lookup(const Map& m, long long id, const char* what) {
    auto it = m.find(id);
    if (it == m.end()) throw Error(ErrorCode::ParseError, std::string("unknown ") + what + " " + std::to_string(id));
    return it->second;
}

void csr(std::size_t n, const std::vector<std::pair<Id, Id>>& pairs, std::vector<Id>& data, std::vector<Id>& off) {
    off.assign(n + 1, 0);
    for (auto& p : pairs) ++off[p.first + 1];
    for (std::size_t i = 0; i < n; ++i) off[i + 1] += off[i];
    data.assign(pairs.size(), 0);
    std::vector<Id> fill(off.begin(), off.end() - 1);
    for (auto& p : pairs) data[fill[p.first]++] = p.second;
}

}  // namespace

int MetricComplex::dim() const {
    if (!tets_.empty()) return 3;
    if (!triangles_.empty()) return 2;
    return 1;
}

Id MetricComplex::find_edge(Id a, Id b) const {
    auto it = edge_lookup_.find(pair_key(a, b));
    return it == edge_lookup_.end() ? kNone : it->second;
}

Id MetricComplex::find_triangle(Id a, Id b, Id c) const {
    std::array<Id, 3> want{a, b, c};
    std::sort(want.begin(), want.end());
    for (Id t : vertex_triangles(a)) {
        auto v = triangles_[t].v;
        std::sort(v.begin(), v.end());
        if (v == want) return t;
    }
    return kNone;
}

bool MetricComplex::has_boundary() const {
    return std::any_of(boundary_edge_.begin(), boundary_edge_.end(), [](char c) { return c != 0; });
}

double MetricComplex::shortest_edge() const {
    double m = std::numeric_limits<double>::infinity();
    for (auto& e : edges_) m = std::min(m, e.length);
    return m;
}

double MetricComplex::longest_edge() const {
    double m = 0;
    for (auto& e : edges_) m = std::max(m, e.length);
    return m;
}

long long MetricComplex::euler_characteristic() const {
    return (long long)num_vertices_ - (long long)edges_.size() + (long long)triangles_.size() -
           (long long)tets_.size();
}

void MetricComplex::index() {
    std::vector<std::pair<Id, Id>> ve, et, vt;
    edge_lookup_.clear();
    for (Id e = 0; e < edges_.size(); ++e) {
        ve.push_back({edges_[e].a, e});
        ve.push_back({edges_[e].b, e});
        edge_lookup_.emplace(pair_key(edges_[e].a, edges_[e].b), e);
    }
    for (Id t = 0; t < triangles_.size(); ++t) {
        for (Id e : triangles_[t].e) et.push_back({e, t});
        for (Id v : triangles_[t].v) vt.push_back({v, t});
    }
    csr(num_vertices_, ve, vert_edges_, vert_edge_off_);
    csr(edges_.size(), et, edge_tris_, edge_tri_off_);
    csr(num_vertices_, vt, vert_tris_, vert_tri_off_);
}

MetricComplex build_complex(const ComplexDescription& spec, const BuildOptions& opt) {
    MetricComplex c;
    c.surface_ = opt.surface;

    auto verts = spec.vertices;
    std::sort(verts.begin(), verts.end(), [](auto& a, auto& b) { return a.id < b.id; });
    std::unordered_map<long long, Id> vmap;
    bool all_pos = !verts.empty();
    for (auto& v : verts) {
        if (!vmap.emplace(v.id, Id(vmap.size())).second)
            throw Error(ErrorCode::ParseError, "duplicate vertex " + std::to_string(v.id));
        c.vertex_labels_.push_back(v.id);
        all_pos = all_pos && v.pos.has_value();
    }
    c.num_vertices_ = verts.size();
    if (all_pos)
        for (auto& v : verts) c.coords_.push_back(*v.pos);

    auto edges = spec.edges;
    std::sort(edges.begin(), edges.end(), [](auto& a, auto& b) { return a.id < b.id; });
    std::unordered_map<long long, Id> emap;
    for (auto& e : edges) {
        Edge out;
        out.a = lookup(vmap, e.a, "vertex");
        out.b = lookup(vmap, e.b, "vertex");
        if (out.a == out.b) throw Error(ErrorCode::BadParam, "edge " + std::to_string(e.id) + " is a loop");
        if (e.length) {
            out.length = *e.length;
        } else if (all_pos) {
            out.length = norm(c.coords_[out.b] - c.coords_[out.a]);
        } else {
            throw Error(ErrorCode::ParseError, "edge " + std::to_string(e.id) + " has no length and no coordinates");
        }
        if (!(out.length > 0))
            throw Error(ErrorCode::NonPositiveLength, "edge " + std::to_string(e.id));
        if (!emap.emplace(e.id, Id(c.edges_.size())).second)
            throw Error(ErrorCode::ParseError, "duplicate edge " + std::to_string(e.id));
        c.edges_.push_back(out);
    }

    auto tris = spec.triangles;
    std::sort(tris.begin(), tris.end(), [](auto& a, auto& b) { return a.id < b.id; });
    for (auto& t : tris) {
        std::array<Id, 3> ids;
        for (int i = 0; i < 3; ++i) ids[i] = lookup(emap, t.e[i], "edge");
        const Edge& e0 = c.edges_[ids[0]];
        Id v0 = e0.a, v1 = e0.b, v2 = kNone;
        // find the edge at v1 and the edge at v0 among the remaining two
        Id e1 = kNone, e2 = kNone;
        for (int i = 1; i < 3; ++i) {
            const Edge& e = c.edges_[ids[i]];
            if ((e.a == v1 || e.b == v1) && e1 == kNone && !(e.a == v0 || e.b == v0)) {
                e1 = ids[i];
                v2 = e.other(v1);
            }
        }
        for (int i = 1; i < 3; ++i)
            if (ids[i] != e1) e2 = ids[i];
        bool ok = e1 != kNone && e2 != kNone && v2 != v0 && v2 != v1;
        if (ok) {
            const Edge& e = c.edges_[e2];
            ok = (e.a == v2 && e.b == v0) || (e.a == v0 && e.b == v2);
        }
        if (!ok) throw Error(ErrorCode::ParseError, "triangle " + std::to_string(t.id) + " edges do not close up");
        Triangle tr;
        tr.v = {v0, v1, v2};
        tr.e = {ids[0], e1, e2};
        double l[3] = {c.edges_[tr.e[0]].length, c.edges_[tr.e[1]].length, c.edges_[tr.e[2]].length};
        for (int i = 0; i < 3; ++i) {
            double rest = l[(i + 1) % 3] + l[(i + 2) % 3];
            double tol = opt.tolerance * rest;
            bool bad = opt.allow_degenerate ? (l[i] > rest + tol) : (l[i] >= rest - tol);
            if (bad)
                throw Error(ErrorCode::TriangleInequalityViolated, "triangle " + std::to_string(t.id));
        }
        c.triangles_.push_back(tr);
    }

    c.index();

    auto tets = spec.tets;
    std::sort(tets.begin(), tets.end(), [](auto& a, auto& b) { return a.id < b.id; });
    for (auto& t : tets) {
        std::array<Id, 4> v;
        for (int i = 0; i < 4; ++i) v[i] = lookup(vmap, t.v[i], "vertex");
        for (int skip = 0; skip < 4; ++skip) {
            Id f[3];
            int k = 0;
            for (int i = 0; i < 4; ++i)
                if (i != skip) f[k++] = v[i];
            if (c.find_triangle(f[0], f[1], f[2]) == kNone)
                throw Error(ErrorCode::ParseError, "tet " + std::to_string(t.id) + " has a missing face");
        }
        c.tets_.push_back(v);
    }

    c.boundary_edge_.assign(c.edges_.size(), 0);
    c.boundary_vertex_.assign(c.num_vertices_, 0);
    for (long long b : spec.boundary) c.boundary_edge_[lookup(emap, b, "edge")] = 1;
    if (spec.boundary.empty() && opt.surface && opt.infer_boundary)
        for (Id e = 0; e < c.edges_.size(); ++e)
            if (c.edge_triangles(e).size() == 1) c.boundary_edge_[e] = 1;
    for (Id e = 0; e < c.edges_.size(); ++e) {
        auto nt = c.edge_triangles(e).size();
        if (c.boundary_edge_[e]) {
            if (nt > 1) throw Error(ErrorCode::BadParam, "boundary edge " + std::to_string(edges[e].id) + " has " + std::to_string(nt) + " triangles");
            c.boundary_vertex_[c.edges_[e].a] = c.boundary_vertex_[c.edges_[e].b] = 1;
        } else if (opt.surface && nt > 2) {
            throw Error(ErrorCode::BadParam, "edge " + std::to_string(edges[e].id) + " has more than two triangles");
        }
    }

    if (c.num_vertices_ > 0) {
        std::vector<char> seen(c.num_vertices_, 0);
        std::vector<Id> stack{0};
        seen[0] = 1;
        while (!stack.empty()) {
            Id v = stack.back();
            stack.pop_back();
            for (Id e : c.incident_edges(v)) {
                Id w = c.edges_[e].other(v);
                if (!seen[w]) {
                    seen[w] = 1;
                    stack.push_back(w);
                }
            }
        }
        for (Id v = 0; v < c.num_vertices_; ++v)
            if (!seen[v])
                throw Error(ErrorCode::Disconnected1Skeleton, "vertex " + std::to_string(c.vertex_labels_[v]) + " unreachable");
    }
    return c;
}

ComplexDescription describe(const MetricComplex& c) {
    ComplexDescription d;
    for (Id v = 0; v < c.num_vertices(); ++v) {
        ComplexDescription::V x{v, std::nullopt};
        if (c.has_coordinates()) x.pos = c.coord(v);
        d.vertices.push_back(x);
    }
    for (Id e = 0; e < c.num_edges(); ++e) {
        d.edges.push_back({e, c.edge(e).a, c.edge(e).b, c.edge(e).length});
        if (c.is_boundary_edge(e)) d.boundary.push_back(e);
    }
    for (Id t = 0; t < c.num_triangles(); ++t) {
        auto& tr = c.triangle(t);
        d.triangles.push_back({t, {tr.e[0], tr.e[1], tr.e[2]}});
    }
    for (Id t = 0; t < c.num_tets(); ++t) {
        auto& v = c.tet(t);
        d.tets.push_back({t, {v[0], v[1], v[2], v[3]}});
    }
    return d;
}

ComplexDescription parse_complex(std::istream& in) {
    ComplexDescription d;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        std::istringstream ss(line);
        ss.imbue(std::locale::classic());
        std::string tag;
        if (!(ss >> tag)) continue;
        auto fail = [&] { throw Error(ErrorCode::ParseError, "line " + std::to_string(lineno) + ": " + line); };
        if (tag == "v") {
            ComplexDescription::V v{};
            if (!(ss >> v.id)) fail();
            double x, y, z;
            if (ss >> x) {
                if (!(ss >> y >> z)) fail();
                v.pos = Vec3{x, y, z};
            }
            d.vertices.push_back(v);
        } else if (tag == "e") {
            ComplexDescription::E e{};
            if (!(ss >> e.id >> e.a >> e.b)) fail();
            double len;
            if (ss >> len) e.length = len;
            d.edges.push_back(e);
        } else if (tag == "t") {
            ComplexDescription::T t{};
            if (!(ss >> t.id >> t.e[0] >> t.e[1] >> t.e[2])) fail();
            d.triangles.push_back(t);
        } else if (tag == "k") {
            ComplexDescription::Tet t{};
            if (!(ss >> t.id >> t.v[0] >> t.v[1] >> t.v[2] >> t.v[3])) fail();
            d.tets.push_back(t);
        } else if (tag == "b") {
            long long e;
            if (!(ss >> e)) fail();
            d.boundary.push_back(e);
        } else if (tag == "sheet" || tag == "z") {
            continue;  // cover and separator annotations
        } else {
            fail();
        }
    }
    return d;
}

void write_complex(std::ostream& out, const MetricComplex& c) {
    out << std::setprecision(17);
    for (Id v = 0; v < c.num_vertices(); ++v) {
        out << "v " << v;
        if (c.has_coordinates()) out << ' ' << c.coord(v).x << ' ' << c.coord(v).y << ' ' << c.coord(v).z;
        out << '\n';
    }
    for (Id e = 0; e < c.num_edges(); ++e)
        out << "e " << e << ' ' << c.edge(e).a << ' ' << c.edge(e).b << ' ' << c.edge(e).length << '\n';
    for (Id t = 0; t < c.num_triangles(); ++t) {
        auto& tr = c.triangle(t);
        out << "t " << t << ' ' << tr.e[0] << ' ' << tr.e[1] << ' ' << tr.e[2] << '\n';
    }
    for (Id t = 0; t < c.num_tets(); ++t) {
        auto& v = c.tet(t);
        out << "k " << t << ' ' << v[0] << ' ' << v[1] << ' ' << v[2] << ' ' << v[3] << '\n';
    }
    for (Id e = 0; e < c.num_edges(); ++e)
        if (c.is_boundary_edge(e)) out << "b " << e << '\n';
}

MetricComplex load_complex(const std::string& path, const BuildOptions& opt) {
    std::ifstream in(path);
    if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path);
    return build_complex(parse_complex(in), opt);
}

void save_complex(const std::string& path, const MetricComplex& c) {
    std::ofstream out(path);
    if (!out) throw Error(ErrorCode::ParseError, "cannot write " + path);
    write_complex(out, c);
}

Id ComplexBuilder::add_vertex() {
    pos_.push_back(std::nullopt);
    return Id(nv_++);
}

Id ComplexBuilder::add_vertex(Vec3 p) {
    pos_.push_back(p);
    return Id(nv_++);
}

Id ComplexBuilder::edge(Id a, Id b, double length) {
    auto key = pair_key(a, b);
    auto it = lookup_.find(key);
    if (it != lookup_.end()) return it->second;
    Id id = Id(edges_.size());
    edges_.push_back({a, b, length});
    lookup_.emplace(key, id);
    return id;
}

Id ComplexBuilder::edge(Id a, Id b) {
    auto it = lookup_.find(pair_key(a, b));
    if (it != lookup_.end()) return it->second;
    if (!pos_[a] || !pos_[b]) throw Error(ErrorCode::BadParam, "edge without length between uncoordinated vertices");
    return edge(a, b, norm(*pos_[b] - *pos_[a]));
}

Id ComplexBuilder::triangle(Id a, Id b, Id c) {
    edge(a, b);
    edge(b, c);
    edge(c, a);
    tris_.push_back({a, b, c});
    return Id(tris_.size() - 1);
}

void ComplexBuilder::tet(Id a, Id b, Id c, Id d) { tets_.push_back({a, b, c, d}); }

ComplexDescription ComplexBuilder::description() const {
    ComplexDescription d;
    bool all = std::all_of(pos_.begin(), pos_.end(), [](auto& p) { return p.has_value(); });
    for (Id v = 0; v < nv_; ++v) d.vertices.push_back({v, all ? pos_[v] : std::nullopt});
    for (Id e = 0; e < edges_.size(); ++e) d.edges.push_back({e, edges_[e].a, edges_[e].b, edges_[e].length});
    for (Id t = 0; t < tris_.size(); ++t) {
        auto& v = tris_[t];
        d.triangles.push_back({t,
                               {lookup_.at(pair_key(v[0], v[1])), lookup_.at(pair_key(v[1], v[2])),
                                lookup_.at(pair_key(v[2], v[0]))}});
    }
    for (Id t = 0; t < tets_.size(); ++t)
        d.tets.push_back({t, {tets_[t][0], tets_[t][1], tets_[t][2], tets_[t][3]}});
    for (Id e : boundary_) d.boundary.push_back(e);
    return d;
}

MetricComplex ComplexBuilder::build(const BuildOptions& opt) const { return build_complex(description(), opt); }

}  // namespace uw
