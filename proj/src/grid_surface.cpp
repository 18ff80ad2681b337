#include "uwidth/grid_surface.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <unordered_map>

namespace uw {

namespace {

double frac_dist(double x) { return std::abs(x - std::round(x)); }

double line_dist(Vec3 p, double shift) {
    double x = frac_dist(p.x - shift), y = frac_dist(p.y - shift), z = frac_dist(p.z - shift);
    return std::min({std::hypot(y, z), std::hypot(x, z), std::hypot(x, y)});
}

long long floor_div(long long a, long long b) {
    long long q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

}  // namespace

double distance_to_grid(Vec3 p) { return line_dist(p, 0.0); }
double distance_to_dual_grid(Vec3 p) { return line_dist(p, 0.5); }

Vec3 nearest_grid_point(Vec3 p) {
    double dx = std::hypot(frac_dist(p.y), frac_dist(p.z));
    double dy = std::hypot(frac_dist(p.x), frac_dist(p.z));
    double dz = std::hypot(frac_dist(p.x), frac_dist(p.y));
    if (dx <= dy && dx <= dz) return {p.x, std::round(p.y), std::round(p.z)};
    if (dy <= dz) return {std::round(p.x), p.y, std::round(p.z)};
    return {std::round(p.x), std::round(p.y), p.z};
}

GridSurface grid_surface(int R, double grid) {
    if (R < 1) throw Error(ErrorCode::BadParam, "grid_surface needs a positive integer R");
    double qd = 1.0 / grid;
    long long q = std::llround(qd);
    if (std::abs(qd - q) > 1e-12 || q < 2 || q % 2 != 0)
        throw Error(ErrorCode::BadParam, "grid step must be 1/(2m)");

    GridSurface out;
    out.R = R;
    out.grid = grid;
    out.lattice = {Vec3{double(R), 0, 0}, Vec3{0, double(R), 0}, Vec3{0.5, 0.5, 0.5 + R}};
    // lattice in grid units
    const long long L1 = q * R, Z3 = q * R + q / 2, H = q / 2;
    const std::array<long long, 3> V3{H, H, Z3};
    // generic offset keeps grid points off the level set
    const Vec3 offset{0.1031 * grid, 0.2177 * grid, 0.3119 * grid};

    struct P {
        long long i, j, k;
    };
    auto reduce = [&](P p, std::array<int, 3>& m) {
        long long m3 = floor_div(p.k, Z3);
        p.i -= m3 * V3[0];
        p.j -= m3 * V3[1];
        p.k -= m3 * V3[2];
        long long m1 = floor_div(p.i, L1), m2 = floor_div(p.j, L1);
        p.i -= m1 * L1;
        p.j -= m2 * L1;
        m = {int(m1), int(m2), int(m3)};
        return p;
    };
    auto phys = [&](P p) { return Vec3{p.i * grid + offset.x, p.j * grid + offset.y, p.k * grid + offset.z}; };
    auto f = [&](P p) {
        Vec3 x = phys(p);
        return distance_to_grid(x) - distance_to_dual_grid(x);
    };
    auto lattice_vec = [&](const std::array<int, 3>& m) {
        return double(m[0]) * out.lattice[0] + double(m[1]) * out.lattice[1] + double(m[2]) * out.lattice[2];
    };

    ComplexBuilder b;
    std::unordered_map<long long, Id> vid;  // key of canonical tet edge
    struct Hit {
        Id id;
        Vec3 pos;                // unreduced position in this cube's frame
        std::array<int, 3> sig;  // lattice shift of this occurrence
    };
    std::map<std::pair<Id, Id>, std::array<int, 3>> edge_shift;

    auto key_of = [&](P p, int dir) {
        return ((p.i * L1 + p.j) * Z3 + p.k) * 8 + dir;
    };
    auto hit = [&](P p, P r) {
        int dir = int((r.i - p.i) + 2 * (r.j - p.j) + 4 * (r.k - p.k));
        std::array<int, 3> m;
        P c = reduce(p, m);
        long long key = key_of(c, dir);
        double fp = f(p), fr = f(r);
        double t = std::clamp(fp / (fp - fr), 0.1, 0.9);
        Vec3 pos = phys(p) + t * (phys(r) - phys(p));
        auto it = vid.find(key);
        Id id;
        if (it == vid.end()) {
            id = b.add_vertex();
            vid.emplace(key, id);
            out.position.push_back(pos - lattice_vec(m));
        } else {
            id = it->second;
        }
        return Hit{id, pos, m};
    };

    static const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
    auto step = [](P p, int axis) {
        if (axis == 0) ++p.i;
        else if (axis == 1) ++p.j;
        else ++p.k;
        return p;
    };
    auto add_tri = [&](const Hit& a, const Hit& c, const Hit& d) {
        const Hit* h[3] = {&a, &c, &d};
        for (int x = 0; x < 3; ++x) {
            const Hit& u = *h[x];
            const Hit& v = *h[(x + 1) % 3];
            b.edge(u.id, v.id, norm(v.pos - u.pos));
            auto k = std::minmax(u.id, v.id);
            if (!edge_shift.count({k.first, k.second})) {
                std::array<int, 3> s;
                for (int i = 0; i < 3; ++i) s[i] = v.sig[i] - u.sig[i];
                if (u.id > v.id)
                    for (int& z : s) z = -z;
                edge_shift[{k.first, k.second}] = s;
            }
        }
        b.triangle(a.id, c.id, d.id);
    };

    for (long long i = 0; i < L1; ++i)
        for (long long j = 0; j < L1; ++j)
            for (long long k = 0; k < Z3; ++k)
                for (auto& pm : perms) {
                    P v[4];
                    v[0] = {i, j, k};
                    v[1] = step(v[0], pm[0]);
                    v[2] = step(v[1], pm[1]);
                    v[3] = step(v[2], pm[2]);
                    double fv[4];
                    int pos[4], neg[4], np = 0, nn = 0;
                    for (int x = 0; x < 4; ++x) {
                        fv[x] = f(v[x]);
                        if (fv[x] > 0) pos[np++] = x;
                        else neg[nn++] = x;
                    }
                    if (np == 0 || nn == 0) continue;
                    auto H2 = [&](int a, int c) { return a < c ? hit(v[a], v[c]) : hit(v[c], v[a]); };
                    if (np == 1 || nn == 1) {
                        int apex = np == 1 ? pos[0] : neg[0];
                        int o[3], t = 0;
                        for (int x = 0; x < 4; ++x)
                            if (x != apex) o[t++] = x;
                        add_tri(H2(apex, o[0]), H2(apex, o[1]), H2(apex, o[2]));
                    } else {
                        Hit a = H2(pos[0], neg[0]), c = H2(pos[0], neg[1]), d = H2(pos[1], neg[1]),
                            e = H2(pos[1], neg[0]);
                        add_tri(a, c, d);
                        add_tri(a, d, e);
                    }
                }

    BuildOptions opt;
    opt.surface = true;
    opt.infer_boundary = false;
    out.complex = b.build(opt);
    out.shift.resize(out.complex.num_edges());
    for (Id e = 0; e < out.complex.num_edges(); ++e) {
        auto& ed = out.complex.edge(e);
        auto k = std::minmax(ed.a, ed.b);
        auto s = edge_shift.at({k.first, k.second});
        if (ed.a != k.first)
            for (int& z : s) z = -z;
        out.shift[e] = s;
    }
    return out;
}

}  // namespace uw
