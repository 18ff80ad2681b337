#include "uwidth/generators.hpp"

#include <algorithm>
#include <cmath>

#include "uwidth/grid_surface.hpp"

namespace uw {

namespace {

BuildOptions surface_opts() {
    BuildOptions o;
    o.surface = true;
    return o;
}

int count_cells(double total, double cell, const char* what) {
    if (!(total > 0) || !(cell > 0)) throw Error(ErrorCode::BadParam, std::string(what) + " must be positive");
    double q = total / cell;
    int n = int(std::lround(q));
    if (n < 1 || std::abs(q - n) > 1e-9 * std::max(1.0, q))
        throw Error(ErrorCode::BadParam, std::string(what) + " must be a multiple of the cell size");
    return n;
}

}  // namespace

MetricComplex segment(double length) {
    ComplexBuilder b;
    Id a = b.add_vertex(), c = b.add_vertex();
    b.edge(a, c, length);
    return b.build();
}

MetricComplex cycle_graph(double L, int n) {
    if (n < 3) throw Error(ErrorCode::BadParam, "cycle needs at least 3 edges");
    ComplexBuilder b;
    for (int i = 0; i < n; ++i) b.add_vertex();
    for (int i = 0; i < n; ++i) b.edge(i, (i + 1) % n, L / n);
    return b.build();
}

MetricComplex y_graph(int prongs, int stem, int leg) {
    if (prongs < 1 || stem < 1 || leg < 1) throw Error(ErrorCode::BadParam, "y_graph sizes must be positive");
    ComplexBuilder b;
    Id prev = b.add_vertex();
    for (int i = 0; i < stem; ++i) {
        Id v = b.add_vertex();
        b.edge(prev, v, 1.0);
        prev = v;
    }
    Id hub = prev;
    for (int p = 0; p < prongs; ++p) {
        Id q = hub;
        for (int i = 0; i < leg; ++i) {
            Id v = b.add_vertex();
            b.edge(q, v, 1.0);
            q = v;
        }
    }
    return b.build();
}

MetricComplex equilateral_triangle(double s) {
    ComplexBuilder b;
    for (int i = 0; i < 3; ++i) b.add_vertex();
    b.edge(0, 1, s);
    b.edge(1, 2, s);
    b.edge(2, 0, s);
    b.triangle(0, 1, 2);
    return b.build(surface_opts());
}

MetricComplex flat_torus(int L, double cell) {
    if (L < 3) throw Error(ErrorCode::BadParam, "flat torus needs L >= 3");
    ComplexBuilder b;
    for (int i = 0; i < L * L; ++i) b.add_vertex();
    auto id = [L](int i, int j) { return Id(((j % L + L) % L) * L + ((i % L + L) % L)); };
    double d = cell * std::sqrt(2.0);
    for (int j = 0; j < L; ++j)
        for (int i = 0; i < L; ++i) {
            Id a = id(i, j), bb = id(i + 1, j), c = id(i + 1, j + 1), dd = id(i, j + 1);
            b.edge(a, bb, cell);
            b.edge(a, dd, cell);
            b.edge(a, c, d);
            b.edge(bb, c, cell);
            b.edge(c, dd, cell);
        }
    for (int j = 0; j < L; ++j)
        for (int i = 0; i < L; ++i) {
            b.triangle(id(i, j), id(i + 1, j), id(i + 1, j + 1));
            b.triangle(id(i, j), id(i + 1, j + 1), id(i, j + 1));
        }
    return b.build(surface_opts());
}

MetricComplex annulus(double L, double H, double cell) {
    int nx = count_cells(L, cell, "circumference");
    int ny = count_cells(H, cell, "height");
    if (nx < 3) throw Error(ErrorCode::BadParam, "annulus needs at least 3 cells around");
    ComplexBuilder b;
    for (int i = 0; i < nx * (ny + 1); ++i) b.add_vertex();
    auto id = [nx](int i, int j) { return Id(j * nx + ((i % nx + nx) % nx)); };
    double d = cell * std::sqrt(2.0);
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i < nx; ++i) {
            b.edge(id(i, j), id(i + 1, j), cell);
            if (j < ny) {
                b.edge(id(i, j), id(i, j + 1), cell);
                b.edge(id(i, j), id(i + 1, j + 1), d);
            }
        }
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            b.triangle(id(i, j), id(i + 1, j), id(i + 1, j + 1));
            b.triangle(id(i, j), id(i + 1, j + 1), id(i, j + 1));
        }
    return b.build(surface_opts());
}

MetricComplex disk(double side, double cell) {
    int n = count_cells(side, cell, "side");
    ComplexBuilder b;
    for (int j = 0; j <= n; ++j)
        for (int i = 0; i <= n; ++i) b.add_vertex(Vec3{i * cell, j * cell, 0});
    auto id = [n](int i, int j) { return Id(j * (n + 1) + i); };
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            b.triangle(id(i, j), id(i + 1, j), id(i + 1, j + 1));
            b.triangle(id(i, j), id(i + 1, j + 1), id(i, j + 1));
        }
    return b.build(surface_opts());
}

MetricComplex pair_of_pants(double scale, int N, int k) {
    if (!(scale > 0) || k < 2 || N < 2 * k + 1) throw Error(ErrorCode::BadParam, "pair_of_pants needs k >= 2, N > 2k");
    const double s = 0.25 * scale;
    auto kept = [&](int i, int j) { return i >= 0 && j >= 0 && i + j <= N && i + j >= k && i <= N - k && j <= N - k; };
    auto seam = [&](int i, int j) { return j == 0 || i == 0 || i + j == N; };
    ComplexBuilder b;
    std::vector<Id> ids(2 * (N + 1) * (N + 1), kNone);
    auto slot = [&](int copy, int i, int j) -> Id& { return ids[(copy * (N + 1) + i) * (N + 1) + j]; };
    for (int copy = 0; copy < 2; ++copy)
        for (int i = 0; i <= N; ++i)
            for (int j = 0; j <= N; ++j) {
                if (!kept(i, j)) continue;
                if (copy == 1 && seam(i, j)) slot(1, i, j) = slot(0, i, j);
                else slot(copy, i, j) = b.add_vertex();
            }
    for (int copy = 0; copy < 2; ++copy) {
        auto tri = [&](int i0, int j0, int i1, int j1, int i2, int j2) {
            if (!kept(i0, j0) || !kept(i1, j1) || !kept(i2, j2)) return;
            Id a = slot(copy, i0, j0), c = slot(copy, i1, j1), d = slot(copy, i2, j2);
            b.edge(a, c, s);
            b.edge(c, d, s);
            b.edge(d, a, s);
            // keep both copies consistently oriented as one surface
            if (copy == 0) b.triangle(a, c, d);
            else b.triangle(a, d, c);
        };
        for (int i = 0; i < N; ++i)
            for (int j = 0; i + j < N; ++j) {
                tri(i, j, i + 1, j, i, j + 1);
                if (i + j + 2 <= N) tri(i + 1, j, i + 1, j + 1, i, j + 1);
            }
    }
    return b.build(surface_opts());
}

MetricComplex presentation_complex(int n, int m, double edge) {
    if (n < 1 || m < 3 || !(edge > 0)) throw Error(ErrorCode::BadParam, "presentation complex needs n >= 1, m >= 3");
    const int N = n * m;
    const double pi = std::acos(-1.0);
    const double Rd = edge / (2 * std::sin(pi / N));
    ComplexBuilder b;
    std::vector<Id> circle(m), ring(N);
    std::vector<Vec3> p(N), q(N);
    for (int i = 0; i < m; ++i) circle[i] = b.add_vertex();
    Id o = b.add_vertex();
    for (int k = 0; k < N; ++k) {
        ring[k] = b.add_vertex();
        double t = 2 * pi * k / N, u = 2 * pi * (k + 0.5) / N;
        p[k] = {Rd * std::cos(t), Rd * std::sin(t), 0};
        q[k] = {0.5 * Rd * std::cos(u), 0.5 * Rd * std::sin(u), 0};
    }
    for (int i = 0; i < m; ++i) b.edge(circle[i], circle[(i + 1) % m], edge);
    for (int k = 0; k < N; ++k) {
        int k1 = (k + 1) % N;
        Id pk = circle[k % m], pk1 = circle[k1 % m];
        b.edge(o, ring[k], norm(q[k]));
        b.edge(ring[k], ring[k1], norm(q[k1] - q[k]));
        b.edge(ring[k], pk, norm(p[k] - q[k]));
        b.edge(ring[k], pk1, norm(p[k1] - q[k]));
    }
    for (int k = 0; k < N; ++k) {
        int k1 = (k + 1) % N;
        Id pk = circle[k % m], pk1 = circle[k1 % m];
        b.triangle(ring[k], pk, pk1);
        b.triangle(ring[k], pk1, ring[k1]);
        b.triangle(o, ring[k], ring[k1]);
    }
    return b.build();
}

MetricComplex stacked_tetrahedra(int count, double side) {
    if (count < 1) throw Error(ErrorCode::BadParam, "stacked_tetrahedra needs at least one cell");
    if (!(side > 0)) throw Error(ErrorCode::NonPositiveLength, "side must be positive");
    const double s = side;
    std::vector<Vec3> p{{0, 0, 0}, {s, 0, 0}, {s / 2, s * std::sqrt(3.0) / 2, 0}};
    Vec3 g = (1.0 / 3) * (p[0] + p[1] + p[2]);
    p.push_back(g + Vec3{0, 0, s * std::sqrt(2.0 / 3.0)});
    // cell i spans vertices i..i+3; the next apex is the mirror image of vertex i in the shared face
    for (int i = 1; i < count; ++i) {
        Vec3 c = (1.0 / 3) * (p[i] + p[i + 1] + p[i + 2]);
        p.push_back(2.0 * c - p[i - 1]);
    }
    ComplexBuilder b;
    for (auto& v : p) b.add_vertex(v);
    b.triangle(0, 1, 2);
    for (int i = 0; i < count; ++i) {
        Id a = i, bb = i + 1, c = i + 2, d = i + 3;
        b.triangle(a, bb, d);
        b.triangle(a, c, d);
        b.triangle(bb, c, d);
        b.tet(a, bb, c, d);
    }
    return b.build();
}

namespace {

double need(const Params& p, const std::string& k) {
    auto it = p.find(k);
    if (it == p.end()) throw Error(ErrorCode::BadParam, "missing parameter " + k);
    return it->second;
}

double opt(const Params& p, const std::string& k, double d) {
    auto it = p.find(k);
    return it == p.end() ? d : it->second;
}

int as_int(double x, const std::string& name) {
    if (std::abs(x - std::round(x)) > 1e-12) throw Error(ErrorCode::BadParam, name + " must be an integer");
    return int(std::lround(x));
}

}  // namespace

MetricComplex generate_example(const std::string& kind_in, const Params& p) {
    std::string kind = kind_in;
    std::replace(kind.begin(), kind.end(), '-', '_');
    if (kind == "grid_surface") {
        double R = need(p, "R");
        if (!(R > 0) || std::abs(R - std::round(R)) > 1e-12)
            throw Error(ErrorCode::BadParam, "grid_surface needs a positive integer R");
        return grid_surface(int(std::lround(R)), opt(p, "grid", 0.25)).complex;
    }
    if (kind == "flat_torus") return flat_torus(as_int(need(p, "L"), "L"), opt(p, "cell", 1));
    if (kind == "annulus" || kind == "cylinder") return annulus(need(p, "L"), need(p, "H"), opt(p, "cell", 1));
    if (kind == "disk") return disk(opt(p, "side", 1), opt(p, "cell", 1));
    if (kind == "pair_of_pants")
        return pair_of_pants(opt(p, "scale", 1), as_int(opt(p, "N", 12), "N"), as_int(opt(p, "k", 2), "k"));
    if (kind == "presentation_complex")
        return presentation_complex(as_int(need(p, "n"), "n"), as_int(opt(p, "m", 4), "m"), opt(p, "edge", 1));
    if (kind == "cycle") return cycle_graph(need(p, "L"), as_int(opt(p, "n", 8), "n"));
    if (kind == "y_graph")
        return y_graph(as_int(opt(p, "prongs", 3), "prongs"), as_int(opt(p, "stem", 1), "stem"), as_int(opt(p, "leg", 1), "leg"));
    if (kind == "triangle") return equilateral_triangle(opt(p, "side", 1));
    if (kind == "stacked_tetrahedra") return stacked_tetrahedra(as_int(opt(p, "count", 2), "count"), opt(p, "side", 1));
    throw Error(ErrorCode::BadParam, "unknown generator " + kind_in);
}

}  // namespace uw
