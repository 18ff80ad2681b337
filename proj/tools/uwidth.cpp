// Command-line front end: generate complexes, estimate and certify widths.
#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include "uwidth/cover.hpp"
#include "uwidth/error.hpp"
#include "uwidth/experiment.hpp"
#include "uwidth/generators.hpp"
#include "uwidth/metric.hpp"
#include "uwidth/pipeline.hpp"
#include "uwidth/report.hpp"
#include "uwidth/sweep.hpp"
#include "uwidth/transfer.hpp"

using namespace uw;
using nlohmann::json;

namespace {

struct Globals {
    double h = 0, step = 0, eps = 0.1, trunc = 0;
    std::uint64_t seed = 0;
    std::string out;
    bool timing = false;
};

int exit_code(ErrorCode c) {
    switch (c) {
        case ErrorCode::ResourceLimit:
        case ErrorCode::TruncationTooSmall:
        case ErrorCode::LiftLeavesTruncation:
            return 3;
        case ErrorCode::NonPositiveLength:
        case ErrorCode::TriangleInequalityViolated:
        case ErrorCode::Disconnected1Skeleton:
        case ErrorCode::SourceNotOnComplex:
        case ErrorCode::EmptySubset:
        case ErrorCode::BadParam:
        case ErrorCode::NotGridSurface:
        case ErrorCode::InvalidPolygon:
        case ErrorCode::UnsupportedTopology:
        case ErrorCode::IsDisk:
        case ErrorCode::ParseError:
        case ErrorCode::SimplexTooLarge:
            return 2;
        default:
            return 1;
    }
}

void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream f(path);
    if (!f) throw Error(ErrorCode::BadParam, "cannot write " + path);
    f << text;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<Id> every_vertex(const MetricComplex& c) {
    std::vector<Id> v(c.num_vertices());
    for (Id i = 0; i < v.size(); ++i) v[i] = i;
    return v;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Width estimates and certificates for metric simplicial complexes"};
    app.set_help_flag("--help", "print this help and exit");
    app.require_subcommand(1);
    app.fallthrough();
    Globals g;
    app.add_option("--h", g.h, "refinement edge length (0: automatic)")->check(CLI::NonNegativeNumber);
    app.add_option("--step", g.step, "level spacing (0: automatic)")->check(CLI::NonNegativeNumber);
    app.add_option("--eps", g.eps, "rewiring tolerance");
    app.add_option("--seed", g.seed, "random seed");
    app.add_option("--trunc", g.trunc, "cover truncation radius (0: automatic)")->check(CLI::NonNegativeNumber);
    app.add_option("--out", g.out, "output file or directory");
    app.add_flag("--time", g.timing, "include wall time in reports");

    auto* gen = app.add_subcommand("generate", "write an example complex");
    std::string kind;
    gen->add_option("kind", kind, "example kind")->required();
    std::map<std::string, double> gp;
    for (const char* k : {"L", "H", "R", "n", "m", "cell", "side", "scale", "N", "k", "count", "grid", "edge", "prongs", "stem", "leg"})
        gen->add_option(std::string("--") + k, gp[k]);

    auto* wid = app.add_subcommand("width", "estimate the width of a complex");
    std::string file, method = "sweep";
    std::size_t budget = 8;
    wid->add_option("file", file)->required();
    wid->add_option("--method", method, "sweep | separator-search | surface");
    wid->add_option("--budget", budget, "separator search moves");

    auto* cov = app.add_subcommand("cover", "build the truncated universal cover");
    cov->add_option("file", file)->required();
    std::string sheets;
    cov->add_option("--sheets", sheets, "write the sheet table here");

    auto* tra = app.add_subcommand("transfer", "width bound of the universal cover from the base");
    tra->add_option("file", file)->required();

    auto* sur = app.add_subcommand("surface", "separator of a surface with boundary from its cover");
    sur->add_option("file", file)->required();
    sur->add_option("--budget", budget, "separator search moves");

    auto* exp = app.add_subcommand("experiment", "run a named experiment");
    std::string name;
    std::vector<int> Rs{2, 4, 8};
    exp->add_option("name", name)->required()->check(CLI::IsMember({"example1"}));
    exp->add_option("--R", Rs, "genus parameters")->delimiter(',');

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    auto t0 = std::chrono::steady_clock::now();
    try {
        if (*gen) {
            Params p;
            for (auto& [k, v] : gp)
                if (gen->count("--" + k)) p[k] = v;
            auto c = generate_example(kind, p);
            std::ostringstream os;
            write_complex(os, c);
            emit(os.str(), g.out);
            return 0;
        }
        if (*exp) {
            Example1Options o;
            o.seed = g.seed;
            if (g.trunc > 0) o.trunc = g.trunc;
            std::vector<Example1Row> rows;
            for (int R : Rs) {
                rows.push_back(example1_row(R, o));
                std::cerr << "R=" << R << " width " << rows.back().width_M_best << " cover cert "
                          << rows.back().width_cover_cert << "\n";
            }
            if (g.out.empty()) {
                std::cout << example1_csv(rows);
            } else {
                std::filesystem::create_directories(g.out);
                emit(example1_csv(rows), g.out + "/example1.csv");
                emit(dump(example1_json(rows, o)), g.out + "/example1.json");
            }
            return 0;
        }

        auto c = load_complex(file);
        if (*wid) {
            WidthReport r;
            if (method == "sweep") {
                RefinedComplex rc(c, g.h > 0 ? g.h : default_h(c));
                SweepOptions so;
                so.step = g.step;
                r = sweep_report(file, sweep_quotient(rc, {PointOnComplex::vertex(0)}, so), rc.h());
            } else if (method == "separator-search") {
                RefinedComplex rc(c, g.h > 0 ? g.h : default_h(c));
                SearchOptions so;
                so.budget = budget;
                so.step = g.step;
                r = search_report(file, rc, search_separator(rc, {PointOnComplex::vertex(0)}, so));
            } else if (method == "surface") {
                PipelineOptions po;
                po.eps = g.eps;
                po.trunc = g.trunc;
                po.step = g.step;
                po.budget = budget;
                r = pipeline_report(file, surface_pipeline(c, po));
            } else {
                std::cerr << "unknown method '" << method << "'\n";
                return 2;
            }
            r.wall_seconds = seconds_since(t0);
            emit(dump(to_json(r, g.timing)), g.out);
            return 0;
        }
        if (*cov) {
            RefinedComplex rc(c, c.longest_edge(), 1);
            double trunc = g.trunc > 0 ? g.trunc : 3 * vertex_diameter(rc, every_vertex(c)).value;
            auto p = build_cover(c, universal_cover_spec(fundamental_group(c)), trunc, 0, g.h);
            if (!g.out.empty()) save_complex(g.out, p.complex);
            if (!sheets.empty()) emit(p.sheet_table(), sheets);
            json j = {{"space", file},
                      {"truncation", trunc},
                      {"vertices", p.complex.num_vertices()},
                      {"triangles", p.complex.num_triangles()},
                      {"sheets", p.sheets},
                      {"complete_radius", p.complete_radius},
                      {"isometry_radius", p.isometry_radius},
                      {"systole", p.systole}};
            if (g.timing) j["wall_seconds"] = seconds_since(t0);
            std::cout << dump(j);
            return 0;
        }
        if (*tra) {
            RefinedComplex rc(c, c.longest_edge(), 1);
            double trunc = g.trunc > 0 ? g.trunc : 4 * vertex_diameter(rc, every_vertex(c)).value;
            double h = g.h > 0 ? g.h : default_h(c);
            auto p = build_cover(c, universal_cover_spec(fundamental_group(c)), trunc, 0, h);
            TransferOptions o;
            o.h = h;
            o.step = g.step;
            auto t = transfer_certificate(p, o);
            auto r = transfer_report(file, t, h, trunc);
            r.wall_seconds = seconds_since(t0);
            emit(dump(to_json(r, g.timing)), g.out);
            return t.holds ? 0 : 1;
        }
        if (*sur) {
            PipelineOptions po;
            po.eps = g.eps;
            po.trunc = g.trunc;
            po.step = g.step;
            po.budget = budget;
            auto p = surface_pipeline(c, po);
            auto r = pipeline_report(file, p);
            r.wall_seconds = seconds_since(t0);
            emit(dump(to_json(r, g.timing)), g.out);
            return p.verified ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code(e.code());
    } catch (const std::bad_alloc&) {
        std::cerr << "error: out of memory\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
