#include <doctest.h>

#include <sstream>

#include "uwidth/experiment.hpp"
#include "uwidth/generators.hpp"
#include "uwidth/report.hpp"
#include "uwidth/sweep.hpp"

using namespace uw;

TEST_CASE("sweep report repeats byte for byte and carries no wall time") {
    auto c = annulus(4, 3);
    RefinedComplex rc(c, 0.5);
    auto a = to_json(sweep_report("a", sweep_quotient(rc, {PointOnComplex::vertex(0)}), 0.5)).dump();
    auto b = to_json(sweep_report("a", sweep_quotient(rc, {PointOnComplex::vertex(0)}), 0.5)).dump();
    CHECK(a == b);
    auto j = nlohmann::json::parse(a);
    CHECK_FALSE(j.contains("wall_seconds"));
    CHECK(j["method"] == "sweep");
    CHECK(j["slack"]["total"].get<double>() == doctest::Approx(2 * (j["slack"]["mesh"].get<double>() + 0.5)));
    WidthReport r;
    r.wall_seconds = 1.5;
    CHECK(to_json(r, true)["wall_seconds"] == 1.5);
}

TEST_CASE("example1 row at R = 2") {
    Example1Options o;
    o.trunc = 4;
    auto row = example1_row(2, o);
    CHECK(row.cert_holds);
    CHECK(row.width_cover_cert <= 3);
    CHECK(row.width_cover_cert >= o.grid);
    CHECK(row.diam >= 1);
    CHECK(row.width_M_best > 0);
    CHECK(row.width_M_best <= row.diam * 2 + row.width_slack);
    auto csv = example1_csv({row});
    CHECK(csv.rfind("R,width_M_best,width_cover_cert,diam", 0) == 0);
    std::istringstream is(csv);
    std::string line;
    int lines = 0;
    while (std::getline(is, line)) ++lines;
    CHECK(lines == 2);
    auto j = example1_json({row}, o);
    CHECK(j["rows"].size() == 1);
    CHECK(j["rows"][0]["R"] == 2);
    CHECK_THROWS_AS(example1_row(1, o), Error);
}
