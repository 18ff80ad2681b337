#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "uwidth/experiment.hpp"
#include "uwidth/pipeline.hpp"
#include "uwidth/separator.hpp"
#include "uwidth/transfer.hpp"

namespace uw {

// Every width here was re-measured on the mesh, never taken from a bound alone.
struct WidthReport {
    std::string space;
    std::string method;        // sweep | separator-search | transfer | surface-pipeline | projection
    double width = 0;
    double h = 0, step = 0, eps = 0;
    double mesh_slack = 0, slack = 0;
    double bound = -1;         // the bound checked, when there is one
    bool verified = false;
    double wall_seconds = 0;
    nlohmann::json params = nlohmann::json::object();
    nlohmann::json detail = nlohmann::json::object();
};

// Wall time is left out unless asked for, so reports repeat byte for byte.
nlohmann::json to_json(const WidthReport& r, bool with_time = false);

WidthReport sweep_report(const std::string& space, const SweepQuotient& q, double h);
WidthReport search_report(const std::string& space, const RefinedComplex& rc, const SearchResult& s);
WidthReport transfer_report(const std::string& space, const TransferCertificate& t, double h, double trunc);
WidthReport pipeline_report(const std::string& space, const PipelineResult& p);
WidthReport projection_report(const std::string& space, const ProjectionCertificate& c);

nlohmann::json example1_json(const std::vector<Example1Row>& rows, const Example1Options& opt);
std::string example1_csv(const std::vector<Example1Row>& rows);

}  // namespace uw
