#include "uwidth/report.hpp"

#include <iomanip>
#include <sstream>

namespace uw {

using nlohmann::json;

json to_json(const WidthReport& r, bool with_time) {
    json j;
    j["space"] = r.space;
    j["method"] = r.method;
    j["width"] = r.width;
    j["verified"] = r.verified;
    if (r.bound >= 0) j["bound"] = r.bound;
    j["slack"] = {{"h", r.h}, {"step", r.step}, {"eps", r.eps}, {"mesh", r.mesh_slack}, {"total", r.slack}};
    j["params"] = r.params;
    j["detail"] = r.detail;
    if (with_time) j["wall_seconds"] = r.wall_seconds;
    return j;
}

WidthReport sweep_report(const std::string& space, const SweepQuotient& q, double h) {
    WidthReport r;
    r.space = space;
    r.method = "sweep";
    r.width = q.width();
    r.h = h;
    r.step = q.step;
    r.mesh_slack = q.mesh_slack;
    r.slack = q.slack();
    r.verified = true;
    r.detail = {{"nodes", q.nodes.size()},
                {"components", q.num_components()},
                {"forest", q.is_forest()},
                {"critical_radii", q.critical_radii}};
    return r;
}

WidthReport search_report(const std::string& space, const RefinedComplex& rc, const SearchResult& s) {
    WidthReport r;
    r.space = space;
    r.method = "separator-search";
    r.width = s.best.width;
    r.h = rc.h();
    r.step = s.step;
    r.mesh_slack = rc.mesh_slack();
    r.slack = 2 * (r.mesh_slack + r.step);
    r.verified = true;
    r.detail = {{"z_components", s.best.z_components.size()},
                {"complement_components", s.best.complement_components.size()},
                {"seed", s.seed},
                {"offset", s.offset},
                {"evaluations", s.evaluations},
                {"history", s.history}};
    return r;
}

WidthReport transfer_report(const std::string& space, const TransferCertificate& t, double h, double trunc) {
    WidthReport r;
    r.space = space;
    r.method = "transfer";
    r.width = t.base_width;
    r.h = h;
    r.step = t.base_sweep.step;
    r.mesh_slack = t.base_sweep.mesh_slack;
    r.slack = t.slack;
    r.bound = t.bound;
    r.verified = t.holds;
    const char* kind = t.structure == DeckGroupSpec::Structure::Finite            ? "finite"
                       : t.structure == DeckGroupSpec::Structure::VirtuallyCyclic ? "virtually-cyclic"
                                                                                   : "other";
    auto& d = t.diagnostic;
    r.detail = {{"group", kind},
                {"factor", t.factor},
                {"cover_D", t.D},
                {"cover_is_tree", t.cover_is_tree},
                {"truncation", trunc},
                {"complete_radius", t.complete_radius},
                {"required_radius", t.required_radius},
                {"diagnostic",
                 {{"ran", d.ran},
                  {"note", d.note},
                  {"m", d.m},
                  {"n", d.n},
                  {"loop_length", d.loop_length},
                  {"thin_bound", d.thin_bound},
                  {"measured", d.measured},
                  {"thin_holds", d.thin_holds}}}};
    return r;
}

WidthReport pipeline_report(const std::string& space, const PipelineResult& p) {
    WidthReport r;
    r.space = space;
    r.method = "surface-pipeline";
    r.width = p.final_width;
    r.step = p.cover_step;
    r.eps = p.eps;
    r.mesh_slack = p.mesh_slack;
    r.slack = p.slack;
    r.bound = p.bound;
    r.verified = p.verified;
    json stages = json::array();
    for (auto& s : p.stages)
        stages.push_back({{"stage", s.index},
                          {"arc_length", s.arc_length},
                          {"M", s.M},
                          {"D", s.D},
                          {"rewired_width", s.rewired_width},
                          {"lifts", s.lifts},
                          {"nudged", s.nudged},
                          {"ends", s.ends},
                          {"properties_hold", s.properties_hold},
                          {"reach_excess", s.reach_excess},
                          {"patch_vertices", s.patch_vertices},
                          {"notes", s.notes}});
    r.detail = {{"disk", p.disk},
                {"rank", p.rank},
                {"D_cover", p.D_cover},
                {"eps_prime", p.eps_prime},
                {"tau", p.tau},
                {"M", p.M},
                {"cover_vertices", p.cover_vertices},
                {"stages", stages},
                {"collapse_stretch", p.collapse_stretch},
                {"direct_width", p.direct_width},
                {"direct_slack", p.direct_slack},
                {"notes", p.notes}};
    return r;
}

WidthReport projection_report(const std::string& space, const ProjectionCertificate& c) {
    WidthReport r;
    r.space = space;
    r.method = "projection";
    r.width = c.max_fiber;
    r.step = c.step;
    r.mesh_slack = c.mesh_slack;
    r.slack = c.mesh_slack;
    r.bound = c.bound;
    r.verified = c.holds;
    r.detail = {{"fibers", c.nodes},
                {"radius", c.radius},
                {"unresolved", c.unresolved},
                {"bridged", c.bridged},
                {"classes", c.classes},
                {"classes_in_image", c.all_classes},
                {"worst_node", c.worst_node}};
    return r;
}

json example1_json(const std::vector<Example1Row>& rows, const Example1Options& opt) {
    json out;
    out["params"] = {{"grid", opt.grid},         {"width_grid", opt.width_grid}, {"trunc", opt.trunc},
                     {"radius", opt.radius},     {"seeds", opt.seeds},           {"budget", opt.budget},
                     {"diameter_tol", opt.diameter_tol}, {"seed", opt.seed}};
    out["note"] = "upper bounds and scaling only; no lower bound on the width of M is certified";
    json rs = json::array();
    for (auto& r : rows)
        rs.push_back({{"R", r.R},
                      {"width_M_best", r.width_M_best},
                      {"width_slack", r.width_slack},
                      {"width_cover_cert", r.width_cover_cert},
                      {"cover_slack", r.cover_slack},
                      {"cert_holds", r.cert_holds},
                      {"diam", r.diam},
                      {"M_vertices", r.M_vertices},
                      {"cover_vertices", r.cover_vertices},
                      {"fibers", r.fibers},
                      {"evaluations", r.evaluations}});
    out["rows"] = rs;
    return out;
}

std::string example1_csv(const std::vector<Example1Row>& rows) {
    std::ostringstream os;
    os << std::setprecision(10);
    os << "R,width_M_best,width_cover_cert,diam,width_slack,cover_slack\n";
    for (auto& r : rows)
        os << r.R << ',' << r.width_M_best << ',' << r.width_cover_cert << ',' << r.diam << ',' << r.width_slack << ','
           << r.cover_slack << '\n';
    return os.str();
}

}  // namespace uw
