#pragma once

#include <string>
#include <vector>

#include "uwidth/rewire.hpp"

namespace uw {

struct PipelineOptions {
    double eps = 0.1;
    double trunc = 0;        // cover truncation radius, 0 picks 3 x diameter
    double margin = 1;       // M exceeds (1 + 2 eps)^r D_cover by this much
    double tau = 0;          // final strip width, 0 picks eps'
    std::size_t budget = 8;  // separator search on the cover patch
    double step = 0;         // search level spacing, 0 means the longest edge
    bool direct = true;      // also search the surface itself
};

struct PipelineStage {
    std::size_t index = 0;
    double arc_length = 0;
    std::vector<Id> arc;       // on the previous surface
    double M = 0, D = 0;       // D of the (nudged) separator being rewired
    double rewired_width = 0;  // re-measured on the new patch
    std::size_t lifts = 0, nudged = 0, ends = 0;
    std::size_t patch_vertices = 0, surface_vertices = 0;
    bool properties_hold = false;
    double reach_excess = 0;
    std::vector<std::string> notes;
};

struct PipelineResult {
    bool disk = false;
    std::size_t rank = 0;
    double eps = 0, eps_prime = 0, tau = 0, M = 0;
    double D_cover = 0, cover_step = 0, mesh_slack = 0;
    std::size_t cover_vertices = 0;
    std::vector<PipelineStage> stages;
    MetricComplex surface;   // with the strips squeezed to width tau
    Subcomplex z;            // final separator on it
    double final_width = 0;
    double bound = 0;        // (1 + eps)^r (1 + 2 eps)^(r + 1) D_cover + slack
    double slack = 0;        // 2 (mesh slack + step)
    double collapse_stretch = 0;  // squeezed surface against the unsqueezed one
    bool verified = false;   // final Z passes verify_separator at `bound`
    double direct_width = -1;  // search_separator on the input surface
    double direct_slack = 0;
    std::vector<std::string> notes;
};

// Iterated cut-and-rewire from a separator of the universal cover patch to a
// separator of the surface itself.  The input is used as the mesh, unrefined.
PipelineResult surface_pipeline(const MetricComplex& surface, const PipelineOptions& opt = {});

}  // namespace uw
