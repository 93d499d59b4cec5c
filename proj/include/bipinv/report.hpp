#pragma once

#include <string>

#include <json.hpp>

#include "bipinv/balance.hpp"
#include "bipinv/error.hpp"
#include "bipinv/graph.hpp"
#include "bipinv/poset.hpp"

namespace bipinv {

struct ReportOptions {
    // Matrix Market files go here as B.mtx, B_inv.mtx, B_plus.mtx and the
    // report stores their paths; when empty the text is inlined.
    std::string mtx_dir;
    bool timing = false;  // off by default so reports are byte-stable
};

// Runs analyze() and serializes the result:
//   status              "nonnegative" | "odd_flower"
//   input_digest, n, pairs
//   matching            [[r, c], ...] by pair index
//   elimination_order   [[pendant, partner], ...]
//   row_vertices        R vertex of each row of B (triangular order)
//   col_vertices        C vertex of each column of B
//   det                 det of the full adjacency matrix
//   B, B_inv            {"path": ...} or {"inline": ...}; B_inv rows follow
//                       col_vertices and its columns row_vertices
//   B_plus, D, zeta     when nonnegative
//   negative_cycle, flower  when odd_flower
// The certificate is round-tripped through JSON and re-validated before the
// report is returned. Pipeline errors propagate as Error.
nlohmann::json analysis_report(const BipartiteGraph& g, const ReportOptions& options = {});

// {"status": "error", "error": {"code", "stage", "message", "witness"}}
nlohmann::json error_report(const Error& e);

// Parse/bipartition/matching/... for messages; derived from the code.
const char* error_stage(ErrorCode code) noexcept;

// Checks a report against its graph: digest, inverse, and the certificate.
// Returns an empty string when valid, otherwise the first problem.
std::string validate_report(const BipartiteGraph& g, const nlohmann::json& report);

// Zeta matrix and, with `mobius`, the Mobius matrix plus the verdict of
// mobius_balance(). Matrix references follow ReportOptions (zeta.mtx,
// mobius.mtx, mobius_plus.mtx).
nlohmann::json poset_report(const Poset& p, bool mobius, const ReportOptions& options = {});

// Writes or inlines one matrix as a report reference.
nlohmann::json matrix_ref(const IntegerMatrix& m, const std::string& name, const ReportOptions& options);
IntegerMatrix matrix_from_ref(const nlohmann::json& ref);

}  // namespace bipinv
