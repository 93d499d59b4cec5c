#include "bipinv/report.hpp"

#include <chrono>
#include <filesystem>

#include "bipinv/json_util.hpp"

namespace bipinv {
namespace {

nlohmann::json pairs_json(const Matching& m) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : m.pairs) out.push_back({p.r, p.c});
    return out;
}

nlohmann::json elimination_json(const Matching& m) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& s : m.elimination_order) out.push_back({s.pendant, s.partner});
    return out;
}

}  // namespace

nlohmann::json matrix_ref(const IntegerMatrix& m, const std::string& name, const ReportOptions& options) {
    if (options.mtx_dir.empty()) return {{"inline", to_matrix_market(m)}};
    std::error_code ec;
    std::filesystem::create_directories(options.mtx_dir, ec);
    if (ec) throw Error(ErrorCode::Io, "cannot create '" + options.mtx_dir + "': " + ec.message());
    const std::string path = (std::filesystem::path(options.mtx_dir) / (name + ".mtx")).string();
    write_matrix_market(m, path);
    return {{"path", path}};
}

IntegerMatrix matrix_from_ref(const nlohmann::json& ref) {
    if (ref.contains("inline")) return parse_matrix_market(ref.at("inline").get<std::string>());
    if (ref.contains("path")) return read_matrix_market(ref.at("path").get<std::string>());
    throw Error(ErrorCode::Syntax, "matrix reference has neither 'inline' nor 'path'");
}

const char* error_stage(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Syntax:
        case ErrorCode::Io:
        case ErrorCode::InvalidGraph:
            return "parse";
        case ErrorCode::NotBipartite:
        case ErrorCode::OrderMismatch:
            return "bipartition";
        case ErrorCode::NoPerfectMatching:
        case ErrorCode::NotUnique:
            return "matching";
        case ErrorCode::CycleFound:
        case ErrorCode::NotAcyclic:
            return "digraph";
        case ErrorCode::NotTriangularizable:
        case ErrorCode::NotUnitTriangular:
        case ErrorCode::Singular:
        case ErrorCode::DimensionMismatch:
            return "linear algebra";
        case ErrorCode::MissingVertex:
            return "balance";
        case ErrorCode::SameVertex:
        case ErrorCode::SizeTooSmall:
        case ErrorCode::PreconditionViolated:
            return "flower";
        case ErrorCode::InvalidPoset:
            return "poset";
        case ErrorCode::TooLarge:
            return "oracle";
        case ErrorCode::Internal:
            break;
    }
    return "internal";
}

nlohmann::json error_report(const Error& e) {
    return {{"status", "error"},
            {"error",
             {{"code", error_code_name(e.code())},
              {"stage", error_stage(e.code())},
              {"message", e.what()},
              {"witness", e.witness()}}}};
}

nlohmann::json analysis_report(const BipartiteGraph& g, const ReportOptions& options) {
    const auto start = std::chrono::steady_clock::now();
    const Analysis a = analyze(g);
    const auto& t = a.triangular;

    nlohmann::json r;
    r["status"] = a.nonnegative ? "nonnegative" : "odd_flower";
    r["input_digest"] = graph_digest(g);
    r["n"] = g.vertex_count();
    r["pairs"] = a.matching.size();
    r["matching"] = pairs_json(a.matching);
    r["elimination_order"] = elimination_json(a.matching);
    r["row_vertices"] = t.row_vertices;
    r["col_vertices"] = t.col_vertices;
    r["det"] = a.det;
    r["B"] = matrix_ref(t.L, "B", options);
    r["B_inv"] = matrix_ref(a.B_inverse, "B_inv", options);
    if (a.nonnegative) {
        r["B_plus"] = matrix_ref(a.nonnegative->B_plus, "B_plus", options);
        r["D"] = a.nonnegative->D;
        r["zeta"] = a.nonnegative->switching.signs;
    } else {
        r["negative_cycle"] = a.balance.negative_cycle;
        const nlohmann::json cert = to_json(*a.flower);
        if (!validate_odd_flower(g, a.matching, flower_from_json(cert))) {
            throw Error(ErrorCode::Internal, "flower certificate does not survive a JSON round trip");
        }
        r["flower"] = cert;
    }
    if (options.timing) {
        const std::chrono::duration<double, std::milli> elapsed = std::chrono::steady_clock::now() - start;
        r["timing_ms"] = elapsed.count();
    }
    if (auto problem = validate_report(g, r); !problem.empty()) {
        throw Error(ErrorCode::Internal, "report failed re-validation: " + problem);
    }
    return r;
}

std::string validate_report(const BipartiteGraph& g, const nlohmann::json& report) {
    try {
        if (report.at("input_digest").get<std::string>() != graph_digest(g)) return "input digest mismatch";
        const Matching m = unique_perfect_matching(g);
        const auto rows = report.at("row_vertices").get<std::vector<int>>();
        const auto cols = report.at("col_vertices").get<std::vector<int>>();
        const IntegerMatrix B = matrix_from_ref(report.at("B"));
        if (B != bipartite_adjacency(g, rows, cols)) return "B does not match the graph under the reported orders";
        const IntegerMatrix B_inv = matrix_from_ref(report.at("B_inv"));
        if (B * B_inv != IntegerMatrix::identity(B.rows())) return "B_inv is not the inverse of B";
        if (report.at("det").get<int>() != det_adjacency(g, m)) return "wrong determinant";

        const std::string status = report.at("status").get<std::string>();
        if (status == "nonnegative") {
            const auto D = report.at("D").get<std::vector<int>>();
            const IntegerMatrix B_plus = matrix_from_ref(report.at("B_plus"));
            if (D.size() != B.rows() || B_plus.rows() != B.rows()) return "D or B_plus has the wrong size";
            for (std::size_t z = 0; z < D.size(); ++z) {
                if (D[z] != 1 && D[z] != -1) return "D is not a signature";
                for (std::size_t x = 0; x < D.size(); ++x) {
                    if (B_plus(z, x) != D[z] * D[x] * B_inv(z, x)) return "B_plus differs from D B_inv D";
                }
            }
            if (!B_plus.is_nonnegative()) return "B_plus has a negative entry";
            return {};
        }
        if (status == "odd_flower") {
            if (!validate_odd_flower(g, m, flower_from_json(report.at("flower")))) return "flower does not validate";
            return {};
        }
        return "unknown status '" + status + "'";
    } catch (const Error& e) {
        return e.what();
    } catch (const nlohmann::json::exception& e) {
        return e.what();
    }
}

nlohmann::json poset_report(const Poset& p, bool mobius, const ReportOptions& options) {
    nlohmann::json r;
    r["elements"] = p.size();
    r["order"] = p.linear_extension();
    r["zeta"] = matrix_ref(zeta_matrix(p), "zeta", options);
    if (!mobius) return r;
    const IntegerMatrix mob = mobius_matrix(p);
    if (!satisfies_mobius_recurrence(p, mob)) throw Error(ErrorCode::Internal, "Mobius recurrence fails");
    r["mobius"] = matrix_ref(mob, "mobius", options);
    const auto verdict = mobius_balance(p);
    if (const auto* form = std::get_if<NonnegativeForm>(&verdict)) {
        r["status"] = "nonnegative";
        r["mobius_plus"] = matrix_ref(form->B_plus, "mobius_plus", options);
        r["D"] = form->D;
    } else {
        r["status"] = "odd_flower";
        r["flower"] = to_json(std::get<FlowerCertificate>(verdict));
    }
    return r;
}

}  // namespace bipinv
