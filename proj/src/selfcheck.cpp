#include "bipinv/selfcheck.hpp"

#include <atomic>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "bipinv/error.hpp"
#include "bipinv/report.hpp"

namespace bipinv {
namespace {

bool is_forest_with_edges(const BipartiteGraph& g, std::size_t edges) {
    std::vector<int> parent(g.vertex_count());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : g.edges()) {
        const int a = find(e.u), b = find(e.v);
        if (a == b) return false;
        parent[a] = b;
    }
    return g.edge_count() == edges;
}

WeightedGraph flip_first_weight(const WeightedGraph& w) {
    auto edges = w.edges();
    if (!edges.empty()) edges.front().w = -edges.front().w;
    return WeightedGraph(w.vertex_count(), std::move(edges));
}

std::string check(const BipartiteGraph& g, bool corrupt, std::string* status) {
    using namespace oracle;
    const std::size_t n = g.vertex_count();
    const SimpleGraph simple = as_simple(g);

    const Matching m = unique_perfect_matching(g);
    if (!replay_elimination(g, m)) return "elimination order does not replay";
    if (n <= kMatchingBound && enumerate_perfect_matchings(simple).size() != 1) {
        return "oracle finds more than one perfect matching";
    }
    build_dag(g, m);

    const int det = det_adjacency(g, m);
    if (det_fraction_free(adjacency_matrix(g)) != det) return "fraction-free determinant differs from (-1)^|M|";
    if (n <= kSachsBound && det_via_sachs(simple) != det) return "Sachs determinant differs from (-1)^|M|";

    const TriangularForm form = triangularize(g, m);
    const IntegerMatrix X = invert_unit_lower_triangular(form.L);
    WeightedGraph w = inverse_graph(form, X, n);
    if (corrupt) w = flip_first_weight(w);

    if (n <= 2 * kPathPairBound) {
        for (int r : g.R()) {
            for (int c : g.C()) {
                const PathProfile brute = enumerate_alternating_paths(g, m, r, c);
                if (tau_counts(g, m, r, c) != brute) {
                    return "path counts differ from enumeration at " + std::to_string(r) + "-" + std::to_string(c);
                }
                const Integer* weight = w.weight(r, c);
                const Integer actual = weight ? *weight : Integer(0);
                if (actual != brute.tau_e - brute.tau_o) {
                    return "inverse weight differs from the signed path sum at " + std::to_string(r) + "-" +
                           std::to_string(c);
                }
            }
        }
    }
    IntegerMatrix inverse(n, n);
    for (const auto& e : w.edges()) inverse(e.u, e.v) = inverse(e.v, e.u) = e.w;
    if (adjacency_matrix(g) * inverse != IntegerMatrix::identity(n)) return "inverse graph is not the inverse";

    const BalanceVerdict verdict = is_balanced(w);
    if (verdict.balanced) {
        const WeightedGraph switched = apply_switching(w, verdict.switching);
        for (const auto& e : switched.edges())
            if (sgn(e.w) <= 0) return "switching leaves a non-positive edge";
    } else if (cycle_sign(w, verdict.negative_cycle) != -1) {
        return "unbalanced witness is not a negative cycle";
    }
    if (n <= kSwitchingBound && balance_exhaustive(w).balanced != verdict.balanced) {
        return "balance verdict differs from exhaustive switching";
    }

    const nlohmann::json report = analysis_report(g);
    const bool nonnegative = report.at("status") == "nonnegative";
    if (nonnegative != verdict.balanced) return "report verdict differs from the balance check";
    if (find_odd_flower(g, m).has_value() == nonnegative) return "odd flower exists iff nonnegative fails";
    if (quotient_by_matching(g, m).is_bipartite() && !nonnegative) return "bipartite quotient without nonnegative inverse";
    if (is_forest_with_edges(g, n - 1) && !nonnegative) return "tree without nonnegative inverse";
    if (status) *status = report.at("status").get<std::string>();
    return {};
}

}  // namespace

std::string check_instance(const BipartiteGraph& g, bool corrupt, std::string* status) {
    try {
        return check(g, corrupt, status);
    } catch (const Error& e) {
        return std::string(error_code_name(e.code())) + " in " + error_stage(e.code()) + ": " + e.what();
    }
}

oracle::CorpusRecord selfcheck_record(const SelfcheckOptions& options, std::size_t index) {
    static constexpr double kDensities[] = {0.25, 0.5, 0.75};
    oracle::CorpusRecord r;
    r.seed = options.seed + index;
    r.pairs = options.pairs;
    r.relabel_seed = r.seed + 1;
    if (index % 4 == 3) {
        r.generator = "matched_tree";
    } else {
        r.generator = "unique_pm";
        r.p = kDensities[index % 3];
    }
    return r;
}

std::string SelfcheckResult::log() const {
    std::ostringstream out;
    for (std::size_t i = 0; i < instances.size(); ++i) {
        const auto& inst = instances[i];
        out << "instance " << i << " (" << inst.record.generator << ", seed " << inst.record.seed << "): "
            << (inst.consistent ? inst.status : "INCONSISTENT: " + inst.status) << '\n';
    }
    if (!replay_path.empty()) out << "replay: " << replay_path << '\n';
    out << consistent << '/' << instances.size() << " consistent\n";
    return out.str();
}

SelfcheckResult run_selfcheck(const SelfcheckOptions& options) {
    if (options.pairs == 0) throw Error(ErrorCode::PreconditionViolated, "selfcheck needs at least one pair");
    SelfcheckResult result;
    result.instances.resize(options.count);

    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < options.count; i = next++) {
            InstanceResult& slot = result.instances[i];
            slot.record = selfcheck_record(options, i);
            const bool corrupt = options.inject_fault && *options.inject_fault == i;
            try {
                const BipartiteGraph g = oracle::regenerate(slot.record);
                const std::string problem = check_instance(g, corrupt, &slot.status);
                if (!problem.empty()) {
                    slot.consistent = false;
                    slot.status = problem;
                }
            } catch (const std::exception& e) {
                slot.consistent = false;
                slot.status = e.what();
            }
        }
    };
    unsigned threads = options.threads ? options.threads : std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(options.count, 1)));
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }

    for (std::size_t i = 0; i < result.instances.size(); ++i) {
        const auto& inst = result.instances[i];
        if (inst.consistent) {
            ++result.consistent;
            continue;
        }
        if (!result.replay_path.empty()) continue;
        const std::filesystem::path dir = options.replay_dir.empty() ? "." : options.replay_dir;
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        const auto path = dir / ("selfcheck_replay_" + std::to_string(i) + ".json");
        nlohmann::json replay = {{"instance", i},
                                 {"reason", inst.status},
                                 {"manifest", oracle::to_json(std::vector<oracle::CorpusRecord>{inst.record})}};
        try {
            replay["graph"] = to_edge_list(oracle::regenerate(inst.record));
        } catch (const Error&) {
        }
        std::ofstream out(path);
        out << replay.dump(2) << '\n';
        if (!out) throw Error(ErrorCode::Io, "cannot write replay file " + path.string());
        result.replay_path = path.string();
    }
    return result;
}

}  // namespace bipinv
