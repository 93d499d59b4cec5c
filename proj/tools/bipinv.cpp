// Command-line front end. Talks to the library only through bipinv.h.
//
// Exit codes:
//   0   success; analyze: nonnegative, balance: balanced, flower: found
//   1   usage or internal error
//   2   input or precondition failure (parse error, not bipartite, no or
//       several perfect matchings, ...)
//   3   selfcheck found an inconsistent instance
//   10  analyze: odd flower, balance: unbalanced, flower: none

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "bipinv/bipinv.h"

namespace {

enum Exit { kOk = 0, kUsage = 1, kInput = 2, kInconsistent = 3, kNegative = 10 };

struct Freer {
    void operator()(bipinv_graph* g) const { bipinv_graph_free(g); }
    void operator()(bipinv_matrix* m) const { bipinv_matrix_free(m); }
    void operator()(bipinv_report* r) const { bipinv_report_free(r); }
    void operator()(bipinv_poset* p) const { bipinv_poset_free(p); }
    void operator()(char* s) const { bipinv_string_free(s); }
};
template <class T>
using Owned = std::unique_ptr<T, Freer>;

std::string take(char* s) {
    Owned<char> owned(s);
    return s ? std::string(s) : std::string();
}

bool json_mode = false;

int report_failure(bipinv_status status) {
    const int code = status == BIPINV_E_INTERNAL || status == BIPINV_E_OUT_OF_MEMORY ? kUsage : kInput;
    char* detail = bipinv_last_error_json();
    const auto j = detail ? nlohmann::json::parse(take(detail)) : nlohmann::json::object();
    if (json_mode) {
        std::cout << nlohmann::json{{"status", "error"}, {"error", j}}.dump(2) << '\n';
        return code;
    }
    std::cerr << "error";
    if (j.contains("stage")) std::cerr << " in " << j["stage"].get<std::string>() << " stage";
    std::cerr << ": " << bipinv_status_name(status) << ": " << bipinv_last_error() << '\n';
    if (j.contains("witness") && !j["witness"].empty()) {
        std::cerr << "witness:";
        for (int v : j["witness"]) std::cerr << ' ' << v;
        std::cerr << '\n';
    }
    return code;
}

#define TRY(call)                                              \
    do {                                                       \
        const bipinv_status status_ = (call);                  \
        if (status_ != BIPINV_OK) return report_failure(status_); \
    } while (0)

std::optional<std::string> slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int missing_file(const std::string& path) {
    if (json_mode) {
        std::cout << nlohmann::json{{"status", "error"},
                                    {"error",
                                     {{"code", "IoError"},
                                      {"stage", "parse"},
                                      {"message", "cannot read '" + path + "'"},
                                      {"witness", nlohmann::json::array()}}}}
                         .dump(2)
                  << '\n';
    } else {
        std::cerr << "error in parse stage: cannot read '" << path << "'\n";
    }
    return kInput;
}

bool write_text(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return true;
    }
    std::ofstream out(path, std::ios::binary);
    out << text;
    return static_cast<bool>(out);
}

void print_signs(const char* label, const nlohmann::json& values) {
    std::cout << label << ':';
    for (int v : values) std::cout << (v > 0 ? " +1" : " -1");
    std::cout << '\n';
}

void print_ints(const char* label, const nlohmann::json& values) {
    std::cout << label << ':';
    for (int v : values) std::cout << ' ' << v;
    std::cout << '\n';
}

std::string matrix_text(const nlohmann::json& ref) {
    if (ref.contains("inline")) return ref["inline"].get<std::string>();
    return "see " + ref["path"].get<std::string>() + "\n";
}

int cmd_analyze(const std::string& path, const std::string& mtx_dir, bool timing) {
    bipinv_graph* raw = nullptr;
    TRY(bipinv_graph_read(path.c_str(), &raw));
    Owned<bipinv_graph> g(raw);
    bipinv_report* report_raw = nullptr;
    TRY(bipinv_analyze(g.get(), mtx_dir.empty() ? nullptr : mtx_dir.c_str(), timing ? 1 : 0, &report_raw));
    Owned<bipinv_report> report(report_raw);
    bipinv_verdict verdict;
    TRY(bipinv_report_verdict(report.get(), &verdict));
    char* text = nullptr;
    TRY(bipinv_report_json(report.get(), &text));
    const std::string json = take(text);
    const int code = verdict == BIPINV_VERDICT_NONNEGATIVE ? kOk : kNegative;
    if (json_mode) {
        std::cout << json;
        return code;
    }
    const auto j = nlohmann::json::parse(json);
    std::cout << "status: " << j["status"].get<std::string>() << '\n';
    std::cout << "digest: " << j["input_digest"].get<std::string>() << '\n';
    std::cout << "pairs: " << j["pairs"] << "  det: " << j["det"] << '\n';
    print_ints("row vertices", j["row_vertices"]);
    print_ints("col vertices", j["col_vertices"]);
    if (verdict == BIPINV_VERDICT_NONNEGATIVE) {
        print_signs("D", j["D"]);
        std::cout << "B_plus:\n" << matrix_text(j["B_plus"]);
    } else {
        const auto& f = j["flower"];
        print_ints("odd flower", f["order"]);
        std::cout << "pairs with tau_o > tau_e: " << f["negative_pairs"] << '\n';
    }
    if (j.contains("timing_ms")) std::cout << "time: " << j["timing_ms"].get<double>() << " ms\n";
    return code;
}

int cmd_invert(const std::string& path, const std::string& mtx_dir) {
    bipinv_matrix* raw = nullptr;
    TRY(bipinv_matrix_read(path.c_str(), &raw));
    Owned<bipinv_matrix> b(raw);
    bipinv_matrix* inv_raw = nullptr;
    TRY(bipinv_matrix_invert(b.get(), &inv_raw));
    Owned<bipinv_matrix> inv(inv_raw);
    char* text = nullptr;
    TRY(bipinv_matrix_to_text(inv.get(), &text));
    const std::string mtx = take(text);
    std::string target;
    if (!mtx_dir.empty()) {
        std::filesystem::create_directories(mtx_dir);
        target = (std::filesystem::path(mtx_dir) / "B_inv.mtx").string();
        if (!write_text(target, mtx)) return missing_file(target);
    }
    if (json_mode) {
        nlohmann::json ref = target.empty() ? nlohmann::json{{"inline", mtx}} : nlohmann::json{{"path", target}};
        std::cout << nlohmann::json{{"status", "ok"}, {"B_inv", ref}}.dump(2) << '\n';
    } else if (target.empty()) {
        std::cout << mtx;
    } else {
        std::cout << "wrote " << target << '\n';
    }
    return kOk;
}

int cmd_balance(const std::string& path, bool of_graph) {
    std::string weighted;
    if (of_graph) {
        bipinv_graph* raw = nullptr;
        TRY(bipinv_graph_read(path.c_str(), &raw));
        Owned<bipinv_graph> g(raw);
        char* text = nullptr;
        TRY(bipinv_inverse_graph(g.get(), &text));
        weighted = take(text);
    } else {
        auto text = slurp(path);
        if (!text) return missing_file(path);
        weighted = *text;
    }
    int balanced = 0;
    char* out = nullptr;
    TRY(bipinv_balance(weighted.c_str(), &balanced, &out));
    const std::string json = take(out);
    if (json_mode) {
        std::cout << json;
    } else {
        const auto j = nlohmann::json::parse(json);
        if (balanced) {
            std::cout << "balanced\n";
            print_signs("zeta", j["zeta"]);
        } else {
            std::cout << "unbalanced\n";
            print_ints("negative cycle", j["negative_cycle"]);
            print_ints("chordless negative cycle", j["chordless_cycle"]);
        }
    }
    return balanced ? kOk : kNegative;
}

std::optional<std::vector<int>> parse_set(const std::string& text) {
    std::vector<int> out;
    std::string item;
    std::istringstream in(text);
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoi(item, &used));
            if (used != item.size()) return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    return out;
}

int cmd_flower(const std::string& path, const std::string& set) {
    bipinv_graph* raw = nullptr;
    TRY(bipinv_graph_read(path.c_str(), &raw));
    Owned<bipinv_graph> g(raw);
    std::vector<int> vertices;
    if (!set.empty()) {
        auto parsed = parse_set(set);
        if (!parsed) {
            std::cerr << "--set expects comma-separated vertex ids\n";
            return kUsage;
        }
        vertices = *parsed;
    }
    int is_flower = 0;
    char* out = nullptr;
    TRY(bipinv_flower(g.get(), set.empty() ? nullptr : vertices.data(), vertices.size(), &is_flower, &out));
    const std::string json = take(out);
    if (json_mode) {
        std::cout << json;
    } else {
        const auto j = nlohmann::json::parse(json);
        if (is_flower) {
            const auto& c = j["certificate"];
            std::cout << (c["odd"].get<bool>() ? "odd flower" : "even flower") << '\n';
            print_ints("order", c["order"]);
            std::cout << "pairs with tau_o > tau_e: " << c["negative_pairs"] << '\n';
        } else {
            std::cout << "not a flower: " << j["reason"].get<std::string>() << '\n';
        }
    }
    return is_flower ? kOk : kNegative;
}

// A poset file has a one-token header, an edge list a two-token one.
bool looks_like_poset(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        std::istringstream fields(line);
        std::string a, b;
        if (!(fields >> a)) continue;
        return !(fields >> b);
    }
    return true;
}

int cmd_poset(const std::string& path, std::optional<std::size_t> boolean, bool mobius, const std::string& mtx_dir) {
    bipinv_poset* raw = nullptr;
    if (boolean) {
        TRY(bipinv_poset_boolean(*boolean, &raw));
    } else {
        auto text = slurp(path);
        if (!text) return missing_file(path);
        if (looks_like_poset(*text)) {
            TRY(bipinv_poset_parse(text->c_str(), &raw));
        } else {
            bipinv_graph* g_raw = nullptr;
            TRY(bipinv_graph_parse(text->c_str(), &g_raw));
            Owned<bipinv_graph> g(g_raw);
            TRY(bipinv_poset_from_graph(g.get(), &raw));
        }
    }
    Owned<bipinv_poset> p(raw);
    char* out = nullptr;
    TRY(bipinv_poset_report(p.get(), mobius ? 1 : 0, mtx_dir.empty() ? nullptr : mtx_dir.c_str(), &out));
    const std::string json = take(out);
    if (json_mode) {
        std::cout << json;
        return kOk;
    }
    const auto j = nlohmann::json::parse(json);
    std::cout << "elements: " << j["elements"] << '\n';
    print_ints("order", j["order"]);
    std::cout << "zeta:\n" << matrix_text(j["zeta"]);
    if (mobius) {
        std::cout << "mobius:\n" << matrix_text(j["mobius"]);
        std::cout << "mobius balance: " << j["status"].get<std::string>() << '\n';
        if (j.contains("D")) print_signs("D", j["D"]);
        if (boolean) {
            int64_t mu = 0;
            const int top = static_cast<int>(bipinv_poset_size(p.get())) - 1;
            TRY(bipinv_poset_mu(p.get(), 0, top, &mu));
            std::cout << "mu(bottom, top): " << mu << '\n';
        }
    }
    return kOk;
}

int cmd_gen(std::size_t pairs, double p, uint64_t seed, bool tree, uint64_t relabel, const std::string& out,
            const std::string& manifest) {
    const char* generator = tree ? "matched_tree" : "unique_pm";
    bipinv_graph* raw = nullptr;
    TRY(bipinv_graph_generate(generator, pairs, p, seed, relabel, &raw));
    Owned<bipinv_graph> g(raw);
    char* text = nullptr;
    TRY(bipinv_graph_to_text(g.get(), &text));
    if (!write_text(out, take(text))) return missing_file(out);
    if (!manifest.empty()) {
        char* entry = nullptr;
        TRY(bipinv_manifest_entry(generator, pairs, p, seed, relabel, &entry));
        if (!write_text(manifest, take(entry))) return missing_file(manifest);
    }
    return kOk;
}

int cmd_kron(const std::string& a_path, const std::string& b_path, bool as_graph, const std::string& out) {
    bipinv_matrix* a_raw = nullptr;
    TRY(bipinv_matrix_read(a_path.c_str(), &a_raw));
    Owned<bipinv_matrix> a(a_raw);
    bipinv_matrix* b_raw = nullptr;
    TRY(bipinv_matrix_read(b_path.c_str(), &b_raw));
    Owned<bipinv_matrix> b(b_raw);
    bipinv_matrix* k_raw = nullptr;
    TRY(bipinv_matrix_kron(a.get(), b.get(), &k_raw));
    Owned<bipinv_matrix> k(k_raw);
    char* text = nullptr;
    if (as_graph) {
        bipinv_graph* g_raw = nullptr;
        TRY(bipinv_graph_from_biadjacency(k.get(), &g_raw));
        Owned<bipinv_graph> g(g_raw);
        TRY(bipinv_graph_to_text(g.get(), &text));
    } else {
        TRY(bipinv_matrix_to_text(k.get(), &text));
    }
    if (!write_text(out, take(text))) return missing_file(out);
    return kOk;
}

int cmd_selfcheck(std::size_t pairs, std::size_t count, uint64_t seed, unsigned threads, const std::string& replay_dir,
                  int64_t inject) {
    bipinv_selfcheck_options options{pairs, count, seed, threads, replay_dir.empty() ? nullptr : replay_dir.c_str(),
                                     inject};
    std::size_t consistent = 0;
    char* log = nullptr;
    TRY(bipinv_selfcheck(&options, &consistent, &log));
    const std::string text = take(log);
    if (json_mode) {
        std::vector<std::string> lines;
        std::istringstream in(text);
        for (std::string line; std::getline(in, line);) lines.push_back(line);
        std::cout << nlohmann::json{{"consistent", consistent}, {"count", count}, {"log", lines}}.dump(2) << '\n';
    } else {
        std::cout << text;
    }
    return consistent == count ? kOk : kInconsistent;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Inverses of bipartite graphs with a unique perfect matching"};
    app.require_subcommand(1);
    app.add_flag("--json", json_mode, "Machine-readable JSON on stdout");
    app.set_version_flag("--version", bipinv_version());

    std::string input, input_b, mtx_dir, set, out, manifest, replay_dir;
    bool timing = false, of_graph = false, mobius = false, tree = false, as_graph = false;
    std::optional<std::size_t> boolean;
    std::size_t pairs = 4, count = 10;
    double p = 0.5;
    uint64_t seed = 0, relabel = 0;
    unsigned threads = 0;
    int64_t inject = -1;

    auto* analyze = app.add_subcommand("analyze", "Full pipeline on an edge-list graph");
    analyze->add_option("graph", input, "Edge-list file")->required();
    analyze->add_option("--mtx-out", mtx_dir, "Write B, B_inv, B_plus as Matrix Market files here");
    analyze->add_flag("--timing", timing, "Include wall-clock time in the report");

    auto* invert = app.add_subcommand("invert", "Invert a 0/1 biadjacency matrix");
    invert->add_option("matrix", input, "Matrix Market file")->required();
    invert->add_option("--mtx-out", mtx_dir, "Write B_inv.mtx here instead of stdout");

    auto* balance = app.add_subcommand("balance", "Balance check of a weighted graph");
    balance->add_option("weighted", input, "Weighted edge-list file")->required();
    balance->add_flag("--graph", of_graph, "Input is an edge-list graph; check its inverse");

    auto* flower = app.add_subcommand("flower", "Flower check or odd-flower search");
    flower->add_option("graph", input, "Edge-list file")->required();
    flower->add_option("--set", set, "Comma-separated vertex ids; omit to search for an odd flower");

    auto* poset = app.add_subcommand("poset", "Zeta and Mobius matrices of a poset");
    poset->add_option("input", input, "Poset file, or an edge-list graph whose digraph closure is used");
    poset->add_option("--boolean", boolean, "Use the Boolean lattice on this many atoms")->excludes(
        poset->get_option("input"));
    poset->add_flag("--mobius", mobius, "Also emit the Mobius matrix and its balance verdict");
    poset->add_option("--mtx-out", mtx_dir, "Write matrices as Matrix Market files here");

    auto* gen = app.add_subcommand("gen", "Seeded random instance");
    gen->add_option("--pairs", pairs, "Matched pairs")->required();
    gen->add_option("--p", p, "Density of strictly-lower entries")->check(CLI::Range(0.0, 1.0));
    gen->add_option("--seed", seed, "Generator seed")->required();
    gen->add_flag("--tree", tree, "Matched tree instead of a unique-PM graph");
    gen->add_option("--relabel-seed", relabel, "Shuffle vertex ids with this seed (0: keep)");
    gen->add_option("-o,--out", out, "Output edge-list file (default stdout)");
    gen->add_option("--manifest", manifest, "Also write the corpus manifest entry here");

    auto* kron = app.add_subcommand("kron", "Kronecker product of unit lower-triangular 0/1 matrices");
    kron->add_option("a", input, "Matrix Market file")->required();
    kron->add_option("b", input_b, "Matrix Market file")->required();
    kron->add_flag("--graph", as_graph, "Emit the bipartite graph instead of the matrix");
    kron->add_option("-o,--out", out, "Output file (default stdout)");

    auto* selfcheck = app.add_subcommand("selfcheck", "Cross-check the pipeline against the oracles");
    selfcheck->add_option("--pairs", pairs, "Matched pairs per instance")->required();
    selfcheck->add_option("--count", count, "Number of instances")->required();
    selfcheck->add_option("--seed", seed, "Base seed; instance i uses seed + i")->required();
    selfcheck->add_option("--threads", threads, "Worker threads (0: all cores)");
    selfcheck->add_option("--replay-dir", replay_dir, "Where to write the first failing instance");
    selfcheck->add_option("--inject-fault", inject, "Corrupt this instance on purpose (harness test)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }

    try {
        if (*analyze) return cmd_analyze(input, mtx_dir, timing);
        if (*invert) return cmd_invert(input, mtx_dir);
        if (*balance) return cmd_balance(input, of_graph);
        if (*flower) return cmd_flower(input, set);
        if (*poset) {
            if (!boolean && input.empty()) {
                std::cerr << "poset needs an input file or --boolean\n";
                return kUsage;
            }
            return cmd_poset(input, boolean, mobius, mtx_dir);
        }
        if (*gen) return cmd_gen(pairs, p, seed, tree, relabel, out, manifest);
        if (*kron) return cmd_kron(input, input_b, as_graph, out);
        if (*selfcheck) return cmd_selfcheck(pairs, count, seed, threads, replay_dir, inject);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    }
    return kUsage;
}
