#include "bipinv/bipinv.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <optional>
#include <string>

#include "bipinv/balance.hpp"
#include "bipinv/error.hpp"
#include "bipinv/linalg.hpp"
#include "bipinv/oracle.hpp"
#include "bipinv/poset.hpp"
#include "bipinv/report.hpp"
#include "bipinv/selfcheck.hpp"

struct bipinv_graph {
    bipinv::BipartiteGraph g;
};

struct bipinv_matrix {
    bipinv::IntegerMatrix m;
};

struct bipinv_report {
    nlohmann::json j;
    bipinv_verdict verdict;
};

struct bipinv_poset {
    bipinv::Poset p;
};

namespace {

using bipinv::ErrorCode;

static_assert(static_cast<int>(ErrorCode::Internal) + 1 == BIPINV_E_INTERNAL);

thread_local std::string last_message;
thread_local std::optional<nlohmann::json> last_report;

bipinv_status fail(bipinv_status status, const std::string& message, nlohmann::json detail = nullptr) {
    last_message = message;
    if (detail.is_null()) {
        detail = {{"code", bipinv_status_name(status)}, {"stage", "api"}, {"message", message},
                  {"witness", nlohmann::json::array()}};
    }
    last_report = std::move(detail);
    return status;
}

template <class Fn>
bipinv_status guard(Fn&& fn) {
    try {
        last_message.clear();
        last_report.reset();
        return fn();
    } catch (const bipinv::Error& e) {
        return fail(static_cast<bipinv_status>(static_cast<int>(e.code()) + 1), e.what(),
                    bipinv::error_report(e).at("error"));
    } catch (const nlohmann::json::exception& e) {
        return fail(BIPINV_E_SYNTAX, e.what());
    } catch (const std::bad_alloc&) {
        return fail(BIPINV_E_OUT_OF_MEMORY, "out of memory");
    } catch (const std::exception& e) {
        return fail(BIPINV_E_INTERNAL, e.what());
    }
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

bipinv_status null_argument() { return fail(BIPINV_E_INVALID_ARGUMENT, "null argument"); }

template <class Handle, class Value>
Handle* wrap(Value&& v) {
    return new Handle{std::forward<Value>(v)};
}

}  // namespace

extern "C" {

const char* bipinv_version(void) { return "1.0.0"; }

const char* bipinv_status_name(bipinv_status status) {
    if (status == BIPINV_OK) return "OK";
    if (status >= BIPINV_E_SYNTAX && status <= BIPINV_E_INTERNAL) {
        return bipinv::error_code_name(static_cast<ErrorCode>(status - 1));
    }
    if (status == BIPINV_E_INVALID_ARGUMENT) return "InvalidArgument";
    if (status == BIPINV_E_OUT_OF_MEMORY) return "OutOfMemory";
    return "Unknown";
}

const char* bipinv_last_error(void) { return last_message.c_str(); }

char* bipinv_last_error_json(void) {
    if (!last_report) return nullptr;
    try {
        return dup(last_report->dump());
    } catch (...) {
        return nullptr;
    }
}

void bipinv_string_free(char* s) { std::free(s); }

bipinv_status bipinv_graph_parse(const char* text, bipinv_graph** out) {
    if (!text || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_graph>(bipinv::parse_graph(text));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_graph_read(const char* path, bipinv_graph** out) {
    if (!path || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_graph>(bipinv::read_graph(path));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_graph_from_biadjacency(const bipinv_matrix* b, bipinv_graph** out) {
    if (!b || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_graph>(bipinv::graph_from_biadjacency(b->m));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_graph_generate(const char* generator, size_t pairs, double p, uint64_t seed,
                                    uint64_t relabel_seed, bipinv_graph** out) {
    if (!generator || !out) return null_argument();
    return guard([&] {
        bipinv::oracle::CorpusRecord record{generator, pairs, p, seed, relabel_seed};
        *out = wrap<bipinv_graph>(bipinv::oracle::regenerate(record));
        return BIPINV_OK;
    });
}

void bipinv_graph_free(bipinv_graph* g) { delete g; }

size_t bipinv_graph_vertex_count(const bipinv_graph* g) { return g ? g->g.vertex_count() : 0; }

size_t bipinv_graph_edge_count(const bipinv_graph* g) { return g ? g->g.edge_count() : 0; }

bipinv_status bipinv_graph_to_text(const bipinv_graph* g, char** out) {
    if (!g || !out) return null_argument();
    return guard([&] {
        *out = dup(bipinv::to_edge_list(g->g));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_graph_digest(const bipinv_graph* g, char** out) {
    if (!g || !out) return null_argument();
    return guard([&] {
        *out = dup(bipinv::graph_digest(g->g));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_matrix_parse(const char* text, bipinv_matrix** out) {
    if (!text || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_matrix>(bipinv::parse_matrix_market(text));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_matrix_read(const char* path, bipinv_matrix** out) {
    if (!path || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_matrix>(bipinv::read_matrix_market(path));
        return BIPINV_OK;
    });
}

void bipinv_matrix_free(bipinv_matrix* m) { delete m; }

size_t bipinv_matrix_rows(const bipinv_matrix* m) { return m ? m->m.rows() : 0; }

size_t bipinv_matrix_cols(const bipinv_matrix* m) { return m ? m->m.cols() : 0; }

bipinv_status bipinv_matrix_entry(const bipinv_matrix* m, size_t i, size_t j, int64_t* out) {
    if (!m || !out) return null_argument();
    if (i >= m->m.rows() || j >= m->m.cols()) return fail(BIPINV_E_INVALID_ARGUMENT, "index out of range");
    const auto& v = m->m(i, j);
    if (!v.fits_slong_p()) return fail(BIPINV_E_TOO_LARGE, "entry does not fit in 64 bits");
    *out = v.get_si();
    return BIPINV_OK;
}

bipinv_status bipinv_matrix_entry_text(const bipinv_matrix* m, size_t i, size_t j, char** out) {
    if (!m || !out) return null_argument();
    if (i >= m->m.rows() || j >= m->m.cols()) return fail(BIPINV_E_INVALID_ARGUMENT, "index out of range");
    return guard([&] {
        *out = dup(m->m(i, j).get_str());
        return BIPINV_OK;
    });
}

bipinv_status bipinv_matrix_to_text(const bipinv_matrix* m, char** out) {
    if (!m || !out) return null_argument();
    return guard([&] {
        *out = dup(bipinv::to_matrix_market(m->m));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_matrix_invert(const bipinv_matrix* b, bipinv_matrix** out) {
    if (!b || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_matrix>(bipinv::invert_biadjacency(b->m));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_matrix_kron(const bipinv_matrix* a, const bipinv_matrix* b, bipinv_matrix** out) {
    if (!a || !b || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_matrix>(bipinv::oracle::kronecker_product(a->m, b->m));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_analyze(const bipinv_graph* g, const char* mtx_dir, int with_timing, bipinv_report** out) {
    if (!g || !out) return null_argument();
    return guard([&] {
        bipinv::ReportOptions options;
        if (mtx_dir) options.mtx_dir = mtx_dir;
        options.timing = with_timing != 0;
        auto j = bipinv::analysis_report(g->g, options);
        const auto verdict = j.at("status") == "nonnegative" ? BIPINV_VERDICT_NONNEGATIVE : BIPINV_VERDICT_ODD_FLOWER;
        *out = new bipinv_report{std::move(j), verdict};
        return BIPINV_OK;
    });
}

void bipinv_report_free(bipinv_report* r) { delete r; }

bipinv_status bipinv_report_verdict(const bipinv_report* r, bipinv_verdict* out) {
    if (!r || !out) return null_argument();
    *out = r->verdict;
    return BIPINV_OK;
}

bipinv_status bipinv_report_json(const bipinv_report* r, char** out) {
    if (!r || !out) return null_argument();
    return guard([&] {
        *out = dup(r->j.dump(2) + "\n");
        return BIPINV_OK;
    });
}

bipinv_status bipinv_report_validate(const bipinv_graph* g, const char* report_json) {
    if (!g || !report_json) return null_argument();
    return guard([&] {
        const auto problem = bipinv::validate_report(g->g, nlohmann::json::parse(report_json));
        if (!problem.empty()) return fail(BIPINV_E_PRECONDITION, problem);
        return BIPINV_OK;
    });
}

bipinv_status bipinv_balance(const char* weighted_text, int* balanced, char** json_out) {
    if (!weighted_text || !balanced || !json_out) return null_argument();
    return guard([&] {
        const auto w = bipinv::parse_weighted_graph(weighted_text);
        const auto verdict = bipinv::is_balanced(w);
        auto j = bipinv::to_json(verdict);
        if (!verdict.balanced) j["chordless_cycle"] = bipinv::chordless_negative_cycle(w, verdict.negative_cycle);
        *balanced = verdict.balanced ? 1 : 0;
        *json_out = dup(j.dump() + "\n");
        return BIPINV_OK;
    });
}

bipinv_status bipinv_inverse_graph(const bipinv_graph* g, char** out) {
    if (!g || !out) return null_argument();
    return guard([&] {
        const auto m = bipinv::unique_perfect_matching(g->g);
        *out = dup(bipinv::to_weighted_edge_list(bipinv::inverse_graph(g->g, m)));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_flower(const bipinv_graph* g, const int* vertices, size_t count, int* is_flower,
                            char** json_out) {
    if (!g || !is_flower || !json_out) return null_argument();
    return guard([&] {
        const auto m = bipinv::unique_perfect_matching(g->g);
        nlohmann::json j;
        if (vertices) {
            const auto check = bipinv::flower_check(g->g, m, std::span<const int>(vertices, count));
            if (check) {
                j = {{"flower", true}, {"certificate", bipinv::to_json(*check.certificate)}};
            } else {
                j = {{"flower", false}, {"reason", check.reason}};
            }
        } else if (auto cert = bipinv::find_odd_flower(g->g, m)) {
            j = {{"flower", true}, {"certificate", bipinv::to_json(*cert)}};
        } else {
            j = {{"flower", false}, {"reason", "the inverse is balanced, so there is no odd flower"}};
        }
        *is_flower = j.at("flower").get<bool>() ? 1 : 0;
        *json_out = dup(j.dump(2) + "\n");
        return BIPINV_OK;
    });
}

bipinv_status bipinv_poset_parse(const char* text, bipinv_poset** out) {
    if (!text || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_poset>(bipinv::parse_poset(text));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_poset_boolean(size_t atoms, bipinv_poset** out) {
    if (!out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_poset>(bipinv::boolean_lattice(atoms));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_poset_chain(size_t k, bipinv_poset** out) {
    if (!out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_poset>(bipinv::chain(k));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_poset_from_graph(const bipinv_graph* g, bipinv_poset** out) {
    if (!g || !out) return null_argument();
    return guard([&] {
        const auto m = bipinv::unique_perfect_matching(g->g);
        *out = wrap<bipinv_poset>(bipinv::poset_from_dag(bipinv::build_dag(g->g, m)));
        return BIPINV_OK;
    });
}

void bipinv_poset_free(bipinv_poset* p) { delete p; }

size_t bipinv_poset_size(const bipinv_poset* p) { return p ? p->p.size() : 0; }

bipinv_status bipinv_poset_zeta(const bipinv_poset* p, bipinv_matrix** out) {
    if (!p || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_matrix>(bipinv::zeta_matrix(p->p));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_poset_mobius(const bipinv_poset* p, bipinv_matrix** out) {
    if (!p || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_matrix>(bipinv::mobius_matrix(p->p));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_poset_mu(const bipinv_poset* p, int a, int b, int64_t* out) {
    if (!p || !out) return null_argument();
    const auto k = static_cast<int>(p->p.size());
    if (a < 0 || b < 0 || a >= k || b >= k) return fail(BIPINV_E_INVALID_ARGUMENT, "element out of range");
    return guard([&] {
        const auto order = p->p.linear_extension();
        std::vector<std::size_t> pos(order.size());
        for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
        const auto mob = bipinv::mobius_matrix(p->p);
        const auto& v = mob(pos[b], pos[a]);
        if (!v.fits_slong_p()) return fail(BIPINV_E_TOO_LARGE, "mu does not fit in 64 bits");
        *out = v.get_si();
        return BIPINV_OK;
    });
}

bipinv_status bipinv_poset_report(const bipinv_poset* p, int mobius, const char* mtx_dir, char** json_out) {
    if (!p || !json_out) return null_argument();
    return guard([&] {
        bipinv::ReportOptions options;
        if (mtx_dir) options.mtx_dir = mtx_dir;
        *json_out = dup(bipinv::poset_report(p->p, mobius != 0, options).dump(2) + "\n");
        return BIPINV_OK;
    });
}

bipinv_status bipinv_poset_to_graph(const bipinv_poset* p, bipinv_graph** out) {
    if (!p || !out) return null_argument();
    return guard([&] {
        *out = wrap<bipinv_graph>(bipinv::poset_to_graph(p->p));
        return BIPINV_OK;
    });
}

bipinv_status bipinv_manifest_entry(const char* generator, size_t pairs, double p, uint64_t seed,
                                    uint64_t relabel_seed, char** json_out) {
    if (!generator || !json_out) return null_argument();
    return guard([&] {
        bipinv::oracle::CorpusRecord record{generator, pairs, p, seed, relabel_seed};
        bipinv::oracle::regenerate(record);
        *json_out = dup(bipinv::oracle::to_json(std::vector{record}).dump(2) + "\n");
        return BIPINV_OK;
    });
}

bipinv_status bipinv_selfcheck(const bipinv_selfcheck_options* options, size_t* consistent, char** log_out) {
    if (!options || !consistent || !log_out) return null_argument();
    return guard([&] {
        bipinv::SelfcheckOptions o;
        o.pairs = options->pairs;
        o.count = options->count;
        o.seed = options->seed;
        o.threads = options->threads;
        if (options->replay_dir) o.replay_dir = options->replay_dir;
        if (options->inject_fault >= 0) o.inject_fault = static_cast<std::size_t>(options->inject_fault);
        const auto result = bipinv::run_selfcheck(o);
        *consistent = result.consistent;
        *log_out = dup(result.log());
        return BIPINV_OK;
    });
}

}  // extern "C"
