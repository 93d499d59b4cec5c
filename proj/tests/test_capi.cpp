// Links only the shared library and its C header.
#include <gtest/gtest.h>

#include <string>

#include "bipinv/bipinv.h"

namespace {

const std::string kFixtures = BIPINV_FIXTURES;

std::string take(char* s) {
    std::string out = s ? s : "";
    bipinv_string_free(s);
    return out;
}

bipinv_graph* load(const std::string& name) {
    bipinv_graph* g = nullptr;
    EXPECT_EQ(bipinv_graph_read((kFixtures + "/" + name).c_str(), &g), BIPINV_OK);
    return g;
}

}  // namespace

TEST(CApi, StatusNames) {
    EXPECT_STREQ(bipinv_status_name(BIPINV_OK), "OK");
    EXPECT_STREQ(bipinv_status_name(BIPINV_E_NOT_UNIQUE), "NotUnique");
    EXPECT_STREQ(bipinv_status_name(BIPINV_E_SYNTAX), "SyntaxError");
    EXPECT_STREQ(bipinv_status_name(BIPINV_E_INVALID_ARGUMENT), "InvalidArgument");
    EXPECT_STRNE(bipinv_version(), "");
}

TEST(CApi, ErrorsCarryDetail) {
    bipinv_graph* g = nullptr;
    EXPECT_EQ(bipinv_graph_parse("4 4\ne 0 1\ne 1 2\ne 2 3\ne 3 0\n", &g), BIPINV_OK);
    bipinv_report* r = nullptr;
    EXPECT_EQ(bipinv_analyze(g, nullptr, 0, &r), BIPINV_E_NOT_UNIQUE);
    EXPECT_EQ(r, nullptr);
    EXPECT_NE(std::string(bipinv_last_error()).find("not unique"), std::string::npos);
    const std::string detail = take(bipinv_last_error_json());
    EXPECT_NE(detail.find("\"stage\":\"matching\""), std::string::npos);
    EXPECT_NE(detail.find("\"witness\":[0,1,2,3]"), std::string::npos);
    bipinv_graph_free(g);

    EXPECT_EQ(bipinv_graph_parse("3 3\ne 0 1\ne 1 2\ne 0 2\n", &g), BIPINV_E_NOT_BIPARTITE);
    EXPECT_EQ(bipinv_graph_parse("oops", &g), BIPINV_E_SYNTAX);
    EXPECT_EQ(bipinv_graph_read("/nonexistent/file", &g), BIPINV_E_IO);
    EXPECT_EQ(bipinv_graph_parse(nullptr, &g), BIPINV_E_INVALID_ARGUMENT);
}

TEST(CApi, SuccessClearsLastError) {
    bipinv_graph* g = nullptr;
    bipinv_graph_parse("oops", &g);
    g = load("k2.edges");
    EXPECT_STREQ(bipinv_last_error(), "");
    EXPECT_EQ(bipinv_last_error_json(), nullptr);
    bipinv_graph_free(g);
}

TEST(CApi, AnalyzeVerdicts) {
    bipinv_graph* p4 = load("p4.edges");
    bipinv_report* r = nullptr;
    ASSERT_EQ(bipinv_analyze(p4, nullptr, 0, &r), BIPINV_OK);
    bipinv_verdict v;
    ASSERT_EQ(bipinv_report_verdict(r, &v), BIPINV_OK);
    EXPECT_EQ(v, BIPINV_VERDICT_NONNEGATIVE);
    char* json = nullptr;
    ASSERT_EQ(bipinv_report_json(r, &json), BIPINV_OK);
    const std::string text = take(json);
    EXPECT_EQ(bipinv_report_validate(p4, text.c_str()), BIPINV_OK);
    bipinv_report_free(r);

    bipinv_graph* w8 = load("w8.edges");
    ASSERT_EQ(bipinv_analyze(w8, nullptr, 0, &r), BIPINV_OK);
    bipinv_report_verdict(r, &v);
    EXPECT_EQ(v, BIPINV_VERDICT_ODD_FLOWER);
    bipinv_report_free(r);

    EXPECT_EQ(bipinv_report_validate(w8, text.c_str()), BIPINV_E_PRECONDITION);
    EXPECT_EQ(bipinv_report_validate(w8, "not json"), BIPINV_E_SYNTAX);
    bipinv_graph_free(p4);
    bipinv_graph_free(w8);
}

TEST(CApi, InvertAndEntries) {
    bipinv_matrix* b = nullptr;
    ASSERT_EQ(bipinv_matrix_read((kFixtures + "/w8_B.mtx").c_str(), &b), BIPINV_OK);
    bipinv_matrix* inv = nullptr;
    ASSERT_EQ(bipinv_matrix_invert(b, &inv), BIPINV_OK);
    const int64_t expected[4][4] = {{1, 0, 0, 0}, {-1, 1, 0, 0}, {0, -1, 1, 0}, {1, 0, -1, 1}};
    for (size_t i = 0; i < 4; ++i)
        for (size_t j = 0; j < 4; ++j) {
            int64_t x = 99;
            ASSERT_EQ(bipinv_matrix_entry(inv, i, j, &x), BIPINV_OK);
            EXPECT_EQ(x, expected[i][j]);
        }
    int64_t x;
    EXPECT_EQ(bipinv_matrix_entry(inv, 4, 0, &x), BIPINV_E_INVALID_ARGUMENT);
    bipinv_matrix_free(inv);
    bipinv_matrix_free(b);
}

TEST(CApi, HugeEntriesNeedText) {
    bipinv_matrix* m = nullptr;
    ASSERT_EQ(bipinv_matrix_parse("%%MatrixMarket matrix coordinate integer general\n1 1 1\n1 1 "
                                  "123456789012345678901234567890\n",
                                  &m),
              BIPINV_OK);
    int64_t x;
    EXPECT_EQ(bipinv_matrix_entry(m, 0, 0, &x), BIPINV_E_TOO_LARGE);
    char* text = nullptr;
    ASSERT_EQ(bipinv_matrix_entry_text(m, 0, 0, &text), BIPINV_OK);
    EXPECT_EQ(take(text), "123456789012345678901234567890");
    bipinv_matrix_free(m);
}

TEST(CApi, Kronecker) {
    bipinv_matrix* a = nullptr;
    ASSERT_EQ(bipinv_matrix_read((kFixtures + "/p4_B.mtx").c_str(), &a), BIPINV_OK);
    bipinv_matrix* k = nullptr;
    ASSERT_EQ(bipinv_matrix_kron(a, a, &k), BIPINV_OK);
    EXPECT_EQ(bipinv_matrix_rows(k), 4u);
    bipinv_graph* g = nullptr;
    ASSERT_EQ(bipinv_graph_from_biadjacency(k, &g), BIPINV_OK);
    EXPECT_EQ(bipinv_graph_edge_count(g), 9u);
    bipinv_graph_free(g);
    bipinv_matrix_free(k);
    bipinv_matrix_free(a);
}

TEST(CApi, BalanceAndFlower) {
    int balanced = -1;
    char* json = nullptr;
    ASSERT_EQ(bipinv_balance("3 3\nw 0 1 -1\nw 1 2 -1\nw 0 2 -1\n", &balanced, &json), BIPINV_OK);
    EXPECT_EQ(balanced, 0);
    EXPECT_NE(take(json).find("\"chordless_cycle\":[0,1,2]"), std::string::npos);

    bipinv_graph* w8 = load("w8.edges");
    const int s[] = {0, 3, 2, 5, 4, 7};
    int is_flower = 0;
    ASSERT_EQ(bipinv_flower(w8, s, 6, &is_flower, &json), BIPINV_OK);
    EXPECT_EQ(is_flower, 1);
    EXPECT_NE(take(json).find("\"negative_pairs\": 3"), std::string::npos);
    const int two[] = {0, 1};
    EXPECT_EQ(bipinv_flower(w8, two, 2, &is_flower, &json), BIPINV_E_SIZE_TOO_SMALL);
    bipinv_graph_free(w8);
}

TEST(CApi, Posets) {
    bipinv_poset* p = nullptr;
    ASSERT_EQ(bipinv_poset_boolean(3, &p), BIPINV_OK);
    EXPECT_EQ(bipinv_poset_size(p), 8u);
    int64_t mu = 0;
    ASSERT_EQ(bipinv_poset_mu(p, 0, 7, &mu), BIPINV_OK);
    EXPECT_EQ(mu, -1);
    ASSERT_EQ(bipinv_poset_mu(p, 1, 3, &mu), BIPINV_OK);
    EXPECT_EQ(mu, -1);
    ASSERT_EQ(bipinv_poset_mu(p, 1, 2, &mu), BIPINV_OK);
    EXPECT_EQ(mu, 0);
    bipinv_poset_free(p);

    EXPECT_EQ(bipinv_poset_parse("2\nle 0 1\nle 1 0\n", &p), BIPINV_E_INVALID_POSET);
    bipinv_graph* w8 = load("w8.edges");
    ASSERT_EQ(bipinv_poset_from_graph(w8, &p), BIPINV_OK);
    bipinv_matrix* z = nullptr;
    ASSERT_EQ(bipinv_poset_zeta(p, &z), BIPINV_OK);
    int64_t corner = 0;
    bipinv_matrix_entry(z, 3, 0, &corner);
    EXPECT_EQ(corner, 1);
    bipinv_matrix_free(z);
    bipinv_poset_free(p);
    bipinv_graph_free(w8);
}

TEST(CApi, GenerateIsDeterministic) {
    bipinv_graph* a = nullptr;
    bipinv_graph* b = nullptr;
    ASSERT_EQ(bipinv_graph_generate("unique_pm", 4, 0.5, 1, 0, &a), BIPINV_OK);
    ASSERT_EQ(bipinv_graph_generate("unique_pm", 4, 0.5, 1, 0, &b), BIPINV_OK);
    char* ta = nullptr;
    char* tb = nullptr;
    bipinv_graph_to_text(a, &ta);
    bipinv_graph_to_text(b, &tb);
    EXPECT_EQ(take(ta), take(tb));
    bipinv_graph_free(a);
    bipinv_graph_free(b);
    EXPECT_EQ(bipinv_graph_generate("bogus", 4, 0.5, 1, 0, &a), BIPINV_E_SYNTAX);
}

TEST(CApi, Selfcheck) {
    bipinv_selfcheck_options o{3, 8, 42, 2, nullptr, -1};
    size_t consistent = 0;
    char* log = nullptr;
    ASSERT_EQ(bipinv_selfcheck(&o, &consistent, &log), BIPINV_OK);
    EXPECT_EQ(consistent, 8u);
    EXPECT_NE(take(log).find("8/8 consistent"), std::string::npos);
}
