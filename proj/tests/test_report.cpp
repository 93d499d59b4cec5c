#include <gtest/gtest.h>

#include <filesystem>

#include "bipinv/error.hpp"
#include "bipinv/report.hpp"
#include "bipinv/selfcheck.hpp"

using namespace bipinv;

namespace {

BipartiteGraph fixture(const std::string& name) { return read_graph(std::string(BIPINV_FIXTURES) + "/" + name); }

std::filesystem::path scratch(const std::string& name) {
    auto dir = std::filesystem::temp_directory_path() / ("bipinv_test_report_" + name);
    std::filesystem::remove_all(dir);
    return dir;
}

}  // namespace

TEST(AnalysisReport, P4Fields) {
    auto g = fixture("p4.edges");
    auto r = analysis_report(g);
    EXPECT_EQ(r["status"], "nonnegative");
    EXPECT_EQ(r["det"], 1);
    EXPECT_EQ(r["pairs"], 2);
    EXPECT_EQ(r["D"], nlohmann::json({1, -1}));
    EXPECT_EQ(r["zeta"], nlohmann::json({1, 1, -1, -1}));
    EXPECT_EQ(r["matching"], nlohmann::json::parse("[[0,1],[2,3]]"));
    EXPECT_EQ(matrix_from_ref(r["B_plus"]), (IntegerMatrix{{1, 0}, {1, 1}}));
    EXPECT_FALSE(r.contains("timing_ms"));
    EXPECT_EQ(validate_report(g, r), "");
}

TEST(AnalysisReport, W8FlowerAndStability) {
    auto g = fixture("w8.edges");
    auto a = analysis_report(g).dump();
    auto b = analysis_report(g).dump();
    EXPECT_EQ(a, b);
    auto r = nlohmann::json::parse(a);
    EXPECT_EQ(r["status"], "odd_flower");
    EXPECT_EQ(r["flower"]["order"], nlohmann::json({0, 3, 2, 5, 4, 7}));
    EXPECT_EQ(r["flower"]["negative_pairs"], 3);
    EXPECT_FALSE(r.contains("B_plus"));
}

TEST(AnalysisReport, TimingOnRequest) {
    ReportOptions options;
    options.timing = true;
    EXPECT_TRUE(analysis_report(fixture("k2.edges"), options).contains("timing_ms"));
}

TEST(AnalysisReport, MatrixFilesWhenAsked) {
    auto dir = scratch("mtx");
    ReportOptions options;
    options.mtx_dir = dir.string();
    auto g = fixture("p4.edges");
    auto r = analysis_report(g, options);
    EXPECT_TRUE(std::filesystem::exists(dir / "B.mtx"));
    EXPECT_TRUE(std::filesystem::exists(dir / "B_inv.mtx"));
    EXPECT_TRUE(std::filesystem::exists(dir / "B_plus.mtx"));
    EXPECT_TRUE(r["B"].contains("path"));
    EXPECT_EQ(validate_report(g, r), "");
    std::filesystem::remove_all(dir);
}

TEST(ValidateReport, CatchesTampering) {
    auto g = fixture("p4.edges");
    auto r = analysis_report(g);
    auto bad_d = r;
    bad_d["D"] = {1, 1};
    EXPECT_NE(validate_report(g, bad_d), "");
    auto bad_digest = r;
    bad_digest["input_digest"] = "0000000000000000";
    EXPECT_NE(validate_report(g, bad_digest), "");

    auto w8 = fixture("w8.edges");
    auto f = analysis_report(w8);
    f["flower"]["negative_pairs"] = 1;
    EXPECT_NE(validate_report(w8, f), "");
    EXPECT_NE(validate_report(w8, nlohmann::json::object()), "");
}

TEST(ErrorReport, Shape) {
    try {
        analysis_report(fixture("c4.edges"));
        FAIL();
    } catch (const Error& e) {
        auto j = error_report(e);
        EXPECT_EQ(j["status"], "error");
        EXPECT_EQ(j["error"]["code"], "NotUnique");
        EXPECT_EQ(j["error"]["stage"], "matching");
        EXPECT_EQ(j["error"]["witness"].size(), 4u);
    }
    EXPECT_STREQ(error_stage(ErrorCode::NotBipartite), "bipartition");
}

TEST(PosetReport, ChainWithMobius) {
    auto r = poset_report(chain(3), true);
    EXPECT_EQ(r["status"], "nonnegative");
    EXPECT_EQ(matrix_from_ref(r["mobius"]), (IntegerMatrix{{1, 0, 0}, {-1, 1, 0}, {0, -1, 1}}));
    EXPECT_FALSE(poset_report(chain(3), false).contains("mobius"));
}

TEST(Selfcheck, TrivialInstance) {
    SelfcheckOptions o;
    o.pairs = 1;
    o.count = 1;
    o.seed = 5;
    auto result = run_selfcheck(o);
    EXPECT_TRUE(result.ok());
    EXPECT_NE(result.log().find("1/1 consistent"), std::string::npos);
}

TEST(Selfcheck, ThreadCountDoesNotChangeTheLog) {
    SelfcheckOptions o;
    o.pairs = 5;
    o.count = 24;
    o.seed = 100;
    o.threads = 1;
    const auto serial = run_selfcheck(o).log();
    o.threads = 6;
    EXPECT_EQ(run_selfcheck(o).log(), serial);
    EXPECT_NE(serial.find("24/24 consistent"), std::string::npos);
}

TEST(Selfcheck, InjectedFaultWritesReplay) {
    auto dir = scratch("replay");
    SelfcheckOptions o;
    o.pairs = 4;
    o.count = 6;
    o.seed = 1;
    o.replay_dir = dir.string();
    o.inject_fault = 2;
    auto result = run_selfcheck(o);
    EXPECT_FALSE(result.ok());
    EXPECT_EQ(result.consistent, 5u);
    EXPECT_FALSE(result.instances[2].consistent);
    ASSERT_FALSE(result.replay_path.empty());
    EXPECT_TRUE(std::filesystem::exists(result.replay_path));
    EXPECT_NE(result.log().find("5/6 consistent"), std::string::npos);
    std::filesystem::remove_all(dir);
}

TEST(Selfcheck, RecordsAreReproducible) {
    SelfcheckOptions o;
    o.pairs = 3;
    o.seed = 9;
    auto r = selfcheck_record(o, 3);
    EXPECT_EQ(r.generator, "matched_tree");
    EXPECT_EQ(r.seed, 12u);
    EXPECT_EQ(oracle::regenerate(r), oracle::regenerate(selfcheck_record(o, 3)));
}
