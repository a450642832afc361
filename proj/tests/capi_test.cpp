#include <gtest/gtest.h>

#include <cstring>
#include <string>
#include <thread>

#include <json.hpp>

#include "valuerank/valuerank.h"

namespace {

const std::string kFixtures = VALUERANK_FIXTURES;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string take(char* s) {
    std::string out = s ? s : "";
    vr_string_free(s);
    return out;
}

struct Loaded {
    vr_cases* cases = nullptr;
    vr_preferences* prefs = nullptr;
    vr_responses* responses = nullptr;

    Loaded(const std::string& cases_file, const std::string& responses_file) {
        EXPECT_EQ(vr_cases_load(fixture(cases_file).c_str(), &cases), VR_OK) << vr_last_error();
        EXPECT_EQ(vr_preferences_load(fixture("preferences.json").c_str(), cases, &prefs), VR_OK) << vr_last_error();
        EXPECT_EQ(vr_responses_load(fixture(responses_file).c_str(), cases, &responses), VR_OK) << vr_last_error();
    }
    ~Loaded() {
        vr_responses_free(responses);
        vr_preferences_free(prefs);
        vr_cases_free(cases);
    }
};

}  // namespace

TEST(CApi, VersionAndNames) {
    EXPECT_STREQ(vr_version(), "0.1.0");
    vr_method m;
    ASSERT_EQ(vr_method_parse("topsis", &m), VR_OK);
    EXPECT_EQ(m, VR_METHOD_TOPSIS);
    EXPECT_STREQ(vr_method_name(VR_METHOD_AHP), "ahp");
    EXPECT_EQ(vr_method_parse("electre", &m), VR_ERR_VALIDATION);
    EXPECT_NE(std::string(vr_last_error()).find("electre"), std::string::npos);
    vr_variant v;
    ASSERT_EQ(vr_variant_parse("no-scenario", &v), VR_OK);
    EXPECT_EQ(v, VR_VARIANT_NO_SCENARIO);
    EXPECT_STREQ(vr_variant_name(VR_VARIANT_ONLY_ACTION), "only-action");
}

TEST(CApi, LoadAndCount) {
    Loaded in("cases.jsonl", "responses.jsonl");
    EXPECT_EQ(vr_cases_count(in.cases), 4u);
    EXPECT_EQ(vr_cases_dimension_count(in.cases), 6u);
    EXPECT_STREQ(vr_cases_warnings(in.cases), "");
    EXPECT_EQ(vr_responses_count(in.responses), 8u);
    EXPECT_TRUE(vr_preferences_has_subject(in.prefs, "u1"));
    EXPECT_FALSE(vr_preferences_has_subject(in.prefs, "u7"));
}

TEST(CApi, StatusCodes) {
    vr_cases* c = nullptr;
    EXPECT_EQ(vr_cases_load(fixture("missing.jsonl").c_str(), &c), VR_ERR_IO);
    EXPECT_EQ(c, nullptr);
    EXPECT_EQ(vr_cases_load(fixture("corrupt_cases.jsonl").c_str(), &c), VR_ERR_VALIDATION);
    EXPECT_NE(std::string(vr_last_error()).find("corrupt_cases.jsonl:2"), std::string::npos);
    EXPECT_EQ(vr_cases_load(nullptr, &c), VR_ERR_ARGUMENT);
    EXPECT_EQ(vr_cases_load(fixture("cases.jsonl").c_str(), nullptr), VR_ERR_ARGUMENT);

    ASSERT_EQ(vr_cases_load(fixture("empty.jsonl").c_str(), &c), VR_OK);
    EXPECT_NE(std::string(vr_cases_warnings(c)).find("empty"), std::string::npos);
    vr_cases_free(c);
}

TEST(CApi, LastErrorIsPerThread) {
    vr_cases* c = nullptr;
    EXPECT_EQ(vr_cases_load(fixture("missing.jsonl").c_str(), &c), VR_ERR_IO);
    const std::string mine = vr_last_error();
    std::string theirs;
    std::thread([&] {
        vr_method m;
        vr_method_parse("bogus", &m);
        theirs = vr_last_error();
    }).join();
    EXPECT_EQ(std::string(vr_last_error()), mine);
    EXPECT_NE(theirs, mine);
}

TEST(CApi, RankProducesJsonAndTable) {
    Loaded in("cases.jsonl", "responses.jsonl");
    vr_options opts;
    vr_options_default(&opts);
    EXPECT_EQ(opts.w, 0.3);
    EXPECT_EQ(opts.sigmoid_scale, 10.0);
    EXPECT_EQ(opts.method, VR_METHOD_PROMETHEE);
    EXPECT_EQ(opts.jobs, 1u);
    char* js = nullptr;
    char* table = nullptr;
    ASSERT_EQ(vr_rank(in.cases, in.prefs, "u1", &opts, &js, &table), VR_OK) << vr_last_error();
    auto doc = nlohmann::json::parse(take(js));
    EXPECT_EQ(doc["subject_id"], "u1");
    EXPECT_NE(take(table).find("scenario s1"), std::string::npos);

    opts.w = 1.5;
    EXPECT_EQ(vr_rank(in.cases, in.prefs, "u1", &opts, &js, nullptr), VR_ERR_VALIDATION);
    vr_options_default(&opts);
    EXPECT_EQ(vr_rank(in.cases, in.prefs, "nobody", &opts, &js, nullptr), VR_ERR_VALIDATION);
    EXPECT_EQ(vr_rank(nullptr, in.prefs, "u1", &opts, &js, nullptr), VR_ERR_ARGUMENT);
}

TEST(CApi, EvaluateCompareAndPredictions) {
    Loaded in("cases.jsonl", "responses.jsonl");
    vr_options opts;
    vr_options_default(&opts);
    char *js = nullptr, *csv = nullptr, *table = nullptr;
    ASSERT_EQ(vr_evaluate(in.cases, in.prefs, in.responses, &opts, &js, &csv, &table), VR_OK) << vr_last_error();
    EXPECT_EQ(nlohmann::json::parse(take(js))["summary"]["pairs"], 8);
    EXPECT_EQ(take(csv).rfind("subject_id,case_id,os_sim,first_match", 0), 0u);
    take(table);

    ASSERT_EQ(vr_compare_mcdm(in.cases, in.prefs, in.responses, &opts, &js, nullptr, nullptr), VR_OK);
    EXPECT_EQ(nlohmann::json::parse(take(js))["methods"].size(), 4u);

    vr_cases* oc = nullptr;
    vr_responses *pred = nullptr, *ref = nullptr;
    ASSERT_EQ(vr_cases_load(fixture("ossim_cases.jsonl").c_str(), &oc), VR_OK);
    ASSERT_EQ(vr_responses_load(fixture("ossim_predictions.jsonl").c_str(), oc, &pred), VR_OK);
    ASSERT_EQ(vr_responses_load(fixture("ossim_references.jsonl").c_str(), oc, &ref), VR_OK);
    ASSERT_EQ(vr_evaluate_predictions(pred, ref, &js, nullptr, nullptr), VR_OK);
    auto doc = nlohmann::json::parse(take(js));
    EXPECT_NEAR(doc["pairs"][0]["os_sim"].get<double>(), 0.7, 1e-12);
    vr_responses_free(pred);
    vr_responses_free(ref);
    vr_cases_free(oc);
}

TEST(CApi, AccuracyValidateAndHash) {
    const double thresholds[] = {0.2, 0.05};
    char* js = nullptr;
    ASSERT_EQ(vr_assess_accuracy(fixture("predicted_scores.csv").c_str(), fixture("gold_scores.csv").c_str(),
                                 thresholds, 2, &js, nullptr),
              VR_OK);
    auto doc = nlohmann::json::parse(take(js));
    EXPECT_NEAR(doc["mae"].get<double>(), 0.146667, 1e-6);
    EXPECT_EQ(vr_assess_accuracy(fixture("predicted_bad.csv").c_str(), fixture("gold_scores.csv").c_str(),
                                 thresholds, 2, &js, nullptr),
              VR_ERR_VALIDATION);

    size_t violations = 99;
    char* report = nullptr;
    ASSERT_EQ(vr_validate_files(fixture("cases.jsonl").c_str(), fixture("preferences.json").c_str(), nullptr,
                                &violations, &report),
              VR_OK);
    EXPECT_EQ(violations, 0u);
    EXPECT_NE(take(report).find("0 violations"), std::string::npos);
    ASSERT_EQ(vr_validate_files(fixture("corrupt_cases.jsonl").c_str(), "", "", &violations, nullptr), VR_OK);
    EXPECT_EQ(violations, 2u);
    EXPECT_EQ(vr_validate_files(fixture("gone.jsonl").c_str(), "", "", &violations, nullptr), VR_ERR_IO);

    char* hex = nullptr;
    ASSERT_EQ(vr_file_sha256(fixture("empty.jsonl").c_str(), &hex), VR_OK);
    EXPECT_EQ(take(hex), "e3b0c44298fc1c149afbf4c8996fb92427ae41e4649b934ca495991b7852b855");
}

TEST(CApi, NumericEntryPoints) {
    const double scores[] = {0.2, -0.1, 0.5, 0.3, -0.4, 0.0};
    const double weights[] = {0.8, 0.3};
    size_t order[3];
    double key[3];
    ASSERT_EQ(vr_rank_matrix(VR_METHOD_PROMETHEE, scores, 3, 2, weights, order, key), VR_OK);
    EXPECT_EQ(order[0], 1u);
    EXPECT_EQ(order[1], 0u);
    EXPECT_EQ(order[2], 2u);
    EXPECT_NEAR(key[0], 0.019870977253891576665, 1e-12);
    EXPECT_NEAR(key[0] + key[1] + key[2], 0.0, 1e-12);
    EXPECT_EQ(vr_rank_matrix(VR_METHOD_MAUT, scores, 0, 2, weights, order, nullptr), VR_ERR_VALIDATION);
    EXPECT_EQ(vr_rank_matrix(VR_METHOD_MAUT, nullptr, 3, 2, weights, order, nullptr), VR_ERR_ARGUMENT);

    const char* pred[] = {"5", "3", "1", "4", "2"};
    const char* ref[] = {"3", "1", "5", "4", "2"};
    double s = 0.0;
    ASSERT_EQ(vr_os_sim(pred, ref, 5, &s), VR_OK);
    EXPECT_NEAR(s, 0.7, 1e-12);

    const char* a[] = {"1", "2", "3", "4", "5"};
    const char* b[] = {"1", "2", "3", "5", "4"};
    double rho = 0.0, tau = 0.0;
    ASSERT_EQ(vr_rank_correlation(a, b, 5, &rho, &tau), VR_OK);
    EXPECT_NEAR(rho, 0.9, 1e-12);
    EXPECT_NEAR(tau, 0.8, 1e-12);
    const char* dup[] = {"1", "1", "3", "4", "5"};
    EXPECT_EQ(vr_rank_correlation(a, dup, 5, &rho, &tau), VR_ERR_VALIDATION);
}

TEST(CApi, FreeAcceptsNull) {
    vr_cases_free(nullptr);
    vr_preferences_free(nullptr);
    vr_responses_free(nullptr);
    vr_string_free(nullptr);
    SUCCEED();
}
