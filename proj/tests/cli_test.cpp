#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

const std::string kFixtures = VALUERANK_FIXTURES;
const std::string kCli = VALUERANK_CLI;

std::string fixture(const std::string& name) { return kFixtures + "/" + name; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

struct Outcome {
    int code = -1;
    std::string out;
    std::string err;
};

class CliTest : public ::testing::Test {
protected:
    fs::path dir;

    void SetUp() override {
        dir = fs::temp_directory_path() / ("valuerank_cli_" + std::to_string(std::random_device{}()));
        fs::create_directories(dir);
    }
    void TearDown() override { fs::remove_all(dir); }

    Outcome run(const std::string& args, const std::string& env = "") {
        const auto out = dir / "stdout.txt";
        const auto err = dir / "stderr.txt";
        const std::string cmd = env + " '" + kCli + "' " + args + " >'" + out.string() + "' 2>'" + err.string() + "'";
        const int status = std::system(cmd.c_str());
        Outcome r;
        r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
        r.out = slurp(out);
        r.err = slurp(err);
        return r;
    }

    std::string rank_args(const std::string& extra = "") const {
        return "rank --cases " + fixture("cases.jsonl") + " --preferences " + fixture("preferences.json") +
               " --subject u1 " + extra;
    }
};

}  // namespace

TEST_F(CliTest, RankTableAndJson) {
    auto table = run(rank_args());
    ASSERT_EQ(table.code, 0) << table.err;
    EXPECT_NE(table.out.find("scenario s1"), std::string::npos);

    auto js = run(rank_args("--json"));
    ASSERT_EQ(js.code, 0) << js.err;
    auto doc = json::parse(js.out);
    for (const auto& c : doc["cases"]) {
        double sum = 0.0;
        for (const auto& a : c["actions"]) sum += a["score"].get<double>();
        EXPECT_NEAR(sum, 0.0, 1e-9);
    }
}

TEST_F(CliTest, WeightOutOfRangeIsUsageError) {
    auto r = run(rank_args("--w 1.5"));
    EXPECT_EQ(r.code, 1);
    EXPECT_FALSE(r.err.empty());
    EXPECT_EQ(run(rank_args("--method electre")).code, 1);
    EXPECT_EQ(run(rank_args("--variant none")).code, 1);
    EXPECT_EQ(run("rank --cases " + fixture("cases.jsonl")).code, 1);
}

TEST_F(CliTest, MissingFileIsIoError) {
    auto r = run("rank --cases " + fixture("nope.jsonl") + " --preferences " + fixture("preferences.json"));
    EXPECT_EQ(r.code, 2);
    EXPECT_NE(r.err.find("nope.jsonl"), std::string::npos);
    EXPECT_EQ(run("validate --cases " + fixture("nope.jsonl")).code, 2);
}

TEST_F(CliTest, OnlyActionIgnoresPreferenceFile) {
    auto a = run("rank --cases " + fixture("cases.jsonl") + " --preferences " + fixture("preferences.json") +
                 " --subject u1 --variant only-action --json");
    auto b = run("rank --cases " + fixture("cases.jsonl") + " --preferences " + fixture("preferences_alt.json") +
                 " --subject u1 --variant only-action --json");
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(a.out, b.out);
}

TEST_F(CliTest, JobsDoNotChangeOutput) {
    auto one = run(rank_args("--explain --jobs 1 --json"));
    auto eight = run(rank_args("--explain --jobs 8 --json"));
    ASSERT_EQ(one.code, 0) << one.err;
    EXPECT_EQ(one.out, eight.out);
}

TEST_F(CliTest, OutDirectoryGetsManifest) {
    const auto out = dir / "run";
    auto r = run(rank_args("--explain --out '" + out.string() + "'"));
    ASSERT_EQ(r.code, 0) << r.err;
    ASSERT_TRUE(fs::exists(out / "ranking.json"));
    auto manifest = json::parse(slurp(out / "manifest.json"));
    EXPECT_EQ(manifest["command"], "rank");
    EXPECT_EQ(manifest["config"]["w"], 0.3);
    EXPECT_EQ(manifest["config"]["method"], "promethee");
    EXPECT_EQ(manifest["inputs"].size(), 2u);
    EXPECT_EQ(manifest["inputs"][0]["sha256"].get<std::string>().size(), 64u);

    // Same inputs and flags: byte-identical outputs and manifest.
    const auto again = dir / "again";
    ASSERT_EQ(run(rank_args("--explain --jobs 4 --out '" + again.string() + "'")).code, 0);
    EXPECT_EQ(slurp(out / "ranking.json"), slurp(again / "ranking.json"));
    EXPECT_EQ(slurp(out / "manifest.json"), slurp(again / "manifest.json"));
}

TEST_F(CliTest, EvaluateWritesCsvAndJson) {
    const auto out = dir / "eval";
    auto r = run("evaluate --cases " + fixture("cases.jsonl") + " --preferences " + fixture("preferences.json") +
                 " --responses " + fixture("responses.jsonl") + " --out '" + out.string() + "'");
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("First-Acc"), std::string::npos);
    EXPECT_EQ(slurp(out / "metrics.csv").rfind("subject_id,case_id,os_sim,first_match\n", 0), 0u);
    EXPECT_EQ(json::parse(slurp(out / "metrics.json"))["summary"]["pairs"], 8);
    EXPECT_TRUE(fs::exists(out / "manifest.json"));
}

TEST_F(CliTest, EvaluateExternalPredictionsWorkedExamples) {
    auto r = run("evaluate --cases " + fixture("ossim_cases.jsonl") + " --responses " +
                 fixture("ossim_references.jsonl") + " --predictions " + fixture("ossim_predictions.jsonl") + " --json");
    ASSERT_EQ(r.code, 0) << r.err;
    auto doc = json::parse(r.out);
    EXPECT_NEAR(doc["pairs"][0]["os_sim"].get<double>(), 0.7, 1e-12);
    EXPECT_NEAR(doc["pairs"][1]["os_sim"].get<double>(), 0.95, 1e-12);
    EXPECT_NEAR(doc["pairs"][2]["os_sim"].get<double>(), 0.80, 1e-12);
}

TEST_F(CliTest, EvaluateCrossValidationFailure) {
    auto r = run("evaluate --cases " + fixture("ossim_cases.jsonl") + " --preferences " + fixture("preferences.json") +
                 " --responses " + fixture("responses.jsonl"));
    EXPECT_EQ(r.code, 1);
    EXPECT_NE(r.err.find("responses.jsonl:1"), std::string::npos) << r.err;
}

TEST_F(CliTest, CompareMcdmFourRows) {
    auto r = run("compare-mcdm --cases " + fixture("dominance_cases.jsonl") + " --preferences " +
                 fixture("preferences.json") + " --responses " + fixture("dominance_responses.jsonl"));
    ASSERT_EQ(r.code, 0) << r.err;
    std::istringstream lines(r.out);
    std::string line;
    int rows = 0;
    while (std::getline(lines, line))
        for (const char* m : {"promethee ", "ahp ", "maut ", "topsis "})
            if (line.rfind(m, 0) == 0) ++rows;
    EXPECT_EQ(rows, 4);

    auto empty = run("compare-mcdm --cases " + fixture("cases.jsonl") + " --preferences " +
                     fixture("preferences.json") + " --responses " + fixture("empty.jsonl"));
    EXPECT_EQ(empty.code, 1);
}

TEST_F(CliTest, AssessAccuracy) {
    auto r = run("assess-accuracy --predicted " + fixture("predicted_scores.csv") + " --gold " +
                 fixture("gold_scores.csv"));
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_NE(r.out.find("66.67%"), std::string::npos);
    EXPECT_NE(r.out.find("0.146667"), std::string::npos);

    auto same = run("assess-accuracy --predicted " + fixture("gold_scores.csv") + " --gold " +
                    fixture("gold_scores.csv") + " --json");
    ASSERT_EQ(same.code, 0);
    auto doc = json::parse(same.out);
    EXPECT_EQ(doc["mae"], 0.0);

    auto bad = run("assess-accuracy --predicted " + fixture("predicted_bad.csv") + " --gold " +
                   fixture("gold_scores.csv"));
    EXPECT_EQ(bad.code, 1);
    EXPECT_NE(bad.err.find("predicted_bad.csv:2: column 3"), std::string::npos) << bad.err;
}

TEST_F(CliTest, Validate) {
    auto clean = run("validate --cases " + fixture("cases.jsonl") + " --preferences " + fixture("preferences.json") +
                     " --responses " + fixture("responses.jsonl"));
    EXPECT_EQ(clean.code, 0) << clean.err;
    EXPECT_NE(clean.out.find("0 violations"), std::string::npos);

    auto corrupt = run("validate --cases " + fixture("corrupt_cases.jsonl"));
    EXPECT_EQ(corrupt.code, 1);
    EXPECT_NE((corrupt.out + corrupt.err).find("corrupt_cases.jsonl:4:"), std::string::npos);
}

TEST_F(CliTest, RemoteAssessorFailureExitsThree) {
    // Port 9 on loopback is the discard service and is never served here.
    auto r = run(rank_args("--assessor-timeout 0.2"), "VALUERANK_ASSESSOR_URL=http://127.0.0.1:9/score");
    EXPECT_EQ(r.code, 3) << r.err;
}
