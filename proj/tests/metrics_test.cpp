#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "valuerank/core.hpp"
#include "valuerank/metrics.hpp"

using namespace valuerank;

namespace {

std::vector<std::string> seq(std::initializer_list<int> xs) {
    std::vector<std::string> out;
    for (int x : xs) out.push_back(std::to_string(x));
    return out;
}

RankingPair pair(std::initializer_list<int> a, std::initializer_list<int> b) {
    return RankingPair::make(seq(a), seq(b));
}

const std::vector<double> kAbsErrors{0.1, 0.3, 0.0, 0.19, 0.25, 0.04};

ScorePrediction error_fixture() {
    return ScorePrediction::make({kAbsErrors}, {std::vector<double>(6, 0.0)});
}

}  // namespace

TEST(OsSim, WorkedExamples) {
    EXPECT_NEAR(os_sim(pair({5, 3, 1, 4, 2}, {3, 1, 5, 4, 2})), 0.7, 1e-12);
    EXPECT_NEAR(os_sim(pair({1, 2, 3, 4, 5}, {1, 2, 3, 5, 4})), 0.95, 1e-12);
    EXPECT_NEAR(os_sim(pair({1, 2, 3, 4, 5}, {2, 1, 3, 4, 5})), 0.80, 1e-12);
    EXPECT_EQ(os_sim(pair({4, 2, 9}, {4, 2, 9})), 1.0);
}

TEST(OsSim, DifferentElementSetsAllowed) {
    // {a} vs {x}: 0; {a,b} vs {x,a}: 1/2; {a,b,c} vs {x,a,b}: 2/3.
    auto p = RankingPair::make({"a", "b", "c"}, {"x", "a", "b"});
    EXPECT_NEAR(os_sim(p), (0.0 + 0.5 + 2.0 / 3.0) / 3.0, 1e-15);
    EXPECT_FALSE(p.same_elements());
}

TEST(OsSim, InvalidPairs) {
    EXPECT_THROW(RankingPair::make(seq({1, 2}), seq({1})), ValidationError);
    EXPECT_THROW(RankingPair::make(seq({1, 1}), seq({1, 2})), ValidationError);
    EXPECT_THROW(RankingPair::make({}, {}), ValidationError);
    EXPECT_THROW(os_sim(RankingPair{seq({1, 2}), seq({2})}), ValidationError);
}

TEST(OsSim, Properties) {
    std::mt19937_64 rng(8);
    for (int t = 0; t < 500; ++t) {
        const std::size_t n = std::uniform_int_distribution<std::size_t>(1, 9)(rng);
        std::vector<std::string> a;
        for (std::size_t k = 0; k < n; ++k) a.push_back(std::to_string(k));
        auto b = a;
        std::shuffle(a.begin(), a.end(), rng);
        std::shuffle(b.begin(), b.end(), rng);
        const double s = os_sim(RankingPair::make(a, b));
        EXPECT_GE(s, 0.0);
        EXPECT_LE(s, 1.0);
        EXPECT_EQ(s, os_sim(RankingPair::make(b, a)));
        EXPECT_EQ(s == 1.0, a == b);
        if (n >= 4) {
            auto front = a, back = a;
            std::swap(front[0], front[1]);
            std::swap(back[n - 1], back[n - 2]);
            EXPECT_LE(os_sim(RankingPair::make(a, front)), os_sim(RankingPair::make(a, back)));
        }
    }
}

TEST(OsSimMean, Averages) {
    std::vector<RankingPair> one{pair({1, 2, 3}, {2, 1, 3})};
    EXPECT_EQ(os_sim_mean(one), os_sim(one[0]));
    std::vector<RankingPair> two{pair({1, 2, 3, 4, 5}, {1, 2, 3, 5, 4}), pair({1, 2, 3, 4, 5}, {2, 1, 3, 4, 5})};
    EXPECT_NEAR(os_sim_mean(two), 0.875, 1e-12);
    std::vector<RankingPair> same(4, pair({3, 1, 2}, {3, 1, 2}));
    EXPECT_EQ(os_sim_mean(same), 1.0);
    EXPECT_THROW(os_sim_mean(std::vector<RankingPair>{}), ValidationError);
}

TEST(FirstAcc, Fractions) {
    std::vector<RankingPair> ex2{pair({1, 2, 3, 4, 5}, {1, 2, 3, 5, 4}), pair({1, 2, 3, 4, 5}, {2, 1, 3, 4, 5})};
    EXPECT_EQ(first_acc(ex2), 0.5);
    std::vector<RankingPair> all{pair({1, 2}, {1, 2}), pair({2, 1}, {2, 1})};
    EXPECT_EQ(first_acc(all), 1.0);
    std::vector<RankingPair> none{pair({1, 2}, {2, 1})};
    EXPECT_EQ(first_acc(none), 0.0);
    EXPECT_THROW(first_acc(std::vector<RankingPair>{}), ValidationError);
}

TEST(RankCorrelation, WorkedExamples) {
    auto ab = pair({1, 2, 3, 4, 5}, {1, 2, 3, 5, 4});
    auto ac = pair({1, 2, 3, 4, 5}, {2, 1, 3, 4, 5});
    EXPECT_NEAR(spearman(ab), 0.90, 1e-12);
    EXPECT_NEAR(kendall(ab), 0.80, 1e-12);
    EXPECT_NEAR(spearman(ac), 0.90, 1e-12);
    EXPECT_NEAR(kendall(ac), 0.80, 1e-12);
    EXPECT_EQ(spearman(pair({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5})), 1.0);
    EXPECT_EQ(kendall(pair({1, 2, 3, 4, 5}, {1, 2, 3, 4, 5})), 1.0);
    EXPECT_EQ(spearman(pair({1, 2, 3, 4, 5}, {5, 4, 3, 2, 1})), -1.0);
    EXPECT_EQ(kendall(pair({1, 2, 3, 4, 5}, {5, 4, 3, 2, 1})), -1.0);
    EXPECT_EQ(kendall(pair({7}, {7})), 1.0);
    EXPECT_THROW(spearman(RankingPair::make({"a", "b"}, {"a", "c"})), ValidationError);
}

TEST(RankCorrelation, AgreesInSignWithBruteForcePairs) {
    std::mt19937_64 rng(4);
    for (int t = 0; t < 300; ++t) {
        std::vector<std::string> a{"a", "b", "c", "d", "e", "f"};
        auto b = a;
        std::shuffle(b.begin(), b.end(), rng);
        auto p = RankingPair::make(a, b);
        // Kendall by explicit pair enumeration over elements.
        int conc = 0, disc = 0;
        auto pos = [&](const std::vector<std::string>& s, const std::string& x) {
            return std::find(s.begin(), s.end(), x) - s.begin();
        };
        for (std::size_t i = 0; i < a.size(); ++i)
            for (std::size_t j = i + 1; j < a.size(); ++j) {
                const auto d1 = pos(a, a[i]) - pos(a, a[j]);
                const auto d2 = pos(b, a[i]) - pos(b, a[j]);
                (d1 * d2 > 0 ? conc : disc)++;
            }
        EXPECT_NEAR(kendall(p), double(conc - disc) / 15.0, 1e-15);
        EXPECT_GE(spearman(p), -1.0);
        EXPECT_LE(spearman(p), 1.0);
    }
}

TEST(AvgAcc, StrictThreshold) {
    auto fx = error_fixture();
    EXPECT_NEAR(avg_acc(fx, 0.2), 4.0 / 6.0, 1e-15);
    auto same = ScorePrediction::make({{0.1, -0.5}}, {{0.1, -0.5}});
    EXPECT_EQ(avg_acc(same, 0.05), 1.0);
    auto boundary = ScorePrediction::make({{0.2, -0.2, 0.7}}, {{0.0, 0.0, 0.5}});
    EXPECT_EQ(avg_acc(boundary, 0.2), 0.0 + 1.0 / 3.0 * (std::abs(0.7 - 0.5) < 0.2));
    auto exact = ScorePrediction::make({{0.25, -0.25}}, {{0.0, 0.0}});
    EXPECT_EQ(avg_acc(exact, 0.25), 0.0);
    EXPECT_THROW(avg_acc(fx, 0.0), ValidationError);
}

TEST(AvgAcc, NonIncreasingAsThresholdShrinks) {
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> u(-1, 1);
    std::vector<std::vector<double>> a(20, std::vector<double>(6)), b = a;
    for (auto& r : a) for (auto& x : r) x = u(rng);
    for (auto& r : b) for (auto& x : r) x = u(rng);
    auto p = ScorePrediction::make(a, b);
    double prev = 1.0;
    for (double t = 3.0; t > 0.001; t *= 0.8) {
        const double acc = avg_acc(p, t);
        EXPECT_LE(acc, prev);
        prev = acc;
    }
    EXPECT_EQ(avg_acc(p, 2.5), 1.0);
}

TEST(Mae, Values) {
    EXPECT_NEAR(mae(error_fixture()), 0.88 / 6.0, 1e-15);
    EXPECT_NEAR(mae(error_fixture()), 0.146667, 1e-6);
    EXPECT_EQ(mae(ScorePrediction::make({{0.3, 0.4}}, {{0.3, 0.4}})), 0.0);
    EXPECT_NEAR(mae(ScorePrediction::make({{0.19, 0.69}, {-0.81, 0.19}}, {{0.0, 0.5}, {-1.0, 0.0}})), 0.19, 1e-15);
    EXPECT_GT(mae(ScorePrediction::make({{0.3, 0.4}}, {{0.3, 0.41}})), 0.0);
}

TEST(ScorePrediction, ShapeChecks) {
    EXPECT_THROW(ScorePrediction::make({{0.1}}, {{0.1}, {0.2}}), ValidationError);
    EXPECT_THROW(ScorePrediction::make({{0.1, 0.2}}, {{0.1}}), ValidationError);
    EXPECT_THROW(ScorePrediction::make({{1.5}}, {{0.1}}), ValidationError);
    EXPECT_THROW(ScorePrediction::make({}, {}), ValidationError);
}

TEST(Stats, MeanAndSampleSd) {
    const std::vector<double> xs{0.95, 0.80};
    EXPECT_NEAR(mean(xs), 0.875, 1e-15);
    EXPECT_NEAR(sample_sd(xs), 0.10606601717798213, 1e-15);
    EXPECT_EQ(sample_sd(std::vector<double>{0.4}), 0.0);
}
