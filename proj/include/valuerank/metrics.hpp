#pragma once

#include <span>
#include <string>
#include <vector>

namespace valuerank {

/// A predicted and a reference ranking (best first) of equal length n >= 1,
/// each without repeated elements. The two need not cover the same elements
/// for os_sim; the rank correlations require permutations of one set.
struct RankingPair {
    std::vector<std::string> predicted;
    std::vector<std::string> reference;

    /// Throws ValidationError when the invariants do not hold.
    static RankingPair make(std::vector<std::string> predicted, std::vector<std::string> reference);

    bool same_elements() const;
};

/// Order-sensitive similarity: mean over depths d of |S_d ∩ T_d| / d.
double os_sim(const RankingPair& pair);
double os_sim_mean(std::span<const RankingPair> pairs);

bool first_match(const RankingPair& pair);
double first_acc(std::span<const RankingPair> pairs);

/// Spearman's rho and Kendall's tau on positional ranks. A pair of length 1
/// scores 1.
double spearman(const RankingPair& pair);
double kendall(const RankingPair& pair);

/// Predicted and gold per-dimension scores, one row per sample.
struct ScorePrediction {
    std::vector<std::vector<double>> predicted;
    std::vector<std::vector<double>> gold;

    static ScorePrediction make(std::vector<std::vector<double>> predicted,
                                std::vector<std::vector<double>> gold);
};

/// Fraction of entries with |predicted - gold| < t (strict).
double avg_acc(const ScorePrediction& pred, double t);
double mae(const ScorePrediction& pred);

double mean(std::span<const double> xs);
/// Sample standard deviation (n - 1 denominator); 0 for fewer than two values.
double sample_sd(std::span<const double> xs);

}  // namespace valuerank
