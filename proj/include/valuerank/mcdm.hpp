#pragma once

#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "valuerank/core.hpp"
#include "valuerank/scoring.hpp"

namespace valuerank {

enum class Method { promethee, ahp, maut, topsis };

std::string_view to_string(Method m);
std::optional<Method> parse_method(std::string_view name);
inline constexpr Method kAllMethods[] = {Method::promethee, Method::ahp, Method::maut,
                                         Method::topsis};

/// Preference degree of one action over another on a single dimension:
/// logistic(r_i - r_other).
double pairwise_degree(double r_i, double r_other);

/// Weighted sum of per-dimension degrees. Weights are used as given, not
/// normalized.
double aggregate(std::span<const double> degrees, std::span<const double> weights);

/// Pairwise preference tensor. degree(i, k, j) is the preference of action i
/// over action k on dimension j; diagonal degrees are 0.5 by convention and
/// the aggregated diagonal is left at 0 (never used).
struct PairwisePreference {
    std::size_t actions = 0;
    std::size_t dimensions = 0;
    std::vector<double> degrees;     // actions * actions * dimensions
    std::vector<double> aggregated;  // actions * actions

    double degree(std::size_t i, std::size_t k, std::size_t j) const {
        return degrees[(i * actions + k) * dimensions + j];
    }
    double aggregate_at(std::size_t i, std::size_t k) const { return aggregated[i * actions + k]; }
};

PairwisePreference pairwise_preferences(const ScoreMatrix& scores, std::span<const double> weights);

struct Flows {
    std::vector<double> positive;
    std::vector<double> negative;
    std::vector<double> net;
};

/// Leaving, entering and net flows from an N x N aggregated matrix given
/// row-major. A single action gets all-zero flows.
Flows net_flows(std::span<const double> aggregated, std::size_t actions);

/// Extra data the PROMETHEE backend exposes for explain output.
struct OutrankingDetail {
    PairwisePreference pairwise;
    Flows flows;
};

/// Ranks the rows of a score matrix with the chosen backend. `weights` has
/// one entry per column.
RankingResult rank_matrix(Method method, const ScoreMatrix& scores,
                          std::span<const double> weights,
                          const std::vector<std::string>& action_ids,
                          OutrankingDetail* detail = nullptr);

RankingResult rank_promethee(const DecisionCase& c, const PreferenceVector& prefs,
                             const ScoringConfig& config);
RankingResult rank_ahp(const DecisionCase& c, const PreferenceVector& prefs,
                       const ScoringConfig& config);
RankingResult rank_maut(const DecisionCase& c, const PreferenceVector& prefs,
                        const ScoringConfig& config);
RankingResult rank_topsis(const DecisionCase& c, const PreferenceVector& prefs,
                          const ScoringConfig& config);

std::vector<std::string> action_ids(const DecisionCase& c);

}  // namespace valuerank
