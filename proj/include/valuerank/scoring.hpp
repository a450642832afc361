#pragma once

#include <cmath>
#include <vector>

#include "valuerank/core.hpp"

namespace valuerank {

struct ScoringConfig {
    double w = 0.3;              // weight of the subjective discrepancy term
    double sigmoid_scale = 10.0; // steepness of the preference transform

    /// Throws ValidationError unless 0 <= w <= 1 and sigmoid_scale > 0.
    void validate() const;
};

/// Stage switches used by the ablated pipelines. Defaults give the full pipeline.
struct ScoringStages {
    bool subjective = true;        // discrepancy term mixed into the integrated score
    bool scenario_scaling = true;  // action scores scaled by scenario relevance
};

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

/// p'_j = 1 / (1 + exp(-(p_j - 0.5) * scale)).
double transform_preference(double p, const ScoringConfig& config);
std::vector<double> transform_preference(const PreferenceVector& p, const ScoringConfig& config);

/// d = 1 - | |rho| - p' |.
double discrepancy(double rho, double p_prime);

/// r = w * d + (1 - w) * rho.
double integrate(double d, double rho, const ScoringConfig& config);

/// r_{i,j} = logistic(|r_s|) * r_a.
double contextualize(double r_scenario, double r_action);

/// Contextualized scores for one case plus every intermediate quantity.
struct ScoredCase {
    std::vector<double> p_prime;                  // m
    std::vector<double> scenario_discrepancy;     // m, empty when the stage is skipped
    std::vector<double> scenario_integrated;      // m
    std::vector<std::vector<double>> action_discrepancy;  // N x m, empty when skipped
    std::vector<std::vector<double>> action_integrated;   // N x m
    ScoreMatrix scores;                           // N x m
};

ScoredCase score_case(const DecisionCase& c, const PreferenceVector& prefs,
                      const ScoringConfig& config, ScoringStages stages = {});

}  // namespace valuerank
