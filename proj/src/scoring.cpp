#include "valuerank/scoring.hpp"

#include <cmath>
#include <string>

namespace valuerank {

void ScoringConfig::validate() const {
    if (!std::isfinite(w) || w < 0.0 || w > 1.0) {
        throw ValidationError("subjective weight w must be in [0,1], got " + std::to_string(w));
    }
    if (!std::isfinite(sigmoid_scale) || sigmoid_scale <= 0.0) {
        throw ValidationError("sigmoid_scale must be positive, got " + std::to_string(sigmoid_scale));
    }
}

double transform_preference(double p, const ScoringConfig& config) {
    if (!std::isfinite(p)) throw ValidationError("preference must be finite");
    return 1.0 / (1.0 + std::exp(-(p - 0.5) * config.sigmoid_scale));
}

std::vector<double> transform_preference(const PreferenceVector& p, const ScoringConfig& config) {
    std::vector<double> out;
    out.reserve(p.size());
    for (double v : p.raw()) out.push_back(transform_preference(v, config));
    return out;
}

double discrepancy(double rho, double p_prime) {
    return 1.0 - std::abs(std::abs(rho) - p_prime);
}

double integrate(double d, double rho, const ScoringConfig& config) {
    return config.w * d + (1.0 - config.w) * rho;
}

double contextualize(double r_scenario, double r_action) {
    return logistic(std::abs(r_scenario)) * r_action;
}

ScoredCase score_case(const DecisionCase& c, const PreferenceVector& prefs,
                      const ScoringConfig& config, ScoringStages stages) {
    config.validate();
    const std::size_t m = prefs.size();
    require_valid(c, m);
    const std::size_t n = c.action_count();

    ScoredCase out;
    out.p_prime = transform_preference(prefs, config);

    // Returns r for one objective vector; records d when the subjective stage runs.
    auto integrate_row = [&](const ObjectiveScores& rho, std::vector<double>* d_out) {
        std::vector<double> r(m);
        if (stages.subjective) d_out->resize(m);
        for (std::size_t j = 0; j < m; ++j) {
            if (stages.subjective) {
                const double d = discrepancy(rho[j], out.p_prime[j]);
                (*d_out)[j] = d;
                r[j] = integrate(d, rho[j], config);
            } else {
                r[j] = rho[j];
            }
        }
        return r;
    };

    out.scenario_integrated = integrate_row(c.scenario_scores, &out.scenario_discrepancy);
    if (stages.subjective) out.action_discrepancy.resize(n);
    out.action_integrated.resize(n);
    out.scores = ScoreMatrix(n, m);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> scratch;
        out.action_integrated[i] = integrate_row(
            c.actions[i].scores, stages.subjective ? &out.action_discrepancy[i] : &scratch);
        for (std::size_t j = 0; j < m; ++j) {
            const double r_a = out.action_integrated[i][j];
            out.scores(i, j) = stages.scenario_scaling
                                   ? contextualize(out.scenario_integrated[j], r_a)
                                   : r_a;
        }
    }
    return out;
}

}  // namespace valuerank
