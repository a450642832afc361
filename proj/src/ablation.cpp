#include "valuerank/ablation.hpp"

namespace valuerank {

std::string_view to_string(Variant v) {
    switch (v) {
        case Variant::full: return "full";
        case Variant::only_action: return "only-action";
        case Variant::no_preference: return "no-preference";
        case Variant::no_subjective: return "no-subjective";
        case Variant::no_scenario: return "no-scenario";
    }
    return "unknown";
}

std::optional<Variant> parse_variant(std::string_view name) {
    for (Variant v : kAllVariants) {
        if (to_string(v) == name) return v;
    }
    return std::nullopt;
}

PipelineRun run_pipeline(Variant variant, Method method, const DecisionCase& c,
                         const PreferenceVector& prefs, const ScoringConfig& config) {
    config.validate();
    const std::size_t m = prefs.size();
    PipelineRun run;

    if (variant == Variant::only_action) {
        require_valid(c, m);
        ScoreMatrix raw(c.action_count(), m);
        for (std::size_t i = 0; i < c.action_count(); ++i) {
            for (std::size_t j = 0; j < m; ++j) raw(i, j) = c.actions[i].scores[j];
        }
        run.scoring.scores = std::move(raw);
        run.weights.assign(m, 1.0);
    } else {
        ScoringStages stages;
        stages.subjective = variant != Variant::no_subjective;
        stages.scenario_scaling = variant != Variant::no_scenario;
        run.scoring = score_case(c, prefs, config, stages);
        if (variant == Variant::no_preference) run.weights.assign(m, 1.0);
        else run.weights = run.scoring.p_prime;
    }

    OutrankingDetail detail;
    run.ranking = rank_matrix(method, run.scoring.scores, run.weights, action_ids(c),
                              method == Method::promethee ? &detail : nullptr);
    if (method == Method::promethee) run.detail = std::move(detail);
    return run;
}

RankingResult rank_variant(Variant variant, const DecisionCase& c, const PreferenceVector& prefs,
                           const ScoringConfig& config, Method method) {
    return run_pipeline(variant, method, c, prefs, config).ranking;
}

}  // namespace valuerank
