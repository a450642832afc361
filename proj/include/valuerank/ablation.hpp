#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "valuerank/mcdm.hpp"
#include "valuerank/scoring.hpp"

namespace valuerank {

/// Pipeline variants. `full` is the complete pipeline; the others each drop
/// one stage:
///   only_action    rank raw action scores with unit weights; preferences and
///                  scenario are ignored entirely
///   no_preference  unit weights in the aggregation; preferences still enter
///                  the discrepancy and integration stages
///   no_subjective  integrated score is the objective score (no discrepancy term)
///   no_scenario    no scenario relevance scaling
enum class Variant { full, only_action, no_preference, no_subjective, no_scenario };

inline constexpr Variant kAllVariants[] = {Variant::full, Variant::only_action,
                                           Variant::no_preference, Variant::no_subjective,
                                           Variant::no_scenario};

std::string_view to_string(Variant v);
std::optional<Variant> parse_variant(std::string_view name);

/// Everything one ranking run produced. `scoring` is empty for only_action
/// except for `scoring.scores`, which then holds the raw action scores.
struct PipelineRun {
    ScoredCase scoring;
    std::vector<double> weights;
    RankingResult ranking;
    std::optional<OutrankingDetail> detail;  // PROMETHEE only
};

PipelineRun run_pipeline(Variant variant, Method method, const DecisionCase& c,
                         const PreferenceVector& prefs, const ScoringConfig& config);

RankingResult rank_variant(Variant variant, const DecisionCase& c, const PreferenceVector& prefs,
                           const ScoringConfig& config, Method method = Method::promethee);

}  // namespace valuerank
