#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "valuerank/ablation.hpp"
#include "valuerank/dataset.hpp"
#include "valuerank/metrics.hpp"

namespace valuerank {

inline constexpr const char* kVersion = "0.1.0";

struct RunOptions {
    ScoringConfig scoring;
    Method method = Method::promethee;
    Variant variant = Variant::full;
    bool explain = false;
    std::size_t jobs = 1;
};

// ---- ranking ---------------------------------------------------------------

/// Ranks every case for one preference vector. Output order follows the
/// case file regardless of `options.jobs`.
std::vector<PipelineRun> rank_all(const CaseSet& cases, const PreferenceVector& prefs,
                                  const RunOptions& options);

std::string ranking_json(const CaseSet& cases, const std::string& subject,
                         const std::vector<PipelineRun>& runs, const RunOptions& options);
std::string ranking_table(const CaseSet& cases, const std::string& subject,
                          const std::vector<PipelineRun>& runs, const RunOptions& options);

// ---- alignment evaluation --------------------------------------------------

struct PairOutcome {
    std::string subject_id;
    std::string scenario_id;
    std::vector<std::string> predicted;
    std::vector<std::string> reference;
    double os_sim = 0.0;
    bool first_match = false;
    double spearman = 0.0;
    double kendall = 0.0;
};

struct SubjectSummary {
    std::string subject_id;
    std::size_t cases = 0;
    double os_sim_mean = 0.0;
    double os_sim_sd = 0.0;
    double first_acc = 0.0;
};

/// Alignment metrics for one ranking source. Subjects appear in order of first
/// response. Headline figures are means of per-subject means; pooled figures
/// treat every (subject, case) pair equally. Spreads are sample SDs.
struct EvaluationReport {
    std::string label;  // method, or "external" for supplied predictions
    std::string variant;
    std::vector<PairOutcome> pairs;
    std::vector<SubjectSummary> subjects;
    double os_sim_mean_of_means = 0.0;
    double os_sim_sd_of_subject_means = 0.0;
    double os_sim_pooled_mean = 0.0;
    double os_sim_pooled_sd = 0.0;
    double first_acc_mean_of_means = 0.0;
    double first_acc_pooled = 0.0;
};

/// Ranks each responded case with the responding subject's preferences and
/// compares against the subject's ranking.
EvaluationReport evaluate(const CaseSet& cases, const PreferenceSet& prefs,
                          const std::vector<Response>& responses, const RunOptions& options);

/// Same report for rankings produced elsewhere (another model, a synthetic
/// fixture). Every response needs a prediction with the same subject and scenario.
EvaluationReport evaluate_predictions(const std::vector<Response>& predictions,
                                      const std::vector<Response>& responses);

/// Builds the report from already-paired rankings.
EvaluationReport summarize(std::string label, std::string variant, std::vector<PairOutcome> pairs);

std::string evaluation_json(const EvaluationReport& report);
/// Columns subject_id, case_id, os_sim, first_match, followed by summary rows.
std::string evaluation_csv(const EvaluationReport& report);
std::string evaluation_table(const EvaluationReport& report);

// ---- backend comparison ----------------------------------------------------

/// One evaluation per backend, in the order promethee, ahp, maut, topsis.
std::vector<EvaluationReport> compare_mcdm(const CaseSet& cases, const PreferenceSet& prefs,
                                           const std::vector<Response>& responses,
                                           const RunOptions& options);

std::string comparison_json(const std::vector<EvaluationReport>& rows);
std::string comparison_csv(const std::vector<EvaluationReport>& rows);
std::string comparison_table(const std::vector<EvaluationReport>& rows);

// ---- score accuracy --------------------------------------------------------

struct AccuracyReport {
    std::size_t samples = 0;
    std::size_t dimensions = 0;
    std::vector<double> thresholds;
    std::vector<double> avg_acc;  // parallel to thresholds
    double mae = 0.0;
};

AccuracyReport assess_accuracy(const ScorePrediction& prediction, const std::vector<double>& thresholds);
std::string accuracy_json(const AccuracyReport& report);
std::string accuracy_table(const AccuracyReport& report);

// ---- validation ------------------------------------------------------------

struct ValidationSummary {
    std::vector<Issue> errors;
    std::vector<Issue> warnings;
};

/// Lenient validation of any subset of the three input files. Empty paths
/// are skipped. Throws IoError when a named file cannot be read.
ValidationSummary validate_files(const std::string& cases_path, const std::string& preferences_path,
                                 const std::string& responses_path);
std::string validation_text(const ValidationSummary& summary);

// ---- misc ------------------------------------------------------------------

/// Hex SHA-256 of a file's bytes; throws IoError when unreadable.
std::string file_sha256(const std::string& path);

/// Shortest decimal text that reads back to the same double.
std::string round_trip(double v);
/// Fixed six-decimal text for tables.
std::string fixed6(double v);

}  // namespace valuerank
