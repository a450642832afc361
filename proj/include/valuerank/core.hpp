#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace valuerank {

// Error categories. The CLI maps them to exit codes 1, 2 and 3.
class ValidationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class AssessorError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Ordered, duplicate-free list of value dimension labels. Every score and
/// preference vector in one computation is indexed by the same set.
class DimensionSet {
public:
    explicit DimensionSet(std::vector<std::string> names);

    /// Curiosity, Energy, Security, Happiness, Intimacy, Fairness.
    static DimensionSet default_profile();

    std::size_t size() const noexcept { return names_.size(); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    const std::string& operator[](std::size_t j) const { return names_.at(j); }
    std::optional<std::size_t> index_of(std::string_view name) const;

    friend bool operator==(const DimensionSet&, const DimensionSet&) = default;

private:
    std::vector<std::string> names_;
};

/// Per-dimension objective scores in [-1, +1].
struct ObjectiveScores {
    std::vector<double> values;

    /// Checked construction: throws ValidationError on a length mismatch or
    /// an out-of-range / non-finite entry.
    static ObjectiveScores make(const DimensionSet& dims, std::vector<double> values);

    std::size_t size() const noexcept { return values.size(); }
    double operator[](std::size_t j) const { return values[j]; }
    friend bool operator==(const ObjectiveScores&, const ObjectiveScores&) = default;
};

/// A user's raw per-dimension importance in [0, 1].
class PreferenceVector {
public:
    PreferenceVector(const DimensionSet& dims, std::vector<double> raw);

    /// Builds a preference vector without a DimensionSet; only range checks.
    explicit PreferenceVector(std::vector<double> raw);

    std::size_t size() const noexcept { return raw_.size(); }
    const std::vector<double>& raw() const noexcept { return raw_; }
    double operator[](std::size_t j) const { return raw_[j]; }

private:
    std::vector<double> raw_;
};

struct ActionCandidate {
    std::string id;
    std::string text;
    ObjectiveScores scores;
};

struct DecisionCase {
    std::string scenario_id;
    std::string scenario_text;
    ObjectiveScores scenario_scores;
    std::vector<ActionCandidate> actions;

    std::size_t action_count() const noexcept { return actions.size(); }
};

/// N x m matrix of contextualized scores, row-major.
class ScoreMatrix {
public:
    ScoreMatrix() = default;
    ScoreMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    std::vector<double> row(std::size_t i) const;
    const std::vector<double>& data() const noexcept { return data_; }

    friend bool operator==(const ScoreMatrix&, const ScoreMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

/// Ranked actions, best first. `flows` holds the ranking key of the backend
/// (net outranking flow for PROMETHEE); positive/negative flows are only
/// filled by PROMETHEE.
struct RankingResult {
    std::string method;
    std::vector<std::size_t> order;        // indices into the case's actions
    std::vector<std::string> order_ids;    // same order, as action ids
    std::vector<double> flows;             // indexed by original action index
    std::vector<double> positive_flows;
    std::vector<double> negative_flows;
};

/// Sorts action indices by key descending; equal keys keep ascending index.
std::vector<std::size_t> order_by_key(const std::vector<double>& key);

struct Violation {
    std::string where;   // e.g. "actions[a1].scores[2]"
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    std::string summary() const;
};

ValidationReport validate_case(const DecisionCase& c, const DimensionSet& dims);

/// Same checks against a bare dimension count.
ValidationReport validate_case(const DecisionCase& c, std::size_t dimension_count);

/// Throws ValidationError carrying the report summary when the case is invalid.
void require_valid(const DecisionCase& c, std::size_t dimension_count);

}  // namespace valuerank
