#pragma once

#include <cstddef>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valuerank/core.hpp"

namespace valuerank {

/// One problem found while reading an input file.
struct Issue {
    std::string file;
    std::size_t line = 0;  // 1-based; 0 when not attributable to a line
    std::string field;     // JSON path such as "$.actions[2].scores[5]"
    std::string message;

    std::string to_string() const;
};

/// Result of a lenient read: everything that parsed, plus every problem.
template <class T>
struct Loaded {
    T value;
    std::vector<Issue> errors;
    std::vector<Issue> warnings;

    bool ok() const noexcept { return errors.empty(); }
};

/// Throws ValidationError listing every issue; no-op when `issues` is empty.
void raise_issues(const std::vector<Issue>& issues);

struct CaseSet {
    std::optional<DimensionSet> dimensions;  // absent only for an empty file
    std::vector<DecisionCase> cases;

    std::size_t dimension_count() const { return dimensions ? dimensions->size() : 0; }
    const DecisionCase* find(const std::string& scenario_id) const;
};

// Case files: JSONL, one object per line with keys scenario_id, scenario_text,
// dimensions, scenario_scores, actions[{id, text, scores}]. Blank lines are
// skipped. Integer ids are accepted and stored in decimal form.
Loaded<CaseSet> read_cases(std::istream& in, const std::string& path);
CaseSet load_cases(const std::string& path, std::vector<std::string>* warnings = nullptr);

std::string case_to_json_line(const DecisionCase& c, const DimensionSet& dims);
void write_cases(const std::string& path, const CaseSet& set);

// Preference files: one JSON object mapping subject id -> list of raw
// preferences in [0,1]. Subjects iterate in sorted order.
struct PreferenceSet {
    std::map<std::string, PreferenceVector> by_subject;

    const PreferenceVector* find(const std::string& subject) const;
};

Loaded<PreferenceSet> read_preferences(const std::string& text, const std::string& path,
                                       std::size_t dimension_count);
PreferenceSet load_preferences(const std::string& path, std::size_t dimension_count);
std::string preferences_to_json(const PreferenceSet& prefs);

// Response files: JSONL lines {subject_id, scenario_id, ranking}. Each
// ranking must be a permutation of the referenced case's action ids. The same
// format carries externally produced model rankings.
struct Response {
    std::string subject_id;
    std::string scenario_id;
    std::vector<std::string> ranking;
    std::size_t line = 0;
};

Loaded<std::vector<Response>> read_responses(std::istream& in, const std::string& path,
                                             const CaseSet& cases);
std::vector<Response> load_responses(const std::string& path, const CaseSet& cases);
std::string response_to_json_line(const Response& r);

/// Numeric table, one row per sample. `.json` files hold an array of arrays;
/// anything else is read as CSV where blank lines and lines starting with '#'
/// are skipped and a first row without any numeric field is a header.
std::vector<std::vector<double>> load_score_table(const std::string& path);
std::vector<std::vector<double>> parse_score_csv(const std::string& text, const std::string& path);

/// Reads a whole file; throws IoError when it cannot be opened.
std::string read_file(const std::string& path);

}  // namespace valuerank
