#pragma once

#include <chrono>
#include <memory>
#include <string>
#include <unordered_map>
#include <vector>

#include "valuerank/core.hpp"
#include "valuerank/dataset.hpp"

namespace valuerank {

struct AssessRequest {
    std::string scenario_id;
    std::string scenario_text;
    std::vector<std::string> action_texts;
};

struct Assessment {
    ObjectiveScores scenario;
    std::vector<ObjectiveScores> actions;
};

/// Source of objective scores. Implementations must allow concurrent calls.
class Assessor {
public:
    virtual ~Assessor() = default;
    virtual Assessment assess(const AssessRequest& request) const = 0;
};

/// Serves the annotations stored in a case file.
class GoldFileAssessor final : public Assessor {
public:
    explicit GoldFileAssessor(const CaseSet& cases);
    Assessment assess(const AssessRequest& request) const override;

private:
    std::unordered_map<std::string, Assessment> by_scenario_;
};

struct RemoteAssessorOptions {
    std::chrono::milliseconds timeout{30000};
    std::chrono::milliseconds retry_backoff{1000};
};

/// Scores cases through an HTTP endpoint. Request body:
///   {"scenario": str, "actions": [str], "dimensions": [str]}
/// Expected response:
///   {"scenario_scores": [num], "action_scores": [[num]]}
/// A transport failure is retried once; malformed or out-of-range responses
/// are rejected with AssessorError.
class RemoteAssessor final : public Assessor {
public:
    RemoteAssessor(std::string url, DimensionSet dims, RemoteAssessorOptions options = {});
    Assessment assess(const AssessRequest& request) const override;

    const std::string& url() const noexcept { return url_; }

private:
    std::string url_;
    std::string origin_;  // scheme://host[:port]
    std::string path_;
    DimensionSet dims_;
    RemoteAssessorOptions options_;
};

/// Validates a decoded response body against the dimension count; throws
/// AssessorError naming the offending field.
Assessment decode_assessment(const std::string& body, std::size_t action_count,
                             std::size_t dimension_count);

/// Returns a copy of `cases` whose scores come from `assessor`. At most
/// `max_in_flight` requests run at once; any failure aborts the whole call.
CaseSet apply_assessor(const CaseSet& cases, const Assessor& assessor, std::size_t max_in_flight = 4);

}  // namespace valuerank
