#include "valuerank/assessor.hpp"

#include <cmath>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "parallel.hpp"

namespace valuerank {

using nlohmann::json;

namespace {

ObjectiveScores decode_vector(const json& v, std::size_t m, const std::string& field) {
    if (!v.is_array()) throw AssessorError("assessor response: " + field + " is not an array");
    if (v.size() != m) {
        throw AssessorError("assessor response: " + field + " has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(m));
    }
    ObjectiveScores out;
    out.values.reserve(m);
    for (std::size_t j = 0; j < m; ++j) {
        if (!v[j].is_number()) {
            throw AssessorError("assessor response: " + field + "[" + std::to_string(j) +
                                "] is not a number");
        }
        const double d = v[j].get<double>();
        if (!std::isfinite(d) || d < -1.0 || d > 1.0) {
            throw AssessorError("assessor response: " + field + "[" + std::to_string(j) +
                                "] = " + v[j].dump() + " out of [-1,1] (dimension index " +
                                std::to_string(j) + ")");
        }
        out.values.push_back(d);
    }
    return out;
}

}  // namespace

GoldFileAssessor::GoldFileAssessor(const CaseSet& cases) {
    for (const auto& c : cases.cases) {
        Assessment a{c.scenario_scores, {}};
        for (const auto& action : c.actions) a.actions.push_back(action.scores);
        by_scenario_.emplace(c.scenario_id, std::move(a));
    }
}

Assessment GoldFileAssessor::assess(const AssessRequest& request) const {
    auto it = by_scenario_.find(request.scenario_id);
    if (it == by_scenario_.end()) {
        throw AssessorError("no gold scores for scenario '" + request.scenario_id + "'");
    }
    if (it->second.actions.size() != request.action_texts.size()) {
        throw AssessorError("gold scores for scenario '" + request.scenario_id + "' cover " +
                            std::to_string(it->second.actions.size()) + " actions, request has " +
                            std::to_string(request.action_texts.size()));
    }
    return it->second;
}

Assessment decode_assessment(const std::string& body, std::size_t action_count, std::size_t m) {
    json doc;
    try {
        doc = json::parse(body);
    } catch (const json::parse_error& e) {
        throw AssessorError(std::string("assessor response is not JSON: ") + e.what());
    }
    if (!doc.is_object()) throw AssessorError("assessor response is not a JSON object");
    auto s = doc.find("scenario_scores");
    auto a = doc.find("action_scores");
    if (s == doc.end()) throw AssessorError("assessor response: missing scenario_scores");
    if (a == doc.end()) throw AssessorError("assessor response: missing action_scores");
    if (!a->is_array() || a->size() != action_count) {
        throw AssessorError("assessor response: action_scores must hold " +
                            std::to_string(action_count) + " vectors");
    }
    Assessment out{decode_vector(*s, m, "scenario_scores"), {}};
    for (std::size_t i = 0; i < action_count; ++i) {
        out.actions.push_back(decode_vector((*a)[i], m, "action_scores[" + std::to_string(i) + "]"));
    }
    return out;
}

RemoteAssessor::RemoteAssessor(std::string url, DimensionSet dims, RemoteAssessorOptions options)
    : url_(std::move(url)), dims_(std::move(dims)), options_(options) {
    const auto scheme_end = url_.find("://");
    if (scheme_end == std::string::npos) throw AssessorError("assessor URL lacks a scheme: " + url_);
    const std::string scheme = url_.substr(0, scheme_end);
    if (scheme != "http" && scheme != "https") {
        throw AssessorError("unsupported assessor URL scheme: " + scheme);
    }
    const auto path_start = url_.find('/', scheme_end + 3);
    origin_ = url_.substr(0, path_start);
    path_ = path_start == std::string::npos ? "/" : url_.substr(path_start);
    if (origin_.size() <= scheme_end + 3) throw AssessorError("assessor URL lacks a host: " + url_);
}

Assessment RemoteAssessor::assess(const AssessRequest& request) const {
    const json body = {{"scenario", request.scenario_text},
                       {"actions", request.action_texts},
                       {"dimensions", dims_.names()}};
    const std::string payload = body.dump();

    std::string failure;
    for (int attempt = 0; attempt < 2; ++attempt) {
        if (attempt > 0) std::this_thread::sleep_for(options_.retry_backoff);
        httplib::Client client(origin_);
        client.set_connection_timeout(options_.timeout);
        client.set_read_timeout(options_.timeout);
        client.set_write_timeout(options_.timeout);
        auto res = client.Post(path_, payload, "application/json");
        if (!res) {
            failure = "request to " + url_ + " failed: " + httplib::to_string(res.error());
            continue;
        }
        if (res->status != 200) {
            throw AssessorError("assessor at " + url_ + " returned HTTP " + std::to_string(res->status));
        }
        return decode_assessment(res->body, request.action_texts.size(), dims_.size());
    }
    throw AssessorError(failure + " (after retry)");
}

CaseSet apply_assessor(const CaseSet& cases, const Assessor& assessor, std::size_t max_in_flight) {
    CaseSet out = cases;
    const std::size_t m = cases.dimension_count();
    std::vector<Assessment> results(cases.cases.size());
    detail::parallel_for(cases.cases.size(), max_in_flight, [&](std::size_t k) {
        const auto& c = cases.cases[k];
        AssessRequest req{c.scenario_id, c.scenario_text, {}};
        for (const auto& a : c.actions) req.action_texts.push_back(a.text);
        Assessment got = assessor.assess(req);
        if (got.scenario.size() != m || got.actions.size() != c.actions.size()) {
            throw AssessorError("assessor returned the wrong shape for scenario '" + c.scenario_id + "'");
        }
        for (const auto& s : got.actions) {
            if (s.size() != m) {
                throw AssessorError("assessor returned the wrong shape for scenario '" +
                                    c.scenario_id + "'");
            }
        }
        results[k] = std::move(got);
    });
    for (std::size_t k = 0; k < out.cases.size(); ++k) {
        auto& c = out.cases[k];
        c.scenario_scores = results[k].scenario;
        for (std::size_t i = 0; i < c.actions.size(); ++i) c.actions[i].scores = results[k].actions[i];
        require_valid(c, m);
    }
    return out;
}

}  // namespace valuerank
