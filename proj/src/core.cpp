#include "valuerank/core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <unordered_set>

namespace valuerank {

namespace {

std::string number(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

void check_range(const std::vector<double>& values, double lo, double hi, const char* what) {
    for (std::size_t j = 0; j < values.size(); ++j) {
        const double v = values[j];
        if (!std::isfinite(v) || v < lo || v > hi) {
            std::ostringstream ss;
            ss << what << "[" << j << "] = " << number(v) << " out of [" << lo << "," << hi << "]";
            throw ValidationError(ss.str());
        }
    }
}

void check_scores(const ObjectiveScores& s, std::size_t m, const std::string& where,
                  std::vector<Violation>& out) {
    if (s.size() != m) {
        out.push_back({where, "length " + std::to_string(s.size()) + " does not match " +
                                  std::to_string(m) + " dimensions"});
        return;
    }
    for (std::size_t j = 0; j < m; ++j) {
        const double v = s.values[j];
        if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
            out.push_back({where + "[" + std::to_string(j) + "]",
                           "score out of [-1,1]: " + number(v)});
        }
    }
}

}  // namespace

DimensionSet::DimensionSet(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw ValidationError("dimension set must not be empty");
    std::unordered_set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw ValidationError("dimension label must not be empty");
        if (!seen.insert(n).second) throw ValidationError("duplicate dimension label: " + n);
    }
}

DimensionSet DimensionSet::default_profile() {
    return DimensionSet({"Curiosity", "Energy", "Security", "Happiness", "Intimacy", "Fairness"});
}

std::optional<std::size_t> DimensionSet::index_of(std::string_view name) const {
    auto it = std::find(names_.begin(), names_.end(), name);
    if (it == names_.end()) return std::nullopt;
    return static_cast<std::size_t>(it - names_.begin());
}

ObjectiveScores ObjectiveScores::make(const DimensionSet& dims, std::vector<double> values) {
    if (values.size() != dims.size()) {
        throw ValidationError("score vector has length " + std::to_string(values.size()) +
                              ", expected " + std::to_string(dims.size()));
    }
    check_range(values, -1.0, 1.0, "score");
    return ObjectiveScores{std::move(values)};
}

PreferenceVector::PreferenceVector(const DimensionSet& dims, std::vector<double> raw)
    : PreferenceVector(std::move(raw)) {
    if (raw_.size() != dims.size()) {
        throw ValidationError("preference vector has length " + std::to_string(raw_.size()) +
                              ", expected " + std::to_string(dims.size()));
    }
}

PreferenceVector::PreferenceVector(std::vector<double> raw) : raw_(std::move(raw)) {
    if (raw_.empty()) throw ValidationError("preference vector must not be empty");
    check_range(raw_, 0.0, 1.0, "preference");
}

std::vector<double> ScoreMatrix::row(std::size_t i) const {
    auto first = data_.begin() + static_cast<std::ptrdiff_t>(i * cols_);
    return {first, first + static_cast<std::ptrdiff_t>(cols_)};
}

std::vector<std::size_t> order_by_key(const std::vector<double>& key) {
    std::vector<std::size_t> idx(key.size());
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });
    return idx;
}

std::string ValidationReport::summary() const {
    std::ostringstream ss;
    for (std::size_t k = 0; k < violations.size(); ++k) {
        if (k) ss << "; ";
        ss << violations[k].where << ": " << violations[k].message;
    }
    return ss.str();
}

ValidationReport validate_case(const DecisionCase& c, const DimensionSet& dims) {
    return validate_case(c, dims.size());
}

ValidationReport validate_case(const DecisionCase& c, std::size_t m) {
    ValidationReport report;
    auto& out = report.violations;
    check_scores(c.scenario_scores, m, "scenario_scores", out);
    if (c.actions.empty()) out.push_back({"actions", "empty action list"});

    std::unordered_set<std::string> ids;
    for (std::size_t i = 0; i < c.actions.size(); ++i) {
        const auto& a = c.actions[i];
        const std::string where = "actions[" + (a.id.empty() ? std::to_string(i) : a.id) + "]";
        if (a.id.empty()) out.push_back({where + ".id", "empty action id"});
        else if (!ids.insert(a.id).second) out.push_back({where + ".id", "duplicate action id: " + a.id});
        check_scores(a.scores, m, where + ".scores", out);
    }
    return report;
}

void require_valid(const DecisionCase& c, std::size_t m) {
    auto report = validate_case(c, m);
    if (!report.ok()) {
        throw ValidationError("invalid case '" + c.scenario_id + "': " + report.summary());
    }
}

}  // namespace valuerank
