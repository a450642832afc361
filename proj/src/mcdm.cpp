#include "valuerank/mcdm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace valuerank {

namespace {

// Sums in ascending order so the result depends only on the multiset of
// terms, not on the order actions were listed in.
double ordered_sum(std::vector<double> terms) {
    std::sort(terms.begin(), terms.end());
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
}

void check_shape(const ScoreMatrix& scores, std::span<const double> weights,
                 const std::vector<std::string>& ids) {
    if (scores.rows() == 0) throw ValidationError("cannot rank an empty action list");
    if (weights.size() != scores.cols()) {
        throw ValidationError("weight vector has length " + std::to_string(weights.size()) +
                              ", expected " + std::to_string(scores.cols()));
    }
    if (ids.size() != scores.rows()) {
        throw ValidationError("action id list does not match score matrix rows");
    }
}

RankingResult finish(Method method, std::vector<double> key, const std::vector<std::string>& ids) {
    RankingResult result;
    result.method = std::string(to_string(method));
    result.order = order_by_key(key);
    result.order_ids.reserve(ids.size());
    for (auto i : result.order) result.order_ids.push_back(ids[i]);
    result.flows = std::move(key);
    return result;
}

// Multi-attribute utility: additive value function with the preference weights.
std::vector<double> maut_utilities(const ScoreMatrix& s, std::span<const double> w) {
    std::vector<double> u(s.rows());
    for (std::size_t i = 0; i < s.rows(); ++i) {
        double acc = 0.0;
        for (std::size_t j = 0; j < s.cols(); ++j) acc += w[j] * s(i, j);
        u[i] = acc;
    }
    return u;
}

// TOPSIS (Hwang & Yoon) on the weighted matrix v_ij = w_j * r_ij. The scores
// already share the [-1,1] scale, so no column normalization is applied.
std::vector<double> topsis_closeness(const ScoreMatrix& s, std::span<const double> w) {
    const std::size_t n = s.rows();
    const std::size_t m = s.cols();
    std::vector<double> best(m), worst(m);
    for (std::size_t j = 0; j < m; ++j) {
        best[j] = worst[j] = w[j] * s(0, j);
        for (std::size_t i = 1; i < n; ++i) {
            const double v = w[j] * s(i, j);
            best[j] = std::max(best[j], v);
            worst[j] = std::min(worst[j], v);
        }
    }
    std::vector<double> closeness(n);
    for (std::size_t i = 0; i < n; ++i) {
        double to_best = 0.0, to_worst = 0.0;
        for (std::size_t j = 0; j < m; ++j) {
            const double v = w[j] * s(i, j);
            to_best += (v - best[j]) * (v - best[j]);
            to_worst += (v - worst[j]) * (v - worst[j]);
        }
        to_best = std::sqrt(to_best);
        to_worst = std::sqrt(to_worst);
        const double denom = to_best + to_worst;
        // All actions identical on every weighted column.
        closeness[i] = denom > 0.0 ? to_worst / denom : 0.5;
    }
    return closeness;
}

// AHP (Saaty). Each dimension gets a reciprocal comparison matrix
// a_ik = 9^((r_i - r_k) / 2), which maps score differences in [-2,2] onto
// the 1/9..9 ratio scale. Local priorities are row geometric means
// normalized to sum 1; the global priority weights them by preference.
std::vector<double> ahp_priorities(const ScoreMatrix& s, std::span<const double> w) {
    const std::size_t n = s.rows();
    const std::size_t m = s.cols();
    const double half_log9 = 0.5 * std::log(9.0);
    std::vector<double> global(n, 0.0);
    std::vector<double> local(n);
    for (std::size_t j = 0; j < m; ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<double> logs(n);
            for (std::size_t k = 0; k < n; ++k) logs[k] = half_log9 * (s(i, j) - s(k, j));
            local[i] = std::exp(ordered_sum(std::move(logs)) / static_cast<double>(n));
        }
        const double total = ordered_sum(local);
        for (std::size_t i = 0; i < n; ++i) global[i] += w[j] * (local[i] / total);
    }
    return global;
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::promethee: return "promethee";
        case Method::ahp: return "ahp";
        case Method::maut: return "maut";
        case Method::topsis: return "topsis";
    }
    return "unknown";
}

std::optional<Method> parse_method(std::string_view name) {
    for (Method m : kAllMethods) {
        if (to_string(m) == name) return m;
    }
    return std::nullopt;
}

double pairwise_degree(double r_i, double r_other) { return logistic(r_i - r_other); }

double aggregate(std::span<const double> degrees, std::span<const double> weights) {
    if (degrees.size() != weights.size()) {
        throw ValidationError("aggregate: degree and weight lengths differ");
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < degrees.size(); ++j) acc += weights[j] * degrees[j];
    return acc;
}

PairwisePreference pairwise_preferences(const ScoreMatrix& scores, std::span<const double> weights) {
    const std::size_t n = scores.rows();
    const std::size_t m = scores.cols();
    PairwisePreference pp;
    pp.actions = n;
    pp.dimensions = m;
    pp.degrees.assign(n * n * m, 0.5);
    pp.aggregated.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            if (i == k) continue;
            double* row = &pp.degrees[(i * n + k) * m];
            for (std::size_t j = 0; j < m; ++j) row[j] = pairwise_degree(scores(i, j), scores(k, j));
            pp.aggregated[i * n + k] = aggregate({row, m}, weights);
        }
    }
    return pp;
}

Flows net_flows(std::span<const double> aggregated, std::size_t n) {
    if (aggregated.size() != n * n) throw ValidationError("net_flows: matrix is not N x N");
    Flows f;
    f.positive.assign(n, 0.0);
    f.negative.assign(n, 0.0);
    f.net.assign(n, 0.0);
    if (n < 2) return f;
    const double scale = 1.0 / static_cast<double>(n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<double> out_terms, in_terms;
        out_terms.reserve(n - 1);
        in_terms.reserve(n - 1);
        for (std::size_t k = 0; k < n; ++k) {
            if (k == i) continue;
            out_terms.push_back(aggregated[i * n + k]);
            in_terms.push_back(aggregated[k * n + i]);
        }
        f.positive[i] = scale * ordered_sum(std::move(out_terms));
        f.negative[i] = scale * ordered_sum(std::move(in_terms));
        f.net[i] = f.positive[i] - f.negative[i];
    }
    return f;
}

RankingResult rank_matrix(Method method, const ScoreMatrix& scores, std::span<const double> weights,
                          const std::vector<std::string>& ids, OutrankingDetail* detail) {
    check_shape(scores, weights, ids);
    switch (method) {
        case Method::promethee: {
            auto pp = pairwise_preferences(scores, weights);
            auto flows = net_flows(pp.aggregated, pp.actions);
            auto result = finish(method, flows.net, ids);
            result.positive_flows = flows.positive;
            result.negative_flows = flows.negative;
            if (detail) {
                detail->pairwise = std::move(pp);
                detail->flows = std::move(flows);
            }
            return result;
        }
        case Method::ahp: return finish(method, ahp_priorities(scores, weights), ids);
        case Method::maut: return finish(method, maut_utilities(scores, weights), ids);
        case Method::topsis: return finish(method, topsis_closeness(scores, weights), ids);
    }
    throw ValidationError("unknown ranking method");
}

std::vector<std::string> action_ids(const DecisionCase& c) {
    std::vector<std::string> ids;
    ids.reserve(c.actions.size());
    for (const auto& a : c.actions) ids.push_back(a.id);
    return ids;
}

namespace {

RankingResult rank_case(Method method, const DecisionCase& c, const PreferenceVector& prefs,
                        const ScoringConfig& config) {
    auto scored = score_case(c, prefs, config);
    return rank_matrix(method, scored.scores, scored.p_prime, action_ids(c));
}

}  // namespace

RankingResult rank_promethee(const DecisionCase& c, const PreferenceVector& prefs,
                             const ScoringConfig& config) {
    return rank_case(Method::promethee, c, prefs, config);
}

RankingResult rank_ahp(const DecisionCase& c, const PreferenceVector& prefs,
                       const ScoringConfig& config) {
    return rank_case(Method::ahp, c, prefs, config);
}

RankingResult rank_maut(const DecisionCase& c, const PreferenceVector& prefs,
                        const ScoringConfig& config) {
    return rank_case(Method::maut, c, prefs, config);
}

RankingResult rank_topsis(const DecisionCase& c, const PreferenceVector& prefs,
                          const ScoringConfig& config) {
    return rank_case(Method::topsis, c, prefs, config);
}

}  // namespace valuerank
