#include "valuerank/metrics.hpp"

#include <cmath>
#include <unordered_map>
#include <unordered_set>

#include "valuerank/core.hpp"

namespace valuerank {

namespace {

void require_distinct(const std::vector<std::string>& seq, const char* which) {
    std::unordered_set<std::string> seen;
    for (const auto& s : seq) {
        if (!seen.insert(s).second) {
            throw ValidationError(std::string(which) + " ranking repeats element '" + s + "'");
        }
    }
}

void require_permutation(const RankingPair& pair) {
    if (!pair.same_elements()) {
        throw ValidationError("rank correlation needs both rankings over the same elements");
    }
}

// Position of each element of the reference ranking inside `seq`.
std::vector<std::size_t> positions_in(const std::vector<std::string>& seq,
                                      const std::vector<std::string>& reference) {
    std::unordered_map<std::string, std::size_t> pos;
    for (std::size_t k = 0; k < seq.size(); ++k) pos.emplace(seq[k], k);
    std::vector<std::size_t> out;
    out.reserve(reference.size());
    for (const auto& e : reference) out.push_back(pos.at(e));
    return out;
}

}  // namespace

RankingPair RankingPair::make(std::vector<std::string> predicted, std::vector<std::string> reference) {
    if (predicted.empty()) throw ValidationError("rankings must not be empty");
    if (predicted.size() != reference.size()) {
        throw ValidationError("ranking lengths differ: " + std::to_string(predicted.size()) + " vs " +
                              std::to_string(reference.size()));
    }
    require_distinct(predicted, "predicted");
    require_distinct(reference, "reference");
    return RankingPair{std::move(predicted), std::move(reference)};
}

bool RankingPair::same_elements() const {
    if (predicted.size() != reference.size()) return false;
    std::unordered_set<std::string> a(predicted.begin(), predicted.end());
    for (const auto& e : reference) {
        if (!a.count(e)) return false;
    }
    return true;
}

double os_sim(const RankingPair& pair) {
    const auto checked = RankingPair::make(pair.predicted, pair.reference);
    const std::size_t n = checked.predicted.size();
    std::unordered_set<std::string> seen_s, seen_t;
    std::size_t overlap = 0;
    double total = 0.0;
    for (std::size_t d = 1; d <= n; ++d) {
        const auto& s = checked.predicted[d - 1];
        const auto& t = checked.reference[d - 1];
        seen_s.insert(s);
        if (seen_t.count(s)) ++overlap;
        seen_t.insert(t);
        if (seen_s.count(t)) ++overlap;
        total += static_cast<double>(overlap) / static_cast<double>(d);
    }
    return total / static_cast<double>(n);
}

double os_sim_mean(std::span<const RankingPair> pairs) {
    if (pairs.empty()) throw ValidationError("os_sim_mean needs at least one pair");
    double total = 0.0;
    for (const auto& p : pairs) total += os_sim(p);
    return total / static_cast<double>(pairs.size());
}

bool first_match(const RankingPair& pair) {
    if (pair.predicted.empty() || pair.reference.empty()) {
        throw ValidationError("rankings must not be empty");
    }
    return pair.predicted.front() == pair.reference.front();
}

double first_acc(std::span<const RankingPair> pairs) {
    if (pairs.empty()) throw ValidationError("first_acc needs at least one pair");
    std::size_t hits = 0;
    for (const auto& p : pairs) hits += first_match(p) ? 1 : 0;
    return static_cast<double>(hits) / static_cast<double>(pairs.size());
}

double spearman(const RankingPair& pair) {
    require_permutation(pair);
    const std::size_t n = pair.predicted.size();
    if (n < 2) return 1.0;
    const auto pos = positions_in(pair.predicted, pair.reference);
    double sum_sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double diff = static_cast<double>(pos[k]) - static_cast<double>(k);
        sum_sq += diff * diff;
    }
    const double nn = static_cast<double>(n);
    return 1.0 - 6.0 * sum_sq / (nn * (nn * nn - 1.0));
}

double kendall(const RankingPair& pair) {
    require_permutation(pair);
    const std::size_t n = pair.predicted.size();
    if (n < 2) return 1.0;
    const auto pos = positions_in(pair.predicted, pair.reference);
    long long concordant = 0, discordant = 0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = a + 1; b < n; ++b) {
            if (pos[a] < pos[b]) ++concordant;
            else ++discordant;
        }
    }
    const double pairs = static_cast<double>(n) * static_cast<double>(n - 1) / 2.0;
    return static_cast<double>(concordant - discordant) / pairs;
}

ScorePrediction ScorePrediction::make(std::vector<std::vector<double>> predicted,
                                      std::vector<std::vector<double>> gold) {
    if (predicted.size() != gold.size()) {
        throw ValidationError("predicted has " + std::to_string(predicted.size()) +
                              " rows, gold has " + std::to_string(gold.size()));
    }
    if (predicted.empty()) throw ValidationError("score prediction has no rows");
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        if (predicted[i].size() != gold[i].size() || predicted[i].empty()) {
            throw ValidationError("row " + std::to_string(i) + ": predicted has " +
                                  std::to_string(predicted[i].size()) + " columns, gold has " +
                                  std::to_string(gold[i].size()));
        }
        if (predicted[i].size() != predicted[0].size()) {
            throw ValidationError("row " + std::to_string(i) + " has a different column count");
        }
        for (std::size_t j = 0; j < predicted[i].size(); ++j) {
            for (double v : {predicted[i][j], gold[i][j]}) {
                if (!std::isfinite(v) || v < -1.0 || v > 1.0) {
                    throw ValidationError("row " + std::to_string(i) + " column " +
                                          std::to_string(j) + ": score out of [-1,1]");
                }
            }
        }
    }
    return ScorePrediction{std::move(predicted), std::move(gold)};
}

double avg_acc(const ScorePrediction& pred, double t) {
    if (!(t > 0.0)) throw ValidationError("accuracy threshold must be positive");
    const auto checked = ScorePrediction::make(pred.predicted, pred.gold);
    std::size_t hits = 0, total = 0;
    for (std::size_t i = 0; i < checked.predicted.size(); ++i) {
        for (std::size_t j = 0; j < checked.predicted[i].size(); ++j) {
            hits += std::abs(checked.predicted[i][j] - checked.gold[i][j]) < t ? 1 : 0;
            ++total;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(total);
}

double mae(const ScorePrediction& pred) {
    const auto checked = ScorePrediction::make(pred.predicted, pred.gold);
    double sum = 0.0;
    std::size_t total = 0;
    for (std::size_t i = 0; i < checked.predicted.size(); ++i) {
        for (std::size_t j = 0; j < checked.predicted[i].size(); ++j) {
            sum += std::abs(checked.predicted[i][j] - checked.gold[i][j]);
            ++total;
        }
    }
    return sum / static_cast<double>(total);
}

double mean(std::span<const double> xs) {
    if (xs.empty()) return 0.0;
    double s = 0.0;
    for (double x : xs) s += x;
    return s / static_cast<double>(xs.size());
}

double sample_sd(std::span<const double> xs) {
    if (xs.size() < 2) return 0.0;
    const double mu = mean(xs);
    double ss = 0.0;
    for (double x : xs) ss += (x - mu) * (x - mu);
    return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

}  // namespace valuerank
