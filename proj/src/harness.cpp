#include "valuerank/harness.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <openssl/evp.h>

#include <json.hpp>

#include "parallel.hpp"

namespace valuerank {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json numbers(const std::vector<double>& v) {
    ordered_json a = ordered_json::array();
    for (double d : v) a.push_back(d);
    return a;
}

std::string pad(const std::string& s, std::size_t width) {
    return s.size() >= width ? s + " " : s + std::string(width - s.size(), ' ');
}

ordered_json explain_json(const DecisionCase& c, const PipelineRun& run) {
    ordered_json e;
    const auto& sc = run.scoring;
    e["p_prime"] = numbers(sc.p_prime);
    e["weights"] = numbers(run.weights);
    e["scenario"] = {{"discrepancy", numbers(sc.scenario_discrepancy)},
                     {"integrated", numbers(sc.scenario_integrated)}};
    ordered_json actions = ordered_json::array();
    for (std::size_t i = 0; i < c.actions.size(); ++i) {
        ordered_json a;
        a["id"] = c.actions[i].id;
        a["discrepancy"] = numbers(i < sc.action_discrepancy.size() ? sc.action_discrepancy[i]
                                                                     : std::vector<double>{});
        a["integrated"] = numbers(i < sc.action_integrated.size() ? sc.action_integrated[i]
                                                                   : std::vector<double>{});
        a["contextualized"] = numbers(sc.scores.row(i));
        actions.push_back(std::move(a));
    }
    e["actions"] = std::move(actions);
    if (run.detail) {
        const auto& pp = run.detail->pairwise;
        ordered_json agg = ordered_json::array();
        for (std::size_t i = 0; i < pp.actions; ++i) {
            ordered_json row = ordered_json::array();
            for (std::size_t k = 0; k < pp.actions; ++k) {
                if (i == k) row.push_back(nullptr);
                else row.push_back(pp.aggregate_at(i, k));
            }
            agg.push_back(std::move(row));
        }
        e["aggregated_preference"] = std::move(agg);
    }
    return e;
}

std::vector<PairOutcome> pair_outcomes_checked(const std::vector<Response>& responses,
                                               const std::vector<std::vector<std::string>>& predicted) {
    std::vector<PairOutcome> pairs;
    pairs.reserve(responses.size());
    for (std::size_t k = 0; k < responses.size(); ++k) {
        const auto& r = responses[k];
        const auto pair = RankingPair::make(predicted[k], r.ranking);
        PairOutcome o;
        o.subject_id = r.subject_id;
        o.scenario_id = r.scenario_id;
        o.predicted = pair.predicted;
        o.reference = pair.reference;
        o.os_sim = os_sim(pair);
        o.first_match = first_match(pair);
        if (pair.same_elements()) {
            o.spearman = spearman(pair);
            o.kendall = kendall(pair);
        }
        pairs.push_back(std::move(o));
    }
    return pairs;
}

}  // namespace

std::string round_trip(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string fixed6(double v) {
    std::ostringstream ss;
    ss << std::fixed << std::setprecision(6) << v;
    return ss.str();
}

std::vector<PipelineRun> rank_all(const CaseSet& cases, const PreferenceVector& prefs,
                                  const RunOptions& options) {
    options.scoring.validate();
    if (cases.dimensions && prefs.size() != cases.dimension_count()) {
        throw ValidationError("preference vector has length " + std::to_string(prefs.size()) +
                              ", cases have " + std::to_string(cases.dimension_count()) +
                              " dimensions");
    }
    std::vector<PipelineRun> runs(cases.cases.size());
    detail::parallel_for(cases.cases.size(), options.jobs, [&](std::size_t k) {
        runs[k] = run_pipeline(options.variant, options.method, cases.cases[k], prefs, options.scoring);
    });
    return runs;
}

std::string ranking_json(const CaseSet& cases, const std::string& subject,
                         const std::vector<PipelineRun>& runs, const RunOptions& options) {
    ordered_json doc;
    doc["subject_id"] = subject;
    doc["method"] = std::string(to_string(options.method));
    doc["variant"] = std::string(to_string(options.variant));
    doc["w"] = options.scoring.w;
    doc["sigmoid_scale"] = options.scoring.sigmoid_scale;
    doc["dimensions"] = cases.dimensions ? cases.dimensions->names() : std::vector<std::string>{};
    ordered_json out = ordered_json::array();
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& c = cases.cases[k];
        const auto& r = runs[k].ranking;
        std::vector<std::size_t> position(c.actions.size());
        for (std::size_t p = 0; p < r.order.size(); ++p) position[r.order[p]] = p + 1;

        ordered_json entry;
        entry["scenario_id"] = c.scenario_id;
        entry["ranking"] = r.order_ids;
        ordered_json actions = ordered_json::array();
        for (std::size_t i = 0; i < c.actions.size(); ++i) {
            ordered_json a;
            a["id"] = c.actions[i].id;
            a["rank"] = position[i];
            a["score"] = r.flows[i];
            if (!r.positive_flows.empty()) {
                a["positive_flow"] = r.positive_flows[i];
                a["negative_flow"] = r.negative_flows[i];
            }
            actions.push_back(std::move(a));
        }
        entry["actions"] = std::move(actions);
        if (options.explain) entry["explain"] = explain_json(c, runs[k]);
        out.push_back(std::move(entry));
    }
    doc["cases"] = std::move(out);
    return doc.dump(2) + "\n";
}

std::string ranking_table(const CaseSet& cases, const std::string& subject,
                          const std::vector<PipelineRun>& runs, const RunOptions& options) {
    std::ostringstream ss;
    const bool flows = options.method == Method::promethee;
    for (std::size_t k = 0; k < runs.size(); ++k) {
        const auto& c = cases.cases[k];
        const auto& r = runs[k].ranking;
        ss << "scenario " << c.scenario_id << "  (subject " << subject << ", method "
           << to_string(options.method) << ", variant " << to_string(options.variant) << ")\n";
        ss << "  " << pad("rank", 6) << pad("action", 16) << pad(flows ? "phi" : "score", 12);
        if (flows) ss << pad("phi+", 12) << pad("phi-", 12);
        ss << "\n";
        for (std::size_t p = 0; p < r.order.size(); ++p) {
            const auto i = r.order[p];
            ss << "  " << pad(std::to_string(p + 1), 6) << pad(c.actions[i].id, 16)
               << pad(fixed6(r.flows[i]), 12);
            if (flows) ss << pad(fixed6(r.positive_flows[i]), 12) << pad(fixed6(r.negative_flows[i]), 12);
            ss << "\n";
        }
    }
    return ss.str();
}

EvaluationReport summarize(std::string label, std::string variant, std::vector<PairOutcome> pairs) {
    if (pairs.empty()) throw ValidationError("evaluation needs at least one response");
    EvaluationReport rep;
    rep.label = std::move(label);
    rep.variant = std::move(variant);

    std::vector<std::string> order;
    std::map<std::string, std::vector<const PairOutcome*>> by_subject;
    for (const auto& p : pairs) {
        auto [it, inserted] = by_subject.try_emplace(p.subject_id);
        if (inserted) order.push_back(p.subject_id);
        it->second.push_back(&p);
    }
    std::vector<double> pooled_os, subject_means, subject_first;
    std::size_t first_hits = 0;
    for (const auto& p : pairs) {
        pooled_os.push_back(p.os_sim);
        first_hits += p.first_match ? 1 : 0;
    }
    for (const auto& s : order) {
        const auto& items = by_subject[s];
        std::vector<double> os;
        std::size_t hits = 0;
        for (const auto* p : items) {
            os.push_back(p->os_sim);
            hits += p->first_match ? 1 : 0;
        }
        SubjectSummary sum;
        sum.subject_id = s;
        sum.cases = items.size();
        sum.os_sim_mean = mean(os);
        sum.os_sim_sd = sample_sd(os);
        sum.first_acc = static_cast<double>(hits) / static_cast<double>(items.size());
        subject_means.push_back(sum.os_sim_mean);
        subject_first.push_back(sum.first_acc);
        rep.subjects.push_back(std::move(sum));
    }
    rep.os_sim_mean_of_means = mean(subject_means);
    rep.os_sim_sd_of_subject_means = sample_sd(subject_means);
    rep.os_sim_pooled_mean = mean(pooled_os);
    rep.os_sim_pooled_sd = sample_sd(pooled_os);
    rep.first_acc_mean_of_means = mean(subject_first);
    rep.first_acc_pooled = static_cast<double>(first_hits) / static_cast<double>(pairs.size());
    rep.pairs = std::move(pairs);
    return rep;
}

EvaluationReport evaluate(const CaseSet& cases, const PreferenceSet& prefs,
                          const std::vector<Response>& responses, const RunOptions& options) {
    options.scoring.validate();
    if (responses.empty()) throw ValidationError("evaluation needs at least one response");
    std::vector<Issue> missing;
    for (const auto& r : responses) {
        if (!prefs.find(r.subject_id)) {
            missing.push_back({"responses", r.line, "$.subject_id",
                               "subject '" + r.subject_id + "' has no preferences"});
        } else if (!cases.find(r.scenario_id)) {
            missing.push_back({"responses", r.line, "$.scenario_id",
                               "unknown scenario_id '" + r.scenario_id + "'"});
        }
    }
    raise_issues(missing);

    std::vector<std::vector<std::string>> predicted(responses.size());
    detail::parallel_for(responses.size(), options.jobs, [&](std::size_t k) {
        const auto& r = responses[k];
        predicted[k] = run_pipeline(options.variant, options.method, *cases.find(r.scenario_id),
                                    *prefs.find(r.subject_id), options.scoring)
                           .ranking.order_ids;
    });
    return summarize(std::string(to_string(options.method)), std::string(to_string(options.variant)),
                     pair_outcomes_checked(responses, predicted));
}

EvaluationReport evaluate_predictions(const std::vector<Response>& predictions,
                                      const std::vector<Response>& responses) {
    std::map<std::pair<std::string, std::string>, const Response*> index;
    for (const auto& p : predictions) index.emplace(std::pair{p.subject_id, p.scenario_id}, &p);
    std::vector<Issue> missing;
    std::vector<std::vector<std::string>> predicted;
    for (const auto& r : responses) {
        auto it = index.find({r.subject_id, r.scenario_id});
        if (it == index.end()) {
            missing.push_back({"responses", r.line, "$",
                               "no prediction for subject '" + r.subject_id + "' and scenario '" +
                                   r.scenario_id + "'"});
            continue;
        }
        predicted.push_back(it->second->ranking);
    }
    raise_issues(missing);
    return summarize("external", "", pair_outcomes_checked(responses, predicted));
}

namespace {

ordered_json report_summary_json(const EvaluationReport& rep) {
    ordered_json s;
    s["os_sim_mean_of_means"] = rep.os_sim_mean_of_means;
    s["os_sim_sd_of_subject_means"] = rep.os_sim_sd_of_subject_means;
    s["os_sim_pooled_mean"] = rep.os_sim_pooled_mean;
    s["os_sim_pooled_sd"] = rep.os_sim_pooled_sd;
    s["first_acc_mean_of_means"] = rep.first_acc_mean_of_means;
    s["first_acc_pooled"] = rep.first_acc_pooled;
    s["subjects"] = rep.subjects.size();
    s["pairs"] = rep.pairs.size();
    return s;
}

}  // namespace

std::string evaluation_json(const EvaluationReport& rep) {
    ordered_json doc;
    doc["method"] = rep.label;
    doc["variant"] = rep.variant;
    doc["summary"] = report_summary_json(rep);
    ordered_json subjects = ordered_json::array();
    for (const auto& s : rep.subjects) {
        subjects.push_back({{"subject_id", s.subject_id},
                            {"cases", s.cases},
                            {"os_sim_mean", s.os_sim_mean},
                            {"os_sim_sd", s.os_sim_sd},
                            {"first_acc", s.first_acc}});
    }
    doc["subjects"] = std::move(subjects);
    ordered_json pairs = ordered_json::array();
    for (const auto& p : rep.pairs) {
        pairs.push_back({{"subject_id", p.subject_id},
                         {"case_id", p.scenario_id},
                         {"predicted", p.predicted},
                         {"reference", p.reference},
                         {"os_sim", p.os_sim},
                         {"first_match", p.first_match},
                         {"spearman", p.spearman},
                         {"kendall", p.kendall}});
    }
    doc["pairs"] = std::move(pairs);
    return doc.dump(2) + "\n";
}

std::string evaluation_csv(const EvaluationReport& rep) {
    std::ostringstream ss;
    ss << "subject_id,case_id,os_sim,first_match\n";
    for (const auto& p : rep.pairs) {
        ss << p.subject_id << "," << p.scenario_id << "," << round_trip(p.os_sim) << ","
           << (p.first_match ? 1 : 0) << "\n";
    }
    // Summary rows: os_sim column carries the OS-Sim statistic, first_match
    // the matching First-Acc statistic where one exists.
    for (const auto& s : rep.subjects) {
        ss << s.subject_id << ",__mean__," << round_trip(s.os_sim_mean) << "," << round_trip(s.first_acc) << "\n";
        ss << s.subject_id << ",__sd__," << round_trip(s.os_sim_sd) << ",\n";
    }
    ss << "__all__,__mean_of_means__," << round_trip(rep.os_sim_mean_of_means) << ","
       << round_trip(rep.first_acc_mean_of_means) << "\n";
    ss << "__all__,__sd_of_subject_means__," << round_trip(rep.os_sim_sd_of_subject_means) << ",\n";
    ss << "__all__,__pooled_mean__," << round_trip(rep.os_sim_pooled_mean) << ","
       << round_trip(rep.first_acc_pooled) << "\n";
    ss << "__all__,__pooled_sd__," << round_trip(rep.os_sim_pooled_sd) << ",\n";
    return ss.str();
}

std::string evaluation_table(const EvaluationReport& rep) {
    std::ostringstream ss;
    ss << "method " << rep.label;
    if (!rep.variant.empty()) ss << ", variant " << rep.variant;
    ss << "\n  " << pad("subject", 16) << pad("cases", 8) << pad("OS-Sim", 12) << pad("sd", 12)
       << pad("First-Acc", 12) << "\n";
    for (const auto& s : rep.subjects) {
        ss << "  " << pad(s.subject_id, 16) << pad(std::to_string(s.cases), 8)
           << pad(fixed6(s.os_sim_mean), 12) << pad(fixed6(s.os_sim_sd), 12)
           << pad(fixed6(s.first_acc), 12) << "\n";
    }
    ss << "  mean of subject means: OS-Sim " << fixed6(rep.os_sim_mean_of_means) << " (sd "
       << fixed6(rep.os_sim_sd_of_subject_means) << "), First-Acc "
       << fixed6(rep.first_acc_mean_of_means) << "\n";
    ss << "  pooled over " << rep.pairs.size() << " pairs: OS-Sim " << fixed6(rep.os_sim_pooled_mean)
       << " (sd " << fixed6(rep.os_sim_pooled_sd) << "), First-Acc " << fixed6(rep.first_acc_pooled)
       << "\n";
    return ss.str();
}

std::vector<EvaluationReport> compare_mcdm(const CaseSet& cases, const PreferenceSet& prefs,
                                           const std::vector<Response>& responses,
                                           const RunOptions& options) {
    std::vector<EvaluationReport> rows;
    for (Method m : kAllMethods) {
        RunOptions o = options;
        o.method = m;
        rows.push_back(evaluate(cases, prefs, responses, o));
    }
    return rows;
}

std::string comparison_json(const std::vector<EvaluationReport>& rows) {
    ordered_json doc;
    ordered_json methods = ordered_json::array();
    for (const auto& r : rows) {
        ordered_json row;
        row["method"] = r.label;
        row["variant"] = r.variant;
        row["summary"] = report_summary_json(r);
        ordered_json tops = ordered_json::array();
        for (const auto& p : r.pairs) {
            tops.push_back({{"subject_id", p.subject_id}, {"case_id", p.scenario_id},
                            {"top", p.predicted.front()}, {"os_sim", p.os_sim}});
        }
        row["pairs"] = std::move(tops);
        methods.push_back(std::move(row));
    }
    doc["methods"] = std::move(methods);
    return doc.dump(2) + "\n";
}

std::string comparison_csv(const std::vector<EvaluationReport>& rows) {
    std::ostringstream ss;
    ss << "method,os_sim_mean_of_means,os_sim_sd_of_subject_means,os_sim_pooled_mean,"
          "os_sim_pooled_sd,first_acc_mean_of_means,first_acc_pooled\n";
    for (const auto& r : rows) {
        ss << r.label << "," << round_trip(r.os_sim_mean_of_means) << ","
           << round_trip(r.os_sim_sd_of_subject_means) << "," << round_trip(r.os_sim_pooled_mean) << ","
           << round_trip(r.os_sim_pooled_sd) << "," << round_trip(r.first_acc_mean_of_means) << ","
           << round_trip(r.first_acc_pooled) << "\n";
    }
    return ss.str();
}

std::string comparison_table(const std::vector<EvaluationReport>& rows) {
    std::ostringstream ss;
    ss << pad("method", 12) << pad("OS-Sim", 12) << pad("sd", 12) << pad("First-Acc", 12) << "\n";
    for (const auto& r : rows) {
        ss << pad(r.label, 12) << pad(fixed6(r.os_sim_mean_of_means), 12)
           << pad(fixed6(r.os_sim_sd_of_subject_means), 12) << pad(fixed6(r.first_acc_mean_of_means), 12)
           << "\n";
    }
    return ss.str();
}

AccuracyReport assess_accuracy(const ScorePrediction& prediction, const std::vector<double>& thresholds) {
    if (thresholds.empty()) throw ValidationError("at least one accuracy threshold is required");
    AccuracyReport rep;
    rep.samples = prediction.predicted.size();
    rep.dimensions = rep.samples ? prediction.predicted.front().size() : 0;
    rep.thresholds = thresholds;
    for (double t : thresholds) rep.avg_acc.push_back(avg_acc(prediction, t));
    rep.mae = mae(prediction);
    return rep;
}

std::string accuracy_json(const AccuracyReport& rep) {
    ordered_json doc;
    doc["samples"] = rep.samples;
    doc["dimensions"] = rep.dimensions;
    ordered_json acc = ordered_json::array();
    for (std::size_t k = 0; k < rep.thresholds.size(); ++k) {
        acc.push_back({{"threshold", rep.thresholds[k]}, {"avg_acc", rep.avg_acc[k]}});
    }
    doc["avg_acc"] = std::move(acc);
    doc["mae"] = rep.mae;
    return doc.dump(2) + "\n";
}

std::string accuracy_table(const AccuracyReport& rep) {
    std::ostringstream ss;
    for (double t : rep.thresholds) {
        std::ostringstream h;
        h << "AvgAcc(t=" << t << ")";
        ss << pad(h.str(), 18);
    }
    ss << "MAE\n";
    for (double a : rep.avg_acc) {
        std::ostringstream v;
        v << std::fixed << std::setprecision(2) << a * 100.0 << "%";
        ss << pad(v.str(), 18);
    }
    ss << fixed6(rep.mae) << "\n";
    return ss.str();
}

ValidationSummary validate_files(const std::string& cases_path, const std::string& preferences_path,
                                 const std::string& responses_path) {
    ValidationSummary out;
    auto take = [&](auto& loaded) {
        out.errors.insert(out.errors.end(), loaded.errors.begin(), loaded.errors.end());
        out.warnings.insert(out.warnings.end(), loaded.warnings.begin(), loaded.warnings.end());
    };
    CaseSet cases;
    if (!cases_path.empty()) {
        std::ifstream in(cases_path, std::ios::binary);
        if (!in) throw IoError("cannot open '" + cases_path + "'");
        auto loaded = read_cases(in, cases_path);
        take(loaded);
        cases = std::move(loaded.value);
    }
    if (!preferences_path.empty()) {
        const std::size_t m = cases.dimension_count();
        auto loaded = read_preferences(read_file(preferences_path), preferences_path, m);
        take(loaded);
    }
    if (!responses_path.empty()) {
        std::ifstream in(responses_path, std::ios::binary);
        if (!in) throw IoError("cannot open '" + responses_path + "'");
        auto loaded = read_responses(in, responses_path, cases);
        take(loaded);
    }
    return out;
}

std::string validation_text(const ValidationSummary& summary) {
    std::ostringstream ss;
    for (const auto& e : summary.errors) ss << "error: " << e.to_string() << "\n";
    for (const auto& w : summary.warnings) ss << "warning: " << w.to_string() << "\n";
    ss << summary.errors.size() << (summary.errors.size() == 1 ? " violation" : " violations") << "\n";
    return ss.str();
}

std::string file_sha256(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
    EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr);
    char buf[1 << 16];
    while (in.read(buf, sizeof buf) || in.gcount() > 0) {
        EVP_DigestUpdate(ctx.get(), buf, static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest, &len);
    std::ostringstream ss;
    for (unsigned int k = 0; k < len; ++k) {
        ss << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[k]);
    }
    return ss.str();
}

}  // namespace valuerank
