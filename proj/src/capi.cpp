#include "valuerank/valuerank.h"

#include <chrono>
#include <cstdlib>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "valuerank/assessor.hpp"
#include "valuerank/harness.hpp"

struct vr_cases {
    valuerank::CaseSet set;
    std::string warnings;
};

struct vr_preferences {
    valuerank::PreferenceSet set;
};

struct vr_responses {
    std::vector<valuerank::Response> items;
};

namespace {

thread_local std::string g_last_error;

struct NullArgument : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

vr_status fail(vr_status code, const std::string& message) {
    g_last_error = message;
    return code;
}

template <class Fn>
vr_status guarded(Fn&& fn) {
    try {
        fn();
        return VR_OK;
    } catch (const NullArgument& e) {
        return fail(VR_ERR_ARGUMENT, e.what());
    } catch (const valuerank::ValidationError& e) {
        return fail(VR_ERR_VALIDATION, e.what());
    } catch (const valuerank::IoError& e) {
        return fail(VR_ERR_IO, e.what());
    } catch (const valuerank::AssessorError& e) {
        return fail(VR_ERR_ASSESSOR, e.what());
    } catch (const std::bad_alloc&) {
        return fail(VR_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(VR_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(VR_ERR_INTERNAL, "unknown error");
    }
}

char* dup(const std::string& s) {
    char* p = static_cast<char*>(std::malloc(s.size() + 1));
    if (!p) throw std::bad_alloc();
    std::memcpy(p, s.c_str(), s.size() + 1);
    return p;
}

void put(char** out, const std::string& s) {
    if (out) *out = dup(s);
}

template <class T>
const T& need(const T* p, const char* what) {
    if (!p) throw NullArgument(std::string(what) + " is NULL");
    return *p;
}

valuerank::Method to_method(vr_method m) {
    switch (m) {
        case VR_METHOD_PROMETHEE: return valuerank::Method::promethee;
        case VR_METHOD_AHP: return valuerank::Method::ahp;
        case VR_METHOD_MAUT: return valuerank::Method::maut;
        case VR_METHOD_TOPSIS: return valuerank::Method::topsis;
    }
    throw valuerank::ValidationError("unknown method value " + std::to_string(static_cast<int>(m)));
}

valuerank::Variant to_variant(vr_variant v) {
    switch (v) {
        case VR_VARIANT_FULL: return valuerank::Variant::full;
        case VR_VARIANT_ONLY_ACTION: return valuerank::Variant::only_action;
        case VR_VARIANT_NO_PREFERENCE: return valuerank::Variant::no_preference;
        case VR_VARIANT_NO_SUBJECTIVE: return valuerank::Variant::no_subjective;
        case VR_VARIANT_NO_SCENARIO: return valuerank::Variant::no_scenario;
    }
    throw valuerank::ValidationError("unknown variant value " + std::to_string(static_cast<int>(v)));
}

valuerank::RunOptions to_options(const vr_options* o) {
    vr_options defaults;
    vr_options_default(&defaults);
    if (!o) o = &defaults;
    valuerank::RunOptions out;
    out.scoring.w = o->w;
    out.scoring.sigmoid_scale = o->sigmoid_scale;
    out.scoring.validate();
    out.method = to_method(o->method);
    out.variant = to_variant(o->variant);
    out.explain = o->explain != 0;
    out.jobs = o->jobs == 0 ? 1 : o->jobs;
    return out;
}

std::vector<std::string> to_ids(const char* const* ids, std::size_t n, const char* what) {
    if (n && !ids) throw NullArgument(std::string(what) + " is NULL");
    std::vector<std::string> out;
    out.reserve(n);
    for (std::size_t k = 0; k < n; ++k) {
        if (!ids[k]) throw NullArgument(std::string(what) + " has a NULL id");
        out.emplace_back(ids[k]);
    }
    return out;
}

}  // namespace

extern "C" {

const char* vr_version(void) { return valuerank::kVersion; }

const char* vr_last_error(void) { return g_last_error.c_str(); }

void vr_string_free(char* s) { std::free(s); }

void vr_options_default(vr_options* options) {
    if (!options) return;
    options->w = 0.3;
    options->sigmoid_scale = 10.0;
    options->method = VR_METHOD_PROMETHEE;
    options->variant = VR_VARIANT_FULL;
    options->explain = 0;
    options->jobs = 1;
}

vr_status vr_method_parse(const char* name, vr_method* out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        auto m = valuerank::parse_method(name);
        if (!m) throw valuerank::ValidationError(std::string("unknown method '") + name + "'");
        *out = static_cast<vr_method>(static_cast<int>(*m));
    });
}

vr_status vr_variant_parse(const char* name, vr_variant* out) {
    return guarded([&] {
        need(name, "name");
        need(out, "out");
        auto v = valuerank::parse_variant(name);
        if (!v) throw valuerank::ValidationError(std::string("unknown variant '") + name + "'");
        *out = static_cast<vr_variant>(static_cast<int>(*v));
    });
}

const char* vr_method_name(vr_method method) {
    try {
        return valuerank::to_string(to_method(method)).data();
    } catch (...) {
        return "unknown";
    }
}

const char* vr_variant_name(vr_variant variant) {
    try {
        return valuerank::to_string(to_variant(variant)).data();
    } catch (...) {
        return "unknown";
    }
}

vr_status vr_cases_load(const char* path, vr_cases** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        auto handle = std::make_unique<vr_cases>();
        std::vector<std::string> warnings;
        handle->set = valuerank::load_cases(path, &warnings);
        for (const auto& w : warnings) handle->warnings += w + "\n";
        *out = handle.release();
    });
}

void vr_cases_free(vr_cases* cases) { delete cases; }

size_t vr_cases_count(const vr_cases* cases) { return cases ? cases->set.cases.size() : 0; }

size_t vr_cases_dimension_count(const vr_cases* cases) {
    return cases ? cases->set.dimension_count() : 0;
}

const char* vr_cases_warnings(const vr_cases* cases) { return cases ? cases->warnings.c_str() : ""; }

vr_status vr_cases_assess_remote(vr_cases* cases, const char* url, double timeout_seconds,
                                 size_t max_in_flight) {
    return guarded([&] {
        need(cases, "cases");
        need(url, "url");
        if (!(timeout_seconds > 0.0)) throw valuerank::ValidationError("timeout must be positive");
        if (!cases->set.dimensions) return;
        valuerank::RemoteAssessorOptions opts;
        opts.timeout = std::chrono::milliseconds(static_cast<long long>(timeout_seconds * 1000.0));
        valuerank::RemoteAssessor assessor(url, *cases->set.dimensions, opts);
        cases->set = valuerank::apply_assessor(cases->set, assessor, max_in_flight ? max_in_flight : 4);
    });
}

vr_status vr_preferences_load(const char* path, const vr_cases* cases, vr_preferences** out) {
    return guarded([&] {
        need(path, "path");
        need(out, "out");
        auto handle = std::make_unique<vr_preferences>();
        handle->set = valuerank::load_preferences(path, cases ? cases->set.dimension_count() : 0);
        *out = handle.release();
    });
}

void vr_preferences_free(vr_preferences* prefs) { delete prefs; }

int vr_preferences_has_subject(const vr_preferences* prefs, const char* subject_id) {
    return prefs && subject_id && prefs->set.find(subject_id) ? 1 : 0;
}

vr_status vr_responses_load(const char* path, const vr_cases* cases, vr_responses** out) {
    return guarded([&] {
        need(path, "path");
        const auto& c = need(cases, "cases");
        need(out, "out");
        auto handle = std::make_unique<vr_responses>();
        handle->items = valuerank::load_responses(path, c.set);
        *out = handle.release();
    });
}

void vr_responses_free(vr_responses* responses) { delete responses; }

size_t vr_responses_count(const vr_responses* responses) {
    return responses ? responses->items.size() : 0;
}

vr_status vr_rank(const vr_cases* cases, const vr_preferences* prefs, const char* subject_id,
                  const vr_options* options, char** json_out, char** table_out) {
    return guarded([&] {
        const auto& c = need(cases, "cases");
        const auto& p = need(prefs, "prefs");
        need(subject_id, "subject_id");
        const auto opts = to_options(options);
        const auto* vec = p.set.find(subject_id);
        if (!vec) throw valuerank::ValidationError(std::string("no preferences for subject '") + subject_id + "'");
        auto runs = valuerank::rank_all(c.set, *vec, opts);
        put(json_out, valuerank::ranking_json(c.set, subject_id, runs, opts));
        put(table_out, valuerank::ranking_table(c.set, subject_id, runs, opts));
    });
}

vr_status vr_evaluate(const vr_cases* cases, const vr_preferences* prefs,
                      const vr_responses* responses, const vr_options* options, char** json_out,
                      char** csv_out, char** table_out) {
    return guarded([&] {
        const auto& c = need(cases, "cases");
        const auto& p = need(prefs, "prefs");
        const auto& r = need(responses, "responses");
        auto rep = valuerank::evaluate(c.set, p.set, r.items, to_options(options));
        put(json_out, valuerank::evaluation_json(rep));
        put(csv_out, valuerank::evaluation_csv(rep));
        put(table_out, valuerank::evaluation_table(rep));
    });
}

vr_status vr_evaluate_predictions(const vr_responses* predictions, const vr_responses* responses,
                                  char** json_out, char** csv_out, char** table_out) {
    return guarded([&] {
        const auto& pred = need(predictions, "predictions");
        const auto& r = need(responses, "responses");
        auto rep = valuerank::evaluate_predictions(pred.items, r.items);
        put(json_out, valuerank::evaluation_json(rep));
        put(csv_out, valuerank::evaluation_csv(rep));
        put(table_out, valuerank::evaluation_table(rep));
    });
}

vr_status vr_compare_mcdm(const vr_cases* cases, const vr_preferences* prefs,
                          const vr_responses* responses, const vr_options* options,
                          char** json_out, char** csv_out, char** table_out) {
    return guarded([&] {
        const auto& c = need(cases, "cases");
        const auto& p = need(prefs, "prefs");
        const auto& r = need(responses, "responses");
        auto rows = valuerank::compare_mcdm(c.set, p.set, r.items, to_options(options));
        put(json_out, valuerank::comparison_json(rows));
        put(csv_out, valuerank::comparison_csv(rows));
        put(table_out, valuerank::comparison_table(rows));
    });
}

vr_status vr_assess_accuracy(const char* predicted_path, const char* gold_path,
                             const double* thresholds, size_t threshold_count, char** json_out,
                             char** table_out) {
    return guarded([&] {
        need(predicted_path, "predicted_path");
        need(gold_path, "gold_path");
        if (threshold_count) need(thresholds, "thresholds");
        auto pred = valuerank::ScorePrediction::make(valuerank::load_score_table(predicted_path),
                                                     valuerank::load_score_table(gold_path));
        std::vector<double> ts(thresholds, thresholds + threshold_count);
        auto rep = valuerank::assess_accuracy(pred, ts);
        put(json_out, valuerank::accuracy_json(rep));
        put(table_out, valuerank::accuracy_table(rep));
    });
}

vr_status vr_validate_files(const char* cases_path, const char* preferences_path,
                            const char* responses_path, size_t* violations, char** report_out) {
    return guarded([&] {
        auto s = valuerank::validate_files(cases_path ? cases_path : "",
                                           preferences_path ? preferences_path : "",
                                           responses_path ? responses_path : "");
        if (violations) *violations = s.errors.size();
        put(report_out, valuerank::validation_text(s));
    });
}

vr_status vr_file_sha256(const char* path, char** hex_out) {
    return guarded([&] {
        need(path, "path");
        put(hex_out, valuerank::file_sha256(path));
    });
}

vr_status vr_rank_matrix(vr_method method, const double* scores, size_t n, size_t m,
                         const double* weights, size_t* order_out, double* key_out) {
    return guarded([&] {
        need(scores, "scores");
        need(weights, "weights");
        need(order_out, "order_out");
        if (n == 0 || m == 0) throw valuerank::ValidationError("score matrix must be non-empty");
        valuerank::ScoreMatrix matrix(n, m);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t j = 0; j < m; ++j) matrix(i, j) = scores[i * m + j];
        }
        std::vector<std::string> ids;
        for (std::size_t i = 0; i < n; ++i) ids.push_back(std::to_string(i));
        auto r = valuerank::rank_matrix(to_method(method), matrix, std::span<const double>(weights, m), ids);
        for (std::size_t k = 0; k < n; ++k) order_out[k] = r.order[k];
        if (key_out) {
            for (std::size_t k = 0; k < n; ++k) key_out[k] = r.flows[k];
        }
    });
}

vr_status vr_os_sim(const char* const* predicted, const char* const* reference, size_t n,
                    double* out) {
    return guarded([&] {
        need(out, "out");
        auto pair = valuerank::RankingPair::make(to_ids(predicted, n, "predicted"),
                                                 to_ids(reference, n, "reference"));
        *out = valuerank::os_sim(pair);
    });
}

vr_status vr_rank_correlation(const char* const* predicted, const char* const* reference, size_t n,
                              double* spearman_out, double* kendall_out) {
    return guarded([&] {
        auto pair = valuerank::RankingPair::make(to_ids(predicted, n, "predicted"),
                                                 to_ids(reference, n, "reference"));
        const double s = valuerank::spearman(pair);
        const double k = valuerank::kendall(pair);
        if (spearman_out) *spearman_out = s;
        if (kendall_out) *kendall_out = k;
    });
}

}  // extern "C"
