// valuerank command-line tool. Talks to the engine only through the C API.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "valuerank/valuerank.h"

namespace {

using ordered_json = nlohmann::ordered_json;

// Exit codes: 0 ok, 1 validation/usage, 2 I/O, 3 remote assessor.
int exit_code(vr_status s) {
    switch (s) {
        case VR_OK: return 0;
        case VR_ERR_IO: return 2;
        case VR_ERR_ASSESSOR: return 3;
        default: return 1;
    }
}

struct Failure {
    int code;
    std::string message;
};

void check(vr_status s) {
    if (s != VR_OK) throw Failure{exit_code(s), vr_last_error()};
}

struct CString {
    char* p = nullptr;
    ~CString() { vr_string_free(p); }
    char** out() { return &p; }
    std::string str() const { return p ? std::string(p) : std::string(); }
};

template <class T, void (*Free)(T*)>
struct Handle {
    T* p = nullptr;
    ~Handle() {
        if (p) Free(p);
    }
    T** out() { return &p; }
};

using Cases = Handle<vr_cases, vr_cases_free>;
using Prefs = Handle<vr_preferences, vr_preferences_free>;
using Responses = Handle<vr_responses, vr_responses_free>;

struct CommonFlags {
    double w = 0.3;
    double sigmoid_scale = 10.0;
    std::string method = "promethee";
    std::string variant = "full";
    std::size_t jobs = 1;
    std::string out_dir;
    bool json_stdout = false;
    std::string assessor_url;
    double assessor_timeout = 30.0;
};

void add_scoring_flags(CLI::App* cmd, CommonFlags& f, bool with_method) {
    cmd->add_option("--w", f.w, "Subjective weight in [0,1]")->capture_default_str();
    cmd->add_option("--sigmoid-scale", f.sigmoid_scale, "Preference transform steepness")
        ->capture_default_str();
    if (with_method) {
        cmd->add_option("--method", f.method, "promethee|ahp|maut|topsis")->capture_default_str();
    }
    cmd->add_option("--variant", f.variant,
                    "full|only-action|no-preference|no-subjective|no-scenario")
        ->capture_default_str();
    cmd->add_option("--jobs", f.jobs, "Worker threads")->capture_default_str();
    cmd->add_option("--assessor-url", f.assessor_url,
                    "Score cases through a remote assessor (env VALUERANK_ASSESSOR_URL)")
        ->envname("VALUERANK_ASSESSOR_URL");
    cmd->add_option("--assessor-timeout", f.assessor_timeout, "Assessor timeout in seconds")
        ->capture_default_str();
}

void add_output_flags(CLI::App* cmd, CommonFlags& f) {
    cmd->add_option("--out", f.out_dir, "Directory for JSON/CSV outputs and the run manifest");
    cmd->add_flag("--json", f.json_stdout, "Print JSON to standard output instead of the table");
}

vr_options make_options(const CommonFlags& f, bool explain) {
    vr_options o;
    vr_options_default(&o);
    o.w = f.w;
    o.sigmoid_scale = f.sigmoid_scale;
    check(vr_method_parse(f.method.c_str(), &o.method));
    check(vr_variant_parse(f.variant.c_str(), &o.variant));
    o.explain = explain ? 1 : 0;
    o.jobs = f.jobs == 0 ? 1 : f.jobs;
    return o;
}

std::string sha256(const std::string& path) {
    CString hex;
    check(vr_file_sha256(path.c_str(), hex.out()));
    return hex.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    out << text;
    out.close();
    if (!out) throw Failure{2, "cannot write '" + path.string() + "'"};
}

// Reproducibility record written next to every set of outputs. Contains no
// timestamps or thread counts so identical runs produce identical manifests.
class Manifest {
public:
    explicit Manifest(std::string command) {
        doc_["tool"] = "valuerank";
        doc_["version"] = vr_version();
        doc_["command"] = std::move(command);
        doc_["config"] = ordered_json::object();
        doc_["inputs"] = ordered_json::array();
        doc_["outputs"] = ordered_json::array();
    }

    void config(const std::string& key, ordered_json value) { doc_["config"][key] = std::move(value); }

    void input(const std::string& role, const std::string& path) {
        if (path.empty()) return;
        doc_["inputs"].push_back({{"role", role}, {"path", path}, {"sha256", sha256(path)}});
    }

    void scoring(const CommonFlags& f, bool with_method) {
        config("w", f.w);
        config("sigmoid_scale", f.sigmoid_scale);
        if (with_method) config("method", f.method);
        config("variant", f.variant);
        if (!f.assessor_url.empty()) config("assessor_url", f.assessor_url);
    }

    // Writes each (file name, content) pair plus manifest.json into `dir`.
    void write(const std::string& dir, const std::vector<std::pair<std::string, std::string>>& files) {
        std::error_code ec;
        std::filesystem::create_directories(dir, ec);
        if (ec) throw Failure{2, "cannot create output directory '" + dir + "': " + ec.message()};
        for (const auto& [name, text] : files) {
            write_text(std::filesystem::path(dir) / name, text);
            doc_["outputs"].push_back(name);
        }
        write_text(std::filesystem::path(dir) / "manifest.json", doc_.dump(2) + "\n");
    }

private:
    ordered_json doc_;
};

void load_inputs(const std::string& cases_path, const std::string& prefs_path,
                 const std::string& responses_path, const CommonFlags& f, Cases& cases,
                 Prefs* prefs, Responses* responses) {
    check(vr_cases_load(cases_path.c_str(), cases.out()));
    const std::string warnings = vr_cases_warnings(cases.p);
    if (!warnings.empty()) std::cerr << "warning: " << warnings;
    if (!f.assessor_url.empty()) {
        check(vr_cases_assess_remote(cases.p, f.assessor_url.c_str(), f.assessor_timeout, 4));
    }
    if (prefs && !prefs_path.empty()) check(vr_preferences_load(prefs_path.c_str(), cases.p, prefs->out()));
    if (responses && !responses_path.empty()) {
        check(vr_responses_load(responses_path.c_str(), cases.p, responses->out()));
    }
}

void emit(const CommonFlags& f, const std::string& json, const std::string& table) {
    std::cout << (f.json_stdout ? json : table);
}

std::vector<double> parse_thresholds(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            double t = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            out.push_back(t);
        } catch (const std::exception&) {
            throw Failure{1, "invalid threshold '" + item + "'"};
        }
    }
    if (out.empty()) throw Failure{1, "no thresholds given"};
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"valuerank: value-preference action ranking and alignment evaluation"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string(vr_version()));

    // rank
    CommonFlags rank_f;
    std::string rank_cases, rank_prefs, rank_subject;
    bool rank_explain = false;
    auto* rank = app.add_subcommand("rank", "Rank candidate actions for one subject");
    rank->add_option("--cases", rank_cases, "Case file (JSONL)")->required();
    rank->add_option("--preferences", rank_prefs, "Preference file (JSON)")->required();
    rank->add_option("--subject", rank_subject, "Subject id (optional when the file has one subject)");
    rank->add_flag("--explain", rank_explain, "Include intermediate scores in the JSON");
    add_scoring_flags(rank, rank_f, true);
    add_output_flags(rank, rank_f);

    // evaluate
    CommonFlags eval_f;
    std::string eval_cases, eval_prefs, eval_responses, eval_predictions;
    auto* evaluate = app.add_subcommand("evaluate", "Compare engine rankings with human rankings");
    evaluate->add_option("--cases", eval_cases, "Case file (JSONL)")->required();
    evaluate->add_option("--preferences", eval_prefs, "Preference file (JSON)");
    evaluate->add_option("--responses", eval_responses, "Human ranking file (JSONL)")->required();
    evaluate->add_option("--predictions", eval_predictions,
                         "Externally produced rankings (JSONL, response format) to score instead "
                         "of running the engine");
    add_scoring_flags(evaluate, eval_f, true);
    add_output_flags(evaluate, eval_f);

    // compare-mcdm
    CommonFlags cmp_f;
    std::string cmp_cases, cmp_prefs, cmp_responses;
    auto* compare = app.add_subcommand("compare-mcdm", "Evaluate all four ranking backends side by side");
    compare->add_option("--cases", cmp_cases, "Case file (JSONL)")->required();
    compare->add_option("--preferences", cmp_prefs, "Preference file (JSON)")->required();
    compare->add_option("--responses", cmp_responses, "Human ranking file (JSONL)")->required();
    add_scoring_flags(compare, cmp_f, false);
    add_output_flags(compare, cmp_f);

    // assess-accuracy
    CommonFlags acc_f;
    std::string acc_pred, acc_gold, acc_thresholds = "0.2,0.05";
    auto* accuracy = app.add_subcommand("assess-accuracy", "AvgAcc and MAE of predicted value scores");
    accuracy->add_option("--predicted", acc_pred, "Predicted scores (CSV or .json)")->required();
    accuracy->add_option("--gold", acc_gold, "Gold scores (CSV or .json)")->required();
    accuracy->add_option("--thresholds", acc_thresholds, "Comma-separated thresholds")
        ->capture_default_str();
    add_output_flags(accuracy, acc_f);

    // validate
    std::string val_cases, val_prefs, val_responses;
    auto* validate = app.add_subcommand("validate", "Check input files and report every violation");
    validate->add_option("--cases", val_cases, "Case file (JSONL)")->required();
    validate->add_option("--preferences", val_prefs, "Preference file (JSON)");
    validate->add_option("--responses", val_responses, "Human ranking file (JSONL)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (rank->parsed()) {
            const vr_options opts = make_options(rank_f, rank_explain);
            Cases cases;
            Prefs prefs;
            load_inputs(rank_cases, rank_prefs, "", rank_f, cases, &prefs, nullptr);
            if (rank_subject.empty()) {
                std::ifstream in(rank_prefs);
                auto doc = nlohmann::json::parse(in, nullptr, false);
                if (doc.is_object() && doc.size() == 1) rank_subject = doc.begin().key();
                else throw Failure{1, "--subject is required when the preference file has several subjects"};
            }
            CString json, table;
            check(vr_rank(cases.p, prefs.p, rank_subject.c_str(), &opts, json.out(), table.out()));
            emit(rank_f, json.str(), table.str());
            if (!rank_f.out_dir.empty()) {
                Manifest m("rank");
                m.scoring(rank_f, true);
                m.config("subject", rank_subject);
                m.config("explain", rank_explain);
                m.input("cases", rank_cases);
                m.input("preferences", rank_prefs);
                m.write(rank_f.out_dir, {{"ranking.json", json.str()}});
            }
        } else if (evaluate->parsed()) {
            Cases cases;
            Prefs prefs;
            Responses responses, predictions;
            CString json, csv, table;
            Manifest m("evaluate");
            if (!eval_predictions.empty()) {
                load_inputs(eval_cases, "", eval_responses, eval_f, cases, nullptr, &responses);
                check(vr_responses_load(eval_predictions.c_str(), cases.p, predictions.out()));
                check(vr_evaluate_predictions(predictions.p, responses.p, json.out(), csv.out(), table.out()));
                m.input("predictions", eval_predictions);
            } else {
                if (eval_prefs.empty()) throw Failure{1, "--preferences is required unless --predictions is given"};
                const vr_options opts = make_options(eval_f, false);
                load_inputs(eval_cases, eval_prefs, eval_responses, eval_f, cases, &prefs, &responses);
                check(vr_evaluate(cases.p, prefs.p, responses.p, &opts, json.out(), csv.out(), table.out()));
                m.scoring(eval_f, true);
            }
            emit(eval_f, json.str(), table.str());
            if (!eval_f.out_dir.empty()) {
                m.input("cases", eval_cases);
                m.input("preferences", eval_prefs);
                m.input("responses", eval_responses);
                m.write(eval_f.out_dir, {{"metrics.json", json.str()}, {"metrics.csv", csv.str()}});
            }
        } else if (compare->parsed()) {
            const vr_options opts = make_options(cmp_f, false);
            Cases cases;
            Prefs prefs;
            Responses responses;
            load_inputs(cmp_cases, cmp_prefs, cmp_responses, cmp_f, cases, &prefs, &responses);
            if (vr_responses_count(responses.p) == 0) {
                throw Failure{1, "response file has no rankings to compare against"};
            }
            CString json, csv, table;
            check(vr_compare_mcdm(cases.p, prefs.p, responses.p, &opts, json.out(), csv.out(), table.out()));
            emit(cmp_f, json.str(), table.str());
            if (!cmp_f.out_dir.empty()) {
                Manifest m("compare-mcdm");
                m.scoring(cmp_f, false);
                m.input("cases", cmp_cases);
                m.input("preferences", cmp_prefs);
                m.input("responses", cmp_responses);
                m.write(cmp_f.out_dir, {{"compare.json", json.str()}, {"compare.csv", csv.str()}});
            }
        } else if (accuracy->parsed()) {
            const auto thresholds = parse_thresholds(acc_thresholds);
            CString json, table;
            check(vr_assess_accuracy(acc_pred.c_str(), acc_gold.c_str(), thresholds.data(),
                                     thresholds.size(), json.out(), table.out()));
            emit(acc_f, json.str(), table.str());
            if (!acc_f.out_dir.empty()) {
                Manifest m("assess-accuracy");
                m.config("thresholds", thresholds);
                m.input("predicted", acc_pred);
                m.input("gold", acc_gold);
                m.write(acc_f.out_dir, {{"accuracy.json", json.str()}});
            }
        } else if (validate->parsed()) {
            std::size_t violations = 0;
            CString report;
            check(vr_validate_files(val_cases.c_str(), val_prefs.c_str(), val_responses.c_str(),
                                    &violations, report.out()));
            std::cout << report.str();
            return violations == 0 ? 0 : 1;
        }
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    }
    return 0;
}
