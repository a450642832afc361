#include "valuerank/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>
#include <unordered_set>

#include <json.hpp>

namespace valuerank {

using nlohmann::json;

namespace {

// Collects issues for one line of one file.
struct LineContext {
    const std::string& file;
    std::size_t line;
    std::vector<Issue>& errors;

    void fail(std::string field, std::string message) const {
        errors.push_back({file, line, std::move(field), std::move(message)});
    }
};

std::string format_number(double v) {
    std::ostringstream ss;
    ss.precision(17);
    ss << v;
    return ss.str();
}

std::optional<std::string> get_string(const json& obj, const char* key, const std::string& path,
                                      const LineContext& ctx) {
    auto it = obj.find(key);
    if (it == obj.end()) {
        ctx.fail(path + "." + key, "missing required key");
        return std::nullopt;
    }
    if (!it->is_string()) {
        ctx.fail(path + "." + key, "expected a string");
        return std::nullopt;
    }
    return it->get<std::string>();
}

// Identifiers may be strings or non-negative integers.
std::optional<std::string> as_identifier(const json& v, const std::string& path,
                                         const LineContext& ctx) {
    if (v.is_string()) {
        auto s = v.get<std::string>();
        if (s.empty()) {
            ctx.fail(path, "identifier must not be empty");
            return std::nullopt;
        }
        return s;
    }
    if (v.is_number_integer()) return std::to_string(v.get<long long>());
    ctx.fail(path, "expected a string or integer identifier");
    return std::nullopt;
}

std::optional<std::vector<double>> get_numbers(const json& obj, const char* key,
                                               const std::string& path, const LineContext& ctx,
                                               std::size_t expected, double lo, double hi,
                                               const char* range_label) {
    const std::string field = path + "." + key;
    auto it = obj.find(key);
    if (it == obj.end()) {
        ctx.fail(field, "missing required key");
        return std::nullopt;
    }
    if (!it->is_array()) {
        ctx.fail(field, "expected an array of numbers");
        return std::nullopt;
    }
    if (expected != 0 && it->size() != expected) {
        ctx.fail(field, "length " + std::to_string(it->size()) + " does not match " +
                            std::to_string(expected) + " dimensions");
        return std::nullopt;
    }
    std::vector<double> out;
    out.reserve(it->size());
    bool good = true;
    for (std::size_t j = 0; j < it->size(); ++j) {
        const json& v = (*it)[j];
        const std::string at = field + "[" + std::to_string(j) + "]";
        if (!v.is_number()) {
            ctx.fail(at, "expected a number");
            good = false;
            continue;
        }
        const double d = v.get<double>();
        if (!std::isfinite(d) || d < lo || d > hi) {
            ctx.fail(at, std::string("value ") + format_number(d) + " out of " + range_label);
            good = false;
            continue;
        }
        out.push_back(d);
    }
    if (!good) return std::nullopt;
    return out;
}

std::optional<json> parse_line(const std::string& text, const LineContext& ctx) {
    try {
        json j = json::parse(text);
        if (!j.is_object()) {
            ctx.fail("$", "expected a JSON object");
            return std::nullopt;
        }
        return j;
    } catch (const json::parse_error& e) {
        ctx.fail("$", std::string("malformed JSON: ") + e.what());
        return std::nullopt;
    }
}

bool is_blank(const std::string& s) {
    return s.find_first_not_of(" \t\r\n") == std::string::npos;
}

std::ifstream open_or_throw(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    return in;
}

// 1-based line of the first occurrence of "key" followed by a colon.
std::size_t line_of_key(const std::string& text, const std::string& key) {
    const std::string needle = json(key).dump();
    std::size_t pos = 0;
    while ((pos = text.find(needle, pos)) != std::string::npos) {
        std::size_t after = text.find_first_not_of(" \t\r\n", pos + needle.size());
        if (after != std::string::npos && text[after] == ':') {
            return 1 + static_cast<std::size_t>(std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(pos), '\n'));
        }
        pos += needle.size();
    }
    return 0;
}

json number_array(const std::vector<double>& v) {
    json arr = json::array();
    for (double d : v) arr.push_back(d);
    return arr;
}

}  // namespace

std::string Issue::to_string() const {
    std::ostringstream ss;
    ss << file;
    if (line) ss << ":" << line;
    ss << ": ";
    if (!field.empty()) ss << field << ": ";
    ss << message;
    return ss.str();
}

void raise_issues(const std::vector<Issue>& issues) {
    if (issues.empty()) return;
    std::ostringstream ss;
    ss << issues.size() << (issues.size() == 1 ? " violation" : " violations");
    for (const auto& i : issues) ss << "\n  " << i.to_string();
    throw ValidationError(ss.str());
}

std::string read_file(const std::string& path) {
    auto in = open_or_throw(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const DecisionCase* CaseSet::find(const std::string& scenario_id) const {
    for (const auto& c : cases) {
        if (c.scenario_id == scenario_id) return &c;
    }
    return nullptr;
}

Loaded<CaseSet> read_cases(std::istream& in, const std::string& path) {
    Loaded<CaseSet> out;
    std::unordered_set<std::string> scenario_ids;
    std::string text;
    std::size_t line_no = 0;
    std::size_t first_dims_line = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (is_blank(text)) continue;
        const std::size_t before = out.errors.size();
        LineContext ctx{path, line_no, out.errors};
        auto obj = parse_line(text, ctx);
        if (!obj) continue;

        std::optional<DimensionSet> dims;
        auto dims_it = obj->find("dimensions");
        if (dims_it == obj->end()) {
            ctx.fail("$.dimensions", "missing required key");
        } else if (!dims_it->is_array() ||
                   !std::all_of(dims_it->begin(), dims_it->end(),
                                [](const json& v) { return v.is_string(); })) {
            ctx.fail("$.dimensions", "expected an array of strings");
        } else {
            try {
                dims = DimensionSet(dims_it->get<std::vector<std::string>>());
            } catch (const ValidationError& e) {
                ctx.fail("$.dimensions", e.what());
            }
        }
        if (dims) {
            if (!out.value.dimensions) {
                out.value.dimensions = dims;
                first_dims_line = line_no;
            } else if (!(*dims == *out.value.dimensions)) {
                ctx.fail("$.dimensions", "dimensions differ from line " + std::to_string(first_dims_line));
                dims.reset();
            }
        }
        const std::size_t m = dims ? dims->size() : 0;

        DecisionCase c;
        if (auto it = obj->find("scenario_id"); it == obj->end()) {
            ctx.fail("$.scenario_id", "missing required key");
        } else if (auto id = as_identifier(*it, "$.scenario_id", ctx)) {
            c.scenario_id = *id;
            if (!scenario_ids.insert(c.scenario_id).second) {
                ctx.fail("$.scenario_id", "duplicate scenario_id '" + c.scenario_id + "'");
            }
        }
        if (auto t = get_string(*obj, "scenario_text", "$", ctx)) c.scenario_text = *t;
        if (auto s = get_numbers(*obj, "scenario_scores", "$", ctx, m, -1.0, 1.0, "[-1,1]")) {
            c.scenario_scores.values = *s;
        }

        auto actions_it = obj->find("actions");
        if (actions_it == obj->end()) {
            ctx.fail("$.actions", "missing required key");
        } else if (!actions_it->is_array()) {
            ctx.fail("$.actions", "expected an array");
        } else if (actions_it->empty()) {
            ctx.fail("$.actions", "empty action list");
        } else {
            std::unordered_set<std::string> ids;
            for (std::size_t i = 0; i < actions_it->size(); ++i) {
                const json& a = (*actions_it)[i];
                const std::string at = "$.actions[" + std::to_string(i) + "]";
                if (!a.is_object()) {
                    ctx.fail(at, "expected an object");
                    continue;
                }
                ActionCandidate action;
                if (auto it = a.find("id"); it == a.end()) {
                    ctx.fail(at + ".id", "missing required key");
                } else if (auto id = as_identifier(*it, at + ".id", ctx)) {
                    action.id = *id;
                    if (!ids.insert(action.id).second) {
                        ctx.fail(at + ".id", "duplicate action id '" + action.id + "'");
                    }
                }
                if (auto t = get_string(a, "text", at, ctx)) action.text = *t;
                if (auto s = get_numbers(a, "scores", at, ctx, m, -1.0, 1.0, "[-1,1]")) {
                    action.scores.values = *s;
                }
                c.actions.push_back(std::move(action));
            }
        }
        if (out.errors.size() == before && dims) out.value.cases.push_back(std::move(c));
    }
    if (in.bad()) throw IoError("read error on '" + path + "'");
    if (line_no == 0 || (out.value.cases.empty() && out.errors.empty())) {
        out.warnings.push_back({path, 0, "", "case file is empty"});
    }
    return out;
}

CaseSet load_cases(const std::string& path, std::vector<std::string>* warnings) {
    auto in = open_or_throw(path);
    auto loaded = read_cases(in, path);
    raise_issues(loaded.errors);
    if (warnings) {
        for (const auto& w : loaded.warnings) warnings->push_back(w.to_string());
    }
    return std::move(loaded.value);
}

std::string case_to_json_line(const DecisionCase& c, const DimensionSet& dims) {
    json j;
    j["scenario_id"] = c.scenario_id;
    j["scenario_text"] = c.scenario_text;
    j["dimensions"] = dims.names();
    j["scenario_scores"] = number_array(c.scenario_scores.values);
    json actions = json::array();
    for (const auto& a : c.actions) {
        actions.push_back({{"id", a.id}, {"text", a.text}, {"scores", number_array(a.scores.values)}});
    }
    j["actions"] = std::move(actions);
    return j.dump();
}

void write_cases(const std::string& path, const CaseSet& set) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path + "'");
    for (const auto& c : set.cases) out << case_to_json_line(c, *set.dimensions) << "\n";
    if (!out) throw IoError("write error on '" + path + "'");
}

const PreferenceVector* PreferenceSet::find(const std::string& subject) const {
    auto it = by_subject.find(subject);
    return it == by_subject.end() ? nullptr : &it->second;
}

Loaded<PreferenceSet> read_preferences(const std::string& text, const std::string& path,
                                       std::size_t m) {
    Loaded<PreferenceSet> out;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte;
        const std::size_t line =
            1 + static_cast<std::size_t>(std::count(text.begin(),
                                                    text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size())),
                                                    '\n'));
        out.errors.push_back({path, line, "$", std::string("malformed JSON: ") + e.what()});
        return out;
    }
    if (!doc.is_object()) {
        out.errors.push_back({path, 1, "$", "expected an object mapping subject_id to preferences"});
        return out;
    }
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        const std::string subject = it.key();
        LineContext ctx{path, line_of_key(text, subject), out.errors};
        json holder = {{subject, it.value()}};
        auto values = get_numbers(holder, subject.c_str(), "$", ctx, m, 0.0, 1.0, "[0,1]");
        if (values) out.value.by_subject.emplace(subject, PreferenceVector(std::move(*values)));
    }
    if (doc.empty()) out.warnings.push_back({path, 0, "", "preference file has no subjects"});
    return out;
}

PreferenceSet load_preferences(const std::string& path, std::size_t m) {
    auto loaded = read_preferences(read_file(path), path, m);
    raise_issues(loaded.errors);
    return std::move(loaded.value);
}

std::string preferences_to_json(const PreferenceSet& prefs) {
    json j = json::object();
    for (const auto& [subject, p] : prefs.by_subject) j[subject] = number_array(p.raw());
    return j.dump();
}

Loaded<std::vector<Response>> read_responses(std::istream& in, const std::string& path,
                                             const CaseSet& cases) {
    Loaded<std::vector<Response>> out;
    std::unordered_set<std::string> seen;
    std::string text;
    std::size_t line_no = 0;
    while (std::getline(in, text)) {
        ++line_no;
        if (is_blank(text)) continue;
        const std::size_t before = out.errors.size();
        LineContext ctx{path, line_no, out.errors};
        auto obj = parse_line(text, ctx);
        if (!obj) continue;

        Response r;
        r.line = line_no;
        for (auto [key, target] : {std::pair<const char*, std::string*>{"subject_id", &r.subject_id},
                                   {"scenario_id", &r.scenario_id}}) {
            const std::string field = std::string("$.") + key;
            auto it = obj->find(key);
            if (it == obj->end()) ctx.fail(field, "missing required key");
            else if (auto id = as_identifier(*it, field, ctx)) *target = *id;
        }
        auto rank_it = obj->find("ranking");
        if (rank_it == obj->end()) {
            ctx.fail("$.ranking", "missing required key");
        } else if (!rank_it->is_array()) {
            ctx.fail("$.ranking", "expected an array of action ids");
        } else {
            for (std::size_t k = 0; k < rank_it->size(); ++k) {
                if (auto id = as_identifier((*rank_it)[k], "$.ranking[" + std::to_string(k) + "]", ctx)) {
                    r.ranking.push_back(*id);
                }
            }
        }
        if (out.errors.size() != before) continue;

        const DecisionCase* c = cases.find(r.scenario_id);
        if (!c) {
            ctx.fail("$.scenario_id", "unknown scenario_id '" + r.scenario_id + "'");
            continue;
        }
        std::unordered_set<std::string> expected;
        for (const auto& a : c->actions) expected.insert(a.id);
        std::unordered_set<std::string> got;
        bool perm = r.ranking.size() == expected.size();
        for (const auto& id : r.ranking) {
            if (!expected.count(id) || !got.insert(id).second) perm = false;
        }
        if (!perm) {
            ctx.fail("$.ranking", "not a permutation of the action ids of scenario '" +
                                      r.scenario_id + "'");
            continue;
        }
        if (!seen.insert(r.subject_id + '\x1f' + r.scenario_id).second) {
            ctx.fail("$", "duplicate response for subject '" + r.subject_id + "' and scenario '" +
                              r.scenario_id + "'");
            continue;
        }
        out.value.push_back(std::move(r));
    }
    if (in.bad()) throw IoError("read error on '" + path + "'");
    if (out.value.empty() && out.errors.empty()) {
        out.warnings.push_back({path, 0, "", "response file is empty"});
    }
    return out;
}

std::vector<Response> load_responses(const std::string& path, const CaseSet& cases) {
    auto in = open_or_throw(path);
    auto loaded = read_responses(in, path, cases);
    raise_issues(loaded.errors);
    return std::move(loaded.value);
}

std::string response_to_json_line(const Response& r) {
    json j;
    j["subject_id"] = r.subject_id;
    j["scenario_id"] = r.scenario_id;
    j["ranking"] = r.ranking;
    return j.dump();
}

std::vector<std::vector<double>> parse_score_csv(const std::string& text, const std::string& path) {
    std::vector<std::vector<double>> rows;
    std::vector<Issue> errors;
    std::istringstream in(text);
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (is_blank(line) || line[line.find_first_not_of(" \t")] == '#') continue;

        std::vector<std::string> fields;
        std::stringstream ls(line);
        std::string field;
        while (std::getline(ls, field, ',')) fields.push_back(field);
        if (line.back() == ',') fields.emplace_back();

        std::vector<double> row;
        std::vector<std::size_t> bad;
        for (std::size_t k = 0; k < fields.size(); ++k) {
            std::string f = fields[k];
            const auto a = f.find_first_not_of(" \t");
            const auto b = f.find_last_not_of(" \t");
            f = a == std::string::npos ? std::string() : f.substr(a, b - a + 1);
            double v = 0.0;
            const char* begin = f.data();
            const char* end = f.data() + f.size();
            if (!f.empty() && *begin == '+') ++begin;
            auto [ptr, ec] = std::from_chars(begin, end, v);
            if (f.empty() || ec != std::errc() || ptr != end || !std::isfinite(v)) bad.push_back(k);
            else row.push_back(v);
        }
        const bool header = first_content && bad.size() == fields.size();
        first_content = false;
        if (header) continue;
        for (auto k : bad) {
            errors.push_back({path, line_no, "column " + std::to_string(k + 1),
                              "non-numeric entry '" + fields[k] + "'"});
        }
        if (bad.empty()) rows.push_back(std::move(row));
    }
    raise_issues(errors);
    return rows;
}

std::vector<std::vector<double>> load_score_table(const std::string& path) {
    const std::string text = read_file(path);
    const bool is_json = path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
    if (!is_json) return parse_score_csv(text, path);

    std::vector<Issue> errors;
    std::vector<std::vector<double>> rows;
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ValidationError(path + ": malformed JSON: " + e.what());
    }
    if (!doc.is_array()) throw ValidationError(path + ": $: expected an array of rows");
    for (std::size_t i = 0; i < doc.size(); ++i) {
        const std::string at = "$[" + std::to_string(i) + "]";
        if (!doc[i].is_array()) {
            errors.push_back({path, 0, at, "expected an array of numbers"});
            continue;
        }
        std::vector<double> row;
        for (std::size_t j = 0; j < doc[i].size(); ++j) {
            if (!doc[i][j].is_number()) {
                errors.push_back({path, 0, at + "[" + std::to_string(j) + "]", "non-numeric entry"});
            } else {
                row.push_back(doc[i][j].get<double>());
            }
        }
        rows.push_back(std::move(row));
    }
    raise_issues(errors);
    return rows;
}

}  // namespace valuerank
