// SPDX-License-Identifier: Apache-2.0

#include "rulebench/metrics/brittleness.hpp"

#include "rulebench/metrics/detection.hpp"
#include "rulebench/rule_lang/builtins.hpp"

#include <boost/regex.hpp>

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <set>
#include <type_traits>

namespace rulebench::metrics {
namespace {

using lang::Expr;

const boost::regex& url_shape()
{
    static const boost::regex re(R"(^(?:https?|ftp)://[^\s/$.?#][^\s]*$)", boost::regex::perl | boost::regex::icase);
    return re;
}

const boost::regex& email_shape()
{
    static const boost::regex re(R"(^[A-Za-z0-9._%+\-]+@(?:[A-Za-z0-9\-]+\.)+[A-Za-z]{2,}$)");
    return re;
}

const boost::regex& ipv4_shape()
{
    static const boost::regex re(
        R"(^(?:(?:25[0-5]|2[0-4]\d|1\d\d|[1-9]?\d)\.){3}(?:25[0-5]|2[0-4]\d|1\d\d|[1-9]?\d)(?:/\d{1,2})?$)");
    return re;
}

const boost::regex& ipv6_shape()
{
    static const boost::regex re(R"(^(?=.*[0-9A-Fa-f])(?:[0-9A-Fa-f]{0,4}:){2,7}[0-9A-Fa-f]{0,4}$)");
    return re;
}

const boost::regex& hash_shape()
{
    static const boost::regex re(R"(^(?:[0-9A-Fa-f]{32}|[0-9A-Fa-f]{40}|[0-9A-Fa-f]{64})$)");
    return re;
}

const boost::regex& domain_shape()
{
    static const boost::regex re(R"(^(?:[A-Za-z0-9](?:[A-Za-z0-9\-]{0,61}[A-Za-z0-9])?\.)+([A-Za-z]{2,63})$)");
    return re;
}

// Suffixes that make "invoice.pdf" look like a domain.
constexpr std::array<std::string_view, 28> file_suffixes{
    "pdf", "svg", "svgz", "eml", "htm", "html", "exe", "zip", "rar", "doc", "docx", "docm", "xls", "xlsx",
    "xlsm", "ppt", "pptx", "js", "txt", "png", "jpg", "jpeg", "gif", "iso", "img", "lnk", "msg", "csv",
};

bool regex_is_fuzzy(std::string_view pattern)
{
    for (std::size_t i = 0; i < pattern.size(); ++i) {
        const char c = pattern[i];
        if (c == '\\' && i + 1 < pattern.size()) {
            const char n = pattern[i + 1];
            if (std::string_view("dwsDWSb").find(n) != std::string_view::npos) {
                return true;
            }
            ++i;
            continue;
        }
        if (std::string_view("[.*+?{").find(c) != std::string_view::npos) {
            return true;
        }
    }
    return false;
}

bool glob_is_fuzzy(std::string_view pattern)
{
    return pattern.find_first_of("*?") != std::string_view::npos;
}

const std::string* string_literal(const Expr& e)
{
    const auto* lit = std::get_if<lang::Literal>(&e.node);
    return lit != nullptr ? std::get_if<std::string>(&lit->value) : nullptr;
}

std::vector<std::string> literal_strings(const Expr& e)
{
    const auto* lit = std::get_if<lang::Literal>(&e.node);
    if (lit == nullptr) {
        return {};
    }
    if (const auto* s = std::get_if<std::string>(&lit->value); s != nullptr) {
        return {*s};
    }
    if (const auto* list = std::get_if<std::vector<std::string>>(&lit->value); list != nullptr) {
        return *list;
    }
    return {};
}

// subject, body.*, or any path ending in file_name.
bool is_content_field(const Expr& e)
{
    const auto* path = std::get_if<lang::FieldPath>(&e.node);
    if (path == nullptr || path->segments.empty()) {
        return false;
    }
    if (path->anchor == lang::PathAnchor::Root && (path->segments[0] == "subject" || path->segments[0] == "body")) {
        return true;
    }
    return path->segments.back() == "file_name";
}

bool is_by_sender_call(const Expr& e)
{
    const auto* call = std::get_if<lang::FunctionCall>(&e.node);
    return call != nullptr && call->name == "profile.by_sender";
}

class Walker {
public:
    explicit Walker(const Taxonomy& taxonomy) : taxonomy_(taxonomy) {}

    std::vector<PatternFinding> run(const lang::RuleAst& ast)
    {
        if (ast.root) {
            visit(*ast.root, "root");
        }
        return std::move(findings_);
    }

private:
    void add(FindingKind kind, std::string_view tag, const Expr& at, const std::string& path, std::string why)
    {
        PatternFinding f;
        f.kind = kind;
        f.tag = std::string(tag);
        f.weight = taxonomy_.weight_of(tag);
        f.ast_location = std::to_string(at.pos.line) + ":" + std::to_string(at.pos.column) + " " + path;
        f.explanation = std::move(why);
        findings_.push_back(std::move(f));
    }

    void visit(const Expr& e, const std::string& path)
    {
        std::visit(
            [&](const auto& node) {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, lang::BoolOp>) {
                    const std::string name(lang::to_string(node.kind));
                    for (std::size_t i = 0; i < node.operands.size(); ++i) {
                        visit(*node.operands[i], path + "/" + name + "[" + std::to_string(i) + "]");
                    }
                } else if constexpr (std::is_same_v<T, lang::Comparison>) {
                    comparison(e, node, path);
                    visit(*node.lhs, path + "/lhs");
                    visit(*node.rhs, path + "/rhs");
                } else if constexpr (std::is_same_v<T, lang::IterPredicate>) {
                    const std::string name(lang::to_string(node.quantifier));
                    visit(*node.collection, path + "/" + name + ".collection");
                    visit(*node.predicate, path + "/" + name + ".predicate");
                } else if constexpr (std::is_same_v<T, lang::FunctionCall>) {
                    call(e, node, path);
                } else if constexpr (std::is_same_v<T, lang::FieldPath>) {
                    field(e, node, path);
                }
            },
            e.node);
    }

    void comparison(const Expr& e, const lang::Comparison& cmp, const std::string& path)
    {
        using lang::CompareOp;
        if (cmp.op == CompareOp::Lt || cmp.op == CompareOp::Le || cmp.op == CompareOp::Gt ||
            cmp.op == CompareOp::Ge) {
            return;
        }
        const bool equality = cmp.op != CompareOp::Ne;
        const std::pair<const Expr*, const Expr*> sides[] = {{cmp.lhs.get(), cmp.rhs.get()},
                                                            {cmp.rhs.get(), cmp.lhs.get()}};
        for (const auto& [literal_side, other_side] : sides) {
            for (const auto& literal : literal_strings(*literal_side)) {
                if (const auto shape = ioc_shape(literal)) {
                    add(FindingKind::brittle, *shape, e, path,
                        "literal \"" + literal + "\" compared with " + std::string(lang::to_string(cmp.op)));
                } else if (equality && literal.size() >= taxonomy_.long_literal_min && is_content_field(*other_side)) {
                    add(FindingKind::brittle, tags::exact_long_literal, e, path,
                        "exact match on a " + std::to_string(literal.size()) + "-character content literal");
                }
            }
        }
    }

    void call(const Expr& e, const lang::FunctionCall& node, const std::string& path)
    {
        const std::string here = path + "/" + node.name;
        const lang::Builtin* builtin = lang::find_builtin(node.name);
        if (builtin != nullptr && builtin->id == lang::BuiltinId::beta_scan_base64) {
            add(FindingKind::robust, tags::base64_scan, e, here, "scans decoded base64 content");
        }
        for (std::size_t i = 0; i < node.args.size(); ++i) {
            const Expr& arg = *node.args[i];
            const std::string arg_path = here + "[" + std::to_string(i) + "]";
            const std::string* text = i > 0 && builtin != nullptr ? string_literal(arg) : nullptr;
            if (text != nullptr && builtin->patterns == lang::PatternKind::glob && glob_is_fuzzy(*text)) {
                add(FindingKind::robust, tags::fuzzy_glob, arg, arg_path, "wildcard pattern \"" + *text + "\"");
            } else if (text != nullptr && builtin->patterns == lang::PatternKind::regex && regex_is_fuzzy(*text)) {
                add(FindingKind::robust, tags::fuzzy_regex, arg, arg_path, "regex with classes or quantifiers");
            }
            visit(arg, arg_path);
        }
    }

    void field(const Expr& e, const lang::FieldPath& node, const std::string& path)
    {
        if (node.anchor == lang::PathAnchor::Expression && node.base) {
            if (is_by_sender_call(*node.base) && !node.segments.empty()) {
                if (node.segments[0] == "prevalence") {
                    add(FindingKind::robust, tags::sender_prevalence, e, path, "sender prevalence");
                } else if (node.segments[0] == "solicited") {
                    add(FindingKind::robust, tags::sender_solicited, e, path, "sender solicitation history");
                }
            }
            visit(*node.base, path + "/base");
            return;
        }
        if (node.anchor != lang::PathAnchor::Root || node.segments.empty()) {
            return;
        }
        if (node.segments[0] == "headers" && node.segments.size() >= 2 && node.segments[1] == "auth_summary") {
            add(FindingKind::robust, tags::auth_summary, e, path, "authentication result");
        } else if (node.segments[0] == "nlu") {
            add(FindingKind::robust, tags::nlu, e, path, "language-model classification");
        }
    }

    const Taxonomy& taxonomy_;
    std::vector<PatternFinding> findings_;
};

double checked_positive(const nlohmann::json& j, const char* key, double fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_number() || !(j.at(key).get<double>() > 0.0)) {
        throw MetricsError(std::string("taxonomy: '") + key + "' must be a positive number");
    }
    return j.at(key).get<double>();
}

}  // namespace

std::string_view to_string(FindingKind kind)
{
    return kind == FindingKind::robust ? "robust" : "brittle";
}

const std::vector<std::pair<std::string_view, FindingKind>>& known_tags()
{
    static const std::vector<std::pair<std::string_view, FindingKind>> all{
        {tags::ioc_ip, FindingKind::brittle},
        {tags::ioc_domain, FindingKind::brittle},
        {tags::ioc_hash, FindingKind::brittle},
        {tags::ioc_url, FindingKind::brittle},
        {tags::ioc_email, FindingKind::brittle},
        {tags::exact_long_literal, FindingKind::brittle},
        {tags::sender_prevalence, FindingKind::robust},
        {tags::sender_solicited, FindingKind::robust},
        {tags::auth_summary, FindingKind::robust},
        {tags::nlu, FindingKind::robust},
        {tags::fuzzy_glob, FindingKind::robust},
        {tags::fuzzy_regex, FindingKind::robust},
        {tags::base64_scan, FindingKind::robust},
    };
    return all;
}

double Taxonomy::weight_of(std::string_view tag) const
{
    const auto it = weights.find(std::string(tag));
    return it == weights.end() ? default_weight : it->second;
}

double Taxonomy::min_brittle_weight() const
{
    double lowest = 0.0;
    bool first = true;
    for (const auto& [tag, kind] : known_tags()) {
        if (kind == FindingKind::brittle) {
            const double w = weight_of(tag);
            lowest = first ? w : std::min(lowest, w);
            first = false;
        }
    }
    return lowest;
}

Taxonomy taxonomy_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw MetricsError("taxonomy: expected an object");
    }
    static const std::set<std::string> fields{"default_weight", "weights", "k", "x0", "ratio_cap",
                                              "long_literal_min"};
    for (const auto& [key, value] : j.items()) {
        if (!fields.contains(key)) {
            throw MetricsError("taxonomy: unknown field '" + key + "'");
        }
    }
    Taxonomy t;
    t.default_weight = checked_positive(j, "default_weight", t.default_weight);
    t.k = checked_positive(j, "k", t.k);
    t.ratio_cap = checked_positive(j, "ratio_cap", t.ratio_cap);
    if (j.contains("x0")) {
        if (!j.at("x0").is_number()) {
            throw MetricsError("taxonomy: 'x0' must be a number");
        }
        t.x0 = j.at("x0").get<double>();
    }
    if (j.contains("long_literal_min")) {
        if (!j.at("long_literal_min").is_number_unsigned()) {
            throw MetricsError("taxonomy: 'long_literal_min' must be a nonnegative integer");
        }
        t.long_literal_min = j.at("long_literal_min").get<std::size_t>();
    }
    if (j.contains("weights")) {
        const auto& weights = j.at("weights");
        if (!weights.is_object()) {
            throw MetricsError("taxonomy: 'weights' must be an object");
        }
        for (const auto& [tag, value] : weights.items()) {
            const auto& all = known_tags();
            if (std::none_of(all.begin(), all.end(), [&tag](const auto& entry) { return entry.first == tag; })) {
                throw MetricsError("taxonomy: unknown tag '" + tag + "'");
            }
            if (!value.is_number() || !(value.get<double>() > 0.0)) {
                throw MetricsError("taxonomy: weight for '" + tag + "' must be positive");
            }
            t.weights[tag] = value.get<double>();
        }
    }
    return t;
}

Taxonomy load_taxonomy(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw MetricsError("cannot read taxonomy " + path.string());
    }
    try {
        return taxonomy_from_json(nlohmann::json::parse(in));
    } catch (const nlohmann::json::exception& e) {
        throw MetricsError("taxonomy " + path.string() + ": " + e.what());
    }
}

nlohmann::json to_json(const Taxonomy& t)
{
    return nlohmann::json{{"default_weight", t.default_weight}, {"weights", t.weights},
                          {"k", t.k},
                          {"x0", t.x0},
                          {"ratio_cap", t.ratio_cap},
                          {"long_literal_min", t.long_literal_min}};
}

std::optional<std::string_view> ioc_shape(std::string_view literal)
{
    const auto test = [literal](const boost::regex& re) {
        return boost::regex_match(literal.begin(), literal.end(), re);
    };
    if (test(url_shape())) {
        return tags::ioc_url;
    }
    if (test(email_shape())) {
        return tags::ioc_email;
    }
    if (test(ipv4_shape()) || test(ipv6_shape())) {
        return tags::ioc_ip;
    }
    if (test(hash_shape())) {
        return tags::ioc_hash;
    }
    boost::match_results<std::string_view::const_iterator> m;
    if (boost::regex_match(literal.begin(), literal.end(), m, domain_shape())) {
        std::string tld = m[1].str();
        std::transform(tld.begin(), tld.end(), tld.begin(), [](unsigned char c) { return std::tolower(c); });
        if (std::find(file_suffixes.begin(), file_suffixes.end(), tld) == file_suffixes.end()) {
            return tags::ioc_domain;
        }
    }
    return std::nullopt;
}

double brittleness_score(double R, double P, double k, double x0, double ratio_cap, double min_brittle_weight)
{
    double ratio = 0.0;
    if (P > 0.0) {
        ratio = R / P;
    } else if (R > 0.0) {
        ratio = std::max(ratio_cap, R / min_brittle_weight);
    } else {
        return 50.0;
    }
    return 100.0 / (1.0 + std::exp(k * (ratio - x0)));
}

std::vector<PatternFinding> find_patterns(const lang::RuleAst& ast, const Taxonomy& taxonomy)
{
    return Walker(taxonomy).run(ast);
}

BrittlenessReport analyze_brittleness(const lang::RuleAst& ast, const Taxonomy& taxonomy)
{
    return analyze_brittleness(ast, taxonomy, taxonomy.k, taxonomy.x0);
}

BrittlenessReport analyze_brittleness(const lang::RuleAst& ast, const Taxonomy& taxonomy, double k, double x0)
{
    if (!(k > 0.0)) {
        throw MetricsError("brittleness: k must be positive");
    }
    BrittlenessReport report;
    report.k = k;
    report.x0 = x0;
    report.findings = find_patterns(ast, taxonomy);
    for (const auto& f : report.findings) {
        (f.kind == FindingKind::robust ? report.rewards_R : report.penalties_P) += f.weight;
    }
    report.B = brittleness_score(report.rewards_R, report.penalties_P, k, x0, taxonomy.ratio_cap,
                                 taxonomy.min_brittle_weight());
    report.robustness = 1.0 - report.B / 100.0;
    return report;
}

nlohmann::json to_json(const BrittlenessReport& r)
{
    nlohmann::json findings = nlohmann::json::array();
    for (const auto& f : r.findings) {
        findings.push_back({{"kind", to_string(f.kind)},
                            {"tag", f.tag},
                            {"weight", f.weight},
                            {"ast_location", f.ast_location},
                            {"explanation", f.explanation}});
    }
    return nlohmann::json{{"rewards_R", r.rewards_R}, {"penalties_P", r.penalties_P},
                          {"k", r.k},
                          {"x0", r.x0},
                          {"B", r.B},
                          {"robustness", r.robustness},
                          {"findings", std::move(findings)}};
}

BrittlenessReport brittleness_report_from_json(const nlohmann::json& j)
{
    BrittlenessReport r;
    j.at("rewards_R").get_to(r.rewards_R);
    j.at("penalties_P").get_to(r.penalties_P);
    j.at("k").get_to(r.k);
    j.at("x0").get_to(r.x0);
    j.at("B").get_to(r.B);
    j.at("robustness").get_to(r.robustness);
    for (const auto& f : j.at("findings")) {
        PatternFinding p;
        p.kind = f.at("kind").get<std::string>() == "robust" ? FindingKind::robust : FindingKind::brittle;
        f.at("tag").get_to(p.tag);
        f.at("weight").get_to(p.weight);
        f.at("ast_location").get_to(p.ast_location);
        f.at("explanation").get_to(p.explanation);
        r.findings.push_back(std::move(p));
    }
    return r;
}

}  // namespace rulebench::metrics
