// SPDX-License-Identifier: Apache-2.0

#include "reference.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <string>
#include <vector>

namespace rulebench::testing {
namespace {

using nlohmann::json;
using namespace rulebench::lang;

struct V {
    enum class K { null, boolean, integer, str, strs, recs, rec } k = K::null;
    bool b = false;
    std::int64_t i = 0;
    std::string s;
    std::vector<std::string> strs;
    std::vector<const json*> recs;
    const json* node = nullptr;
    std::string type;  // record type, or element type for recs
    const json* owner = nullptr;
};

V null_v()
{
    return {};
}

V bool_v(bool b)
{
    V v;
    v.k = V::K::boolean;
    v.b = b;
    return v;
}

V int_v(std::int64_t i)
{
    V v;
    v.k = V::K::integer;
    v.i = i;
    return v;
}

V str_v(const json& j, const json* owner = nullptr)
{
    V v;
    v.k = V::K::str;
    v.s = j.get<std::string>();
    v.owner = owner;
    return v;
}

V strs_v(const json& j, const json* owner = nullptr)
{
    V v;
    v.k = V::K::strs;
    for (const auto& e : j) {
        v.strs.push_back(e.get<std::string>());
    }
    v.owner = owner;
    return v;
}

V recs_v(const json& j, std::string type)
{
    V v;
    v.k = V::K::recs;
    for (const auto& e : j) {
        v.recs.push_back(&e);
    }
    v.type = std::move(type);
    return v;
}

V rec_v(const json& j, std::string type)
{
    V v;
    v.k = V::K::rec;
    v.node = &j;
    v.type = std::move(type);
    return v;
}

std::string lower(std::string s)
{
    for (char& c : s) {
        if (c >= 'A' && c <= 'Z') {
            c = static_cast<char>(c - 'A' + 'a');
        }
    }
    return s;
}

std::string header_key(std::string s)
{
    s = lower(std::move(s));
    std::replace(s.begin(), s.end(), '_', '-');
    return s;
}

bool truthy(const V& v)
{
    return v.k == V::K::boolean && v.b;
}

class Ref {
public:
    explicit Ref(const json& message) : m_(message) {}

    V eval(const Expr& e)
    {
        if (const auto* op = std::get_if<BoolOp>(&e.node)) {
            if (op->kind == BoolOpKind::Not) {
                return bool_v(!truthy(eval(*op->operands[0])));
            }
            const bool is_and = op->kind == BoolOpKind::And;
            for (const auto& operand : op->operands) {
                const bool t = truthy(eval(*operand));
                if (is_and && !t) {
                    return bool_v(false);
                }
                if (!is_and && t) {
                    return bool_v(true);
                }
            }
            return bool_v(is_and);
        }
        if (const auto* cmp = std::get_if<Comparison>(&e.node)) {
            return compare(*cmp);
        }
        if (const auto* it = std::get_if<IterPredicate>(&e.node)) {
            return iterate(*it);
        }
        if (const auto* call = std::get_if<FunctionCall>(&e.node)) {
            return invoke(*call);
        }
        if (const auto* path = std::get_if<FieldPath>(&e.node)) {
            return walk(*path);
        }
        const auto& lit = std::get<Literal>(e.node);
        if (const auto* b = std::get_if<bool>(&lit.value)) {
            return bool_v(*b);
        }
        if (const auto* i = std::get_if<std::int64_t>(&lit.value)) {
            return int_v(*i);
        }
        if (const auto* s = std::get_if<std::string>(&lit.value)) {
            return str_v(json(*s));
        }
        return strs_v(json(std::get<std::vector<std::string>>(lit.value)));
    }

private:
    V compare(const Comparison& c)
    {
        const V a = eval(*c.lhs);
        const V b = eval(*c.rhs);
        if (a.k == V::K::null || b.k == V::K::null) {
            return null_v();
        }
        switch (c.op) {
        case CompareOp::Eq:
        case CompareOp::Ne: {
            if (a.k != b.k) {
                return null_v();
            }
            bool eq = false;
            if (a.k == V::K::str) {
                eq = a.s == b.s;
            } else if (a.k == V::K::boolean) {
                eq = a.b == b.b;
            } else if (a.k == V::K::integer) {
                eq = a.i == b.i;
            } else {
                return null_v();
            }
            return bool_v(c.op == CompareOp::Eq ? eq : !eq);
        }
        case CompareOp::IEq:
            if (a.k != V::K::str || b.k != V::K::str) {
                return null_v();
            }
            return bool_v(lower(a.s) == lower(b.s));
        case CompareOp::In:
        case CompareOp::IIn: {
            if (a.k != V::K::str || b.k != V::K::strs) {
                return null_v();
            }
            for (const auto& item : b.strs) {
                if (c.op == CompareOp::In ? item == a.s : lower(item) == lower(a.s)) {
                    return bool_v(true);
                }
            }
            return bool_v(false);
        }
        default:
            if (a.k != V::K::integer || b.k != V::K::integer) {
                return null_v();
            }
            switch (c.op) {
            case CompareOp::Lt: return bool_v(a.i < b.i);
            case CompareOp::Le: return bool_v(a.i <= b.i);
            case CompareOp::Gt: return bool_v(a.i > b.i);
            default: return bool_v(a.i >= b.i);
            }
        }
    }

    V iterate(const IterPredicate& it)
    {
        const V coll = eval(*it.collection);
        std::vector<V> elements;
        if (coll.k == V::K::strs) {
            for (const auto& s : coll.strs) {
                elements.push_back(str_v(json(s), coll.owner));
            }
        } else if (coll.k == V::K::recs) {
            for (const json* r : coll.recs) {
                elements.push_back(rec_v(*r, coll.type));
            }
        } else {
            return bool_v(false);
        }
        const bool any = it.quantifier == Quantifier::Any;
        for (const auto& el : elements) {
            scopes_.push_back(el);
            const bool t = truthy(eval(*it.predicate));
            scopes_.pop_back();
            if (any && t) {
                return bool_v(true);
            }
            if (!any && !t) {
                return bool_v(false);
            }
        }
        return bool_v(!any);
    }

    V invoke(const FunctionCall& call)
    {
        const std::string& n = call.name;
        if (n == "profile.by_sender") {
            return rec_v(m_.at("sender_profile"), "profile");
        }
        if (n == "file.parse_text" || n == "file.parse_eml") {
            const V a = eval(*call.args[0]);
            if (a.k != V::K::rec || a.type != "attachment") {
                return null_v();
            }
            return rec_v(*a.node, n == "file.parse_text" ? "parsed_text" : "parsed_eml");
        }
        if (n == "beta.scan_base64") {
            const V a = eval(*call.args[0]);
            if (a.k != V::K::str) {
                return null_v();
            }
            if (a.owner == nullptr) {
                return strs_v(json::array());
            }
            return strs_v(a.owner->at("base64_blobs"), a.owner);
        }
        if (n == "length") {
            const V a = eval(*call.args[0]);
            switch (a.k) {
            case V::K::str: return int_v(static_cast<std::int64_t>(a.s.size()));
            case V::K::strs: return int_v(static_cast<std::int64_t>(a.strs.size()));
            case V::K::recs: return int_v(static_cast<std::int64_t>(a.recs.size()));
            default: return null_v();
            }
        }
        const V subject = eval(*call.args[0]);
        if (subject.k != V::K::str) {
            return null_v();
        }
        for (std::size_t i = 1; i < call.args.size(); ++i) {
            const V p = eval(*call.args[i]);
            if (p.k != V::K::str) {
                continue;
            }
            bool hit = false;
            if (n == "strings.ilike") {
                hit = reference_glob(subject.s, p.s);
            } else if (n == "strings.icontains") {
                hit = lower(subject.s).find(lower(p.s)) != std::string::npos;
            } else if (n == "strings.contains") {
                hit = subject.s.find(p.s) != std::string::npos;
            } else {
                auto flags = std::regex::ECMAScript;
                if (n == "regex.icontains") {
                    flags |= std::regex::icase;
                }
                try {
                    hit = std::regex_search(subject.s, std::regex(p.s, flags));
                } catch (const std::regex_error&) {
                    continue;
                }
            }
            if (hit) {
                return bool_v(true);
            }
        }
        return bool_v(false);
    }

    V root(const std::string& name)
    {
        if (name == "type") {
            return rec_v(m_, "message_type");
        }
        if (name == "subject") {
            return str_v(m_.at("subject"));
        }
        if (name == "attachments") {
            return recs_v(m_.at("attachments"), "attachment");
        }
        if (name == "links") {
            return recs_v(m_.at("links"), "link");
        }
        if (name == "nlu") {
            return m_.at("nlu").is_null() ? null_v() : rec_v(m_.at("nlu"), "nlu");
        }
        if (name == "sender" || name == "recipients" || name == "body" || name == "headers") {
            return rec_v(m_.at(name), name);
        }
        return null_v();
    }

    static V field(const V& base, const std::string& seg)
    {
        if (base.k != V::K::rec) {
            return null_v();
        }
        const json& j = *base.node;
        const std::string& t = base.type;
        auto has = [&](std::initializer_list<const char*> names) {
            return std::any_of(names.begin(), names.end(), [&](const char* x) { return seg == x; });
        };
        if (t == "message_type") {
            if (seg == "inbound" || seg == "outbound") {
                return bool_v(j.at("direction").get<std::string>() == seg);
            }
        } else if (t == "sender" && has({"email", "domain", "display_name"})) {
            return str_v(j.at(seg));
        } else if (t == "recipients" && has({"to", "cc"})) {
            return recs_v(j.at(seg), "recipient");
        } else if (t == "recipient" && seg == "email") {
            return rec_v(j.at("email"), "address");
        } else if (t == "address") {
            if (seg == "email") {
                return str_v(j.at("email"));
            }
            if (seg == "domain") {
                return rec_v(j.at("domain"), "domain_info");
            }
        } else if (t == "domain_info") {
            if (seg == "domain") {
                return str_v(j.at("domain"));
            }
            if (seg == "valid") {
                return bool_v(j.at("valid").get<bool>());
            }
        } else if (t == "body" && has({"text", "html"})) {
            return str_v(j.at(seg));
        } else if (t == "attachment") {
            if (has({"file_name", "file_extension", "content_type"})) {
                return str_v(j.at(seg));
            }
            if (seg == "text_content") {
                return str_v(j.at(seg), &j);
            }
            if (seg == "inner_attachments") {
                return recs_v(j.at(seg), "attachment");
            }
            if (seg == "base64_blobs") {
                return strs_v(j.at(seg), &j);
            }
        } else if (t == "link" && has({"url", "domain"})) {
            return str_v(j.at(seg));
        } else if (t == "headers") {
            if (seg == "auth_summary") {
                return rec_v(j.at(seg), "auth_summary");
            }
            if (seg == "raw") {
                return rec_v(j.at(seg), "raw");
            }
        } else if (t == "auth_summary" && has({"dmarc", "spf", "dkim"})) {
            return rec_v(j.at(seg), "auth_result");
        } else if (t == "auth_result" && seg == "pass") {
            return bool_v(j.at("pass").get<bool>());
        } else if (t == "raw") {
            for (const auto& [k, v] : j.items()) {
                if (header_key(k) == header_key(seg)) {
                    return str_v(v);
                }
            }
        } else if (t == "profile") {
            if (seg == "prevalence") {
                return str_v(j.at(seg));
            }
            if (seg == "solicited") {
                return bool_v(j.at(seg).get<bool>());
            }
        } else if (t == "nlu" && has({"intents", "brands"})) {
            return strs_v(j.at(seg));
        } else if (t == "parsed_text" && seg == "text") {
            return str_v(j.at("text_content"), &j);
        } else if (t == "parsed_eml" && seg == "attachments") {
            return recs_v(j.at("inner_attachments"), "attachment");
        }
        return null_v();
    }

    V walk(const FieldPath& path)
    {
        V cur;
        std::size_t first = 0;
        switch (path.anchor) {
        case PathAnchor::Root:
            cur = root(path.segments.at(0));
            first = 1;
            break;
        case PathAnchor::Current:
            if (scopes_.empty()) {
                return null_v();
            }
            cur = scopes_.back();
            break;
        case PathAnchor::Parent:
            if (scopes_.size() < 2) {
                return null_v();
            }
            cur = scopes_[scopes_.size() - 2];
            break;
        case PathAnchor::Expression: cur = eval(*path.base); break;
        }
        for (std::size_t i = first; i < path.segments.size() && cur.k != V::K::null; ++i) {
            cur = field(cur, path.segments[i]);
        }
        return cur;
    }

    const json& m_;
    std::vector<V> scopes_;
};

}  // namespace

bool reference_glob(std::string_view text, std::string_view pattern)
{
    // dp[j]: pattern[0, j) matches text[0, i)
    std::vector<char> dp(pattern.size() + 1, 0);
    dp[0] = 1;
    for (std::size_t j = 1; j <= pattern.size(); ++j) {
        dp[j] = dp[j - 1] && pattern[j - 1] == '*';
    }
    for (std::size_t i = 1; i <= text.size(); ++i) {
        std::vector<char> next(pattern.size() + 1, 0);
        for (std::size_t j = 1; j <= pattern.size(); ++j) {
            const char p = pattern[j - 1];
            if (p == '*') {
                next[j] = next[j - 1] || dp[j];
            } else if (p == '?' ||
                       std::tolower(static_cast<unsigned char>(p)) ==
                           std::tolower(static_cast<unsigned char>(text[i - 1]))) {
                next[j] = dp[j - 1];
            }
        }
        dp = std::move(next);
    }
    return dp[pattern.size()] != 0;
}

bool reference_eval(const RuleAst& ast, const json& message)
{
    return ast.root && truthy(Ref(message).eval(*ast.root));
}

}  // namespace rulebench::testing
