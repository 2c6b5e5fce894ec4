// SPDX-License-Identifier: Apache-2.0

#include "rulebench/eval/evaluator.hpp"

#include "rulebench/eval/glob.hpp"
#include "rulebench/eval/value.hpp"
#include "rulebench/rule_lang/builtins.hpp"

#include <stdexcept>
#include <type_traits>
#include <vector>

namespace rulebench::eval {

using lang::BoolOpKind;
using lang::BuiltinId;
using lang::CompareOp;
using lang::Expr;

std::string_view kind_name(const Value& v)
{
    switch (v.index()) {
    case 0: return "null";
    case 1: return "boolean";
    case 2: return "integer";
    case 3: return "string";
    case 4: return "string-list";
    case 5: return "attachment-list";
    case 6: return "recipient-list";
    case 7: return "link-list";
    default: return "record";
    }
}

nlohmann::json to_json(const EvalStats& stats)
{
    return nlohmann::json{{"type_mismatches", stats.type_mismatches},
                          {"regex_budget_exceeded", stats.regex_budget_exceeded},
                          {"invalid_patterns", stats.invalid_patterns}};
}

namespace {

std::string normalized_header(std::string_view name)
{
    std::string out = ascii_lower(name);
    for (char& c : out) {
        if (c == '_') {
            c = '-';
        }
    }
    return out;
}

template <typename... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <typename... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

class Interpreter {
public:
    Interpreter(const CompiledRule& rule, const corpus::Message& message, EvalStats& stats)
        : rule_(rule), message_(message), stats_(stats)
    {
    }

    bool run() { return rule_.ast_.root && truthy(eval(*rule_.ast_.root)); }

private:
    Value mismatch()
    {
        ++stats_.type_mismatches;
        return Null{};
    }

    Value eval(const Expr& expr)
    {
        return std::visit(
            [&](const auto& node) -> Value {
                using T = std::decay_t<decltype(node)>;
                if constexpr (std::is_same_v<T, lang::BoolOp>) {
                    return eval_bool(node);
                } else if constexpr (std::is_same_v<T, lang::Comparison>) {
                    return eval_compare(node);
                } else if constexpr (std::is_same_v<T, lang::IterPredicate>) {
                    return eval_iter(node);
                } else if constexpr (std::is_same_v<T, lang::FunctionCall>) {
                    return eval_call(node);
                } else if constexpr (std::is_same_v<T, lang::FieldPath>) {
                    return eval_path(node);
                } else {
                    return eval_literal(node);
                }
            },
            expr.node);
    }

    Value eval_bool(const lang::BoolOp& op)
    {
        switch (op.kind) {
        case BoolOpKind::Not: return !truthy(eval(*op.operands.front()));
        case BoolOpKind::And:
            for (const auto& operand : op.operands) {
                if (!truthy(eval(*operand))) {
                    return false;
                }
            }
            return true;
        case BoolOpKind::Or:
            for (const auto& operand : op.operands) {
                if (truthy(eval(*operand))) {
                    return true;
                }
            }
            return false;
        }
        return false;
    }

    Value eval_compare(const lang::Comparison& cmp)
    {
        const Value lhs = eval(*cmp.lhs);
        const Value rhs = eval(*cmp.rhs);
        if (is_null(lhs) || is_null(rhs)) {
            return Null{};
        }
        switch (cmp.op) {
        case CompareOp::Eq:
        case CompareOp::Ne: {
            std::optional<bool> equal;
            if (const auto* a = std::get_if<Str>(&lhs); a != nullptr) {
                if (const auto* b = std::get_if<Str>(&rhs); b != nullptr) {
                    equal = a->text == b->text;
                }
            } else if (const auto* a = std::get_if<bool>(&lhs); a != nullptr) {
                if (const auto* b = std::get_if<bool>(&rhs); b != nullptr) {
                    equal = *a == *b;
                }
            } else if (const auto* a = std::get_if<std::int64_t>(&lhs); a != nullptr) {
                if (const auto* b = std::get_if<std::int64_t>(&rhs); b != nullptr) {
                    equal = *a == *b;
                }
            }
            if (!equal) {
                return mismatch();
            }
            return cmp.op == CompareOp::Eq ? *equal : !*equal;
        }
        case CompareOp::IEq: {
            const auto* a = std::get_if<Str>(&lhs);
            const auto* b = std::get_if<Str>(&rhs);
            if (a == nullptr || b == nullptr) {
                return mismatch();
            }
            return iequals(a->text, b->text);
        }
        case CompareOp::In:
        case CompareOp::IIn: {
            const auto* needle = std::get_if<Str>(&lhs);
            const auto* list = std::get_if<StrList>(&rhs);
            if (needle == nullptr || list == nullptr) {
                return mismatch();
            }
            for (const auto& item : list->items) {
                if (cmp.op == CompareOp::In ? item == needle->text : iequals(item, needle->text)) {
                    return true;
                }
            }
            return false;
        }
        case CompareOp::Lt:
        case CompareOp::Le:
        case CompareOp::Gt:
        case CompareOp::Ge: {
            const auto* a = std::get_if<std::int64_t>(&lhs);
            const auto* b = std::get_if<std::int64_t>(&rhs);
            if (a == nullptr || b == nullptr) {
                return mismatch();
            }
            switch (cmp.op) {
            case CompareOp::Lt: return *a < *b;
            case CompareOp::Le: return *a <= *b;
            case CompareOp::Gt: return *a > *b;
            default: return *a >= *b;
            }
        }
        }
        return Null{};
    }

    template <typename F>
    bool quantify(lang::Quantifier quantifier, std::size_t count, F&& element_at, const Expr& predicate)
    {
        const bool want_any = quantifier == lang::Quantifier::Any;
        for (std::size_t i = 0; i < count; ++i) {
            scopes_.push_back(element_at(i));
            const bool holds = truthy(eval(predicate));
            scopes_.pop_back();
            if (want_any && holds) {
                return true;
            }
            if (!want_any && !holds) {
                return false;
            }
        }
        return !want_any;
    }

    Value eval_iter(const lang::IterPredicate& iter)
    {
        const Value collection = eval(*iter.collection);
        const Expr& predicate = *iter.predicate;
        return std::visit(
            overloaded{
                [&](const StrList& list) -> Value {
                    return quantify(
                        iter.quantifier, list.items.size(),
                        [&](std::size_t i) { return Value(Str{list.items[i], list.owner}); }, predicate);
                },
                [&](const AttachmentList& list) -> Value {
                    return quantify(
                        iter.quantifier, list.items.size(),
                        [&](std::size_t i) { return Value(Record(&list.items[i])); }, predicate);
                },
                [&](const RecipientList& list) -> Value {
                    return quantify(
                        iter.quantifier, list.items.size(),
                        [&](std::size_t i) { return Value(Record(&list.items[i])); }, predicate);
                },
                [&](const LinkList& list) -> Value {
                    return quantify(
                        iter.quantifier, list.items.size(),
                        [&](std::size_t i) { return Value(Record(&list.items[i])); }, predicate);
                },
                [&](const Null&) -> Value { return false; },
                [&](const auto&) -> Value {
                    mismatch();
                    return false;
                },
            },
            collection);
    }

    // Evaluates pattern argument i as a string; nullopt means skip it.
    std::optional<std::string_view> pattern_text(const lang::FunctionCall& call, std::size_t i)
    {
        const Value v = eval(*call.args[i]);
        if (const auto* s = std::get_if<Str>(&v); s != nullptr) {
            return s->text;
        }
        if (!is_null(v)) {
            mismatch();
        }
        return std::nullopt;
    }

    bool regex_search(const boost::regex& re, std::string_view text)
    {
        try {
            return boost::regex_search(text.begin(), text.end(), re);
        } catch (const std::runtime_error&) {
            ++stats_.regex_budget_exceeded;
            return false;
        }
    }

    Value eval_call(const lang::FunctionCall& call)
    {
        const lang::Builtin* builtin = lang::find_builtin(call.name);
        if (builtin == nullptr) {
            return mismatch();
        }
        switch (builtin->id) {
        case BuiltinId::profile_by_sender: return Record(&message_.sender_profile);
        case BuiltinId::file_parse_text:
        case BuiltinId::file_parse_eml: {
            const Value arg = eval(*call.args.front());
            if (is_null(arg)) {
                return Null{};
            }
            const auto* record = std::get_if<Record>(&arg);
            const auto* attachment = record != nullptr ? std::get_if<const Attachment*>(record) : nullptr;
            if (attachment == nullptr) {
                return mismatch();
            }
            if (builtin->id == BuiltinId::file_parse_text) {
                return Record(ParsedText{*attachment});
            }
            return Record(ParsedEml{*attachment});
        }
        case BuiltinId::beta_scan_base64: {
            const Value arg = eval(*call.args.front());
            if (is_null(arg)) {
                return Null{};
            }
            const auto* s = std::get_if<Str>(&arg);
            if (s == nullptr) {
                return mismatch();
            }
            if (s->owner == nullptr) {
                return StrList{};
            }
            return StrList{s->owner->base64_blobs, s->owner};
        }
        case BuiltinId::length: {
            const Value arg = eval(*call.args.front());
            return std::visit(overloaded{
                                  [](const Null&) -> Value { return Null{}; },
                                  [](const Str& s) -> Value { return static_cast<std::int64_t>(s.text.size()); },
                                  [](const StrList& l) -> Value { return static_cast<std::int64_t>(l.items.size()); },
                                  [](const AttachmentList& l) -> Value {
                                      return static_cast<std::int64_t>(l.items.size());
                                  },
                                  [](const RecipientList& l) -> Value {
                                      return static_cast<std::int64_t>(l.items.size());
                                  },
                                  [](const LinkList& l) -> Value { return static_cast<std::int64_t>(l.items.size()); },
                                  [this](const auto&) -> Value { return mismatch(); },
                              },
                              arg);
        }
        default: break;
        }

        // Pattern functions: subject then one or more patterns; true if any matches.
        const Value subject_value = eval(*call.args.front());
        if (is_null(subject_value)) {
            return Null{};
        }
        const auto* subject = std::get_if<Str>(&subject_value);
        if (subject == nullptr) {
            return mismatch();
        }
        for (std::size_t i = 1; i < call.args.size(); ++i) {
            if (builtin->patterns == lang::PatternKind::regex) {
                lang::CompiledRegex compiled;
                if (const auto it = rule_.regexes_.find(call.args[i].get()); it != rule_.regexes_.end()) {
                    compiled = it->second;
                } else {
                    const auto text = pattern_text(call, i);
                    if (!text) {
                        continue;
                    }
                    auto result = lang::compile_regex(*text, builtin->id == BuiltinId::regex_icontains);
                    if (auto* ok = std::get_if<lang::CompiledRegex>(&result); ok != nullptr) {
                        compiled = *ok;
                    }
                }
                if (!compiled) {
                    ++stats_.invalid_patterns;
                    continue;
                }
                if (regex_search(*compiled, subject->text)) {
                    return true;
                }
                continue;
            }
            const auto pattern = pattern_text(call, i);
            if (!pattern) {
                continue;
            }
            bool hit = false;
            switch (builtin->id) {
            case BuiltinId::strings_icontains: hit = icontains(subject->text, *pattern); break;
            case BuiltinId::strings_contains: hit = subject->text.find(*pattern) != std::string_view::npos; break;
            case BuiltinId::strings_ilike: hit = glob_match(subject->text, *pattern); break;
            default: break;
            }
            if (hit) {
                return true;
            }
        }
        return false;
    }

    Value root(std::string_view name)
    {
        if (name == "type") {
            return Record(TypeView{&message_});
        }
        if (name == "sender") {
            return Record(&message_.sender);
        }
        if (name == "recipients") {
            return Record(&message_.recipients);
        }
        if (name == "subject") {
            return Str{message_.subject};
        }
        if (name == "body") {
            return Record(&message_.body);
        }
        if (name == "attachments") {
            return AttachmentList{message_.attachments};
        }
        if (name == "links") {
            return LinkList{message_.links};
        }
        if (name == "headers") {
            return Record(&message_.headers);
        }
        if (name == "nlu") {
            return message_.nlu ? Value(Record(&*message_.nlu)) : Value(Null{});
        }
        // `profile` is only meaningful through profile.by_sender().
        return mismatch();
    }

    Value member(const Value& base, std::string_view seg)
    {
        if (is_null(base)) {
            return Null{};
        }
        const auto* record = std::get_if<Record>(&base);
        if (record == nullptr) {
            return mismatch();
        }
        const Value out = std::visit(
            overloaded{
                [&](const TypeView& t) -> Value {
                    if (seg == "inbound") {
                        return t.message->direction == corpus::Direction::Inbound;
                    }
                    if (seg == "outbound") {
                        return t.message->direction == corpus::Direction::Outbound;
                    }
                    return mismatch();
                },
                [&](const corpus::Sender* s) -> Value {
                    if (seg == "email") {
                        return Str{s->email};
                    }
                    if (seg == "domain") {
                        return Str{s->domain};
                    }
                    if (seg == "display_name") {
                        return Str{s->display_name};
                    }
                    return mismatch();
                },
                [&](const corpus::Recipients* r) -> Value {
                    if (seg == "to") {
                        return RecipientList{r->to};
                    }
                    if (seg == "cc") {
                        return RecipientList{r->cc};
                    }
                    return mismatch();
                },
                [&](const Recipient* r) -> Value {
                    return seg == "email" ? Value(Record(&r->email)) : mismatch();
                },
                [&](const corpus::EmailAddress* e) -> Value {
                    if (seg == "email") {
                        return Str{e->email};
                    }
                    if (seg == "domain") {
                        return Record(&e->domain);
                    }
                    return mismatch();
                },
                [&](const corpus::DomainInfo* d) -> Value {
                    if (seg == "domain") {
                        return Str{d->domain};
                    }
                    if (seg == "valid") {
                        return d->valid;
                    }
                    return mismatch();
                },
                [&](const corpus::Body* b) -> Value {
                    if (seg == "text") {
                        return Str{b->text};
                    }
                    if (seg == "html") {
                        return Str{b->html};
                    }
                    return mismatch();
                },
                [&](const Attachment* a) -> Value {
                    if (seg == "file_name") {
                        return Str{a->file_name};
                    }
                    if (seg == "file_extension") {
                        return Str{a->file_extension};
                    }
                    if (seg == "content_type") {
                        return Str{a->content_type};
                    }
                    if (seg == "text_content") {
                        return Str{a->text_content, a};
                    }
                    if (seg == "inner_attachments") {
                        return AttachmentList{a->inner_attachments};
                    }
                    if (seg == "base64_blobs") {
                        return StrList{a->base64_blobs, a};
                    }
                    return mismatch();
                },
                [&](const Link* l) -> Value {
                    if (seg == "url") {
                        return Str{l->url};
                    }
                    if (seg == "domain") {
                        return Str{l->domain};
                    }
                    return mismatch();
                },
                [&](const corpus::Headers* h) -> Value {
                    if (seg == "auth_summary") {
                        return Record(&h->auth_summary);
                    }
                    if (seg == "raw") {
                        return Record(RawHeaders{&h->raw});
                    }
                    return mismatch();
                },
                [&](const corpus::AuthSummary* a) -> Value {
                    if (seg == "dmarc") {
                        return Record(&a->dmarc);
                    }
                    if (seg == "spf") {
                        return Record(&a->spf);
                    }
                    if (seg == "dkim") {
                        return Record(&a->dkim);
                    }
                    return mismatch();
                },
                [&](const corpus::AuthResult* r) -> Value { return seg == "pass" ? Value(r->pass) : mismatch(); },
                [&](const RawHeaders& h) -> Value {
                    const std::string wanted = normalized_header(seg);
                    for (const auto& [name, value] : *h.raw) {
                        if (normalized_header(name) == wanted) {
                            return Str{value};
                        }
                    }
                    return Null{};
                },
                [&](const corpus::SenderProfile* p) -> Value {
                    if (seg == "prevalence") {
                        return Str{corpus::to_string(p->prevalence)};
                    }
                    if (seg == "solicited") {
                        return p->solicited;
                    }
                    return mismatch();
                },
                [&](const corpus::Nlu* n) -> Value {
                    if (seg == "intents") {
                        return StrList{n->intents};
                    }
                    if (seg == "brands") {
                        return StrList{n->brands};
                    }
                    return mismatch();
                },
                [&](const ParsedText& t) -> Value {
                    return seg == "text" ? Value(Str{t.attachment->text_content, t.attachment}) : mismatch();
                },
                [&](const ParsedEml& e) -> Value {
                    return seg == "attachments" ? Value(AttachmentList{e.attachment->inner_attachments})
                                                : mismatch();
                },
            },
            *record);
        return out;
    }

    Value eval_path(const lang::FieldPath& path)
    {
        Value current;
        std::size_t first = 0;
        switch (path.anchor) {
        case lang::PathAnchor::Root:
            if (path.segments.empty()) {
                return mismatch();
            }
            current = root(path.segments.front());
            first = 1;
            break;
        case lang::PathAnchor::Current:
            if (scopes_.empty()) {
                return mismatch();
            }
            current = scopes_.back();
            break;
        case lang::PathAnchor::Parent:
            if (scopes_.size() < 2) {
                return mismatch();
            }
            current = scopes_[scopes_.size() - 2];
            break;
        case lang::PathAnchor::Expression: current = eval(*path.base); break;
        }
        for (std::size_t i = first; i < path.segments.size(); ++i) {
            current = member(current, path.segments[i]);
            if (is_null(current)) {
                break;
            }
        }
        return current;
    }

    static Value eval_literal(const lang::Literal& literal)
    {
        return std::visit(overloaded{
                              [](bool b) -> Value { return b; },
                              [](std::int64_t i) -> Value { return i; },
                              [](const std::string& s) -> Value { return Str{s}; },
                              [](const std::vector<std::string>& list) -> Value { return StrList{list}; },
                          },
                          literal.value);
    }

    const CompiledRule& rule_;
    const corpus::Message& message_;
    EvalStats& stats_;
    std::vector<Value> scopes_;
};

namespace {

void collect_regexes(const Expr& expr, std::unordered_map<const Expr*, lang::CompiledRegex>& out)
{
    std::visit(
        [&](const auto& node) {
            using T = std::decay_t<decltype(node)>;
            if constexpr (std::is_same_v<T, lang::BoolOp>) {
                for (const auto& operand : node.operands) {
                    collect_regexes(*operand, out);
                }
            } else if constexpr (std::is_same_v<T, lang::Comparison>) {
                collect_regexes(*node.lhs, out);
                collect_regexes(*node.rhs, out);
            } else if constexpr (std::is_same_v<T, lang::IterPredicate>) {
                collect_regexes(*node.collection, out);
                collect_regexes(*node.predicate, out);
            } else if constexpr (std::is_same_v<T, lang::FunctionCall>) {
                const lang::Builtin* builtin = lang::find_builtin(node.name);
                for (std::size_t i = 0; i < node.args.size(); ++i) {
                    const Expr& arg = *node.args[i];
                    const auto* literal = std::get_if<lang::Literal>(&arg.node);
                    const auto* text = literal != nullptr ? std::get_if<std::string>(&literal->value) : nullptr;
                    if (i > 0 && builtin != nullptr && builtin->patterns == lang::PatternKind::regex &&
                        text != nullptr) {
                        auto compiled = lang::compile_regex(*text, builtin->id == BuiltinId::regex_icontains);
                        auto* ok = std::get_if<lang::CompiledRegex>(&compiled);
                        out.emplace(&arg, ok != nullptr ? *ok : nullptr);
                    } else {
                        collect_regexes(arg, out);
                    }
                }
            } else if constexpr (std::is_same_v<T, lang::FieldPath>) {
                if (node.base) {
                    collect_regexes(*node.base, out);
                }
            }
        },
        expr.node);
}

}  // namespace

CompiledRule::CompiledRule(lang::RuleAst ast) : ast_(std::move(ast))
{
    if (ast_.root) {
        collect_regexes(*ast_.root, regexes_);
    }
}

bool CompiledRule::matches(const corpus::Message& message, EvalStats* stats) const
{
    EvalStats local;
    Interpreter interpreter(*this, message, stats != nullptr ? *stats : local);
    return interpreter.run();
}

bool eval_rule(const lang::RuleAst& ast, const corpus::Message& message, EvalStats* stats)
{
    return CompiledRule(ast).matches(message, stats);
}

}  // namespace rulebench::eval
