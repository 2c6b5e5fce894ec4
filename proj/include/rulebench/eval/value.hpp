// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/corpus/message.hpp"

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>
#include <variant>

namespace rulebench::eval {

using corpus::Attachment;
using corpus::Link;
using corpus::Message;
using corpus::Recipient;

struct Null {};

/// A string borrowed from the message or the rule. `owner` is the attachment
/// the text was extracted from, if any; beta.scan_base64 follows it.
struct Str {
    std::string_view text;
    const Attachment* owner = nullptr;
};

struct StrList {
    std::span<const std::string> items;
    const Attachment* owner = nullptr;
};

struct AttachmentList {
    std::span<const Attachment> items;
};

struct RecipientList {
    std::span<const Recipient> items;
};

struct LinkList {
    std::span<const Link> items;
};

// Record views. Each wraps a pointer into the message under evaluation.
struct TypeView {
    const Message* message;
};
struct ParsedText {
    const Attachment* attachment;
};
struct ParsedEml {
    const Attachment* attachment;
};
struct RawHeaders {
    const std::map<std::string, std::string>* raw;
};

using Record = std::variant<TypeView, const corpus::Sender*, const corpus::Recipients*, const Recipient*,
                            const corpus::EmailAddress*, const corpus::DomainInfo*, const corpus::Body*,
                            const Attachment*, const Link*, const corpus::Headers*, const corpus::AuthSummary*,
                            const corpus::AuthResult*, RawHeaders, const corpus::SenderProfile*, const corpus::Nlu*,
                            ParsedText, ParsedEml>;

using Value = std::variant<Null, bool, std::int64_t, Str, StrList, AttachmentList, RecipientList, LinkList, Record>;

inline bool is_null(const Value& v)
{
    return std::holds_alternative<Null>(v);
}

/// Only a boolean true is truthy; null and every other kind are false.
inline bool truthy(const Value& v)
{
    const bool* b = std::get_if<bool>(&v);
    return b != nullptr && *b;
}

/// Short kind name used in diagnostics ("null", "string", "attachment-list", ...).
std::string_view kind_name(const Value& v);

}  // namespace rulebench::eval
