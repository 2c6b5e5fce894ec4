// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rulebench::corpus {

enum class Direction { Inbound, Outbound };

enum class Prevalence { New, Outlier, Uncommon, Common };

std::string_view to_string(Direction direction);
std::string_view to_string(Prevalence prevalence);
std::optional<Direction> parse_direction(std::string_view text);
std::optional<Prevalence> parse_prevalence(std::string_view text);

struct Sender {
    std::string email;
    std::string domain;
    std::string display_name;

    friend bool operator==(const Sender&, const Sender&) = default;
};

struct DomainInfo {
    std::string domain;
    bool valid = true;

    friend bool operator==(const DomainInfo&, const DomainInfo&) = default;
};

struct EmailAddress {
    std::string email;
    DomainInfo domain;

    friend bool operator==(const EmailAddress&, const EmailAddress&) = default;
};

struct Recipient {
    EmailAddress email;

    friend bool operator==(const Recipient&, const Recipient&) = default;
};

struct Recipients {
    std::vector<Recipient> to;
    std::vector<Recipient> cc;

    friend bool operator==(const Recipients&, const Recipients&) = default;
};

struct Body {
    std::string text;
    std::string html;

    friend bool operator==(const Body&, const Body&) = default;
};

/// Analyzer outputs (text extraction, nested-EML parsing, base64 decoding)
/// are carried as precomputed fields.
struct Attachment {
    std::string file_name;
    std::string file_extension;
    std::string content_type;
    std::string text_content;
    std::vector<Attachment> inner_attachments;  // only for message/rfc822 or .eml
    std::vector<std::string> base64_blobs;

    friend bool operator==(const Attachment&, const Attachment&) = default;
};

struct Link {
    std::string url;
    std::string domain;

    friend bool operator==(const Link&, const Link&) = default;
};

struct AuthResult {
    bool pass = false;

    friend bool operator==(const AuthResult&, const AuthResult&) = default;
};

struct AuthSummary {
    AuthResult dmarc;
    AuthResult spf;
    AuthResult dkim;

    friend bool operator==(const AuthSummary&, const AuthSummary&) = default;
};

struct Headers {
    AuthSummary auth_summary;
    std::map<std::string, std::string> raw;

    friend bool operator==(const Headers&, const Headers&) = default;
};

struct SenderProfile {
    Prevalence prevalence = Prevalence::Common;
    bool solicited = false;

    friend bool operator==(const SenderProfile&, const SenderProfile&) = default;
};

struct Nlu {
    std::vector<std::string> intents;
    std::vector<std::string> brands;

    friend bool operator==(const Nlu&, const Nlu&) = default;
};

struct Message {
    std::string id;
    std::string timestamp;  // RFC 3339 UTC, e.g. 2025-03-01T08:15:00Z
    Direction direction = Direction::Inbound;
    Sender sender;
    Recipients recipients;
    std::string subject;
    Body body;
    std::vector<Attachment> attachments;
    std::vector<Link> links;
    Headers headers;
    SenderProfile sender_profile;
    std::optional<Nlu> nlu;

    friend bool operator==(const Message&, const Message&) = default;
};

enum class Verdict { Malicious, Benign };

/// What label_of() reports; a message without a Label record is Unlabeled.
enum class LabelState { Malicious, Benign, Unlabeled };

std::string_view to_string(Verdict verdict);
std::string_view to_string(LabelState state);
std::optional<Verdict> parse_verdict(std::string_view text);

struct Label {
    std::string message_id;
    Verdict verdict = Verdict::Benign;
    std::string source;

    friend bool operator==(const Label&, const Label&) = default;
};

/// True when `text` is `YYYY-MM-DDTHH:MM:SSZ` with in-range fields.
bool is_utc_timestamp(std::string_view text);

/// Empty when the attachment tree respects the nesting invariant, otherwise
/// a description of the offending attachment.
std::string check_attachment(const Attachment& attachment);

}  // namespace rulebench::corpus
