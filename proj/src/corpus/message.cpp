// SPDX-License-Identifier: Apache-2.0

#include "rulebench/corpus/message.hpp"

#include <cctype>

namespace rulebench::corpus {

std::string_view to_string(Direction direction)
{
    return direction == Direction::Inbound ? "inbound" : "outbound";
}

std::string_view to_string(Prevalence prevalence)
{
    switch (prevalence) {
    case Prevalence::New: return "new";
    case Prevalence::Outlier: return "outlier";
    case Prevalence::Uncommon: return "uncommon";
    case Prevalence::Common: return "common";
    }
    return "common";
}

std::optional<Direction> parse_direction(std::string_view text)
{
    if (text == "inbound") {
        return Direction::Inbound;
    }
    if (text == "outbound") {
        return Direction::Outbound;
    }
    return std::nullopt;
}

std::optional<Prevalence> parse_prevalence(std::string_view text)
{
    if (text == "new") {
        return Prevalence::New;
    }
    if (text == "outlier") {
        return Prevalence::Outlier;
    }
    if (text == "uncommon") {
        return Prevalence::Uncommon;
    }
    if (text == "common") {
        return Prevalence::Common;
    }
    return std::nullopt;
}

std::string_view to_string(Verdict verdict)
{
    return verdict == Verdict::Malicious ? "malicious" : "benign";
}

std::string_view to_string(LabelState state)
{
    switch (state) {
    case LabelState::Malicious: return "malicious";
    case LabelState::Benign: return "benign";
    case LabelState::Unlabeled: return "unlabeled";
    }
    return "unlabeled";
}

std::optional<Verdict> parse_verdict(std::string_view text)
{
    if (text == "malicious") {
        return Verdict::Malicious;
    }
    if (text == "benign") {
        return Verdict::Benign;
    }
    return std::nullopt;
}

bool is_utc_timestamp(std::string_view text)
{
    // YYYY-MM-DDTHH:MM:SSZ
    if (text.size() != 20 || text[4] != '-' || text[7] != '-' || text[10] != 'T' || text[13] != ':' ||
        text[16] != ':' || text[19] != 'Z') {
        return false;
    }
    auto number = [text](std::size_t at, std::size_t len) {
        int value = 0;
        for (std::size_t i = at; i < at + len; ++i) {
            if (std::isdigit(static_cast<unsigned char>(text[i])) == 0) {
                return -1;
            }
            value = value * 10 + (text[i] - '0');
        }
        return value;
    };
    const int year = number(0, 4);
    const int month = number(5, 2);
    const int day = number(8, 2);
    const int hour = number(11, 2);
    const int minute = number(14, 2);
    const int second = number(17, 2);
    if (year < 0 || month < 1 || month > 12 || day < 1 || hour < 0 || hour > 23 || minute < 0 || minute > 59 ||
        second < 0 || second > 60) {
        return false;
    }
    constexpr int days_in_month[] = {31, 29, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
    if (day > days_in_month[month - 1]) {
        return false;
    }
    const bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return !(month == 2 && day == 29 && !leap);
}

std::string check_attachment(const Attachment& attachment)
{
    if (!attachment.inner_attachments.empty() && attachment.content_type != "message/rfc822" &&
        attachment.file_extension != "eml") {
        return "attachment '" + attachment.file_name +
               "' has inner_attachments but is neither message/rfc822 nor .eml";
    }
    for (const auto& inner : attachment.inner_attachments) {
        if (auto problem = check_attachment(inner); !problem.empty()) {
            return problem;
        }
    }
    return {};
}

}  // namespace rulebench::corpus
