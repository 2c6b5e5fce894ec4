// SPDX-License-Identifier: Apache-2.0

#include "rulebench/corpus/corpus_io.hpp"

#include <fstream>
#include <initializer_list>
#include <optional>
#include <istream>
#include <ostream>
#include <unordered_map>

namespace rulebench::corpus {
namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what)
{
    throw CorpusError(path + ": " + what);
}

void expect_fields(const json& j, const std::string& path, std::initializer_list<std::string_view> required,
                   std::initializer_list<std::string_view> optional = {})
{
    if (!j.is_object()) {
        schema_error(path, "expected an object");
    }
    for (const auto& key : required) {
        if (!j.contains(key)) {
            schema_error(path, "missing field '" + std::string(key) + "'");
        }
    }
    for (const auto& [key, value] : j.items()) {
        bool known = false;
        for (const auto& name : required) {
            known = known || key == name;
        }
        for (const auto& name : optional) {
            known = known || key == name;
        }
        if (!known) {
            schema_error(path, "unknown field '" + key + "'");
        }
    }
}

std::string get_string(const json& j, std::string_view key, const std::string& path)
{
    const auto& value = j.at(std::string(key));
    if (!value.is_string()) {
        schema_error(path + "." + std::string(key), "expected a string");
    }
    return value.get<std::string>();
}

bool get_bool(const json& j, std::string_view key, const std::string& path)
{
    const auto& value = j.at(std::string(key));
    if (!value.is_boolean()) {
        schema_error(path + "." + std::string(key), "expected a boolean");
    }
    return value.get<bool>();
}

const json& get_array(const json& j, std::string_view key, const std::string& path)
{
    const auto& value = j.at(std::string(key));
    if (!value.is_array()) {
        schema_error(path + "." + std::string(key), "expected an array");
    }
    return value;
}

std::vector<std::string> get_strings(const json& j, std::string_view key, const std::string& path)
{
    std::vector<std::string> out;
    const auto& array = get_array(j, key, path);
    for (std::size_t i = 0; i < array.size(); ++i) {
        if (!array[i].is_string()) {
            schema_error(path + "." + std::string(key) + "[" + std::to_string(i) + "]", "expected a string");
        }
        out.push_back(array[i].get<std::string>());
    }
    return out;
}

json to_json(const Attachment& a)
{
    json inner = json::array();
    for (const auto& child : a.inner_attachments) {
        inner.push_back(to_json(child));
    }
    return json{{"file_name", a.file_name},         {"file_extension", a.file_extension},
                {"content_type", a.content_type},   {"text_content", a.text_content},
                {"inner_attachments", std::move(inner)}, {"base64_blobs", a.base64_blobs}};
}

json to_json(const Recipient& r)
{
    return json{{"email", {{"email", r.email.email},
                           {"domain", {{"domain", r.email.domain.domain}, {"valid", r.email.domain.valid}}}}}};
}

Attachment attachment_from_json(const json& j, const std::string& path)
{
    expect_fields(j, path,
                  {"file_name", "file_extension", "content_type", "text_content", "inner_attachments",
                   "base64_blobs"});
    Attachment a;
    a.file_name = get_string(j, "file_name", path);
    a.file_extension = get_string(j, "file_extension", path);
    a.content_type = get_string(j, "content_type", path);
    a.text_content = get_string(j, "text_content", path);
    const auto& inner = get_array(j, "inner_attachments", path);
    for (std::size_t i = 0; i < inner.size(); ++i) {
        a.inner_attachments.push_back(
            attachment_from_json(inner[i], path + ".inner_attachments[" + std::to_string(i) + "]"));
    }
    a.base64_blobs = get_strings(j, "base64_blobs", path);
    if (auto problem = check_attachment(a); !problem.empty()) {
        schema_error(path, problem);
    }
    return a;
}

std::vector<Recipient> recipients_from_json(const json& j, std::string_view key, const std::string& path)
{
    std::vector<Recipient> out;
    const auto& array = get_array(j, key, path);
    for (std::size_t i = 0; i < array.size(); ++i) {
        const std::string at = path + "." + std::string(key) + "[" + std::to_string(i) + "]";
        expect_fields(array[i], at, {"email"});
        const auto& email = array[i].at("email");
        expect_fields(email, at + ".email", {"email", "domain"});
        const auto& domain = email.at("domain");
        expect_fields(domain, at + ".email.domain", {"domain", "valid"});
        Recipient r;
        r.email.email = get_string(email, "email", at + ".email");
        r.email.domain.domain = get_string(domain, "domain", at + ".email.domain");
        r.email.domain.valid = get_bool(domain, "valid", at + ".email.domain");
        out.push_back(std::move(r));
    }
    return out;
}

AuthResult auth_from_json(const json& j, std::string_view key, const std::string& path)
{
    const std::string at = path + "." + std::string(key);
    expect_fields(j.at(std::string(key)), at, {"pass"});
    return AuthResult{get_bool(j.at(std::string(key)), "pass", at)};
}

template <typename Parse>
auto parse_record(const std::string& where, Parse&& parse)
{
    try {
        return parse();
    } catch (const CorpusError& e) {
        throw CorpusError(where + ": " + e.what());
    } catch (const json::exception& e) {
        throw CorpusError(where + ": " + e.what());
    }
}

}  // namespace

json to_json(const Message& m)
{
    json attachments = json::array();
    for (const auto& a : m.attachments) {
        attachments.push_back(to_json(a));
    }
    json to = json::array();
    for (const auto& r : m.recipients.to) {
        to.push_back(to_json(r));
    }
    json cc = json::array();
    for (const auto& r : m.recipients.cc) {
        cc.push_back(to_json(r));
    }
    json links = json::array();
    for (const auto& l : m.links) {
        links.push_back({{"url", l.url}, {"domain", l.domain}});
    }
    json raw = json::object();
    for (const auto& [name, value] : m.headers.raw) {
        raw[name] = value;
    }
    json record{
        {"kind", "message"},
        {"id", m.id},
        {"timestamp", m.timestamp},
        {"direction", to_string(m.direction)},
        {"sender", {{"email", m.sender.email}, {"domain", m.sender.domain}, {"display_name", m.sender.display_name}}},
        {"recipients", {{"to", std::move(to)}, {"cc", std::move(cc)}}},
        {"subject", m.subject},
        {"body", {{"text", m.body.text}, {"html", m.body.html}}},
        {"attachments", std::move(attachments)},
        {"links", std::move(links)},
        {"headers",
         {{"auth_summary",
           {{"dmarc", {{"pass", m.headers.auth_summary.dmarc.pass}}},
            {"spf", {{"pass", m.headers.auth_summary.spf.pass}}},
            {"dkim", {{"pass", m.headers.auth_summary.dkim.pass}}}}},
          {"raw", std::move(raw)}}},
        {"sender_profile",
         {{"prevalence", to_string(m.sender_profile.prevalence)}, {"solicited", m.sender_profile.solicited}}},
        {"nlu", nullptr},
    };
    if (m.nlu) {
        record["nlu"] = {{"intents", m.nlu->intents}, {"brands", m.nlu->brands}};
    }
    return record;
}

json to_json(const Label& label)
{
    return json{{"kind", "label"},
                {"message_id", label.message_id},
                {"verdict", to_string(label.verdict)},
                {"source", label.source}};
}

json to_json(const Manifest& manifest)
{
    return json{{"name", manifest.name},
                {"created_at", manifest.created_at},
                {"counts",
                 {{"total", manifest.total},
                  {"malicious", manifest.malicious},
                  {"benign", manifest.benign},
                  {"unlabeled", manifest.unlabeled}}}};
}

Message message_from_json(const json& j)
{
    const std::string path = "message";
    expect_fields(j, path,
                  {"kind", "id", "timestamp", "direction", "sender", "recipients", "subject", "body", "attachments",
                   "links", "headers", "sender_profile"},
                  {"nlu"});
    if (get_string(j, "kind", path) != "message") {
        schema_error(path + ".kind", "expected \"message\"");
    }
    Message m;
    m.id = get_string(j, "id", path);
    if (m.id.empty()) {
        schema_error(path + ".id", "must be nonempty");
    }
    m.timestamp = get_string(j, "timestamp", path);
    if (!is_utc_timestamp(m.timestamp)) {
        schema_error(path + ".timestamp", "expected YYYY-MM-DDTHH:MM:SSZ, got '" + m.timestamp + "'");
    }
    const auto direction = parse_direction(get_string(j, "direction", path));
    if (!direction) {
        schema_error(path + ".direction", "expected \"inbound\" or \"outbound\"");
    }
    m.direction = *direction;

    const auto& sender = j.at("sender");
    expect_fields(sender, path + ".sender", {"email", "domain", "display_name"});
    m.sender = Sender{get_string(sender, "email", path + ".sender"), get_string(sender, "domain", path + ".sender"),
                      get_string(sender, "display_name", path + ".sender")};

    const auto& recipients = j.at("recipients");
    expect_fields(recipients, path + ".recipients", {"to", "cc"});
    m.recipients.to = recipients_from_json(recipients, "to", path + ".recipients");
    m.recipients.cc = recipients_from_json(recipients, "cc", path + ".recipients");

    m.subject = get_string(j, "subject", path);
    const auto& body = j.at("body");
    expect_fields(body, path + ".body", {"text", "html"});
    m.body = Body{get_string(body, "text", path + ".body"), get_string(body, "html", path + ".body")};

    const auto& attachments = get_array(j, "attachments", path);
    for (std::size_t i = 0; i < attachments.size(); ++i) {
        m.attachments.push_back(attachment_from_json(attachments[i], path + ".attachments[" + std::to_string(i) + "]"));
    }
    const auto& links = get_array(j, "links", path);
    for (std::size_t i = 0; i < links.size(); ++i) {
        const std::string at = path + ".links[" + std::to_string(i) + "]";
        expect_fields(links[i], at, {"url", "domain"});
        m.links.push_back(Link{get_string(links[i], "url", at), get_string(links[i], "domain", at)});
    }

    const auto& headers = j.at("headers");
    expect_fields(headers, path + ".headers", {"auth_summary", "raw"});
    const auto& auth = headers.at("auth_summary");
    expect_fields(auth, path + ".headers.auth_summary", {"dmarc", "spf", "dkim"});
    m.headers.auth_summary.dmarc = auth_from_json(auth, "dmarc", path + ".headers.auth_summary");
    m.headers.auth_summary.spf = auth_from_json(auth, "spf", path + ".headers.auth_summary");
    m.headers.auth_summary.dkim = auth_from_json(auth, "dkim", path + ".headers.auth_summary");
    const auto& raw = headers.at("raw");
    if (!raw.is_object()) {
        schema_error(path + ".headers.raw", "expected an object");
    }
    for (const auto& [name, value] : raw.items()) {
        if (!value.is_string()) {
            schema_error(path + ".headers.raw." + name, "expected a string");
        }
        m.headers.raw.emplace(name, value.get<std::string>());
    }

    const auto& profile = j.at("sender_profile");
    expect_fields(profile, path + ".sender_profile", {"prevalence", "solicited"});
    const auto prevalence = parse_prevalence(get_string(profile, "prevalence", path + ".sender_profile"));
    if (!prevalence) {
        schema_error(path + ".sender_profile.prevalence", "expected one of new, outlier, uncommon, common");
    }
    m.sender_profile = SenderProfile{*prevalence, get_bool(profile, "solicited", path + ".sender_profile")};

    if (j.contains("nlu") && !j.at("nlu").is_null()) {
        const auto& nlu = j.at("nlu");
        expect_fields(nlu, path + ".nlu", {"intents", "brands"});
        m.nlu = Nlu{get_strings(nlu, "intents", path + ".nlu"), get_strings(nlu, "brands", path + ".nlu")};
    }
    return m;
}

Label label_from_json(const json& j)
{
    const std::string path = "label";
    expect_fields(j, path, {"kind", "message_id", "verdict", "source"});
    if (get_string(j, "kind", path) != "label") {
        schema_error(path + ".kind", "expected \"label\"");
    }
    const auto verdict = parse_verdict(get_string(j, "verdict", path));
    if (!verdict) {
        schema_error(path + ".verdict", "expected \"malicious\" or \"benign\"");
    }
    return Label{get_string(j, "message_id", path), *verdict, get_string(j, "source", path)};
}

Manifest manifest_from_json(const json& j)
{
    expect_fields(j, "manifest", {"name", "created_at", "counts"});
    const auto& counts = j.at("counts");
    expect_fields(counts, "manifest.counts", {"total", "malicious", "benign", "unlabeled"});
    Manifest manifest;
    manifest.name = get_string(j, "name", "manifest");
    manifest.created_at = get_string(j, "created_at", "manifest");
    auto count = [&counts](const char* key) {
        const auto& v = counts.at(key);
        if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) {
            schema_error(std::string("manifest.counts.") + key, "expected a nonnegative integer");
        }
        return v.get<std::size_t>();
    };
    manifest.total = count("total");
    manifest.malicious = count("malicious");
    manifest.benign = count("benign");
    manifest.unlabeled = count("unlabeled");
    return manifest;
}

Corpus ingest_stream(std::istream& in, std::string name, std::string created_at)
{
    std::vector<Message> messages;
    std::vector<Label> labels;
    std::unordered_map<std::string, std::size_t> message_records;
    std::unordered_map<std::string, std::size_t> label_records;
    std::vector<std::size_t> label_record_numbers;
    std::string line;
    std::size_t record_number = 0;
    while (std::getline(in, line)) {
        ++record_number;
        if (line.find_first_not_of(" \t\r") == std::string::npos) {
            continue;
        }
        const std::string where = "record " + std::to_string(record_number);
        json record;
        try {
            record = json::parse(line);
        } catch (const json::parse_error& e) {
            throw CorpusError(where + ": malformed JSON: " + e.what());
        }
        if (!record.is_object() || !record.contains("kind") || !record["kind"].is_string()) {
            throw CorpusError(where + ": record is missing a string 'kind' field");
        }
        const std::string kind = record["kind"].get<std::string>();
        if (kind == "message") {
            Message m = parse_record(where, [&record] { return message_from_json(record); });
            const auto [it, inserted] = message_records.emplace(m.id, record_number);
            if (!inserted) {
                throw CorpusError("duplicate message id '" + m.id + "' (records " + std::to_string(it->second) +
                                  " and " + std::to_string(record_number) + ")");
            }
            messages.push_back(std::move(m));
        } else if (kind == "label") {
            Label label = parse_record(where, [&record] { return label_from_json(record); });
            const auto [it, inserted] = label_records.emplace(label.message_id, record_number);
            if (!inserted) {
                throw CorpusError("duplicate label for message id '" + label.message_id + "' (records " +
                                  std::to_string(it->second) + " and " + std::to_string(record_number) + ")");
            }
            label_record_numbers.push_back(record_number);
            labels.push_back(std::move(label));
        } else {
            throw CorpusError(where + ": unknown record kind '" + kind + "'");
        }
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (!message_records.contains(labels[i].message_id)) {
            throw CorpusError("record " + std::to_string(label_record_numbers[i]) +
                              ": label references unknown message id '" + labels[i].message_id + "'");
        }
    }
    return Corpus(std::move(name), std::move(created_at), std::move(messages), std::move(labels));
}

std::filesystem::path manifest_path_for(const std::filesystem::path& corpus_path)
{
    return std::filesystem::path(corpus_path.string() + ".manifest.json");
}

Corpus ingest(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw CorpusError("cannot read corpus file " + path.string());
    }
    std::optional<Manifest> sidecar;
    const auto manifest_path = manifest_path_for(path);
    if (std::filesystem::exists(manifest_path)) {
        std::ifstream min(manifest_path, std::ios::binary);
        try {
            sidecar = manifest_from_json(json::parse(min));
        } catch (const json::exception& e) {
            throw CorpusError(manifest_path.string() + ": malformed manifest: " + e.what());
        }
    }
    Corpus corpus = ingest_stream(in, sidecar ? sidecar->name : path.stem().string(),
                                  sidecar ? sidecar->created_at : std::string());
    if (sidecar && !(*sidecar == corpus.manifest())) {
        throw CorpusError(manifest_path.string() + ": manifest counts do not match the corpus contents");
    }
    return corpus;
}

void export_jsonl(const Corpus& corpus, std::ostream& out)
{
    for (const auto& message : corpus.messages()) {
        out << to_json(message).dump() << '\n';
    }
    for (const auto& label : corpus.labels()) {
        out << to_json(label).dump() << '\n';
    }
}

void write_corpus(const Corpus& corpus, const std::filesystem::path& path)
{
    {
        std::ofstream out(path, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw CorpusError("cannot write corpus file " + path.string());
        }
        export_jsonl(corpus, out);
    }
    std::ofstream manifest(manifest_path_for(path), std::ios::binary | std::ios::trunc);
    if (!manifest) {
        throw CorpusError("cannot write manifest for " + path.string());
    }
    manifest << to_json(corpus.manifest()).dump(2) << '\n';
}

}  // namespace rulebench::corpus
