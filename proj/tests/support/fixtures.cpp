// SPDX-License-Identifier: Apache-2.0

#include "fixtures.hpp"

#include "rulebench/rule_lang/validator.hpp"

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unistd.h>

namespace rulebench::testing {

namespace fs = std::filesystem;

fs::path fixture(const std::string& relative)
{
    return fs::path(RULEBENCH_FIXTURE_DIR) / relative;
}

std::string read_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_file(const fs::path& path, const std::string& text)
{
    std::ofstream out(path, std::ios::binary);
    out << text;
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
}

lang::RuleAst must_parse(const std::string& text)
{
    auto result = lang::validate(text);
    if (!result.ok) {
        std::string why;
        for (const auto& d : result.diagnostics) {
            why += lang::format_diagnostic(d, "rule") + "\n";
        }
        throw std::runtime_error("rule does not validate:\n" + text + "\n" + why);
    }
    return std::move(*result.ast);
}

corpus::Message basic_message(const std::string& id)
{
    corpus::Message m;
    m.id = id;
    m.timestamp = "2025-03-01T08:00:00Z";
    m.sender = {"alice@vendor.com", "vendor.com", "Alice"};
    corpus::Recipient r;
    r.email = {"bob@acme.com", {"acme.com", true}};
    m.recipients.to.push_back(r);
    m.subject = "hello";
    m.body = {"plain body", "<p>plain body</p>"};
    m.headers.auth_summary = {{true}, {true}, {true}};
    m.sender_profile = {corpus::Prevalence::Common, true};
    return m;
}

fs::path scratch_dir(const std::string& name)
{
    const fs::path dir = fs::temp_directory_path() / ("rulebench-" + std::to_string(::getpid()) + "-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

holdout::HoldoutConfig fixture_holdout_config()
{
    const fs::path path = fixture("holdout/holdout.json");
    nlohmann::json doc = nlohmann::json::parse(read_file(path));
    for (auto& h : doc.at("holdouts")) {
        if (h.contains("generator_command")) {
            h["generator_command"][0] = RULEBENCH_MOCK_GENERATOR;
        }
    }
    return holdout::config_from_json(doc, path.parent_path());
}

}  // namespace rulebench::testing
