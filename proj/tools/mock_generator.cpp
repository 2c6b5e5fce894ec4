// SPDX-License-Identifier: Apache-2.0
//
// Scripted stand-in for a rule generator. Reads one request on stdin and
// answers with the script entry for that attempt.
//
//   mock_generator SCRIPT [--capture-dir DIR]
//
// Script layout:
//   {"default": [entry, ...], "by_sample": {"<message id>": [entry, ...]}}
// Entries:
//   {"rule_text": "...", "cost": 0.5, "metadata": {...}}
//   {"rule_file": "rules/x.mql", "cost": 0.5}     (relative to the script)
//   {"crash": true}  {"malformed": true, "cost": 0.1}  {"sleep_seconds": 5}
// Attempt n uses entry n-1. Past the end the mock refuses and exits 4.

#include "rulebench/holdout/protocol.hpp"
#include "rulebench/rule_lang/rule_file.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <iterator>
#include <thread>

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

json read_json_file(const fs::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    return json::parse(in);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Scripted rule generator for tests"};
    std::string script_path;
    std::string capture_dir;
    app.add_option("script", script_path, "Script (JSON)")->required();
    app.add_option("--capture-dir", capture_dir, "Save each request here");
    CLI11_PARSE(app, argc, argv);

    try {
        const std::string input{std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
        const json request_doc = json::parse(input);
        const auto request = rulebench::holdout::request_from_json(request_doc);
        const std::string& sample_id = request.sample_message.id;

        if (!capture_dir.empty()) {
            fs::create_directories(capture_dir);
            std::ofstream out(fs::path(capture_dir) / (sample_id + ".attempt" + std::to_string(request.attempt) + ".json"),
                              std::ios::binary);
            out << request_doc.dump(2) << "\n";
        }

        const json script = read_json_file(script_path);
        const json* entries = &script.at("default");
        if (script.contains("by_sample") && script.at("by_sample").contains(sample_id)) {
            entries = &script.at("by_sample").at(sample_id);
        }
        if (request.attempt == 0 || request.attempt > entries->size()) {
            std::cout << json{{"refusal", "script exhausted"}, {"reported_cost_dollars", 0.0}}.dump() << "\n";
            return 4;
        }
        const json& entry = entries->at(request.attempt - 1);
        const double cost = entry.value("cost", 0.0);

        if (entry.value("sleep_seconds", 0.0) > 0.0) {
            std::this_thread::sleep_for(std::chrono::duration<double>(entry.at("sleep_seconds").get<double>()));
        }
        if (entry.value("crash", false)) {
            std::cerr << "mock generator: scripted crash\n";
            std::cout << json{{"reported_cost_dollars", cost}}.dump() << "\n";
            return 5;
        }
        if (entry.value("malformed", false)) {
            std::cout << "{\"protocol_version\": 1, \"rule_text\": \n";
            return 0;
        }

        rulebench::holdout::GeneratorResponse response;
        response.reported_cost_dollars = cost;
        if (entry.contains("rule_file")) {
            const fs::path file = fs::path(script_path).parent_path() / entry.at("rule_file").get<std::string>();
            response.rule_text = rulebench::lang::load_rule_file(file).text;
        } else {
            response.rule_text = entry.at("rule_text").get<std::string>();
        }
        if (entry.contains("metadata")) {
            response.generator_metadata = entry.at("metadata");
        }
        response.generator_metadata["mock_entry"] = request.attempt - 1;
        std::cout << rulebench::holdout::to_json(response).dump() << "\n";
        return 0;
    } catch (const std::exception& e) {
        std::cerr << "mock generator: " << e.what() << "\n";
        return 3;
    }
}
