// SPDX-License-Identifier: Apache-2.0

#include "rulebench/holdout/protocol.hpp"

#include "rulebench/corpus/corpus_io.hpp"

#include <cmath>

namespace rulebench::holdout {

nlohmann::json to_json(const GeneratorRequest& request)
{
    return nlohmann::json{{"protocol_version", protocol_version},
                          {"attempt", request.attempt},
                          {"seed", request.seed},
                          {"sample_message", corpus::to_json(request.sample_message)},
                          {"feedback", request.feedback}};
}

GeneratorRequest request_from_json(const nlohmann::json& j)
{
    try {
        if (j.at("protocol_version").get<int>() != protocol_version) {
            throw ProtocolError("unsupported protocol_version");
        }
        GeneratorRequest r;
        j.at("attempt").get_to(r.attempt);
        if (j.contains("seed")) {
            j.at("seed").get_to(r.seed);
        }
        r.sample_message = corpus::message_from_json(j.at("sample_message"));
        r.feedback = j.at("feedback");
        return r;
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("malformed request: ") + e.what());
    } catch (const corpus::CorpusError& e) {
        throw ProtocolError(std::string("malformed sample_message: ") + e.what());
    }
}

nlohmann::json to_json(const GeneratorResponse& response)
{
    return nlohmann::json{{"protocol_version", protocol_version},
                          {"rule_text", response.rule_text},
                          {"reported_cost_dollars", response.reported_cost_dollars},
                          {"generator_metadata", response.generator_metadata}};
}

GeneratorResponse response_from_json(const nlohmann::json& j)
{
    if (!j.is_object()) {
        throw ProtocolError("response is not an object");
    }
    if (!j.contains("protocol_version") || !j.at("protocol_version").is_number_integer() ||
        j.at("protocol_version").get<int>() != protocol_version) {
        throw ProtocolError("response protocol_version must be " + std::to_string(protocol_version));
    }
    GeneratorResponse r;
    if (!j.contains("rule_text") || !j.at("rule_text").is_string()) {
        throw ProtocolError("response rule_text must be a string");
    }
    r.rule_text = j.at("rule_text").get<std::string>();
    if (r.rule_text.empty()) {
        throw ProtocolError("response rule_text is empty");
    }
    if (!j.contains("reported_cost_dollars") || !j.at("reported_cost_dollars").is_number()) {
        throw ProtocolError("response reported_cost_dollars must be a number");
    }
    r.reported_cost_dollars = j.at("reported_cost_dollars").get<double>();
    if (!std::isfinite(r.reported_cost_dollars) || r.reported_cost_dollars < 0.0) {
        throw ProtocolError("response reported_cost_dollars must be >= 0");
    }
    if (j.contains("generator_metadata")) {
        if (!j.at("generator_metadata").is_object()) {
            throw ProtocolError("response generator_metadata must be an object");
        }
        r.generator_metadata = j.at("generator_metadata");
    }
    return r;
}

GeneratorResponse parse_response(const std::string& text)
{
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ProtocolError(std::string("response is not valid JSON: ") + e.what());
    }
    return response_from_json(j);
}

}  // namespace rulebench::holdout
