// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/corpus/message.hpp"

#include <json.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace rulebench::holdout {

inline constexpr int protocol_version = 1;

class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Wire format, one JSON document each way:
//   stdin  {"protocol_version":1, "attempt":n, "seed":s, "sample_message":{...}, "feedback":{...}}
//   stdout {"protocol_version":1, "rule_text":"...", "reported_cost_dollars":x, "generator_metadata":{...}}
// `feedback` is the empty object on attempt 1.

struct GeneratorRequest {
    std::size_t attempt = 1;
    std::uint64_t seed = 0;
    corpus::Message sample_message;
    nlohmann::json feedback = nlohmann::json::object();
};

struct GeneratorResponse {
    std::string rule_text;
    double reported_cost_dollars = 0.0;
    nlohmann::json generator_metadata = nlohmann::json::object();
};

nlohmann::json to_json(const GeneratorRequest& request);
GeneratorRequest request_from_json(const nlohmann::json& document);

nlohmann::json to_json(const GeneratorResponse& response);

/// Strict: wrong protocol_version, empty rule_text, a negative or missing
/// cost, or a non-object metadata field throw ProtocolError.
GeneratorResponse response_from_json(const nlohmann::json& document);
GeneratorResponse parse_response(const std::string& text);

}  // namespace rulebench::holdout
