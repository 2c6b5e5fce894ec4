// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/corpus/corpus.hpp"
#include "rulebench/util/rng.hpp"

#include <json.hpp>

#include <array>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>

namespace rulebench::corpus {

/// Message families the generator can instantiate. Every malicious family
/// has a paired detection rule under fixtures/rules/.
enum class Template {
    CallbackPdf,
    SvgSmuggling,
    BecReplyTo,
    BrandImpersonation,
    FakeVoicemail,
    GiveawayScam,
    LookalikeDomain,
    BenignBusiness,
};

inline constexpr std::array<Template, 7> malicious_templates{
    Template::CallbackPdf,   Template::SvgSmuggling, Template::BecReplyTo,      Template::BrandImpersonation,
    Template::FakeVoicemail, Template::GiveawayScam, Template::LookalikeDomain,
};

std::string_view to_string(Template t);
std::optional<Template> parse_template(std::string_view name);

struct SynthConfig {
    std::string name = "synthetic";
    std::string created_at = "2025-03-15T00:00:00Z";
    std::int64_t count = 1000;
    double malicious_fraction = 0.3;
    double unlabeled_fraction = 0.0;
    // Relative weights over the malicious families; benign mail always uses
    // Template::BenignBusiness. An empty map weighs every family equally;
    // otherwise families missing from it are never drawn.
    std::map<Template, double> template_weights;
};

/// Throws CorpusError on unknown fields, count < 0, fractions outside
/// [0, 1], negative weights, or weights not summing to a positive value.
SynthConfig synth_config_from_json(const nlohmann::json& document);
SynthConfig load_synth_config(const std::filesystem::path& path);
nlohmann::json to_json(const SynthConfig& config);

/// Deterministic for a fixed (config, seed). Exactly
/// round(count * malicious_fraction) messages are malicious. Labels carry
/// `synthetic:<template>` (benign near-miss variants append `/<variant>`)
/// as their source; unlabeled messages are chosen independently of class.
Corpus synthesize(const SynthConfig& config, std::uint64_t seed);

/// One message of the given family. Exposed for per-family tests.
Message synthesize_message(Template t, Rng& rng, std::string id, std::string timestamp);

/// Template name recorded in a synthetic label source, if any.
std::optional<Template> template_from_label_source(std::string_view source);

}  // namespace rulebench::corpus
