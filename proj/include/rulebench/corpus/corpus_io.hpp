// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/corpus/corpus.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <string>

namespace rulebench::corpus {

// Record schema: one JSON object per line with "kind": "message" | "label".
// Field names match the Message/Label structs; unknown fields are rejected.

nlohmann::json to_json(const Message& message);
nlohmann::json to_json(const Label& label);
nlohmann::json to_json(const Manifest& manifest);

/// Throws CorpusError naming the offending field path.
Message message_from_json(const nlohmann::json& record);
Label label_from_json(const nlohmann::json& record);
Manifest manifest_from_json(const nlohmann::json& document);

/// All-or-nothing ingestion of a line-delimited stream. Errors carry the
/// 1-based record (line) number. Blank lines are skipped.
Corpus ingest_stream(std::istream& in, std::string name, std::string created_at = {});

/// Reads `path`; when a `<path>.manifest.json` sidecar exists its counts
/// must match the recomputed ones and its name/created_at are adopted.
Corpus ingest(const std::filesystem::path& path);

/// Messages in stored order, then labels in stored order.
void export_jsonl(const Corpus& corpus, std::ostream& out);

/// Writes the corpus file and its manifest sidecar.
void write_corpus(const Corpus& corpus, const std::filesystem::path& path);

std::filesystem::path manifest_path_for(const std::filesystem::path& corpus_path);

}  // namespace rulebench::corpus
