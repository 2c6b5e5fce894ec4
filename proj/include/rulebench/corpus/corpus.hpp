// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "rulebench/corpus/message.hpp"

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace rulebench::corpus {

class CorpusError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Manifest {
    std::string name;
    std::string created_at;
    std::size_t total = 0;
    std::size_t malicious = 0;
    std::size_t benign = 0;
    std::size_t unlabeled = 0;

    friend bool operator==(const Manifest&, const Manifest&) = default;
};

/// Immutable labeled message store. Messages keep insertion order; lookups
/// by id are constant time.
class Corpus {
public:
    Corpus() = default;

    /// Throws CorpusError on duplicate message ids, duplicate labels, or a
    /// label naming an unknown message.
    Corpus(std::string name, std::string created_at, std::vector<Message> messages, std::vector<Label> labels);

    [[nodiscard]] std::span<const Message> messages() const { return messages_; }
    [[nodiscard]] std::span<const Label> labels() const { return labels_; }
    [[nodiscard]] std::size_t size() const { return messages_.size(); }
    [[nodiscard]] bool empty() const { return messages_.empty(); }
    [[nodiscard]] const Manifest& manifest() const { return manifest_; }

    [[nodiscard]] bool contains(const std::string& id) const;

    /// Throws CorpusError for unknown ids.
    [[nodiscard]] const Message& message(const std::string& id) const;

    /// Throws CorpusError for unknown ids.
    [[nodiscard]] LabelState label_of(const std::string& id) const;

    /// Order-insensitive equality over messages and labels.
    [[nodiscard]] bool same_content(const Corpus& other) const;

private:
    std::vector<Message> messages_;
    std::vector<Label> labels_;
    std::unordered_map<std::string, std::size_t> index_;
    std::unordered_map<std::string, LabelState> label_index_;
    Manifest manifest_;
};

}  // namespace rulebench::corpus
