// SPDX-License-Identifier: Apache-2.0

#include "rulebench/corpus/corpus.hpp"

#include <algorithm>

namespace rulebench::corpus {

Corpus::Corpus(std::string name, std::string created_at, std::vector<Message> messages, std::vector<Label> labels)
    : messages_(std::move(messages)), labels_(std::move(labels))
{
    index_.reserve(messages_.size());
    for (std::size_t i = 0; i < messages_.size(); ++i) {
        if (!index_.emplace(messages_[i].id, i).second) {
            throw CorpusError("duplicate message id '" + messages_[i].id + "'");
        }
    }
    label_index_.reserve(labels_.size());
    for (const auto& label : labels_) {
        if (!index_.contains(label.message_id)) {
            throw CorpusError("label references unknown message id '" + label.message_id + "'");
        }
        const LabelState state = label.verdict == Verdict::Malicious ? LabelState::Malicious : LabelState::Benign;
        if (!label_index_.emplace(label.message_id, state).second) {
            throw CorpusError("message id '" + label.message_id + "' has more than one label");
        }
    }
    manifest_.name = std::move(name);
    manifest_.created_at = std::move(created_at);
    manifest_.total = messages_.size();
    for (const auto& label : labels_) {
        if (label.verdict == Verdict::Malicious) {
            ++manifest_.malicious;
        } else {
            ++manifest_.benign;
        }
    }
    manifest_.unlabeled = manifest_.total - manifest_.malicious - manifest_.benign;
}

bool Corpus::contains(const std::string& id) const
{
    return index_.contains(id);
}

const Message& Corpus::message(const std::string& id) const
{
    const auto it = index_.find(id);
    if (it == index_.end()) {
        throw CorpusError("unknown message id '" + id + "'");
    }
    return messages_[it->second];
}

LabelState Corpus::label_of(const std::string& id) const
{
    if (!index_.contains(id)) {
        throw CorpusError("unknown message id '" + id + "'");
    }
    const auto it = label_index_.find(id);
    return it == label_index_.end() ? LabelState::Unlabeled : it->second;
}

bool Corpus::same_content(const Corpus& other) const
{
    if (messages_.size() != other.messages_.size() || labels_.size() != other.labels_.size()) {
        return false;
    }
    for (const auto& message : messages_) {
        const auto it = other.index_.find(message.id);
        if (it == other.index_.end() || !(other.messages_[it->second] == message)) {
            return false;
        }
    }
    auto sorted = [](std::vector<Label> labels) {
        std::sort(labels.begin(), labels.end(),
                  [](const Label& a, const Label& b) { return a.message_id < b.message_id; });
        return labels;
    };
    return sorted(labels_) == sorted(other.labels_);
}

}  // namespace rulebench::corpus
