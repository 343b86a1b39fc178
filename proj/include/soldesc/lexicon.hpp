#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "soldesc/errors.hpp"

namespace soldesc {

struct LexiconEntry {
    std::string word;                                     // lowercase
    std::vector<std::pair<std::string, double>> tags;     // (Penn tag, weight); first is the default
    std::optional<std::string> expansion;                 // full form for abbreviations
};

/// Tag rewrite fired by a one-tag left window: when the previous word's tag
/// is in `left_tags` and the current word's entry lists `candidate` among its
/// tags, the word is tagged `candidate`.
struct ContextRule {
    std::vector<std::string> left_tags;
    std::string candidate;
};

/// POS lexicon over the Penn Treebank tagset, extended with the blockchain
/// vocabulary the translator emits. Immutable after loading.
class Lexicon {
public:
    Lexicon();  // empty lexicon with the default context rules

    static Lexicon from_file(const std::filesystem::path& path);
    static Lexicon from_string(std::string_view text);

    static bool is_known_tag(std::string_view tag);

    void add(LexiconEntry entry);  // throws DuplicateWord / UnknownTag

    const LexiconEntry* find(std::string_view word) const;

    /// Total function: default tag of the word, adjusted by the first context
    /// rule that fires; unknown words resolve to NN.
    std::string tag_word(std::string_view word,
                         std::optional<std::string_view> left_tag = std::nullopt) const;

    const std::vector<ContextRule>& context_rules() const { return context_rules_; }
    std::size_t size() const { return entries_.size(); }

private:
    std::unordered_map<std::string, LexiconEntry> entries_;
    std::vector<ContextRule> context_rules_;
};

}  // namespace soldesc
