#include "soldesc/lexicon.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

namespace soldesc {

namespace {

// Penn Treebank tagset plus SYM for verbatim code symbols.
constexpr std::array<std::string_view, 37> kKnownTags = {
    "CC", "CD", "DT", "EX", "FW", "IN", "JJ", "JJR", "JJS", "LS", "MD", "NN",
    "NNS", "NNP", "NNPS", "PDT", "POS", "PRP", "PRP$", "RB", "RBR", "RBS",
    "RP", "SYM", "TO", "UH", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ", "WDT",
    "WP", "WP$", "WRB", ".",
};

std::vector<ContextRule> default_context_rules() {
    // A modifier or determiner on the left forces the noun reading; an
    // infinitive marker or modal forces the verb reading; a preposition
    // takes a noun object.
    return {
        {{"JJ", "JJR", "JJS", "DT", "PRP$", "CD"}, "NN"},
        {{"JJ", "JJR", "JJS", "DT", "PRP$", "CD"}, "NNS"},
        {{"TO", "MD"}, "VB"},
        {{"IN"}, "NN"},
    };
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && (text.front() == ' ' || text.front() == '\r')) text.remove_prefix(1);
    while (!text.empty() && (text.back() == ' ' || text.back() == '\r')) text.remove_suffix(1);
    return text;
}

}  // namespace

Lexicon::Lexicon() : context_rules_(default_context_rules()) {}

bool Lexicon::is_known_tag(std::string_view tag) {
    return std::find(kKnownTags.begin(), kKnownTags.end(), tag) != kKnownTags.end();
}

void Lexicon::add(LexiconEntry entry) {
    if (entry.tags.empty()) {
        throw UnknownTag("entry '" + entry.word + "' has no tags");
    }
    for (const auto& [tag, weight] : entry.tags) {
        if (!is_known_tag(tag)) {
            throw UnknownTag("entry '" + entry.word + "': unknown tag '" + tag + "'");
        }
        if (weight <= 0) {
            throw UnknownTag("entry '" + entry.word + "': non-positive weight for tag '" + tag + "'");
        }
    }
    std::string key = entry.word;
    if (!entries_.emplace(key, std::move(entry)).second) {
        throw DuplicateWord("duplicate lexicon word '" + key + "'");
    }
}

const LexiconEntry* Lexicon::find(std::string_view word) const {
    const auto it = entries_.find(std::string(word));
    return it == entries_.end() ? nullptr : &it->second;
}

std::string Lexicon::tag_word(std::string_view word, std::optional<std::string_view> left_tag) const {
    const LexiconEntry* entry = find(word);
    if (entry == nullptr) return "NN";
    if (left_tag && entry->tags.size() > 1) {
        for (const ContextRule& rule : context_rules_) {
            const bool left_matches =
                std::find(rule.left_tags.begin(), rule.left_tags.end(), *left_tag) != rule.left_tags.end();
            if (!left_matches) continue;
            const bool has_candidate =
                std::any_of(entry->tags.begin(), entry->tags.end(),
                            [&](const auto& t) { return t.first == rule.candidate; });
            if (has_candidate) return rule.candidate;
        }
    }
    return entry->tags.front().first;
}

Lexicon Lexicon::from_string(std::string_view text) {
    Lexicon lexicon;
    std::istringstream stream{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;

        std::vector<std::string_view> fields;
        std::size_t begin = 0;
        while (begin <= view.size()) {
            std::size_t end = view.find('\t', begin);
            if (end == std::string_view::npos) end = view.size();
            fields.push_back(trim(view.substr(begin, end - begin)));
            begin = end + 1;
        }
        if (fields.size() < 2 || fields[0].empty()) {
            throw UnknownTag("lexicon line " + std::to_string(line_no) + ": expected 'word<TAB>tags'");
        }

        LexiconEntry entry;
        entry.word = std::string(fields[0]);
        std::string_view tags = fields[1];
        std::size_t pos = 0;
        while (pos <= tags.size()) {
            std::size_t end = tags.find(',', pos);
            if (end == std::string_view::npos) end = tags.size();
            std::string_view spec = trim(tags.substr(pos, end - pos));
            pos = end + 1;
            if (spec.empty()) continue;
            double weight = 1.0;
            std::size_t colon = spec.find(':');
            std::string tag{spec.substr(0, colon)};
            if (colon != std::string_view::npos) {
                weight = std::stod(std::string(spec.substr(colon + 1)));
            }
            entry.tags.emplace_back(std::move(tag), weight);
        }
        if (fields.size() >= 3 && !fields[2].empty()) {
            entry.expansion = std::string(fields[2]);
        }
        lexicon.add(std::move(entry));
    }
    return lexicon;
}

Lexicon Lexicon::from_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError("cannot open lexicon file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return from_string(buffer.str());
}

}  // namespace soldesc
