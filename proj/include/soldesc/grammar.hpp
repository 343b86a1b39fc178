#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "soldesc/errors.hpp"

namespace soldesc {

/// One production X -> Y1 ... Yi over nonterminal symbols. Terminal words
/// never appear here; they live in the grammar's terminal map.
struct GrammarRule {
    std::string lhs;
    std::vector<std::string> rhs;

    friend bool operator==(const GrammarRule&, const GrammarRule&) = default;
    std::string to_string() const;
};

/// Context-free grammar: nonterminals N (phrase symbols plus POS categories),
/// a start symbol, structural rules, and the terminal lexicon sigma mapping
/// words to their categories.
///
/// File format, one declaration per line:
///   start: S
///   S  -> VP VP | NP
///   NN -> variable | amount        # single lowercase words are terminals
///   # comments and blank lines are ignored
class Grammar {
public:
    static Grammar from_file(const std::filesystem::path& path);
    static Grammar from_string(std::string_view text);

    const std::string& start() const { return start_; }
    const std::vector<GrammarRule>& rules() const { return rules_; }
    const std::map<std::string, std::vector<std::string>>& terminal_map() const {
        return terminal_map_;
    }
    const std::set<std::string>& nonterminals() const { return nonterminals_; }
    const std::vector<std::string>& warnings() const { return warnings_; }

    bool has_symbol(std::string_view name) const;
    /// Index into rules(), or -1.
    int rule_index(const GrammarRule& rule) const;

private:
    std::string start_;
    std::vector<GrammarRule> rules_;
    std::map<std::string, std::vector<std::string>> terminal_map_;  // word -> categories
    std::set<std::string> nonterminals_;
    std::vector<std::string> warnings_;

    void validate();
};

}  // namespace soldesc
