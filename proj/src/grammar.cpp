#include "soldesc/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <deque>
#include <fstream>
#include <sstream>

#include "soldesc/lexicon.hpp"

namespace soldesc {

std::string GrammarRule::to_string() const {
    std::string text = lhs + " ->";
    for (const std::string& symbol : rhs) {
        text += " " + symbol;
    }
    return text;
}

namespace {

bool is_symbol_token(std::string_view token) {
    // Nonterminals are written in caps (S, NP, PRP$); terminal words are not.
    if (token.empty()) return false;
    return std::all_of(token.begin(), token.end(), [](unsigned char c) {
        return std::isupper(c) != 0 || std::isdigit(c) != 0 || c == '$' || c == '\'' || c == '_';
    });
}

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return text;
}

std::vector<std::string> split_ws(std::string_view text) {
    std::vector<std::string> out;
    std::istringstream stream{std::string(text)};
    std::string token;
    while (stream >> token) out.push_back(token);
    return out;
}

}  // namespace

bool Grammar::has_symbol(std::string_view name) const {
    return nonterminals_.count(std::string(name)) > 0;
}

int Grammar::rule_index(const GrammarRule& rule) const {
    for (std::size_t i = 0; i < rules_.size(); ++i) {
        if (rules_[i] == rule) return static_cast<int>(i);
    }
    return -1;
}

Grammar Grammar::from_string(std::string_view text) {
    Grammar grammar;
    std::istringstream stream{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (const std::size_t hash = view.find('#'); hash != std::string_view::npos) {
            view = trim(view.substr(0, hash));
        }
        if (view.empty()) continue;

        if (view.starts_with("start:")) {
            grammar.start_ = std::string(trim(view.substr(6)));
            continue;
        }

        const std::size_t arrow = view.find("->");
        if (arrow == std::string_view::npos) {
            throw UnknownSymbol("grammar line " + std::to_string(line_no) + ": expected 'LHS -> RHS'");
        }
        std::string lhs{trim(view.substr(0, arrow))};
        if (!is_symbol_token(lhs)) {
            throw UnknownSymbol("grammar line " + std::to_string(line_no) + ": bad nonterminal '" +
                                lhs + "'");
        }
        grammar.nonterminals_.insert(lhs);

        std::string_view rhs_text = view.substr(arrow + 2);
        std::size_t begin = 0;
        while (begin <= rhs_text.size()) {
            std::size_t end = rhs_text.find('|', begin);
            if (end == std::string_view::npos) end = rhs_text.size();
            const std::vector<std::string> tokens = split_ws(rhs_text.substr(begin, end - begin));
            begin = end + 1;
            if (tokens.empty()) continue;

            if (tokens.size() == 1 && !is_symbol_token(tokens[0])) {
                grammar.terminal_map_[tokens[0]].push_back(lhs);
                continue;
            }
            for (const std::string& token : tokens) {
                if (!is_symbol_token(token)) {
                    throw UnknownSymbol("grammar line " + std::to_string(line_no) +
                                        ": terminal word '" + token +
                                        "' may only appear alone on a right-hand side");
                }
            }
            grammar.rules_.push_back(GrammarRule{lhs, tokens});
        }
    }
    grammar.validate();
    return grammar;
}

Grammar Grammar::from_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError("cannot open grammar file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return from_string(buffer.str());
}

void Grammar::validate() {
    if (start_.empty()) {
        throw NoStartSymbol("grammar file declares no 'start:' symbol");
    }
    // Categories used only as rule symbols (POS tags seeded by the tagger)
    // count as defined; anything else on a right-hand side must be an lhs.
    std::set<std::string> defined = nonterminals_;
    for (const auto& rule : rules_) {
        for (const std::string& symbol : rule.rhs) {
            if (defined.count(symbol) > 0 || Lexicon::is_known_tag(symbol)) continue;
            throw UnknownSymbol("rule '" + rule.to_string() + "' references undefined symbol '" +
                                symbol + "'");
        }
    }
    for (const std::string& symbol : {start_}) {
        if (defined.count(symbol) == 0 && !Lexicon::is_known_tag(symbol)) {
            throw UnknownSymbol("start symbol '" + symbol + "' is not defined");
        }
    }
    // N also contains the POS categories reachable from rules and sigma.
    for (const auto& rule : rules_) {
        for (const std::string& symbol : rule.rhs) nonterminals_.insert(symbol);
    }
    for (const auto& [word, categories] : terminal_map_) {
        for (const std::string& category : categories) nonterminals_.insert(category);
    }

    // Reachability warning pass from the start symbol.
    std::set<std::string> reached = {start_};
    std::deque<std::string> queue = {start_};
    while (!queue.empty()) {
        const std::string current = queue.front();
        queue.pop_front();
        for (const auto& rule : rules_) {
            if (rule.lhs != current) continue;
            for (const std::string& symbol : rule.rhs) {
                if (reached.insert(symbol).second) queue.push_back(symbol);
            }
        }
    }
    for (const auto& rule : rules_) {
        if (reached.count(rule.lhs) == 0) {
            warnings_.push_back("nonterminal '" + rule.lhs + "' is unreachable from '" + start_ + "'");
            reached.insert(rule.lhs);  // one warning per symbol
        }
    }
}

}  // namespace soldesc
