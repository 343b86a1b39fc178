#include "soldesc/pcfg.hpp"

#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "soldesc/lexicon.hpp"

namespace soldesc {

std::vector<TaggedToken> SyntaxTree::yield() const {
    std::vector<TaggedToken> out;
    const std::function<void(const SyntaxTree&)> walk = [&](const SyntaxTree& node) {
        if (node.leaf) {
            out.push_back(*node.leaf);
            return;
        }
        for (const SyntaxTree& child : node.children) walk(child);
    };
    walk(*this);
    return out;
}

std::string SyntaxTree::bracketed() const {
    if (leaf) {
        return "(" + symbol + " " + leaf->text + ")";
    }
    std::string out = "(" + symbol;
    for (const SyntaxTree& child : children) {
        out += " " + child.bracketed();
    }
    return out + ")";
}

void SyntaxTree::collect_rules(std::vector<GrammarRule>& out) const {
    if (leaf || children.empty()) return;
    GrammarRule rule;
    rule.lhs = symbol;
    for (const SyntaxTree& child : children) rule.rhs.push_back(child.symbol);
    out.push_back(std::move(rule));
    for (const SyntaxTree& child : children) child.collect_rules(out);
}

namespace {

struct TreebankParser {
    std::string_view text;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
    }

    std::string atom() {
        const std::size_t begin = pos;
        while (pos < text.size() && !std::isspace(static_cast<unsigned char>(text[pos])) &&
               text[pos] != '(' && text[pos] != ')') {
            ++pos;
        }
        return std::string(text.substr(begin, pos - begin));
    }

    SyntaxTree tree() {
        skip_ws();
        if (pos >= text.size() || text[pos] != '(') {
            throw ForeignSymbol("treebank: expected '(' at offset " + std::to_string(pos));
        }
        ++pos;
        skip_ws();
        SyntaxTree node;
        node.symbol = atom();
        if (node.symbol.empty()) {
            throw ForeignSymbol("treebank: missing node symbol at offset " + std::to_string(pos));
        }
        skip_ws();
        while (pos < text.size() && text[pos] != ')') {
            if (text[pos] == '(') {
                node.children.push_back(tree());
            } else {
                const std::string word = atom();
                if (node.leaf || !node.children.empty()) {
                    throw ForeignSymbol("treebank: node '" + node.symbol +
                                        "' mixes a terminal word with subtrees");
                }
                node.leaf = TaggedToken{word, node.symbol, TokenOrigin::TemplateWord};
            }
            skip_ws();
        }
        if (pos >= text.size()) {
            throw ForeignSymbol("treebank: unbalanced parentheses");
        }
        ++pos;  // ')'
        return node;
    }
};

}  // namespace

std::vector<SyntaxTree> parse_treebank(std::string_view text) {
    std::vector<SyntaxTree> trees;
    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        std::string_view view = line;
        if (const std::size_t hash = view.find('#'); hash != std::string_view::npos) {
            view = view.substr(0, hash);
        }
        bool blank = true;
        for (const char c : view) {
            if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
        }
        if (blank) continue;
        TreebankParser parser{view};
        trees.push_back(parser.tree());
    }
    return trees;
}

std::vector<SyntaxTree> load_treebank(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError("cannot open treebank file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_treebank(buffer.str());
}

PcfgModel::PcfgModel(Grammar grammar, std::vector<double> probs)
    : grammar_(std::move(grammar)), probs_(std::move(probs)) {
    build_tables();
}

std::optional<double> PcfgModel::rule_prob(const GrammarRule& rule) const {
    const int index = grammar_.rule_index(rule);
    if (index < 0) return std::nullopt;
    return probs_[static_cast<std::size_t>(index)];
}

PcfgModel PcfgModel::uniform(const Grammar& grammar) {
    std::map<std::string, int> lhs_rule_counts;
    for (const GrammarRule& rule : grammar.rules()) {
        ++lhs_rule_counts[rule.lhs];
    }
    std::vector<double> probs;
    probs.reserve(grammar.rules().size());
    for (const GrammarRule& rule : grammar.rules()) {
        probs.push_back(1.0 / lhs_rule_counts.at(rule.lhs));
    }
    return PcfgModel(grammar, std::move(probs));
}

PcfgModel PcfgModel::estimate(const Grammar& grammar, const std::vector<SyntaxTree>& treebank) {
    if (treebank.empty()) {
        throw EmptyTreebank("cannot estimate rule probabilities from an empty treebank");
    }
    std::vector<std::size_t> counts(grammar.rules().size(), 0);
    for (const SyntaxTree& tree : treebank) {
        const std::function<void(const SyntaxTree&)> walk = [&](const SyntaxTree& node) {
            if (!grammar.has_symbol(node.symbol) && !Lexicon::is_known_tag(node.symbol)) {
                throw ForeignSymbol("treebank symbol '" + node.symbol + "' is not in the grammar");
            }
            if (node.leaf || node.children.empty()) return;
            GrammarRule rule;
            rule.lhs = node.symbol;
            for (const SyntaxTree& child : node.children) rule.rhs.push_back(child.symbol);
            const int index = grammar.rule_index(rule);
            if (index < 0) {
                throw ForeignSymbol("treebank rule '" + rule.to_string() + "' is not in the grammar");
            }
            ++counts[static_cast<std::size_t>(index)];
            for (const SyntaxTree& child : node.children) walk(child);
        };
        walk(tree);
    }

    std::map<std::string, std::size_t> lhs_totals;
    std::map<std::string, std::size_t> lhs_rules;
    for (std::size_t i = 0; i < grammar.rules().size(); ++i) {
        lhs_totals[grammar.rules()[i].lhs] += counts[i];
        ++lhs_rules[grammar.rules()[i].lhs];
    }
    std::vector<double> probs(grammar.rules().size(), 0.0);
    for (std::size_t i = 0; i < grammar.rules().size(); ++i) {
        const std::string& lhs = grammar.rules()[i].lhs;
        probs[i] = (static_cast<double>(counts[i]) + 1.0) /
                   (static_cast<double>(lhs_totals.at(lhs)) + static_cast<double>(lhs_rules.at(lhs)));
    }
    return PcfgModel(grammar, std::move(probs));
}

int PcfgModel::symbol_id(std::string_view name) const {
    const auto it = symbol_ids_.find(name);
    return it == symbol_ids_.end() ? -1 : it->second;
}

const PcfgModel::Piece* PcfgModel::piece_for_intermediate(int id) const {
    if (!is_intermediate(id)) return nullptr;
    return &pieces_[static_cast<std::size_t>(intermediate_piece_[id - first_intermediate_])];
}

void PcfgModel::build_tables() {
    auto intern = [this](const std::string& name) {
        const auto it = symbol_ids_.find(name);
        if (it != symbol_ids_.end()) return it->second;
        const int id = static_cast<int>(symbol_names_.size());
        symbol_names_.push_back(name);
        symbol_ids_.emplace(name, id);
        return id;
    };

    for (const std::string& symbol : grammar_.nonterminals()) intern(symbol);
    start_id_ = intern(grammar_.start());
    first_intermediate_ = static_cast<int>(symbol_names_.size());

    for (std::size_t r = 0; r < grammar_.rules().size(); ++r) {
        const GrammarRule& rule = grammar_.rules()[r];
        const double prob = probs_[r];
        if (rule.rhs.size() == 1) {
            unaries_.push_back(Unary{intern(rule.lhs), intern(rule.rhs[0]), prob,
                                     static_cast<int>(r)});
            continue;
        }
        // right-binarize: X -> Y1 ~r_1, ~r_1 -> Y2 ~r_2, ..., ~r_k -> Y(n-1) Yn
        int lhs = intern(rule.lhs);
        double piece_prob = prob;
        for (std::size_t k = 0; k + 2 < rule.rhs.size(); ++k) {
            const std::string inter_name =
                "~" + std::to_string(r) + "_" + std::to_string(k + 1);
            const int inter = intern(inter_name);
            intermediate_piece_.push_back(static_cast<int>(pieces_.size() + 1));
            pieces_.push_back(Piece{lhs, intern(rule.rhs[k]), inter, piece_prob,
                                    static_cast<int>(r), static_cast<int>(k)});
            lhs = inter;
            piece_prob = 1.0;
        }
        pieces_.push_back(Piece{lhs, intern(rule.rhs[rule.rhs.size() - 2]),
                                intern(rule.rhs.back()), piece_prob, static_cast<int>(r),
                                static_cast<int>(rule.rhs.size()) - 2});
    }
}

}  // namespace soldesc
