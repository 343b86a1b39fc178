#include "soldesc/realizer.hpp"

#include <algorithm>
#include <cctype>

namespace soldesc {

namespace {

// Length above which clause validation is skipped; assembly is unaffected.
constexpr std::size_t kMaxDeriveLength = 25;

struct Entry {
    double score = -1.0;  // < 0 marks an empty cell
    enum Kind : unsigned char { kLexical, kUnary, kBinary } kind = kLexical;
    int piece = -1;  // pieces() index (binary) or unaries() index (unary)
    int split = -1;
    int left = -1;
    int right = -1;
    int child = -1;

    bool valid() const { return score >= 0.0; }
};

class Chart {
public:
    Chart(std::size_t n, std::size_t symbols) : n_(n), symbols_(symbols) {
        cells_.resize(n * (n + 1) / 2 * symbols);
    }

    Entry& at(std::size_t i, std::size_t j, int symbol) {
        return cells_[cell_base(i, j) + static_cast<std::size_t>(symbol)];
    }
    const Entry& at(std::size_t i, std::size_t j, int symbol) const {
        return cells_[cell_base(i, j) + static_cast<std::size_t>(symbol)];
    }

private:
    std::size_t cell_base(std::size_t i, std::size_t j) const {
        const std::size_t len = j - i;                      // 1..n
        const std::size_t row_start = (len - 1) * n_ - (len - 1) * (len - 2) / 2;
        return (row_start + i) * symbols_;
    }

    std::size_t n_;
    std::size_t symbols_;
    std::vector<Entry> cells_;
};

struct Parser {
    const PcfgModel& model;
    const std::vector<TaggedToken>& tokens;
    Chart chart;

    Parser(const PcfgModel& m, const std::vector<TaggedToken>& t)
        : model(m), tokens(t), chart(t.size(), static_cast<std::size_t>(m.symbol_count())) {}

    // Deterministic order over equal-score derivations of the same cell and
    // symbol: kind, then rule declaration index, then split point, then the
    // children, leftmost first.
    int compare(const Entry& a, const Entry& b) const {
        if (a.kind != b.kind) return a.kind < b.kind ? -1 : 1;
        switch (a.kind) {
            case Entry::kLexical:
                return 0;
            case Entry::kUnary: {
                const auto& ua = model.unaries()[static_cast<std::size_t>(a.piece)];
                const auto& ub = model.unaries()[static_cast<std::size_t>(b.piece)];
                // same rule implies same child symbol, whose cell best is shared
                if (ua.rule != ub.rule) return ua.rule < ub.rule ? -1 : 1;
                return 0;
            }
            case Entry::kBinary: {
                const auto& pa = model.pieces()[static_cast<std::size_t>(a.piece)];
                const auto& pb = model.pieces()[static_cast<std::size_t>(b.piece)];
                if (pa.rule != pb.rule) return pa.rule < pb.rule ? -1 : 1;
                if (pa.ordinal != pb.ordinal) return pa.ordinal < pb.ordinal ? -1 : 1;
                if (a.split != b.split) return a.split < b.split ? -1 : 1;
                // identical shape: children entries are the stored cell bests
                return 0;
            }
        }
        return 0;
    }

    bool better(const Entry& candidate, const Entry& incumbent) const {
        if (!incumbent.valid()) return true;
        if (candidate.score != incumbent.score) return candidate.score > incumbent.score;
        return compare(candidate, incumbent) < 0;
    }

    void apply_unaries(std::size_t i, std::size_t j) {
        const int max_passes = model.symbol_count() + 1;
        for (int pass = 0; pass < max_passes; ++pass) {
            bool changed = false;
            for (std::size_t u = 0; u < model.unaries().size(); ++u) {
                const auto& unary = model.unaries()[u];
                const Entry& child = chart.at(i, j, unary.child);
                if (!child.valid()) continue;
                Entry candidate;
                candidate.score = unary.prob * child.score;
                candidate.kind = Entry::kUnary;
                candidate.piece = static_cast<int>(u);
                candidate.child = unary.child;
                Entry& slot = chart.at(i, j, unary.lhs);
                if (better(candidate, slot)) {
                    slot = candidate;
                    changed = true;
                }
            }
            if (!changed) break;
        }
    }

    void run() {
        const std::size_t n = tokens.size();
        for (std::size_t i = 0; i < n; ++i) {
            const int tag_id = model.symbol_id(tokens[i].tag);
            if (tag_id >= 0) {
                Entry& slot = chart.at(i, i + 1, tag_id);
                slot.score = 1.0;
                slot.kind = Entry::kLexical;
            }
            apply_unaries(i, i + 1);
        }
        for (std::size_t len = 2; len <= n; ++len) {
            for (std::size_t i = 0; i + len <= n; ++i) {
                const std::size_t j = i + len;
                for (std::size_t split = i + 1; split < j; ++split) {
                    for (std::size_t p = 0; p < model.pieces().size(); ++p) {
                        const auto& piece = model.pieces()[p];
                        const Entry& left = chart.at(i, split, piece.right1);
                        if (!left.valid()) continue;
                        const Entry& right = chart.at(split, j, piece.right2);
                        if (!right.valid()) continue;
                        Entry candidate;
                        candidate.score = piece.prob * left.score * right.score;
                        candidate.kind = Entry::kBinary;
                        candidate.piece = static_cast<int>(p);
                        candidate.split = static_cast<int>(split);
                        candidate.left = piece.right1;
                        candidate.right = piece.right2;
                        Entry& slot = chart.at(i, j, piece.lhs);
                        if (better(candidate, slot)) slot = candidate;
                    }
                }
                apply_unaries(i, j);
            }
        }
    }

    SyntaxTree build(std::size_t i, std::size_t j, int symbol) const {
        const Entry& entry = chart.at(i, j, symbol);
        switch (entry.kind) {
            case Entry::kLexical: {
                SyntaxTree node;
                node.symbol = tokens[i].tag;
                node.leaf = tokens[i];
                node.score = 1.0;
                return node;
            }
            case Entry::kUnary: {
                const auto& unary = model.unaries()[static_cast<std::size_t>(entry.piece)];
                SyntaxTree node;
                node.symbol = model.symbol_name(symbol);
                node.children.push_back(build(i, j, entry.child));
                node.score = unary.prob * node.children.front().score;
                return node;
            }
            case Entry::kBinary:
                break;
        }
        // de-binarize: expand the intermediate chain into one flat rule node
        SyntaxTree node;
        node.symbol = model.symbol_name(symbol);
        double child_product = 1.0;
        std::size_t begin = i;
        const Entry* current = &entry;
        while (true) {
            const auto& piece = model.pieces()[static_cast<std::size_t>(current->piece)];
            const std::size_t split = static_cast<std::size_t>(current->split);
            node.children.push_back(build(begin, split, piece.right1));
            child_product *= node.children.back().score;
            if (!model.is_intermediate(piece.right2)) {
                node.children.push_back(build(split, j, piece.right2));
                child_product *= node.children.back().score;
                node.score = model.rule_prob(static_cast<std::size_t>(piece.rule)) * child_product;
                return node;
            }
            begin = split;
            current = &chart.at(begin, j, piece.right2);
        }
    }
};

}  // namespace

SyntaxTree derive(const std::vector<TaggedToken>& tokens, const PcfgModel& model) {
    if (tokens.empty()) {
        throw NoDerivation("empty token sequence");
    }
    for (const TaggedToken& token : tokens) {
        if (model.symbol_id(token.tag) < 0) {
            throw NoDerivation("tag '" + token.tag + "' of word '" + token.text +
                               "' is not a category of the grammar");
        }
    }
    Parser parser(model, tokens);
    parser.run();
    const Entry& root = parser.chart.at(0, tokens.size(), model.start_symbol());
    if (!root.valid()) {
        throw NoDerivation("token sequence is not generable from '" +
                           model.grammar().start() + "'");
    }
    return parser.build(0, tokens.size(), model.start_symbol());
}

std::string assemble_text(std::span<const TaggedToken> tokens, bool capitalize, bool final_period) {
    std::string out;
    bool capitalize_next = capitalize;
    bool suppress_space = false;
    for (const TaggedToken& token : tokens) {
        if (token.text.empty()) continue;
        const bool attach_left = token.text == "," || token.text == "." || token.text == ";" ||
                                 token.text == ")";
        if (!out.empty() && !attach_left && !suppress_space) out += ' ';
        std::string text = token.text;
        if (capitalize_next && !is_punct(token)) {
            if (!is_verbatim(token) && std::islower(static_cast<unsigned char>(text[0]))) {
                text[0] = static_cast<char>(std::toupper(static_cast<unsigned char>(text[0])));
            }
            capitalize_next = false;
        }
        if (token.text == ".") capitalize_next = true;
        suppress_space = token.text == "(";
        out += text;
    }
    if (final_period && !out.empty() && out.back() != '.') out += '.';
    return out;
}

std::string linearize(const SyntaxTree& tree) {
    const std::vector<TaggedToken> tokens = tree.yield();
    return assemble_text(tokens);
}

std::string emit_flat(std::span<const TaggedToken> tokens) {
    return assemble_text(tokens);
}

void Realizer::retag(std::vector<TaggedToken>& tokens) const {
    std::optional<std::string> left;
    for (TaggedToken& token : tokens) {
        if (is_punct(token)) {
            left.reset();
            continue;
        }
        if (!is_verbatim(token)) {
            const LexiconEntry* entry = lexicon_->find(token.text);
            if (entry != nullptr && entry->tags.size() > 1) {
                token.tag = lexicon_->tag_word(
                    token.text, left ? std::optional<std::string_view>(*left) : std::nullopt);
            }
        }
        left = token.tag;
    }
}

RealizeResult Realizer::realize(const PhraseList& phrase) const {
    RealizeResult result;
    std::vector<TaggedToken> tokens = phrase.flatten();
    retag(tokens);

    // validate clause by clause: maximal runs of word tokens between punctuation
    std::size_t clause_start = 0;
    auto close_clause = [&](std::size_t end) {
        if (end <= clause_start) return;
        ++result.clause_count;
        const std::vector<TaggedToken> clause(tokens.begin() + static_cast<std::ptrdiff_t>(clause_start),
                                              tokens.begin() + static_cast<std::ptrdiff_t>(end));
        if (clause.size() > kMaxDeriveLength) {
            result.fallback = true;
            return;
        }
        try {
            result.trees.push_back(derive(clause, *model_));
            ++result.derived_clauses;
        } catch (const NoDerivation&) {
            result.fallback = true;
        }
    };
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        if (is_punct(tokens[k])) {
            close_clause(k);
            clause_start = k + 1;
        }
    }
    close_clause(tokens.size());

    // sentence assembly: split at '.' tokens, one capitalized sentence each
    std::string text;
    std::size_t sentence_start = 0;
    auto close_sentence = [&](std::size_t end) {
        std::span<const TaggedToken> slice(tokens.data() + sentence_start, end - sentence_start);
        const std::string sentence = assemble_text(slice);
        if (!sentence.empty()) {
            if (!text.empty()) text += ' ';
            text += sentence;
        }
    };
    for (std::size_t k = 0; k < tokens.size(); ++k) {
        if (tokens[k].text == ".") {
            close_sentence(k);
            sentence_start = k + 1;
        }
    }
    close_sentence(tokens.size());
    result.text = std::move(text);
    return result;
}

}  // namespace soldesc
