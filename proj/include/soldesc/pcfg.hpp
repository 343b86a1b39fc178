#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "soldesc/grammar.hpp"
#include "soldesc/token.hpp"

namespace soldesc {

/// Constituency tree over a token sequence. Preterminal nodes carry the
/// terminal token; internal nodes carry one rule application each. The score
/// of a subtree is the product of the rule probabilities applied inside it.
struct SyntaxTree {
    std::string symbol;
    std::vector<SyntaxTree> children;
    std::optional<TaggedToken> leaf;
    double score = 1.0;

    bool is_preterminal() const { return leaf.has_value(); }
    std::vector<TaggedToken> yield() const;
    std::string bracketed() const;

    /// Recursively collects the rule applications of internal nodes.
    void collect_rules(std::vector<GrammarRule>& out) const;
};

/// One bracketed tree per line, e.g. "(S (VP (VB declare) (NP (NN x))))".
std::vector<SyntaxTree> parse_treebank(std::string_view text);
std::vector<SyntaxTree> load_treebank(const std::filesystem::path& path);

/// A grammar with one probability per structural rule; for each lhs the
/// probabilities sum to 1. Immutable; parsing tables are precomputed.
class PcfgModel {
public:
    /// Relative-frequency estimation with add-one smoothing over the
    /// grammar's rule inventory: p = (count + 1) / (lhs_total + lhs_rules).
    static PcfgModel estimate(const Grammar& grammar, const std::vector<SyntaxTree>& treebank);

    /// Uniform probabilities per lhs (plain-CFG mode with deterministic
    /// tie-breaking).
    static PcfgModel uniform(const Grammar& grammar);

    const Grammar& grammar() const { return grammar_; }
    double rule_prob(std::size_t rule_index) const { return probs_.at(rule_index); }
    std::optional<double> rule_prob(const GrammarRule& rule) const;

    // parser-facing internals
    struct Piece {
        int lhs = 0;
        int right1 = 0;
        int right2 = 0;
        double prob = 1.0;   // original rule probability on the first piece, 1 elsewhere
        int rule = 0;        // original rule index
        int ordinal = 0;     // position within the binarization chain
    };
    struct Unary {
        int lhs = 0;
        int child = 0;
        double prob = 1.0;
        int rule = 0;
    };

    int symbol_id(std::string_view name) const;  // -1 if unknown
    const std::string& symbol_name(int id) const { return symbol_names_.at(id); }
    int symbol_count() const { return static_cast<int>(symbol_names_.size()); }
    int start_symbol() const { return start_id_; }
    const std::vector<Piece>& pieces() const { return pieces_; }
    const std::vector<Unary>& unaries() const { return unaries_; }
    bool is_intermediate(int id) const { return id >= first_intermediate_; }
    const Piece* piece_for_intermediate(int id) const;

private:
    PcfgModel(Grammar grammar, std::vector<double> probs);
    void build_tables();

    Grammar grammar_;
    std::vector<double> probs_;

    std::vector<std::string> symbol_names_;
    std::map<std::string, int, std::less<>> symbol_ids_;
    int start_id_ = -1;
    int first_intermediate_ = 0;
    std::vector<Piece> pieces_;
    std::vector<Unary> unaries_;
    std::vector<int> intermediate_piece_;  // id - first_intermediate_ -> piece index
};

}  // namespace soldesc
