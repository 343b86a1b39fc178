#pragma once

#include <span>
#include <string>
#include <vector>

#include "soldesc/lexicon.hpp"
#include "soldesc/pcfg.hpp"
#include "soldesc/token.hpp"

namespace soldesc {

/// Maximum-probability derivation of the token sequence from the start
/// symbol, via CKY over the internally binarized grammar. Returned trees are
/// de-binarized back to the declared rule shapes. Ties are broken
/// deterministically (leftmost-lowest constituent, then rule declaration
/// order). Throws NoDerivation when the sequence is not generable.
SyntaxTree derive(const std::vector<TaggedToken>& tokens, const PcfgModel& model);

/// Leaf words left to right, single-space separated with punctuation
/// attachment, first character capitalized, trailing period. Verbatim
/// symbols are never case-modified.
std::string linearize(const SyntaxTree& tree);

/// Same text assembly directly from the token sequence (grammar-coverage
/// fallback path).
std::string emit_flat(std::span<const TaggedToken> tokens);

/// Shared sentence assembly.
std::string assemble_text(std::span<const TaggedToken> tokens, bool capitalize = true,
                          bool final_period = true);

struct RealizeResult {
    std::string text;
    bool fallback = false;            // at least one clause had no derivation
    std::size_t clause_count = 0;
    std::size_t derived_clauses = 0;
    std::vector<SyntaxTree> trees;    // one per successfully derived clause
};

/// Turns a translated phrase into surface text: retags ambiguous words in
/// context, validates each clause against the grammar, and assembles the
/// sentence(s).
class Realizer {
public:
    Realizer(const PcfgModel& model, const Lexicon& lexicon)
        : model_(&model), lexicon_(&lexicon) {}

    RealizeResult realize(const PhraseList& phrase) const;

    /// Context retagging pass over a flat token sequence, in place.
    void retag(std::vector<TaggedToken>& tokens) const;

private:
    const PcfgModel* model_;
    const Lexicon* lexicon_;
};

}  // namespace soldesc
