#pragma once

#include <string>
#include <vector>

#include "soldesc/ast.hpp"

namespace soldesc {

enum class TokenOrigin {
    IdentifierPart,    // produced by identifier splitting
    TemplateWord,      // fixed wording of a generic translation pattern
    LiteralValue,      // verbatim source text (literals, kept-as-is symbols)
    SpecialStatement,  // wording of a special-statement template
};

struct TaggedToken {
    std::string text;
    std::string tag;  // Penn tag, or the punctuation itself (",", ".", "(", ")")
    TokenOrigin origin = TokenOrigin::TemplateWord;

    friend bool operator==(const TaggedToken&, const TaggedToken&) = default;
};

inline TaggedToken word_token(std::string text, std::string tag,
                              TokenOrigin origin = TokenOrigin::TemplateWord) {
    return TaggedToken{std::move(text), std::move(tag), origin};
}

inline TaggedToken punct_token(std::string text) {
    return TaggedToken{text, text, TokenOrigin::TemplateWord};
}

bool is_punct(const TaggedToken& token);
/// Verbatim tokens keep their exact source casing (numbers, code symbols,
/// identifiers preserved as-is such as "onlyBuyer()").
bool is_verbatim(const TaggedToken& token);

/// Ordered, possibly nested grouping of tagged tokens; the depth-first
/// flattening order is the order the words are spoken in.
struct PhraseNode {
    std::vector<PhraseNode> kids;  // non-empty for groups
    TaggedToken token;             // payload when leaf
    bool leaf = false;

    static PhraseNode make_leaf(TaggedToken token);
    static PhraseNode make_group(std::vector<PhraseNode> kids = {});

    void push(PhraseNode node) { kids.push_back(std::move(node)); }
    void push(TaggedToken token) { kids.push_back(make_leaf(std::move(token))); }
    void flatten_into(std::vector<TaggedToken>& out) const;
    bool empty() const;
};

struct PhraseList {
    PhraseNode top = PhraseNode::make_group();
    SourceRange src;

    std::vector<TaggedToken> flatten() const;
    bool empty() const { return top.empty(); }
};

}  // namespace soldesc
