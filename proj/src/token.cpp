#include "soldesc/token.hpp"

#include <algorithm>
#include <cctype>

namespace soldesc {

bool is_punct(const TaggedToken& token) {
    return token.text.size() == 1 &&
           (token.text == "," || token.text == "." || token.text == "(" || token.text == ")" ||
            token.text == ";");
}

bool is_verbatim(const TaggedToken& token) {
    if (is_punct(token)) return false;
    if (token.origin == TokenOrigin::LiteralValue) return true;
    return !std::all_of(token.text.begin(), token.text.end(),
                        [](unsigned char c) { return std::islower(c) != 0; });
}

PhraseNode PhraseNode::make_leaf(TaggedToken token) {
    PhraseNode node;
    node.token = std::move(token);
    node.leaf = true;
    return node;
}

PhraseNode PhraseNode::make_group(std::vector<PhraseNode> kids) {
    PhraseNode node;
    node.kids = std::move(kids);
    return node;
}

void PhraseNode::flatten_into(std::vector<TaggedToken>& out) const {
    if (leaf) {
        out.push_back(token);
        return;
    }
    for (const PhraseNode& kid : kids) kid.flatten_into(out);
}

bool PhraseNode::empty() const {
    if (leaf) return false;
    return std::all_of(kids.begin(), kids.end(), [](const PhraseNode& k) { return k.empty(); });
}

std::vector<TaggedToken> PhraseList::flatten() const {
    std::vector<TaggedToken> out;
    top.flatten_into(out);
    return out;
}

}  // namespace soldesc
