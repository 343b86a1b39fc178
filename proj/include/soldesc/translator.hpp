#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "soldesc/ast.hpp"
#include "soldesc/lexicon.hpp"
#include "soldesc/templates.hpp"
#include "soldesc/token.hpp"

namespace soldesc {

/// English renderings of binary operators ("<TAB>"-separated lines:
/// symbol, phrase). Multi-word phrases are split on spaces.
class OperatorMap {
public:
    static OperatorMap from_file(const std::filesystem::path& path);
    static OperatorMap from_string(std::string_view text);

    const std::vector<std::string>* words(std::string_view op) const;
    std::size_t size() const { return entries_.size(); }

private:
    std::vector<std::pair<std::string, std::vector<std::string>>> entries_;
};

/// Lowercase word parts of a camelCase / snake_case identifier. Consecutive
/// capitals stay together until the case drops ("ERC20Token" -> erc20,
/// token).
std::vector<std::string> split_identifier_parts(std::string_view name);

/// Parts tagged through the lexicon; the left neighbor's tag disambiguates
/// words with several possible tags.
std::vector<TaggedToken> split_identifier(std::string_view name, const Lexicon& lexicon);

struct Diagnostic {
    std::int64_t node_id = -1;
    std::string node_type;
    SourceRange src;
    std::string message;
};

struct StatementPhrase {
    PhraseList phrase;
    std::string container;  // enclosing function / modifier / contract name
    std::int64_t node_id = -1;
    bool low_content = false;
};

struct TranslateResult {
    std::vector<StatementPhrase> statements;  // source order
    std::vector<Diagnostic> diagnostics;
};

/// Depth-first AST-to-phrase translation. Stateless across calls; safe to
/// share between threads once the templates, lexicon and operator map are
/// loaded.
class Translator {
public:
    Translator(const TemplateSet& templates, const Lexicon& lexicon, const OperatorMap& operators)
        : templates_(&templates), lexicon_(&lexicon), operators_(&operators) {}

    /// One phrase per statement-level node of a preprocessed tree. Never
    /// fails as a whole: untranslatable nodes are reported and skipped.
    TranslateResult translate_tree(const AstTree& tree) const;

    PhraseList translate_var_decl(const AstNode& node) const;
    PhraseList translate_control(const AstNode& node) const;
    PhraseList translate_expression(const AstNode& node) const;
    PhraseList translate_modifier(const AstNode& node) const;

private:
    struct Context;

    PhraseNode statement(const AstNode& node, Context& ctx) const;
    void body_parts(const AstNode& node, Context& ctx, std::vector<PhraseNode>& out) const;
    PhraseNode join_parts(std::vector<PhraseNode> parts) const;
    PhraseNode var_decl(const AstNode& node, Context& ctx) const;
    PhraseNode declaration_sentence(const AstNode& decl, Context& ctx) const;
    PhraseNode loop_init(const AstNode& node, Context& ctx) const;
    PhraseNode control(const AstNode& node, Context& ctx) const;
    PhraseNode modifier(const AstNode& node, Context& ctx) const;
    PhraseNode expression(const AstNode& node, Context& ctx, bool value_position) const;
    PhraseNode identifier_phrase(std::string_view name) const;
    PhraseNode literal_phrase(const AstNode& node) const;
    PhraseNode assignment(const AstNode& node, Context& ctx) const;
    PhraseNode binary_operation(const AstNode& node, Context& ctx) const;
    PhraseNode unary_operation(const AstNode& node, Context& ctx) const;
    PhraseNode function_call(const AstNode& node, Context& ctx, bool value_position) const;
    PhraseNode member_access(const AstNode& node, Context& ctx) const;
    PhraseNode index_access(const AstNode& node, Context& ctx) const;
    PhraseNode of_phrase(PhraseNode head, PhraseNode object) const;
    PhraseNode verbatim_fallback(const AstNode& node, Context& ctx) const;

    TaggedToken word(std::string_view text, const char* tag = nullptr) const;

    const TemplateSet* templates_;
    const Lexicon* lexicon_;
    const OperatorMap* operators_;
};

}  // namespace soldesc
