#include "soldesc/translator.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace soldesc {

OperatorMap OperatorMap::from_string(std::string_view text) {
    OperatorMap map;
    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        std::string_view view = line;
        while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
        if (view.empty() || view.front() == '#') continue;
        const std::size_t tab = view.find('\t');
        if (tab == std::string_view::npos) continue;
        std::string symbol{view.substr(0, tab)};
        std::vector<std::string> words;
        std::istringstream phrase{std::string(view.substr(tab + 1))};
        std::string token;
        while (phrase >> token) words.push_back(token);
        map.entries_.emplace_back(std::move(symbol), std::move(words));
    }
    return map;
}

OperatorMap OperatorMap::from_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError("cannot open operator map file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return from_string(buffer.str());
}

const std::vector<std::string>* OperatorMap::words(std::string_view op) const {
    for (const auto& [symbol, words] : entries_) {
        if (symbol == op) return &words;
    }
    return nullptr;
}

std::vector<std::string> split_identifier_parts(std::string_view name) {
    std::vector<std::string> parts;
    std::string current;
    const auto flush = [&] {
        if (!current.empty()) {
            parts.push_back(current);
            current.clear();
        }
    };
    for (std::size_t i = 0; i < name.size(); ++i) {
        const unsigned char c = static_cast<unsigned char>(name[i]);
        if (c == '_') {
            flush();
            continue;
        }
        if (i > 0 && std::isupper(c)) {
            const unsigned char prev = static_cast<unsigned char>(name[i - 1]);
            const bool case_rise = std::islower(prev) || std::isdigit(prev);
            const bool case_drop = std::isupper(prev) && i + 1 < name.size() &&
                                   std::islower(static_cast<unsigned char>(name[i + 1]));
            if (case_rise || case_drop) flush();
        }
        current += static_cast<char>(std::tolower(c));
    }
    flush();
    if (parts.empty()) parts.emplace_back(name);
    return parts;
}

std::vector<TaggedToken> split_identifier(std::string_view name, const Lexicon& lexicon) {
    std::vector<TaggedToken> tokens;
    std::optional<std::string> left;
    for (std::string& part : split_identifier_parts(name)) {
        std::string tag = lexicon.tag_word(part, left ? std::optional<std::string_view>(*left)
                                                      : std::nullopt);
        left = tag;
        tokens.push_back(TaggedToken{std::move(part), std::move(tag), TokenOrigin::IdentifierPart});
    }
    return tokens;
}

struct Translator::Context {
    std::vector<Diagnostic>* diagnostics;
    const std::string* source_text = nullptr;
    bool in_modifier = false;

    void report(const AstNode& node, std::string message) const {
        if (diagnostics != nullptr) {
            diagnostics->push_back(Diagnostic{node.id, node.type_name, node.src, std::move(message)});
        }
    }
};

namespace {

const AstNode& require_child(const AstNode& node, std::string_view name) {
    const AstNode* child = node.child(name);
    if (child == nullptr) throw MissingCoreAttribute(node.id, std::string(name));
    return *child;
}

std::string require_string(const AstNode& node, std::string_view name) {
    auto value = node.string_attribute(name);
    if (!value) throw MissingCoreAttribute(node.id, std::string(name));
    return *value;
}

bool starts_with_vowel(std::string_view word) {
    if (word.empty()) return false;
    const char c = static_cast<char>(std::tolower(static_cast<unsigned char>(word.front())));
    return c == 'a' || c == 'e' || c == 'i' || c == 'o' || c == 'u';
}

bool plain_lower_word(std::string_view text) {
    return !text.empty() && std::all_of(text.begin(), text.end(), [](unsigned char c) {
        return std::islower(c) != 0;
    });
}

/// Dotted identifier chain of an expression ("msg.sender.transfer"), if the
/// whole chain consists of identifiers and member accesses.
std::optional<std::string> dotted_path(const AstNode& node) {
    if (node.node_type == NodeType::Identifier) {
        return node.string_attribute("name");
    }
    if (node.node_type == NodeType::MemberAccess) {
        const AstNode* inner = node.child("expression");
        if (inner == nullptr) return std::nullopt;
        const auto base = dotted_path(*inner);
        if (!base) return std::nullopt;
        const auto member = node.string_attribute("memberName");
        if (!member) return std::nullopt;
        return *base + "." + *member;
    }
    return std::nullopt;
}

const TaggedToken* first_token(const PhraseNode& node) {
    if (node.leaf) return &node.token;
    for (const PhraseNode& kid : node.kids) {
        if (const TaggedToken* token = first_token(kid)) return token;
    }
    return nullptr;
}

// "deposits of user" but "the name of i": plural heads and phrases that
// already open with a determiner or fixed wording take no article.
bool wants_article(const PhraseNode& phrase) {
    const TaggedToken* head = first_token(phrase);
    if (head == nullptr) return false;
    if (head->origin == TokenOrigin::SpecialStatement) return false;
    if (is_verbatim(*head)) return false;
    return head->tag != "NNS" && head->tag != "NNPS" && head->tag != "DT" && head->tag != "CD" &&
           head->tag != "PRP";
}

}  // namespace

TaggedToken Translator::word(std::string_view text, const char* tag) const {
    std::string resolved_tag = tag != nullptr ? std::string(tag) : lexicon_->tag_word(text);
    return TaggedToken{std::string(text), std::move(resolved_tag), TokenOrigin::TemplateWord};
}

PhraseNode Translator::identifier_phrase(std::string_view name) const {
    PhraseNode group = PhraseNode::make_group();
    for (TaggedToken& token : split_identifier(name, *lexicon_)) {
        const LexiconEntry* entry = lexicon_->find(token.text);
        if (entry != nullptr && entry->expansion) {
            token.text = *entry->expansion;
            token.tag = lexicon_->tag_word(token.text);
        }
        group.push(std::move(token));
    }
    return group;
}

PhraseNode Translator::literal_phrase(const AstNode& node) const {
    const Json* value = node.attribute("value");
    std::string kind = node.string_attribute("kind").value_or("number");
    std::string text;
    if (value != nullptr && value->is_string()) {
        text = value->get<std::string>();
    } else if (auto hex = node.string_attribute("hexValue")) {
        text = "0x" + *hex;
    }
    PhraseNode group = PhraseNode::make_group();
    if (kind == "string") {
        group.push(TaggedToken{"\"" + text + "\"", "NN", TokenOrigin::LiteralValue});
    } else if (kind == "bool") {
        group.push(TaggedToken{text, "JJ", TokenOrigin::LiteralValue});
    } else {
        group.push(TaggedToken{text, "CD", TokenOrigin::LiteralValue});
    }
    if (auto sub = node.string_attribute("subdenomination")) {
        group.push(word(*sub, "NN"));
    }
    return group;
}

PhraseNode Translator::of_phrase(PhraseNode head, PhraseNode object) const {
    PhraseNode group = PhraseNode::make_group();
    if (wants_article(head)) group.push(word("the", "DT"));
    group.push(std::move(head));
    group.push(word("of", "IN"));
    group.push(std::move(object));
    return group;
}

PhraseNode Translator::member_access(const AstNode& node, Context& ctx) const {
    if (const auto path = dotted_path(node)) {
        if (const SpecialTemplate* tmpl = templates_->match_path(*path)) {
            return templates_->instantiate(*tmpl, {}, nullptr, *lexicon_);
        }
    }
    const std::string member = require_string(node, "memberName");
    PhraseNode head = PhraseNode::make_group();
    for (TaggedToken& token : split_identifier(member, *lexicon_)) head.push(std::move(token));
    PhraseNode base = expression(require_child(node, "expression"), ctx, true);
    return of_phrase(std::move(head), std::move(base));
}

PhraseNode Translator::index_access(const AstNode& node, Context& ctx) const {
    PhraseNode base = expression(require_child(node, "baseExpression"), ctx, true);
    const AstNode* index = node.child("indexExpression");
    if (index == nullptr) return base;
    PhraseNode object = expression(*index, ctx, true);
    return of_phrase(std::move(base), std::move(object));
}

PhraseNode Translator::assignment(const AstNode& node, Context& ctx) const {
    const std::string op = require_string(node, "operator");
    PhraseNode lhs = expression(require_child(node, "leftHandSide"), ctx, true);
    PhraseNode rhs = expression(require_child(node, "rightHandSide"), ctx, true);
    PhraseNode group = PhraseNode::make_group();
    if (op == "=") {
        group.push(std::move(lhs));
        group.push(word("is", "VB"));
        group.push(std::move(rhs));
    } else if (op == "+=") {
        group.push(word("add", "VB"));
        group.push(std::move(rhs));
        group.push(word("to", "IN"));
        group.push(std::move(lhs));
    } else if (op == "-=") {
        group.push(word("subtract", "VB"));
        group.push(std::move(rhs));
        group.push(word("from", "IN"));
        group.push(std::move(lhs));
    } else if (op == "*=") {
        group.push(word("multiply", "VB"));
        group.push(std::move(lhs));
        group.push(word("by", "IN"));
        group.push(std::move(rhs));
    } else if (op == "/=") {
        group.push(word("divide", "VB"));
        group.push(std::move(lhs));
        group.push(word("by", "IN"));
        group.push(std::move(rhs));
    } else if (op.size() >= 2 && op.back() == '=') {
        // remaining compound forms: x ?= y reads "x is x ? y"
        const std::string base_op = op.substr(0, op.size() - 1);
        const std::vector<std::string>* words_for_op = operators_->words(base_op);
        PhraseNode lhs_copy = lhs;
        group.push(std::move(lhs));
        group.push(word("is", "VB"));
        group.push(std::move(lhs_copy));
        if (words_for_op != nullptr) {
            for (const std::string& w : *words_for_op) group.push(word(w));
        } else {
            ctx.report(node, "operator '" + op + "' is not in the operator map");
            group.push(TaggedToken{base_op, "SYM", TokenOrigin::LiteralValue});
        }
        group.push(std::move(rhs));
    } else {
        ctx.report(node, "operator '" + op + "' is not in the operator map");
        group.push(std::move(lhs));
        group.push(TaggedToken{op, "SYM", TokenOrigin::LiteralValue});
        group.push(std::move(rhs));
    }
    return group;
}

PhraseNode Translator::binary_operation(const AstNode& node, Context& ctx) const {
    const std::string op = require_string(node, "operator");
    PhraseNode lhs = expression(require_child(node, "leftExpression"), ctx, true);
    PhraseNode rhs = expression(require_child(node, "rightExpression"), ctx, true);
    PhraseNode group = PhraseNode::make_group();
    group.push(std::move(lhs));
    if (const std::vector<std::string>* words_for_op = operators_->words(op)) {
        for (const std::string& w : *words_for_op) group.push(word(w));
    } else {
        ctx.report(node, "operator '" + op + "' is not in the operator map");
        group.push(TaggedToken{op, "SYM", TokenOrigin::LiteralValue});
    }
    group.push(std::move(rhs));
    return group;
}

PhraseNode Translator::unary_operation(const AstNode& node, Context& ctx) const {
    const std::string op = require_string(node, "operator");
    PhraseNode sub = expression(require_child(node, "subExpression"), ctx, true);
    PhraseNode group = PhraseNode::make_group();
    if (op == "++") {
        group.push(word("add", "VB"));
        group.push(word("one", "CD"));
        group.push(word("to", "IN"));
        group.push(std::move(sub));
    } else if (op == "--") {
        group.push(word("subtract", "VB"));
        group.push(word("one", "CD"));
        group.push(word("from", "IN"));
        group.push(std::move(sub));
    } else if (op == "!") {
        group.push(word("not", "RB"));
        group.push(std::move(sub));
    } else if (op == "-") {
        group.push(word("negative", "JJ"));
        group.push(std::move(sub));
    } else if (op == "~") {
        group.push(word("bitwise", "JJ"));
        group.push(word("not", "RB"));
        group.push(std::move(sub));
    } else if (op == "delete") {
        group.push(word("delete", "VB"));
        group.push(std::move(sub));
    } else {
        ctx.report(node, "operator '" + op + "' is not in the operator map");
        group.push(TaggedToken{op, "SYM", TokenOrigin::LiteralValue});
        group.push(std::move(sub));
    }
    return group;
}

namespace {

/// Type written in the source ("uint"), falling back to the canonical
/// type string of the compiler ("mapping(address => uint256)").
std::optional<std::string> declared_type_text(const AstNode& decl) {
    if (const AstNode* type_name = decl.child("typeName")) {
        if (auto name = type_name->string_attribute("name")) return name;
        if (const AstNode* descriptions = type_name->child("typeDescriptions")) {
            if (auto text = descriptions->string_attribute("typeString")) return text;
        }
    }
    for (const char* key : {"typeDescriptions", "typeDescription"}) {
        if (const AstNode* descriptions = decl.child(key)) {
            if (auto text = descriptions->string_attribute("typeString")) return text;
        }
    }
    return std::nullopt;
}

bool is_payable_cast(const AstNode& call) {
    if (call.string_attribute("kind").value_or("") != "typeConversion") return false;
    const AstNode* callee = call.child("expression");
    if (callee == nullptr) return false;
    std::string name;
    if (callee->type_name == "ElementaryTypeNameExpression") {
        if (const AstNode* tn = callee->child("typeName")) {
            name = tn->string_attribute("name").value_or("");
        } else {
            name = callee->string_attribute("typeName").value_or("");
        }
    }
    return name == "payable" || name == "address";
}

}  // namespace

PhraseNode Translator::function_call(const AstNode& node, Context& ctx, bool value_position) const {
    const AstNode& callee = require_child(node, "expression");
    std::vector<const AstNode*> args;
    if (const AstNode::Child* link = node.child_link("arguments")) {
        for (const AstNode& arg : link->nodes) args.push_back(&arg);
    }

    if (node.string_attribute("kind").value_or("") == "typeConversion" && args.size() == 1) {
        PhraseNode value = expression(*args.front(), ctx, true);
        if (is_payable_cast(node)) return value;  // the cast adds nothing in English
        PhraseNode group = PhraseNode::make_group();
        group.push(std::move(value));
        group.push(word("converted", "VBN"));
        group.push(word("to", "IN"));
        group.push(expression(callee, ctx, true));
        return group;
    }

    std::vector<PhraseNode> arg_phrases;
    arg_phrases.reserve(args.size());
    for (const AstNode* arg : args) arg_phrases.push_back(expression(*arg, ctx, true));

    const auto clean_path = dotted_path(callee);

    // require() inside a modifier body reads as a precondition
    if (ctx.in_modifier && clean_path == "require" && !arg_phrases.empty()) {
        PhraseNode group = PhraseNode::make_group();
        group.push(word("confirm", "VB"));
        group.push(std::move(arg_phrases.front()));
        return group;
    }

    std::string match_key;
    if (clean_path) {
        match_key = *clean_path;
    } else if (callee.node_type == NodeType::MemberAccess) {
        match_key = "~." + callee.string_attribute("memberName").value_or("");
    }
    if (!match_key.empty()) {
        try {
            if (const SpecialTemplate* tmpl = templates_->match_call(match_key, arg_phrases.size())) {
                PhraseNode receiver;
                const PhraseNode* receiver_ptr = nullptr;
                if (tmpl->receiver_wildcard && callee.node_type == NodeType::MemberAccess) {
                    receiver = expression(require_child(callee, "expression"), ctx, true);
                    receiver_ptr = &receiver;
                }
                return templates_->instantiate(*tmpl, arg_phrases, receiver_ptr, *lexicon_);
            }
        } catch (const ArityMismatch& error) {
            ctx.report(node, error.what());
        }
    }

    PhraseNode group = PhraseNode::make_group();
    if (value_position) {
        group.push(word("result", "NN"));
        group.push(word("of", "IN"));
    } else {
        group.push(word("call", "VB"));
    }
    group.push(word("the", "DT"));
    group.push(word("function", "NN"));
    if (callee.node_type == NodeType::MemberAccess) {
        PhraseNode head = PhraseNode::make_group();
        for (TaggedToken& token :
             split_identifier(require_string(callee, "memberName"), *lexicon_)) {
            head.push(std::move(token));
        }
        group.push(std::move(head));
        group.push(word("of", "IN"));
        group.push(expression(require_child(callee, "expression"), ctx, true));
    } else if (callee.node_type == NodeType::Identifier) {
        group.push(identifier_phrase(require_string(callee, "name")));
    } else {
        group.push(expression(callee, ctx, true));
    }
    if (!arg_phrases.empty()) {
        group.push(word("with", "IN"));
        group.push(word("arguments", "NNS"));
        for (std::size_t k = 0; k < arg_phrases.size(); ++k) {
            if (k > 0) group.push(punct_token(","));
            group.push(std::move(arg_phrases[k]));
        }
    }
    return group;
}

PhraseNode Translator::expression(const AstNode& node, Context& ctx, bool value_position) const {
    switch (node.node_type) {
        case NodeType::Identifier: {
            const std::string name = require_string(node, "name");
            if (const SpecialTemplate* tmpl = templates_->match_path(name)) {
                return templates_->instantiate(*tmpl, {}, nullptr, *lexicon_);
            }
            return identifier_phrase(name);
        }
        case NodeType::Literal:
            return literal_phrase(node);
        case NodeType::Assignment:
            return assignment(node, ctx);
        case NodeType::BinaryOperation:
            return binary_operation(node, ctx);
        case NodeType::UnaryOperation:
            return unary_operation(node, ctx);
        case NodeType::FunctionCall:
            return function_call(node, ctx, value_position);
        case NodeType::MemberAccess:
            return member_access(node, ctx);
        case NodeType::IndexAccess:
            return index_access(node, ctx);
        default:
            break;
    }
    if (node.type_name == "TupleExpression") {
        PhraseNode group = PhraseNode::make_group();
        if (const AstNode::Child* link = node.child_link("components")) {
            for (std::size_t k = 0; k < link->nodes.size(); ++k) {
                if (k > 0) group.push(punct_token(","));
                group.push(expression(link->nodes[k], ctx, true));
            }
        }
        return group;
    }
    if (node.type_name == "ElementaryTypeNameExpression") {
        std::string name;
        if (const AstNode* tn = node.child("typeName")) {
            name = tn->string_attribute("name").value_or("");
        } else {
            name = node.string_attribute("typeName").value_or("");
        }
        PhraseNode group = PhraseNode::make_group();
        group.push(plain_lower_word(name) ? word(name)
                                          : TaggedToken{name, "SYM", TokenOrigin::LiteralValue});
        return group;
    }
    if (node.type_name == "Conditional") {
        PhraseNode group = PhraseNode::make_group();
        group.push(expression(require_child(node, "trueExpression"), ctx, true));
        group.push(word("if", "IN"));
        group.push(expression(require_child(node, "condition"), ctx, true));
        group.push(punct_token(","));
        group.push(word("otherwise", "RB"));
        group.push(expression(require_child(node, "falseExpression"), ctx, true));
        return group;
    }
    if (node.type_name == "NewExpression") {
        PhraseNode group = PhraseNode::make_group();
        group.push(word("a", "DT"));
        group.push(word("new", "JJ"));
        if (const AstNode* tn = node.child("typeName")) {
            if (auto text = declared_type_text(node); text) {
                group.push(plain_lower_word(*text)
                               ? word(*text)
                               : TaggedToken{*text, "SYM", TokenOrigin::LiteralValue});
            } else if (auto name = tn->string_attribute("name")) {
                group.push(word(*name));
            }
        }
        return group;
    }
    ctx.report(node, "no translation pattern for expression kind '" + node.type_name + "'");
    return verbatim_fallback(node, ctx);
}

PhraseNode Translator::verbatim_fallback(const AstNode& node, Context& ctx) const {
    PhraseNode group = PhraseNode::make_group();
    if (ctx.source_text != nullptr && node.src.offset + node.src.length <= ctx.source_text->size() &&
        node.src.length > 0) {
        group.push(TaggedToken{ctx.source_text->substr(node.src.offset, node.src.length), "SYM",
                               TokenOrigin::LiteralValue});
    }
    return group;
}

PhraseNode Translator::declaration_sentence(const AstNode& decl, Context& ctx) const {
    const std::string name = require_string(decl, "name");
    PhraseNode group = PhraseNode::make_group();
    group.push(word("variable", "NN"));
    group.push(identifier_phrase(name));
    group.push(word("is", "VB"));
    group.push(word("declared", "VBN"));
    group.push(word("as", "IN"));
    const std::string type_text = declared_type_text(decl).value_or("unknown");
    group.push(word(starts_with_vowel(type_text) ? "an" : "a", "DT"));
    group.push(plain_lower_word(type_text) ? word(type_text)
                                           : TaggedToken{type_text, "SYM", TokenOrigin::LiteralValue});
    (void)ctx;
    return group;
}

PhraseNode Translator::var_decl(const AstNode& node, Context& ctx) const {
    if (node.node_type == NodeType::VariableDeclaration) {
        if (const AstNode* value = node.child("value")) {
            // initialized state variable: declare-and-assign form
            PhraseNode group = PhraseNode::make_group();
            PhraseNode target = PhraseNode::make_group();
            target.push(word("declare", "VB"));
            PhraseNode noun = PhraseNode::make_group();
            noun.push(word("the", "DT"));
            noun.push(word("variable", "NN"));
            noun.push(identifier_phrase(require_string(node, "name")));
            target.push(std::move(noun));
            group.push(std::move(target));
            PhraseNode is_group = PhraseNode::make_group();
            is_group.push(word("is", "VB"));
            group.push(std::move(is_group));
            PhraseNode value_group = PhraseNode::make_group();
            value_group.push(expression(*value, ctx, true));
            group.push(std::move(value_group));
            return group;
        }
        return declaration_sentence(node, ctx);
    }

    // VariableDeclarationStatement
    const AstNode::Child* declarations = node.child_link("declarations");
    if (declarations == nullptr || declarations->nodes.empty()) {
        throw MissingCoreAttribute(node.id, "declarations");
    }
    const AstNode* init = node.child("initialValue");
    if (init == nullptr) {
        if (declarations->nodes.size() == 1) return declaration_sentence(declarations->nodes[0], ctx);
        PhraseNode group = PhraseNode::make_group();
        for (std::size_t k = 0; k < declarations->nodes.size(); ++k) {
            if (k > 0) group.push(word("and", "CC"));
            group.push(declaration_sentence(declarations->nodes[k], ctx));
        }
        return group;
    }

    PhraseNode group = PhraseNode::make_group();
    PhraseNode target = PhraseNode::make_group();
    target.push(word("declare", "VB"));
    PhraseNode noun = PhraseNode::make_group();
    noun.push(word("the", "DT"));
    noun.push(word(declarations->nodes.size() > 1 ? "variables" : "variable",
                   declarations->nodes.size() > 1 ? "NNS" : "NN"));
    for (std::size_t k = 0; k < declarations->nodes.size(); ++k) {
        if (k > 0) noun.push(word("and", "CC"));
        noun.push(identifier_phrase(require_string(declarations->nodes[k], "name")));
    }
    target.push(std::move(noun));
    group.push(std::move(target));
    PhraseNode is_group = PhraseNode::make_group();
    is_group.push(word("is", "VB"));
    group.push(std::move(is_group));
    PhraseNode value_group = PhraseNode::make_group();
    value_group.push(expression(*init, ctx, true));
    group.push(std::move(value_group));
    return group;
}

PhraseNode Translator::loop_init(const AstNode& node, Context& ctx) const {
    if (node.node_type == NodeType::VariableDeclarationStatement) {
        const AstNode::Child* declarations = node.child_link("declarations");
        const AstNode* init = node.child("initialValue");
        if (declarations != nullptr && declarations->nodes.size() == 1 && init != nullptr) {
            PhraseNode group = PhraseNode::make_group();
            group.push(identifier_phrase(require_string(declarations->nodes[0], "name")));
            group.push(word("is", "VB"));
            group.push(expression(*init, ctx, true));
            return group;
        }
    }
    return statement(node, ctx);
}

PhraseNode Translator::join_parts(std::vector<PhraseNode> parts) const {
    std::erase_if(parts, [](const PhraseNode& part) { return part.empty(); });
    PhraseNode group = PhraseNode::make_group();
    for (std::size_t k = 0; k < parts.size(); ++k) {
        if (k > 0) {
            if (parts.size() > 2 && k + 1 < parts.size()) {
                group.push(punct_token(","));
            } else {
                if (parts.size() > 2) group.push(punct_token(","));
                group.push(word("and", "CC"));
            }
        }
        group.push(std::move(parts[k]));
    }
    return group;
}

void Translator::body_parts(const AstNode& node, Context& ctx, std::vector<PhraseNode>& out) const {
    if (node.node_type == NodeType::Block) {
        if (const AstNode::Child* link = node.child_link("statements")) {
            for (const AstNode& stmt : link->nodes) body_parts(stmt, ctx, out);
        }
        return;
    }
    PhraseNode phrase = statement(node, ctx);
    if (!phrase.empty()) out.push_back(std::move(phrase));
}

PhraseNode Translator::control(const AstNode& node, Context& ctx) const {
    PhraseNode group = PhraseNode::make_group();
    switch (node.node_type) {
        case NodeType::IfStatement: {
            PhraseNode condition = expression(require_child(node, "condition"), ctx, true);
            std::vector<PhraseNode> true_parts;
            body_parts(require_child(node, "trueBody"), ctx, true_parts);
            group.push(word("if", "IN"));
            group.push(std::move(condition));
            group.push(punct_token(","));
            group.push(join_parts(std::move(true_parts)));
            if (const AstNode* false_body = node.child("falseBody")) {
                std::vector<PhraseNode> false_parts;
                body_parts(*false_body, ctx, false_parts);
                group.push(punct_token(","));
                group.push(word("otherwise", "RB"));
                group.push(join_parts(std::move(false_parts)));
            }
            return group;
        }
        case NodeType::WhileStatement: {
            PhraseNode condition = expression(require_child(node, "condition"), ctx, true);
            std::vector<PhraseNode> parts;
            if (const AstNode* body = node.child("body")) body_parts(*body, ctx, parts);
            group.push(word("as", "IN"));
            group.push(word("long", "JJ"));
            group.push(word("as", "IN"));
            group.push(std::move(condition));
            group.push(punct_token(","));
            group.push(join_parts(std::move(parts)));
            return group;
        }
        case NodeType::DoWhileStatement: {
            PhraseNode condition = expression(require_child(node, "condition"), ctx, true);
            std::vector<PhraseNode> parts;
            if (const AstNode* body = node.child("body")) body_parts(*body, ctx, parts);
            group.push(word("repeat", "VB"));
            group.push(join_parts(std::move(parts)));
            group.push(word("as", "IN"));
            group.push(word("long", "JJ"));
            group.push(word("as", "IN"));
            group.push(std::move(condition));
            return group;
        }
        case NodeType::ForStatement: {
            const AstNode* init = node.child("initializationExpression");
            const AstNode* condition = node.child("condition");
            const AstNode* loop = node.child("loopExpression");
            std::vector<PhraseNode> parts;
            if (const AstNode* body = node.child("body")) body_parts(*body, ctx, parts);
            if (init != nullptr) {
                group.push(word("set", "VB"));
                group.push(loop_init(*init, ctx));
                group.push(punct_token(","));
                group.push(word("then", "RB"));
            }
            if (condition != nullptr) {
                group.push(word("as", "IN"));
                group.push(word("long", "JJ"));
                group.push(word("as", "IN"));
                group.push(expression(*condition, ctx, true));
                group.push(punct_token(","));
            }
            group.push(join_parts(std::move(parts)));
            if (loop != nullptr) {
                PhraseNode loop_phrase = statement(*loop, ctx);
                if (!loop_phrase.empty()) {
                    group.push(punct_token("."));
                    group.push(word("each", "DT"));
                    group.push(word("time", "NN"));
                    group.push(word("that", "WDT"));
                    group.push(word("happens", "VBZ"));
                    group.push(std::move(loop_phrase));
                }
            }
            return group;
        }
        default:
            throw MissingCoreAttribute(node.id, "condition");
    }
}

PhraseNode Translator::modifier(const AstNode& node, Context& ctx) const {
    const std::string name = require_string(node, "name");
    std::vector<PhraseNode> parts;
    Context body_ctx = ctx;
    body_ctx.in_modifier = true;
    if (const AstNode* body = node.child("body")) {
        body_parts(*body, body_ctx, parts);
    }
    PhraseNode group = PhraseNode::make_group();
    group.push(join_parts(std::move(parts)));
    group.push(word("before", "IN"));
    group.push(word("executing", "VBG"));
    group.push(TaggedToken{name + "()", "SYM", TokenOrigin::LiteralValue});
    return group;
}

PhraseNode Translator::statement(const AstNode& node, Context& ctx) const {
    switch (node.node_type) {
        case NodeType::VariableDeclarationStatement:
        case NodeType::VariableDeclaration:
            return var_decl(node, ctx);
        case NodeType::ExpressionStatement:
            return expression(require_child(node, "expression"), ctx, false);
        case NodeType::IfStatement:
        case NodeType::ForStatement:
        case NodeType::WhileStatement:
        case NodeType::DoWhileStatement:
            return control(node, ctx);
        case NodeType::Return: {
            PhraseNode group = PhraseNode::make_group();
            group.push(word("return", "VB"));
            if (const AstNode* value = node.child("expression")) {
                group.push(expression(*value, ctx, true));
            }
            return group;
        }
        case NodeType::Block: {
            std::vector<PhraseNode> parts;
            body_parts(node, ctx, parts);
            return join_parts(std::move(parts));
        }
        default:
            break;
    }
    if (node.type_name == "PlaceholderStatement") {
        return PhraseNode::make_group();  // the `_` slot of a modifier
    }
    if (node.type_name == "EmitStatement") {
        if (const AstNode* call = node.child("eventCall")) {
            PhraseNode group = PhraseNode::make_group();
            group.push(word("emit", "VB"));
            group.push(word("the", "DT"));
            group.push(word("event", "NN"));
            const AstNode* callee = call->child("expression");
            if (callee != nullptr && callee->node_type == NodeType::Identifier) {
                group.push(identifier_phrase(callee->string_attribute("name").value_or("")));
            }
            return group;
        }
    }
    ctx.report(node, "no translation pattern for statement kind '" + node.type_name + "'");
    return verbatim_fallback(node, ctx);
}

TranslateResult Translator::translate_tree(const AstTree& tree) const {
    TranslateResult result;
    Context ctx{&result.diagnostics, tree.source_text ? &*tree.source_text : nullptr, false};

    auto add_statement = [&](const AstNode& node, PhraseNode phrase, const std::string& container,
                             bool low_content) {
        if (phrase.empty() && !low_content) return;
        StatementPhrase entry;
        entry.phrase.top = std::move(phrase);
        entry.phrase.src = node.src;
        entry.container = container;
        entry.node_id = node.id;
        entry.low_content = low_content;
        result.statements.push_back(std::move(entry));
    };

    auto translate_statement = [&](const AstNode& node, const std::string& container) {
        try {
            add_statement(node, statement(node, ctx), container, false);
        } catch (const MissingCoreAttribute& error) {
            ctx.report(node, error.what());
        }
    };

    for (const AstNode::Child& link : tree.root.children) {
        for (const AstNode& contract : link.nodes) {
            if (contract.node_type != NodeType::ContractDefinition) continue;
            const std::string contract_name = contract.string_attribute("name").value_or("");
            const AstNode::Child* members = contract.child_link("nodes");
            if (members == nullptr) continue;
            for (const AstNode& member : members->nodes) {
                switch (member.node_type) {
                    case NodeType::FunctionDefinition: {
                        const std::string name = member.string_attribute("name").value_or("");
                        const AstNode* body = member.child("body");
                        if (body == nullptr) break;
                        if (const AstNode::Child* stmts = body->child_link("statements")) {
                            for (const AstNode& stmt : stmts->nodes) translate_statement(stmt, name);
                        }
                        break;
                    }
                    case NodeType::ModifierDefinition: {
                        const std::string name = member.string_attribute("name").value_or("");
                        try {
                            PhraseNode phrase = modifier(member, ctx);
                            std::vector<TaggedToken> flat;
                            phrase.flatten_into(flat);
                            const bool low = !flat.empty() && flat.front().text == "before";
                            if (low) {
                                ctx.report(member, "modifier body carries no condition");
                            }
                            add_statement(member, std::move(phrase), name, low);
                        } catch (const MissingCoreAttribute& error) {
                            ctx.report(member, error.what());
                        }
                        break;
                    }
                    case NodeType::VariableDeclaration:
                        translate_statement(member, contract_name);
                        break;
                    default:
                        ctx.report(member, "no translation pattern for declaration kind '" +
                                               member.type_name + "'");
                        break;
                }
            }
        }
    }
    std::stable_sort(result.statements.begin(), result.statements.end(),
                     [](const StatementPhrase& a, const StatementPhrase& b) {
                         return a.phrase.src.offset < b.phrase.src.offset;
                     });
    return result;
}

PhraseList Translator::translate_var_decl(const AstNode& node) const {
    std::vector<Diagnostic> diagnostics;
    Context ctx{&diagnostics, nullptr, false};
    PhraseList out;
    out.top = var_decl(node, ctx);
    out.src = node.src;
    return out;
}

PhraseList Translator::translate_control(const AstNode& node) const {
    std::vector<Diagnostic> diagnostics;
    Context ctx{&diagnostics, nullptr, false};
    PhraseList out;
    out.top = control(node, ctx);
    out.src = node.src;
    return out;
}

PhraseList Translator::translate_expression(const AstNode& node) const {
    std::vector<Diagnostic> diagnostics;
    Context ctx{&diagnostics, nullptr, false};
    PhraseList out;
    out.top = expression(node, ctx, false);
    out.src = node.src;
    return out;
}

PhraseList Translator::translate_modifier(const AstNode& node) const {
    std::vector<Diagnostic> diagnostics;
    Context ctx{&diagnostics, nullptr, false};
    PhraseList out;
    out.top = modifier(node, ctx);
    out.src = node.src;
    return out;
}

}  // namespace soldesc
