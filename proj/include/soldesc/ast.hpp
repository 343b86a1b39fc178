#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "soldesc/errors.hpp"

namespace soldesc {

/// JSON value type used throughout; ordered so that re-serialization keeps
/// the attribute order of the compiler output.
using Json = nlohmann::ordered_json;

/// Byte range into a source file, parsed from the compiler's
/// "offset:length:fileIndex" form (e.g. "137:11:0").
struct SourceRange {
    std::size_t offset = 0;
    std::size_t length = 0;
    std::size_t file_index = 0;

    friend bool operator==(const SourceRange&, const SourceRange&) = default;

    std::string to_string() const;
};

/// Parses "int:int:int". Throws MalformedSrc on any deviation.
SourceRange resolve_src(std::string_view src);

enum class NodeType {
    SourceUnit,
    ContractDefinition,
    FunctionDefinition,
    Block,
    VariableDeclarationStatement,
    VariableDeclaration,
    ExpressionStatement,
    Assignment,
    BinaryOperation,
    UnaryOperation,
    FunctionCall,
    MemberAccess,
    IndexAccess,
    Identifier,
    Literal,
    IfStatement,
    ForStatement,
    WhileStatement,
    DoWhileStatement,
    ModifierDefinition,
    Return,
    PragmaDirective,
    ImportDirective,
    Other,
};

NodeType node_type_from_string(std::string_view name);
std::string_view node_type_name(NodeType type);

/// One node of the compiler-emitted AST. Scalar-valued JSON keys become
/// attributes; object/array-of-object values become named child links.
/// Objects without a "nodeType" of their own (e.g. typeDescriptions) become
/// synthetic child nodes that inherit the parent's source range.
struct AstNode {
    struct Child;

    std::int64_t id = -1;
    NodeType node_type = NodeType::Other;
    std::string type_name;  // original nodeType string; empty for synthetic nodes
    SourceRange src;
    bool synthetic = false;
    std::vector<std::pair<std::string, Json>> attributes;  // scalars or arrays of scalars
    std::vector<Child> children;

    const Json* attribute(std::string_view name) const;
    std::optional<std::string> string_attribute(std::string_view name) const;
    const Child* child_link(std::string_view name) const;
    /// Single linked node, or the first element of a list link; null if absent.
    const AstNode* child(std::string_view name) const;
    bool has(std::string_view name) const;
};

struct AstNode::Child {
    std::string name;
    bool is_list = false;
    std::vector<AstNode> nodes;
};

struct AstTree {
    AstNode root;
    std::optional<std::string> source_text;
    std::map<std::string, std::int64_t> gas_annotations;  // function name -> gwei
};

/// Parses the compiler's compact-JSON AST text into a linked tree.
/// Unknown nodeType strings are preserved as NodeType::Other.
AstTree parse_ast(std::string_view json_text);

/// Same, starting from an already-parsed JSON document.
AstTree parse_ast_json(const Json& document);

/// Drops PragmaDirective/ImportDirective children of the root and keeps only
/// ContractDefinition children. Idempotent. Throws NotSourceUnit if the root
/// has the wrong type.
AstTree preprocess(AstTree tree);

/// Re-serializes a node (attributes plus children, recursively).
Json to_json(const AstNode& node);

/// One entry of the per-nodeType core attribute set. Exactly one of `value`
/// and `node` is meaningful; optional attributes absent from the input are
/// reported with a null value.
struct CoreAttribute {
    std::string name;
    Json value;                    // scalar attribute (possibly null)
    const AstNode* node = nullptr; // set when the attribute is a child node
};

/// Returns the core attribute set for the node's kind. For Other nodes the
/// raw attribute map is returned. Throws MissingCoreAttribute when a
/// required attribute is absent.
std::vector<CoreAttribute> core_attributes(const AstNode& node);

/// Depth-first pre-order visit over a node and all descendants.
void visit(const AstNode& node, const std::function<void(const AstNode&)>& fn);

}  // namespace soldesc
