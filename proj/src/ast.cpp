#include "soldesc/ast.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_map>
#include <unordered_set>

namespace soldesc {

std::string SourceRange::to_string() const {
    return std::to_string(offset) + ":" + std::to_string(length) + ":" + std::to_string(file_index);
}

SourceRange resolve_src(std::string_view src) {
    std::size_t parts[3];
    std::size_t begin = 0;
    for (int i = 0; i < 3; ++i) {
        std::size_t end = (i < 2) ? src.find(':', begin) : src.size();
        if (end == std::string_view::npos) {
            throw MalformedSrc("src string '" + std::string(src) + "' does not match 'int:int:int'");
        }
        std::string_view piece = src.substr(begin, end - begin);
        auto [ptr, ec] = std::from_chars(piece.data(), piece.data() + piece.size(), parts[i]);
        if (ec != std::errc() || ptr != piece.data() + piece.size() || piece.empty()) {
            throw MalformedSrc("src string '" + std::string(src) + "' does not match 'int:int:int'");
        }
        begin = end + 1;
    }
    return SourceRange{parts[0], parts[1], parts[2]};
}

namespace {

const std::pair<std::string_view, NodeType> kNodeTypeNames[] = {
    {"SourceUnit", NodeType::SourceUnit},
    {"ContractDefinition", NodeType::ContractDefinition},
    {"FunctionDefinition", NodeType::FunctionDefinition},
    {"Block", NodeType::Block},
    {"VariableDeclarationStatement", NodeType::VariableDeclarationStatement},
    {"VariableDeclaration", NodeType::VariableDeclaration},
    {"ExpressionStatement", NodeType::ExpressionStatement},
    {"Assignment", NodeType::Assignment},
    {"BinaryOperation", NodeType::BinaryOperation},
    {"UnaryOperation", NodeType::UnaryOperation},
    {"FunctionCall", NodeType::FunctionCall},
    {"MemberAccess", NodeType::MemberAccess},
    {"IndexAccess", NodeType::IndexAccess},
    {"Identifier", NodeType::Identifier},
    {"Literal", NodeType::Literal},
    {"IfStatement", NodeType::IfStatement},
    {"ForStatement", NodeType::ForStatement},
    {"WhileStatement", NodeType::WhileStatement},
    {"DoWhileStatement", NodeType::DoWhileStatement},
    {"ModifierDefinition", NodeType::ModifierDefinition},
    {"Return", NodeType::Return},
    {"PragmaDirective", NodeType::PragmaDirective},
    {"ImportDirective", NodeType::ImportDirective},
};

}  // namespace

NodeType node_type_from_string(std::string_view name) {
    for (const auto& [text, type] : kNodeTypeNames) {
        if (text == name) return type;
    }
    return NodeType::Other;
}

std::string_view node_type_name(NodeType type) {
    for (const auto& [text, value] : kNodeTypeNames) {
        if (value == type) return text;
    }
    return "Other";
}

const Json* AstNode::attribute(std::string_view name) const {
    for (const auto& [key, value] : attributes) {
        if (key == name) return &value;
    }
    return nullptr;
}

std::optional<std::string> AstNode::string_attribute(std::string_view name) const {
    const Json* value = attribute(name);
    if (value != nullptr && value->is_string()) return value->get<std::string>();
    return std::nullopt;
}

const AstNode::Child* AstNode::child_link(std::string_view name) const {
    for (const auto& child : children) {
        if (child.name == name) return &child;
    }
    return nullptr;
}

const AstNode* AstNode::child(std::string_view name) const {
    const Child* link = child_link(name);
    if (link == nullptr || link->nodes.empty()) return nullptr;
    return &link->nodes.front();
}

bool AstNode::has(std::string_view name) const {
    return attribute(name) != nullptr || child_link(name) != nullptr;
}

namespace {

bool is_scalar(const Json& value) {
    return value.is_null() || value.is_boolean() || value.is_number() || value.is_string();
}

AstNode build_node(const Json& object, bool node_type_required, const SourceRange& inherited_src);

void add_child_value(AstNode& node, const std::string& key, const Json& value) {
    if (value.is_object()) {
        AstNode::Child child{key, false, {}};
        child.nodes.push_back(build_node(value, false, node.src));
        node.children.push_back(std::move(child));
        return;
    }
    // array
    bool any_object = std::any_of(value.begin(), value.end(),
                                  [](const Json& e) { return e.is_object(); });
    if (!any_object) {
        // array of scalars (possibly empty): kept as an attribute value
        for (const Json& element : value) {
            if (!is_scalar(element)) {
                throw MalformedJson("attribute '" + key + "' mixes scalars with nested arrays");
            }
        }
        if (value.empty()) {
            // an empty array carries no structure; keep it as an empty child list
            node.children.push_back(AstNode::Child{key, true, {}});
        } else {
            node.attributes.emplace_back(key, value);
        }
        return;
    }
    AstNode::Child child{key, true, {}};
    for (const Json& element : value) {
        if (element.is_null()) continue;  // e.g. omitted tuple components
        if (!element.is_object()) {
            throw MalformedJson("child list '" + key + "' mixes objects with scalars");
        }
        child.nodes.push_back(build_node(element, true, node.src));
    }
    node.children.push_back(std::move(child));
}

AstNode build_node(const Json& object, bool node_type_required, const SourceRange& inherited_src) {
    if (!object.is_object()) {
        throw MalformedJson("expected a JSON object for an AST node");
    }
    AstNode node;
    node.src = inherited_src;

    const auto type_it = object.find("nodeType");
    if (type_it == object.end()) {
        if (node_type_required) {
            throw MissingNodeType("object lacks required 'nodeType'");
        }
        node.synthetic = true;
    } else {
        if (!type_it->is_string()) throw MissingNodeType("'nodeType' is not a string");
        node.type_name = type_it->get<std::string>();
        node.node_type = node_type_from_string(node.type_name);
    }

    for (const auto& [key, value] : object.items()) {
        if (key == "nodeType") continue;
        if (key == "id" && value.is_number_integer()) {
            node.id = value.get<std::int64_t>();
            continue;
        }
        if (key == "src" && value.is_string()) {
            node.src = resolve_src(value.get<std::string>());
            continue;
        }
        if (is_scalar(value)) {
            node.attributes.emplace_back(key, value);
        } else {
            add_child_value(node, key, value);
        }
    }
    return node;
}

void assign_synthetic_ids(AstNode& node, std::int64_t& next_id) {
    if (node.id < 0) node.id = next_id++;
    for (auto& child : node.children) {
        for (auto& sub : child.nodes) assign_synthetic_ids(sub, next_id);
    }
}

void collect_ids(const AstNode& node, std::unordered_set<std::int64_t>& seen, std::int64_t& max_id) {
    if (node.id >= 0) {
        if (!seen.insert(node.id).second) {
            throw MalformedJson("duplicate node id " + std::to_string(node.id));
        }
        max_id = std::max(max_id, node.id);
    }
    for (const auto& child : node.children) {
        for (const auto& sub : child.nodes) collect_ids(sub, seen, max_id);
    }
}

}  // namespace

AstTree parse_ast_json(const Json& document) {
    AstTree tree;
    tree.root = build_node(document, true, SourceRange{});
    std::unordered_set<std::int64_t> seen;
    std::int64_t max_id = -1;
    collect_ids(tree.root, seen, max_id);
    std::int64_t next_id = max_id + 1;
    assign_synthetic_ids(tree.root, next_id);
    return tree;
}

AstTree parse_ast(std::string_view json_text) {
    Json document;
    try {
        document = Json::parse(json_text);
    } catch (const nlohmann::json::parse_error& error) {
        throw MalformedJson(std::string("not valid JSON: ") + error.what());
    }
    return parse_ast_json(document);
}

AstTree preprocess(AstTree tree) {
    if (tree.root.node_type != NodeType::SourceUnit) {
        throw NotSourceUnit("expected SourceUnit root, found '" + tree.root.type_name + "'");
    }
    for (auto& child : tree.root.children) {
        std::erase_if(child.nodes, [](const AstNode& node) {
            return node.node_type != NodeType::ContractDefinition;
        });
    }
    std::erase_if(tree.root.children,
                  [](const AstNode::Child& child) { return child.nodes.empty() && !child.is_list; });
    return tree;
}

Json to_json(const AstNode& node) {
    Json object = Json::object();
    if (!node.synthetic) {
        object["nodeType"] = node.type_name;
        if (node.id >= 0) object["id"] = node.id;
        object["src"] = node.src.to_string();
    }
    for (const auto& [key, value] : node.attributes) {
        object[key] = value;
    }
    for (const auto& child : node.children) {
        if (child.is_list) {
            Json list = Json::array();
            for (const auto& sub : child.nodes) list.push_back(to_json(sub));
            object[child.name] = std::move(list);
        } else if (!child.nodes.empty()) {
            object[child.name] = to_json(child.nodes.front());
        }
    }
    return object;
}

namespace {

struct CoreAttrSpec {
    const char* name;
    bool required;
    const char* alias = nullptr;  // alternate key emitted by some compiler versions
};

const std::unordered_map<NodeType, std::vector<CoreAttrSpec>>& core_attr_table() {
    static const std::unordered_map<NodeType, std::vector<CoreAttrSpec>> table = {
        {NodeType::FunctionDefinition,
         {{"name", true}, {"body", false}, {"isConstructor", false}, {"parameters", false},
          {"returnParameters", false}}},
        {NodeType::Block, {{"statements", true}}},
        {NodeType::VariableDeclarationStatement, {{"declarations", true}, {"initialValue", false}}},
        {NodeType::VariableDeclaration, {{"name", true}, {"typeDescription", false, "typeDescriptions"}}},
        {NodeType::IndexAccess, {{"baseExpression", true}, {"indexExpression", false}}},
        {NodeType::MemberAccess, {{"expression", true}, {"memberName", true}}},
        {NodeType::Identifier, {{"name", true}}},
        {NodeType::IfStatement, {{"condition", true}, {"falseBody", false}, {"trueBody", true}}},
        {NodeType::BinaryOperation,
         {{"operator", true}, {"leftExpression", true}, {"rightExpression", true}}},
        {NodeType::Literal, {{"value", false}}},
        {NodeType::ExpressionStatement, {{"expression", true}}},
        {NodeType::Assignment, {{"operator", true}, {"leftHandSide", true}, {"rightHandSide", true}}},
        {NodeType::FunctionCall, {{"argumentTypes", false}, {"expression", true}}},
    };
    return table;
}

}  // namespace

std::vector<CoreAttribute> core_attributes(const AstNode& node) {
    std::vector<CoreAttribute> result;
    const auto& table = core_attr_table();
    const auto it = table.find(node.node_type);
    if (it == table.end()) {
        // no fixed schema for this kind: expose the raw attribute map
        for (const auto& [key, value] : node.attributes) {
            result.push_back(CoreAttribute{key, value, nullptr});
        }
        for (const auto& child : node.children) {
            if (!child.nodes.empty()) {
                result.push_back(CoreAttribute{child.name, Json(), &child.nodes.front()});
            }
        }
        return result;
    }
    for (const CoreAttrSpec& spec : it->second) {
        const char* keys[2] = {spec.name, spec.alias};
        bool found = false;
        for (const char* key : keys) {
            if (key == nullptr) continue;
            if (const Json* value = node.attribute(key)) {
                result.push_back(CoreAttribute{spec.name, *value, nullptr});
                found = true;
                break;
            }
            if (const AstNode::Child* link = node.child_link(key)) {
                result.push_back(
                    CoreAttribute{spec.name, Json(), link->nodes.empty() ? nullptr : &link->nodes.front()});
                found = true;
                break;
            }
        }
        if (found) continue;
        // modern compilers replace isConstructor with kind=="constructor"
        if (std::string_view(spec.name) == "isConstructor") {
            if (auto kind = node.string_attribute("kind")) {
                result.push_back(CoreAttribute{spec.name, Json(*kind == "constructor"), nullptr});
                continue;
            }
        }
        if (spec.required) {
            throw MissingCoreAttribute(node.id, spec.name);
        }
        result.push_back(CoreAttribute{spec.name, Json(), nullptr});
    }
    return result;
}

void visit(const AstNode& node, const std::function<void(const AstNode&)>& fn) {
    fn(node);
    for (const auto& child : node.children) {
        for (const auto& sub : child.nodes) visit(sub, fn);
    }
}

}  // namespace soldesc
