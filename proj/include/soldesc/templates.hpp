#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soldesc/lexicon.hpp"
#include "soldesc/token.hpp"

namespace soldesc {

/// Fixed English wording for one Solidity global variable or system
/// function. Patterns are either dotted member paths ("msg.sender",
/// "block.gaslimit") or call signatures with named slots
/// ("require(condition,message)", "bytes.concat(...)"). A leading "*."
/// matches any receiver expression, available to the template as {recv}.
struct SpecialTemplate {
    std::string pattern;                  // as written in the file
    std::string path;                     // dotted path without the arg list
    bool is_call = false;
    bool variadic = false;                // pattern argument list is "..."
    bool receiver_wildcard = false;       // path begins with "*."
    std::vector<std::string> slots;       // named argument slots, in order
    std::string text;                     // template text with {slot} markers
};

class TemplateSet {
public:
    static TemplateSet from_file(const std::filesystem::path& path);
    static TemplateSet from_string(std::string_view text);

    std::size_t size() const { return templates_.size(); }
    const std::vector<SpecialTemplate>& all() const { return templates_; }

    /// Match for a plain member path; longest declared path wins because the
    /// caller asks with the full path before recursing into sub-expressions.
    const SpecialTemplate* match_path(std::string_view dotted_path) const;

    /// Match for a call with the given argument count: exact path first,
    /// then a "*." receiver pattern on the last path segment; fixed arity
    /// beats variadic. Throws ArityMismatch when the path is declared but no
    /// declared arity admits `argc`.
    const SpecialTemplate* match_call(std::string_view dotted_path, std::size_t argc) const;

    /// Instantiates the template: literal words are tagged through the
    /// lexicon, slot markers are replaced by the argument phrases. The
    /// receiver phrase (for "*." patterns) fills {recv}.
    PhraseNode instantiate(const SpecialTemplate& tmpl, std::span<const PhraseNode> args,
                           const PhraseNode* receiver, const Lexicon& lexicon) const;

private:
    std::vector<SpecialTemplate> templates_;
};

/// Qualified-name front end: `qualified_name` is either a dotted path
/// ("msg.sender") or a call signature ("addmod(uint,uint,uint)", where only
/// the argument count matters). Returns the instantiated phrase, or nothing
/// when no pattern matches.
std::optional<PhraseList> apply_special_template(std::string_view qualified_name,
                                                 std::span<const PhraseNode> args,
                                                 const TemplateSet& templates,
                                                 const Lexicon& lexicon,
                                                 const PhraseNode* receiver = nullptr);

}  // namespace soldesc
