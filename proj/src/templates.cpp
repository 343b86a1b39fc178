#include "soldesc/templates.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

namespace soldesc {

namespace {

std::string_view trim(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
    return text;
}

SpecialTemplate parse_entry(std::string_view pattern, std::string_view text, std::size_t line_no) {
    SpecialTemplate tmpl;
    tmpl.pattern = std::string(pattern);
    tmpl.text = std::string(text);

    std::string_view head = pattern;
    const std::size_t paren = head.find('(');
    if (paren != std::string_view::npos) {
        if (!head.ends_with(")")) {
            throw ArityMismatch("templates line " + std::to_string(line_no) +
                                ": unterminated argument list in '" + std::string(pattern) + "'");
        }
        tmpl.is_call = true;
        std::string_view args = head.substr(paren + 1, head.size() - paren - 2);
        head = head.substr(0, paren);
        args = trim(args);
        if (args == "...") {
            tmpl.variadic = true;
        } else if (!args.empty()) {
            std::size_t begin = 0;
            while (begin <= args.size()) {
                std::size_t end = args.find(',', begin);
                if (end == std::string_view::npos) end = args.size();
                tmpl.slots.emplace_back(trim(args.substr(begin, end - begin)));
                begin = end + 1;
            }
        }
    }
    if (head.starts_with("*.")) {
        tmpl.receiver_wildcard = true;
        head = head.substr(2);
    }
    tmpl.path = std::string(head);
    return tmpl;
}

bool word_needs_verbatim(std::string_view word) {
    return !std::all_of(word.begin(), word.end(),
                        [](unsigned char c) { return std::islower(c) != 0; });
}

}  // namespace

TemplateSet TemplateSet::from_string(std::string_view text) {
    TemplateSet set;
    std::istringstream stream{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (view.empty() || view.front() == '#') continue;
        const std::size_t tab = view.find('\t');
        if (tab == std::string_view::npos) {
            throw ArityMismatch("templates line " + std::to_string(line_no) +
                                ": expected 'pattern<TAB>template'");
        }
        set.templates_.push_back(
            parse_entry(trim(view.substr(0, tab)), trim(view.substr(tab + 1)), line_no));
    }
    // reject duplicate patterns: they would make matching ambiguous
    for (std::size_t a = 0; a < set.templates_.size(); ++a) {
        for (std::size_t b = a + 1; b < set.templates_.size(); ++b) {
            if (set.templates_[a].pattern == set.templates_[b].pattern) {
                throw ArityMismatch("duplicate template pattern '" + set.templates_[a].pattern + "'");
            }
        }
    }
    return set;
}

TemplateSet TemplateSet::from_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError("cannot open templates file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return from_string(buffer.str());
}

const SpecialTemplate* TemplateSet::match_path(std::string_view dotted_path) const {
    for (const SpecialTemplate& tmpl : templates_) {
        if (!tmpl.is_call && !tmpl.receiver_wildcard && tmpl.path == dotted_path) return &tmpl;
    }
    return nullptr;
}

const SpecialTemplate* TemplateSet::match_call(std::string_view dotted_path, std::size_t argc) const {
    const SpecialTemplate* variadic_hit = nullptr;
    bool path_declared = false;
    for (const SpecialTemplate& tmpl : templates_) {
        if (!tmpl.is_call || tmpl.receiver_wildcard || tmpl.path != dotted_path) continue;
        path_declared = true;
        if (tmpl.variadic) {
            if (variadic_hit == nullptr) variadic_hit = &tmpl;
        } else if (tmpl.slots.size() == argc) {
            return &tmpl;
        }
    }
    if (variadic_hit != nullptr) return variadic_hit;
    if (path_declared) {
        throw ArityMismatch("no template for '" + std::string(dotted_path) + "' accepts " +
                            std::to_string(argc) + " argument(s)");
    }
    // receiver-wildcard fallback on the final path segment
    const std::size_t dot = dotted_path.rfind('.');
    if (dot == std::string_view::npos) return nullptr;
    const std::string_view member = dotted_path.substr(dot + 1);
    for (const SpecialTemplate& tmpl : templates_) {
        if (!tmpl.is_call || !tmpl.receiver_wildcard || tmpl.path != member) continue;
        if (tmpl.variadic || tmpl.slots.size() == argc) return &tmpl;
        throw ArityMismatch("no template for '*." + std::string(member) + "' accepts " +
                            std::to_string(argc) + " argument(s)");
    }
    return nullptr;
}

PhraseNode TemplateSet::instantiate(const SpecialTemplate& tmpl, std::span<const PhraseNode> args,
                                    const PhraseNode* receiver, const Lexicon& lexicon) const {
    if (!tmpl.variadic && args.size() != tmpl.slots.size()) {
        throw ArityMismatch("template '" + tmpl.pattern + "' expects " +
                            std::to_string(tmpl.slots.size()) + " argument(s), got " +
                            std::to_string(args.size()));
    }
    PhraseNode out = PhraseNode::make_group();

    auto emit_literal_word = [&](std::string_view word) {
        if (word == "," || word == "." || word == "(" || word == ")" || word == ";") {
            out.push(punct_token(std::string(word)));
        } else if (word_needs_verbatim(word)) {
            out.push(TaggedToken{std::string(word), "SYM", TokenOrigin::SpecialStatement});
        } else {
            out.push(TaggedToken{std::string(word), lexicon.tag_word(word),
                                 TokenOrigin::SpecialStatement});
        }
    };
    auto emit_literal_run = [&](std::string_view run) {
        std::size_t begin = 0;
        while (begin < run.size()) {
            while (begin < run.size() && run[begin] == ' ') ++begin;
            if (begin >= run.size()) break;
            // punctuation glued to a word becomes its own token
            if (run[begin] == '(' || run[begin] == ')' || run[begin] == ',' || run[begin] == '.') {
                emit_literal_word(run.substr(begin, 1));
                ++begin;
                continue;
            }
            std::size_t end = begin;
            while (end < run.size() && run[end] != ' ' && run[end] != '(' && run[end] != ')' &&
                   run[end] != ',') {
                ++end;
            }
            emit_literal_word(run.substr(begin, end - begin));
            begin = end + (end < run.size() && run[end] == ' ' ? 1 : 0);
        }
    };
    auto emit_args_joined = [&]() {
        for (std::size_t k = 0; k < args.size(); ++k) {
            if (k > 0) out.push(punct_token(","));
            out.push(args[k]);
        }
    };

    const std::string& text = tmpl.text;
    std::size_t pos = 0;
    while (pos < text.size()) {
        const std::size_t open = text.find('{', pos);
        if (open == std::string::npos) {
            emit_literal_run(std::string_view(text).substr(pos));
            break;
        }
        emit_literal_run(std::string_view(text).substr(pos, open - pos));
        const std::size_t close = text.find('}', open);
        if (close == std::string::npos) {
            throw ArityMismatch("template '" + tmpl.pattern + "': unterminated slot marker");
        }
        const std::string_view slot = std::string_view(text).substr(open + 1, close - open - 1);
        if (slot == "...") {
            emit_args_joined();
        } else if (slot == "recv") {
            if (receiver == nullptr) {
                throw ArityMismatch("template '" + tmpl.pattern + "' needs a receiver expression");
            }
            out.push(*receiver);
        } else {
            const auto it = std::find(tmpl.slots.begin(), tmpl.slots.end(), std::string(slot));
            if (it == tmpl.slots.end()) {
                throw ArityMismatch("template '" + tmpl.pattern + "': unknown slot '" +
                                    std::string(slot) + "'");
            }
            const std::size_t index = static_cast<std::size_t>(it - tmpl.slots.begin());
            if (index < args.size()) out.push(args[index]);
        }
        pos = close + 1;
    }
    return out;
}

std::optional<PhraseList> apply_special_template(std::string_view qualified_name,
                                                 std::span<const PhraseNode> args,
                                                 const TemplateSet& templates,
                                                 const Lexicon& lexicon,
                                                 const PhraseNode* receiver) {
    const SpecialTemplate* tmpl = nullptr;
    const std::size_t paren = qualified_name.find('(');
    if (paren != std::string_view::npos) {
        tmpl = templates.match_call(qualified_name.substr(0, paren), args.size());
    } else {
        tmpl = templates.match_path(qualified_name);
    }
    if (tmpl == nullptr) return std::nullopt;
    PhraseList phrase;
    phrase.top = templates.instantiate(*tmpl, args, receiver, lexicon);
    return phrase;
}

}  // namespace soldesc
