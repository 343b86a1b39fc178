#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "soldesc/corpus.hpp"
#include "soldesc/lexicon.hpp"
#include "soldesc/metrics.hpp"
#include "soldesc/pcfg.hpp"
#include "soldesc/realizer.hpp"
#include "soldesc/templates.hpp"
#include "soldesc/translator.hpp"

namespace soldesc {

struct RunConfig {
    std::filesystem::path grammar;
    std::filesystem::path lexicon;
    std::filesystem::path templates;
    std::filesystem::path operators;
    std::optional<std::filesystem::path> treebank;  // PCFG source; uniform CFG otherwise
    std::optional<std::filesystem::path> synonyms;
    std::optional<std::filesystem::path> compiler;  // solc-compatible binary for .sol inputs
    double length_bin_width = 10.0;
    double gas_bin_width = 50000.0;

    /// Standard file names resolved against a data directory.
    static RunConfig defaults(const std::filesystem::path& data_dir);

    /// JSON config file; relative paths are resolved against its directory.
    static RunConfig from_file(const std::filesystem::path& path);
};

struct OutputEntry {
    SourceRange src;
    std::string container;
    std::string sentence;
    bool fallback = false;
};

struct TranslationOutput {
    std::vector<OutputEntry> entries;  // sorted by src offset
    std::vector<Diagnostic> diagnostics;
    double duration_ms = 0.0;  // reported separately, never serialized

    Json to_json() const;
    std::string to_text() const;
};

/// Inserts "// sentence" comment lines directly above each described
/// statement (or after it when `trailing`). Removing the inserted lines
/// restores the source byte for byte.
std::string annotate_source(const std::string& source, const std::vector<OutputEntry>& entries,
                            bool trailing = false);

struct CorpusEvalResult {
    EvalReport report;
    std::vector<EvalRecord> records;
    std::vector<std::string> warnings;
};

/// All loaded components of the translate pipeline; immutable and safe to
/// share across threads after construction.
class Pipeline {
public:
    static Pipeline load(const RunConfig& config);

    TranslationOutput translate(const AstTree& tree) const;
    TranslationOutput translate_json_text(std::string_view ast_json,
                                          std::optional<std::string> source_text = std::nullopt) const;
    /// .sol files require a configured compiler; .json files are read directly.
    TranslationOutput translate_file(const std::filesystem::path& input) const;

    CorpusEvalResult evaluate(const std::vector<CorpusRecord>& records) const;

    const Lexicon& lexicon() const;
    const PcfgModel& model() const;
    const TemplateSet& templates() const;
    const SynonymTable& synonyms() const;
    const RunConfig& config() const;

private:
    struct Components;
    explicit Pipeline(std::shared_ptr<const Components> components);
    std::shared_ptr<const Components> components_;
};

/// Runs `<compiler> --ast-compact-json <input>` and extracts the JSON
/// document from its output.
std::string run_compiler(const std::filesystem::path& compiler,
                         const std::filesystem::path& input);

}  // namespace soldesc
