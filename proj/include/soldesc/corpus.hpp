#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "soldesc/ast.hpp"
#include "soldesc/metrics.hpp"

namespace soldesc {

/// One snippet of the JSON-lines corpus:
///   {"code": str, "reference": str, "gas_gwei": int|null,
///    "ast": object|absent, "focus": str|absent}
/// `ast` carries the compact AST of the snippet wrapped in a compilable
/// unit; `focus` names the function or modifier whose sentences the snippet
/// is scored on (scaffolding declarations are ignored).
struct CorpusRecord {
    std::string code;
    std::string reference;
    std::optional<std::int64_t> gas_gwei;
    std::optional<Json> ast;
    std::string focus;
};

struct CorpusLoadResult {
    std::vector<CorpusRecord> records;
    std::vector<std::string> warnings;  // one per rejected line
};

CorpusLoadResult load_corpus(const std::filesystem::path& path);
CorpusLoadResult parse_corpus(std::string_view text);

struct CorpusStats {
    std::size_t records = 0;
    std::size_t duplicates_removed = 0;
    std::size_t missing_reference = 0;
    std::size_t code_vocab = 0;        // distinct code tokens
    std::size_t code_vocab_words = 0;  // of which identifier/keyword words
    std::size_t code_vocab_symbols = 0;
    std::size_t description_vocab = 0;
    std::map<double, std::size_t> length_histogram;  // bin lower edge -> records
    std::map<double, std::size_t> gas_histogram;

    Json to_json() const;
    std::string to_csv() const;
};

/// Deduplicates, drops records without a reference (with a warning each) and
/// counts vocabulary and distributions.
CorpusStats compute_stats(const std::vector<CorpusRecord>& records,
                          std::vector<std::string>& warnings, double length_bin_width = 10.0,
                          double gas_bin_width = 50000.0);

}  // namespace soldesc
