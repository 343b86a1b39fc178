#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "soldesc/errors.hpp"

namespace soldesc {

/// Lowercases, strips punctuation, splits on whitespace.
std::vector<std::string> tokenize_sentence(std::string_view sentence);

/// Corpus-level BLEU restricted to order-n modified precision with brevity
/// penalty: BP * p_n, where p_n pools clipped n-gram counts over the corpus
/// and BP = min(1, exp(1 - ref_len / cand_len)). No smoothing. n in 1..4.
double bleu_n(std::span<const std::string> candidates, std::span<const std::string> references,
              int n);

/// LCS(candidate, reference) / |reference| (recall form).
double rouge_l(std::string_view candidate, std::string_view reference);

/// F-measure variant: (1 + beta^2) * P * R / (R + beta^2 * P).
double rouge_l_f(std::string_view candidate, std::string_view reference, double beta = 1.2);

/// Word -> synonym set, loaded from "word<TAB>syn1,syn2" lines. Symmetric:
/// a~b holds when either side lists the other.
class SynonymTable {
public:
    SynonymTable() = default;
    static SynonymTable from_file(const std::filesystem::path& path);
    static SynonymTable from_string(std::string_view text);

    bool synonymous(std::string_view a, std::string_view b) const;
    std::size_t size() const { return table_.size(); }

private:
    std::map<std::string, std::vector<std::string>, std::less<>> table_;
};

/// Unigram-alignment METEOR: exact matches first, then synonym matches
/// (maximum bipartite matching); P = m/|cand|, R = m/|ref|,
/// Fmean = 10PR/(R+9P), penalty = 0.5*(chunks/m)^3, score = Fmean*(1-penalty).
double meteor(std::string_view candidate, std::string_view reference,
              const SynonymTable& synonyms = {});

/// Code tokens by the snippet-length rules: identifiers split camel/snake
/// into words, every operator or punctuation symbol is one token, comments
/// are skipped.
std::vector<std::string> code_tokens(std::string_view snippet);

/// Code-snippet length: identifiers split camel/snake into words, every
/// operator or punctuation symbol counts as one token.
int count_code_tokens(std::string_view snippet);

struct EvalRecord {
    std::string candidate;
    std::string reference;
    int snippet_tokens = 0;
    std::optional<std::int64_t> gas_gwei;
    bool fallback = false;
    std::map<std::string, double> scores;
};

struct BinScore {
    double lo = 0.0;
    double hi = 0.0;  // half-open [lo, hi)
    std::size_t n_records = 0;
    std::map<std::string, double> scores;
};

struct EvalReport {
    std::map<std::string, double> corpus_scores;
    std::vector<BinScore> length_bins;
    std::vector<BinScore> gas_bins;
    std::size_t record_count = 0;
    std::size_t fallback_count = 0;

    /// (max - min) / max of BLEU-1 over non-empty length bins; 0 when fewer
    /// than two bins have records.
    double bleu1_length_spread() const;

    std::string to_csv() const;
};

/// Scores every record (corpus-level BLEU-1..4 plus mean ROUGE-L / METEOR)
/// and aggregates per length / gas bin. Bin edges are ascending boundary
/// lists; values at or past the last edge fall into an implicit overflow
/// bin. Records without a gas value are excluded from gas bins only.
EvalReport binned_report(std::vector<EvalRecord> records, std::span<const double> length_bin_edges,
                         std::span<const double> gas_bin_edges,
                         const SynonymTable& synonyms = {});

/// Ascending edges 0, width, 2*width, ... covering max_value.
std::vector<double> uniform_bin_edges(double width, double max_value);

}  // namespace soldesc
