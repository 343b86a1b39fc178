#include "soldesc/metrics.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "soldesc/translator.hpp"

namespace soldesc {

std::vector<std::string> tokenize_sentence(std::string_view sentence) {
    std::vector<std::string> tokens;
    std::string current;
    const auto flush = [&] {
        if (!current.empty()) {
            tokens.push_back(current);
            current.clear();
        }
    };
    for (const char raw : sentence) {
        const unsigned char c = static_cast<unsigned char>(raw);
        if (std::isspace(c)) {
            flush();
            continue;
        }
        switch (raw) {
            case '.': case ',': case ';': case ':': case '!': case '?':
            case '"': case '\'': case '(': case ')': case '[': case ']':
            case '{': case '}': case '`':
                continue;  // punctuation is stripped
            default:
                current += static_cast<char>(std::tolower(c));
        }
    }
    flush();
    return tokens;
}

namespace {

using Tokens = std::vector<std::string>;

std::map<std::string, std::size_t> ngram_counts(const Tokens& tokens, int n) {
    std::map<std::string, std::size_t> counts;
    if (static_cast<int>(tokens.size()) < n) return counts;
    for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= tokens.size(); ++i) {
        std::string key;
        for (int k = 0; k < n; ++k) {
            if (k > 0) key += '\x1f';
            key += tokens[i + static_cast<std::size_t>(k)];
        }
        ++counts[key];
    }
    return counts;
}

std::size_t lcs_length(const Tokens& a, const Tokens& b) {
    std::vector<std::size_t> previous(b.size() + 1, 0);
    std::vector<std::size_t> current(b.size() + 1, 0);
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            current[j] = a[i - 1] == b[j - 1] ? previous[j - 1] + 1
                                              : std::max(previous[j], current[j - 1]);
        }
        std::swap(previous, current);
    }
    return previous[b.size()];
}

}  // namespace

double bleu_n(std::span<const std::string> candidates, std::span<const std::string> references,
              int n) {
    if (candidates.size() != references.size()) {
        throw LengthMismatch("candidate/reference lists differ in length");
    }
    if (candidates.empty()) {
        throw EmptyCorpus("cannot score an empty corpus");
    }
    if (n < 1 || n > 4) {
        throw LengthMismatch("n must be 1..4");
    }
    std::size_t matched = 0;
    std::size_t total = 0;
    std::size_t cand_len = 0;
    std::size_t ref_len = 0;
    for (std::size_t i = 0; i < candidates.size(); ++i) {
        const Tokens cand = tokenize_sentence(candidates[i]);
        const Tokens ref = tokenize_sentence(references[i]);
        cand_len += cand.size();
        ref_len += ref.size();
        const auto cand_counts = ngram_counts(cand, n);
        const auto ref_counts = ngram_counts(ref, n);
        for (const auto& [gram, count] : cand_counts) {
            total += count;
            const auto it = ref_counts.find(gram);
            if (it != ref_counts.end()) matched += std::min(count, it->second);
        }
    }
    if (total == 0 || cand_len == 0) return 0.0;
    const double precision = static_cast<double>(matched) / static_cast<double>(total);
    const double bp = std::min(
        1.0, std::exp(1.0 - static_cast<double>(ref_len) / static_cast<double>(cand_len)));
    return bp * precision;
}

double rouge_l(std::string_view candidate, std::string_view reference) {
    const Tokens cand = tokenize_sentence(candidate);
    const Tokens ref = tokenize_sentence(reference);
    if (cand.empty() || ref.empty()) {
        throw EmptySentence("both sentences must be non-empty after tokenization");
    }
    return static_cast<double>(lcs_length(cand, ref)) / static_cast<double>(ref.size());
}

double rouge_l_f(std::string_view candidate, std::string_view reference, double beta) {
    const Tokens cand = tokenize_sentence(candidate);
    const Tokens ref = tokenize_sentence(reference);
    if (cand.empty() || ref.empty()) {
        throw EmptySentence("both sentences must be non-empty after tokenization");
    }
    const double lcs = static_cast<double>(lcs_length(cand, ref));
    if (lcs == 0.0) return 0.0;
    const double precision = lcs / static_cast<double>(cand.size());
    const double recall = lcs / static_cast<double>(ref.size());
    return (1.0 + beta * beta) * precision * recall / (recall + beta * beta * precision);
}

SynonymTable SynonymTable::from_string(std::string_view text) {
    SynonymTable table;
    std::istringstream stream{std::string(text)};
    std::string line;
    while (std::getline(stream, line)) {
        std::string_view view = line;
        while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
        if (view.empty() || view.front() == '#') continue;
        const std::size_t tab = view.find('\t');
        if (tab == std::string_view::npos) continue;
        std::string word{view.substr(0, tab)};
        std::vector<std::string> synonyms;
        std::string_view rest = view.substr(tab + 1);
        std::size_t begin = 0;
        while (begin <= rest.size()) {
            std::size_t end = rest.find(',', begin);
            if (end == std::string_view::npos) end = rest.size();
            std::string_view item = rest.substr(begin, end - begin);
            begin = end + 1;
            if (!item.empty()) synonyms.emplace_back(item);
        }
        table.table_[std::move(word)] = std::move(synonyms);
    }
    return table;
}

SynonymTable SynonymTable::from_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError("cannot open synonym file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return from_string(buffer.str());
}

bool SynonymTable::synonymous(std::string_view a, std::string_view b) const {
    const auto lists = [this](std::string_view key, std::string_view value) {
        const auto it = table_.find(key);
        if (it == table_.end()) return false;
        return std::find(it->second.begin(), it->second.end(), value) != it->second.end();
    };
    return lists(a, b) || lists(b, a);
}

double meteor(std::string_view candidate, std::string_view reference,
              const SynonymTable& synonyms) {
    const Tokens cand = tokenize_sentence(candidate);
    const Tokens ref = tokenize_sentence(reference);
    if (cand.empty() || ref.empty()) {
        throw EmptySentence("both sentences must be non-empty after tokenization");
    }

    constexpr int kUnmatched = -1;
    std::vector<int> cand_match(cand.size(), kUnmatched);  // candidate index -> reference index
    std::vector<bool> ref_used(ref.size(), false);

    // stage 1: exact matches, in order
    for (std::size_t i = 0; i < cand.size(); ++i) {
        for (std::size_t j = 0; j < ref.size(); ++j) {
            if (!ref_used[j] && cand[i] == ref[j]) {
                cand_match[i] = static_cast<int>(j);
                ref_used[j] = true;
                break;
            }
        }
    }

    // stage 2: synonym matches on the remainder (augmenting-path matching)
    if (synonyms.size() > 0) {
        std::vector<std::vector<int>> edges(cand.size());
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (cand_match[i] != kUnmatched) continue;
            for (std::size_t j = 0; j < ref.size(); ++j) {
                if (!ref_used[j] && synonyms.synonymous(cand[i], ref[j])) {
                    edges[i].push_back(static_cast<int>(j));
                }
            }
        }
        std::vector<int> ref_match(ref.size(), kUnmatched);
        const std::function<bool(std::size_t, std::vector<bool>&)> augment =
            [&](std::size_t i, std::vector<bool>& visited) {
                for (const int j : edges[i]) {
                    if (visited[static_cast<std::size_t>(j)]) continue;
                    visited[static_cast<std::size_t>(j)] = true;
                    if (ref_match[static_cast<std::size_t>(j)] == kUnmatched ||
                        augment(static_cast<std::size_t>(ref_match[static_cast<std::size_t>(j)]),
                                visited)) {
                        ref_match[static_cast<std::size_t>(j)] = static_cast<int>(i);
                        return true;
                    }
                }
                return false;
            };
        for (std::size_t i = 0; i < cand.size(); ++i) {
            if (cand_match[i] != kUnmatched || edges[i].empty()) continue;
            std::vector<bool> visited(ref.size(), false);
            augment(i, visited);
        }
        for (std::size_t j = 0; j < ref.size(); ++j) {
            if (ref_match[j] != kUnmatched) {
                cand_match[static_cast<std::size_t>(ref_match[j])] = static_cast<int>(j);
            }
        }
    }

    std::size_t m = 0;
    std::size_t chunks = 0;
    int previous_ref = -2;
    for (std::size_t i = 0; i < cand.size(); ++i) {
        if (cand_match[i] == kUnmatched) continue;
        ++m;
        if (cand_match[i] != previous_ref + 1 || (i > 0 && cand_match[i - 1] == kUnmatched)) {
            ++chunks;
        }
        previous_ref = cand_match[i];
    }
    if (m == 0) return 0.0;

    const double precision = static_cast<double>(m) / static_cast<double>(cand.size());
    const double recall = static_cast<double>(m) / static_cast<double>(ref.size());
    const double f_mean = 10.0 * precision * recall / (recall + 9.0 * precision);
    const double frag = static_cast<double>(chunks) / static_cast<double>(m);
    const double penalty = 0.5 * frag * frag * frag;
    return f_mean * (1.0 - penalty);
}

std::vector<std::string> code_tokens(std::string_view snippet) {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    const auto is_ident_start = [](unsigned char c) { return std::isalpha(c) || c == '_' || c == '$'; };
    const auto is_ident = [](unsigned char c) { return std::isalnum(c) || c == '_' || c == '$'; };
    static const std::string_view kMultiOps[] = {
        "<<=", ">>=", "**", "==", "!=", "<=", ">=", "&&", "||", "+=", "-=", "*=", "/=", "%=",
        "++", "--", "=>", "->", "<<", ">>", "|=", "&=", "^=",
    };
    while (i < snippet.size()) {
        const unsigned char c = static_cast<unsigned char>(snippet[i]);
        if (std::isspace(c)) {
            ++i;
            continue;
        }
        // comments do not count as tokens
        if (c == '/' && i + 1 < snippet.size() && snippet[i + 1] == '/') {
            while (i < snippet.size() && snippet[i] != '\n') ++i;
            continue;
        }
        if (c == '/' && i + 1 < snippet.size() && snippet[i + 1] == '*') {
            const std::size_t end = snippet.find("*/", i + 2);
            i = end == std::string_view::npos ? snippet.size() : end + 2;
            continue;
        }
        if (is_ident_start(c)) {
            const std::size_t begin = i;
            while (i < snippet.size() && is_ident(static_cast<unsigned char>(snippet[i]))) ++i;
            for (std::string& part : split_identifier_parts(snippet.substr(begin, i - begin))) {
                tokens.push_back(std::move(part));
            }
            continue;
        }
        if (std::isdigit(c)) {
            const std::size_t begin = i;
            while (i < snippet.size() && std::isalnum(static_cast<unsigned char>(snippet[i]))) {
                ++i;
            }
            tokens.emplace_back(snippet.substr(begin, i - begin));
            continue;
        }
        if (c == '"' || c == '\'') {
            const char quote = snippet[i];
            const std::size_t begin = i;
            ++i;
            while (i < snippet.size() && snippet[i] != quote) {
                if (snippet[i] == '\\') ++i;
                ++i;
            }
            if (i < snippet.size()) ++i;  // closing quote
            tokens.emplace_back(snippet.substr(begin, i - begin));
            continue;
        }
        bool multi = false;
        for (const std::string_view op : kMultiOps) {
            if (snippet.substr(i).starts_with(op)) {
                tokens.emplace_back(op);
                i += op.size();
                multi = true;
                break;
            }
        }
        if (multi) continue;
        tokens.emplace_back(snippet.substr(i, 1));
        ++i;
    }
    return tokens;
}

int count_code_tokens(std::string_view snippet) {
    return static_cast<int>(code_tokens(snippet).size());
}

std::vector<double> uniform_bin_edges(double width, double max_value) {
    std::vector<double> edges = {0.0};
    double edge = width;
    while (edge <= max_value) {
        edges.push_back(edge);
        edge += width;
    }
    return edges;
}

namespace {

std::map<std::string, double> pooled_scores(const std::vector<const EvalRecord*>& records,
                                            const SynonymTable& synonyms) {
    std::map<std::string, double> scores;
    std::vector<std::string> candidates;
    std::vector<std::string> references;
    for (const EvalRecord* record : records) {
        candidates.push_back(record->candidate);
        references.push_back(record->reference);
    }
    for (int n = 1; n <= 4; ++n) {
        scores["bleu-" + std::to_string(n)] = bleu_n(candidates, references, n);
    }
    double rouge_sum = 0.0;
    double meteor_sum = 0.0;
    for (const EvalRecord* record : records) {
        rouge_sum += rouge_l(record->candidate, record->reference);
        meteor_sum += meteor(record->candidate, record->reference, synonyms);
    }
    scores["rouge-l"] = rouge_sum / static_cast<double>(records.size());
    scores["meteor"] = meteor_sum / static_cast<double>(records.size());
    return scores;
}

std::vector<BinScore> build_bins(std::span<const double> edges) {
    if (edges.empty()) {
        throw EmptyBins("bin boundary list is empty");
    }
    std::vector<BinScore> bins;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        if (edges[k + 1] <= edges[k]) {
            throw EmptyBins("bin boundaries must be ascending");
        }
        bins.push_back(BinScore{edges[k], edges[k + 1], 0, {}});
    }
    bins.push_back(BinScore{edges.back(), std::numeric_limits<double>::infinity(), 0, {}});
    return bins;
}

void fill_bins(std::vector<BinScore>& bins, const std::vector<EvalRecord>& records,
               const SynonymTable& synonyms, bool by_gas) {
    std::vector<std::vector<const EvalRecord*>> members(bins.size());
    for (const EvalRecord& record : records) {
        double value = 0.0;
        if (by_gas) {
            if (!record.gas_gwei) continue;
            value = static_cast<double>(*record.gas_gwei);
        } else {
            value = static_cast<double>(record.snippet_tokens);
        }
        for (std::size_t k = 0; k < bins.size(); ++k) {
            if (value >= bins[k].lo && value < bins[k].hi) {
                members[k].push_back(&record);
                break;
            }
        }
    }
    for (std::size_t k = 0; k < bins.size(); ++k) {
        bins[k].n_records = members[k].size();
        if (!members[k].empty()) {
            bins[k].scores = pooled_scores(members[k], synonyms);
        }
    }
}

}  // namespace

double EvalReport::bleu1_length_spread() const {
    double max_score = -1.0;
    double min_score = 2.0;
    std::size_t populated = 0;
    for (const BinScore& bin : length_bins) {
        if (bin.n_records == 0) continue;
        ++populated;
        const auto it = bin.scores.find("bleu-1");
        if (it == bin.scores.end()) continue;
        max_score = std::max(max_score, it->second);
        min_score = std::min(min_score, it->second);
    }
    if (populated < 2 || max_score <= 0.0) return 0.0;
    return (max_score - min_score) / max_score;
}

std::string EvalReport::to_csv() const {
    std::ostringstream out;
    out << "bin,metric,value,n_records\n";
    const auto emit = [&out](const std::string& bin, const std::map<std::string, double>& scores,
                             std::size_t n) {
        for (const auto& [metric, value] : scores) {
            out << bin << ',' << metric << ',' << value << ',' << n << '\n';
        }
    };
    emit("corpus", corpus_scores, record_count);
    const auto bin_label = [](const char* prefix, const BinScore& bin) {
        std::ostringstream label;
        label << prefix << '[' << bin.lo << ';';
        if (std::isinf(bin.hi)) {
            label << "inf";
        } else {
            label << bin.hi;
        }
        label << ')';
        return label.str();
    };
    for (const BinScore& bin : length_bins) {
        if (bin.n_records > 0) emit(bin_label("length", bin), bin.scores, bin.n_records);
    }
    for (const BinScore& bin : gas_bins) {
        if (bin.n_records > 0) emit(bin_label("gas", bin), bin.scores, bin.n_records);
    }
    return out.str();
}

EvalReport binned_report(std::vector<EvalRecord> records, std::span<const double> length_bin_edges,
                         std::span<const double> gas_bin_edges, const SynonymTable& synonyms) {
    if (records.empty()) {
        throw EmptyCorpus("cannot report on an empty record list");
    }
    EvalReport report;
    report.record_count = records.size();

    std::vector<const EvalRecord*> all;
    for (EvalRecord& record : records) {
        all.push_back(&record);
        if (record.fallback) ++report.fallback_count;
    }
    report.corpus_scores = pooled_scores(all, synonyms);
    for (EvalRecord& record : records) {
        record.scores["bleu-1"] =
            bleu_n(std::vector<std::string>{record.candidate},
                   std::vector<std::string>{record.reference}, 1);
        record.scores["rouge-l"] = rouge_l(record.candidate, record.reference);
        record.scores["meteor"] = meteor(record.candidate, record.reference, synonyms);
    }

    report.length_bins = build_bins(length_bin_edges);
    fill_bins(report.length_bins, records, synonyms, false);
    report.gas_bins = build_bins(gas_bin_edges);
    fill_bins(report.gas_bins, records, synonyms, true);
    return report;
}

}  // namespace soldesc
