#include "soldesc/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace soldesc {

CorpusLoadResult parse_corpus(std::string_view text) {
    CorpusLoadResult result;
    std::istringstream stream{std::string(text)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(stream, line)) {
        ++line_no;
        std::string_view view = line;
        while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
        if (view.empty()) continue;
        Json object;
        try {
            object = Json::parse(view);
        } catch (const nlohmann::json::parse_error& error) {
            result.warnings.push_back("line " + std::to_string(line_no) + ": " + error.what());
            continue;
        }
        if (!object.is_object() || !object.contains("code") || !object["code"].is_string()) {
            result.warnings.push_back("line " + std::to_string(line_no) +
                                      ": record lacks a string 'code' field");
            continue;
        }
        CorpusRecord record;
        record.code = object["code"].get<std::string>();
        if (object.contains("reference") && object["reference"].is_string()) {
            record.reference = object["reference"].get<std::string>();
        }
        if (object.contains("gas_gwei") && object["gas_gwei"].is_number_integer()) {
            record.gas_gwei = object["gas_gwei"].get<std::int64_t>();
        }
        if (object.contains("ast") && object["ast"].is_object()) {
            record.ast = object["ast"];
        }
        if (object.contains("focus") && object["focus"].is_string()) {
            record.focus = object["focus"].get<std::string>();
        }
        result.records.push_back(std::move(record));
    }
    return result;
}

CorpusLoadResult load_corpus(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw IoError("cannot open corpus file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return parse_corpus(buffer.str());
}

CorpusStats compute_stats(const std::vector<CorpusRecord>& records,
                          std::vector<std::string>& warnings, double length_bin_width,
                          double gas_bin_width) {
    CorpusStats stats;
    std::set<std::pair<std::string, std::string>> seen;
    std::set<std::string> code_vocab;
    std::set<std::string> description_vocab;

    std::size_t index = 0;
    for (const CorpusRecord& record : records) {
        ++index;
        if (record.reference.empty()) {
            ++stats.missing_reference;
            warnings.push_back("record " + std::to_string(index) +
                               ": no reference description, excluded");
            continue;
        }
        if (!seen.emplace(record.code, record.reference).second) {
            ++stats.duplicates_removed;
            continue;
        }
        ++stats.records;
        const std::vector<std::string> tokens = code_tokens(record.code);
        for (const std::string& token : tokens) code_vocab.insert(token);
        for (const std::string& word : tokenize_sentence(record.reference)) {
            description_vocab.insert(word);
        }
        const double length = static_cast<double>(tokens.size());
        stats.length_histogram[std::floor(length / length_bin_width) * length_bin_width] += 1;
        if (record.gas_gwei) {
            const double gas = static_cast<double>(*record.gas_gwei);
            stats.gas_histogram[std::floor(gas / gas_bin_width) * gas_bin_width] += 1;
        }
    }
    stats.code_vocab = code_vocab.size();
    for (const std::string& token : code_vocab) {
        const unsigned char first = static_cast<unsigned char>(token.front());
        if (std::isalnum(first) || first == '_') {
            ++stats.code_vocab_words;
        } else {
            ++stats.code_vocab_symbols;
        }
    }
    stats.description_vocab = description_vocab.size();
    return stats;
}

Json CorpusStats::to_json() const {
    Json out;
    out["records"] = records;
    out["duplicates_removed"] = duplicates_removed;
    out["missing_reference"] = missing_reference;
    out["code_vocab"] = code_vocab;
    out["code_vocab_words"] = code_vocab_words;
    out["code_vocab_symbols"] = code_vocab_symbols;
    out["description_vocab"] = description_vocab;
    Json lengths = Json::array();
    for (const auto& [edge, count] : length_histogram) {
        lengths.push_back(Json{{"bin_lo", edge}, {"records", count}});
    }
    out["length_histogram"] = std::move(lengths);
    Json gas = Json::array();
    for (const auto& [edge, count] : gas_histogram) {
        gas.push_back(Json{{"bin_lo", edge}, {"records", count}});
    }
    out["gas_histogram"] = std::move(gas);
    return out;
}

std::string CorpusStats::to_csv() const {
    std::ostringstream out;
    out << "key,value\n";
    out << "records," << records << '\n';
    out << "duplicates_removed," << duplicates_removed << '\n';
    out << "missing_reference," << missing_reference << '\n';
    out << "code_vocab," << code_vocab << '\n';
    out << "code_vocab_words," << code_vocab_words << '\n';
    out << "code_vocab_symbols," << code_vocab_symbols << '\n';
    out << "description_vocab," << description_vocab << '\n';
    for (const auto& [edge, count] : length_histogram) {
        out << "length_bin_" << edge << ',' << count << '\n';
    }
    for (const auto& [edge, count] : gas_histogram) {
        out << "gas_bin_" << edge << ',' << count << '\n';
    }
    return out.str();
}

}  // namespace soldesc
