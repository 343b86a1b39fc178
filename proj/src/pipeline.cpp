#include "soldesc/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace soldesc {

RunConfig RunConfig::defaults(const std::filesystem::path& data_dir) {
    RunConfig config;
    config.grammar = data_dir / "grammar.cfg";
    config.lexicon = data_dir / "lexicon.tsv";
    config.templates = data_dir / "templates.tsv";
    config.operators = data_dir / "operators.tsv";
    if (std::filesystem::exists(data_dir / "treebank.txt")) {
        config.treebank = data_dir / "treebank.txt";
    }
    if (std::filesystem::exists(data_dir / "synonyms.tsv")) {
        config.synonyms = data_dir / "synonyms.tsv";
    }
    return config;
}

RunConfig RunConfig::from_file(const std::filesystem::path& path) {
    std::ifstream stream(path);
    if (!stream) {
        throw ConfigError("cannot open config file: " + path.string());
    }
    Json object;
    try {
        object = Json::parse(stream);
    } catch (const nlohmann::json::parse_error& error) {
        throw ConfigError("config file " + path.string() + ": " + error.what());
    }
    const std::filesystem::path base = path.parent_path();
    const auto resolve = [&base](const std::string& value) {
        std::filesystem::path p(value);
        return p.is_absolute() ? p : base / p;
    };
    RunConfig config;
    const auto required = [&](const char* key) {
        if (!object.contains(key) || !object[key].is_string()) {
            throw ConfigError("config file: missing path '" + std::string(key) + "'");
        }
        return resolve(object[key].get<std::string>());
    };
    config.grammar = required("grammar");
    config.lexicon = required("lexicon");
    config.templates = required("templates");
    config.operators = required("operators");
    const auto optional = [&](const char* key) -> std::optional<std::filesystem::path> {
        if (object.contains(key) && object[key].is_string()) {
            return resolve(object[key].get<std::string>());
        }
        return std::nullopt;
    };
    config.treebank = optional("treebank");
    config.synonyms = optional("synonyms");
    config.compiler = optional("compiler");
    if (object.contains("length_bin_width") && object["length_bin_width"].is_number()) {
        config.length_bin_width = object["length_bin_width"].get<double>();
    }
    if (object.contains("gas_bin_width") && object["gas_bin_width"].is_number()) {
        config.gas_bin_width = object["gas_bin_width"].get<double>();
    }
    return config;
}

struct Pipeline::Components {
    RunConfig config;
    Lexicon lexicon;
    TemplateSet templates;
    OperatorMap operators;
    PcfgModel model;
    SynonymTable synonyms;
    Translator translator;
    Realizer realizer;

    Components(RunConfig cfg, Lexicon lex, TemplateSet tmpl, OperatorMap ops, PcfgModel mdl,
               SynonymTable syn)
        : config(std::move(cfg)),
          lexicon(std::move(lex)),
          templates(std::move(tmpl)),
          operators(std::move(ops)),
          model(std::move(mdl)),
          synonyms(std::move(syn)),
          translator(templates, lexicon, operators),
          realizer(model, lexicon) {}
};

Pipeline::Pipeline(std::shared_ptr<const Components> components)
    : components_(std::move(components)) {}

Pipeline Pipeline::load(const RunConfig& config) {
    try {
        Lexicon lexicon = Lexicon::from_file(config.lexicon);
        TemplateSet templates = TemplateSet::from_file(config.templates);
        OperatorMap operators = OperatorMap::from_file(config.operators);
        Grammar grammar = Grammar::from_file(config.grammar);
        PcfgModel model = config.treebank
                              ? PcfgModel::estimate(grammar, load_treebank(*config.treebank))
                              : PcfgModel::uniform(grammar);
        SynonymTable synonyms =
            config.synonyms ? SynonymTable::from_file(*config.synonyms) : SynonymTable();
        return Pipeline(std::make_shared<const Components>(config, std::move(lexicon),
                                                           std::move(templates), std::move(operators),
                                                           std::move(model), std::move(synonyms)));
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& error) {
        throw ConfigError(std::string("configuration failed to load: ") + error.what());
    }
}

const Lexicon& Pipeline::lexicon() const { return components_->lexicon; }
const PcfgModel& Pipeline::model() const { return components_->model; }
const TemplateSet& Pipeline::templates() const { return components_->templates; }
const SynonymTable& Pipeline::synonyms() const { return components_->synonyms; }
const RunConfig& Pipeline::config() const { return components_->config; }

TranslationOutput Pipeline::translate(const AstTree& tree) const {
    const auto started = std::chrono::steady_clock::now();
    TranslationOutput output;
    AstTree prepared = preprocess(tree);
    TranslateResult translated = components_->translator.translate_tree(prepared);
    output.diagnostics = std::move(translated.diagnostics);
    for (const StatementPhrase& stmt : translated.statements) {
        RealizeResult realized = components_->realizer.realize(stmt.phrase);
        if (realized.text.empty()) continue;
        OutputEntry entry;
        entry.src = stmt.phrase.src;
        entry.container = stmt.container;
        entry.sentence = std::move(realized.text);
        entry.fallback = realized.fallback;
        output.entries.push_back(std::move(entry));
    }
    const auto finished = std::chrono::steady_clock::now();
    output.duration_ms =
        std::chrono::duration_cast<std::chrono::duration<double, std::milli>>(finished - started)
            .count();
    return output;
}

TranslationOutput Pipeline::translate_json_text(std::string_view ast_json,
                                                std::optional<std::string> source_text) const {
    AstTree tree = parse_ast(ast_json);
    tree.source_text = std::move(source_text);
    return translate(tree);
}

TranslationOutput Pipeline::translate_file(const std::filesystem::path& input) const {
    std::ifstream stream(input);
    if (!stream) {
        throw IoError("cannot open input file: " + input.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    if (input.extension() == ".sol") {
        if (!components_->config.compiler) {
            throw CompilerUnavailable(
                "translating .sol sources requires a configured compiler binary");
        }
        const std::string ast_json = run_compiler(*components_->config.compiler, input);
        return translate_json_text(ast_json, buffer.str());
    }
    return translate_json_text(buffer.str());
}

Json TranslationOutput::to_json() const {
    Json out;
    Json entry_list = Json::array();
    for (const OutputEntry& entry : entries) {
        Json item;
        item["src"] = entry.src.to_string();
        item["container"] = entry.container;
        item["sentence"] = entry.sentence;
        item["fallback"] = entry.fallback;
        entry_list.push_back(std::move(item));
    }
    out["entries"] = std::move(entry_list);
    Json diag_list = Json::array();
    for (const Diagnostic& diag : diagnostics) {
        Json item;
        item["node_id"] = diag.node_id;
        item["node_type"] = diag.node_type;
        item["src"] = diag.src.to_string();
        item["message"] = diag.message;
        diag_list.push_back(std::move(item));
    }
    out["diagnostics"] = std::move(diag_list);
    return out;
}

std::string TranslationOutput::to_text() const {
    std::ostringstream out;
    for (const OutputEntry& entry : entries) {
        out << entry.src.to_string() << '\t' << entry.sentence << '\n';
    }
    return out.str();
}

std::string annotate_source(const std::string& source, const std::vector<OutputEntry>& entries,
                            bool trailing) {
    // line start offset and indentation for every entry, then splice
    std::vector<std::pair<std::size_t, std::string>> insertions;  // (offset, comment line)
    for (const OutputEntry& entry : entries) {
        if (entry.src.offset > source.size()) continue;
        std::size_t line_start = source.rfind('\n', entry.src.offset == 0 ? 0 : entry.src.offset - 1);
        line_start = line_start == std::string::npos ? 0 : line_start + 1;
        std::string indent;
        for (std::size_t k = line_start; k < source.size() && (source[k] == ' ' || source[k] == '\t');
             ++k) {
            indent += source[k];
        }
        if (trailing) {
            std::size_t line_end = source.find('\n', entry.src.offset);
            if (line_end == std::string::npos) line_end = source.size();
            insertions.emplace_back(line_end + 1, indent + "// " + entry.sentence + "\n");
        } else {
            insertions.emplace_back(line_start, indent + "// " + entry.sentence + "\n");
        }
    }
    std::stable_sort(insertions.begin(), insertions.end(),
                     [](const auto& a, const auto& b) { return a.first < b.first; });
    std::string out;
    out.reserve(source.size() + insertions.size() * 64);
    std::size_t cursor = 0;
    for (const auto& [offset, text] : insertions) {
        const std::size_t bounded = std::min(offset, source.size());
        out.append(source, cursor, bounded - cursor);
        out += text;
        cursor = bounded;
    }
    out.append(source, cursor, source.size() - cursor);
    return out;
}

CorpusEvalResult Pipeline::evaluate(const std::vector<CorpusRecord>& records) const {
    CorpusEvalResult result;
    std::size_t index = 0;
    for (const CorpusRecord& record : records) {
        ++index;
        AstTree tree;
        if (record.ast) {
            try {
                tree = parse_ast_json(*record.ast);
            } catch (const Error& error) {
                result.warnings.push_back("record " + std::to_string(index) + ": " + error.what());
                continue;
            }
        } else if (components_->config.compiler) {
            const std::filesystem::path temp =
                std::filesystem::temp_directory_path() /
                ("soldesc_snippet_" + std::to_string(index) + ".sol");
            std::ofstream out(temp);
            out << record.code;
            out.close();
            try {
                tree = parse_ast(run_compiler(*components_->config.compiler, temp));
            } catch (const Error& error) {
                std::filesystem::remove(temp);
                result.warnings.push_back("record " + std::to_string(index) + ": " + error.what());
                continue;
            }
            std::filesystem::remove(temp);
        } else {
            result.warnings.push_back("record " + std::to_string(index) +
                                      ": no embedded AST and no compiler configured, skipped");
            continue;
        }
        TranslationOutput output = translate(tree);
        std::string candidate;
        bool fallback = false;
        for (const OutputEntry& entry : output.entries) {
            if (!record.focus.empty() && entry.container != record.focus) continue;
            if (!candidate.empty()) candidate += ' ';
            candidate += entry.sentence;
            fallback = fallback || entry.fallback;
        }
        if (candidate.empty()) {
            result.warnings.push_back("record " + std::to_string(index) +
                                      ": produced no sentences, skipped");
            continue;
        }
        EvalRecord eval;
        eval.candidate = std::move(candidate);
        eval.reference = record.reference;
        eval.snippet_tokens = count_code_tokens(record.code);
        eval.gas_gwei = record.gas_gwei;
        eval.fallback = fallback;
        result.records.push_back(std::move(eval));
    }
    if (result.records.empty()) {
        throw EmptyCorpus("no scorable records in the corpus");
    }
    double max_len = 0.0;
    double max_gas = 0.0;
    for (const EvalRecord& record : result.records) {
        max_len = std::max(max_len, static_cast<double>(record.snippet_tokens));
        if (record.gas_gwei) max_gas = std::max(max_gas, static_cast<double>(*record.gas_gwei));
    }
    const std::vector<double> length_edges =
        uniform_bin_edges(components_->config.length_bin_width, max_len);
    const std::vector<double> gas_edges = uniform_bin_edges(components_->config.gas_bin_width, max_gas);
    result.report = binned_report(result.records, length_edges, gas_edges, components_->synonyms);
    return result;
}

std::string run_compiler(const std::filesystem::path& compiler, const std::filesystem::path& input) {
    const std::string command = compiler.string() + " --ast-compact-json " + input.string() + " 2>/dev/null";
    FILE* pipe = popen(command.c_str(), "r");
    if (pipe == nullptr) {
        throw CompilerUnavailable("cannot run compiler: " + compiler.string());
    }
    std::string output;
    char buffer[4096];
    std::size_t n = 0;
    while ((n = fread(buffer, 1, sizeof(buffer), pipe)) > 0) {
        output.append(buffer, n);
    }
    const int status = pclose(pipe);
    if (status != 0) {
        throw CompilerUnavailable("compiler exited with status " + std::to_string(status));
    }
    const std::size_t brace = output.find('{');
    if (brace == std::string::npos) {
        throw MalformedJson("compiler produced no JSON document");
    }
    return output.substr(brace);
}

}  // namespace soldesc
