// Command-line front end: translate Solidity ASTs into inline-comment
// sentences, evaluate generated comments against a reference corpus, and
// report corpus statistics.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "soldesc/pipeline.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitInput = 2;
constexpr int kExitConfig = 3;

std::filesystem::path default_data_dir(const char* argv0) {
    // data/ next to the binary's parent (installed layout) or the source tree
    const std::filesystem::path self(argv0);
    for (const std::filesystem::path base :
         {self.parent_path(), self.parent_path().parent_path(),
          self.parent_path().parent_path().parent_path()}) {
        if (std::filesystem::exists(base / "data" / "grammar.cfg")) {
            return base / "data";
        }
    }
    return std::filesystem::path("data");
}

void write_output(const std::string& text, const std::optional<std::string>& out_path) {
    if (!out_path) {
        std::cout << text;
        if (!text.empty() && text.back() != '\n') std::cout << '\n';
        return;
    }
    std::ofstream out(*out_path, std::ios::binary);
    if (!out) {
        throw soldesc::IoError("cannot write output file: " + *out_path);
    }
    out << text;
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream stream(path, std::ios::binary);
    if (!stream) {
        throw soldesc::IoError("cannot open file: " + path.string());
    }
    std::ostringstream buffer;
    buffer << stream.rdbuf();
    return buffer.str();
}

}  // namespace

int main(int argc, char** argv) {
    using namespace soldesc;

    CLI::App app{"soldesc: plain-English descriptions for Solidity statements"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("--config", config_path, "JSON config file with data-file paths");

    auto* translate = app.add_subcommand("translate", "translate a contract into sentences");
    std::string translate_input;
    std::optional<std::string> translate_out;
    std::string translate_format = "json";
    std::optional<std::string> translate_source;
    std::optional<std::string> gas_file;
    bool trailing_comments = false;
    translate->add_option("input", translate_input, "AST JSON file or .sol source")->required();
    translate->add_option("--out", translate_out, "output file (stdout otherwise)");
    translate->add_option("--format", translate_format, "json | annotated | text")
        ->check(CLI::IsMember({"json", "annotated", "text"}));
    translate->add_option("--source", translate_source, "source file for annotated output");
    translate->add_option("--gas", gas_file, "sidecar gas file {\"function\": gwei}");
    translate->add_flag("--trailing", trailing_comments, "place comments after the statement");

    auto* eval = app.add_subcommand("eval", "score a JSON-lines corpus");
    std::string eval_corpus;
    std::optional<std::string> eval_report;
    eval->add_option("corpus", eval_corpus, "JSON-lines corpus file")->required();
    eval->add_option("--report", eval_report, "write the CSV report here (stdout otherwise)");

    auto* stats = app.add_subcommand("stats", "corpus statistics");
    std::string stats_corpus;
    std::string stats_format = "json";
    stats->add_option("corpus", stats_corpus, "JSON-lines corpus file")->required();
    stats->add_option("--format", stats_format, "json | csv")
        ->check(CLI::IsMember({"json", "csv"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& error) {
        const int code = app.exit(error);
        return code == 0 ? kExitOk : kExitUsage;
    }

    RunConfig config;
    try {
        config = config_path.empty() ? RunConfig::defaults(default_data_dir(argv[0]))
                                     : RunConfig::from_file(config_path);
    } catch (const Error& error) {
        std::cerr << "config error: " << error.what() << '\n';
        return kExitConfig;
    }

    try {
        const Pipeline pipeline = Pipeline::load(config);

        if (translate->parsed()) {
            AstTree tree;
            const std::filesystem::path input(translate_input);
            if (input.extension() == ".sol") {
                if (!config.compiler) {
                    std::cerr << "config error: .sol input needs a configured compiler\n";
                    return kExitConfig;
                }
                tree = parse_ast(run_compiler(*config.compiler, input));
                tree.source_text = read_file(input);
            } else {
                tree = parse_ast(read_file(input));
                if (translate_source) tree.source_text = read_file(*translate_source);
            }
            if (gas_file) {
                const Json gas = Json::parse(read_file(*gas_file));
                for (const auto& [name, value] : gas.items()) {
                    if (value.is_number_integer()) {
                        tree.gas_annotations[name] = value.get<std::int64_t>();
                    }
                }
            }
            const TranslationOutput output = pipeline.translate(tree);
            std::cerr << "translated " << output.entries.size() << " statement(s) in "
                      << output.duration_ms << " ms\n";
            for (const Diagnostic& diag : output.diagnostics) {
                std::cerr << "diagnostic: node " << diag.node_id << " (" << diag.node_type << ", "
                          << diag.src.to_string() << "): " << diag.message << '\n';
            }
            if (translate_format == "json") {
                write_output(output.to_json().dump(1) + "\n", translate_out);
            } else if (translate_format == "text") {
                write_output(output.to_text(), translate_out);
            } else {
                if (!tree.source_text) {
                    std::cerr << "input error: annotated output needs the source (--source)\n";
                    return kExitInput;
                }
                write_output(annotate_source(*tree.source_text, output.entries, trailing_comments),
                             translate_out);
            }
            return kExitOk;
        }

        if (eval->parsed()) {
            const CorpusLoadResult corpus = load_corpus(eval_corpus);
            for (const std::string& warning : corpus.warnings) {
                std::cerr << "corpus warning: " << warning << '\n';
            }
            const CorpusEvalResult result = pipeline.evaluate(corpus.records);
            for (const std::string& warning : result.warnings) {
                std::cerr << "eval warning: " << warning << '\n';
            }
            write_output(result.report.to_csv(), eval_report);
            return kExitOk;
        }

        if (stats->parsed()) {
            const CorpusLoadResult corpus = load_corpus(stats_corpus);
            for (const std::string& warning : corpus.warnings) {
                std::cerr << "corpus warning: " << warning << '\n';
            }
            std::vector<std::string> warnings;
            const CorpusStats result = compute_stats(corpus.records, warnings,
                                                     config.length_bin_width, config.gas_bin_width);
            for (const std::string& warning : warnings) {
                std::cerr << "stats warning: " << warning << '\n';
            }
            write_output(stats_format == "csv" ? result.to_csv() : result.to_json().dump(1) + "\n",
                         std::nullopt);
            return kExitOk;
        }
    } catch (const ConfigError& error) {
        std::cerr << "config error: " << error.what() << '\n';
        return kExitConfig;
    } catch (const CompilerUnavailable& error) {
        std::cerr << "config error: " << error.what() << '\n';
        return kExitConfig;
    } catch (const Error& error) {
        std::cerr << "error: " << error.what() << '\n';
        return kExitInput;
    }
    return kExitUsage;
}
