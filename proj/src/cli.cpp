#include <cha/cli.hpp>
#include <cha/engine.hpp>
#include <cha/error.hpp>
#include <cha/parser.hpp>
#include <cha/report.hpp>
#include <cha/transforms.hpp>

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <sstream>

namespace cha {

namespace {

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot read " + path);
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Whitespace- or comma-separated `name/arity` entries; `%` starts a comment.
std::vector<PredicateKey> read_widening_points(const std::string& path) {
    std::istringstream in(read_file(path));
    std::vector<PredicateKey> out;
    std::string line;
    while (std::getline(in, line)) {
        line = line.substr(0, line.find('%'));
        for (char& c : line) {
            if (c == ',') {
                c = ' ';
            }
        }
        std::istringstream words(line);
        std::string word;
        while (words >> word) {
            auto slash = word.rfind('/');
            if (slash == std::string::npos || slash == 0 || slash + 1 == word.size()) {
                throw ConfigError("bad widening point '" + word + "', expected name/arity");
            }
            try {
                std::size_t used = 0;
                unsigned long arity = std::stoul(word.substr(slash + 1), &used);
                if (used != word.size() - slash - 1) {
                    throw std::invalid_argument(word);
                }
                out.push_back({word.substr(0, slash), arity});
            } catch (const std::logic_error&) {
                throw ConfigError("bad widening point '" + word + "', expected name/arity");
            }
        }
    }
    return out;
}

struct Options {
    std::string file;
    std::string qa;
    std::string norm;
    unsigned delay = 0;
    unsigned narrow = 0;
    bool up_to = false;
    std::string wp = "cutloop";
    bool verbose = false;
    bool counts = false;
    bool time = false;
    std::string format = "text";
};

Program load(const Options& o) {
    Program program = parse_program(read_file(o.file));
    if (!o.norm.empty()) {
        auto norm = parse_norm(o.norm);
        if (!norm) {
            throw ConfigError("unknown norm '" + o.norm + "'");
        }
        program = size_abstract(program, *norm);
    }
    if (!o.qa.empty()) {
        program = query_answer_transform(program, parse_goal(o.qa));
    }
    return program;
}

AnalysisConfig analysis_config(const Options& o) {
    AnalysisConfig cfg;
    cfg.widen_delay = o.delay;
    cfg.narrow_iters = o.narrow;
    cfg.widen_up_to = o.up_to;
    if (o.wp == "cutloop") {
        cfg.strategy = WideningStrategy::CutLoop;
    } else if (o.wp == "feedback") {
        cfg.strategy = WideningStrategy::Feedback;
    } else if (o.wp == "none") {
        cfg.strategy = WideningStrategy::None;
        cfg.iteration_cap = 1000;
    } else if (!o.wp.empty() && o.wp[0] == '@') {
        cfg.strategy = WideningStrategy::Explicit;
        cfg.explicit_points = read_widening_points(o.wp.substr(1));
    } else {
        throw ConfigError("unknown widening point strategy '" + o.wp + "'");
    }
    return cfg;
}

int analyze_command(const Options& o, std::ostream& out) {
    auto start = std::chrono::steady_clock::now();
    Program program = load(o);
    AnalysisResult result = analyze(program, analysis_config(o));
    std::chrono::duration<double> elapsed = std::chrono::steady_clock::now() - start;

    ReportOptions report{o.verbose, o.counts, std::nullopt};
    if (o.time) {
        report.seconds = elapsed.count();
    }
    out << (o.format == "json" ? render_json(program, result, report) : render_text(program, result, report));
    return exit_ok;
}

int transform_command(const Options& o, std::ostream& out) {
    out << to_source(load(o));
    return exit_ok;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Convex polyhedral analysis of constraint logic programs", "cha"};
    app.require_subcommand(1);
    Options o;

    auto* analyze_cmd = app.add_subcommand("analyze", "Analyse a program and print its constrained atoms");
    analyze_cmd->add_option("file", o.file, "Program source")->required();
    analyze_cmd->add_option("--delay", o.delay, "Growth steps before widening starts at a widening point");
    analyze_cmd->add_option("--narrow", o.narrow, "Maximum number of narrowing passes");
    analyze_cmd->add_flag("--widen-up-to", o.up_to, "Widen up to the bounding polyhedra of the clauses");
    analyze_cmd->add_option("--wp", o.wp, "Widening points: feedback, cutloop, none or @file");
    analyze_cmd->add_option("--qa", o.qa, "Goal for the query-answer transformation");
    analyze_cmd->add_option("--norm", o.norm, "Size norm: term-size or list-length");
    analyze_cmd->add_flag("--verbose", o.verbose, "Print the fixpoint trace");
    analyze_cmd->add_flag("--show-counts", o.counts, "Print constraint and iteration counts");
    analyze_cmd->add_flag("--time", o.time, "Print the analysis time");
    analyze_cmd->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "json"}));

    auto* transform_cmd = app.add_subcommand("transform", "Print the program after the requested transformations");
    transform_cmd->add_option("file", o.file, "Program source")->required();
    transform_cmd->add_option("--qa", o.qa, "Goal for the query-answer transformation");
    transform_cmd->add_option("--norm", o.norm, "Size norm: term-size or list-length");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    }

    try {
        if (analyze_cmd->parsed()) {
            return analyze_command(o, out);
        }
        return transform_command(o, out);
    } catch (const ParseError& e) {
        err << o.file << ":" << e.what() << "\n";
        return exit_parse_error;
    } catch (const ConfigError& e) {
        err << "error: " << e.what() << "\n";
        return exit_config_error;
    } catch (const NonConvergenceError& e) {
        err << "error: " << e.what() << "\n";
        return exit_non_convergence;
    }
}

}  // namespace cha
