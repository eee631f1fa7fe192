// Batch front end: reads one problem document, dispatches to the library,
// writes one report document.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "ssheaf/commands.hpp"

namespace {

const std::vector<std::string> kCommands = {
    "weightfilt", "prolong",  "ssheaf-gens", "l2-test",   "cks-scan",
    "nakano-check", "resolve", "mult-ideal",  "jump-scan", "tame-check"};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"local-model computations for twisted Hodge-theoretic S-sheaves"};
    app.require_subcommand(1);

    std::string inputPath, outputPath;
    std::string oracleMode = "both";
    ssheaf::Options opt;
    std::string tolerance = "1/1000000";

    for (const auto& name : kCommands) {
        auto* sub = app.add_subcommand(name);
        sub->add_option("--input", inputPath, "problem document (default stdin)");
        sub->add_option("--output", outputPath, "report destination (default stdout)");
        sub->add_option("--oracle", oracleMode, "symbolic | numeric | both")
            ->check(CLI::IsMember({"symbolic", "numeric", "both"}));
        sub->add_option("--degree-bound", opt.degreeBound, "monomial degree bound");
        sub->add_option("--samples", opt.samples, "sample count for numeric scans");
        sub->add_option("--seed", opt.seed, "sample-grid jitter seed");
        sub->add_option("--tolerance", tolerance, "numeric tolerance (rational)");
    }

    CLI11_PARSE(app, argc, argv);
    const std::string command = app.get_subcommands().front()->get_name();

    if (oracleMode == "symbolic") opt.oracle = ssheaf::OracleMode::Symbolic;
    else if (oracleMode == "numeric") opt.oracle = ssheaf::OracleMode::Numeric;
    else opt.oracle = ssheaf::OracleMode::Both;
    try {
        opt.tolerance = ssheaf::Rat::parse(tolerance);
    } catch (const std::exception& e) {
        std::cerr << "bad --tolerance: " << e.what() << "\n";
        return 2;
    }

    std::ifstream inFile;
    if (!inputPath.empty()) {
        inFile.open(inputPath);
        if (!inFile) {
            std::cerr << "cannot open " << inputPath << "\n";
            return 2;
        }
    }
    std::istream& in = inputPath.empty() ? std::cin : inFile;

    ssheaf::ReportDocument rep;
    try {
        ssheaf::ProblemDocument p = ssheaf::parseProblem(in);
        if (p.command != command) {
            std::cerr << "document command '" << p.command
                      << "' does not match subcommand '" << command << "'\n";
            return 2;
        }
        rep = ssheaf::runProblem(p, opt);
    } catch (const ssheaf::Error& e) {
        rep.ok = false;
        rep.lines = {"ssheaf-report 1", "command " + command, "status error",
                     "kind " + e.kind(), "message " + std::string(e.what()), "end"};
    }

    if (outputPath.empty()) {
        std::cout << rep.text();
    } else {
        std::ofstream out(outputPath);
        if (!out) {
            std::cerr << "cannot open " << outputPath << "\n";
            return 2;
        }
        out << rep.text();
    }
    return rep.ok ? 0 : 1;
}
