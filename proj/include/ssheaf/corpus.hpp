#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ssheaf/commands.hpp"

namespace ssheaf {

/// One golden regression case: a problem document, the expected report, and
/// a provenance line saying where the expected values come from
/// (definition | closed-form | oracle <how to regenerate>).
struct GoldenCase {
    std::string name;
    std::string provenance;
    std::string problemText;
    std::vector<std::string> expected;
};

inline GoldenCase loadGoldenCase(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw Error("CorpusIO", "cannot open " + file.string());
    GoldenCase c;
    std::string line;
    if (!std::getline(in, line) || line != "golden-case 1")
        throw Error("CorpusFormat", file.string() + ": bad header");
    enum { Head, Problem, Expected } state = Head;
    while (std::getline(in, line)) {
        if (state == Head) {
            auto toks = doc::splitTokens(line);
            if (toks.empty()) continue;
            if (toks[0] == "name" && toks.size() >= 2) c.name = toks[1];
            else if (toks[0] == "provenance")
                c.provenance = line.substr(std::string("provenance ").size());
            else if (line == "begin-problem") state = Problem;
            else if (line == "begin-expected") state = Expected;
            else if (line == "end") break;
            else throw Error("CorpusFormat", file.string() + ": unknown line " + line);
        } else if (state == Problem) {
            if (line == "end-problem") state = Head;
            else c.problemText += line + "\n";
        } else {
            if (line == "end-expected") state = Head;
            else c.expected.push_back(line);
        }
    }
    if (c.name.empty()) throw Error("CorpusFormat", file.string() + ": missing name");
    if (c.provenance.empty())
        throw Error("CorpusFormat", file.string() + ": missing provenance");
    auto kind = doc::splitTokens(c.provenance).at(0);
    if (kind != "definition" && kind != "closed-form" && kind != "oracle")
        throw Error("CorpusFormat", file.string() + ": unknown provenance kind " + kind);
    return c;
}

inline ReportDocument regenerate(const GoldenCase& c, const Options& opt = {}) {
    std::istringstream in(c.problemText);
    return runStream(in, opt);
}

struct CorpusResult {
    std::size_t total = 0;
    std::size_t passed = 0;
    std::vector<std::string> diffs;  // one human-readable entry per drifted case

    bool allPassed() const { return total == passed; }
};

/// Replays every *.case file in the directory and structurally diffs the
/// fresh report against the stored expectation.
inline CorpusResult verifyAll(const std::filesystem::path& dir, const Options& opt = {}) {
    CorpusResult res;
    std::vector<std::filesystem::path> files;
    for (const auto& e : std::filesystem::directory_iterator(dir))
        if (e.path().extension() == ".case") files.push_back(e.path());
    std::sort(files.begin(), files.end());
    for (const auto& f : files) {
        GoldenCase c = loadGoldenCase(f);
        ReportDocument fresh = regenerate(c, opt);
        ++res.total;
        if (fresh.lines == c.expected) {
            ++res.passed;
            continue;
        }
        std::string diff = c.name + ":";
        std::size_t n = std::max(fresh.lines.size(), c.expected.size());
        for (std::size_t i = 0; i < n; ++i) {
            std::string got = i < fresh.lines.size() ? fresh.lines[i] : "<missing>";
            std::string want = i < c.expected.size() ? c.expected[i] : "<missing>";
            if (got != want)
                diff += "\n  line " + std::to_string(i + 1) + ": expected '" + want +
                        "' got '" + got + "'";
        }
        res.diffs.push_back(diff);
    }
    return res;
}

}  // namespace ssheaf
