#pragma once

#include <istream>
#include <map>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "ssheaf/errors.hpp"
#include "ssheaf/prolongation.hpp"
#include "ssheaf/rational.hpp"
#include "ssheaf/resolution2d.hpp"
#include "ssheaf/s_sheaf.hpp"

namespace ssheaf {

// Line-delimited problem document:
//
//   ssheaf-problem 1
//   command <kind>
//   <key> <tokens...>
//   ...
//   end
//
// Rationals are integer pairs "p/q" (or a bare integer), matrices row-major.
// Unknown keys are rejected, not ignored.

enum class OracleMode { Symbolic, Numeric, Both };

struct Options {
    OracleMode oracle = OracleMode::Both;
    long long degreeBound = 12;
    std::size_t samples = 1000;
    unsigned seed = 1;
    Rat tolerance = Rat(1, 1000000);
};

namespace doc {

inline std::vector<std::string> splitTokens(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> toks;
    std::string t;
    while (is >> t) toks.push_back(t);
    return toks;
}

struct Field {
    std::string key;
    std::vector<std::string> tokens;
};

inline std::vector<Field> readFields(std::istream& in, const std::string& header,
                                     std::string& command) {
    std::string line;
    if (!std::getline(in, line) || splitTokens(line) != std::vector<std::string>{header, "1"})
        throw Error("SchemaViolation", "expected '" + header + " 1' header");
    if (!std::getline(in, line))
        throw Error("SchemaViolation", "missing command line");
    auto toks = splitTokens(line);
    if (toks.size() != 2 || toks[0] != "command")
        throw Error("SchemaViolation", "expected 'command <kind>'");
    command = toks[1];
    std::vector<Field> fields;
    while (std::getline(in, line)) {
        auto t = splitTokens(line);
        if (t.empty()) continue;
        if (t[0] == "end") return fields;
        Field f;
        f.key = t[0];
        f.tokens.assign(t.begin() + 1, t.end());
        fields.push_back(std::move(f));
    }
    throw Error("SchemaViolation", "missing 'end'");
}

class FieldReader {
  public:
    explicit FieldReader(std::vector<Field> fields) : fields_(std::move(fields)) {}

    bool has(const std::string& key) const {
        for (const auto& f : fields_)
            if (f.key == key) return true;
        return false;
    }

    const std::vector<std::string>& one(const std::string& key) {
        const std::vector<std::string>* found = nullptr;
        for (auto& f : fields_)
            if (f.key == key) {
                if (found) throw Error("SchemaViolation", "duplicate key '" + key + "'");
                found = &f.tokens;
                consumed_.push_back(&f);
            }
        if (!found) throw Error("SchemaViolation", "missing key '" + key + "'");
        return *found;
    }

    std::vector<std::vector<std::string>> all(const std::string& key) {
        std::vector<std::vector<std::string>> out;
        for (auto& f : fields_)
            if (f.key == key) {
                out.push_back(f.tokens);
                consumed_.push_back(&f);
            }
        return out;
    }

    void finish() const {
        for (const auto& f : fields_) {
            bool used = false;
            for (auto* c : consumed_) used = used || c == &f;
            if (!used) throw Error("SchemaViolation", "unknown key '" + f.key + "'");
        }
    }

  private:
    std::vector<Field> fields_;
    std::vector<const Field*> consumed_;
};

inline RatVec parseRats(const std::vector<std::string>& toks, std::size_t from = 0) {
    RatVec out;
    for (std::size_t i = from; i < toks.size(); ++i) out.push_back(Rat::parse(toks[i]));
    return out;
}

inline long long parseInt(const std::string& s) {
    Rat r = Rat::parse(s);
    if (!r.isInteger()) throw Error("SchemaViolation", "expected integer, got " + s);
    return r.num();
}

inline std::string joinRats(const RatVec& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + v[i].str();
    return s;
}

}  // namespace doc

/// Monodromy germ payload shared by prolong / ssheaf-gens.
///
///   dim 2
///   boundary 1
///   nilpotent 1 : 0 0 1 0
///   block : -1/2 : 1 0 0 1
struct MonodromyPayload {
    std::size_t dim = 0, boundary = 0;
    std::vector<std::vector<Rat>> nilpotents;  // row-major, one per axis
    struct Block {
        RatVec alpha;
        std::vector<RatVec> rows;
    };
    std::vector<Block> blocks;

    static std::vector<std::vector<std::string>> splitOnColons(
        const std::vector<std::string>& toks, std::size_t groups) {
        std::vector<std::vector<std::string>> out(1);
        for (const auto& t : toks) {
            if (t == ":") out.emplace_back();
            else out.back().push_back(t);
        }
        if (out.size() != groups)
            throw Error("SchemaViolation", "expected " + std::to_string(groups) +
                                               " ':'-separated groups");
        return out;
    }

    void parse(doc::FieldReader& r) {
        dim = (std::size_t)doc::parseInt(r.one("dim").at(0));
        boundary = (std::size_t)doc::parseInt(r.one("boundary").at(0));
        nilpotents.assign(boundary, {});
        for (const auto& toks : r.all("nilpotent")) {
            auto groups = splitOnColons(toks, 2);
            std::size_t axis = (std::size_t)doc::parseInt(groups[0].at(0));
            if (axis < 1 || axis > boundary)
                throw Error("SchemaViolation", "nilpotent axis out of range");
            nilpotents[axis - 1] = doc::parseRats(groups[1]);
            if (nilpotents[axis - 1].size() != dim * dim)
                throw Error("SchemaViolation", "nilpotent entry count");
        }
        for (const auto& toks : r.all("block")) {
            auto groups = splitOnColons(toks, 3);
            if (!groups[0].empty())
                throw Error("SchemaViolation", "block line must start with ':'");
            Block b;
            b.alpha = doc::parseRats(groups[1]);
            RatVec flat = doc::parseRats(groups[2]);
            if (flat.size() % dim != 0)
                throw Error("SchemaViolation", "block basis entry count");
            for (std::size_t i = 0; i < flat.size(); i += dim)
                b.rows.push_back(RatVec(flat.begin() + i, flat.begin() + i + dim));
            blocks.push_back(std::move(b));
        }
        if (blocks.empty()) throw Error("SchemaViolation", "no blocks given");
    }

    LocalMonodromy build() const {
        std::vector<LocalMonodromy::Block> bs;
        for (const auto& b : blocks)
            bs.push_back({b.alpha, Subspace::span(dim, b.rows)});
        std::vector<RatMatrix> ns;
        for (auto entries : nilpotents) {
            if (entries.empty()) entries.assign(dim * dim, Rat(0));
            ns.emplace_back(dim, dim, entries);
        }
        return LocalMonodromy(dim, boundary, bs, ns);
    }

    void serialize(std::vector<std::string>& out) const {
        out.push_back("dim " + std::to_string(dim));
        out.push_back("boundary " + std::to_string(boundary));
        for (std::size_t i = 0; i < nilpotents.size(); ++i) {
            if (nilpotents[i].empty()) continue;
            out.push_back("nilpotent " + std::to_string(i + 1) + " : " +
                          doc::joinRats(nilpotents[i]));
        }
        for (const auto& b : blocks) {
            RatVec flat;
            for (const auto& row : b.rows) flat.insert(flat.end(), row.begin(), row.end());
            out.push_back("block : " + doc::joinRats(b.alpha) + " : " + doc::joinRats(flat));
        }
    }
};

struct DivisorPayload {
    std::vector<std::pair<PlaneCurveGerm, Rat>> components;

    static PlaneCurveGerm parseCurve(const std::vector<std::string>& toks,
                                     std::size_t& pos) {
        const std::string& kind = toks.at(pos++);
        if (kind == "axis-z") return PlaneCurveGerm::axisZ();
        if (kind == "axis-w") return PlaneCurveGerm::axisW();
        if (kind == "smooth") return PlaneCurveGerm::smooth(Rat::parse(toks.at(pos++)));
        if (kind == "cusp") {
            long long p = doc::parseInt(toks.at(pos++));
            long long q = doc::parseInt(toks.at(pos++));
            return PlaneCurveGerm::cusp(p, q);
        }
        throw Error("UnsupportedGerm", "unknown curve kind '" + kind + "'");
    }

    void parse(doc::FieldReader& r) {
        for (const auto& toks : r.all("component")) {
            std::size_t pos = 0;
            PlaneCurveGerm c = parseCurve(toks, pos);
            if (pos + 1 != toks.size())
                throw Error("SchemaViolation", "component needs exactly one coefficient");
            components.push_back({c, Rat::parse(toks[pos])});
        }
        if (components.empty()) throw Error("SchemaViolation", "no components given");
    }

    QDivisorGerm build() const {
        QDivisorGerm a;
        for (const auto& [c, coeff] : components) a.add(c, coeff);
        return a;
    }

    static std::string curveToString(const PlaneCurveGerm& c) {
        switch (c.kind) {
            case PlaneCurveGerm::Kind::AxisZ: return "axis-z";
            case PlaneCurveGerm::Kind::AxisW: return "axis-w";
            case PlaneCurveGerm::Kind::Smooth: return "smooth " + c.smoothSlope.str();
            case PlaneCurveGerm::Kind::Cusp:
                return "cusp " + std::to_string(c.p) + " " + std::to_string(c.q);
        }
        return "?";
    }

    void serialize(std::vector<std::string>& out) const {
        for (const auto& [c, coeff] : components)
            out.push_back("component " + curveToString(c) + " " + coeff.str());
    }
};

struct PWeightfilt {
    std::size_t dim = 0;
    RatVec entries;
};
struct PProlong {
    MonodromyPayload m;
    RatVec window;
};
struct PSsheafGens {
    MonodromyPayload m;
    long weight = 0;
    std::vector<std::pair<long, std::size_t>> hodgeDims;
    std::vector<std::size_t> selector;
    RatVec twistR;
    long long twistM = 1;
};
struct PL2Test {
    long long v = 0;
    Rat a;
};
struct PCksScan {
    std::string model;
    RatVec vec;
    Rat epsilon;
};
struct PNakano {
    std::string model;
    Rat step;
};
struct PResolve {
    DivisorPayload a;
};
struct PMultIdeal {
    DivisorPayload a;
};
struct PJumpScan {
    PlaneCurveGerm curve{PlaneCurveGerm::Kind::AxisZ};
    RatVec grid;
};
struct PTameCheck {
    std::string model;
    Rat c;
};

using Payload = std::variant<PWeightfilt, PProlong, PSsheafGens, PL2Test, PCksScan,
                             PNakano, PResolve, PMultIdeal, PJumpScan, PTameCheck>;

struct ProblemDocument {
    std::string command;
    Payload payload;
};

inline ProblemDocument parseProblem(std::istream& in) {
    std::string command;
    doc::FieldReader r(doc::readFields(in, "ssheaf-problem", command));
    ProblemDocument p;
    p.command = command;
    if (command == "weightfilt") {
        PWeightfilt w;
        w.dim = (std::size_t)doc::parseInt(r.one("dim").at(0));
        w.entries = doc::parseRats(r.one("matrix"));
        if (w.entries.size() != w.dim * w.dim)
            throw Error("SchemaViolation", "matrix entry count");
        p.payload = w;
    } else if (command == "prolong") {
        PProlong q;
        q.m.parse(r);
        q.window = doc::parseRats(r.one("window"));
        p.payload = q;
    } else if (command == "ssheaf-gens") {
        PSsheafGens q;
        q.m.parse(r);
        q.weight = doc::parseInt(r.one("weight").at(0));
        for (const auto& toks : r.all("hodge"))
            q.hodgeDims.push_back({doc::parseInt(toks.at(0)),
                                   (std::size_t)doc::parseInt(toks.at(1))});
        for (const auto& t : r.one("selector"))
            q.selector.push_back((std::size_t)doc::parseInt(t));
        q.twistR = doc::parseRats(r.one("twist-r"));
        q.twistM = doc::parseInt(r.one("twist-m").at(0));
        p.payload = q;
    } else if (command == "l2-test") {
        PL2Test q;
        q.v = doc::parseInt(r.one("valuation").at(0));
        q.a = Rat::parse(r.one("weight").at(0));
        p.payload = q;
    } else if (command == "cks-scan") {
        PCksScan q;
        q.model = r.one("model").at(0);
        q.vec = doc::parseRats(r.one("vector"));
        q.epsilon = Rat::parse(r.one("epsilon").at(0));
        p.payload = q;
    } else if (command == "nakano-check") {
        PNakano q;
        q.model = r.one("model").at(0);
        q.step = Rat::parse(r.one("step").at(0));
        p.payload = q;
    } else if (command == "resolve") {
        PResolve q;
        q.a.parse(r);
        p.payload = q;
    } else if (command == "mult-ideal") {
        PMultIdeal q;
        q.a.parse(r);
        p.payload = q;
    } else if (command == "jump-scan") {
        PJumpScan q;
        auto toks = r.one("curve");
        std::size_t pos = 0;
        q.curve = DivisorPayload::parseCurve(toks, pos);
        if (pos != toks.size())
            throw Error("SchemaViolation", "trailing tokens after curve");
        q.grid = doc::parseRats(r.one("grid"));
        p.payload = q;
    } else if (command == "tame-check") {
        PTameCheck q;
        q.model = r.one("model").at(0);
        q.c = Rat::parse(r.one("exponent").at(0));
        p.payload = q;
    } else {
        throw Error("SchemaViolation", "unknown command '" + command + "'");
    }
    r.finish();
    return p;
}

/// Canonical serialization; parse(serialize(p)) round-trips byte-identically.
inline std::vector<std::string> serializeProblem(const ProblemDocument& p) {
    std::vector<std::string> out;
    out.push_back("ssheaf-problem 1");
    out.push_back("command " + p.command);
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, PWeightfilt>) {
                out.push_back("dim " + std::to_string(q.dim));
                out.push_back("matrix " + doc::joinRats(q.entries));
            } else if constexpr (std::is_same_v<T, PProlong>) {
                q.m.serialize(out);
                out.push_back("window " + doc::joinRats(q.window));
            } else if constexpr (std::is_same_v<T, PSsheafGens>) {
                q.m.serialize(out);
                out.push_back("weight " + std::to_string(q.weight));
                for (const auto& [pp, d] : q.hodgeDims)
                    out.push_back("hodge " + std::to_string(pp) + " " + std::to_string(d));
                std::string sel = "selector";
                for (auto i : q.selector) sel += " " + std::to_string(i);
                out.push_back(sel);
                out.push_back("twist-r " + doc::joinRats(q.twistR));
                out.push_back("twist-m " + std::to_string(q.twistM));
            } else if constexpr (std::is_same_v<T, PL2Test>) {
                out.push_back("valuation " + std::to_string(q.v));
                out.push_back("weight " + q.a.str());
            } else if constexpr (std::is_same_v<T, PCksScan>) {
                out.push_back("model " + q.model);
                out.push_back("vector " + doc::joinRats(q.vec));
                out.push_back("epsilon " + q.epsilon.str());
            } else if constexpr (std::is_same_v<T, PNakano>) {
                out.push_back("model " + q.model);
                out.push_back("step " + q.step.str());
            } else if constexpr (std::is_same_v<T, PResolve>) {
                q.a.serialize(out);
            } else if constexpr (std::is_same_v<T, PMultIdeal>) {
                q.a.serialize(out);
            } else if constexpr (std::is_same_v<T, PJumpScan>) {
                out.push_back("curve " + DivisorPayload::curveToString(q.curve));
                out.push_back("grid " + doc::joinRats(q.grid));
            } else if constexpr (std::is_same_v<T, PTameCheck>) {
                out.push_back("model " + q.model);
                out.push_back("exponent " + q.c.str());
            }
        },
        p.payload);
    out.push_back("end");
    return out;
}

}  // namespace ssheaf
