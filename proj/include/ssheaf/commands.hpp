#pragma once

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "ssheaf/cks_models.hpp"
#include "ssheaf/cli_doc.hpp"
#include "ssheaf/l2_oracle.hpp"
#include "ssheaf/resolution2d.hpp"
#include "ssheaf/s_sheaf.hpp"
#include "ssheaf/weight_filtration.hpp"

namespace ssheaf {

struct ReportDocument {
    bool ok = true;
    std::vector<std::string> lines;

    std::string text() const {
        std::string out;
        for (const auto& l : lines) out += l + "\n";
        return out;
    }
};

namespace detail {

inline std::string fmt(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

inline std::string trendName(Trend t) {
    switch (t) {
        case Trend::Convergent: return "CONVERGENT";
        case Trend::Divergent: return "DIVERGENT";
        default: return "INDETERMINATE";
    }
}

}  // namespace detail

inline ReportDocument runProblem(const ProblemDocument& p, const Options& opt) {
    ReportDocument rep;
    rep.lines.push_back("ssheaf-report 1");
    rep.lines.push_back("command " + p.command);
    auto body = [&]() {
        rep.lines.push_back("status ok");
        rep.lines.push_back("begin-input");
        for (const auto& l : serializeProblem(p)) rep.lines.push_back(l);
        rep.lines.push_back("end-input");
    };

    try {
        if (const auto* q = std::get_if<PWeightfilt>(&p.payload)) {
            Filtration f = weightFiltration(RatMatrix(q->dim, q->dim, q->entries));
            body();
            for (long l : f.jumps()) {
                const Subspace& w = f.at(l);
                rep.lines.push_back("level " + std::to_string(l) + " dim " +
                                    std::to_string(w.dim()));
                for (const auto& row : w.basis())
                    rep.lines.push_back("row " + std::to_string(l) + " : " +
                                        doc::joinRats(row));
            }
        } else if (const auto* q = std::get_if<PProlong>(&p.payload)) {
            LocalMonodromy m = q->m.build();
            ProlongedBasis b = deligneBasis(m, q->window);
            body();
            for (std::size_t j = 0; j < b.generators().size(); ++j) {
                const auto& g = b.generators()[j];
                rep.lines.push_back("gen " + std::to_string(j) + " : block " +
                                    std::to_string(g.blockIndex) + " : beta " +
                                    doc::joinRats(g.beta) + " : v " +
                                    doc::joinRats(g.flatVector));
            }
            for (std::size_t i = 0; i < m.boundaryCount(); ++i)
                rep.lines.push_back("spectrum " + std::to_string(i + 1) + " : " +
                                    doc::joinRats(residueSpectrum(b, i)));
            rep.lines.push_back(std::string("consistency ") +
                                (monodromyConsistency(b, m) ? "true" : "false"));
        } else if (const auto* q = std::get_if<PSsheafGens>(&p.payload)) {
            LocalMonodromy m = q->m.build();
            std::map<long, std::size_t> dims(q->hodgeDims.begin(), q->hodgeDims.end());
            HodgeFiberData h(q->weight, dims, q->selector);
            TwistSpec t(q->twistR, q->twistM);
            if (t.r.size() != m.boundaryCount())
                throw dimensionMismatch("twist coefficients per boundary axis");
            ProlongedBasis b = rLattice(m, h);
            body();
            rep.lines.push_back(std::string("positivity ") +
                                (validateLimitPositivity(m, h) ? "true" : "false"));
            auto shifts = twistedExponents(b, t);
            for (std::size_t j = 0; j < shifts.size(); ++j) {
                std::string s = "shift " + std::to_string(j) + " :";
                for (auto v : shifts[j]) s += " " + std::to_string(v);
                rep.lines.push_back(s);
            }
            for (const auto& d : generatorReport(b, t))
                rep.lines.push_back(d.render());
            rep.lines.push_back("note flat-basis-orthogonality-assumed");
        } else if (const auto* q = std::get_if<PL2Test>(&p.payload)) {
            bool sym = isIntegrable1d(q->v, q->a);
            body();
            if (opt.oracle != OracleMode::Numeric)
                rep.lines.push_back(std::string("symbolic ") + (sym ? "true" : "false"));
            if (opt.oracle != OracleMode::Symbolic) {
                QuadratureResult num = numericIntegral(q->v, q->a);
                rep.lines.push_back("numeric " + detail::trendName(num.trend) +
                                    " value " + detail::fmt(num.value));
                if (opt.oracle == OracleMode::Both) {
                    bool boundary = Rat(q->v) + q->a == Rat(-1);
                    if (num.trend == Trend::Indeterminate) {
                        if (!boundary)
                            throw Error("OracleDisagreement",
                                        "indeterminate quadrature off the boundary");
                        rep.lines.push_back("verdict boundary");
                    } else if ((num.trend == Trend::Convergent) != sym) {
                        throw Error("OracleDisagreement",
                                    "symbolic and numeric verdicts differ");
                    } else {
                        rep.lines.push_back("verdict agree");
                    }
                }
            }
        } else if (const auto* q = std::get_if<PCksScan>(&p.payload)) {
            OrbitModel model = models::byId(q->model);
            auto levels = gradedLevels(model, q->vec);
            RatioScan scan = cksRatioScan(model, q->vec, q->epsilon.toDouble(),
                                          opt.samples, opt.seed);
            body();
            std::string ls = "levels";
            for (auto l : levels) ls += " " + std::to_string(l);
            rep.lines.push_back(ls);
            rep.lines.push_back("min-ratio " + detail::fmt(scan.minRatio));
            rep.lines.push_back("max-ratio " + detail::fmt(scan.maxRatio));
            rep.lines.push_back("spread " + detail::fmt(scan.maxRatio / scan.minRatio));
        } else if (const auto* q = std::get_if<PNakano>(&p.payload)) {
            OrbitModel model = models::byId(q->model);
            std::vector<CPoint> grid;
            for (int i = 0; i < 5; ++i) {
                double r = std::exp(-3.0 + 0.5 * i);
                grid.push_back(CPoint(model.boundaryCount, std::polar(r, 0.4)));
            }
            NakanoResult res = nakanoCheck(model, grid, q->step.toDouble());
            body();
            rep.lines.push_back("min-eigenvalue " + detail::fmt(res.minEigenvalue));
        } else if (const auto* q = std::get_if<PResolve>(&p.payload)) {
            QDivisorGerm a = q->a.build();
            BlowupSequence s = logResolve(a);
            body();
            rep.lines.push_back("blowups " + std::to_string(s.size()));
            for (std::size_t k = 0; k < s.size(); ++k) {
                const auto& e = s.divisors()[k];
                std::string parents;
                for (auto pi : e.parents) parents += " " + std::to_string(pi + 1);
                Rat total(0);
                for (const auto& [germ, coeff] : a.components)
                    total += coeff * Rat(ordExc(e, germ));
                rep.lines.push_back("exceptional " + std::to_string(k + 1) + " : ord-z " +
                                    std::to_string(e.vz) + " ord-w " +
                                    std::to_string(e.vw) + " : discrepancy " +
                                    std::to_string(e.discrepancy()) + " : pullback " +
                                    total.str() + " : parents" + parents);
            }
        } else if (const auto* q = std::get_if<PMultIdeal>(&p.payload)) {
            QDivisorGerm a = q->a.build();
            BlowupSequence s = logResolve(a);
            PushforwardIdeal ideal = pushforwardIdeal(s, a, opt.degreeBound);
            body();
            for (const auto& c : ideal.conditions) {
                if (c.exceptional)
                    rep.lines.push_back("condition exceptional " + std::to_string(c.vz) +
                                        " " + std::to_string(c.vw) + " bound " +
                                        std::to_string(c.bound));
                else
                    rep.lines.push_back("condition strict " +
                                        DivisorPayload::curveToString(c.curve) +
                                        " bound " + std::to_string(c.bound));
            }
            rep.lines.push_back(std::string("unit-ideal ") +
                                (ideal.table.isUnitIdeal() ? "true" : "false"));
            for (const auto& [i, j] : ideal.table.members)
                rep.lines.push_back("member " + std::to_string(i) + " " +
                                    std::to_string(j));
        } else if (const auto* q = std::get_if<PJumpScan>(&p.payload)) {
            JumpScan scan = jumpingScan(q->curve, q->grid, opt.degreeBound);
            body();
            for (const auto& [c, table] : scan.tables)
                rep.lines.push_back("size " + c.str() + " " +
                                    std::to_string(table.members.size()));
            for (const auto& c : scan.jumps)
                rep.lines.push_back("jump " + c.str());
        } else if (const auto* q = std::get_if<PTameCheck>(&p.payload)) {
            OrbitModel model = models::byId(q->model);
            std::size_t rank = model.rank;
            MetricSampler identity = [rank](const CPoint&) {
                CMat h(rank, std::vector<Cplx>(rank, Cplx(0.0)));
                for (std::size_t i = 0; i < rank; ++i) h[i][i] = 1.0;
                return h;
            };
            std::vector<ScalarField> gens;
            for (std::size_t i = 0; i < model.boundaryCount; ++i)
                gens.push_back([i](const CPoint& z) { return z[i]; });
            TamenessReport t = tamenessCheck(
                identity, [&](const CPoint& z) { return metricAt(model, z); }, gens,
                q->c, model.boundaryCount);
            body();
            rep.lines.push_back(std::string("tame ") + (t.tame ? "true" : "false"));
            rep.lines.push_back("constant " + detail::fmt(t.constant));
        }
    } catch (const Error& e) {
        ReportDocument err;
        err.ok = false;
        err.lines.push_back("ssheaf-report 1");
        err.lines.push_back("command " + p.command);
        err.lines.push_back("status error");
        err.lines.push_back("kind " + e.kind());
        err.lines.push_back("message " + std::string(e.what()));
        err.lines.push_back("end");
        return err;
    } catch (const std::exception& e) {
        ReportDocument err;
        err.ok = false;
        err.lines.push_back("ssheaf-report 1");
        err.lines.push_back("command " + p.command);
        err.lines.push_back("status error");
        err.lines.push_back("kind InternalError");
        err.lines.push_back("message " + std::string(e.what()));
        err.lines.push_back("end");
        return err;
    }
    rep.lines.push_back("end");
    return rep;
}

/// Runs a problem read from a stream; report embeds the normalized input.
inline ReportDocument runStream(std::istream& in, const Options& opt) {
    try {
        return runProblem(parseProblem(in), opt);
    } catch (const Error& e) {
        ReportDocument err;
        err.ok = false;
        err.lines = {"ssheaf-report 1", "command unknown", "status error",
                     "kind " + e.kind(), "message " + std::string(e.what()), "end"};
        return err;
    }
}

}  // namespace ssheaf
