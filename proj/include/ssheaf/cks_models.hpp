#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "ssheaf/errors.hpp"
#include "ssheaf/l2_oracle.hpp"
#include "ssheaf/prolongation.hpp"
#include "ssheaf/weight_filtration.hpp"

namespace ssheaf {

using CMat = std::vector<std::vector<Cplx>>;

/// Closed-form nilpotent-orbit Hodge metric with its monodromy germ.
/// The metric evaluator works in the flat frame; the first boundaryCount
/// coordinates of a point are the puncture variables.
struct OrbitModel {
    std::string id;
    std::size_t rank;
    std::size_t boundaryCount;
    std::function<CMat(const CPoint&)> metric;
    LocalMonodromy monodromy;
    std::vector<std::size_t> sSelector;  // frame indices spanning S(V)
};

inline CMat metricAt(const OrbitModel& model, const CPoint& point) {
    if (point.size() < model.boundaryCount)
        throw dimensionMismatch("point has too few coordinates");
    for (std::size_t i = 0; i < model.boundaryCount; ++i)
        if (std::abs(point[i]) == 0.0)
            throw Error("PointOnBoundary", "metric undefined on the divisor");
    return model.metric(point);
}

namespace models {

inline OrbitModel trivial() {
    return {"trivial", 1, 1,
            [](const CPoint&) { return CMat{{Cplx(1.0)}}; },
            LocalMonodromy::trivial(1),
            {0}};
}

inline RatMatrix tateNilpotent() {
    // N v1 = v2, N v2 = 0: v1 sits at graded level +1, v2 at -1.
    RatMatrix n(2, 2);
    n.at(1, 0) = Rat(1);
    return n;
}

inline LocalMonodromy tateMonodromy(const Rat& alpha) {
    LocalMonodromy::Block b{{alpha}, Subspace::full(2)};
    return LocalMonodromy(2, 1, {b}, {tateNilpotent()});
}

/// Rank-2 weight-1 unipotent orbit: diag(-log|s|/pi, pi/(-log|s|)).
inline OrbitModel tate() {
    return {"tate", 2, 1,
            [](const CPoint& z) {
                double u = -std::log(std::abs(z[0])) / M_PI;
                return CMat{{Cplx(u), Cplx(0.0)}, {Cplx(0.0), Cplx(1.0 / u)}};
            },
            tateMonodromy(Rat(0)),
            {0}};
}

/// Tate orbit tensored by a rank-1 unitary system with alpha = -1/2; the
/// flat-frame metric is unchanged, only the residue data moves.
inline OrbitModel tateHalf() {
    OrbitModel m = tate();
    m.id = "tate-half";
    m.monodromy = tateMonodromy(Rat(-1, 2));
    return m;
}

/// Two-variable product of two Tate orbits, frame v_i x v_j in row-major
/// order (11, 12, 21, 22).
inline OrbitModel tateProduct() {
    RatMatrix n1(4, 4), n2(4, 4);
    n1.at(2, 0) = Rat(1);  // N x I
    n1.at(3, 1) = Rat(1);
    n2.at(1, 0) = Rat(1);  // I x N
    n2.at(3, 2) = Rat(1);
    LocalMonodromy::Block b{{Rat(0), Rat(0)}, Subspace::full(4)};
    return {"tate-product", 4, 2,
            [](const CPoint& z) {
                double u1 = -std::log(std::abs(z[0])) / M_PI;
                double u2 = -std::log(std::abs(z[1])) / M_PI;
                CMat h(4, std::vector<Cplx>(4, Cplx(0.0)));
                h[0][0] = u1 * u2;
                h[1][1] = u1 / u2;
                h[2][2] = u2 / u1;
                h[3][3] = 1.0 / (u1 * u2);
                return h;
            },
            LocalMonodromy(4, 2, {b}, {n1, n2}),
            {0}};
}

inline OrbitModel byId(const std::string& id) {
    if (id == "trivial") return trivial();
    if (id == "tate") return tate();
    if (id == "tate-half") return tateHalf();
    if (id == "tate-product") return tateProduct();
    throw Error("UnknownModel", id);
}

}  // namespace models

/// Graded levels (l_1, ..., l_n) of a flat vector with respect to
/// W(N_1), W(N_1+N_2), ..., as in the norm asymptotics.
inline std::vector<long> gradedLevels(const OrbitModel& model, const RatVec& v) {
    auto filts = relativeWeightSequence(model.monodromy.nilpotents());
    std::vector<long> levels;
    for (const auto& f : filts) levels.push_back(levelOf(f, v));
    return levels;
}

struct RatioScan {
    double minRatio;
    double maxRatio;
};

/// Ratio of the measured |v|^2 to the predicted log monomial
/// (log|s_1|/log|s_2|)^{l_1} ... (-log|s_n|)^{l_n} over random points of the
/// Siegel-type region with parameter epsilon. Boundedness of the extremes is
/// the claim under test.
inline RatioScan cksRatioScan(const OrbitModel& model, const RatVec& v, double epsilon,
                              std::size_t samples, unsigned seed = 1) {
    auto levels = gradedLevels(model, v);
    std::size_t n = model.boundaryCount;
    std::mt19937 rng(seed);
    // factor cap keeps exp(-L_1) above the double underflow threshold
    std::uniform_real_distribution<double> logScale(std::log(epsilon + 0.1), std::log(20.0));
    std::uniform_real_distribution<double> angle(0.0, 2.0 * M_PI);

    std::vector<double> flat(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) flat[i] = v[i].toDouble();

    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (std::size_t s = 0; s < samples; ++s) {
        // L_n > eps and L_i / L_{i+1} > eps, sampled multiplicatively.
        std::vector<double> bigL(n);
        double acc = std::exp(logScale(rng));
        bigL[n - 1] = acc;
        for (std::size_t i = n - 1; i-- > 0;) {
            acc *= std::exp(logScale(rng));
            bigL[i] = acc;
        }
        CPoint z(n);
        for (std::size_t i = 0; i < n; ++i) z[i] = std::polar(std::exp(-bigL[i]), angle(rng));
        CMat h = metricAt(model, z);
        double measured = 0.0;
        for (std::size_t i = 0; i < flat.size(); ++i)
            for (std::size_t j = 0; j < flat.size(); ++j)
                measured += flat[i] * flat[j] * h[i][j].real();
        double predicted = 1.0;
        for (std::size_t i = 0; i + 1 < n; ++i)
            predicted *= std::pow(bigL[i] / bigL[i + 1], double(levels[i]));
        predicted *= std::pow(bigL[n - 1], double(levels[n - 1]));
        double ratio = measured / predicted;
        lo = std::min(lo, ratio);
        hi = std::max(hi, ratio);
    }
    return {lo, hi};
}

namespace detail {

inline CMat submatrix(const CMat& h, const std::vector<std::size_t>& sel) {
    CMat out(sel.size(), std::vector<Cplx>(sel.size()));
    for (std::size_t i = 0; i < sel.size(); ++i)
        for (std::size_t j = 0; j < sel.size(); ++j) out[i][j] = h[sel[i]][sel[j]];
    return out;
}

inline CMat inverse(CMat a) {
    std::size_t n = a.size();
    CMat inv(n, std::vector<Cplx>(n, Cplx(0.0)));
    for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        for (std::size_t r = col; r < n; ++r)
            if (std::abs(a[r][col]) > std::abs(a[piv][col])) piv = r;
        std::swap(a[piv], a[col]);
        std::swap(inv[piv], inv[col]);
        Cplx d = a[col][col];
        for (std::size_t j = 0; j < n; ++j) { a[col][j] /= d; inv[col][j] /= d; }
        for (std::size_t r = 0; r < n; ++r) {
            if (r == col) continue;
            Cplx f = a[r][col];
            for (std::size_t j = 0; j < n; ++j) {
                a[r][j] -= f * a[col][j];
                inv[r][j] -= f * inv[col][j];
            }
        }
    }
    return inv;
}

inline CMat matmul(const CMat& a, const CMat& b) {
    std::size_t n = a.size();
    CMat c(n, std::vector<Cplx>(n, Cplx(0.0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t j = 0; j < n; ++j) c[i][j] += a[i][k] * b[k][j];
    return c;
}

/// Smallest eigenvalue of a hermitian matrix, via Jacobi rotations on the
/// real-symmetric embedding [[Re, -Im], [Im, Re]].
inline double minEigenvalue(const CMat& h) {
    std::size_t n = h.size();
    std::size_t m = 2 * n;
    std::vector<std::vector<double>> s(m, std::vector<double>(m, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            s[i][j] = h[i][j].real();
            s[i][n + j] = -h[i][j].imag();
            s[n + i][j] = h[i][j].imag();
            s[n + i][n + j] = h[i][j].real();
        }
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) off += s[p][q] * s[p][q];
        if (off < 1e-24) break;
        for (std::size_t p = 0; p < m; ++p)
            for (std::size_t q = p + 1; q < m; ++q) {
                if (std::abs(s[p][q]) < 1e-18) continue;
                double theta = 0.5 * std::atan2(2.0 * s[p][q], s[q][q] - s[p][p]);
                double cs = std::cos(theta), sn = std::sin(theta);
                for (std::size_t k = 0; k < m; ++k) {
                    double a = s[p][k], b = s[q][k];
                    s[p][k] = cs * a - sn * b;
                    s[q][k] = sn * a + cs * b;
                }
                for (std::size_t k = 0; k < m; ++k) {
                    double a = s[k][p], b = s[k][q];
                    s[k][p] = cs * a - sn * b;
                    s[k][q] = sn * a + cs * b;
                }
            }
    }
    double lo = s[0][0];
    for (std::size_t i = 1; i < m; ++i) lo = std::min(lo, s[i][i]);
    return lo;
}

}  // namespace detail

/// Nakano curvature form of the metric restricted to S(V), assembled from
/// central finite differences of the Chern curvature. Returns the minimal
/// eigenvalue of the n.r x n.r hermitian form at one point.
inline double nakanoFormMinEigenvalue(const OrbitModel& model, const CPoint& z,
                                      double step) {
    const auto& sel = model.sSelector;
    std::size_t r = sel.size(), n = model.boundaryCount;

    auto hAt = [&](const CPoint& p) { return detail::submatrix(metricAt(model, p), sel); };

    // A_j = H^{-1} dH/dz_j by central differences on the four real directions.
    auto connection = [&](const CPoint& p, std::size_t j) {
        CPoint px1 = p, px2 = p, py1 = p, py2 = p;
        px1[j] += step;
        px2[j] -= step;
        py1[j] += Cplx(0.0, step);
        py2[j] -= Cplx(0.0, step);
        CMat hx1 = hAt(px1), hx2 = hAt(px2), hy1 = hAt(py1), hy2 = hAt(py2);
        CMat d(r, std::vector<Cplx>(r));
        for (std::size_t a = 0; a < r; ++a)
            for (std::size_t b = 0; b < r; ++b) {
                Cplx dx = (hx1[a][b] - hx2[a][b]) / (2.0 * step);
                Cplx dy = (hy1[a][b] - hy2[a][b]) / (2.0 * step);
                d[a][b] = 0.5 * (dx - Cplx(0.0, 1.0) * dy);
            }
        return detail::matmul(detail::inverse(hAt(p)), d);
    };

    CMat h = hAt(z);
    // Theta_{j kbar} = d/dzbar_k A_j; Nakano form entries use -Theta.
    CMat form(n * r, std::vector<Cplx>(n * r, Cplx(0.0)));
    for (std::size_t j = 0; j < n; ++j)
        for (std::size_t k = 0; k < n; ++k) {
            CPoint px1 = z, px2 = z, py1 = z, py2 = z;
            px1[k] += step;
            px2[k] -= step;
            py1[k] += Cplx(0.0, step);
            py2[k] -= Cplx(0.0, step);
            CMat ax1 = connection(px1, j), ax2 = connection(px2, j);
            CMat ay1 = connection(py1, j), ay2 = connection(py2, j);
            for (std::size_t lam = 0; lam < r; ++lam)
                for (std::size_t mu = 0; mu < r; ++mu) {
                    Cplx theta(0.0, 0.0);
                    for (std::size_t nu = 0; nu < r; ++nu) {
                        Cplx dx = (ax1[nu][lam] - ax2[nu][lam]) / (2.0 * step);
                        Cplx dy = (ay1[nu][lam] - ay2[nu][lam]) / (2.0 * step);
                        Cplx dbar = 0.5 * (dx + Cplx(0.0, 1.0) * dy);
                        theta += dbar * h[nu][mu];
                    }
                    form[j * r + lam][k * r + mu] = -theta;
                }
        }
    // hermitian cleanup of finite-difference noise
    for (std::size_t a = 0; a < n * r; ++a)
        for (std::size_t b = a; b < n * r; ++b) {
            Cplx avg = 0.5 * (form[a][b] + std::conj(form[b][a]));
            form[a][b] = avg;
            form[b][a] = std::conj(avg);
        }
    return detail::minEigenvalue(form);
}

struct NakanoResult {
    double minEigenvalue;
};

/// Minimal Nakano curvature eigenvalue of S(V) over a sample grid. Throws
/// StepTooLarge when halving the step moves the result by more than
/// richardsonTolerance at some grid point.
inline NakanoResult nakanoCheck(const OrbitModel& model, const std::vector<CPoint>& grid,
                                double step, double richardsonTolerance = 1.0) {
    double lo = std::numeric_limits<double>::infinity();
    for (const auto& z : grid) {
        double e1 = nakanoFormMinEigenvalue(model, z, step);
        double e2 = nakanoFormMinEigenvalue(model, z, step / 2.0);
        if (std::abs(e1 - e2) > richardsonTolerance)
            throw Error("StepTooLarge", "finite-difference step does not resolve curvature");
        lo = std::min(lo, e1);
    }
    return {lo};
}

/// Verifies |z_1...z_r| |s|_{h0} <~ |s|_h for every frame vector along a
/// geometric approach to the boundary: false when some ratio decays steadily.
inline bool normLowerBoundCheck(const OrbitModel& model, const MetricSampler& reference) {
    for (std::size_t vec = 0; vec < model.rank; ++vec) {
        std::vector<double> ratios;
        for (int k = 2; k <= 22; ++k) {
            CPoint z(model.boundaryCount, std::polar(std::pow(2.0, -k), 0.3));
            double zprod = 1.0;
            for (std::size_t i = 0; i < model.boundaryCount; ++i) zprod *= std::abs(z[i]);
            CMat h = metricAt(model, z);
            CMat h0 = reference(z);
            double num = std::sqrt(h[vec][vec].real());
            double den = zprod * std::sqrt(h0[vec][vec].real());
            ratios.push_back(num / den);
        }
        bool decaying = true;
        for (std::size_t i = ratios.size() - 8; i + 1 < ratios.size(); ++i)
            decaying = decaying && ratios[i + 1] <= 0.9 * ratios[i];
        if (decaying) return false;
    }
    return true;
}

}  // namespace ssheaf
