#pragma once

#include <algorithm>
#include <cstddef>
#include <vector>

#include "ssheaf/errors.hpp"
#include "ssheaf/rational.hpp"

namespace ssheaf {

using RatVec = std::vector<Rat>;

inline bool isZeroVec(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& r) { return r.isZero(); });
}

/// Dense matrix over the rationals, row-major.
class RatMatrix {
  public:
    RatMatrix() : rows_(0), cols_(0) {}
    RatMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}
    RatMatrix(std::size_t rows, std::size_t cols, std::vector<Rat> entries)
        : rows_(rows), cols_(cols), data_(std::move(entries)) {
        if (data_.size() != rows * cols)
            throw dimensionMismatch("matrix entry count");
    }

    static RatMatrix identity(std::size_t n) {
        RatMatrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m.at(i, i) = Rat(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Rat& at(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Rat& at(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    const std::vector<Rat>& entries() const { return data_; }

    bool isZero() const {
        return std::all_of(data_.begin(), data_.end(),
                           [](const Rat& r) { return r.isZero(); });
    }
    bool isSquare() const { return rows_ == cols_; }

    friend RatMatrix operator+(const RatMatrix& a, const RatMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw dimensionMismatch("matrix add");
        RatMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            r.data_[i] = a.data_[i] + b.data_[i];
        return r;
    }
    friend RatMatrix operator-(const RatMatrix& a, const RatMatrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw dimensionMismatch("matrix sub");
        RatMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            r.data_[i] = a.data_[i] - b.data_[i];
        return r;
    }
    friend RatMatrix operator*(const RatMatrix& a, const RatMatrix& b) {
        if (a.cols_ != b.rows_) throw dimensionMismatch("matrix mul");
        RatMatrix r(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                if (a.at(i, k).isZero()) continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    r.at(i, j) += a.at(i, k) * b.at(k, j);
            }
        return r;
    }
    friend RatMatrix operator*(const Rat& s, const RatMatrix& a) {
        RatMatrix r(a.rows_, a.cols_);
        for (std::size_t i = 0; i < a.data_.size(); ++i) r.data_[i] = s * a.data_[i];
        return r;
    }
    friend bool operator==(const RatMatrix& a, const RatMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }
    friend bool operator!=(const RatMatrix& a, const RatMatrix& b) { return !(a == b); }

    RatMatrix pow(std::size_t e) const {
        if (!isSquare()) throw dimensionMismatch("matrix pow");
        RatMatrix r = identity(rows_);
        for (std::size_t i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    RatMatrix transpose() const {
        RatMatrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
        return t;
    }

    RatVec apply(const RatVec& v) const {
        if (v.size() != cols_) throw dimensionMismatch("matrix apply");
        RatVec r(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!at(i, j).isZero()) r[i] += at(i, j) * v[j];
        return r;
    }

    /// In-place reduction to reduced row echelon form; returns pivot columns.
    std::vector<std::size_t> reduceToRref() {
        std::vector<std::size_t> pivots;
        std::size_t row = 0;
        for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
            std::size_t pr = row;
            while (pr < rows_ && at(pr, col).isZero()) ++pr;
            if (pr == rows_) continue;
            if (pr != row)
                for (std::size_t j = 0; j < cols_; ++j)
                    std::swap(at(pr, j), at(row, j));
            Rat inv = Rat(1) / at(row, col);
            for (std::size_t j = col; j < cols_; ++j) at(row, j) *= inv;
            for (std::size_t i = 0; i < rows_; ++i) {
                if (i == row || at(i, col).isZero()) continue;
                Rat f = at(i, col);
                for (std::size_t j = col; j < cols_; ++j)
                    at(i, j) -= f * at(row, j);
            }
            pivots.push_back(col);
            ++row;
        }
        return pivots;
    }

  private:
    std::size_t rows_, cols_;
    std::vector<Rat> data_;
};

/// Subspace of Q^n stored as a reduced-echelon basis, so equality is syntactic.
class Subspace {
  public:
    explicit Subspace(std::size_t ambient) : ambient_(ambient) {}

    static Subspace zero(std::size_t ambient) { return Subspace(ambient); }

    static Subspace full(std::size_t ambient) {
        Subspace s(ambient);
        for (std::size_t i = 0; i < ambient; ++i) {
            RatVec e(ambient);
            e[i] = Rat(1);
            s.basis_.push_back(std::move(e));
        }
        return s;
    }

    static Subspace span(std::size_t ambient, const std::vector<RatVec>& vectors) {
        RatMatrix m(vectors.size(), ambient);
        for (std::size_t i = 0; i < vectors.size(); ++i) {
            if (vectors[i].size() != ambient)
                throw dimensionMismatch("span vector length");
            for (std::size_t j = 0; j < ambient; ++j) m.at(i, j) = vectors[i][j];
        }
        auto pivots = m.reduceToRref();
        Subspace s(ambient);
        for (std::size_t i = 0; i < pivots.size(); ++i) {
            RatVec row(ambient);
            for (std::size_t j = 0; j < ambient; ++j) row[j] = m.at(i, j);
            s.basis_.push_back(std::move(row));
        }
        return s;
    }

    std::size_t ambient() const { return ambient_; }
    std::size_t dim() const { return basis_.size(); }
    const std::vector<RatVec>& basis() const { return basis_; }

    bool contains(const RatVec& v) const {
        if (v.size() != ambient_) throw dimensionMismatch("contains vector length");
        RatVec r = v;
        for (const auto& b : basis_) {
            std::size_t p = pivotIndex(b);
            if (!r[p].isZero()) {
                Rat f = r[p];
                for (std::size_t j = 0; j < ambient_; ++j) r[j] -= f * b[j];
            }
        }
        return isZeroVec(r);
    }

    bool contains(const Subspace& other) const {
        return std::all_of(other.basis_.begin(), other.basis_.end(),
                           [this](const RatVec& v) { return contains(v); });
    }

    friend bool operator==(const Subspace& a, const Subspace& b) {
        return a.ambient_ == b.ambient_ && a.basis_ == b.basis_;
    }
    friend bool operator!=(const Subspace& a, const Subspace& b) { return !(a == b); }

    friend Subspace sum(const Subspace& a, const Subspace& b) {
        if (a.ambient_ != b.ambient_) throw dimensionMismatch("subspace sum");
        std::vector<RatVec> vecs = a.basis_;
        vecs.insert(vecs.end(), b.basis_.begin(), b.basis_.end());
        return span(a.ambient_, vecs);
    }

    /// Intersection via the coefficient kernel of the stacked system
    /// c.A - d.B = 0 over the two bases.
    friend Subspace intersect(const Subspace& a, const Subspace& b);

  private:
    static std::size_t pivotIndex(const RatVec& row) {
        for (std::size_t j = 0; j < row.size(); ++j)
            if (!row[j].isZero()) return j;
        return row.size();
    }

    std::size_t ambient_;
    std::vector<RatVec> basis_;
};

/// Null space of M, in canonical reduced-echelon form.
inline Subspace kernel(const RatMatrix& m) {
    RatMatrix r = m;
    auto pivots = r.reduceToRref();
    std::vector<bool> isPivot(m.cols(), false);
    for (auto p : pivots) isPivot[p] = true;
    std::vector<RatVec> basis;
    for (std::size_t free = 0; free < m.cols(); ++free) {
        if (isPivot[free]) continue;
        RatVec v(m.cols());
        v[free] = Rat(1);
        for (std::size_t i = 0; i < pivots.size(); ++i)
            v[pivots[i]] = -r.at(i, free);
        basis.push_back(std::move(v));
    }
    return Subspace::span(m.cols(), basis);
}

/// Column space of M (as a subspace of Q^rows).
inline Subspace image(const RatMatrix& m) {
    std::vector<RatVec> cols;
    for (std::size_t j = 0; j < m.cols(); ++j) {
        RatVec c(m.rows());
        for (std::size_t i = 0; i < m.rows(); ++i) c[i] = m.at(i, j);
        cols.push_back(std::move(c));
    }
    return Subspace::span(m.rows(), cols);
}

inline Subspace intersect(const Subspace& a, const Subspace& b) {
    if (a.ambient_ != b.ambient_) throw dimensionMismatch("subspace intersect");
    std::size_t n = a.ambient_, k = a.dim(), l = b.dim();
    if (k == 0 || l == 0) return Subspace::zero(n);
    RatMatrix sys(n, k + l);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < n; ++j) sys.at(j, i) = a.basis_[i][j];
    for (std::size_t i = 0; i < l; ++i)
        for (std::size_t j = 0; j < n; ++j) sys.at(j, k + i) = -b.basis_[i][j];
    Subspace coeffs = kernel(sys);
    std::vector<RatVec> vecs;
    for (const auto& cd : coeffs.basis()) {
        RatVec v(n);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < n; ++j) v[j] += cd[i] * a.basis_[i][j];
        vecs.push_back(std::move(v));
    }
    return Subspace::span(n, vecs);
}

/// Image of a subspace under a linear map.
inline Subspace apply(const RatMatrix& m, const Subspace& u) {
    std::vector<RatVec> vecs;
    for (const auto& b : u.basis()) vecs.push_back(m.apply(b));
    return Subspace::span(m.rows(), vecs);
}

inline std::size_t rank(const RatMatrix& m) {
    RatMatrix r = m;
    return r.reduceToRref().size();
}

}  // namespace ssheaf
