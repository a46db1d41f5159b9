#include "cycode/matrix.hpp"

namespace cycode {

KMatrix::KMatrix(TowerPtr tower, size_t rows, size_t cols)
    : tower_(std::move(tower)), rows_(rows), cols_(cols) {
    a_.reserve(rows * cols);
    for (size_t i = 0; i < rows * cols; ++i) a_.push_back(tower_->zero());
}

KMatrix KMatrix::identity(TowerPtr tower, size_t n) {
    KMatrix m(std::move(tower), n, n);
    for (size_t i = 0; i < n; ++i) m.at(i, i) = m.tower_->one();
    return m;
}

bool operator==(const KMatrix& a, const KMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
}

KMatrix KMatrix::operator*(const KMatrix& o) const {
    if (cols_ != o.rows_) throw MathError("matrix dimension mismatch");
    KMatrix out(tower_, rows_, o.cols_);
    for (size_t i = 0; i < rows_; ++i)
        for (size_t k = 0; k < cols_; ++k) {
            if (at(i, k).is_zero()) continue;
            for (size_t j = 0; j < o.cols_; ++j) out.at(i, j) += at(i, k) * o.at(k, j);
        }
    return out;
}

std::vector<FieldElement> KMatrix::apply(const std::vector<FieldElement>& v) const {
    if (v.size() != cols_) throw MathError("matrix dimension mismatch");
    std::vector<FieldElement> out;
    out.reserve(rows_);
    for (size_t i = 0; i < rows_; ++i) {
        FieldElement acc = tower_->zero();
        for (size_t j = 0; j < cols_; ++j)
            if (!at(i, j).is_zero() && !v[j].is_zero()) acc += at(i, j) * v[j];
        out.push_back(std::move(acc));
    }
    return out;
}

KMatrix KMatrix::mapped(const FieldAutomorphism& phi) const {
    KMatrix out(tower_, rows_, cols_);
    for (size_t i = 0; i < rows_ * cols_; ++i) out.a_[i] = phi(a_[i]);
    return out;
}

KMatrix KMatrix::scaled(const FieldElement& f) const {
    KMatrix out(tower_, rows_, cols_);
    for (size_t i = 0; i < rows_ * cols_; ++i) out.a_[i] = a_[i] * f;
    return out;
}

FieldElement det_bareiss(KMatrix m) {
    if (m.rows() != m.cols()) throw MathError("determinant of a non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return m.tower()->one();
    int sign = 1;
    FieldElement prev = m.tower()->one();
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k).is_zero()) {
            size_t swap_row = n;
            for (size_t i = k + 1; i < n; ++i)
                if (!m.at(i, k).is_zero()) {
                    swap_row = i;
                    break;
                }
            if (swap_row == n) return m.tower()->zero();
            for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(swap_row, j));
            sign = -sign;
        }
        FieldElement prev_inv = prev.inverse();
        for (size_t i = k + 1; i < n; ++i)
            for (size_t j = k + 1; j < n; ++j)
                m.at(i, j) = (m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j)) * prev_inv;
        prev = m.at(k, k);
    }
    FieldElement det = m.at(n - 1, n - 1);
    return sign < 0 ? -det : det;
}

FieldElement det_cofactor(const KMatrix& m) {
    if (m.rows() != m.cols()) throw MathError("determinant of a non-square matrix");
    const size_t n = m.rows();
    if (n == 0) return m.tower()->one();
    if (n == 1) return m.at(0, 0);
    FieldElement acc = m.tower()->zero();
    for (size_t j = 0; j < n; ++j) {
        if (m.at(0, j).is_zero()) continue;
        KMatrix minor(m.tower(), n - 1, n - 1);
        for (size_t i = 1; i < n; ++i) {
            size_t cc = 0;
            for (size_t c = 0; c < n; ++c) {
                if (c == j) continue;
                minor.at(i - 1, cc++) = m.at(i, c);
            }
        }
        FieldElement term = m.at(0, j) * det_cofactor(minor);
        if (j % 2)
            acc -= term;
        else
            acc += term;
    }
    return acc;
}

std::optional<std::vector<FieldElement>> solve_linear(KMatrix m, std::vector<FieldElement> rhs) {
    if (m.rows() != m.cols() || rhs.size() != m.rows()) throw MathError("bad solve dimensions");
    const size_t n = m.rows();
    for (size_t col = 0; col < n; ++col) {
        size_t piv = n;
        for (size_t r = col; r < n; ++r)
            if (!m.at(r, col).is_zero()) {
                piv = r;
                break;
            }
        if (piv == n) return std::nullopt;
        if (piv != col) {
            for (size_t j = 0; j < n; ++j) std::swap(m.at(col, j), m.at(piv, j));
            std::swap(rhs[col], rhs[piv]);
        }
        FieldElement inv = m.at(col, col).inverse();
        for (size_t j = col; j < n; ++j) m.at(col, j) *= inv;
        rhs[col] *= inv;
        for (size_t r = 0; r < n; ++r) {
            if (r == col || m.at(r, col).is_zero()) continue;
            FieldElement f = m.at(r, col);
            for (size_t j = col; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
            rhs[r] -= f * rhs[col];
        }
    }
    return rhs;
}

}  // namespace cycode
