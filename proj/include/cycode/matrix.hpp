#pragma once

#include "cycode/numberfield.hpp"

#include <optional>
#include <vector>

namespace cycode {

// Dense matrix over a field tower. Row-major storage; entries default to 0.
class KMatrix {
public:
    KMatrix(TowerPtr tower, size_t rows, size_t cols);
    static KMatrix identity(TowerPtr tower, size_t n);

    size_t rows() const { return rows_; }
    size_t cols() const { return cols_; }
    const TowerPtr& tower() const { return tower_; }

    FieldElement& at(size_t i, size_t j) { return a_[i * cols_ + j]; }
    const FieldElement& at(size_t i, size_t j) const { return a_[i * cols_ + j]; }

    friend bool operator==(const KMatrix& a, const KMatrix& b);
    friend bool operator!=(const KMatrix& a, const KMatrix& b) { return !(a == b); }

    KMatrix operator*(const KMatrix& o) const;
    std::vector<FieldElement> apply(const std::vector<FieldElement>& v) const;

    // entrywise automorphism application
    KMatrix mapped(const FieldAutomorphism& phi) const;
    KMatrix scaled(const FieldElement& f) const;

private:
    TowerPtr tower_;
    size_t rows_, cols_;
    std::vector<FieldElement> a_;
};

// Fraction-free (Bareiss) elimination; all divisions are exact in the field.
FieldElement det_bareiss(KMatrix m);

// Cofactor expansion; O(n!) — internal oracle for n <= 6.
FieldElement det_cofactor(const KMatrix& m);

// Solves m x = rhs for square m; nullopt if singular.
std::optional<std::vector<FieldElement>> solve_linear(KMatrix m, std::vector<FieldElement> rhs);

}  // namespace cycode
