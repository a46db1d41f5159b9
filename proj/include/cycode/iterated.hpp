#pragma once

#include "cycode/algebra.hpp"
#include "cycode/skewpoly.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cycode {

class IteratedAlgebra;
class ItElement;
using ItPtr = std::shared_ptr<const IteratedAlgebra>;

// It_R^m(D, tau, d): the right D-module D + fD + ... + f^{m-1}D with
// (f^i x)(f^j y) = f^{i+j} tl^j(x) y, wrapping into f^{(i+j)-m} tl^j(x) y d,
// where tl is the coefficientwise extension of tau to D. Requires the
// structure constant of D to be fixed by both sigma and tau (it lies in F_0),
// which makes tl multiplicative.
class IteratedAlgebra : public std::enable_shared_from_this<IteratedAlgebra> {
public:
    static ItPtr create(AlgebraPtr D, FieldAutomorphism tau, unsigned m, AlgElement d);
    // Thm-main route: the tensor product of an associative cyclic algebra
    // (extended to D = D0 x F over the composite) and (F/F_0, tau, d); adds
    // the linear-disjointness degree bookkeeping and requires d in F^x.
    static ItPtr tensor_construct(AlgebraPtr D, FieldAutomorphism tau, unsigned m, FieldElement d);

    const AlgebraPtr& D() const { return D_; }
    const TowerPtr& K() const { return D_->K(); }
    const FieldAutomorphism& tau() const { return *tau_; }
    unsigned m() const { return m_; }
    unsigned n() const { return D_->degree(); }
    const AlgElement& d() const { return *d_; }
    bool d_is_scalar() const { return dK_.has_value(); }
    const FieldElement& d_scalar() const { return *dK_; }
    bool from_tensor() const { return from_tensor_; }

    // tl^j (j may be negative); validated at construction
    AlgElement twist(const AlgElement& x, long j) const;
    const FieldAutomorphism& tau_power(size_t j) const { return tau_pow_[j % m_]; }

    ItElement zero() const;
    ItElement one() const;
    ItElement from_parts(std::vector<AlgElement> parts) const;
    ItElement f_power(unsigned i) const;
    // standard K-basis f^i e^j, index = i*n + j
    ItElement std_basis(size_t idx) const;
    // Q-basis, index over (part, alg-basis index)
    ItElement q_basis(size_t idx) const;
    size_t q_dimension() const { return m_ * D_->q_dimension(); }

    // D[t; tl^{-1}] and f(t) = t^m - d
    RingPtr skew_ring() const;
    SkewPoly skew_modulus() const;

private:
    IteratedAlgebra() = default;
    AlgebraPtr D_;
    std::optional<FieldAutomorphism> tau_;
    unsigned m_ = 1;
    std::optional<AlgElement> d_;
    std::optional<FieldElement> dK_;
    bool from_tensor_ = false;
    std::vector<FieldAutomorphism> tau_pow_;
};

class ItElement {
public:
    ItElement(ItPtr alg, std::vector<AlgElement> parts);

    const ItPtr& algebra() const { return it_; }
    const std::vector<AlgElement>& parts() const { return x_; }
    const AlgElement& part(size_t i) const { return x_[i]; }
    bool is_zero() const;
    Int height() const;

    ItElement operator-() const;
    ItElement& operator+=(const ItElement& o);
    ItElement& operator-=(const ItElement& o);
    friend ItElement operator+(ItElement a, const ItElement& b) { return a += b; }
    friend ItElement operator-(ItElement a, const ItElement& b) { return a -= b; }
    friend bool operator==(const ItElement& a, const ItElement& b);
    friend bool operator!=(const ItElement& a, const ItElement& b) { return !(a == b); }

    // K-coordinates in the standard basis {f^i e^j}, length n*m
    std::vector<FieldElement> coords() const;

private:
    ItPtr it_;
    std::vector<AlgElement> x_;
};

ItElement it_mul(const ItElement& x, const ItElement& y);

// left-multiplication block matrix over K in the standard basis; requires a
// scalar d (an element of K)
KMatrix it_lambda(const ItElement& x);

// det it_lambda(x); when d lies in F = Fix(sigma) the result is checked to be
// fixed by sigma and an InternalError is raised otherwise
FieldElement m_A(const ItElement& x);

// Dual-path oracle: it_mul against petit_mul in S_f over D[t; tl^{-1}] under
// f^i x <-> t^i x, on all standard-basis pairs plus `random_pairs` random
// bounded-height pairs.
bool petit_iso_check(const ItPtr& A, size_t random_pairs = 500, uint64_t seed = 0x17e7a7ed);

// The K-span of {1, f, ..., f^{m-1}} with it_mul reproduces the cyclic algebra
// (K/L, tau, d) on all basis pairs; for even m the span of D and f^{m/2}D is
// closed under it_mul.
bool subalgebra_restriction_check(const ItPtr& A);

enum class ItDivStatus { Division, NotDivision, Unknown };

struct ChainEntry {
    std::string criterion;
    std::string outcome;  // "pass" | "fail" | "inapplicable" | "exhausted"
    std::string detail;
};

struct DivisionVerdict {
    ItDivStatus status = ItDivStatus::Unknown;
    std::string certificate;  // theorem name when status == Division
    std::vector<ChainEntry> chain;
    std::vector<std::string> assumptions;
    std::optional<std::pair<ItElement, ItElement>> zero_divisors;
    std::optional<std::pair<SkewPoly, SkewPoly>> factor;
    std::optional<IrreducibilityVerdict> irreducibility;
};

// Ordered certification: structural complete cases (biquaternion, cubic x
// quaternion), then prime-degree sufficient certificates, then bounded
// falsifier searches; Unknown otherwise. Positive certificates require the
// coefficient algebra's division property (certified or asserted; assertion
// markers propagate into the verdict).
DivisionVerdict division_certify(const ItPtr& A, const SearchLimits& lim);

// conversions between It elements and S_f representatives
SkewPoly it_to_poly(const ItElement& x, const RingPtr& R);
ItElement poly_to_it(const SkewPoly& p, const ItPtr& A);

bool is_prime(unsigned v);

// primitive m-th root of unity in the joint fixed field of sigma and tau
bool has_primitive_root_of_unity(const ItPtr& A, unsigned m);

}  // namespace cycode
