#pragma once

#include "cycode/matrix.hpp"
#include "cycode/numberfield.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cycode {

class CyclicAlgebra;
class AlgElement;
using AlgebraPtr = std::shared_ptr<const CyclicAlgebra>;

enum class DivisionStatus { Certified, Asserted, Unknown, NotDivision };

struct DivisionRecord {
    DivisionStatus status = DivisionStatus::Unknown;
    std::string reason;
    bool division_like() const {
        return status == DivisionStatus::Certified || status == DivisionStatus::Asserted;
    }
};

// Degree-n algebra K ⊕ eK ⊕ ... ⊕ e^{n-1}K with (e^i a)(e^j b) = e^{i+j} σ^j(a) b,
// wrapping around via e^n = c. Associative exactly when c is fixed by σ.
// n = 1 (identity σ, c = 1) models a plain field as a degenerate algebra so the
// skew-polynomial machinery has a single coefficient-domain type.
class CyclicAlgebra : public std::enable_shared_from_this<CyclicAlgebra> {
public:
    static AlgebraPtr create(TowerPtr K, FieldAutomorphism sigma, unsigned n, FieldElement c);
    static AlgebraPtr field_as_algebra(TowerPtr K);

    const TowerPtr& K() const { return K_; }
    const FieldAutomorphism& sigma() const { return *sigma_; }
    unsigned degree() const { return n_; }
    const FieldElement& c() const { return *c_; }
    bool associative() const { return associative_; }

    const DivisionRecord& division() const { return division_; }
    void set_division(DivisionRecord r) const { division_ = std::move(r); }

    // dimension over Q
    size_t q_dimension() const { return n_ * K_->degree(); }

    AlgElement zero() const;
    AlgElement one() const;
    AlgElement from_parts(std::vector<FieldElement> parts) const;
    AlgElement scalar(const FieldElement& k) const;  // K -> A embedding
    AlgElement e_power(unsigned i) const;
    AlgElement basis_element(size_t idx) const;  // e^{idx / degK} * monomial(idx % degK)

private:
    CyclicAlgebra() = default;
    TowerPtr K_;
    std::optional<FieldAutomorphism> sigma_;
    unsigned n_ = 1;
    std::optional<FieldElement> c_;
    bool associative_ = true;
    mutable DivisionRecord division_;
};

class AlgElement {
public:
    AlgElement(AlgebraPtr alg, std::vector<FieldElement> parts);

    const AlgebraPtr& algebra() const { return alg_; }
    const std::vector<FieldElement>& parts() const { return x_; }
    const FieldElement& part(size_t i) const { return x_[i]; }

    bool is_zero() const;
    bool is_scalar() const;  // supported on K only
    Int height() const;

    AlgElement operator-() const;
    AlgElement& operator+=(const AlgElement& o);
    AlgElement& operator-=(const AlgElement& o);
    friend AlgElement operator+(AlgElement a, const AlgElement& b) { return a += b; }
    friend AlgElement operator-(AlgElement a, const AlgElement& b) { return a -= b; }
    friend bool operator==(const AlgElement& a, const AlgElement& b);
    friend bool operator!=(const AlgElement& a, const AlgElement& b) { return !(a == b); }

    // coordinates over K in the basis {1, e, ..., e^{n-1}} (same as parts)
    std::vector<FieldElement> coords() const { return x_; }

private:
    AlgebraPtr alg_;
    std::vector<FieldElement> x_;
};

AlgElement alg_mul(const AlgElement& x, const AlgElement& y);
// right multiplication by a K-scalar (coefficientwise)
AlgElement alg_scale(const AlgElement& x, const FieldElement& k);

// column j = coordinates of x * e^j; alg_mul(x, y) has coordinates
// lambda_matrix(x) . coords(y).
KMatrix lambda_matrix(const AlgElement& x);

AlgElement associator(const AlgElement& x, const AlgElement& y, const AlgElement& z);

struct NucleusFlags {
    bool left = false;
    bool middle = false;
    bool right = false;
    bool full() const { return left && middle && right; }
};

// Exact decision by associator evaluation against all pairs from the Q-basis
// of the algebra (the associator is trilinear over Q, so basis pairs suffice).
NucleusFlags nucleus_decide(const AlgElement& x);

// coefficientwise application of tau; requires tau to commute with the
// algebra's sigma
AlgElement tau_tilde(const AlgElement& x, const FieldAutomorphism& tau);

// coefficientwise application without the commutation check; for callers that
// validated the automorphism once at construction time
AlgElement map_parts(const FieldAutomorphism& phi, const AlgElement& x);

// det lambda(x); associative algebras only. The result is checked to be fixed
// by sigma (an element of F).
FieldElement reduced_norm(const AlgElement& x);

// nullopt when lambda(x) is singular (x is a zero divisor or 0)
std::optional<AlgElement> alg_inverse(const AlgElement& x);

struct CyclicProbeResult {
    DivisionStatus status = DivisionStatus::Unknown;
    std::string reason;
    // verified zero-divisor pair (NotDivision, associative case with c = N(z))
    std::optional<std::pair<AlgElement, AlgElement>> zero_divisors;
    // norm relation N_{K/F}(z) = c^s witnessing a split-like structure
    std::optional<std::pair<FieldElement, unsigned>> norm_witness;
};

// Decides or falsifies the division property within a height budget.
// Nonassociative: prime degree certifies; otherwise exact linear independence
// of 1, c, ..., c^{n-1} over F = Fix(sigma) certifies. Associative: searches
// z in K with N_{K/F}(z) = c^s, 1 <= s <= n-1; a hit is reported (with an
// explicit verified zero-divisor pair when s = 1), no hit leaves Unknown.
CyclicProbeResult cyclic_division_probe(const AlgebraPtr& A, const Int& height_budget,
                                        uint64_t enum_cap = 10000000);

// Enumeration of field elements by increasing height strata, lexicographic
// within a stratum; deterministic. Calls fn for each element; stops early if
// fn returns true or the cap is exhausted. Returns false if the cap was hit.
bool enumerate_elements(const TowerPtr& tower, const Int& height_budget, uint64_t enum_cap,
                        const std::function<bool(const FieldElement&)>& fn);

// Same stratified enumeration over coordinate vectors of a given dimension.
bool enumerate_vectors(size_t dim, const Int& height_budget, uint64_t enum_cap,
                       const std::function<bool(const std::vector<Rat>&)>& fn);

// Same enumeration over algebra elements (n * [K:Q] rational coordinates).
bool enumerate_alg_elements(const AlgebraPtr& A, const Int& height_budget, uint64_t enum_cap,
                            const std::function<bool(const AlgElement&)>& fn);

// Rationals p/q with gcd(p, q) = 1 and max(|p|, q) <= h, ordered by
// (height, numerator, denominator).
std::vector<Rat> rationals_of_height_up_to(const Int& h);

}  // namespace cycode
