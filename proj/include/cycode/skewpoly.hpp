#pragma once

#include "cycode/algebra.hpp"

#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace cycode {

class SkewRing;
using RingPtr = std::shared_ptr<const SkewRing>;

// Twisted polynomial ring D[t; sigma] with t a = sigma(a) t. The coefficient
// domain is a CyclicAlgebra (degree 1 wraps a plain field) and sigma is an
// integer power of the coefficientwise extension of a field automorphism tau.
// Construction verifies that tau commutes with the domain's own automorphism
// and that the twist is multiplicative (exact check on generators plus random
// pairs).
class SkewRing : public std::enable_shared_from_this<SkewRing> {
public:
    static RingPtr create(AlgebraPtr domain, FieldAutomorphism tau, int twist_power);

    const AlgebraPtr& domain() const { return domain_; }
    const FieldAutomorphism& tau() const { return *tau_; }
    int twist_power() const { return twist_power_; }
    unsigned tau_order() const { return tau_->exact_order(); }

    // sigma^j applied to a domain element (j may be negative)
    AlgElement twist(const AlgElement& x, long j) const;

private:
    SkewRing() = default;
    AlgebraPtr domain_;
    std::optional<FieldAutomorphism> tau_;
    int twist_power_ = 1;
    std::vector<FieldAutomorphism> tau_pow_;  // tau^0 .. tau^{order-1}
};

// f = sum a_i t^i with left coefficients a_i in the domain; no trailing zeros.
// The zero polynomial has an empty coefficient list and degree() == -1.
class SkewPoly {
public:
    SkewPoly(RingPtr ring, std::vector<AlgElement> coeffs);
    static SkewPoly zero(RingPtr ring);
    static SkewPoly one(RingPtr ring);
    static SkewPoly monomial(RingPtr ring, AlgElement coeff, size_t power);
    // t^m - d
    static SkewPoly power_minus(RingPtr ring, size_t m, AlgElement d);

    const RingPtr& ring() const { return ring_; }
    const std::vector<AlgElement>& coeffs() const { return c_; }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const AlgElement& coeff(size_t i) const { return c_[i]; }
    AlgElement coeff_or_zero(size_t i) const;
    bool is_monic() const;

    SkewPoly operator-() const;
    friend SkewPoly operator+(const SkewPoly& a, const SkewPoly& b);
    friend SkewPoly operator-(const SkewPoly& a, const SkewPoly& b);
    friend bool operator==(const SkewPoly& a, const SkewPoly& b);
    friend bool operator!=(const SkewPoly& a, const SkewPoly& b) { return !(a == b); }

private:
    RingPtr ring_;
    std::vector<AlgElement> c_;
};

SkewPoly sp_mul(const SkewPoly& g, const SkewPoly& h);

struct SkewDivMod {
    SkewPoly q;
    SkewPoly r;
};

// g = q f + r with deg r < deg f (right division)
SkewDivMod sp_divmod_right(const SkewPoly& g, const SkewPoly& f);
// g = f q + r with deg r < deg f (left division)
SkewDivMod sp_divmod_left(const SkewPoly& g, const SkewPoly& f);

// g o h = g h mod_r f on representatives of degree < deg f (f monic)
SkewPoly petit_mul(const SkewPoly& g, const SkewPoly& h, const SkewPoly& f);

// g is in the right nucleus of S_f iff f g lies in R f
bool right_nucleus_member(const SkewPoly& g, const SkewPoly& f);

struct SearchLimits {
    Int height_budget{1};
    uint64_t enum_cap = 10000000;
};

// Searches z with zero right remainder of f by (t - z); f must be t^m - d.
// Returns the witness z (lowest in the deterministic enumeration order).
std::optional<AlgElement> linear_factor_search(const SkewPoly& f, const SearchLimits& lim,
                                               bool* exhausted_cap = nullptr);

// Searches (z0, z1) with t^2 - z1 t - z0 right-dividing f; deg f must be 4.
std::optional<std::pair<AlgElement, AlgElement>> quadratic_factor_search(
    const SkewPoly& f, const SearchLimits& lim, bool* exhausted_cap = nullptr);

enum class IrredStatus { Irreducible, Reducible, Unknown };

struct IrreducibilityVerdict {
    IrredStatus status = IrredStatus::Unknown;
    // Reducible: "FactorWitness"; Irreducible: "SufficientCondition(<name>)";
    // Unknown: "SearchExhausted(<budget>)"
    std::string certificate;
    std::optional<std::pair<SkewPoly, SkewPoly>> factors;  // g h = f, verified
    std::string detail;
};

struct IrredContext {
    bool m_prime = false;
    bool root_of_unity_in_center = false;
    // name of a positive certificate whose hypotheses the caller has already
    // machine-checked (e.g. a division certificate for S_f)
    std::optional<std::string> sufficient_certificate;
};

// Falsifier searches decide Reducible with a verified factor pair; a positive
// verdict requires the caller-supplied certificate; otherwise Unknown.
IrreducibilityVerdict irreducibility_status(const SkewPoly& f, const IrredContext& ctx,
                                            const SearchLimits& lim);

}  // namespace cycode
