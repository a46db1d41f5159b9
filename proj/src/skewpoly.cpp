#include "cycode/skewpoly.hpp"

#include <random>

namespace cycode {

// ---------------------------------------------------------------------------
// SkewRing

RingPtr SkewRing::create(AlgebraPtr domain, FieldAutomorphism tau, int twist_power) {
    if (tau.tower() != domain->K()) throw MathError("tau does not act on the domain's tower");
    if (!aut_commute_check(tau, domain->sigma()))
        throw ConfigError("twist automorphism does not commute with the domain's sigma");
    if (!is_fixed_by(domain->c(), tau))
        throw ConfigError("twist is not a ring automorphism: the structure constant moves under tau");

    auto R = std::shared_ptr<SkewRing>(new SkewRing());
    R->domain_ = std::move(domain);
    R->twist_power_ = twist_power;
    unsigned ord = tau.exact_order();
    R->tau_pow_.push_back(FieldAutomorphism::identity(R->domain_->K()));
    for (unsigned k = 1; k < ord; ++k) R->tau_pow_.push_back(tau.compose(R->tau_pow_.back()));
    R->tau_ = std::move(tau);

    // multiplicativity spot check of the coefficientwise twist
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> pick(-2, 2);
    for (int s = 0; s < 8; ++s) {
        std::vector<FieldElement> px, py;
        for (unsigned i = 0; i < R->domain_->degree(); ++i) {
            std::vector<Rat> cx(R->domain_->K()->degree()), cy(R->domain_->K()->degree());
            for (auto& q : cx) q = pick(rng);
            for (auto& q : cy) q = pick(rng);
            px.push_back(R->domain_->K()->from_coords(std::move(cx)));
            py.push_back(R->domain_->K()->from_coords(std::move(cy)));
        }
        AlgElement x = R->domain_->from_parts(std::move(px));
        AlgElement y = R->domain_->from_parts(std::move(py));
        if (R->twist(alg_mul(x, y), 1) != alg_mul(R->twist(x, 1), R->twist(y, 1)))
            throw InternalError("twist failed the multiplicativity spot check");
    }
    return R;
}

AlgElement SkewRing::twist(const AlgElement& x, long j) const {
    long ord = static_cast<long>(tau_->exact_order());
    long e = ((static_cast<long>(twist_power_) * j) % ord + ord) % ord;
    if (e == 0) return x;
    return map_parts(tau_pow_[static_cast<size_t>(e)], x);
}

// ---------------------------------------------------------------------------
// SkewPoly

namespace {

void trim(std::vector<AlgElement>& c) {
    while (!c.empty() && c.back().is_zero()) c.pop_back();
}

}  // namespace

SkewPoly::SkewPoly(RingPtr ring, std::vector<AlgElement> coeffs)
    : ring_(std::move(ring)), c_(std::move(coeffs)) {
    for (const auto& a : c_)
        if (a.algebra() != ring_->domain()) throw MathError("coefficient outside the ring's domain");
    trim(c_);
}

SkewPoly SkewPoly::zero(RingPtr ring) { return SkewPoly(std::move(ring), {}); }

SkewPoly SkewPoly::one(RingPtr ring) {
    AlgElement e = ring->domain()->one();
    return SkewPoly(std::move(ring), {e});
}

SkewPoly SkewPoly::monomial(RingPtr ring, AlgElement coeff, size_t power) {
    std::vector<AlgElement> c;
    for (size_t i = 0; i < power; ++i) c.push_back(ring->domain()->zero());
    c.push_back(std::move(coeff));
    return SkewPoly(std::move(ring), std::move(c));
}

SkewPoly SkewPoly::power_minus(RingPtr ring, size_t m, AlgElement d) {
    std::vector<AlgElement> c;
    c.push_back(-d);
    for (size_t i = 1; i < m; ++i) c.push_back(ring->domain()->zero());
    c.push_back(ring->domain()->one());
    return SkewPoly(std::move(ring), std::move(c));
}

AlgElement SkewPoly::coeff_or_zero(size_t i) const {
    if (i < c_.size()) return c_[i];
    return ring_->domain()->zero();
}

bool SkewPoly::is_monic() const { return !c_.empty() && c_.back() == ring_->domain()->one(); }

SkewPoly SkewPoly::operator-() const {
    std::vector<AlgElement> c;
    c.reserve(c_.size());
    for (const auto& a : c_) c.push_back(-a);
    return SkewPoly(ring_, std::move(c));
}

SkewPoly operator+(const SkewPoly& a, const SkewPoly& b) {
    if (a.ring_ != b.ring_) throw MathError("polynomials live in different rings");
    std::vector<AlgElement> c;
    size_t n = std::max(a.c_.size(), b.c_.size());
    for (size_t i = 0; i < n; ++i) c.push_back(a.coeff_or_zero(i) + b.coeff_or_zero(i));
    return SkewPoly(a.ring_, std::move(c));
}

SkewPoly operator-(const SkewPoly& a, const SkewPoly& b) { return a + (-b); }

bool operator==(const SkewPoly& a, const SkewPoly& b) {
    return a.ring_ == b.ring_ && a.c_ == b.c_;
}

SkewPoly sp_mul(const SkewPoly& g, const SkewPoly& h) {
    const RingPtr& R = g.ring();
    if (R != h.ring()) throw MathError("polynomials live in different rings");
    if (g.is_zero() || h.is_zero()) return SkewPoly::zero(R);
    std::vector<AlgElement> c;
    size_t n = g.coeffs().size() + h.coeffs().size() - 1;
    for (size_t i = 0; i < n; ++i) c.push_back(R->domain()->zero());
    for (size_t i = 0; i < g.coeffs().size(); ++i) {
        if (g.coeff(i).is_zero()) continue;
        for (size_t j = 0; j < h.coeffs().size(); ++j) {
            if (h.coeff(j).is_zero()) continue;
            // (a t^i)(b t^j) = a sigma^i(b) t^{i+j}
            c[i + j] += alg_mul(g.coeff(i), R->twist(h.coeff(j), static_cast<long>(i)));
        }
    }
    return SkewPoly(R, std::move(c));
}

namespace {

AlgElement lead_inverse_or_throw(const SkewPoly& f) {
    const AlgElement& lead = f.coeffs().back();
    if (lead == f.ring()->domain()->one()) return lead;
    if (!f.ring()->domain()->associative())
        throw MathError("division requires a monic divisor over a nonassociative domain");
    auto inv = alg_inverse(lead);
    if (!inv) throw MathError("leading coefficient of the divisor is not invertible");
    return *inv;
}

}  // namespace

SkewDivMod sp_divmod_right(const SkewPoly& g, const SkewPoly& f) {
    const RingPtr& R = g.ring();
    if (R != f.ring()) throw MathError("polynomials live in different rings");
    if (f.is_zero()) throw MathError("division by the zero polynomial");
    const bool monic = f.is_monic();
    std::optional<AlgElement> lead_inv;
    if (!monic) lead_inv = lead_inverse_or_throw(f);

    std::vector<AlgElement> q;
    std::vector<AlgElement> r = g.coeffs();
    const int df = f.degree();
    int dr = g.degree();
    if (dr >= df)
        for (int i = 0; i <= dr - df; ++i) q.push_back(R->domain()->zero());
    while (dr >= df) {
        const size_t k = static_cast<size_t>(dr - df);
        // (u t^k) f has leading coefficient u sigma^k(f_top)
        AlgElement u = monic ? r.back() : alg_mul(r.back(), R->twist(*lead_inv, static_cast<long>(k)));
        q[k] = u;
        for (int i = 0; i <= df; ++i) {
            AlgElement sub = alg_mul(u, R->twist(f.coeff(static_cast<size_t>(i)), static_cast<long>(k)));
            r[k + static_cast<size_t>(i)] -= sub;
        }
        trim(r);
        dr = static_cast<int>(r.size()) - 1;
    }
    return {SkewPoly(R, std::move(q)), SkewPoly(R, std::move(r))};
}

SkewDivMod sp_divmod_left(const SkewPoly& g, const SkewPoly& f) {
    const RingPtr& R = g.ring();
    if (R != f.ring()) throw MathError("polynomials live in different rings");
    if (f.is_zero()) throw MathError("division by the zero polynomial");
    const bool monic = f.is_monic();
    std::optional<AlgElement> lead_inv;
    if (!monic) lead_inv = lead_inverse_or_throw(f);

    std::vector<AlgElement> q;
    std::vector<AlgElement> r = g.coeffs();
    const int df = f.degree();
    int dr = g.degree();
    if (dr >= df)
        for (int i = 0; i <= dr - df; ++i) q.push_back(R->domain()->zero());
    while (dr >= df) {
        const size_t k = static_cast<size_t>(dr - df);
        // f (u t^k) has leading coefficient f_top sigma^{df}(u)
        AlgElement target = monic ? r.back() : alg_mul(*lead_inv, r.back());
        AlgElement u = R->twist(target, -static_cast<long>(df));
        q[k] = u;
        for (int i = 0; i <= df; ++i) {
            AlgElement sub = alg_mul(f.coeff(static_cast<size_t>(i)), R->twist(u, static_cast<long>(i)));
            r[k + static_cast<size_t>(i)] -= sub;
        }
        trim(r);
        dr = static_cast<int>(r.size()) - 1;
    }
    return {SkewPoly(R, std::move(q)), SkewPoly(R, std::move(r))};
}

SkewPoly petit_mul(const SkewPoly& g, const SkewPoly& h, const SkewPoly& f) {
    if (!f.is_monic()) throw MathError("petit multiplication requires a monic modulus");
    if (g.degree() >= f.degree() || h.degree() >= f.degree())
        throw MathError("petit multiplication operands must have degree below the modulus");
    return sp_divmod_right(sp_mul(g, h), f).r;
}

bool right_nucleus_member(const SkewPoly& g, const SkewPoly& f) {
    if (!f.is_monic()) throw MathError("right nucleus test requires a monic modulus");
    if (g.degree() >= f.degree())
        throw MathError("right nucleus test operand must have degree below the modulus");
    SkewDivMod dm = sp_divmod_right(sp_mul(f, g), f);
    if (!dm.r.is_zero()) return false;
    // re-verify by reconstruction: f g = q f exactly
    return sp_mul(f, g) == sp_mul(dm.q, f);
}

// ---------------------------------------------------------------------------
// factor searches

namespace {

void check_power_minus_shape(const SkewPoly& f) {
    if (f.degree() < 1 || !f.is_monic()) throw MathError("expected a monic polynomial t^m - d");
    for (int i = 1; i < f.degree(); ++i)
        if (!f.coeff(static_cast<size_t>(i)).is_zero())
            throw MathError("expected a binomial of the shape t^m - d");
}

}  // namespace

std::optional<AlgElement> linear_factor_search(const SkewPoly& f, const SearchLimits& lim,
                                               bool* exhausted_cap) {
    check_power_minus_shape(f);
    const RingPtr& R = f.ring();
    std::optional<AlgElement> witness;
    bool completed = enumerate_alg_elements(
        R->domain(), lim.height_budget, lim.enum_cap, [&](const AlgElement& z) {
            if (z.is_zero()) return false;
            SkewPoly lin(R, {-z, R->domain()->one()});
            if (sp_divmod_right(f, lin).r.is_zero()) {
                witness = z;
                return true;
            }
            return false;
        });
    if (exhausted_cap) *exhausted_cap = !completed && !witness;
    return witness;
}

std::optional<std::pair<AlgElement, AlgElement>> quadratic_factor_search(
    const SkewPoly& f, const SearchLimits& lim, bool* exhausted_cap) {
    check_power_minus_shape(f);
    if (f.degree() != 4) throw MathError("quadratic factor search expects degree 4");
    const RingPtr& R = f.ring();
    const AlgebraPtr& D = R->domain();
    const size_t degK = D->K()->degree();
    const size_t half = degK * D->degree();
    std::optional<std::pair<AlgElement, AlgElement>> witness;
    auto vector_to_alg = [&](const std::vector<Rat>& v, size_t offset) {
        std::vector<FieldElement> parts;
        for (unsigned i = 0; i < D->degree(); ++i)
            parts.push_back(D->K()->from_coords(std::vector<Rat>(
                v.begin() + static_cast<long>(offset + i * degK),
                v.begin() + static_cast<long>(offset + (i + 1) * degK))));
        return D->from_parts(std::move(parts));
    };
    bool completed = enumerate_vectors(
        2 * half, lim.height_budget, lim.enum_cap, [&](const std::vector<Rat>& v) {
            AlgElement z0 = vector_to_alg(v, 0);
            AlgElement z1 = vector_to_alg(v, half);
            SkewPoly quad(R, {-z0, -z1, D->one()});
            if (sp_divmod_right(f, quad).r.is_zero()) {
                witness = {z0, z1};
                return true;
            }
            return false;
        });
    if (exhausted_cap) *exhausted_cap = !completed && !witness;
    return witness;
}

IrreducibilityVerdict irreducibility_status(const SkewPoly& f, const IrredContext& ctx,
                                            const SearchLimits& lim) {
    check_power_minus_shape(f);
    IrreducibilityVerdict v;
    const int m = f.degree();
    if (m == 1) {
        v.status = IrredStatus::Irreducible;
        v.certificate = "SufficientCondition(degree 1)";
        return v;
    }
    if (m > 4 && !(ctx.m_prime && ctx.root_of_unity_in_center))
        throw MathError("degree above 4 requires the prime-degree root-of-unity hypothesis");

    bool cap_hit = false;
    std::optional<AlgElement> lin = linear_factor_search(f, lim, &cap_hit);
    if (lin) {
        SkewPoly h(f.ring(), {-*lin, f.ring()->domain()->one()});
        SkewPoly g = sp_divmod_right(f, h).q;
        if (sp_mul(g, h) != f) throw InternalError("linear factor witness failed reconstruction");
        v.status = IrredStatus::Reducible;
        v.certificate = "FactorWitness";
        v.factors = {g, h};
        v.detail = "right linear factor found";
        return v;
    }
    if (m == 4) {
        bool cap2 = false;
        auto quad = quadratic_factor_search(f, lim, &cap2);
        cap_hit = cap_hit || cap2;
        if (quad) {
            SkewPoly h(f.ring(), {-quad->first, -quad->second, f.ring()->domain()->one()});
            SkewPoly g = sp_divmod_right(f, h).q;
            if (sp_mul(g, h) != f) throw InternalError("quadratic factor witness failed reconstruction");
            v.status = IrredStatus::Reducible;
            v.certificate = "FactorWitness";
            v.factors = {g, h};
            v.detail = "right quadratic factor found";
            return v;
        }
    }
    if (ctx.sufficient_certificate) {
        v.status = IrredStatus::Irreducible;
        v.certificate = "SufficientCondition(" + *ctx.sufficient_certificate + ")";
        return v;
    }
    v.status = IrredStatus::Unknown;
    v.certificate = "SearchExhausted(" + lim.height_budget.str() + ")";
    v.detail = cap_hit ? "enumeration cap reached before exhausting the height budget"
                       : "no factor up to the height budget";
    return v;
}

}  // namespace cycode
