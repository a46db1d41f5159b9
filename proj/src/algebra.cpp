#include "cycode/algebra.hpp"

#include <algorithm>

namespace cycode {

// ---------------------------------------------------------------------------
// CyclicAlgebra

AlgebraPtr CyclicAlgebra::create(TowerPtr K, FieldAutomorphism sigma, unsigned n, FieldElement c) {
    if (sigma.tower() != K) throw MathError("sigma does not act on the given tower");
    if (c.tower() != K) throw MathError("structure constant lives in a different tower");
    if (n == 0) throw ConfigError("algebra degree must be positive");
    if (sigma.exact_order() != n)
        throw ConfigError("sigma must have order exactly equal to the algebra degree");
    if (c.is_zero()) throw ConfigError("structure constant must be nonzero");
    auto A = std::shared_ptr<CyclicAlgebra>(new CyclicAlgebra());
    A->K_ = std::move(K);
    A->sigma_ = std::move(sigma);
    A->n_ = n;
    A->associative_ = is_fixed_by(c, *A->sigma_);
    A->c_ = std::move(c);
    return A;
}

AlgebraPtr CyclicAlgebra::field_as_algebra(TowerPtr K) {
    FieldAutomorphism id = FieldAutomorphism::identity(K);
    FieldElement one = K->one();
    return create(std::move(K), std::move(id), 1, std::move(one));
}

AlgElement CyclicAlgebra::zero() const {
    std::vector<FieldElement> p;
    for (unsigned i = 0; i < n_; ++i) p.push_back(K_->zero());
    return AlgElement(shared_from_this(), std::move(p));
}

AlgElement CyclicAlgebra::one() const { return scalar(K_->one()); }

AlgElement CyclicAlgebra::from_parts(std::vector<FieldElement> parts) const {
    return AlgElement(shared_from_this(), std::move(parts));
}

AlgElement CyclicAlgebra::scalar(const FieldElement& k) const {
    AlgElement z = zero();
    std::vector<FieldElement> p = z.parts();
    p[0] = k;
    return AlgElement(shared_from_this(), std::move(p));
}

AlgElement CyclicAlgebra::e_power(unsigned i) const {
    if (i >= n_) throw MathError("basis power out of range");
    AlgElement z = zero();
    std::vector<FieldElement> p = z.parts();
    p[i] = K_->one();
    return AlgElement(shared_from_this(), std::move(p));
}

AlgElement CyclicAlgebra::basis_element(size_t idx) const {
    size_t degK = K_->degree();
    if (idx >= q_dimension()) throw MathError("basis index out of range");
    size_t i = idx / degK, m = idx % degK;
    std::vector<Rat> c(degK, Rat(0));
    c[m] = 1;
    AlgElement z = zero();
    std::vector<FieldElement> p = z.parts();
    p[i] = K_->from_coords(std::move(c));
    return AlgElement(shared_from_this(), std::move(p));
}

// ---------------------------------------------------------------------------
// AlgElement

AlgElement::AlgElement(AlgebraPtr alg, std::vector<FieldElement> parts)
    : alg_(std::move(alg)), x_(std::move(parts)) {
    if (x_.size() != alg_->degree()) throw MathError("wrong number of parts");
    for (const auto& p : x_)
        if (p.tower() != alg_->K()) throw MathError("part lives in a different tower");
}

bool AlgElement::is_zero() const {
    return std::all_of(x_.begin(), x_.end(), [](const FieldElement& p) { return p.is_zero(); });
}

bool AlgElement::is_scalar() const {
    for (size_t i = 1; i < x_.size(); ++i)
        if (!x_[i].is_zero()) return false;
    return true;
}

Int AlgElement::height() const {
    Int h = 0;
    for (const auto& p : x_) h = std::max(h, p.height());
    return h;
}

AlgElement AlgElement::operator-() const {
    std::vector<FieldElement> p;
    p.reserve(x_.size());
    for (const auto& e : x_) p.push_back(-e);
    return AlgElement(alg_, std::move(p));
}

AlgElement& AlgElement::operator+=(const AlgElement& o) {
    if (alg_ != o.alg_) throw MathError("elements live in different algebras");
    for (size_t i = 0; i < x_.size(); ++i) x_[i] += o.x_[i];
    return *this;
}

AlgElement& AlgElement::operator-=(const AlgElement& o) {
    if (alg_ != o.alg_) throw MathError("elements live in different algebras");
    for (size_t i = 0; i < x_.size(); ++i) x_[i] -= o.x_[i];
    return *this;
}

bool operator==(const AlgElement& a, const AlgElement& b) {
    return a.alg_ == b.alg_ && a.x_ == b.x_;
}

// ---------------------------------------------------------------------------
// operations

AlgElement alg_mul(const AlgElement& x, const AlgElement& y) {
    const auto& A = x.algebra();
    if (A != y.algebra()) throw MathError("elements live in different algebras");
    const unsigned n = A->degree();
    const auto& sigma = A->sigma();

    // sigma^j applied to the parts of x, computed incrementally
    AlgElement out = A->zero();
    std::vector<FieldElement> acc = out.parts();
    std::vector<FieldElement> xs = x.parts();  // sigma^j(x_i) for the current j
    for (unsigned j = 0; j < n; ++j) {
        if (j > 0)
            for (auto& p : xs) p = sigma(p);
        const FieldElement& yj = y.part(j);
        if (yj.is_zero()) continue;
        for (unsigned i = 0; i < n; ++i) {
            if (xs[i].is_zero()) continue;
            FieldElement term = xs[i] * yj;
            if (i + j < n)
                acc[i + j] += term;
            else
                acc[i + j - n] += A->c() * term;
        }
    }
    return A->from_parts(std::move(acc));
}

AlgElement alg_scale(const AlgElement& x, const FieldElement& k) {
    std::vector<FieldElement> p;
    p.reserve(x.parts().size());
    for (const auto& e : x.parts()) p.push_back(e * k);
    return x.algebra()->from_parts(std::move(p));
}

KMatrix lambda_matrix(const AlgElement& x) {
    const auto& A = x.algebra();
    const unsigned n = A->degree();
    KMatrix m(A->K(), n, n);
    for (unsigned j = 0; j < n; ++j) {
        AlgElement col = alg_mul(x, A->e_power(j));
        for (unsigned i = 0; i < n; ++i) m.at(i, j) = col.part(i);
    }
    return m;
}

AlgElement associator(const AlgElement& x, const AlgElement& y, const AlgElement& z) {
    return alg_mul(alg_mul(x, y), z) - alg_mul(x, alg_mul(y, z));
}

NucleusFlags nucleus_decide(const AlgElement& x) {
    const auto& A = x.algebra();
    const size_t dim = A->q_dimension();
    NucleusFlags f{true, true, true};
    for (size_t i = 0; i < dim && (f.left || f.middle || f.right); ++i) {
        AlgElement u = A->basis_element(i);
        for (size_t j = 0; j < dim && (f.left || f.middle || f.right); ++j) {
            AlgElement v = A->basis_element(j);
            if (f.left && !associator(x, u, v).is_zero()) f.left = false;
            if (f.middle && !associator(u, x, v).is_zero()) f.middle = false;
            if (f.right && !associator(u, v, x).is_zero()) f.right = false;
        }
    }
    return f;
}

AlgElement tau_tilde(const AlgElement& x, const FieldAutomorphism& tau) {
    const auto& A = x.algebra();
    if (tau.tower() != A->K()) throw MathError("tau does not act on the algebra's tower");
    if (!aut_commute_check(tau, A->sigma()))
        throw MathError("tau does not commute with the algebra's sigma");
    return map_parts(tau, x);
}

AlgElement map_parts(const FieldAutomorphism& phi, const AlgElement& x) {
    std::vector<FieldElement> p;
    p.reserve(x.parts().size());
    for (const auto& e : x.parts()) p.push_back(phi(e));
    return x.algebra()->from_parts(std::move(p));
}

FieldElement reduced_norm(const AlgElement& x) {
    const auto& A = x.algebra();
    if (!A->associative()) throw MathError("reduced norm requires an associative algebra");
    FieldElement det = det_bareiss(lambda_matrix(x));
    if (!is_fixed_by(det, A->sigma()))
        throw InternalError("reduced norm landed outside the fixed field");
    return det;
}

std::optional<AlgElement> alg_inverse(const AlgElement& x) {
    const auto& A = x.algebra();
    if (!A->associative()) throw MathError("inverse requires an associative algebra");
    KMatrix lam = lambda_matrix(x);
    std::vector<FieldElement> rhs;
    for (unsigned i = 0; i < A->degree(); ++i)
        rhs.push_back(i == 0 ? A->K()->one() : A->K()->zero());
    auto sol = solve_linear(std::move(lam), std::move(rhs));
    if (!sol) return std::nullopt;
    return A->from_parts(std::move(*sol));
}

// ---------------------------------------------------------------------------
// enumeration helpers

std::vector<Rat> rationals_of_height_up_to(const Int& h) {
    std::vector<Rat> vals;
    vals.emplace_back(0);
    for (Int hh = 1; hh <= h; ++hh) {
        // numerator-height hh: p = ±hh, q <= hh; denominator-height: q = hh, |p| < hh
        for (Int p = -hh; p <= hh; ++p) {
            if (boost::multiprecision::abs(p) == hh) {
                for (Int q = 1; q <= hh; ++q)
                    if (boost::multiprecision::gcd(boost::multiprecision::abs(p), q) == 1)
                        vals.emplace_back(p, q);
            } else {
                if (p != 0 && boost::multiprecision::gcd(boost::multiprecision::abs(p), hh) == 1)
                    vals.emplace_back(p, hh);
            }
        }
    }
    return vals;
}

bool enumerate_vectors(size_t dim, const Int& height_budget, uint64_t enum_cap,
                       const std::function<bool(const std::vector<Rat>&)>& fn) {
    uint64_t visited = 0;
    for (Int h = 1; h <= height_budget; ++h) {
        std::vector<Rat> vals = rationals_of_height_up_to(h);
        std::vector<size_t> odo(dim, 0);
        for (;;) {
            // keep only vectors whose max height is exactly h (new stratum)
            Int maxh = 0;
            for (size_t i = 0; i < dim; ++i) {
                Int hh = rat_height(vals[odo[i]]);
                if (hh > maxh) maxh = hh;
            }
            if (maxh == h) {
                if (++visited > enum_cap) return false;
                std::vector<Rat> coords(dim);
                for (size_t i = 0; i < dim; ++i) coords[i] = vals[odo[i]];
                if (fn(coords)) return true;
            }
            size_t k = 0;
            while (k < dim && ++odo[k] == vals.size()) {
                odo[k] = 0;
                ++k;
            }
            if (k == dim) break;
        }
    }
    return true;
}

bool enumerate_elements(const TowerPtr& tower, const Int& height_budget, uint64_t enum_cap,
                        const std::function<bool(const FieldElement&)>& fn) {
    return enumerate_vectors(tower->degree(), height_budget, enum_cap,
                             [&](const std::vector<Rat>& coords) {
                                 return fn(tower->from_coords(coords));
                             });
}

bool enumerate_alg_elements(const AlgebraPtr& A, const Int& height_budget, uint64_t enum_cap,
                            const std::function<bool(const AlgElement&)>& fn) {
    const size_t degK = A->K()->degree();
    const unsigned n = A->degree();
    return enumerate_vectors(degK * n, height_budget, enum_cap, [&](const std::vector<Rat>& v) {
        std::vector<FieldElement> parts;
        parts.reserve(n);
        for (unsigned i = 0; i < n; ++i)
            parts.push_back(A->K()->from_coords(
                std::vector<Rat>(v.begin() + i * degK, v.begin() + (i + 1) * degK)));
        return fn(A->from_parts(std::move(parts)));
    });
}

// ---------------------------------------------------------------------------
// division probe

namespace {

// With N_{K/F}(z) = c (full norm), f = t^n - c splits off the right factor
// (t - z) in K[t; sigma^{-1}]; translated back to the algebra this yields an
// explicit zero-divisor pair, verified by the caller.
std::pair<AlgElement, AlgElement> zero_divisor_from_norm(const AlgebraPtr& A,
                                                         const FieldElement& z) {
    const unsigned n = A->degree();
    const auto& sigma = A->sigma();
    // right division of t^n - c by (t - z) with twist sigma^{-1}:
    // quotient coefficients q_k = prod_{j=k+1}^{n-1} sigma^{-j}(z) ... built
    // incrementally from the top: q_{n-1} = 1, q_{k-1} = sigma^{-k}(z) q_k.
    std::vector<FieldElement> q(n, A->K()->zero());
    q[n - 1] = A->K()->one();
    FieldAutomorphism sigma_inv = sigma.pow(-1);
    for (unsigned k = n - 1; k > 0; --k) {
        FieldElement tw = z;
        for (unsigned j = 0; j < k; ++j) tw = sigma_inv(tw);
        q[k - 1] = tw * q[k];
    }
    // g = sum q_k t^k  maps to  sum e^k sigma^k(q_k)? No: the algebra-side
    // correspondence is t^k x <-> e^k x with left coefficient sigma^{-k}(x),
    // i.e. left coefficient a_k corresponds to e^k sigma^k(a_k).
    std::vector<FieldElement> gparts, hparts;
    for (unsigned k = 0; k < n; ++k) {
        FieldElement img = q[k];
        for (unsigned j = 0; j < k; ++j) img = sigma(img);
        gparts.push_back(img);
    }
    hparts.push_back(-z);
    hparts.push_back(A->K()->one());
    for (unsigned k = 2; k < n; ++k) hparts.push_back(A->K()->zero());
    return {A->from_parts(std::move(gparts)), A->from_parts(std::move(hparts))};
}

}  // namespace

CyclicProbeResult cyclic_division_probe(const AlgebraPtr& A, const Int& height_budget,
                                        uint64_t enum_cap) {
    CyclicProbeResult res;
    const unsigned n = A->degree();
    if (n == 1) {
        res.status = DivisionStatus::Certified;
        res.reason = "degree 1 (field)";
        return res;
    }
    if (!A->associative()) {
        auto is_prime = [](unsigned v) {
            if (v < 2) return false;
            for (unsigned p = 2; p * p <= v; ++p)
                if (v % p == 0) return false;
            return true;
        };
        if (is_prime(n)) {
            res.status = DivisionStatus::Certified;
            res.reason = "nonassociative cyclic algebra of prime degree";
            return res;
        }
        // exact linear independence of 1, c, ..., c^{n-1} over F = Fix(sigma)
        std::vector<FieldElement> fbasis = fixed_field_basis(A->sigma());
        const size_t degK = A->K()->degree();
        if (fbasis.size() * n != degK)
            throw InternalError("fixed field dimension does not divide as expected");
        std::vector<std::vector<Rat>> cols;
        FieldElement cpow = A->K()->one();
        for (unsigned i = 0; i < n; ++i) {
            for (const auto& fb : fbasis) {
                FieldElement prod = fb * cpow;
                cols.push_back(prod.coords());
            }
            cpow *= A->c();
        }
        // rank by rational elimination
        size_t rank = 0;
        std::vector<std::vector<Rat>> rows(degK, std::vector<Rat>(cols.size(), Rat(0)));
        for (size_t j = 0; j < cols.size(); ++j)
            for (size_t i = 0; i < degK; ++i) rows[i][j] = cols[j][i];
        for (size_t col = 0; col < cols.size(); ++col) {
            size_t piv = rows.size();
            for (size_t r = rank; r < rows.size(); ++r)
                if (rows[r][col] != 0) {
                    piv = r;
                    break;
                }
            if (piv == rows.size()) continue;
            std::swap(rows[rank], rows[piv]);
            Rat inv = Rat(1) / rows[rank][col];
            for (size_t j = col; j < cols.size(); ++j) rows[rank][j] *= inv;
            for (size_t r = 0; r < rows.size(); ++r) {
                if (r == rank || rows[r][col] == 0) continue;
                Rat f = rows[r][col];
                for (size_t j = col; j < cols.size(); ++j) rows[r][j] -= f * rows[rank][j];
            }
            ++rank;
        }
        if (rank == cols.size()) {
            res.status = DivisionStatus::Certified;
            res.reason = "1, c, ..., c^{n-1} linearly independent over the fixed field";
        } else {
            res.status = DivisionStatus::Unknown;
            res.reason = "powers of c are linearly dependent over the fixed field";
        }
        return res;
    }

    // associative: bounded search for z with N_{K/F}(z) = c^s
    std::vector<FieldElement> cpows;
    {
        FieldElement cp = A->c();
        for (unsigned s = 1; s <= n - 1; ++s) {
            cpows.push_back(cp);
            cp *= A->c();
        }
    }
    std::optional<std::pair<FieldElement, unsigned>> hit;
    bool completed = enumerate_elements(
        A->K(), height_budget, enum_cap, [&](const FieldElement& z) {
            if (z.is_zero()) return false;
            FieldElement nz = relative_norm(z, A->sigma(), n);
            for (unsigned s = 1; s <= n - 1; ++s) {
                if (nz == cpows[s - 1]) {
                    hit = {z, s};
                    return true;
                }
            }
            return false;
        });
    if (hit) {
        res.status = DivisionStatus::NotDivision;
        res.norm_witness = hit;
        res.reason = "norm relation N_{K/F}(z) = c^" + std::to_string(hit->second) + " found";
        if (hit->second == 1) {
            auto pair = zero_divisor_from_norm(A, hit->first);
            if (!alg_mul(pair.first, pair.second).is_zero())
                throw InternalError("constructed zero-divisor pair does not multiply to zero");
            res.zero_divisors = std::move(pair);
        }
        return res;
    }
    res.status = DivisionStatus::Unknown;
    res.reason = completed ? "no norm relation up to height " + height_budget.str()
                           : "search cap exhausted before covering the height budget";
    return res;
}

}  // namespace cycode
