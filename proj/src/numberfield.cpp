#include "cycode/numberfield.hpp"

#include <algorithm>
#include <sstream>

namespace cycode {

// ---------------------------------------------------------------------------
// FieldTower

TowerPtr FieldTower::create(std::vector<LevelSpec> levels) {
    auto t = std::shared_ptr<FieldTower>(new FieldTower());
    t->levels_ = std::move(levels);
    size_t block = 1;
    for (size_t i = 0; i < t->levels_.size(); ++i) {
        const LevelSpec& lv = t->levels_[i];
        size_t deg = lv.minpoly.size();
        if (deg < 2)
            throw ConfigError("level '" + lv.name + "': minimal polynomial degree must be >= 2");
        for (const auto& coeff : lv.minpoly)
            if (coeff.size() != block)
                throw ConfigError("level '" + lv.name +
                                  "': coefficient vector length does not match subtower degree");
        if (lv.name.empty()) throw ConfigError("unnamed tower level");
        for (size_t j = 0; j < i; ++j)
            if (t->levels_[j].name == lv.name)
                throw ConfigError("duplicate generator name '" + lv.name + "'");
        t->block_start_.push_back(block);
        t->level_degree_.push_back(deg);
        block *= deg;
    }
    t->degree_ = block;
    return t;
}

std::optional<size_t> FieldTower::level_index(std::string_view name) const {
    for (size_t i = 0; i < levels_.size(); ++i)
        if (levels_[i].name == name) return i;
    return std::nullopt;
}

FieldElement FieldTower::zero() const {
    return FieldElement(shared_from_this(), std::vector<Rat>(degree_, Rat(0)));
}

FieldElement FieldTower::one() const { return rational(Rat(1)); }

FieldElement FieldTower::rational(const Rat& q) const {
    std::vector<Rat> c(degree_, Rat(0));
    c[0] = q;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FieldTower::generator(size_t i) const {
    if (i >= levels_.size()) throw MathError("generator index out of range");
    std::vector<Rat> c(degree_, Rat(0));
    c[block_start_[i]] = 1;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement FieldTower::from_coords(std::vector<Rat> coords) const {
    if (coords.size() != degree_) throw MathError("coordinate vector has wrong length");
    return FieldElement(shared_from_this(), std::move(coords));
}

size_t FieldTower::exponent_at(size_t index, size_t level) const {
    return (index / block_start_[level]) % level_degree_[level];
}

std::string FieldTower::monomial_name(size_t index) const {
    std::ostringstream os;
    bool first = true;
    for (size_t l = 0; l < levels_.size(); ++l) {
        size_t e = exponent_at(index, l);
        if (e == 0) continue;
        if (!first) os << "*";
        os << levels_[l].name;
        if (e > 1) os << "^" << e;
        first = false;
    }
    if (first) return "1";
    return os.str();
}

namespace {

bool vec_is_zero(const Rat* a, size_t n) {
    for (size_t i = 0; i < n; ++i)
        if (a[i] != 0) return false;
    return true;
}

}  // namespace

// Product of two subtower elements of the first k levels (vectors of length
// block_size(k)); the top level is treated as a polynomial in g_{k-1} over
// the subtower and reduced modulo its minimal polynomial.
std::vector<Rat> FieldTower::mul_vec(size_t k, const Rat* a, const Rat* b) const {
    if (k == 0) return {a[0] * b[0]};
    const size_t d = level_degree_[k - 1];
    const size_t s = block_start_[k - 1];

    std::vector<std::vector<Rat>> conv(2 * d - 1);
    for (size_t i = 0; i < d; ++i) {
        if (vec_is_zero(a + i * s, s)) continue;
        for (size_t j = 0; j < d; ++j) {
            if (vec_is_zero(b + j * s, s)) continue;
            std::vector<Rat> prod = mul_vec(k - 1, a + i * s, b + j * s);
            auto& dst = conv[i + j];
            if (dst.empty()) {
                dst = std::move(prod);
            } else {
                for (size_t t = 0; t < s; ++t) dst[t] += prod[t];
            }
        }
    }
    reduce_chunks(k, conv);
    std::vector<Rat> out(s * d, Rat(0));
    for (size_t i = 0; i < d; ++i)
        if (!conv[i].empty())
            for (size_t t = 0; t < s; ++t) out[i * s + t] = std::move(conv[i][t]);
    return out;
}

// In-place reduction of a chunked polynomial in g_{k-1} (chunks over the
// subtower of k-1 levels, empty chunk == zero) modulo the monic minimal
// polynomial of level k-1.
void FieldTower::reduce_chunks(size_t k, std::vector<std::vector<Rat>>& chunks) const {
    const size_t d = level_degree_[k - 1];
    const size_t s = block_start_[k - 1];
    const auto& mp = levels_[k - 1].minpoly;
    for (size_t p = chunks.size(); p-- > d;) {
        if (chunks[p].empty() || vec_is_zero(chunks[p].data(), s)) continue;
        std::vector<Rat> top = std::move(chunks[p]);
        chunks[p].clear();
        // g^d = -sum_t mp[t] g^t, so top*g^p folds into positions p-d+t.
        for (size_t t = 0; t < d; ++t) {
            if (vec_is_zero(mp[t].data(), s)) continue;
            std::vector<Rat> prod = mul_vec(k - 1, top.data(), mp[t].data());
            auto& dst = chunks[p - d + t];
            if (dst.empty()) dst.assign(s, Rat(0));
            for (size_t u = 0; u < s; ++u) dst[u] -= prod[u];
        }
    }
}

namespace {

// dense polynomial over the subtower of k-1 levels; coefficients are raw
// coordinate vectors of length s
struct SubPoly {
    std::vector<std::vector<Rat>> c;

    int deg() const {
        for (size_t i = c.size(); i-- > 0;)
            if (!vec_is_zero(c[i].data(), c[i].size())) return static_cast<int>(i);
        return -1;
    }
    void trim() {
        while (!c.empty() && vec_is_zero(c.back().data(), c.back().size())) c.pop_back();
    }
};

}  // namespace

// Inverse in the subtower field of the first k levels, by extended Euclid
// against the top minimal polynomial, recursing for subfield inverses.
std::vector<Rat> FieldTower::inv_vec(size_t k, const Rat* a) const {
    if (k == 0) {
        if (a[0] == 0) throw MathError("division by zero");
        return {Rat(1) / a[0]};
    }
    const size_t d = level_degree_[k - 1];
    const size_t s = block_start_[k - 1];
    if (vec_is_zero(a, s * d)) throw MathError("division by zero");

    auto sub_mul = [&](const std::vector<Rat>& x, const std::vector<Rat>& y) {
        return mul_vec(k - 1, x.data(), y.data());
    };
    auto sub_inv = [&](const std::vector<Rat>& x) { return inv_vec(k - 1, x.data()); };

    SubPoly r0, r1, t0, t1;
    r0.c = levels_[k - 1].minpoly;
    r0.c.push_back(std::vector<Rat>(s, Rat(0)));
    r0.c.back()[0] = 1;  // monic
    for (size_t i = 0; i < d; ++i) r1.c.emplace_back(a + i * s, a + (i + 1) * s);
    r1.trim();
    t0.c = {};                                       // 0
    t1.c = {std::vector<Rat>(s, Rat(0))};            // 1
    t1.c[0][0] = 1;

    while (r1.deg() > 0) {
        // divide r0 by r1 (both over the commutative subtower field)
        SubPoly q;
        q.c.assign(static_cast<size_t>(r0.deg() - r1.deg() + 1), std::vector<Rat>(s, Rat(0)));
        SubPoly rem = r0;
        std::vector<Rat> lead_inv = sub_inv(r1.c[static_cast<size_t>(r1.deg())]);
        while (rem.deg() >= r1.deg()) {
            size_t shift = static_cast<size_t>(rem.deg() - r1.deg());
            std::vector<Rat> factor = sub_mul(rem.c[static_cast<size_t>(rem.deg())], lead_inv);
            q.c[shift] = factor;
            for (size_t i = 0; i <= static_cast<size_t>(r1.deg()); ++i) {
                std::vector<Rat> prod = sub_mul(factor, r1.c[i]);
                for (size_t u = 0; u < s; ++u) rem.c[shift + i][u] -= prod[u];
            }
            rem.trim();
            if (rem.c.empty()) break;
        }
        // (r0, r1) <- (r1, rem); (t0, t1) <- (t1, t0 - q*t1)
        SubPoly qt1;
        if (!t1.c.empty() && q.deg() >= 0) {
            qt1.c.assign(q.c.size() + t1.c.size() - 1, std::vector<Rat>(s, Rat(0)));
            for (size_t i = 0; i < q.c.size(); ++i)
                for (size_t j = 0; j < t1.c.size(); ++j) {
                    std::vector<Rat> prod = sub_mul(q.c[i], t1.c[j]);
                    for (size_t u = 0; u < s; ++u) qt1.c[i + j][u] += prod[u];
                }
        }
        SubPoly t2 = t0;
        if (t2.c.size() < qt1.c.size()) t2.c.resize(qt1.c.size(), std::vector<Rat>(s, Rat(0)));
        for (size_t i = 0; i < qt1.c.size(); ++i)
            for (size_t u = 0; u < s; ++u) t2.c[i][u] -= qt1.c[i][u];
        r0 = std::move(r1);
        r1 = std::move(rem);
        t0 = std::move(t1);
        t1 = std::move(t2);
        t1.trim();
    }

    if (r1.deg() < 0) {
        // gcd(a, minpoly) = r0 is a proper factor: the supplied polynomial
        // was not irreducible after all.
        throw ConfigError("element not invertible: minimal polynomial of level '" +
                          levels_[k - 1].name + "' is reducible");
    }
    // r1 is a nonzero constant: inverse = t1 / r1
    std::vector<Rat> cinv = sub_inv(r1.c[0]);
    std::vector<Rat> out(s * d, Rat(0));
    for (size_t i = 0; i < t1.c.size(); ++i) {
        std::vector<Rat> prod = sub_mul(t1.c[i], cinv);
        for (size_t u = 0; u < s; ++u) out[i * s + u] = std::move(prod[u]);
    }
    return out;
}

FieldElement FieldTower::from_poly(const std::vector<Rat>& coords) const {
    const size_t k = levels_.size();
    if (k == 0) {
        if (coords.size() > 1)
            for (size_t i = 1; i < coords.size(); ++i)
                if (coords[i] != 0) throw MathError("nontrivial polynomial over a trivial tower");
        std::vector<Rat> c{coords.empty() ? Rat(0) : coords[0]};
        return FieldElement(shared_from_this(), std::move(c));
    }
    const size_t s = block_start_[k - 1];
    size_t nchunks = (coords.size() + s - 1) / s;
    std::vector<std::vector<Rat>> chunks(std::max(nchunks, level_degree_[k - 1]));
    for (size_t i = 0; i < nchunks; ++i) {
        chunks[i].assign(s, Rat(0));
        for (size_t u = 0; u < s && i * s + u < coords.size(); ++u) chunks[i][u] = coords[i * s + u];
    }
    reduce_chunks(k, chunks);
    std::vector<Rat> out(degree_, Rat(0));
    for (size_t i = 0; i < level_degree_[k - 1]; ++i)
        if (!chunks[i].empty())
            for (size_t u = 0; u < s; ++u) out[i * s + u] = std::move(chunks[i][u]);
    return FieldElement(shared_from_this(), std::move(out));
}

// ---------------------------------------------------------------------------
// FieldElement

FieldElement::FieldElement(TowerPtr tower, std::vector<Rat> coords)
    : tower_(std::move(tower)), c_(std::move(coords)) {
    if (c_.size() != tower_->degree()) throw MathError("coordinate vector has wrong length");
}

bool FieldElement::is_zero() const { return vec_is_zero(c_.data(), c_.size()); }

bool FieldElement::is_rational() const {
    for (size_t i = 1; i < c_.size(); ++i)
        if (c_[i] != 0) return false;
    return true;
}

Rat FieldElement::rational_value() const {
    if (!is_rational()) throw MathError("element is not rational");
    return c_[0];
}

Int FieldElement::height() const {
    Int h = 0;
    for (const auto& q : c_) {
        Int hq = rat_height(q);
        if (hq > h) h = hq;
    }
    return h;
}

void FieldElement::check_same_tower(const FieldElement& o) const {
    if (tower_ != o.tower_) throw MathError("operands live in different towers");
}

FieldElement FieldElement::operator-() const {
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = -c_[i];
    return FieldElement(tower_, std::move(c));
}

FieldElement& FieldElement::operator+=(const FieldElement& o) {
    check_same_tower(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
    return *this;
}

FieldElement& FieldElement::operator-=(const FieldElement& o) {
    check_same_tower(o);
    for (size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
    return *this;
}

FieldElement& FieldElement::operator*=(const FieldElement& o) {
    check_same_tower(o);
    c_ = tower_->mul_vec(tower_->level_count(), c_.data(), o.c_.data());
    return *this;
}

FieldElement& FieldElement::operator/=(const FieldElement& o) {
    check_same_tower(o);
    std::vector<Rat> inv = tower_->inv_vec(tower_->level_count(), o.c_.data());
    c_ = tower_->mul_vec(tower_->level_count(), c_.data(), inv.data());
    return *this;
}

bool operator==(const FieldElement& a, const FieldElement& b) {
    return a.tower_ == b.tower_ && a.c_ == b.c_;
}

FieldElement FieldElement::inverse() const {
    return FieldElement(tower_, tower_->inv_vec(tower_->level_count(), c_.data()));
}

FieldElement FieldElement::pow(long e) const {
    if (e < 0) return inverse().pow(-e);
    FieldElement acc = tower_->one();
    FieldElement base = *this;
    unsigned long u = static_cast<unsigned long>(e);
    while (u) {
        if (u & 1) acc *= base;
        base *= base;
        u >>= 1;
    }
    return acc;
}

FieldElement FieldElement::scaled(const Rat& q) const {
    std::vector<Rat> c(c_.size());
    for (size_t i = 0; i < c_.size(); ++i) c[i] = c_[i] * q;
    return FieldElement(tower_, std::move(c));
}

bool coord_less(const FieldElement& a, const FieldElement& b) {
    const auto& x = a.coords();
    const auto& y = b.coords();
    for (size_t i = 0; i < x.size(); ++i) {
        if (x[i] < y[i]) return true;
        if (y[i] < x[i]) return false;
    }
    return false;
}

// ---------------------------------------------------------------------------
// FieldAutomorphism

namespace {

std::vector<std::vector<Rat>> action_matrix(const TowerPtr& tower,
                                            const std::vector<FieldElement>& gen_images) {
    const size_t L = tower->level_count();
    const size_t deg = tower->degree();
    // powers of each generator image
    std::vector<std::vector<FieldElement>> pw(L);
    for (size_t l = 0; l < L; ++l) {
        pw[l].push_back(tower->one());
        for (size_t e = 1; e < tower->level_degree(l); ++e) pw[l].push_back(pw[l][e - 1] * gen_images[l]);
    }
    std::vector<std::vector<Rat>> mat;
    mat.reserve(deg);
    for (size_t idx = 0; idx < deg; ++idx) {
        FieldElement img = tower->one();
        for (size_t l = 0; l < L; ++l) {
            size_t e = tower->exponent_at(idx, l);
            if (e) img *= pw[l][e];
        }
        mat.push_back(img.coords());
    }
    return mat;
}

std::vector<Rat> apply_matrix(const std::vector<std::vector<Rat>>& mat, const std::vector<Rat>& v) {
    const size_t deg = v.size();
    std::vector<Rat> out(deg, Rat(0));
    for (size_t j = 0; j < deg; ++j) {
        if (v[j] == 0) continue;
        const auto& col = mat[j];
        for (size_t i = 0; i < deg; ++i)
            if (col[i] != 0) out[i] += col[i] * v[j];
    }
    return out;
}

}  // namespace

FieldAutomorphism FieldAutomorphism::create(TowerPtr tower, std::vector<FieldElement> gen_images,
                                            unsigned declared_order) {
    if (gen_images.size() != tower->level_count())
        throw ConfigError("automorphism must provide an image for every generator");
    if (declared_order == 0) throw ConfigError("automorphism order must be positive");
    for (const auto& g : gen_images)
        if (g.tower() != tower) throw MathError("generator image lives in a different tower");

    FieldAutomorphism phi;
    phi.tower_ = tower;
    phi.gen_images_ = std::move(gen_images);
    phi.declared_order_ = declared_order;
    phi.mat_ = action_matrix(tower, phi.gen_images_);

    // ring-map check: each image must annihilate its minimal polynomial
    for (size_t l = 0; l < tower->level_count(); ++l) {
        const auto& mp = tower->level(l).minpoly;
        const size_t d = mp.size();
        FieldElement acc = phi.gen_images_[l].pow(static_cast<long>(d));
        for (size_t t = 0; t < d; ++t) {
            // lift the subtower coefficient and map it through phi
            std::vector<Rat> lift(tower->degree(), Rat(0));
            std::copy(mp[t].begin(), mp[t].end(), lift.begin());
            FieldElement mapped(tower, apply_matrix(phi.mat_, lift));
            acc += mapped * phi.gen_images_[l].pow(static_cast<long>(t));
        }
        if (!acc.is_zero())
            throw ConfigError("automorphism image of '" + tower->level(l).name +
                              "' does not satisfy its minimal polynomial");
    }

    // order check by iterating on generators
    unsigned k = 0;
    std::vector<FieldElement> cur = phi.gen_images_;
    auto is_identity = [&](const std::vector<FieldElement>& imgs) {
        for (size_t l = 0; l < tower->level_count(); ++l)
            if (imgs[l] != tower->generator(l)) return false;
        return true;
    };
    unsigned exact = 0;
    for (k = 1; k <= declared_order; ++k) {
        if (is_identity(cur)) {
            exact = k;
            break;
        }
        for (auto& g : cur) g = FieldElement(tower, apply_matrix(phi.mat_, g.coords()));
    }
    if (exact == 0) throw ConfigError("automorphism does not have the declared order");
    if (declared_order % exact != 0)
        throw ConfigError("automorphism does not have the declared order");
    if (tower->degree() % exact != 0)
        throw ConfigError("automorphism order does not divide the tower degree");
    phi.exact_order_ = exact;
    return phi;
}

FieldAutomorphism FieldAutomorphism::identity(TowerPtr tower) {
    std::vector<FieldElement> gens;
    for (size_t l = 0; l < tower->level_count(); ++l) gens.push_back(tower->generator(l));
    return create(tower, std::move(gens), 1);
}

FieldElement FieldAutomorphism::operator()(const FieldElement& x) const {
    if (x.tower() != tower_) throw MathError("element lives in a different tower");
    return FieldElement(tower_, apply_matrix(mat_, x.coords()));
}

FieldAutomorphism FieldAutomorphism::compose(const FieldAutomorphism& inner) const {
    if (inner.tower_ != tower_) throw MathError("automorphisms live in different towers");
    std::vector<FieldElement> gens;
    for (size_t l = 0; l < tower_->level_count(); ++l) gens.push_back((*this)(inner.gen_images_[l]));
    // any automorphism order divides the tower degree
    return create(tower_, std::move(gens), static_cast<unsigned>(tower_->degree()));
}

FieldAutomorphism FieldAutomorphism::pow(long k) const {
    long m = static_cast<long>(exact_order_);
    long r = ((k % m) + m) % m;
    FieldAutomorphism acc = identity(tower_);
    for (long i = 0; i < r; ++i) acc = compose(acc);
    return acc;
}

bool FieldAutomorphism::same_map(const FieldAutomorphism& o) const {
    if (tower_ != o.tower_) return false;
    for (size_t l = 0; l < tower_->level_count(); ++l)
        if (gen_images_[l] != o.gen_images_[l]) return false;
    return true;
}

bool aut_commute_check(const FieldAutomorphism& phi, const FieldAutomorphism& psi) {
    if (phi.tower() != psi.tower()) throw MathError("automorphisms live in different towers");
    for (size_t l = 0; l < phi.tower()->level_count(); ++l) {
        FieldElement g = phi.tower()->generator(l);
        if (phi(psi(g)) != psi(phi(g))) return false;
    }
    return true;
}

bool is_fixed_by(const FieldElement& x, const FieldAutomorphism& phi) { return phi(x) == x; }

FieldElement relative_norm(const FieldElement& x, const FieldAutomorphism& phi, unsigned k) {
    if (k != phi.exact_order()) throw MathError("relative_norm requires k = order of the map");
    FieldElement acc = x;
    FieldElement img = x;
    for (unsigned i = 1; i < k; ++i) {
        img = phi(img);
        acc *= img;
    }
    return acc;
}

namespace {

// Q-kernel basis of the linear maps (phi - id) for each given automorphism,
// i.e. the joint fixed subspace.
std::vector<FieldElement> fixed_basis_impl(const TowerPtr& tower,
                                           const std::vector<const FieldAutomorphism*>& phis) {
    const size_t n = tower->degree();
    // rows of the stacked (phi - id) matrices, row-major
    std::vector<std::vector<Rat>> rows;
    for (const auto* phi : phis) {
        const auto& mat = phi->matrix();
        for (size_t i = 0; i < n; ++i) {
            std::vector<Rat> row(n);
            for (size_t j = 0; j < n; ++j) {
                row[j] = mat[j][i];
                if (i == j) row[j] -= 1;
            }
            rows.push_back(std::move(row));
        }
    }
    // row-reduce
    size_t rank = 0;
    std::vector<size_t> pivot_col;
    for (size_t col = 0; col < n && rank < rows.size(); ++col) {
        size_t sel = rows.size();
        for (size_t r = rank; r < rows.size(); ++r)
            if (rows[r][col] != 0) {
                sel = r;
                break;
            }
        if (sel == rows.size()) continue;
        std::swap(rows[rank], rows[sel]);
        Rat inv = Rat(1) / rows[rank][col];
        for (size_t j = col; j < n; ++j) rows[rank][j] *= inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r][col] == 0) continue;
            Rat f = rows[r][col];
            for (size_t j = col; j < n; ++j) rows[r][j] -= f * rows[rank][j];
        }
        pivot_col.push_back(col);
        ++rank;
    }
    std::vector<bool> is_pivot(n, false);
    for (size_t c : pivot_col) is_pivot[c] = true;
    std::vector<FieldElement> basis;
    for (size_t free = 0; free < n; ++free) {
        if (is_pivot[free]) continue;
        std::vector<Rat> v(n, Rat(0));
        v[free] = 1;
        for (size_t r = 0; r < rank; ++r) v[pivot_col[r]] = -rows[r][free];
        basis.push_back(tower->from_coords(std::move(v)));
    }
    return basis;
}

}  // namespace

std::vector<FieldElement> fixed_field_basis(const FieldAutomorphism& phi) {
    return fixed_basis_impl(phi.tower(), {&phi});
}

std::vector<FieldElement> fixed_field_basis(const FieldAutomorphism& phi,
                                            const FieldAutomorphism& psi) {
    if (phi.tower() != psi.tower()) throw MathError("automorphisms live in different towers");
    return fixed_basis_impl(phi.tower(), {&phi, &psi});
}

}  // namespace cycode
