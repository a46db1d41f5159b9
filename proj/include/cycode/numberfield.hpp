#pragma once

#include "cycode/common.hpp"

#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace cycode {

class FieldTower;
class FieldElement;
using TowerPtr = std::shared_ptr<const FieldTower>;

// One extension step: a monic minimal polynomial over the tower below and a
// pinned complex root used by the embedding. Coefficients are given in the
// subtower's power basis (ascending degree, excluding the leading 1).
struct LevelSpec {
    std::string name;
    std::vector<std::vector<Rat>> minpoly;  // minpoly[k] = coefficient of g^k, k < degree
    Rat root_re{0};
    Rat root_im{0};
    Rat root_radius{Rat(1, 1024)};
};

// A tower of extensions of Q. Elements are dense Rat vectors over the
// multi-power basis g_0^{a_0}...g_{L-1}^{a_{L-1}}, a_i < deg_i, indexed in
// mixed radix with level 0 varying fastest, so a subtower element occupies
// a prefix of the coordinate vector.
class FieldTower : public std::enable_shared_from_this<FieldTower> {
public:
    static TowerPtr create(std::vector<LevelSpec> levels);

    size_t level_count() const { return levels_.size(); }
    size_t degree() const { return degree_; }
    size_t level_degree(size_t i) const { return level_degree_[i]; }
    // product of level degrees below level i (size of a subtower element)
    size_t block_size(size_t i) const { return block_start_[i]; }
    const LevelSpec& level(size_t i) const { return levels_[i]; }
    std::optional<size_t> level_index(std::string_view name) const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement rational(const Rat& q) const;
    FieldElement generator(size_t i) const;
    FieldElement from_coords(std::vector<Rat> coords) const;
    // Reduces a coefficient vector of arbitrary length (a polynomial in the
    // top generator over the subtower) to the power basis.
    FieldElement from_poly(const std::vector<Rat>& coords) const;

    // Exponent of generator `level` in basis monomial `index`.
    size_t exponent_at(size_t index, size_t level) const;
    std::string monomial_name(size_t index) const;

    // internal arithmetic on raw coordinate vectors over the first k levels
    std::vector<Rat> mul_vec(size_t k, const Rat* a, const Rat* b) const;
    std::vector<Rat> inv_vec(size_t k, const Rat* a) const;
    void reduce_chunks(size_t k, std::vector<std::vector<Rat>>& chunks) const;

private:
    friend class FieldElement;
    FieldTower() = default;

    std::vector<LevelSpec> levels_;
    std::vector<size_t> level_degree_;
    std::vector<size_t> block_start_;  // block_start_[k] = prod of degrees below k
    size_t degree_ = 1;
};

class FieldAutomorphism;

class FieldElement {
public:
    FieldElement(TowerPtr tower, std::vector<Rat> coords);

    const TowerPtr& tower() const { return tower_; }
    const std::vector<Rat>& coords() const { return c_; }
    const Rat& coord(size_t i) const { return c_[i]; }

    bool is_zero() const;
    bool is_rational() const;
    Rat rational_value() const;  // requires is_rational()
    Int height() const;

    FieldElement operator-() const;
    FieldElement& operator+=(const FieldElement& o);
    FieldElement& operator-=(const FieldElement& o);
    FieldElement& operator*=(const FieldElement& o);
    FieldElement& operator/=(const FieldElement& o);

    friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
    friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
    friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
    friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
    friend bool operator==(const FieldElement& a, const FieldElement& b);
    friend bool operator!=(const FieldElement& a, const FieldElement& b) { return !(a == b); }

    FieldElement inverse() const;
    FieldElement pow(long e) const;
    FieldElement scaled(const Rat& q) const;

private:
    void check_same_tower(const FieldElement& o) const;
    TowerPtr tower_;
    std::vector<Rat> c_;
};

// Total order on elements of one tower (coordinate-lexicographic); used for
// deterministic deduplication, not for any algebraic meaning.
bool coord_less(const FieldElement& a, const FieldElement& b);

// Ring map determined by images of the tower generators. Construction checks
// that each generator image annihilates its minimal polynomial, that the map
// iterated `declared_order` times is the identity, and that the exact order
// divides the tower degree.
class FieldAutomorphism {
public:
    static FieldAutomorphism create(TowerPtr tower, std::vector<FieldElement> gen_images,
                                    unsigned declared_order);
    static FieldAutomorphism identity(TowerPtr tower);

    const TowerPtr& tower() const { return tower_; }
    unsigned declared_order() const { return declared_order_; }
    unsigned exact_order() const { return exact_order_; }
    const FieldElement& generator_image(size_t i) const { return gen_images_[i]; }

    FieldElement operator()(const FieldElement& x) const;

    FieldAutomorphism compose(const FieldAutomorphism& inner) const;  // this ∘ inner
    FieldAutomorphism pow(long k) const;                              // k may be negative
    bool same_map(const FieldAutomorphism& o) const;

    // column-major action matrix over Q; column j = image of basis monomial j
    const std::vector<std::vector<Rat>>& matrix() const { return mat_; }

private:
    FieldAutomorphism() = default;
    TowerPtr tower_;
    std::vector<FieldElement> gen_images_;
    unsigned declared_order_ = 1;
    unsigned exact_order_ = 1;
    std::vector<std::vector<Rat>> mat_;  // mat_[j] = coords of image of monomial j
};

bool aut_commute_check(const FieldAutomorphism& phi, const FieldAutomorphism& psi);

bool is_fixed_by(const FieldElement& x, const FieldAutomorphism& phi);

// x · phi(x) · ... · phi^{k-1}(x); requires k == exact order of phi.
FieldElement relative_norm(const FieldElement& x, const FieldAutomorphism& phi, unsigned k);

// Q-basis of the fixed subspace of phi (as elements of the tower).
std::vector<FieldElement> fixed_field_basis(const FieldAutomorphism& phi);
std::vector<FieldElement> fixed_field_basis(const FieldAutomorphism& phi,
                                            const FieldAutomorphism& psi);

}  // namespace cycode
