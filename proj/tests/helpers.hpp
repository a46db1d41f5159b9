#pragma once

// shared fixtures for the test suites: the towers and automorphisms used
// throughout, plus deterministic random element generators

#include "cycode/algebra.hpp"
#include "cycode/embedding.hpp"
#include "cycode/numberfield.hpp"

#include <random>
#include <vector>

namespace testutil {

using namespace cycode;

// level with rational minpoly coefficients over a subtower of block size s
inline LevelSpec level(std::string name, std::vector<Rat> coeffs, size_t block, Rat re, Rat im,
                       Rat radius = Rat(1, 1024)) {
    LevelSpec lv;
    lv.name = std::move(name);
    for (auto& c : coeffs) {
        std::vector<Rat> v(block, Rat(0));
        v[0] = c;
        lv.minpoly.push_back(std::move(v));
    }
    lv.root_re = re;
    lv.root_im = im;
    lv.root_radius = radius;
    return lv;
}

// Q(sqrt(-7)), generator w, root +2.6457513...i
inline TowerPtr tower_w() {
    return FieldTower::create({level("w", {Rat(7), Rat(0)}, 1, Rat(0), rat_from_decimal("2.6457513110645906"))});
}

// Q(i), generator i
inline TowerPtr tower_i() {
    return FieldTower::create({level("i", {Rat(1), Rat(0)}, 1, Rat(0), Rat(1))});
}

// Q(i, sqrt(-7)): level 0 = i, level 1 = w
inline TowerPtr tower_iw() {
    return FieldTower::create(
        {level("i", {Rat(1), Rat(0)}, 1, Rat(0), Rat(1)),
         level("w", {Rat(7), Rat(0)}, 2, Rat(0), rat_from_decimal("2.6457513110645906"))});
}

// Q(theta), theta = 2cos(2pi/7), minpoly x^3 + x^2 - 2x - 1
inline TowerPtr tower_theta() {
    return FieldTower::create(
        {level("h", {Rat(-1), Rat(-2), Rat(1)}, 1, rat_from_decimal("1.2469796037174672"), Rat(0))});
}

// Q(i, theta)
inline TowerPtr tower_itheta() {
    return FieldTower::create(
        {level("i", {Rat(1), Rat(0)}, 1, Rat(0), Rat(1)),
         level("h", {Rat(-1), Rat(-2), Rat(1)}, 2, rat_from_decimal("1.2469796037174672"), Rat(0))});
}

// Q(theta, sqrt(-7)) for the cubic x quaternion tensor
inline TowerPtr tower_thetaw() {
    return FieldTower::create(
        {level("h", {Rat(-1), Rat(-2), Rat(1)}, 1, rat_from_decimal("1.2469796037174672"), Rat(0)),
         level("w", {Rat(7), Rat(0)}, 3, Rat(0), rat_from_decimal("2.6457513110645906"))});
}

// theta -> theta^2 - 2 on a tower whose level `lvl` is theta
inline FieldElement theta_conjugate_image(const TowerPtr& t, size_t lvl) {
    FieldElement th = t->generator(lvl);
    return th * th - t->rational(2);
}

struct RandomElements {
    std::mt19937_64 rng;
    explicit RandomElements(uint64_t seed) : rng(seed) {}

    Rat rat(int num_bound = 3, int den_bound = 3) {
        std::uniform_int_distribution<int> nd(-num_bound, num_bound);
        std::uniform_int_distribution<int> dd(1, den_bound);
        return Rat(nd(rng), dd(rng));
    }

    FieldElement field(const TowerPtr& t, int num_bound = 3, int den_bound = 3) {
        std::vector<Rat> c(t->degree());
        for (auto& q : c) q = rat(num_bound, den_bound);
        return t->from_coords(std::move(c));
    }

    FieldElement nonzero_field(const TowerPtr& t, int num_bound = 3, int den_bound = 3) {
        for (;;) {
            FieldElement x = field(t, num_bound, den_bound);
            if (!x.is_zero()) return x;
        }
    }

    AlgElement alg(const AlgebraPtr& A, int num_bound = 2, int den_bound = 2) {
        std::vector<FieldElement> parts;
        for (unsigned i = 0; i < A->degree(); ++i) parts.push_back(field(A->K(), num_bound, den_bound));
        return A->from_parts(std::move(parts));
    }

    AlgElement nonzero_alg(const AlgebraPtr& A, int num_bound = 2, int den_bound = 2) {
        for (;;) {
            AlgElement x = alg(A, num_bound, den_bound);
            if (!x.is_zero()) return x;
        }
    }
};

}  // namespace testutil
