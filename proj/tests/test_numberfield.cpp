#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "helpers.hpp"

#include <cmath>

using namespace cycode;
using namespace testutil;

namespace {

Rat approx_rat(double v, long long scale = 1000000000000LL) {
    return Rat(static_cast<long long>(std::llround(v * static_cast<double>(scale))), scale);
}

bool interval_near(const RatInterval& iv, double v, double tol) {
    Rat lo = iv.lo - approx_rat(v);
    Rat hi = iv.hi - approx_rat(v);
    Rat t = approx_rat(tol, 1000000000000LL);
    return lo >= -t && hi <= t;
}

}  // namespace

TEST_CASE("arithmetic in Q(sqrt(-7))") {
    TowerPtr K = tower_w();
    FieldElement w = K->generator(0);
    FieldElement a = (K->one() + w).scaled(Rat(1, 2));
    FieldElement b = (K->one() - w).scaled(Rat(1, 2));
    CHECK(a * b == K->rational(2));

    RandomElements rnd(11);
    for (int i = 0; i < 20; ++i) {
        FieldElement x = rnd.field(K);
        CHECK(x * K->one() == x);
    }
}

TEST_CASE("cubic reduction against the complex embedding") {
    TowerPtr K = tower_theta();
    FieldElement th = K->generator(0);
    FieldElement lhs = th * (th * th);
    FieldElement rhs = -(th * th) + th.scaled(Rat(2)) + K->one();  // theta^3 = -theta^2+2theta+1
    CHECK(lhs == rhs);

    Embedding emb(K);
    ComplexInterval z = emb.embed(lhs, 12);
    double want = std::pow(2.0 * std::cos(2.0 * M_PI / 7.0), 3.0);
    CHECK(interval_near(z.re, want, 1e-10));
    CHECK(interval_near(z.im, 0.0, 1e-10));
}

TEST_CASE("division and inverses") {
    TowerPtr K = tower_iw();
    RandomElements rnd(23);
    for (int i = 0; i < 25; ++i) {
        FieldElement x = rnd.nonzero_field(K);
        FieldElement y = rnd.nonzero_field(K);
        FieldElement z = x / y;
        CHECK(z * y == x);
        CHECK(x * x.inverse() == K->one());
    }
    CHECK_THROWS_AS(K->one() / K->zero(), MathError);
}

TEST_CASE("a reducible minimal polynomial is detected on inversion") {
    TowerPtr bad = FieldTower::create({level("u", {Rat(-1), Rat(0)}, 1, Rat(1), Rat(0))});  // x^2-1
    FieldElement u = bad->generator(0);
    CHECK_THROWS_AS((u - bad->one()).inverse(), ConfigError);
}

TEST_CASE("field axioms on random samples") {
    TowerPtr K = tower_itheta();
    RandomElements rnd(37);
    for (int i = 0; i < 15; ++i) {
        FieldElement x = rnd.field(K), y = rnd.field(K), z = rnd.field(K);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * (y + z) == x * y + x * z);
    }
}

TEST_CASE("reduction of long coefficient vectors is idempotent") {
    TowerPtr K = tower_theta();
    std::vector<Rat> raw{Rat(1), Rat(0), Rat(0), Rat(1)};  // 1 + theta^3
    FieldElement x = K->from_poly(raw);
    FieldElement again = K->from_poly(x.coords());
    CHECK(x == again);
    FieldElement th = K->generator(0);
    CHECK(x == K->one() + th * th * th);
}

TEST_CASE("quadratic conjugation") {
    TowerPtr K = tower_w();
    FieldElement w = K->generator(0);
    FieldAutomorphism tau = FieldAutomorphism::create(K, {-w}, 2);
    CHECK(tau(w) == -w);
    CHECK(tau(K->rational(Rat(5, 3))) == K->rational(Rat(5, 3)));
    CHECK(is_fixed_by(K->rational(Rat(3, 2)), tau));
    CHECK_FALSE(is_fixed_by(w, tau));
}

TEST_CASE("galois action on Q(i, sqrt(-7))") {
    TowerPtr K = tower_iw();
    FieldElement i = K->generator(0), w = K->generator(1);
    FieldAutomorphism sigma = FieldAutomorphism::create(K, {-i, w}, 2);
    FieldAutomorphism tau = FieldAutomorphism::create(K, {i, -w}, 2);
    CHECK(sigma(i) == -i);
    CHECK(sigma(w) == w);
    CHECK(aut_commute_check(sigma, tau));
    CHECK(aut_commute_check(sigma, sigma));
    CHECK(aut_commute_check(sigma, sigma.compose(tau)));
}

TEST_CASE("cubic automorphism theta -> theta^2 - 2") {
    TowerPtr K = tower_theta();
    FieldElement img = theta_conjugate_image(K, 0);
    // image satisfies the same minimal polynomial
    FieldElement val = img * img * img + img * img - img.scaled(Rat(2)) - K->one();
    CHECK(val.is_zero());
    FieldAutomorphism tau = FieldAutomorphism::create(K, {img}, 3);
    CHECK(tau.exact_order() == 3);

    Embedding emb(K);
    ComplexInterval z = emb.embed(img, 12);
    double want = 2.0 * std::cos(4.0 * M_PI / 7.0);
    CHECK(interval_near(z.re, want, 1e-10));
}

TEST_CASE("automorphism orders and norm fixing on random elements") {
    TowerPtr K = tower_itheta();
    FieldElement i = K->generator(0);
    FieldAutomorphism tau = FieldAutomorphism::create(K, {i, theta_conjugate_image(K, 1)}, 3);
    RandomElements rnd(53);
    for (int s = 0; s < 50; ++s) {
        FieldElement x = rnd.field(K);
        FieldElement y = x;
        for (unsigned k = 0; k < tau.exact_order(); ++k) y = tau(y);
        CHECK(y == x);
        FieldElement nrm = relative_norm(x, tau, 3);
        CHECK(is_fixed_by(nrm, tau));
    }
}

TEST_CASE("relative norms") {
    TowerPtr K = tower_w();
    FieldElement w = K->generator(0);
    FieldAutomorphism tau = FieldAutomorphism::create(K, {-w}, 2);
    FieldElement a = (K->one() + w).scaled(Rat(1, 2));
    CHECK(relative_norm(a, tau, 2) == K->rational(2));
    CHECK(relative_norm(K->one(), tau, 2) == K->one());

    TowerPtr T = tower_theta();
    FieldAutomorphism tc = FieldAutomorphism::create(T, {theta_conjugate_image(T, 0)}, 3);
    CHECK(relative_norm(T->generator(0), tc, 3) == T->one());
}

TEST_CASE("d^3 moves under conjugation for d = 1 + sqrt(-7)") {
    TowerPtr K = tower_w();
    FieldElement w = K->generator(0);
    FieldAutomorphism tau = FieldAutomorphism::create(K, {-w}, 2);
    FieldElement d = K->one() + w;
    FieldElement d3 = d.pow(3);
    CHECK_FALSE(is_fixed_by(d3, tau));
    // 3 d0^2 + b d1^2 = 3 - 7 = -4 with d0 = d1 = 1, b = -7
    CHECK(d3 == K->rational(-20) - w.scaled(Rat(4)));
}

TEST_CASE("complex embedding basics") {
    TowerPtr K = tower_w();
    Embedding emb(K);
    ComplexInterval w = emb.embed(K->generator(0), 10);
    CHECK(interval_near(w.im, 2.6457513110645906, 1e-9));
    CHECK(interval_near(w.re, 0.0, 1e-9));

    ComplexInterval z0 = emb.embed(K->zero(), 10);
    CHECK(z0.re.lo == 0);
    CHECK(z0.re.hi == 0);
    CHECK(z0.im.lo == 0);
    CHECK(z0.im.hi == 0);

    TowerPtr T = tower_theta();
    Embedding et(T);
    ComplexInterval th = et.embed(T->generator(0), 10);
    CHECK(interval_near(th.re, 1.2469796037174672, 1e-9));
}

TEST_CASE("embedding is a ring homomorphism within interval tolerance") {
    TowerPtr K = tower_itheta();
    Embedding emb(K);
    RandomElements rnd(71);
    for (int s = 0; s < 10; ++s) {
        FieldElement x = rnd.field(K), y = rnd.field(K);
        ComplexInterval zx = emb.embed(x, 15);
        ComplexInterval zy = emb.embed(y, 15);
        ComplexInterval zxy = emb.embed(x * y, 15);
        ComplexInterval prod = zx * zy;
        // enclosures of the same number must intersect
        CHECK(RatInterval::intersect(zxy.re, prod.re).lo <= RatInterval::intersect(zxy.re, prod.re).hi);
        CHECK(RatInterval::intersect(zxy.im, prod.im).lo <= RatInterval::intersect(zxy.im, prod.im).hi);
    }
}

TEST_CASE("declared order validation") {
    TowerPtr K = tower_w();
    FieldElement w = K->generator(0);
    CHECK_THROWS_AS(FieldAutomorphism::create(K, {-w}, 3), ConfigError);
    CHECK_THROWS_AS(FieldAutomorphism::create(K, {w + K->one()}, 2), ConfigError);
}
