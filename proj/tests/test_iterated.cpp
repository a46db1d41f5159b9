#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "cycode/iterated.hpp"
#include "helpers.hpp"

using namespace cycode;
using namespace testutil;

namespace {

// It_R^2((-1,-1)_{Q(sqrt(-7))}, tau, d): the tensor behind the 4x2 code family
ItPtr silver_it(const Rat& d0 = Rat(0), const Rat& d1 = Rat(1)) {
    TowerPtr K = tower_iw();
    FieldElement i = K->generator(0), w = K->generator(1);
    FieldAutomorphism sigma = FieldAutomorphism::create(K, {-i, w}, 2);
    AlgebraPtr D = CyclicAlgebra::create(K, sigma, 2, K->rational(-1));
    D->set_division({DivisionStatus::Asserted, "user-asserted (no norm relation at height 3)"});
    FieldAutomorphism tau = FieldAutomorphism::create(K, {i, -w}, 2);
    FieldElement d = K->rational(d0) + w.scaled(d1);
    return IteratedAlgebra::tensor_construct(D, tau, 2, d);
}

// It_R^3((-1,-1)_{Q(theta)}, tau, theta): n = 2, m = 3
ItPtr cubic_it() {
    TowerPtr K = tower_itheta();
    FieldElement i = K->generator(0), th = K->generator(1);
    FieldAutomorphism sigma = FieldAutomorphism::create(K, {-i, th}, 2);
    AlgebraPtr D = CyclicAlgebra::create(K, sigma, 2, K->rational(-1));
    D->set_division({DivisionStatus::Asserted, "user-asserted (no norm relation at height 2)"});
    FieldAutomorphism tau = FieldAutomorphism::create(K, {i, theta_conjugate_image(K, 1)}, 3);
    return IteratedAlgebra::tensor_construct(D, tau, 3, th);
}

// cubic x quaternion: (Q(theta)/Q, sigma, 2) x (Q(sqrt(-7))/Q, tau, d)
ItPtr cubic_quat_it() {
    TowerPtr K = tower_thetaw();
    FieldElement th = K->generator(0), w = K->generator(1);
    FieldAutomorphism sigma = FieldAutomorphism::create(K, {theta_conjugate_image(K, 0), w}, 3);
    AlgebraPtr D = CyclicAlgebra::create(K, sigma, 3, K->rational(2));
    D->set_division({DivisionStatus::Asserted, "user-asserted (no norm relation at height 1)"});
    FieldAutomorphism tau = FieldAutomorphism::create(K, {th, -w}, 2);
    return IteratedAlgebra::tensor_construct(D, tau, 2, w);
}

ItElement random_it(RandomElements& rnd, const ItPtr& A, int num_bound = 2) {
    std::vector<AlgElement> parts;
    for (unsigned i = 0; i < A->m(); ++i) parts.push_back(rnd.alg(A->D(), num_bound, 2));
    return A->from_parts(std::move(parts));
}

}  // namespace

TEST_CASE("iterated product is unital") {
    ItPtr A = silver_it();
    RandomElements rnd(3);
    for (int s = 0; s < 10; ++s) {
        ItElement x = random_it(rnd, A);
        CHECK(it_mul(A->one(), x) == x);
        CHECK(it_mul(x, A->one()) == x);
    }
}

TEST_CASE("m = 3 product formula for the first component") {
    ItPtr A = cubic_it();
    RandomElements rnd(5);
    for (int s = 0; s < 10; ++s) {
        ItElement x = random_it(rnd, A), y = random_it(rnd, A);
        const AlgElement &u = x.part(0), &v = x.part(1), &w = x.part(2);
        const AlgElement &u2 = y.part(0), &v2 = y.part(1), &w2 = y.part(2);
        ItElement prod = it_mul(x, y);
        // first component: u u' + d tl(w) v' + d tl^2(v) w'  (d central in D)
        AlgElement want = alg_mul(u, u2) + alg_mul(alg_mul(A->twist(w, 1), v2), A->d()) +
                          alg_mul(alg_mul(A->twist(v, 2), w2), A->d());
        CHECK(prod.part(0) == want);
        // second: v u' + tl(u) v' + d tl^2(w) w'
        AlgElement want1 = alg_mul(v, u2) + alg_mul(A->twist(u, 1), v2) +
                           alg_mul(alg_mul(A->twist(w, 2), w2), A->d());
        CHECK(prod.part(1) == want1);
        // third: w u' + tl(v) v' + tl^2(u) w'
        AlgElement want2 = alg_mul(w, u2) + alg_mul(A->twist(v, 1), v2) +
                           alg_mul(A->twist(u, 2), w2);
        CHECK(prod.part(2) == want2);
    }
}

TEST_CASE("f^2 f = (d,0,0) = f f^2") {
    ItPtr A = cubic_it();
    ItElement f = A->f_power(1), f2 = A->f_power(2);
    CHECK(it_mul(f, f) == f2);
    ItElement d_elt = A->from_parts({A->d(), A->D()->zero(), A->D()->zero()});
    CHECK(it_mul(f2, f) == d_elt);
    CHECK(it_mul(f, f2) == d_elt);
}

TEST_CASE("dual-path oracle: iterated product equals petit multiplication") {
    ItPtr A = silver_it();
    CHECK(petit_iso_check(A, 100));
    ItPtr B = cubic_it();
    CHECK(petit_iso_check(B, 50));
}

TEST_CASE("block structure of the left multiplication matrix for m = 2") {
    ItPtr A = silver_it();
    RandomElements rnd(7);
    ItElement x = random_it(rnd, A);
    KMatrix M = it_lambda(x);
    KMatrix l0 = lambda_matrix(x.part(0)), l1 = lambda_matrix(x.part(1));
    KMatrix tl0 = l0.mapped(A->tau()), tl1 = l1.mapped(A->tau());
    const FieldElement& d = A->d_scalar();
    for (unsigned r = 0; r < 2; ++r)
        for (unsigned c = 0; c < 2; ++c) {
            CHECK(M.at(r, c) == l0.at(r, c));
            CHECK(M.at(r, 2 + c) == d * tl1.at(r, c));
            CHECK(M.at(2 + r, c) == l1.at(r, c));
            CHECK(M.at(2 + r, 2 + c) == tl0.at(r, c));
        }
}

TEST_CASE("it_lambda acts as left multiplication on coordinates") {
    for (const ItPtr& A : {silver_it(), cubic_it()}) {
        RandomElements rnd(11);
        for (int s = 0; s < 100; ++s) {
            ItElement x = random_it(rnd, A), y = random_it(rnd, A);
            CHECK(it_mul(x, y).coords() == it_lambda(x).apply(y.coords()));
        }
    }
}

TEST_CASE("it_lambda of the identity is the identity matrix") {
    ItPtr A = silver_it();
    CHECK(it_lambda(A->one()) == KMatrix::identity(A->K(), 4));
}

TEST_CASE("m_A lands in F and matches the nested norm on D") {
    ItPtr A = silver_it();
    const FieldAutomorphism& sigma = A->D()->sigma();
    RandomElements rnd(13);
    for (int s = 0; s < 100; ++s) {
        ItElement x = random_it(rnd, A);
        FieldElement det = m_A(x);
        CHECK(is_fixed_by(det, sigma));
    }
    // x in D c A: M_A(x) = N_{F/F_0}(N_{D/F}(x))
    for (int s = 0; s < 50; ++s) {
        AlgElement xd = rnd.alg(A->D());
        ItElement x = A->from_parts({xd, A->D()->zero()});
        FieldElement lhs = m_A(x);
        FieldElement nd = reduced_norm(xd);
        FieldElement rhs = relative_norm(nd, A->tau(), A->m());
        CHECK(lhs == rhs);
    }
    CHECK(m_A(A->one()) == A->K()->one());
}

TEST_CASE("m_A cross-checked by cofactor expansion") {
    ItPtr A = silver_it();
    RandomElements rnd(17);
    ItElement f = A->f_power(1);
    CHECK(det_bareiss(it_lambda(f)) == det_cofactor(it_lambda(f)));
    for (int s = 0; s < 10; ++s) {
        ItElement x = random_it(rnd, A);
        CHECK(m_A(x) == det_cofactor(it_lambda(x)));
    }
}

TEST_CASE("lambda commutes with the coefficientwise automorphism") {
    ItPtr A = silver_it();
    RandomElements rnd(19);
    for (int s = 0; s < 50; ++s) {
        AlgElement x = rnd.alg(A->D());
        CHECK(lambda_matrix(A->twist(x, 1)) == lambda_matrix(x).mapped(A->tau()));
    }
}

TEST_CASE("tensor construction degree bookkeeping") {
    ItPtr A = silver_it();
    CHECK(A->from_tensor());
    CHECK(A->n() == 2);
    CHECK(A->m() == 2);
    CHECK(A->K()->degree() == 4);
    ItPtr B = cubic_it();
    CHECK(B->n() == 2);
    CHECK(B->m() == 3);
    CHECK(B->K()->degree() == 6);

    // degenerate m = 1 wraps D itself
    TowerPtr K = tower_i();
    FieldElement i = K->generator(0);
    FieldAutomorphism sigma = FieldAutomorphism::create(K, {-i}, 2);
    AlgebraPtr D = CyclicAlgebra::create(K, sigma, 2, K->rational(-1));
    D->set_division({DivisionStatus::Asserted, "user-asserted"});
    ItPtr T = IteratedAlgebra::tensor_construct(D, FieldAutomorphism::identity(K), 1, K->one());
    CHECK(T->m() == 1);
    RandomElements rnd(23);
    for (int s = 0; s < 10; ++s) {
        AlgElement x = rnd.alg(D), y = rnd.alg(D);
        ItElement prod = it_mul(T->from_parts({x}), T->from_parts({y}));
        CHECK(prod.part(0) == alg_mul(x, y));
    }

    // rejected: d outside F
    TowerPtr Kiw = tower_iw();
    FieldElement ii = Kiw->generator(0), w = Kiw->generator(1);
    FieldAutomorphism sig = FieldAutomorphism::create(Kiw, {-ii, w}, 2);
    AlgebraPtr DD = CyclicAlgebra::create(Kiw, sig, 2, Kiw->rational(-1));
    FieldAutomorphism tau = FieldAutomorphism::create(Kiw, {ii, -w}, 2);
    CHECK_THROWS_AS(IteratedAlgebra::tensor_construct(DD, tau, 2, ii), ConfigError);
}

TEST_CASE("division certification: biquaternion route") {
    for (auto [d0, d1] : std::vector<std::pair<Rat, Rat>>{{Rat(0), Rat(1)}, {Rat(1, 2), Rat(1, 2)}}) {
        ItPtr A = silver_it(d0, d1);
        DivisionVerdict v = division_certify(A, {Int(1), 200000});
        CHECK(v.status == ItDivStatus::Division);
        CHECK(v.certificate == "biquaternion");
        CHECK_FALSE(v.assumptions.empty());
        REQUIRE(v.irreducibility.has_value());
        CHECK(v.irreducibility->status == IrredStatus::Irreducible);
    }
}

TEST_CASE("division certification: cubic x quaternion route") {
    ItPtr A = cubic_quat_it();
    DivisionVerdict v = division_certify(A, {Int(1), 200000});
    CHECK(v.status == ItDivStatus::Division);
    CHECK(v.certificate == "cubic-x-quaternion");
    bool found = false;
    for (const auto& e : v.chain)
        if (e.criterion == "cubic-x-quaternion" && e.outcome == "pass")
            found = (e.detail == "-b/3 is not a rational square");
    CHECK(found);
}

TEST_CASE("division certification: tau moves d^n") {
    ItPtr A = cubic_it();
    DivisionVerdict v = division_certify(A, {Int(1), 200000});
    CHECK(v.status == ItDivStatus::Division);
    CHECK(v.certificate == "tau-moves-d^n");
}

TEST_CASE("division certification: d = 1 is falsified with a verified witness") {
    ItPtr A = silver_it(Rat(1), Rat(0));  // d = 1 in F_0
    DivisionVerdict v = division_certify(A, {Int(1), 200000});
    REQUIRE(v.status == ItDivStatus::NotDivision);
    REQUIRE(v.zero_divisors.has_value());
    auto [x, y] = *v.zero_divisors;
    CHECK_FALSE(x.is_zero());
    CHECK_FALSE(y.is_zero());
    CHECK(it_mul(x, y).is_zero());
    REQUIRE(v.factor.has_value());
    RingPtr R = v.factor->first.ring();
    CHECK(sp_mul(v.factor->first, v.factor->second) ==
          SkewPoly::power_minus(R, A->m(), A->d()));
}

TEST_CASE("division implies no vanishing m_A on random nonzero elements") {
    ItPtr A = silver_it();
    DivisionVerdict v = division_certify(A, {Int(1), 200000});
    REQUIRE(v.status == ItDivStatus::Division);
    RandomElements rnd(29);
    for (int s = 0; s < 1000; ++s) {
        ItElement x = random_it(rnd, A);
        if (x.is_zero()) continue;
        CHECK_FALSE(m_A(x).is_zero());
    }
}

TEST_CASE("certificate chain records every attempted criterion") {
    ItPtr A = silver_it(Rat(1), Rat(0));
    DivisionVerdict v = division_certify(A, {Int(1), 200000});
    bool saw_biquat = false, saw_cubic = false, saw_linear = false;
    for (const auto& e : v.chain) {
        if (e.criterion == "biquaternion") saw_biquat = true;
        if (e.criterion == "cubic-x-quaternion") saw_cubic = true;
        if (e.criterion == "linear-factor-search") saw_linear = true;
    }
    CHECK(saw_biquat);
    CHECK(saw_cubic);
    CHECK(saw_linear);
    // a Division verdict never coexists with a verified witness
    CHECK((v.status != ItDivStatus::Division || !v.zero_divisors.has_value()));
}

TEST_CASE("subalgebra restriction reproduces the nonassociative quaternion table") {
    ItPtr A = silver_it();
    CHECK(subalgebra_restriction_check(A));
    ItPtr B = cubic_it();
    CHECK(subalgebra_restriction_check(B));
}
