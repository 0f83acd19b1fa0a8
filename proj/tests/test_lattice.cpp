#include "qplab/lattice.hpp"

#include <doctest.h>

#include <complex>
#include <random>

using namespace qp;

namespace {

using C = std::complex<double>;

C embed(const CycScalar& x) { return x.a().get_d() + x.b().get_d() * std::polar(1.0, M_PI / 3); }

C eval_num(const CycPoly& p, C t) {
    C s = 0;
    for (int k = p.degree(); k >= 0; --k) s = s * t + embed(p.coeff(k));
    return s;
}

CycPoly random_poly(std::mt19937& rng, int deg) {
    std::uniform_int_distribution<long> c(-5, 5);
    std::vector<CycScalar> v;
    for (int k = 0; k <= deg; ++k) v.emplace_back(BigRat(c(rng)), BigRat(c(rng)));
    return CycPoly(v);
}

// (1 - w^{-p} t) evaluated directly in C.
C factor(int p, C t) { return 1.0 - std::polar(1.0, -M_PI * p / 3) * t; }

}  // namespace

TEST_SUITE("poly") {

TEST_CASE("multiplication is evaluation-compatible") {
    std::mt19937 rng(5);
    for (int t = 0; t < 50; ++t) {
        CycPoly p = random_poly(rng, t % 5), q = random_poly(rng, (t / 5) % 4);
        for (C z : {C(0.3, 0.1), C(-1.2, 0.7), C(2, 0)})
            CHECK(std::abs(eval_num(p * q, z) - eval_num(p, z) * eval_num(q, z)) < 1e-6 * (1 + std::abs(eval_num(p * q, z))));
    }
}

TEST_CASE("exact division and factor multiplicity") {
    CycScalar r = cyc_pow_omega(-2);
    CycPoly f = CycPoly::one_minus(r).pow(3) * CycPoly::one_minus(CycScalar(-1));
    CHECK(f.order_at(r) == 3);
    CHECK(f.order_at(CycScalar(-1)) == 1);
    CHECK(f.order_at(CycScalar(1)) == 0);
    CycPoly q;
    CHECK(CycPoly::one_minus(r).pow(2).divides_into(f, q));
    CHECK(q == CycPoly::one_minus(r) * CycPoly::one_minus(CycScalar(-1)));
    CHECK_FALSE(CycPoly::one_minus(CycScalar(1)).divides_into(f, q));
}

TEST_CASE("theta is t d/dt") {
    CycPoly p({CycScalar(3), CycScalar(0, 1), CycScalar(2), CycScalar(ratio(1, 2))});
    CHECK(p.theta() == CycPoly({CycScalar(0), CycScalar(0, 1), CycScalar(4), CycScalar(ratio(3, 2))}));
}

TEST_CASE("rational function series times denominator gives numerator") {
    std::mt19937 rng(9);
    for (int t = 0; t < 20; ++t) {
        RatFunc f{random_poly(rng, 3), CycPoly::one_minus(cyc_pow_omega(t)).pow(1 + t % 3)};
        std::vector<CycScalar> s = f.series(12);
        CycPoly prod = CycPoly(s) * f.den;
        for (int k = 0; k <= 12; ++k) CHECK(prod.coeff(k) == f.num.coeff(k));
    }
}

}

TEST_SUITE("lattice") {

TEST_CASE("nu is an isometry of order 6 with nu^3 = -1") {
    for (auto x : {kAlpha, kGamma, RootVector{2, -1}, RootVector{-3, 5}}) {
        CHECK(nu_pow(x, 6) == x);
        CHECK(nu_pow(x, 3) == -x);
        CHECK(nu_pow(x, -1) == nu_pow(x, 5));
        for (auto y : {kAlpha, kBeta, RootVector{1, -2}}) CHECK(form(nu(x), nu(y)) == form(x, y));
    }
    CHECK(nu(kAlpha) == kBeta);
    CHECK(nu(kBeta) == kGamma);
    // no fixed vectors: sum over the orbit vanishes
    RootVector s;
    for (int p = 0; p < 6; ++p) s = s + nu_pow(RootVector{2, 7}, p);
    CHECK(s.is_zero());
}

TEST_CASE("roots") {
    auto roots = all_roots();
    CHECK(roots.size() == 6);
    for (auto r : roots) {
        CHECK(form(r, r) == 2);
        CHECK(is_root(r));
        CHECK(nu_pow(kAlpha, root_phase(r)) == r);
    }
    CHECK_FALSE(is_root(RootVector{2, 0}));
    CHECK(root_phase(RootVector{1, -1}) == -1);
}

TEST_CASE("pairings with nu powers") {
    std::vector<int> aa, ab;
    for (int p = 0; p < 6; ++p) {
        aa.push_back(pair_nu(p, kAlpha, kAlpha));
        ab.push_back(pair_nu(p, kAlpha, kBeta));
    }
    CHECK(aa == std::vector<int>{2, 1, -1, -2, -1, 1});
    CHECK(ab == std::vector<int>{1, 2, 1, -1, -2, -1});
    TwistedLattice lat;
    CHECK(lat.index_set(kAlpha, kAlpha, -1) == std::vector<int>{2, 4});
    CHECK(lat.index_set(kAlpha, kBeta, -2) == std::vector<int>{4});
}

TEST_CASE("eigen-component pairings sum to the form") {
    TwistedLattice lat;
    for (auto x : all_roots())
        for (auto y : all_roots()) {
            CycScalar s;
            for (int m = 0; m < 6; ++m) s += lat.proj_pairing(m, x, y);
            CHECK(s == CycScalar(form(x, y)));
            // the twist has no fixed points, so the invariant component vanishes
            CHECK(lat.proj_pairing(0, x, y).is_zero());
        }
}

TEST_CASE("c_alpha") {
    TwistedLattice lat;
    CHECK(lat.c_alpha() == CycScalar(ratio(1, 36), ratio(1, 36)));
}

TEST_CASE("pair polynomial against a direct product over the orbit") {
    TwistedLattice lat;
    for (auto x : all_roots())
        for (auto y : all_roots()) {
            CycPoly p = lat.p_pair(x, y);
            for (C t : {C(1, 0), C(0.4, -0.3), C(-0.8, 0.2)}) {
                C want = 1;
                for (int q = 0; q < 6; ++q) {
                    int e = form(nu_pow(x, q), y);
                    if (e < 0) want *= std::pow(factor(q, t), -e);
                }
                CHECK(std::abs(eval_num(p, t) - want) < 1e-9);
            }
        }
    // P_{a,a}(1) = (1 - w^{-2})(1 - w^{-3})^2(1 - w^{-4}) = 3 * 4
    CHECK(lat.p_pair(kAlpha, kAlpha).eval(CycScalar(1)) == CycScalar(12));
    CHECK(lat.p_pair(kAlpha, kBeta).eval(CycScalar(1)) == lat.p_at_ones({kAlpha, kBeta}));
}

TEST_CASE("multi-variable P is the product of pair factors") {
    TwistedLattice lat;
    std::vector<RootVector> d = {kAlpha, kBeta, kAlpha};
    MultiPoly m = lat.p_polynomial(d);
    CHECK(m.eval_all_ones() == lat.p_at_ones(d));
    for (const auto& [e, c] : m.terms()) CHECK(e[0] + e[1] + e[2] == 0);
    CHECK_THROWS_AS(lat.p_polynomial({kAlpha, -kAlpha}), std::invalid_argument);
}

TEST_CASE("exchange factor times P is polynomial for positive-pairing pairs") {
    TwistedLattice lat;
    for (auto x : {kAlpha, kBeta})
        for (auto y : {kAlpha, kBeta}) {
            RatFunc f = lat.exchange(x, y);
            CycPoly q;
            CHECK(f.den.divides_into(lat.p_pair(x, y) * f.num, q));
        }
}

TEST_CASE("cocycle is bimultiplicative") {
    TwistedLattice lat;
    std::vector<RootVector> vs = {kAlpha, kGamma, RootVector{2, -1}, RootVector{-1, 3}};
    for (auto x : vs)
        for (auto y : vs)
            for (auto z : vs) {
                CHECK(lat.epsilon(x + y, z) == lat.epsilon(x, z) * lat.epsilon(y, z));
                CHECK(lat.epsilon(z, x + y) == lat.epsilon(z, x) * lat.epsilon(z, y));
            }
}

TEST_CASE("perturbations change exactly the targeted data") {
    Perturbation p;
    p.epsilon_factor = CycScalar(-1);
    TwistedLattice bad(p), good;
    CHECK(bad.epsilon(kAlpha, kBeta) == -good.epsilon(kAlpha, kBeta));
    CHECK(bad.c_alpha() == good.c_alpha());
    Perturbation q;
    q.p_coeff_index = 1;
    q.p_coeff_shift = CycScalar(1);
    TwistedLattice badp(q);
    CHECK(badp.p_pair(kAlpha, kAlpha).coeff(1) == good.p_pair(kAlpha, kAlpha).coeff(1) + CycScalar(1));
    CHECK(badp.perturbation().active());
    CHECK_FALSE(good.perturbation().active());
}

}
