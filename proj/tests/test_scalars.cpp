#include "qplab/scalars.hpp"

#include <doctest.h>

#include <complex>
#include <random>

using namespace qp;

namespace {

// Numerical image under w -> exp(i pi / 3).
std::complex<double> embed(const CycScalar& x) {
    const std::complex<double> w = std::polar(1.0, M_PI / 3);
    return x.a().get_d() + x.b().get_d() * w;
}

CycScalar random_scalar(std::mt19937& rng) {
    std::uniform_int_distribution<long> num(-20, 20), den(1, 9);
    return CycScalar(ratio(num(rng), den(rng)), ratio(num(rng), den(rng)));
}

}  // namespace

TEST_SUITE("scalars") {

TEST_CASE("omega satisfies w^2 = w - 1 and has order 6") {
    CycScalar w = CycScalar::omega();
    CHECK(w * w == w - CycScalar(1));
    CHECK(cyc_pow(w, 3) == CycScalar(-1));
    CHECK(cyc_pow(w, 6) == CycScalar(1));
    for (long p = -13; p <= 13; ++p) CHECK(cyc_pow_omega(p) == cyc_pow_omega(mod6(p)));
    CHECK(cyc_pow_omega(-1) == w.conj());
    CHECK(cyc_pow_omega(-1) * w == CycScalar(1));
}

TEST_CASE("field operations agree with the complex embedding") {
    std::mt19937 rng(7);
    for (int t = 0; t < 300; ++t) {
        CycScalar x = random_scalar(rng), y = random_scalar(rng);
        CHECK(std::abs(embed(x * y) - embed(x) * embed(y)) < 1e-9);
        CHECK(std::abs(embed(x + y) - (embed(x) + embed(y))) < 1e-9);
        CHECK(std::abs(embed(x.conj()) - std::conj(embed(x))) < 1e-9);
        CHECK(std::abs(x.norm().get_d() - std::norm(embed(x))) < 1e-9);
        if (!x.is_zero()) {
            CHECK(x * x.inv() == CycScalar(1));
            CHECK((y / x) * x == y);
        }
    }
}

TEST_CASE("ring axioms on random elements") {
    std::mt19937 rng(11);
    for (int t = 0; t < 200; ++t) {
        CycScalar x = random_scalar(rng), y = random_scalar(rng), z = random_scalar(rng);
        CHECK(x * (y + z) == x * y + x * z);
        CHECK((x * y) * z == x * (y * z));
        CHECK(x * y == y * x);
        CHECK(x - x == CycScalar());
        CHECK((x * y).norm() == x.norm() * y.norm());
    }
}

TEST_CASE("inverse of zero throws") { CHECK_THROWS_AS(CycScalar().inv(), std::domain_error); }

TEST_CASE("text round trip") {
    std::mt19937 rng(3);
    for (int t = 0; t < 100; ++t) {
        CycScalar x = random_scalar(rng);
        CHECK(CycScalar::parse(x.str()) == x);
    }
    CHECK(CycScalar(ratio(1, 36), ratio(1, 36)).str() == "1/36+1/36*w");
    CHECK(CycScalar(ratio(3, 6)).str() == "1/2");
}

TEST_CASE("ratio canonicalizes") {
    CHECK(ratio(3, 6) == ratio(1, 2));
    CHECK(CycScalar(ratio(2, 4), ratio(-4, 8)) == CycScalar(ratio(1, 2), ratio(-1, 2)));
    CHECK(ratio(3, 6).get_den() == 2);
}

}
