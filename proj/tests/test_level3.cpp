#include "qplab/level3.hpp"
#include "qplab/qseries.hpp"

#include <doctest.h>

using namespace qp;

namespace {

struct Env {
    TwistedLattice lat;
    FockEngine fock{lat};
    Level3 l3{fock};
};

TensorVector tensor(std::vector<int> a, std::vector<int> b, std::vector<int> c) {
    TensorState s{{FockState::from_parts(std::move(a)), FockState::from_parts(std::move(b)), FockState::from_parts(std::move(c))}};
    return TensorVector(s.key(), CycScalar(1));
}

std::vector<TensorVector> sample() {
    return {tensor_vacuum(), tensor({1}, {}, {}), tensor({}, {5}, {1}), tensor({1, 1}, {}, {1}), tensor({}, {}, {7})};
}

// Applies one-slot operators slot by slot: out = sum of (op_0 x op_1 x op_2) w for the given slot coefficients.
TensorVector slotwise(const TensorVector& w, const std::array<std::function<FockVector(const FockVector&)>, 3>& ops) {
    TensorVector out;
    for (const auto& [k, c] : w) {
        TensorState s = TensorState::from_key(k);
        std::array<FockVector, 3> parts;
        for (int i = 0; i < 3; ++i) parts[i] = ops[i](FockVector(s.slot[i], CycScalar(1)));
        for (const auto& [a, ca] : parts[0])
            for (const auto& [b, cb] : parts[1])
                for (const auto& [d, cd] : parts[2]) out.add(TensorState{{a, b, d}}.key(), c * ca * cb * cd);
    }
    return out;
}

FockVector same(const FockVector& v) { return v; }

// Coefficient of zeta^n of lim P_d(z) X(d_1; z_1) X(d_2; z_2) X(d_3; z_3) w, summed directly from the
// product of three vertex operators: for each exponent pair (b, c) of z_2, z_3 the P-weighted summand
// is finite; shells min(b, c) = L are added until `margin` consecutive shells vanish.
TensorVector raw_three(const Level3& l3, const std::vector<RootVector>& d, long n, const TensorVector& w, int margin) {
    MultiPoly p = l3.lattice().p_polynomial(d);
    int dw = homogeneous_degree(w);
    int span = 0;
    for (const auto& [e, c] : p.terms())
        for (int x : e) span = std::max(span, std::abs(x));
    long top = dw + 2 * span;
    std::map<long, TensorVector> third;
    std::map<std::pair<long, long>, TensorVector> second;
    auto x23 = [&](long b, long c) -> const TensorVector& {
        auto it = second.find({b, c});
        if (it != second.end()) return it->second;
        auto jt = third.find(c);
        if (jt == third.end()) jt = third.emplace(c, l3.x_root(d[2], c, w)).first;
        TensorVector v = jt->second.is_zero() ? TensorVector() : l3.x_root(d[1], b, jt->second);
        return second.emplace(std::pair{b, c}, v).first->second;
    };
    auto summand = [&](long b, long c) {
        TensorVector f;
        for (const auto& [e, k] : p.terms()) {
            const TensorVector& v = x23(b - e[1], c - e[2]);
            if (!v.is_zero()) f.add_scaled(l3.x_root(d[0], n - b - c - e[0], v), k);
        }
        return f;
    };
    TensorVector out;
    int zeros = 0;
    for (long lo = top; zeros < margin; --lo) {
        TensorVector shell;
        for (long x = lo; x <= top; ++x) {
            shell += summand(lo, x);
            if (x != lo) shell += summand(x, lo);
        }
        if (!shell.is_zero()) {
            zeros = 0;
            out += shell;
        } else if (lo < n - 2 * span) {
            ++zeros;
        }
    }
    return out;
}

}  // namespace

TEST_SUITE("level3") {

TEST_CASE("ambient graded dimensions are the coefficients of F^3") {
    QSeries f = pochhammer_inv({1, 5}, 6, 14);
    QSeries f3 = f * f * f;
    for (int n = 0; n <= 14; ++n) CHECK(BigInt(static_cast<unsigned long>(graded_component_basis(n).size())) == f3[n]);
}

TEST_CASE("Heisenberg action is diagonal") {
    Env e;
    for (const auto& w : sample())
        for (long n : {-5L, -1L, 1L, 7L}) {
            auto h = [&](const FockVector& v) { return e.fock.heis_act(kBeta, n, v); };
            TensorVector want = slotwise(w, {h, same, same}) + slotwise(w, {same, h, same}) + slotwise(w, {same, same, h});
            CHECK(e.l3.heis(kBeta, n, w) == want);
        }
}

TEST_CASE("X acts as a sum over slots") {
    Env e;
    for (const auto& w : sample())
        for (long n = -3; n <= 2; ++n) {
            auto x = [&](const FockVector& v) { return e.fock.x_level1(kAlpha, n, v); };
            TensorVector want = slotwise(w, {x, same, same}) + slotwise(w, {same, x, same}) + slotwise(w, {same, same, x});
            CHECK(e.l3.x_root(kAlpha, n, w) == want);
            CHECK(e.l3.x1(n, w) == want);
        }
}

TEST_CASE("E+- are group-like across slots") {
    Env e;
    for (const auto& w : sample())
        for (long m = 0; m <= 4; ++m)
            for (int sign : {1, -1}) {
                long n = sign * m;
                TensorVector want;
                for (long a = 0; a <= m; ++a)
                    for (long b = 0; a + b <= m; ++b) {
                        long c = m - a - b;
                        auto f0 = [&](const FockVector& v) { return e.fock.e_coeff(sign, kGamma, sign * a, v); };
                        auto f1 = [&](const FockVector& v) { return e.fock.e_coeff(sign, kGamma, sign * b, v); };
                        auto f2 = [&](const FockVector& v) { return e.fock.e_coeff(sign, kGamma, sign * c, v); };
                        want += slotwise(w, {f0, f1, f2});
                    }
                CHECK(e.l3.e_coeff(sign, kGamma, n, w) == want);
            }
}

TEST_CASE("zero mode of X1 on the vacuum is 3 c_alpha") {
    Env e;
    CHECK(e.l3.x1(0, tensor_vacuum()) == tensor_vacuum() * (e.lat.c_alpha() * CycScalar(3)));
    CHECK(e.l3.x1(1, tensor_vacuum()).is_zero());
    CHECK(homogeneous_degree(e.l3.x1(-2, tensor_vacuum())) == 2);
}

TEST_CASE("charge-two closed form against the raw two-operator sum") {
    Env e;
    for (const auto& w : sample())
        for (long n = -7; n <= 0; ++n) {
            RawSumStats st;
            TensorVector raw = e.l3.x2_raw(n, w, 12, &st);
            CHECK(e.l3.x2(n, w) == raw);
        }
    CHECK_FALSE(e.l3.x2(-6, tensor_vacuum()).is_zero());
}

TEST_CASE("charge-three closed form against the raw three-operator sum") {
    Env e;
    CHECK(e.l3.x_multi({kAlpha, kBeta, kAlpha}, -3, tensor_vacuum()) ==
          raw_three(e.l3, {kAlpha, kBeta, kAlpha}, -3, tensor_vacuum(), 4));
    TensorVector cf = e.l3.x_multi({kAlpha, kAlpha, kBeta}, -4, tensor_vacuum());
    CHECK_FALSE(cf.is_zero());
    CHECK(cf == raw_three(e.l3, {kAlpha, kAlpha, kBeta}, -4, tensor_vacuum(), 4));
}

TEST_CASE("four quasi-particles vanish on three slots for alpha, beta, alpha, beta") {
    Env e;
    for (long n = -12; n <= -6; ++n) CHECK(e.l3.x_multi({kAlpha, kBeta, kAlpha, kBeta}, n, tensor_vacuum()).is_zero());
}

TEST_CASE("homogeneity helpers") {
    CHECK(homogeneous_degree(TensorVector()) == -1);
    CHECK(homogeneous_degree(tensor({5}, {}, {1})) == 6);
    CHECK_FALSE(is_homogeneous(tensor({5}, {}, {}) + tensor({1}, {}, {})));
    CHECK_THROWS(homogeneous_degree(tensor({5}, {}, {}) + tensor({1}, {}, {})));
}

}
