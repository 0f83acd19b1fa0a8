#include "qplab/lattice.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace qp {

std::string RootVector::str() const {
    std::ostringstream os;
    os << "(" << m1 << "," << m2 << ")";
    return os.str();
}

int form(RootVector x, RootVector y) {
    return 2 * x.m1 * y.m1 - x.m1 * y.m2 - x.m2 * y.m1 + 2 * x.m2 * y.m2;
}

RootVector nu(RootVector x) { return {x.m1 - x.m2, x.m1}; }

RootVector nu_pow(RootVector x, long p) {
    for (long k = mod6(p); k > 0; --k) x = nu(x);
    return x;
}

bool is_root(RootVector x) { return form(x, x) == 2; }

int pair_nu(long p, RootVector x, RootVector y) { return form(nu_pow(x, p), y); }

int root_phase(RootVector x) {
    for (int p = 0; p < 6; ++p)
        if (nu_pow(kAlpha, p) == x) return p;
    return -1;
}

std::vector<RootVector> all_roots() {
    std::vector<RootVector> r;
    for (int p = 0; p < 6; ++p) r.push_back(nu_pow(kAlpha, p));
    return r;
}

std::string Perturbation::describe() const {
    std::ostringstream os;
    bool any = false;
    if (!c_alpha_shift.is_zero()) {
        os << "c_alpha+=" << c_alpha_shift.str();
        any = true;
    }
    if (!epsilon_factor.is_one()) {
        os << (any ? "; " : "") << "epsilon*=" << epsilon_factor.str();
        any = true;
    }
    if (p_coeff_index >= 0 && !p_coeff_shift.is_zero()) {
        os << (any ? "; " : "") << "P[" << p_coeff_index << "]+=" << p_coeff_shift.str();
        any = true;
    }
    return any ? os.str() : "none";
}

TwistedLattice::TwistedLattice(Perturbation pert) : pert_(std::move(pert)) {
    // Mode weights only depend on n mod 6; tabulate them for every root and zero.
    std::vector<RootVector> keys = all_roots();
    for (auto x : keys) {
        std::array<CycScalar, 6> w;
        for (int r = 0; r < 6; ++r) w[r] = proj_pairing(r, x, kAlpha);
        weights_.emplace_back(x, w);
    }
}

std::vector<int> TwistedLattice::index_set(RootVector x, RootVector y, int n) const {
    std::vector<int> out;
    for (int p = 0; p < 6; ++p)
        if (pair_nu(p, x, y) == n) out.push_back(p);
    return out;
}

CycScalar TwistedLattice::epsilon(RootVector x, RootVector y) const {
    RootVector n1 = nu_pow(x, -1), n2 = nu_pow(x, -2);
    int sign_exp = form(n1 + n2, y);
    int w_exp = form(n1 + 2 * n2, y);
    CycScalar v = cyc_pow_omega(w_exp);
    if (sign_exp % 2 != 0) v = -v;
    return v * pert_.epsilon_factor;
}

CycScalar TwistedLattice::proj_pairing(long m, RootVector x, RootVector y) const {
    CycScalar s;
    for (int q = 0; q < 6; ++q) s += cyc_pow_omega(-m * q) * BigRat(pair_nu(q, x, y));
    return s * ratio(1, 6);
}

const CycScalar& TwistedLattice::mode_weight(RootVector x, long n) const {
    for (const auto& [k, w] : weights_)
        if (k == x) return w[mod6(n)];
    // Non-root lattice vectors: weights are linear in x.
    static thread_local std::deque<std::pair<RootVector, std::array<CycScalar, 6>>> extra;
    for (const auto& [k, w] : extra)
        if (k == x) return w[mod6(n)];
    std::array<CycScalar, 6> w;
    for (int r = 0; r < 6; ++r) w[r] = proj_pairing(r, x, kAlpha);
    extra.emplace_back(x, w);
    return extra.back().second[mod6(n)];
}

CycScalar TwistedLattice::c_alpha() const {
    return CycScalar(ratio(1, 36), ratio(1, 36)) + pert_.c_alpha_shift;
}

CycPoly TwistedLattice::p_pair(RootVector x, RootVector y) const {
    CycPoly p = CycPoly::constant(1);
    for (int q = 0; q < 6; ++q) {
        int e = pair_nu(q, x, y);
        if (e < 0) p = p * CycPoly::one_minus(cyc_pow_omega(-q)).pow(-e);
    }
    if (pert_.p_coeff_index >= 0 && !pert_.p_coeff_shift.is_zero())
        p.set_coeff(pert_.p_coeff_index, p.coeff(pert_.p_coeff_index) + pert_.p_coeff_shift);
    return p;
}

MultiPoly TwistedLattice::p_polynomial(const std::vector<RootVector>& d) const {
    int r = static_cast<int>(d.size());
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            if (form(d[i], d[j]) < 0)
                throw std::invalid_argument("p_polynomial: negative pairing <" + d[i].str() + "," + d[j].str() + ">");
    MultiPoly p = MultiPoly::one(r);
    for (int i = 0; i < r; ++i)
        for (int j = i + 1; j < r; ++j) p = p * MultiPoly::ratio(r, i, j, p_pair(d[i], d[j]));
    return p;
}

CycScalar TwistedLattice::p_at_ones(const std::vector<RootVector>& d) const {
    CycScalar v(1);
    for (std::size_t i = 0; i < d.size(); ++i)
        for (std::size_t j = i + 1; j < d.size(); ++j) v *= p_pair(d[i], d[j]).eval(CycScalar(1));
    return v;
}

RatFunc TwistedLattice::exchange(RootVector x, RootVector y, int sign) const {
    RatFunc f;
    for (int q = 0; q < 6; ++q) {
        int e = sign * pair_nu(q, x, y);
        CycPoly fac = CycPoly::one_minus(cyc_pow_omega(-q));
        if (e > 0) f.num = f.num * fac.pow(e);
        if (e < 0) f.den = f.den * fac.pow(-e);
    }
    return f;
}

BigRat binom(long n, long k) {
    if (k < 0 || n < 0 || k > n) return BigRat(0);
    BigInt r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return BigRat(r);
}

}  // namespace qp
