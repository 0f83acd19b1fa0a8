#pragma once

#include "qplab/poly.hpp"
#include "qplab/scalars.hpp"

#include <array>
#include <string>
#include <vector>

namespace qp {

// m1*alpha_1 + m2*alpha_2 in the A2 root lattice.
struct RootVector {
    int m1 = 0;
    int m2 = 0;

    RootVector operator-() const { return {-m1, -m2}; }
    friend RootVector operator+(RootVector x, RootVector y) { return {x.m1 + y.m1, x.m2 + y.m2}; }
    friend RootVector operator-(RootVector x, RootVector y) { return {x.m1 - y.m1, x.m2 - y.m2}; }
    friend RootVector operator*(int k, RootVector x) { return {k * x.m1, k * x.m2}; }
    friend bool operator==(RootVector x, RootVector y) { return x.m1 == y.m1 && x.m2 == y.m2; }
    friend bool operator!=(RootVector x, RootVector y) { return !(x == y); }
    friend bool operator<(RootVector x, RootVector y) { return x.m1 != y.m1 ? x.m1 < y.m1 : x.m2 < y.m2; }
    bool is_zero() const { return m1 == 0 && m2 == 0; }
    std::string str() const;
};

inline constexpr RootVector kAlpha{1, 0};  // alpha_1
inline constexpr RootVector kBeta{1, 1};   // nu(alpha)
inline constexpr RootVector kGamma{0, 1};  // nu^2(alpha)

// Gram matrix [[2,-1],[-1,2]].
int form(RootVector x, RootVector y);
// nu(a1) = a1 + a2, nu(a2) = -a1.
RootVector nu(RootVector x);
RootVector nu_pow(RootVector x, long p);
bool is_root(RootVector x);
// <nu^p x, y>
int pair_nu(long p, RootVector x, RootVector y);
// p with nu^p(alpha) = x, or -1 when x is not a root.
int root_phase(RootVector x);
std::vector<RootVector> all_roots();

// Deliberate corruptions, used only by negative controls.
struct Perturbation {
    CycScalar c_alpha_shift;            // added to c_alpha
    CycScalar epsilon_factor{1};        // multiplies every cocycle value
    int p_coeff_index = -1;             // coefficient of every pair polynomial P_{x,y} to shift
    CycScalar p_coeff_shift;
    bool active() const {
        return !c_alpha_shift.is_zero() || !epsilon_factor.is_one() || (p_coeff_index >= 0 && !p_coeff_shift.is_zero());
    }
    std::string describe() const;
};

class TwistedLattice {
public:
    explicit TwistedLattice(Perturbation pert = {});

    const Perturbation& perturbation() const { return pert_; }
    std::array<std::array<int, 2>, 2> gram() const { return {{{2, -1}, {-1, 2}}}; }
    std::array<std::array<int, 2>, 2> nu_matrix() const { return {{{1, -1}, {1, 0}}}; }

    int pairing(long p, RootVector x, RootVector y) const { return pair_nu(p, x, y); }
    // I(n) = { p in Z6 : <nu^p x, y> = n }
    std::vector<int> index_set(RootVector x, RootVector y, int n) const;
    CycScalar epsilon(RootVector x, RootVector y) const;
    // <x_(m), y_(-m)> = (1/6) sum_q w^{-mq} <nu^q x, y>
    CycScalar proj_pairing(long m, RootVector x, RootVector y) const;
    // x(n) = weight * alpha_1(n) on the one-dimensional eigenspace.
    const CycScalar& mode_weight(RootVector x, long n) const;

    CycScalar c_alpha() const;

    // prod over p with <nu^p x, y> < 0 of (1 - w^{-p} t)^{-<nu^p x, y>}
    CycPoly p_pair(RootVector x, RootVector y) const;
    // prod_{i<j} P_{d_i,d_j}(z_i / z_j); throws std::invalid_argument on a negative pairing.
    MultiPoly p_polynomial(const std::vector<RootVector>& d) const;
    CycScalar p_at_ones(const std::vector<RootVector>& d) const;
    // prod_p (1 - w^{-p} t)^{sign * <nu^p x, y>}
    RatFunc exchange(RootVector x, RootVector y, int sign = 1) const;

private:
    Perturbation pert_;
    std::vector<std::pair<RootVector, std::array<CycScalar, 6>>> weights_;
};

// Exact ordinary binomial coefficient as a rational (k < 0 or k > n gives 0).
BigRat binom(long n, long k);

}  // namespace qp
