#pragma once

#include "qplab/fock.hpp"

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace qp {

using TensorKey = std::uint64_t;

// Basis state of V (x) V (x) V; three interned slot states packed in 21 bits each.
struct TensorState {
    std::array<FockState, 3> slot{};

    TensorKey key() const {
        return static_cast<TensorKey>(slot[0].id()) | (static_cast<TensorKey>(slot[1].id()) << 21) |
               (static_cast<TensorKey>(slot[2].id()) << 42);
    }
    static TensorState from_key(TensorKey k) {
        constexpr TensorKey mask = (TensorKey(1) << 21) - 1;
        return {{FockState::from_id(static_cast<std::uint32_t>(k & mask)),
                 FockState::from_id(static_cast<std::uint32_t>((k >> 21) & mask)),
                 FockState::from_id(static_cast<std::uint32_t>((k >> 42) & mask))}};
    }
    int degree() const { return slot[0].degree() + slot[1].degree() + slot[2].degree(); }
    std::string str() const { return slot[0].str() + "x" + slot[1].str() + "x" + slot[2].str(); }
};

using TensorVector = LinComb<TensorKey>;

TensorVector tensor_vacuum();
// Degree of a homogeneous vector; -1 for the zero vector; throws if inhomogeneous.
int homogeneous_degree(const TensorVector& w);
bool is_homogeneous(const TensorVector& w);
// All tensor states of energy n, deterministic order.
std::vector<TensorState> graded_component_basis(int n);
std::vector<std::pair<TensorState, CycScalar>> sorted_terms(const TensorVector& w);

// Operator placed in one tensor slot.
struct SlotOp {
    enum Kind { Identity, Vertex, EPlus, EMinus } kind = Identity;
    RootVector root{};
};

// One term of a closed form: coef * (x)_slots vertex(sigma_s) with a shared zeta.
struct ClosedFormTerm {
    CycScalar coef;
    std::array<std::optional<RootVector>, 3> sigma;
};

// Slot content for a product of two normal-ordered clusters at zeta_1 and zeta_2:
// E^-(-a; z1) E^-(-b; z2) E^+(-a; z1) E^+(-b; z2).
struct SlotPair {
    std::optional<RootVector> a;
    std::optional<RootVector> b;
};

struct RawSumStats {
    long lowest_index = 0;
    long nonzero_terms = 0;
};

// The level-three ambient space with the diagonal action (c = 3).
class Level3 {
public:
    explicit Level3(const FockEngine& fock) : fock_(fock) {}

    const FockEngine& fock() const { return fock_; }
    const TwistedLattice& lattice() const { return fock_.lattice(); }
    static constexpr int level() { return 3; }

    TensorVector heis(RootVector x, long n, const TensorVector& w) const;
    // X(x; n) = sum over slots of c_alpha * vertex(x; n)
    TensorVector x_root(RootVector x, long n, const TensorVector& w) const;
    TensorVector x1(long n, const TensorVector& w) const;
    // charge-two quasi-particle X(alpha, beta; n); requires homogeneous input
    TensorVector x2(long n, const TensorVector& w) const;
    // X(d_1, ..., d_r; n), r <= 4, all d_i in {alpha, beta}
    TensorVector x_multi(const std::vector<RootVector>& d, long n, const TensorVector& w) const;

    // Limit of P_d(z) X(d_1; z_1)...X(d_r; z_r) as z_i -> z, organized by slot assignment.
    std::vector<ClosedFormTerm> closed_form(const std::vector<RootVector>& d) const;
    TensorVector apply_closed_form(const std::vector<ClosedFormTerm>& terms, long n, const TensorVector& w) const;

    // Coefficient of zeta^n of (x)_s ops[s](zeta) applied to w.
    TensorVector tensor_coeff(const std::array<SlotOp, 3>& ops, long n, const TensorVector& w) const;

    // Group-like E^{+-}(x; n) on three slots.
    TensorVector e_coeff(int sign, RootVector x, long n, const TensorVector& w) const;
    LaurentWindow<TensorVector> e_window3(int sign, RootVector x, const TensorVector& w, long lo, long hi) const;

    // sum_{n1+n2=n} n1^p n2^q N_{n1,n2} w for the normal-ordered two-cluster product.
    TensorVector normal_ordered_sum(const std::array<SlotPair, 3>& pattern, long n, int p, int q, const TensorVector& w) const;

    // Cross-check: sum_b sum_k P_k X(alpha; n-b-k) X(beta; b+k) w, widening b downwards
    // until `margin` consecutive summands vanish.
    TensorVector x2_raw(long n, const TensorVector& w, int margin, RawSumStats* stats = nullptr) const;

private:
    const SlotTerms& slot_terms(const SlotOp& op, long n, FockState s, SlotTerms& scratch) const;
    const std::vector<ClosedFormTerm>& x2_form() const;
    TensorVector cached_state_op(int kind, long n, TensorKey k) const;

    const FockEngine& fock_;
    mutable std::shared_mutex mu_;
    mutable std::map<std::pair<int, long>, std::unordered_map<TensorKey, TensorVector>> state_cache_;
    mutable std::optional<std::vector<ClosedFormTerm>> x2_form_;
};

}  // namespace qp
