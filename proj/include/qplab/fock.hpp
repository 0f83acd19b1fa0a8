#pragma once

#include "qplab/lattice.hpp"
#include "qplab/linear.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <vector>

namespace qp {

inline bool is_mode(long n) { long r = mod6(n); return r == 1 || r == 5; }

// Basis state prod_k alpha_1(-s_k)|0> of the level-one Fock space; parts are
// positive, = +-1 mod 6, and stored in descending order. Energy = sum of parts.
// States are interned, so equality and hashing are by id.
class FockState {
public:
    FockState() = default;  // vacuum
    static FockState from_parts(std::vector<int> parts);
    static FockState from_id(std::uint32_t id) { FockState s; s.id_ = id; return s; }

    std::uint32_t id() const { return id_; }
    const std::vector<int>& parts() const;
    int degree() const;
    bool is_vacuum() const { return id_ == 0; }
    std::string str() const;

    friend bool operator==(FockState a, FockState b) { return a.id_ == b.id_; }
    friend bool operator!=(FockState a, FockState b) { return a.id_ != b.id_; }

private:
    std::uint32_t id_ = 0;
};

struct FockStateHash {
    std::size_t operator()(FockState s) const { return std::hash<std::uint32_t>{}(s.id()); }
};

using FockVector = LinComb<FockState, FockStateHash>;
using SlotTerms = std::vector<std::pair<FockState, CycScalar>>;

FockVector fock_vacuum();
// All states of energy n, deterministic order.
std::vector<FockState> states_of_degree(int n);
// Multiset union of two states.
FockState merge_parts(FockState s, const std::vector<int>& extra);

// Coefficients of a formal series on a finite index range.
template <class V>
struct LaurentWindow {
    long lo = 0;
    long hi = -1;
    std::map<long, V> coeff;
    const V& at(long n) const {
        static const V zero;
        auto it = coeff.find(n);
        return it == coeff.end() ? zero : it->second;
    }
};

// Level-one operators. Grading convention: energy D = sum of parts >= 0 and the
// coefficient of zeta^n lowers D by n.
class FockEngine {
public:
    explicit FockEngine(const TwistedLattice& lat) : lat_(lat) {}

    const TwistedLattice& lattice() const { return lat_; }

    // x(n) on V: creation for n < 0, (n/6)<x_(n),a_(-n)> d/da(-n) for n > 0, zero otherwise.
    void heis_state(RootVector x, long n, FockState s, SlotTerms& out) const;
    FockVector heis_act(RootVector x, long n, const FockVector& v) const;

    // Coefficient of zeta^m in E^+(x; zeta) (m >= 0) or E^-(x; zeta) (m <= 0) on one state.
    const SlotTerms& e_plus(RootVector x, long m, FockState s) const;
    const SlotTerms& e_minus(RootVector x, long m, FockState s) const;
    FockVector e_coeff(int sign, RootVector x, long m, const FockVector& v) const;
    LaurentWindow<FockVector> e_window(int sign, RootVector x, const FockVector& v, long lo, long hi) const;

    // Coefficient of zeta^n in E^-(-s; zeta) E^+(-s; zeta); no c_alpha factor.
    const SlotTerms& vertex(RootVector sigma, long n, FockState s) const;
    // c_alpha * vertex
    FockVector x_level1(RootVector x, long n, const FockVector& v) const;

    std::size_t cache_entries() const;

private:
    struct Key {
        int m1, m2;
        long n;
        std::uint32_t id;
        bool operator==(const Key& o) const { return m1 == o.m1 && m2 == o.m2 && n == o.n && id == o.id; }
    };
    struct KeyHash {
        std::size_t operator()(const Key& k) const {
            std::size_t h = static_cast<std::size_t>(k.id) * 1000003u;
            h ^= static_cast<std::size_t>(k.n + 4096) * 7919u;
            h ^= static_cast<std::size_t>((k.m1 + 64) * 131 + (k.m2 + 64)) << 40;
            return h;
        }
    };
    using Cache = std::unordered_map<Key, SlotTerms, KeyHash>;

    const SlotTerms& cached(Cache& c, const Key& k, SlotTerms (FockEngine::*fn)(RootVector, long, FockState) const) const;
    SlotTerms compute_e_plus(RootVector x, long m, FockState s) const;
    SlotTerms compute_e_minus(RootVector x, long m, FockState s) const;
    SlotTerms compute_vertex(RootVector sigma, long n, FockState s) const;
    // Partitions of m into modes with weights prod (-6 lambda_x(-k)/k)^j / j!.
    const std::vector<std::pair<std::vector<int>, CycScalar>>& minus_table(RootVector x, long m) const;

    const TwistedLattice& lat_;
    mutable std::shared_mutex mu_;
    mutable Cache plus_, minus_, vertex_;
    mutable std::map<std::tuple<int, int, long>, std::vector<std::pair<std::vector<int>, CycScalar>>> tables_;
};

void accumulate(FockVector& out, const SlotTerms& t, const CycScalar& c);

}  // namespace qp
