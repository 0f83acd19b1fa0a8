#include "qplab/fock.hpp"

#include <cassert>
#include <deque>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace qp {

namespace {

struct VecHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = v.size();
        for (int x : v) h = h * 1315423911u + static_cast<std::size_t>(x);
        return h;
    }
};

class Registry {
public:
    Registry() {
        parts_.emplace_back();
        degree_.push_back(0);
        index_.emplace(std::vector<int>{}, 0);
    }

    std::uint32_t intern(std::vector<int>&& parts) {
        {
            std::shared_lock lock(mu_);
            auto it = index_.find(parts);
            if (it != index_.end()) return it->second;
        }
        std::unique_lock lock(mu_);
        auto it = index_.find(parts);
        if (it != index_.end()) return it->second;
        int d = 0;
        for (int p : parts) d += p;
        auto id = static_cast<std::uint32_t>(parts_.size());
        if (id >= (1u << 21)) throw std::length_error("FockState registry exhausted");
        parts_.push_back(parts);
        degree_.push_back(d);
        index_.emplace(std::move(parts), id);
        return id;
    }

    const std::vector<int>& parts(std::uint32_t id) {
        std::shared_lock lock(mu_);
        return parts_[id];
    }

    int degree(std::uint32_t id) {
        std::shared_lock lock(mu_);
        return degree_[id];
    }

private:
    std::shared_mutex mu_;
    std::deque<std::vector<int>> parts_;
    std::deque<int> degree_;
    std::unordered_map<std::vector<int>, std::uint32_t, VecHash> index_;
};

Registry& registry() {
    static Registry r;
    return r;
}

BigRat factorial(long n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(n));
    return BigRat(f);
}

void mode_partitions(int m, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (m == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(m, max_part); k >= 1; --k) {
        if (!is_mode(k)) continue;
        cur.push_back(k);
        mode_partitions(m - k, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

FockState FockState::from_parts(std::vector<int> parts) {
    for (int p : parts)
        if (p <= 0 || !is_mode(p)) throw std::invalid_argument("FockState: part " + std::to_string(p) + " is not a positive mode");
    std::sort(parts.begin(), parts.end(), std::greater<int>());
    return from_id(registry().intern(std::move(parts)));
}

const std::vector<int>& FockState::parts() const { return registry().parts(id_); }

int FockState::degree() const { return registry().degree(id_); }

std::string FockState::str() const {
    std::ostringstream os;
    os << "[";
    const auto& p = parts();
    for (std::size_t i = 0; i < p.size(); ++i) os << (i ? "," : "") << p[i];
    os << "]";
    return os.str();
}

FockVector fock_vacuum() { return FockVector(FockState(), CycScalar(1)); }

std::vector<FockState> states_of_degree(int n) {
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    if (n >= 0) mode_partitions(n, n, cur, parts);
    std::vector<FockState> out;
    for (auto& p : parts) out.push_back(FockState::from_parts(p));
    return out;
}

FockState merge_parts(FockState s, const std::vector<int>& extra) {
    std::vector<int> p = s.parts();
    p.insert(p.end(), extra.begin(), extra.end());
    std::sort(p.begin(), p.end(), std::greater<int>());
    return FockState::from_id(registry().intern(std::move(p)));
}

void accumulate(FockVector& out, const SlotTerms& t, const CycScalar& c) {
    for (const auto& [s, v] : t) out.add(s, v * c);
}

void FockEngine::heis_state(RootVector x, long n, FockState s, SlotTerms& out) const {
    if (!is_mode(n)) return;
    const CycScalar& w = lat_.mode_weight(x, n);
    if (w.is_zero()) return;
    if (n < 0) {
        out.emplace_back(merge_parts(s, {static_cast<int>(-n)}), w);
        return;
    }
    std::vector<int> p = s.parts();
    long mult = 0;
    for (int q : p) mult += (q == n);
    if (mult == 0) return;
    p.erase(std::find(p.begin(), p.end(), static_cast<int>(n)));
    out.emplace_back(FockState::from_id(registry().intern(std::move(p))), w * ratio(n * mult, 6));
}

FockVector FockEngine::heis_act(RootVector x, long n, const FockVector& v) const {
    FockVector out;
    SlotTerms t;
    for (const auto& [s, c] : v) {
        t.clear();
        heis_state(x, n, s, t);
        accumulate(out, t, c);
    }
    return out;
}

const SlotTerms& FockEngine::cached(Cache& c, const Key& k, SlotTerms (FockEngine::*fn)(RootVector, long, FockState) const) const {
    {
        std::shared_lock lock(mu_);
        auto it = c.find(k);
        if (it != c.end()) return it->second;
    }
    SlotTerms v = (this->*fn)(RootVector{k.m1, k.m2}, k.n, FockState::from_id(k.id));
    std::unique_lock lock(mu_);
    return c.try_emplace(k, std::move(v)).first->second;
}

const SlotTerms& FockEngine::e_plus(RootVector x, long m, FockState s) const {
    return cached(plus_, Key{x.m1, x.m2, m, s.id()}, &FockEngine::compute_e_plus);
}

const SlotTerms& FockEngine::e_minus(RootVector x, long m, FockState s) const {
    return cached(minus_, Key{x.m1, x.m2, m, s.id()}, &FockEngine::compute_e_minus);
}

const SlotTerms& FockEngine::vertex(RootVector sigma, long n, FockState s) const {
    return cached(vertex_, Key{sigma.m1, sigma.m2, n, s.id()}, &FockEngine::compute_vertex);
}

SlotTerms FockEngine::compute_e_plus(RootVector x, long m, FockState s) const {
    SlotTerms out;
    if (m < 0 || m > s.degree()) return out;
    if (m == 0) {
        out.emplace_back(s, CycScalar(1));
        return out;
    }
    if (x.is_zero()) return out;
    // distinct parts with multiplicities
    std::vector<std::pair<int, int>> groups;
    for (int p : s.parts()) {
        if (!groups.empty() && groups.back().first == p) ++groups.back().second;
        else groups.emplace_back(p, 1);
    }
    std::vector<int> take(groups.size());
    std::function<void(std::size_t, long, CycScalar)> rec = [&](std::size_t i, long rem, CycScalar coef) {
        if (i == groups.size()) {
            if (rem != 0) return;
            std::vector<int> left;
            for (std::size_t g = 0; g < groups.size(); ++g)
                for (int j = 0; j < groups[g].second - take[g]; ++j) left.push_back(groups[g].first);
            out.emplace_back(FockState::from_id(registry().intern(std::move(left))), coef);
            return;
        }
        auto [k, mult] = groups[i];
        const CycScalar& w = lat_.mode_weight(x, k);
        CycScalar wp(1);
        for (int j = 0; j <= mult && static_cast<long>(j) * k <= rem; ++j) {
            take[i] = j;
            if (j > 0) wp *= w;
            if (j > 0 && wp.is_zero()) break;
            rec(i + 1, rem - static_cast<long>(j) * k, coef * wp * binom(mult, j));
        }
        take[i] = 0;
    };
    rec(0, m, CycScalar(1));
    return out;
}

const std::vector<std::pair<std::vector<int>, CycScalar>>& FockEngine::minus_table(RootVector x, long m) const {
    auto key = std::make_tuple(x.m1, x.m2, m);
    {
        std::shared_lock lock(mu_);
        auto it = tables_.find(key);
        if (it != tables_.end()) return it->second;
    }
    std::vector<std::vector<int>> parts;
    std::vector<int> cur;
    mode_partitions(static_cast<int>(-m), static_cast<int>(-m), cur, parts);
    std::vector<std::pair<std::vector<int>, CycScalar>> table;
    for (auto& mu : parts) {
        CycScalar coef(1);
        std::size_t i = 0;
        while (i < mu.size()) {
            std::size_t j = i;
            while (j < mu.size() && mu[j] == mu[i]) ++j;
            int k = mu[i];
            long mult = static_cast<long>(j - i);
            CycScalar base = lat_.mode_weight(x, -k) * ratio(-6, k);
            coef *= cyc_pow(base, mult);
            coef *= BigRat(1) / factorial(mult);
            i = j;
        }
        if (!coef.is_zero()) table.emplace_back(std::move(mu), coef);
    }
    std::unique_lock lock(mu_);
    return tables_.try_emplace(key, std::move(table)).first->second;
}

SlotTerms FockEngine::compute_e_minus(RootVector x, long m, FockState s) const {
    SlotTerms out;
    if (m > 0) return out;
    if (m == 0) {
        out.emplace_back(s, CycScalar(1));
        return out;
    }
    if (x.is_zero()) return out;
    for (const auto& [mu, coef] : minus_table(x, m)) out.emplace_back(merge_parts(s, mu), coef);
    return out;
}

SlotTerms FockEngine::compute_vertex(RootVector sigma, long n, FockState s) const {
    SlotTerms out;
    int d = s.degree();
    if (n > d) return out;
    int p = root_phase(sigma);
    if (p > 0) {
        CycScalar ph = cyc_pow_omega(static_cast<long>(p) * n);
        for (const auto& [t, c] : vertex(kAlpha, n, s)) out.emplace_back(t, c * ph);
        return out;
    }
    FockVector acc;
    RootVector neg = -sigma;
    for (long b = std::max(0L, n); b <= d; ++b) {
        for (const auto& [t, c] : e_plus(neg, b, s)) accumulate(acc, e_minus(neg, n - b, t), c);
    }
    out.assign(acc.begin(), acc.end());
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first.id() < b.first.id(); });
#ifndef NDEBUG
    for (const auto& [t, c] : out) assert(t.degree() == d - n);
#endif
    return out;
}

FockVector FockEngine::e_coeff(int sign, RootVector x, long m, const FockVector& v) const {
    FockVector out;
    for (const auto& [s, c] : v) accumulate(out, sign > 0 ? e_plus(x, m, s) : e_minus(x, m, s), c);
    return out;
}

LaurentWindow<FockVector> FockEngine::e_window(int sign, RootVector x, const FockVector& v, long lo, long hi) const {
    if (lo > hi) throw std::invalid_argument("e_window: lo > hi");
    LaurentWindow<FockVector> w;
    w.lo = lo;
    w.hi = hi;
    for (long n = lo; n <= hi; ++n) {
        FockVector r = e_coeff(sign, x, n, v);
        if (!r.is_zero()) w.coeff.emplace(n, std::move(r));
    }
    return w;
}

FockVector FockEngine::x_level1(RootVector x, long n, const FockVector& v) const {
    FockVector out;
    CycScalar c = lat_.c_alpha();
    for (const auto& [s, a] : v) accumulate(out, vertex(x, n, s), a * c);
    return out;
}

std::size_t FockEngine::cache_entries() const {
    std::shared_lock lock(mu_);
    return plus_.size() + minus_.size() + vertex_.size();
}

}  // namespace qp
