#include "qplab/basis.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace qp {

int QPMonomial::degree() const {
    int d = 0;
    for (int i : heis) d -= i;
    for (int j : c1) d -= j;
    for (int k : c2) d -= k;
    return d;
}

std::vector<int> QPMonomial::degree_type() const {
    std::vector<int> v = c1;
    v.insert(v.end(), c2.begin(), c2.end());
    return v;
}

std::string QPMonomial::str() const {
    std::ostringstream os;
    bool first = true;
    auto put = [&](const char* name, int i) {
        os << (first ? "" : " ") << name << "(" << i << ")";
        first = false;
    };
    for (int i : heis) put("a", i);
    for (int j : c1) put("X1", j);
    for (int k : c2) put("X2", k);
    if (first) os << "1";
    return os.str();
}

bool ordering_and_residues_ok(const QPMonomial& m) {
    auto sorted_neg = [](const std::vector<int>& v) {
        return std::is_sorted(v.begin(), v.end()) && (v.empty() || v.back() < 0);
    };
    if (!sorted_neg(m.heis) || !sorted_neg(m.c1) || !sorted_neg(m.c2)) return false;
    for (int i : m.heis)
        if (!is_mode(i)) return false;
    for (int k : m.c2)
        if (k % 3 != 0) return false;
    return true;
}

bool difference_conditions_ok(const QPMonomial& m) {
    for (std::size_t p = 0; p + 1 < m.c1.size(); ++p)
        if (m.c1[p] > m.c1[p + 1] - 4) return false;
    for (std::size_t p = 0; p + 1 < m.c2.size(); ++p)
        if (m.c2[p] > m.c2[p + 1] - 12) return false;
    return true;
}

bool initial_conditions_ok(const QPMonomial& m) {
    int t = static_cast<int>(m.c2.size());
    if (!m.c1.empty() && m.c1.back() > -2 - 6 * t) return false;
    if (!m.c2.empty() && m.c2.back() > -6) return false;
    return true;
}

bool is_valid(const QPMonomial& m) {
    return ordering_and_residues_ok(m) && difference_conditions_ok(m) && initial_conditions_ok(m);
}

namespace {

// Descending chains x_last >= ... built from the top: top <= start, each next <= prev - gap.
void chains(int count, int start, int gap, int step_mod, int budget, std::vector<int>& cur,
            const std::function<void(const std::vector<int>&, int)>& emit) {
    if (count == 0) {
        emit(cur, budget);
        return;
    }
    // minimal energy of `count` parts: -start, -start+gap, ...
    for (int x = start;; --x) {
        if (step_mod > 1 && ((-x) % step_mod) != 0) continue;
        long need = 0;
        for (int i = 0; i < count; ++i) need += -(x) + static_cast<long>(i) * gap;
        if (need > budget) break;
        cur.insert(cur.begin(), x);
        chains(count - 1, x - gap, gap, step_mod, budget + x, cur, emit);
        cur.erase(cur.begin());
    }
}

void mode_multisets(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        if (!is_mode(k)) continue;
        cur.push_back(k);
        mode_multisets(n - k, k, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> heis_parts(int n) {
    std::vector<std::vector<int>> raw, out;
    std::vector<int> cur;
    mode_multisets(n, n, cur, raw);
    for (auto& p : raw) {
        std::vector<int> idx;
        for (int k : p) idx.push_back(-k);  // descending parts -> ascending negatives
        out.push_back(idx);
    }
    return out;
}

void all_partitions(int n, int max_part, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int k = std::min(n, max_part); k >= 1; --k) {
        cur.push_back(k);
        all_partitions(n - k, k, cur, out);
        cur.pop_back();
    }
}

}  // namespace

std::vector<QPMonomial> enumerate_quasi_monomials(int n) {
    std::vector<QPMonomial> out;
    if (n < 0) return out;
    for (int t = 0; min_energy(0, t) <= n; ++t) {
        for (int s = 0; min_energy(s, t) <= n; ++s) {
            std::vector<int> cur2;
            chains(t, -6, 12, 3, n, cur2, [&](const std::vector<int>& k, int left) {
                std::vector<int> cur1;
                chains(s, -2 - 6 * t, 4, 1, left, cur1, [&](const std::vector<int>& j, int rest) {
                    if (rest == 0) out.push_back(QPMonomial{{}, j, k});
                });
            });
        }
    }
    return out;
}

std::vector<QPMonomial> enumerate_basis_monomials(int n) {
    std::vector<QPMonomial> out;
    for (int q = 0; q <= n; ++q) {
        std::vector<QPMonomial> quasi = enumerate_quasi_monomials(q);
        for (auto& h : heis_parts(n - q))
            for (const auto& b : quasi) out.push_back(QPMonomial{h, b.c1, b.c2});
    }
    return out;
}

std::vector<QPMonomial> enumerate_pbw_monomials(int n, int max_x1) {
    std::vector<QPMonomial> out;
    for (int q = 0; q <= n; ++q) {
        std::vector<std::vector<int>> xs;
        std::vector<int> cur;
        all_partitions(q, q, cur, xs);
        for (auto& h : heis_parts(n - q))
            for (auto& x : xs) {
                if (max_x1 >= 0 && static_cast<int>(x.size()) > max_x1) continue;
                std::vector<int> j;
                for (int k : x) j.push_back(-k);
                out.push_back(QPMonomial{h, j, {}});
            }
    }
    return out;
}

int compare_reverse_lex(const std::vector<int>& a, const std::vector<int>& b) {
    std::size_t i = a.size(), j = b.size();
    while (i > 0 && j > 0) {
        --i;
        --j;
        if (a[i] != b[j]) return a[i] < b[j] ? -1 : 1;
    }
    if (i == 0 && j == 0) return 0;
    return i == 0 ? -1 : 1;
}

namespace {

int compare_quasi(const QPMonomial& a, const QPMonomial& b, int charge_sign) {
    if (a.charge() != b.charge()) return (a.charge() > b.charge() ? -1 : 1) * charge_sign;
    auto [sa, ta] = a.color_type();
    auto [sb, tb] = b.color_type();
    int c = compare_reverse_lex({sa, ta}, {sb, tb});
    if (c != 0) return c;
    return compare_reverse_lex(a.degree_type(), b.degree_type());
}

int compare_full(const QPMonomial& a, const QPMonomial& b, int charge_sign) {
    int c = compare_quasi(a, b, charge_sign);
    if (c != 0) return c;
    return compare_reverse_lex(a.heis, b.heis);
}

}  // namespace

int compare_order(const QPMonomial& a, const QPMonomial& b) { return compare_full(a, b, 1); }

int compare_order_intuitive(const QPMonomial& a, const QPMonomial& b) { return compare_full(a, b, -1); }

TensorVector MonomialApplier::apply(const QPMonomial& m) {
    // application order: X2(k_t) first, alpha(i_1) last
    std::vector<Op> seq;
    for (auto it = m.c2.rbegin(); it != m.c2.rend(); ++it) seq.emplace_back(2, *it);
    for (auto it = m.c1.rbegin(); it != m.c1.rend(); ++it) seq.emplace_back(1, *it);
    for (auto it = m.heis.rbegin(); it != m.heis.rend(); ++it) seq.emplace_back(0, *it);
    std::size_t known = 0;
    TensorVector cur = tensor_vacuum();
    for (std::size_t len = seq.size(); len > 0; --len) {
        auto it = cache_.find(std::vector<Op>(seq.begin(), seq.begin() + len));
        if (it != cache_.end()) {
            known = len;
            cur = it->second;
            break;
        }
    }
    for (std::size_t i = known; i < seq.size(); ++i) {
        auto [kind, n] = seq[i];
        if (!cur.is_zero()) {
            if (kind == 0) cur = l3_.heis(kAlpha, n, cur);
            else if (kind == 1) cur = l3_.x1(n, cur);
            else cur = l3_.x2(n, cur);
        }
        cache_.emplace(std::vector<Op>(seq.begin(), seq.begin() + i + 1), cur);
    }
    return cur;
}

TensorVector apply_monomial(const Level3& l3, const QPMonomial& m) {
    MonomialApplier a(l3);
    return a.apply(m);
}

RankAudit rank_audit(const Level3& l3, int n, Budget budget) {
    auto t0 = std::chrono::steady_clock::now();
    // degree-zero operators act as scalars on the vacuum; the spanning family relies on it
    TensorVector v0 = tensor_vacuum();
    TensorVector x0 = l3.x1(0, v0);
    if (x0 != v0 * (l3.lattice().c_alpha() * BigRat(3)))
        throw std::logic_error("rank_audit: X1(0) does not act on the vacuum as 3 c_alpha");

    RankAudit r;
    r.degree = n;
    r.product_coeff = product_side(n)[n];
    r.ambient_dimension = graded_component_basis(n).size();
    MonomialApplier app(l3);
    auto restricted = enumerate_basis_monomials(n);
    r.restricted_count = restricted.size();
    Echelon e1(false, budget);
    for (const auto& m : restricted) {
        e1.insert(app.apply(m));
        budget.check_time("rank audit");
    }
    r.restricted_rank = e1.rank();
    auto pbw = enumerate_pbw_monomials(n);
    r.unrestricted_family = pbw.size();
    Echelon e2(false, budget);
    for (const auto& m : pbw) {
        e2.insert(app.apply(m));
        budget.check_time("rank audit");
    }
    r.unrestricted_rank = e2.rank();
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return r;
}

std::map<std::pair<int, int>, std::vector<BigInt>> bivariate_census(int nmax) {
    std::map<std::pair<int, int>, std::vector<BigInt>> out;
    for (int t = 0; min_energy(0, t) <= nmax; ++t)
        for (int s = 0; min_energy(s, t) <= nmax; ++s) out[{s, t}] = std::vector<BigInt>(nmax + 1);
    for (int n = 0; n <= nmax; ++n)
        for (const auto& m : enumerate_quasi_monomials(n)) out[m.color_type()][n] += 1;
    return out;
}

}  // namespace qp
