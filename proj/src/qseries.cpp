#include "qplab/qseries.hpp"

#include <algorithm>
#include <stdexcept>

namespace qp {

QSeries QSeries::one(int order) {
    QSeries s(order);
    if (order >= 0) s.c_[0] = 1;
    return s;
}

QSeries operator+(const QSeries& a, const QSeries& b) {
    int n = std::min(a.order(), b.order());
    QSeries r(n);
    for (int k = 0; k <= n; ++k) r.c_[k] = a.c_[k] + b.c_[k];
    return r;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
    int n = std::min(a.order(), b.order());
    QSeries r(n);
    for (int i = 0; i <= n; ++i) {
        if (sgn(a.c_[i]) == 0) continue;
        for (int j = 0; i + j <= n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return r;
}

QSeries QSeries::shifted(int k) const {
    QSeries r(order());
    for (int i = 0; i + k <= order(); ++i)
        if (i + k >= 0) r.c_[i + k] = c_[i];
    return r;
}

QSeries QSeries::truncated(int n) const {
    QSeries r(n);
    for (int i = 0; i <= n && i <= order(); ++i) r.c_[i] = c_[i];
    return r;
}

QSeries QSeries::inverse() const {
    if (c_.empty() || (c_[0] != 1 && c_[0] != -1)) throw std::domain_error("QSeries::inverse: constant term must be +-1");
    QSeries r(order());
    r.c_[0] = c_[0];
    for (int k = 1; k <= order(); ++k) {
        BigInt acc = 0;
        for (int i = 1; i <= k; ++i) acc += c_[i] * r.c_[k - i];
        r.c_[k] = -acc * c_[0];
    }
    return r;
}

QSeries pochhammer_inv(const std::vector<int>& residues, int m, int order) {
    if (m <= 0) throw std::invalid_argument("pochhammer_inv: modulus must be positive");
    QSeries s = QSeries::one(order);
    for (int k = 1; k <= order; ++k) {
        int r = k % m;
        if (std::find_if(residues.begin(), residues.end(), [&](int x) { return ((x % m) + m) % m == r; }) == residues.end())
            continue;
        for (int i = k; i <= order; ++i) s[i] += s[i - k];
    }
    return s;
}

QSeries finite_pochhammer_inv(int n, int step, int order) {
    QSeries s = QSeries::one(order);
    for (int j = 1; j <= n; ++j) {
        int k = j * step;
        for (int i = k; i <= order; ++i) s[i] += s[i - k];
    }
    return s;
}

QSeries product_side(int order) {
    return pochhammer_inv({1, 5}, 6, order) * pochhammer_inv({2, 3, 9, 10}, 12, order);
}

BigInt BivariateCount::quasi_at(int n, int n1, int n2) const {
    auto it = quasi.find({n1, n2});
    if (it == quasi.end() || n > it->second.order() || n < 0) return 0;
    return it->second[n];
}

SumSide sum_side(int order) {
    SumSide out;
    out.total = QSeries(order);
    out.table.order = order;
    QSeries f = pochhammer_inv({1, 5}, 6, order);
    for (int n2 = 0; min_energy(0, n2) <= order; ++n2) {
        for (int n1 = 0; min_energy(n1, n2) <= order; ++n1) {
            int e = min_energy(n1, n2);
            QSeries term = (finite_pochhammer_inv(n1, 1, order) * finite_pochhammer_inv(n2, 3, order)).shifted(e);
            QSeries full = term * f;
            out.total = out.total + full;
            out.table.quasi.emplace(std::make_pair(n1, n2), term);
            out.table.with_f.emplace(std::make_pair(n1, n2), full);
        }
    }
    return out;
}

BigInt capparelli_congruence_count(int n) {
    if (n < 0) throw std::invalid_argument("capparelli_congruence_count: n < 0");
    std::vector<BigInt> dp(n + 1);
    dp[0] = 1;
    for (int k = 1; k <= n; ++k) {
        if (k % 6 == 1 || k % 6 == 5) continue;
        for (int i = n; i >= k; --i) dp[i] += dp[i - k];
    }
    return dp[n];
}

namespace {

bool gap_ok(int small, int big) {
    int d = big - small;
    if (d < 2) return false;
    return d >= 4 || (small + big) % 3 == 0;
}

}  // namespace

BigInt capparelli_difference_count(int n) {
    if (n < 0) throw std::invalid_argument("capparelli_difference_count: n < 0");
    if (n == 0) return 1;
    // ways[rem][p]: completions using parts above p summing to rem, given the last part is p.
    std::vector<std::vector<BigInt>> ways(n + 1, std::vector<BigInt>(n + 1));
    for (int p = n; p >= 2; --p) {
        for (int rem = 0; rem <= n; ++rem) {
            BigInt w = rem == 0 ? 1 : 0;
            for (int q = p + 2; q <= rem; ++q)
                if (gap_ok(p, q)) w += ways[rem - q][q];
            ways[rem][p] = w;
        }
    }
    BigInt total = 0;
    for (int p = 2; p <= n; ++p) total += ways[n - p][p];
    return total;
}

BigInt partitions_at_most(int n_parts, int total, int scale) {
    if (n_parts < 0 || total < 0 || scale <= 0) throw std::invalid_argument("partitions_at_most: negative argument");
    if (total % scale != 0) return 0;
    int t = total / scale;
    // conjugation: at most n parts <-> parts of size at most n
    std::vector<BigInt> dp(t + 1);
    dp[0] = 1;
    for (int k = 1; k <= n_parts && k <= t; ++k)
        for (int i = k; i <= t; ++i) dp[i] += dp[i - k];
    return dp[t];
}

}  // namespace qp
