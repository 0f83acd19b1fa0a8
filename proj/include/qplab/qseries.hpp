#pragma once

#include "qplab/scalars.hpp"

#include <map>
#include <utility>
#include <vector>

namespace qp {

// Truncated power series sum_{k<=order} c_k q^k with exact integer coefficients.
class QSeries {
public:
    QSeries() = default;
    explicit QSeries(int order) : c_(order + 1) {}
    static QSeries one(int order);

    int order() const { return static_cast<int>(c_.size()) - 1; }
    const BigInt& operator[](int k) const { return c_.at(k); }
    BigInt& operator[](int k) { return c_.at(k); }
    const std::vector<BigInt>& coeffs() const { return c_; }

    // Mixed orders truncate to the smaller one.
    friend QSeries operator+(const QSeries& a, const QSeries& b);
    friend QSeries operator*(const QSeries& a, const QSeries& b);
    QSeries shifted(int k) const;      // q^k * this, truncated
    QSeries truncated(int order) const;
    QSeries inverse() const;           // needs constant term +-1
    friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }

private:
    std::vector<BigInt> c_;
};

// prod over parts k >= 1 with (k mod m) in residues of 1/(1 - q^k); residue 0 means multiples of m.
QSeries pochhammer_inv(const std::vector<int>& residues, int m, int order);
// 1/(q^s; q^s)_n: parts s, 2s, ..., ns.
QSeries finite_pochhammer_inv(int n, int step, int order);

QSeries product_side(int order);

struct BivariateCount {
    int order = 0;
    // (n1, n2) -> coefficients by degree of q^{2n1^2+6n1n2+6n2^2} / ((q;q)_{n1} (q^3;q^3)_{n2})
    std::map<std::pair<int, int>, QSeries> quasi;
    // the same terms multiplied by F = 1/(q,q^5;q^6)_inf
    std::map<std::pair<int, int>, QSeries> with_f;

    BigInt quasi_at(int n, int n1, int n2) const;
};

inline int min_energy(int n1, int n2) { return 2 * n1 * n1 + 6 * n1 * n2 + 6 * n2 * n2; }

struct SumSide {
    QSeries total;
    BivariateCount table;
};

SumSide sum_side(int order);

BigInt capparelli_congruence_count(int n);
BigInt capparelli_difference_count(int n);
// Partitions of `total` into at most n_parts parts, all multiples of `scale`.
BigInt partitions_at_most(int n_parts, int total, int scale);

}  // namespace qp
