#include "qplab/qseries.hpp"

#include <doctest.h>

#include <functional>

using namespace qp;

namespace {

// Partitions of n with parts from `allowed` (unlimited multiplicity), by plain recursion.
long count_partitions(int n, const std::function<bool(int)>& allowed, int max_part) {
    if (n == 0) return 1;
    long c = 0;
    for (int p = std::min(n, max_part); p >= 1; --p)
        if (allowed(p)) c += count_partitions(n - p, allowed, p);
    return c;
}

long count_distinct(int n, const std::function<bool(int)>& allowed, int max_part) {
    if (n == 0) return 1;
    long c = 0;
    for (int p = std::min(n, max_part); p >= 1; --p)
        if (allowed(p)) c += count_distinct(n - p, allowed, p - 1);
    return c;
}

// Descending partitions with the Capparelli gap conditions, enumerated part by part.
long count_gap(int n, int prev) {
    if (n == 0) return 1;
    long c = 0;
    for (int p = 2; p <= n; ++p) {
        if (prev > 0) {
            int d = prev - p;
            if (d < 2) continue;
            if (d < 4 && (prev + p) % 3 != 0) continue;
        }
        c += count_gap(n - p, p);
    }
    return c;
}

bool f_part(int p) { return p % 6 == 1 || p % 6 == 5; }
bool product_part(int p) { return f_part(p) || p % 12 == 2 || p % 12 == 3 || p % 12 == 9 || p % 12 == 10; }

}  // namespace

TEST_SUITE("qseries") {

TEST_CASE("F counts partitions into parts = +-1 mod 6") {
    QSeries f = pochhammer_inv({1, 5}, 6, 30);
    for (int n = 0; n <= 30; ++n) CHECK(f[n] == count_partitions(n, f_part, n));
    std::vector<long> head = {1, 1, 1, 1, 1, 2, 2};
    for (int n = 0; n <= 6; ++n) CHECK(f[n] == head[n]);
}

TEST_CASE("trivial series") {
    CHECK(pochhammer_inv({1, 5}, 6, 0) == QSeries::one(0));
    QSeries g = finite_pochhammer_inv(1, 1, 15);
    for (int n = 0; n <= 15; ++n) CHECK(g[n] == 1);
    CHECK_THROWS(pochhammer_inv({1}, 0, 5));
}

TEST_CASE("inverse and truncation") {
    QSeries f = pochhammer_inv({1, 5}, 6, 20);
    QSeries one = f * f.inverse();
    CHECK(one == QSeries::one(20));
    QSeries g = finite_pochhammer_inv(3, 3, 12);
    CHECK((f + g).order() == 12);
    CHECK(f.shifted(3)[3] == 1);
    CHECK(f.shifted(3)[2] == 0);
}

TEST_CASE("product side is the partition count it describes") {
    QSeries p = product_side(40);
    for (int n = 0; n <= 40; ++n) CHECK(p[n] == count_partitions(n, product_part, n));
    std::vector<long> head = {1, 1, 2, 3, 4, 6, 8};
    for (int n = 0; n <= 6; ++n) CHECK(p[n] == head[n]);
}

TEST_CASE("sum side terms") {
    SumSide s = sum_side(40);
    QSeries f = pochhammer_inv({1, 5}, 6, 40);
    CHECK(s.table.with_f.at({0, 0}) == f);
    const QSeries& t10 = s.table.quasi.at({1, 0});
    for (int n = 0; n <= 40; ++n) CHECK(t10[n] == (n >= 2 ? 1 : 0));
    for (const auto& [k, ser] : s.table.quasi) {
        int lo = min_energy(k.first, k.second);
        for (int n = 0; n < lo; ++n) CHECK(ser[n] == 0);
        CHECK(ser[lo] == 1);
    }
    CHECK(s.total == product_side(40));
}

TEST_CASE("Capparelli counters against brute force") {
    for (int n = 0; n <= 40; ++n) {
        CHECK(capparelli_congruence_count(n) == count_distinct(n, [](int p) { return !f_part(p); }, n));
        CHECK(capparelli_difference_count(n) == count_gap(n, 0));
    }
    CHECK(capparelli_congruence_count(9) == 3);
    CHECK(capparelli_difference_count(9) == 3);
    CHECK(capparelli_congruence_count(1) == 0);
}

TEST_CASE("bounded partitions") {
    CHECK(partitions_at_most(2, 4, 1) == 3);
    for (int n = 0; n < 6; ++n) CHECK(partitions_at_most(n, 0, 1) == 1);
    for (int i = 1; i < 10; ++i) CHECK(partitions_at_most(1, i, 1) == 1);
    CHECK(partitions_at_most(2, 6, 3) == 2);
    CHECK(partitions_at_most(2, 5, 3) == 0);
}

}
