#include "qplab/basis.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

using namespace qp;

namespace {

// All partitions of n into parts accepted by `ok`, as ascending lists of negative indices.
void negative_partitions(int n, int max_part, const std::function<bool(int)>& ok, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (n == 0) {
        out.push_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        if (!ok(p)) continue;
        cur.push_back(-p);
        negative_partitions(n - p, p, ok, cur, out);
        cur.pop_back();
    }
}

std::vector<std::vector<int>> parts_of(int n, const std::function<bool(int)>& ok) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    negative_partitions(n, n, ok, cur, out);
    return out;
}

// The basis conditions written out from their statement.
bool admissible(const QPMonomial& m) {
    int t = static_cast<int>(m.c2.size()), s = static_cast<int>(m.c1.size());
    for (int i : m.heis)
        if ((-i) % 6 != 1 && (-i) % 6 != 5) return false;
    for (int k : m.c2)
        if (k % 3 != 0) return false;
    for (int p = 0; p + 1 < s; ++p)
        if (m.c1[p] > m.c1[p + 1] - 4) return false;
    for (int p = 0; p + 1 < t; ++p)
        if (m.c2[p] > m.c2[p + 1] - 12) return false;
    if (s > 0 && m.c1[s - 1] > -2 - 6 * t) return false;
    if (t > 0 && m.c2[t - 1] > -6) return false;
    return true;
}

std::set<std::string> brute_force(int n) {
    std::set<std::string> out;
    auto any = [](int) { return true; };
    auto mode = [](int p) { return p % 6 == 1 || p % 6 == 5; };
    for (int a = 0; a <= n; ++a)
        for (int b = 0; a + b <= n; ++b) {
            auto hs = parts_of(a, mode), c1s = parts_of(b, any), c2s = parts_of(n - a - b, any);
            for (const auto& h : hs)
                for (const auto& c1 : c1s)
                    for (const auto& c2 : c2s) {
                        QPMonomial m{h, c1, c2};
                        if (admissible(m)) out.insert(m.str());
                    }
        }
    return out;
}

std::set<std::string> names(const std::vector<QPMonomial>& ms) {
    std::set<std::string> out;
    for (const auto& m : ms) out.insert(m.str());
    return out;
}

}  // namespace

TEST_SUITE("basis") {

TEST_CASE("first counts") {
    std::vector<std::size_t> want = {1, 1, 2, 3, 4, 6, 8};
    for (int n = 0; n <= 6; ++n) CHECK(enumerate_basis_monomials(n).size() == want[n]);
}

TEST_CASE("degree five by hand") {
    std::set<std::string> want = {"a(-1) a(-1) a(-1) a(-1) a(-1)", "a(-5)", "a(-1) a(-1) a(-1) X1(-2)",
                                  "a(-1) a(-1) X1(-3)", "a(-1) X1(-4)", "X1(-5)"};
    CHECK(names(enumerate_basis_monomials(5)) == want);
    CHECK(names(enumerate_basis_monomials(6)).count("X2(-6)") == 1);
}

TEST_CASE("enumeration agrees with filtering all monomials") {
    for (int n = 0; n <= 13; ++n) {
        auto got = enumerate_basis_monomials(n);
        CHECK(names(got).size() == got.size());
        CHECK(names(got) == brute_force(n));
        for (const auto& m : got) {
            CHECK(is_valid(m));
            CHECK(m.degree() == n);
        }
    }
}

TEST_CASE("counts equal the product side up to 30") {
    QSeries p = product_side(30);
    for (int n = 0; n <= 30; ++n) CHECK(BigInt(static_cast<unsigned long>(enumerate_basis_monomials(n).size())) == p[n]);
}

TEST_CASE("condition pieces") {
    CHECK(is_valid({{}, {-7, -3}, {}}));
    CHECK_FALSE(difference_conditions_ok({{}, {-6, -3}, {}}));
    CHECK(difference_conditions_ok({{}, {}, {-18, -6}}));
    CHECK_FALSE(difference_conditions_ok({{}, {}, {-15, -6}}));
    CHECK_FALSE(initial_conditions_ok({{}, {-7}, {-6}}));
    CHECK(initial_conditions_ok({{}, {-8}, {-6}}));
    CHECK_FALSE(initial_conditions_ok({{}, {}, {-3}}));
    CHECK_FALSE(ordering_and_residues_ok({{-3}, {}, {}}));
    CHECK_FALSE(ordering_and_residues_ok({{}, {-2, -5}, {}}));
    CHECK_FALSE(ordering_and_residues_ok({{}, {}, {-7}}));
}

TEST_CASE("monomial accessors") {
    QPMonomial m{{-5, -1}, {-8}, {-18, -6}};
    CHECK(m.color_type() == std::pair{1, 2});
    CHECK(m.charge() == 5);
    CHECK(m.degree() == 38);
    CHECK(m.degree_type() == std::vector<int>{-8, -18, -6});
    CHECK(m.str() == "a(-5) a(-1) X1(-8) X2(-18) X2(-6)");
    CHECK(QPMonomial{}.str() == "1");
}

TEST_CASE("reverse lexicographic comparison") {
    // the last entry decides first
    CHECK(compare_reverse_lex({-5, -2}, {-4, -3}) > 0);
    CHECK(compare_reverse_lex({-4, -3}, {-5, -2}) < 0);
    CHECK(compare_reverse_lex({-6, -3}, {-5, -3}) < 0);
    CHECK(compare_reverse_lex({-3}, {-5, -3}) < 0);
    CHECK(compare_reverse_lex({-5, -3}, {-3}) > 0);
    CHECK(compare_reverse_lex({}, {}) == 0);
    CHECK(compare_reverse_lex({-1, -2}, {-1, -2}) == 0);
}

TEST_CASE("monomial order is a total order with greater charge smaller") {
    std::vector<QPMonomial> all;
    for (int n = 0; n <= 12; ++n)
        for (const auto& m : enumerate_basis_monomials(n)) all.push_back(m);
    std::mt19937 rng(2);
    std::uniform_int_distribution<std::size_t> pick(0, all.size() - 1);
    for (int t = 0; t < 3000; ++t) {
        const auto &a = all[pick(rng)], &b = all[pick(rng)], &c = all[pick(rng)];
        CHECK(compare_order(a, b) == -compare_order(b, a));
        CHECK((compare_order(a, b) == 0) == (a == b));
        if (compare_order(a, b) <= 0 && compare_order(b, c) <= 0) CHECK(compare_order(a, c) <= 0);
        if (a.charge() > b.charge()) {
            CHECK(compare_order(a, b) < 0);
            CHECK(compare_order_intuitive(a, b) > 0);
        }
    }
}

TEST_CASE("PBW family sizes") {
    // no X1 factors: only Heisenberg monomials, counted by F
    QSeries f = pochhammer_inv({1, 5}, 6, 12);
    for (int n = 0; n <= 12; ++n) CHECK(BigInt(static_cast<unsigned long>(enumerate_pbw_monomials(n, 0).size())) == f[n]);
    for (const auto& m : enumerate_pbw_monomials(9, 2)) CHECK(m.c1.size() <= 2);
}

TEST_CASE("cached application agrees with direct application") {
    TwistedLattice lat;
    FockEngine fock(lat);
    Level3 l3(fock);
    MonomialApplier ap(l3);
    for (int n = 0; n <= 9; ++n)
        for (const auto& m : enumerate_basis_monomials(n)) {
            TensorVector v = ap.apply(m);
            CHECK(v == apply_monomial(l3, m));
            CHECK(homogeneous_degree(v) == n);
        }
}

TEST_CASE("rank audits to degree 10") {
    TwistedLattice lat;
    FockEngine fock(lat);
    Level3 l3(fock);
    for (int n = 0; n <= 10; ++n) {
        RankAudit a = rank_audit(l3, n);
        CHECK(a.pass());
        CHECK(a.restricted_rank <= a.ambient_dimension);
    }
}

TEST_CASE("ranks do not see a rescaled c_alpha") {
    Perturbation p;
    p.c_alpha_shift = CycScalar(1);
    TwistedLattice lat(p);
    FockEngine fock(lat);
    Level3 l3(fock);
    for (int n = 0; n <= 6; ++n) CHECK(rank_audit(l3, n).pass());
}

TEST_CASE("bivariate census against the quasi-particle terms") {
    SumSide s = sum_side(24);
    auto census = bivariate_census(24);
    for (int n1 = 0; min_energy(n1, 0) <= 24; ++n1)
        for (int n2 = 0; min_energy(n1, n2) <= 24; ++n2) {
            auto it = census.find({n1, n2});
            for (int n = 0; n <= 24; ++n) {
                BigInt got = it == census.end() ? BigInt(0) : it->second.at(n);
                CHECK(got == s.table.quasi_at(n, n1, n2));
            }
        }
}

}
