#pragma once

#include "qplab/echelon.hpp"
#include "qplab/level3.hpp"
#include "qplab/qseries.hpp"

#include <map>
#include <string>
#include <utility>
#include <vector>

namespace qp {

// alpha(i_1)...alpha(i_r) X1(j_1)...X1(j_s) X2(k_1)...X2(k_t); all indices negative.
struct QPMonomial {
    std::vector<int> heis;
    std::vector<int> c1;
    std::vector<int> c2;

    std::pair<int, int> color_type() const { return {static_cast<int>(c1.size()), static_cast<int>(c2.size())}; }
    int charge() const { return static_cast<int>(c1.size() + 2 * c2.size()); }
    // Energy of the vector: minus the sum of all indices.
    int degree() const;
    std::vector<int> degree_type() const;  // (j_1..j_s; k_1..k_t)
    std::string str() const;
    friend bool operator==(const QPMonomial& a, const QPMonomial& b) {
        return a.heis == b.heis && a.c1 == b.c1 && a.c2 == b.c2;
    }
};

// Individually testable pieces of the basis conditions.
bool ordering_and_residues_ok(const QPMonomial& m);
bool difference_conditions_ok(const QPMonomial& m);
bool initial_conditions_ok(const QPMonomial& m);
bool is_valid(const QPMonomial& m);

std::vector<QPMonomial> enumerate_basis_monomials(int n);
// Valid monomials without Heisenberg factors.
std::vector<QPMonomial> enumerate_quasi_monomials(int n);
// Sorted alpha and X1 monomials of energy n with at most max_x1 charge-one factors (-1: any).
std::vector<QPMonomial> enumerate_pbw_monomials(int n, int max_x1 = -1);

// Reverse-lexicographic comparison: the last differing entry decides; when one sequence
// is a suffix of the other, the shorter one is smaller.
int compare_reverse_lex(const std::vector<int>& a, const std::vector<int>& b);
// -1, 0, 1 for a < b, a = b, a > b in the order where greater charge is smaller.
int compare_order(const QPMonomial& a, const QPMonomial& b);
// Same order with the charge criterion flipped (smaller charge first).
int compare_order_intuitive(const QPMonomial& a, const QPMonomial& b);

// Applies monomials to the vacuum, sharing right factors between calls.
class MonomialApplier {
public:
    explicit MonomialApplier(const Level3& l3) : l3_(l3) {}
    TensorVector apply(const QPMonomial& m);
    std::size_t cached() const { return cache_.size(); }

private:
    using Op = std::pair<int, int>;  // (kind: 0 heis, 1 X1, 2 X2; index)
    const Level3& l3_;
    std::map<std::vector<Op>, TensorVector> cache_;
};

TensorVector apply_monomial(const Level3& l3, const QPMonomial& m);

struct RankAudit {
    int degree = 0;
    std::size_t restricted_count = 0;
    BigInt product_coeff = 0;
    std::size_t restricted_rank = 0;
    std::size_t unrestricted_rank = 0;
    std::size_t unrestricted_family = 0;
    std::size_t ambient_dimension = 0;
    double seconds = 0;
    bool pass() const {
        return restricted_count == restricted_rank && restricted_rank == unrestricted_rank &&
               BigInt(static_cast<unsigned long>(restricted_count)) == product_coeff;
    }
};

RankAudit rank_audit(const Level3& l3, int n, Budget budget = {});

// (degree, (n1, n2)) -> number of valid monomials without Heisenberg factors.
std::map<std::pair<int, int>, std::vector<BigInt>> bivariate_census(int nmax);

}  // namespace qp
