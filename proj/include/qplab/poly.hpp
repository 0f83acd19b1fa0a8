#pragma once

#include "qplab/scalars.hpp"

#include <map>
#include <string>
#include <vector>

namespace qp {

// Dense univariate polynomial over Q(w), coefficients low to high.
class CycPoly {
public:
    CycPoly() = default;
    explicit CycPoly(std::vector<CycScalar> c) : c_(std::move(c)) { trim(); }
    static CycPoly constant(const CycScalar& a) { return CycPoly({a}); }
    // 1 - r x
    static CycPoly one_minus(const CycScalar& r) { return CycPoly({CycScalar(1), -r}); }

    int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
    bool is_zero() const { return c_.empty(); }
    const std::vector<CycScalar>& coeffs() const { return c_; }
    CycScalar coeff(int k) const { return k >= 0 && k < static_cast<int>(c_.size()) ? c_[k] : CycScalar(); }
    void set_coeff(int k, const CycScalar& v);

    CycScalar eval(const CycScalar& x) const;
    CycPoly theta() const;  // x d/dx
    CycPoly pow(unsigned e) const;
    // Exact division; returns false (and leaves q untouched) when the remainder is nonzero.
    bool divides_into(const CycPoly& num, CycPoly& q) const;
    // Multiplicity of (1 - r x) as a factor.
    int order_at(const CycScalar& r) const;

    CycPoly& operator+=(const CycPoly& o);
    CycPoly& operator-=(const CycPoly& o);
    friend CycPoly operator+(CycPoly a, const CycPoly& b) { return a += b; }
    friend CycPoly operator-(CycPoly a, const CycPoly& b) { return a -= b; }
    friend CycPoly operator*(const CycPoly& a, const CycPoly& b);
    friend CycPoly operator*(CycPoly a, const CycScalar& s);
    friend bool operator==(const CycPoly& a, const CycPoly& b) { return a.c_ == b.c_; }

    std::string str() const;

private:
    void trim();
    std::vector<CycScalar> c_;
};

// num/den with den != 0; used for exchange factors and their theta-derivatives.
struct RatFunc {
    CycPoly num = CycPoly::constant(1);
    CycPoly den = CycPoly::constant(1);

    RatFunc theta() const;
    friend RatFunc operator*(const RatFunc& a, const RatFunc& b) { return {a.num * b.num, a.den * b.den}; }
    // True when den divides num; out receives the quotient.
    bool as_polynomial(CycPoly& out) const { return den.divides_into(num, out); }
    // Power series expansion up to x^order (requires den(0) != 0).
    std::vector<CycScalar> series(int order) const;
};

// Sparse Laurent polynomial in r variables.
class MultiPoly {
public:
    using Exponent = std::vector<int>;
    explicit MultiPoly(int nvars = 0) : n_(nvars) {}
    static MultiPoly one(int nvars);
    // f(z_i / z_j) for univariate f.
    static MultiPoly ratio(int nvars, int i, int j, const CycPoly& f);

    int nvars() const { return n_; }
    const std::map<Exponent, CycScalar>& terms() const { return t_; }
    void add(const Exponent& e, const CycScalar& c);
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    CycScalar eval_all_ones() const;

private:
    int n_;
    std::map<Exponent, CycScalar> t_;
};

}  // namespace qp
