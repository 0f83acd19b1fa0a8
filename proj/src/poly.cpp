#include "qplab/poly.hpp"

#include <sstream>
#include <stdexcept>

namespace qp {

void CycPoly::trim() {
    while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

void CycPoly::set_coeff(int k, const CycScalar& v) {
    if (k < 0) throw std::out_of_range("CycPoly::set_coeff");
    if (k >= static_cast<int>(c_.size())) c_.resize(k + 1);
    c_[k] = v;
    trim();
}

CycScalar CycPoly::eval(const CycScalar& x) const {
    CycScalar r;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) {
        r *= x;
        r += *it;
    }
    return r;
}

CycPoly CycPoly::theta() const {
    std::vector<CycScalar> d(c_.size());
    for (std::size_t k = 0; k < c_.size(); ++k) d[k] = c_[k] * BigRat(static_cast<long>(k));
    return CycPoly(std::move(d));
}

CycPoly CycPoly::pow(unsigned e) const {
    CycPoly r = constant(1), b = *this;
    while (e) {
        if (e & 1) r = r * b;
        e >>= 1;
        if (e) b = b * b;
    }
    return r;
}

bool CycPoly::divides_into(const CycPoly& num, CycPoly& q) const {
    if (is_zero()) throw std::domain_error("CycPoly: division by zero polynomial");
    if (num.is_zero()) {
        q = CycPoly();
        return true;
    }
    int dn = num.degree(), dd = degree();
    if (dn < dd) return false;
    std::vector<CycScalar> rem = num.c_;
    std::vector<CycScalar> quo(dn - dd + 1);
    CycScalar lead_inv = c_.back().inv();
    for (int k = dn - dd; k >= 0; --k) {
        CycScalar f = rem[k + dd] * lead_inv;
        if (f.is_zero()) continue;
        quo[k] = f;
        for (int i = 0; i <= dd; ++i) rem[k + i] -= f * c_[i];
    }
    for (int i = 0; i < dd; ++i)
        if (!rem[i].is_zero()) return false;
    q = CycPoly(std::move(quo));
    return true;
}

int CycPoly::order_at(const CycScalar& r) const {
    if (is_zero()) throw std::domain_error("CycPoly::order_at on zero polynomial");
    CycPoly f = one_minus(r), cur = *this, q;
    int k = 0;
    while (f.divides_into(cur, q)) {
        cur = q;
        ++k;
    }
    return k;
}

CycPoly& CycPoly::operator+=(const CycPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
}

CycPoly& CycPoly::operator-=(const CycPoly& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size());
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
}

CycPoly operator*(const CycPoly& a, const CycPoly& b) {
    if (a.is_zero() || b.is_zero()) return CycPoly();
    std::vector<CycScalar> r(a.c_.size() + b.c_.size() - 1);
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
        if (a.c_[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return CycPoly(std::move(r));
}

CycPoly operator*(CycPoly a, const CycScalar& s) {
    for (auto& c : a.c_) c *= s;
    a.trim();
    return a;
}

std::string CycPoly::str() const {
    if (c_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (std::size_t k = 0; k < c_.size(); ++k) {
        if (c_[k].is_zero()) continue;
        if (!first) os << " + ";
        first = false;
        os << "(" << c_[k].str() << ")";
        if (k > 0) os << "*x^" << k;
    }
    return os.str();
}

RatFunc RatFunc::theta() const {
    // (N/D)' = (N'D - ND') / D^2, with ' = x d/dx
    return {num.theta() * den - num * den.theta(), den * den};
}

std::vector<CycScalar> RatFunc::series(int order) const {
    if (den.coeff(0).is_zero()) throw std::domain_error("RatFunc::series: denominator vanishes at 0");
    std::vector<CycScalar> s(order + 1);
    CycScalar d0inv = den.coeff(0).inv();
    for (int k = 0; k <= order; ++k) {
        CycScalar acc = num.coeff(k);
        for (int i = 1; i <= k && i <= den.degree(); ++i) acc -= den.coeff(i) * s[k - i];
        s[k] = acc * d0inv;
    }
    return s;
}

MultiPoly MultiPoly::one(int nvars) {
    MultiPoly p(nvars);
    p.add(Exponent(nvars, 0), CycScalar(1));
    return p;
}

MultiPoly MultiPoly::ratio(int nvars, int i, int j, const CycPoly& f) {
    MultiPoly p(nvars);
    for (int k = 0; k <= f.degree(); ++k) {
        Exponent e(nvars, 0);
        e[i] += k;
        e[j] -= k;
        p.add(e, f.coeff(k));
    }
    return p;
}

void MultiPoly::add(const Exponent& e, const CycScalar& c) {
    if (c.is_zero()) return;
    auto it = t_.find(e);
    if (it == t_.end()) {
        t_.emplace(e, c);
        return;
    }
    it->second += c;
    if (it->second.is_zero()) t_.erase(it);
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("MultiPoly: variable count mismatch");
    MultiPoly r(a.n_);
    for (const auto& [ea, ca] : a.t_)
        for (const auto& [eb, cb] : b.t_) {
            MultiPoly::Exponent e(a.n_);
            for (int k = 0; k < a.n_; ++k) e[k] = ea[k] + eb[k];
            r.add(e, ca * cb);
        }
    return r;
}

CycScalar MultiPoly::eval_all_ones() const {
    CycScalar s;
    for (const auto& [e, c] : t_) s += c;
    return s;
}

}  // namespace qp
