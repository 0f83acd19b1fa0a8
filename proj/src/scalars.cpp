#include "qplab/scalars.hpp"

#include <ostream>
#include <stdexcept>

namespace qp {

CycScalar CycScalar::conj() const { return CycScalar(a_ + b_, -b_); }

BigRat CycScalar::norm() const { return a_ * a_ + a_ * b_ + b_ * b_; }

CycScalar CycScalar::inv() const {
    if (is_zero()) throw std::domain_error("CycScalar: division by zero");
    BigRat n = norm();
    CycScalar c = conj();
    c.a_ /= n;
    c.b_ /= n;
    return c;
}

CycScalar& CycScalar::operator+=(const CycScalar& o) {
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

CycScalar& CycScalar::operator-=(const CycScalar& o) {
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

// (a + bw)(c + dw) = ac - bd + (ad + bc + bd) w
CycScalar& CycScalar::operator*=(const CycScalar& o) {
    if (sgn(o.b_) == 0) return *this *= o.a_;
    if (sgn(b_) == 0) {
        BigRat a = a_;
        a_ = a * o.a_;
        b_ = a * o.b_;
        return *this;
    }
    BigRat bd = b_ * o.b_;
    BigRat na = a_ * o.a_ - bd;
    BigRat nb = a_ * o.b_ + b_ * o.a_ + bd;
    a_.swap(na);
    b_.swap(nb);
    return *this;
}

CycScalar& CycScalar::operator*=(const BigRat& r) {
    a_ *= r;
    b_ *= r;
    return *this;
}

std::string CycScalar::str() const {
    if (sgn(b_) == 0) return a_.get_str();
    std::string bs = b_.get_str() + "*w";
    if (sgn(a_) == 0) return bs;
    if (sgn(b_) < 0) return a_.get_str() + bs;
    return a_.get_str() + "+" + bs;
}

namespace {

BigRat parse_rat(const std::string& s) {
    if (s.empty()) throw std::invalid_argument("CycScalar::parse: empty rational");
    std::string t = s;
    if (t[0] == '+') t = t.substr(1);
    if (t == "" || t == "-") t += "1";
    BigRat r;
    if (r.set_str(t, 10) != 0) throw std::invalid_argument("CycScalar::parse: bad rational '" + s + "'");
    r.canonicalize();
    return r;
}

}  // namespace

CycScalar CycScalar::parse(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (ch != ' ') s += ch;
    if (s.empty()) throw std::invalid_argument("CycScalar::parse: empty string");
    bool has_w = s.back() == 'w';
    if (!has_w) return CycScalar(parse_rat(s));
    s.pop_back();
    if (!s.empty() && s.back() == '*') s.pop_back();
    std::size_t split = std::string::npos;
    for (std::size_t i = s.size(); i-- > 1;) {
        if ((s[i] == '+' || s[i] == '-') && s[i - 1] != '/') {
            split = i;
            break;
        }
    }
    if (split == std::string::npos) return CycScalar(BigRat(0), parse_rat(s));
    return CycScalar(parse_rat(s.substr(0, split)), parse_rat(s.substr(split)));
}

std::size_t CycScalar::bit_size() const {
    return mpz_size(a_.get_num_mpz_t()) + mpz_size(a_.get_den_mpz_t()) +
           mpz_size(b_.get_num_mpz_t()) + mpz_size(b_.get_den_mpz_t());
}

std::size_t CycScalar::hash() const {
    auto h1 = std::hash<std::string>{}(str());
    return h1;
}

std::ostream& operator<<(std::ostream& os, const CycScalar& x) { return os << x.str(); }

CycScalar cyc_mul(const CycScalar& x, const CycScalar& y) { return x * y; }

CycScalar cyc_inv(const CycScalar& x) { return x.inv(); }

CycScalar cyc_pow_omega(long p) {
    switch (mod6(p)) {
        case 0: return CycScalar(1);
        case 1: return CycScalar(0, 1);
        case 2: return CycScalar(-1, 1);
        case 3: return CycScalar(-1);
        case 4: return CycScalar(0, -1);
        default: return CycScalar(1, -1);
    }
}

CycScalar cyc_pow(CycScalar x, unsigned long e) {
    CycScalar r(1);
    while (e) {
        if (e & 1) r *= x;
        e >>= 1;
        if (e) x *= x;
    }
    return r;
}

}  // namespace qp
