#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <string>

namespace qp {

using BigInt = mpz_class;
using BigRat = mpq_class;

// p/q in lowest terms; GMP arithmetic assumes canonical operands.
inline BigRat ratio(long p, long q) {
    BigRat r(p, q);
    r.canonicalize();
    return r;
}

// a + b*w with w = exp(2 pi i / 6), reduced by w^2 = w - 1.
class CycScalar {
public:
    CycScalar() = default;
    CycScalar(long a) : a_(a) {}
    CycScalar(BigRat a) : a_(std::move(a)) { a_.canonicalize(); }
    CycScalar(BigRat a, BigRat b) : a_(std::move(a)), b_(std::move(b)) {
        a_.canonicalize();
        b_.canonicalize();
    }

    static CycScalar omega() { return CycScalar(0, 1); }

    const BigRat& a() const { return a_; }
    const BigRat& b() const { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    bool is_one() const { return sgn(b_) == 0 && a_ == 1; }

    CycScalar conj() const;  // w -> w^5 = 1 - w
    BigRat norm() const;     // a^2 + ab + b^2
    CycScalar inv() const;   // throws std::domain_error on zero

    CycScalar operator-() const { return CycScalar(-a_, -b_); }
    CycScalar& operator+=(const CycScalar& o);
    CycScalar& operator-=(const CycScalar& o);
    CycScalar& operator*=(const CycScalar& o);
    CycScalar& operator*=(const BigRat& r);
    CycScalar& operator/=(const CycScalar& o) { return *this *= o.inv(); }

    friend CycScalar operator+(CycScalar x, const CycScalar& y) { return x += y; }
    friend CycScalar operator-(CycScalar x, const CycScalar& y) { return x -= y; }
    friend CycScalar operator*(CycScalar x, const CycScalar& y) { return x *= y; }
    friend CycScalar operator*(CycScalar x, const BigRat& r) { return x *= r; }
    friend CycScalar operator/(CycScalar x, const CycScalar& y) { return x /= y; }
    friend bool operator==(const CycScalar& x, const CycScalar& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const CycScalar& x, const CycScalar& y) { return !(x == y); }

    // Canonical text "p/q+r/s*w"; b = 0 prints just the rational part.
    std::string str() const;
    static CycScalar parse(const std::string& s);

    // Total limb count of the four integers; the pivot heuristic uses it.
    std::size_t bit_size() const;

    std::size_t hash() const;

private:
    BigRat a_{0};
    BigRat b_{0};
};

std::ostream& operator<<(std::ostream& os, const CycScalar& x);

CycScalar cyc_mul(const CycScalar& x, const CycScalar& y);
CycScalar cyc_inv(const CycScalar& x);
// w^p for any integer p.
CycScalar cyc_pow_omega(long p);
CycScalar cyc_pow(CycScalar x, unsigned long e);

inline long mod6(long p) { long r = p % 6; return r < 0 ? r + 6 : r; }

}  // namespace qp
