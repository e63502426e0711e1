#pragma once

// Double-double arithmetic (unevaluated sum hi + lo, ~106 bits) and a small
// complex wrapper templated on the real type.

#include <cmath>
#include <complex>
#include <string>

#include "toridouble/matrix.hpp"

namespace toridouble {

struct DD {
    double hi = 0.0;
    double lo = 0.0;

    constexpr DD() = default;
    constexpr DD(double h) : hi(h), lo(0.0) {}
    constexpr DD(double h, double l) : hi(h), lo(l) {}

    explicit operator double() const { return hi + lo; }
};

namespace dd_detail {

inline DD two_sum(double a, double b) {
    double s = a + b;
    double bb = s - a;
    double err = (a - (s - bb)) + (b - bb);
    return {s, err};
}

inline DD quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline void split(double a, double& hi, double& lo) {
    constexpr double splitter = 134217729.0;  // 2^27 + 1
    double t = splitter * a;
    hi = t - (t - a);
    lo = a - hi;
}

// Dekker product; exact when no overflow occurs
inline DD two_prod(double a, double b) {
    double p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    double err = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
    return {p, err};
}

}  // namespace dd_detail

inline DD operator+(const DD& a, const DD& b) {
    DD s = dd_detail::two_sum(a.hi, b.hi);
    DD t = dd_detail::two_sum(a.lo, b.lo);
    s.lo += t.hi;
    s = dd_detail::quick_two_sum(s.hi, s.lo);
    s.lo += t.lo;
    return dd_detail::quick_two_sum(s.hi, s.lo);
}
inline DD operator-(const DD& a) { return {-a.hi, -a.lo}; }
inline DD operator-(const DD& a, const DD& b) { return a + (-b); }
inline DD operator*(const DD& a, const DD& b) {
    DD p = dd_detail::two_prod(a.hi, b.hi);
    p.lo += a.hi * b.lo + a.lo * b.hi;
    return dd_detail::quick_two_sum(p.hi, p.lo);
}
inline DD operator/(const DD& a, const DD& b) {
    double q1 = a.hi / b.hi;
    DD r = a - b * DD(q1);
    double q2 = r.hi / b.hi;
    r = r - b * DD(q2);
    double q3 = r.hi / b.hi;
    DD q = dd_detail::quick_two_sum(q1, q2);
    return q + DD(q3);
}
inline DD& operator+=(DD& a, const DD& b) { return a = a + b; }
inline DD& operator-=(DD& a, const DD& b) { return a = a - b; }
inline DD& operator*=(DD& a, const DD& b) { return a = a * b; }
inline bool operator<(const DD& a, const DD& b) { return a.hi < b.hi || (a.hi == b.hi && a.lo < b.lo); }
inline bool operator>(const DD& a, const DD& b) { return b < a; }
inline bool operator==(const DD& a, const DD& b) { return a.hi == b.hi && a.lo == b.lo; }

inline DD dd_abs(const DD& a) { return a.hi < 0 ? -a : a; }
inline DD dd_ldexp(const DD& a, int e) { return {std::ldexp(a.hi, e), std::ldexp(a.lo, e)}; }
// nearest integer (ties away from zero on hi)
DD dd_round(const DD& a);
DD dd_floor(const DD& a);
DD dd_sqrt(const DD& a);
DD dd_exp(const DD& a);
// cos(pi·x), sin(pi·x)
void dd_sincospi(const DD& x, DD& c, DD& s);
DD dd_from_rational(const Rational& q);
std::string dd_to_string(const DD& a);

inline const DD dd_pi{3.141592653589793116, 1.2246467991473532072e-16};

// Uniform numeric surface over double and DD.
template <class R>
struct Num;

template <>
struct Num<double> {
    static double pi() { return 3.141592653589793116; }
    static double from(const Rational& q) { return to_double(q); }
    static double from_double(double x) { return x; }
    static double to_d(double x) { return x; }
    static double sqrt(double x) { return std::sqrt(x); }
    static double exp(double x);
    static void sincospi(double x, double& c, double& s);
    static constexpr double epsilon = 1.1102230246251565e-16;
};

template <>
struct Num<DD> {
    static DD pi() { return dd_pi; }
    static DD from(const Rational& q) { return dd_from_rational(q); }
    static DD from_double(double x) { return DD(x); }
    static double to_d(const DD& x) { return x.hi + x.lo; }
    static DD sqrt(const DD& x) { return dd_sqrt(x); }
    static DD exp(const DD& x) { return dd_exp(x); }
    static void sincospi(const DD& x, DD& c, DD& s) { dd_sincospi(x, c, s); }
    static constexpr double epsilon = 6.1629758220391547e-33;
};

template <class R>
struct Cx {
    R re{};
    R im{};

    Cx() = default;
    Cx(R r, R i = R(0.0)) : re(r), im(i) {}

    friend Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
    friend Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend Cx operator*(const R& s, const Cx& a) { return {s * a.re, s * a.im}; }
    friend Cx operator/(const Cx& a, const Cx& b) {
        R den = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
    }
    Cx& operator+=(const Cx& b) { return *this = *this + b; }
    Cx conj() const { return {re, -im}; }
};

using CxD = Cx<double>;
using CxDD = Cx<DD>;

template <class R>
double cabs(const Cx<R>& z) {
    double re = Num<R>::to_d(z.re), im = Num<R>::to_d(z.im);
    return std::hypot(re, im);
}

// |a - b| with the difference formed in the working precision
template <class R>
double cdiff(const Cx<R>& a, const Cx<R>& b) {
    return cabs(a - b);
}

// exp(re) · (cos(pi·ph) + i sin(pi·ph))
template <class R>
Cx<R> exp_cispi(const R& re, const R& ph) {
    R m = Num<R>::exp(re);
    R c, s;
    Num<R>::sincospi(ph, c, s);
    return {m * c, m * s};
}

inline CxDD widen(const CxD& z) { return {DD(z.re), DD(z.im)}; }
inline CxDD widen(const CxDD& z) { return z; }
inline std::complex<double> to_std(const CxD& z) { return {z.re, z.im}; }
inline std::complex<double> to_std(const CxDD& z) { return {z.re.hi + z.re.lo, z.im.hi + z.im.lo}; }

}  // namespace toridouble
