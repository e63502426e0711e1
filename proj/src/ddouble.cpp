#include "toridouble/ddouble.hpp"

#include <cstdio>
#include <limits>

#include "kernels/kernel_math.hpp"

namespace toridouble {

double Num<double>::exp(double x) { return kernels::detail::exp_ref(x); }

void Num<double>::sincospi(double x, double& c, double& s) { kernels::detail::sincospi_ref(x, c, s); }

DD dd_round(const DD& a) {
    double h = std::round(a.hi);
    if (h == a.hi) {
        double l = std::round(a.lo);
        return dd_detail::quick_two_sum(h, l);
    }
    if (std::fabs(h - a.hi) == 0.5) {
        if (h - a.hi == 0.5 && a.lo < 0) h -= 1.0;
        if (a.hi - h == 0.5 && a.lo > 0) h += 1.0;
    }
    return {h, 0.0};
}

DD dd_floor(const DD& a) {
    double h = std::floor(a.hi);
    if (h == a.hi) return dd_detail::quick_two_sum(h, std::floor(a.lo));
    return {h, 0.0};
}

DD dd_sqrt(const DD& a) {
    if (a.hi <= 0.0) return DD(0.0);
    double q = std::sqrt(a.hi);
    DD r = a - dd_detail::two_prod(q, q);
    return dd_detail::quick_two_sum(q, r.hi / (2.0 * q));
}

namespace {

const DD kLn2{6.931471805599452862e-01, 2.319046813846299558e-17};
constexpr double kLn2Tail = 5.707708438416212066e-34;

DD inv_factorial(int k) {
    double f = 1.0;
    for (int i = 2; i <= k; ++i) f *= i;  // exact for k <= 22
    return DD(1.0) / DD(f);
}

}  // namespace

DD dd_exp(const DD& a) {
    if (a.hi < -745.0) return DD(0.0);
    if (a.hi > 709.0) return DD(std::numeric_limits<double>::infinity());
    double k = std::nearbyint(a.hi / kLn2.hi);
    // k·ln2 carried to three words
    DD r = a - dd_detail::two_prod(kLn2.hi, k);
    r = r - dd_detail::two_prod(kLn2.lo, k);
    r = r - DD(kLn2Tail * k);
    r = dd_ldexp(r, -10);
    // Taylor series of exp(r) - 1, then square up
    constexpr int kTerms = 11;
    DD p = inv_factorial(kTerms);
    for (int i = kTerms - 1; i >= 1; --i) p = p * r + inv_factorial(i);
    DD em1 = p * r;
    for (int i = 0; i < 10; ++i) em1 = em1 * (em1 + DD(2.0));  // (1+x)^2 - 1
    DD result = em1 + DD(1.0);
    return dd_ldexp(result, static_cast<int>(k));
}

void dd_sincospi(const DD& x, DD& c, DD& s) {
    DD n = dd_round(x + x);
    DD f = x - dd_ldexp(n, -1);
    DD t = dd_pi * f;
    DD t2 = t * t;
    constexpr int kSinTerms = 17;  // through t^33
    DD ps = inv_factorial(2 * kSinTerms - 1);
    if ((kSinTerms - 1) % 2) ps = -ps;
    for (int j = kSinTerms - 2; j >= 0; --j) {
        DD coef = inv_factorial(2 * j + 1);
        ps = ps * t2 + ((j % 2) ? -coef : coef);
    }
    DD pc = inv_factorial(2 * kSinTerms);
    if (kSinTerms % 2) pc = -pc;
    for (int j = kSinTerms - 1; j >= 0; --j) {
        DD coef = inv_factorial(2 * j);
        pc = pc * t2 + ((j % 2) ? -coef : coef);
    }
    DD sv = t * ps;
    DD cv = pc;
    double m = std::fmod(n.hi, 4.0) + std::fmod(n.lo, 4.0);
    int q = ((static_cast<int>(m) % 4) + 4) % 4;
    switch (q) {
        case 0: c = cv; s = sv; break;
        case 1: c = -sv; s = cv; break;
        case 2: c = -cv; s = -sv; break;
        default: c = sv; s = -cv; break;
    }
}

DD dd_from_rational(const Rational& q) {
    double hi = to_double(q);
    Rational rest = q - Rational(hi);
    return {hi, to_double(rest)};
}

std::string dd_to_string(const DD& a) {
    mpf_class f(Rational(Rational(a.hi) + Rational(a.lo)), 256);
    char buf[96];
    gmp_snprintf(buf, sizeof buf, "%.32Fe", f.get_mpf_t());
    return buf;
}

}  // namespace toridouble
