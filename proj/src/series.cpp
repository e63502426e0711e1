#include "toridouble/series.hpp"

#include <cmath>
#include <limits>

namespace toridouble {

Affine Affine::identity(std::size_t dim) { return {RatMatrix::identity(dim), RatVector(dim, Rational(0))}; }

Affine Affine::constant(const RatVector& a, std::size_t dim) { return {RatMatrix(a.size(), dim), a}; }

Affine Affine::rows(std::size_t r0, std::size_t count) const {
    return {B.block(r0, 0, count, B.cols()), RatVector(a.begin() + static_cast<long>(r0),
                                                        a.begin() + static_cast<long>(r0 + count))};
}

Affine operator+(const Affine& x, const Affine& y) { return {x.B + y.B, x.a + y.a}; }
Affine operator-(const Affine& x, const Affine& y) { return {x.B - y.B, x.a - y.a}; }
Affine operator*(const RatMatrix& m, const Affine& x) { return {m * x.B, m * x.a}; }

QuadPoly QuadPoly::zero(std::size_t dim) { return {RatMatrix(dim, dim), RatVector(dim, Rational(0)), 0}; }

Rational QuadPoly::operator()(const IntVector& m) const {
    RatVector q = to_rational(m);
    return dot(q, quad * q) + dot(lin, q) + c0;
}

void QuadPoly::add_bilinear(const Rational& c, const Affine& x, const RatMatrix& m, const Affine& y) {
    if (c == 0) return;
    // (Bx m + ax)^T M (By m + ay)
    quad = quad + c * (x.B.transpose() * m * y.B);
    RatVector l1 = x.B.transpose() * (m * y.a);
    RatVector l2 = y.B.transpose() * (m.transpose() * x.a);
    lin = lin + c * (l1 + l2);
    c0 += c * dot(x.a, m * y.a);
}

void QuadPoly::add_linear(const Rational& c, const RatVector& v, const Affine& x) {
    if (c == 0) return;
    lin = lin + c * (x.B.transpose() * v);
    c0 += c * dot(v, x.a);
}

void GaussianSeries::add_complex_bilinear(const CRational& c, const Affine& x, const CRatMatrix& m, const Affine& y) {
    RatMatrix mr = c.re * m.re - c.im * m.im;
    RatMatrix mi = c.re * m.im + c.im * m.re;
    re.add_bilinear(1, x, mr, y);
    ph.add_bilinear(1, x, mi, y);
}

void GaussianSeries::add_complex_linear(const CRational& c, const CRatVector& v, const Affine& x) {
    RatVector vr(v.size()), vi(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        CRational w = c * v[i];
        vr[i] = w.re;
        vi[i] = w.im;
    }
    re.add_linear(1, vr, x);
    ph.add_linear(1, vi, x);
}

namespace {

using i128 = __int128;

constexpr long kMaxCoefficient = 1L << 61;

Integer lcm_denominators(const QuadPoly& p) {
    Integer l = p.c0.get_den();
    auto fold = [&](const Rational& q) { mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), q.get_den_mpz_t()); };
    for (const auto& v : p.lin) fold(v);
    for (const auto& v : p.quad.data()) fold(v);
    return l;
}

long to_long(const Integer& z) {
    if (!z.fits_slong_p() || abs(z) >= kMaxCoefficient)
        throw ValidationError("series coefficient exceeds the exact evaluation range");
    return z.get_si();
}

// Polynomial scaled to integer coefficients: value = num(m) / den. Quadratic
// terms are folded onto i <= j.
struct IntPoly {
    int dim = 0;
    long den = 1;
    long c0 = 0;
    std::vector<long> lin;
    std::vector<long> quad;  // upper triangle, row-major

    IntPoly(const QuadPoly& p, bool reduce_mod) {
        dim = static_cast<int>(p.dim());
        Integer d = lcm_denominators(p);
        Integer mod = 2 * d;
        den = to_long(d);
        auto scaled = [&](const Rational& q) {
            Integer z = q.get_num() * (d / q.get_den());
            if (reduce_mod) {
                Integer r;
                mpz_fdiv_r(r.get_mpz_t(), z.get_mpz_t(), mod.get_mpz_t());
                z = r;
            }
            return to_long(z);
        };
        if (reduce_mod) to_long(mod);
        c0 = scaled(p.c0);
        for (int i = 0; i < dim; ++i) lin.push_back(scaled(p.lin[i]));
        for (int i = 0; i < dim; ++i)
            for (int j = i; j < dim; ++j)
                quad.push_back(scaled(i == j ? p.quad(i, i) : p.quad(i, j) + p.quad(j, i)));
    }

    i128 numerator(const int* m) const {
        i128 acc = c0;
        std::size_t q = 0;
        for (int i = 0; i < dim; ++i) {
            acc += static_cast<i128>(lin[i]) * m[i];
            for (int j = i; j < dim; ++j) acc += static_cast<i128>(quad[q++]) * (static_cast<long>(m[i]) * m[j]);
        }
        return acc;
    }

    // numerator reduced into [0, 2·den)
    long residue(const int* m) const {
        const i128 mod = static_cast<i128>(den) * 2;
        i128 acc = c0;
        std::size_t q = 0;
        for (int i = 0; i < dim; ++i) {
            acc = (acc + static_cast<i128>(lin[i]) * m[i]) % mod;
            for (int j = i; j < dim; ++j)
                acc = (acc + static_cast<i128>(quad[q++]) * (static_cast<long>(m[i]) * m[j])) % mod;
        }
        if (acc < 0) acc += mod;
        return static_cast<long>(acc);
    }
};

DD dd_from_i128(i128 x) {
    double hi = static_cast<double>(x);
    i128 rest = x - static_cast<i128>(hi);
    return dd_detail::two_sum(hi, static_cast<double>(rest));
}

struct Compiled {
    IntPoly re;
    IntPoly ph;
};

template <class R>
LogTerm<R> term_at(const Compiled& c, const int* m) {
    i128 num = c.re.numerator(m);
    long res = c.ph.residue(m);
    if constexpr (std::is_same_v<R, double>) {
        return {Num<double>::pi() * (static_cast<double>(num) / static_cast<double>(c.re.den)),
                static_cast<double>(res) / static_cast<double>(c.ph.den)};
    } else {
        return {dd_pi * (dd_from_i128(num) / dd_from_i128(c.re.den)), dd_from_i128(res) / dd_from_i128(c.ph.den)};
    }
}

struct Envelope {
    RatMatrix q;
    double center;
    double log_prefactor;
};

// re(m) = -(m - mu)^T Q (m - mu) + peak
Envelope envelope(const GaussianSeries& s) {
    RatMatrix q = -symmetric_part(s.re.quad);
    if (!is_positive_definite(q)) throw NotPositiveDefinite("series exponent is not a decaying Gaussian");
    RatVector mu = Rational(1, 2) * (inverse(q) * s.re.lin);
    Rational peak = s.re.c0 + dot(mu, q * mu);
    double center = 0;
    for (const auto& v : mu) center = std::max(center, std::fabs(to_double(v)));
    double logc = 3.141592653589793 * to_double(peak);
    // rounding slack on the envelope parameters
    center = center * (1 + 1e-12) + 1e-12;
    logc += 1e-12 * (1 + std::fabs(logc));
    return {q, center, logc};
}

template <class R>
CxDD sum_compiled(const Compiled& c, int dim, int radius, unsigned workers) {
    auto term = [&c](const int* m) { return term_at<R>(c, m); };
    if constexpr (std::is_same_v<R, double>)
        return widen(lattice_sum<double>(dim, radius, term, workers));
    else
        return lattice_sum<DD>(dim, radius, term, workers);
}

SeriesValue run(const GaussianSeries& s, const TruncationCertificate& cert, const NumericPolicy& policy) {
    Compiled c{IntPoly(s.re, false), IntPoly(s.ph, true)};
    const int dim = static_cast<int>(s.dim());
    CxDD v = policy.precision == Precision::binary64 ? sum_compiled<double>(c, dim, cert.radius, policy.workers)
                                                     : sum_compiled<DD>(c, dim, cert.radius, policy.workers);
    return {v, cert};
}

}  // namespace

SeriesValue evaluate(const GaussianSeries& s, const NumericPolicy& policy) { return evaluate(s, policy, policy.tol); }

SeriesValue evaluate(const GaussianSeries& s, const NumericPolicy& policy, double tol) {
    if (s.ph.dim() != s.dim()) throw ShapeMismatch("series phase and modulus have different dimensions");
    Envelope e = envelope(s);
    TruncationCertificate cert = truncation_radius(e.q, 0.0, tol, policy.max_radius, e.center, e.log_prefactor);
    return run(s, cert, policy);
}

SeriesValue evaluate_at_radius(const GaussianSeries& s, int radius, const NumericPolicy& policy) {
    Envelope e = envelope(s);
    return run(s, tail_at_radius(e.q, radius, 0.0, e.center, e.log_prefactor), policy);
}

CxDD exp_pi(const CRational& w, Precision p) {
    // phase reduced mod 2 exactly
    Rational ph = w.im - 2 * Rational(floor_q(w.im / 2));
    if (p == Precision::binary64) {
        CxD z = exp_cispi<double>(Num<double>::pi() * to_double(w.re), to_double(ph));
        return widen(z);
    }
    return exp_cispi<DD>(dd_pi * dd_from_rational(w.re), dd_from_rational(ph));
}

DD sqrt_rational(const Rational& q, Precision p) {
    if (p == Precision::binary64) return DD(std::sqrt(to_double(q)));
    return dd_sqrt(dd_from_rational(q));
}

double magnitude(const CxDD& z) { return cabs(z); }

}  // namespace toridouble
