#pragma once

// Lattice series with quadratic exponents:
//   sum_{m in Z^dim} exp(pi·re(m) + i·pi·ph(m))
// where re and ph are quadratic polynomials with rational coefficients. The
// phase is reduced mod 2 exactly before it reaches floating point.

#include "toridouble/lattice_sum.hpp"
#include "toridouble/matrix.hpp"

namespace toridouble {

// x = B·m + a
struct Affine {
    RatMatrix B;
    RatVector a;

    static Affine identity(std::size_t dim);
    static Affine constant(const RatVector& a, std::size_t dim);
    // rows [r0, r0 + count) of x
    Affine rows(std::size_t r0, std::size_t count) const;
    std::size_t out_dim() const { return B.rows(); }
};

Affine operator+(const Affine& x, const Affine& y);
Affine operator-(const Affine& x, const Affine& y);
Affine operator*(const RatMatrix& m, const Affine& x);

// value = m^T quad m + lin·m + c0
struct QuadPoly {
    RatMatrix quad;
    RatVector lin;
    Rational c0 = 0;

    static QuadPoly zero(std::size_t dim);
    std::size_t dim() const { return lin.size(); }
    Rational operator()(const IntVector& m) const;

    void add_constant(const Rational& c) { c0 += c; }
    // c · (x^T M y)
    void add_bilinear(const Rational& c, const Affine& x, const RatMatrix& m, const Affine& y);
    // c · (v^T x)
    void add_linear(const Rational& c, const RatVector& v, const Affine& x);
};

struct GaussianSeries {
    QuadPoly re;  // log-modulus over pi
    QuadPoly ph;  // phase in half-turns

    static GaussianSeries zero(std::size_t dim) { return {QuadPoly::zero(dim), QuadPoly::zero(dim)}; }
    std::size_t dim() const { return re.dim(); }
    // c · x^T M y with M complex
    void add_complex_bilinear(const CRational& c, const Affine& x, const CRatMatrix& m, const Affine& y);
    // c · v^T x with v complex
    void add_complex_linear(const CRational& c, const CRatVector& v, const Affine& x);
    void add_complex_constant(const CRational& c) {
        re.c0 += c.re;
        ph.c0 += c.im;
    }
};

struct SeriesValue {
    CxDD value;
    TruncationCertificate cert;
};

// Certified to absolute error policy.tol (plus rounding). Throws
// NotPositiveDefinite or TruncationBudgetExceeded.
SeriesValue evaluate(const GaussianSeries& s, const NumericPolicy& policy);
SeriesValue evaluate(const GaussianSeries& s, const NumericPolicy& policy, double tol);
// Sum over the box of the given radius; the certificate reports the tail bound there.
SeriesValue evaluate_at_radius(const GaussianSeries& s, int radius, const NumericPolicy& policy);

// exp(pi·(re + i·ph)) in the policy's precision
CxDD exp_pi(const CRational& w, Precision p);
DD sqrt_rational(const Rational& q, Precision p);
double magnitude(const CxDD& z);

}  // namespace toridouble
