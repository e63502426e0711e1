#include "toridouble/theta.hpp"

#include <cmath>

#include "toridouble/torus.hpp"

namespace toridouble {

namespace {

CRatMatrix complex_of(const IntMatrix& d) { return to_complex(to_rational(d)); }

CRatVector transpose_times(const IntMatrix& d, const CRatVector& z) {
    RatMatrix dt = to_rational(d).transpose();
    return {dt * z.re, dt * z.im};
}

CRational scalar(const CRational& z, const Rational& s) { return {z.re * s, z.im * s}; }

void add_quad(GaussianSeries& s, std::size_t i, std::size_t j, const CRational& c) {
    s.re.quad(i, j) += c.re;
    s.ph.quad(i, j) += c.im;
}

void add_lin(GaussianSeries& s, std::size_t i, const CRational& c) {
    s.re.lin[i] += c.re;
    s.ph.lin[i] += c.im;
}

Rational positive_imag(const CRational& tau) {
    if (tau.im <= 0) throw InadmissibleSpec("Im tau must be positive");
    return tau.im;
}

ThetaSpec one_dim_spec(const CRational& tau, const NumericPolicy& policy) {
    ThetaSpec s;
    s.tau = {RatMatrix{{tau.re}}, RatMatrix{{tau.im}}};
    s.D = IntMatrix{{1}};
    s.k = IntVector{0};
    s.policy = policy;
    return s;
}

CRatVector vec1(const CRational& z) { return {RatVector{z.re}, RatVector{z.im}}; }

CxDD times(const DD& s, const CxDD& z) { return {s * z.re, s * z.im}; }

double diff(const CxDD& a, const CxDD& b) { return cabs(a - b); }

}  // namespace

void check_admissible(const ThetaSpec& spec) {
    const std::size_t n = spec.n();
    if (n == 0 || !spec.tau.re.is_square() || spec.tau.im.rows() != n || spec.tau.im.cols() != n)
        throw InadmissibleSpec("tau must be a nonempty square matrix");
    if (spec.D.rows() != n || spec.D.cols() != n) throw InadmissibleSpec("D must be " + std::to_string(n) + "x" + std::to_string(n));
    if (spec.k.size() != n) throw InadmissibleSpec("k must have length " + std::to_string(n));
    if (!spec.xi_bits.empty()) {
        if (spec.xi_bits.size() != n) throw InadmissibleSpec("xi must have one bit per generator");
        for (int b : spec.xi_bits)
            if (b != 0 && b != 1) throw InadmissibleSpec("xi bits must be 0 or 1");
    }
    RatMatrix dq = to_rational(spec.D);
    RatMatrix q = spec.tau.im * dq;
    if (q != dq.transpose() * spec.tau.im.transpose()) throw InadmissibleSpec("Im tau·D is not symmetric");
    if (!is_positive_definite(q)) throw InadmissibleSpec("Im tau·D is not positive definite");
    if (!is_integral(graph_curvature(spec.tau, spec.D))) throw InadmissibleSpec("Re tau·D - D^T·Re tau^T is not integral");
}

int theta_xi(const ThetaSpec& spec, const IntVector& m) {
    RatMatrix a = graph_curvature(spec.tau, spec.D);
    Integer acc = 0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (!spec.xi_bits.empty()) acc += spec.xi_bits[i] * m[i];
        for (std::size_t j = i + 1; j < m.size(); ++j) acc += m[i] * m[j] * a(i, j).get_num();
    }
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), acc.get_mpz_t(), 2);
    return static_cast<int>(r.get_si());
}

GaussianSeries theta_series(const ThetaSpec& spec, const CRatVector& z) {
    check_admissible(spec);
    const std::size_t n = spec.n();
    if (z.size() != n) throw ShapeMismatch("theta argument must have length " + std::to_string(n));
    RatMatrix a = graph_curvature(spec.tau, spec.D);
    RatVector kappa0 = inverse(to_rational(spec.D)) * to_rational(spec.k);
    GaussianSeries s = GaussianSeries::zero(n);
    Affine m = Affine::identity(n);
    Affine p = m - Affine::constant(kappa0, n);
    // (-1)^{xi(m)}
    for (std::size_t i = 0; i < n; ++i) {
        if (!spec.xi_bits.empty()) s.ph.lin[i] += spec.xi_bits[i];
        for (std::size_t j = i + 1; j < n; ++j) s.ph.quad(i, j) += a(i, j);
    }
    s.ph.add_linear(1, a.transpose() * kappa0, m);
    s.add_complex_bilinear({0, 1}, p, spec.tau * complex_of(spec.D), p);
    s.add_complex_linear({0, 2}, transpose_times(spec.D, z), p);
    return s;
}

SeriesValue theta_dk(const ThetaSpec& spec, const CRatVector& z) { return evaluate(theta_series(spec, z), spec.policy); }

SeriesValue theta_dk(const ThetaSpec& spec, const CRatVector& z, double tol) {
    return evaluate(theta_series(spec, z), spec.policy, tol);
}

ThetaSpec conjugate_spec(const ThetaSpec& spec) {
    ThetaSpec c = spec;
    c.tau = {-spec.tau.re, spec.tau.im};
    c.k = IntVector(spec.n(), Integer(0));
    return c;
}

QuasiPeriodicityCheck verify_quasi_periodicity(const ThetaSpec& spec, const CRatVector& z, const IntVector& h) {
    check_admissible(spec);
    const Precision prec = spec.policy.precision;
    RatVector hq = to_rational(h);
    CRatMatrix td = spec.tau * complex_of(spec.D);
    CRational quad{dot(hq, td.re * hq), dot(hq, td.im * hq)};
    RatVector dh = to_rational(spec.D) * hq;
    CRational lin{dot(dh, z.re), dot(dh, z.im)};
    // F = exp(pi·w)
    CRational w{quad.im + 2 * lin.im, Rational(theta_xi(spec, h)) - quad.re - 2 * lin.re};
    CRatVector shift{spec.tau.re.transpose() * hq, spec.tau.im.transpose() * hq};
    double f_abs = std::exp(3.141592653589793 * to_double(w.re));

    QuasiPeriodicityCheck out;
    out.factor = exp_pi(w, prec);
    SeriesValue base = theta_dk(spec, z);
    SeriesValue shifted = theta_dk(spec, z + shift, spec.policy.tol * f_abs);
    out.base = base.value;
    out.shifted = shifted.value;
    out.cert = base.cert;
    CxDD unshifted = exp_pi({-w.re, -w.im}, prec) * shifted.value;
    out.residual = {diff(unshifted, base.value), 10 * spec.policy.tol};
    return out;
}

Residual verify_integer_periodicity(const ThetaSpec& spec, const CRatVector& z, const IntVector& h) {
    SeriesValue a = theta_dk(spec, z);
    SeriesValue b = theta_dk(spec, z + CRatVector(to_rational(h)));
    return {diff(a.value, b.value), 10 * spec.policy.tol};
}

CharacteristicShiftCheck verify_characteristic_shift(const ThetaSpec& spec, const CRatVector& z, const IntVector& s) {
    check_admissible(spec);
    ThetaSpec moved = spec;
    IntVector ds = spec.D * s;
    for (std::size_t i = 0; i < s.size(); ++i) moved.k[i] += ds[i];
    RatMatrix a = graph_curvature(spec.tau, spec.D);
    RatVector kappa0 = inverse(to_rational(spec.D)) * to_rational(spec.k);
    Rational ph = Rational(theta_xi(spec, s)) + dot(a * to_rational(s), kappa0);

    CharacteristicShiftCheck out;
    out.factor = exp_pi({0, ph}, spec.policy.precision);
    out.base = theta_dk(spec, z).value;
    out.shifted = theta_dk(moved, z).value;
    out.residual = {diff(out.shifted, out.factor * out.base), 10 * spec.policy.tol};
    return out;
}

IdentityOneCheck verify_identity_1(const CRational& tau, const CRational& z, const NumericPolicy& policy) {
    const Rational a = positive_imag(tau);
    const Rational b = tau.re;
    const Rational abs2 = b * b + a * a;
    const CRational tau_bar{b, -a};
    const CRational z2 = z * z;
    const Rational inv_a = 1 / a;

    GaussianSeries e1 = GaussianSeries::zero(2);
    e1.ph.quad(0, 1) += 1;  // (-1)^{mn}
    add_quad(e1, 0, 0, {-inv_a / 2, 0});
    add_quad(e1, 0, 1, {-b * inv_a, 0});
    add_quad(e1, 1, 1, {-abs2 * inv_a / 2, 0});
    add_lin(e1, 0, scalar(z, -inv_a));
    add_lin(e1, 1, scalar(tau_bar * z, -inv_a));
    e1.add_complex_constant(scalar(z2, -inv_a / 2));

    GaussianSeries e2 = GaussianSeries::zero(2);
    add_quad(e2, 0, 0, {-inv_a / 2, 0});
    add_lin(e2, 0, scalar(z, -inv_a));
    e2.add_complex_constant(scalar(z2, -inv_a / 2));
    add_quad(e2, 0, 1, scalar(tau_bar, -inv_a));
    add_lin(e2, 1, scalar(tau_bar * z, -inv_a));
    add_quad(e2, 1, 1, {-abs2 * inv_a / 2, 0});

    ThetaSpec th = one_dim_spec(tau, policy);
    const double ftol = policy.tol / 8;
    SeriesValue t_u = theta_dk(th, vec1(z), ftol);
    SeriesValue t_c = theta_dk(conjugate_spec(th), vec1({0, 0}), ftol);

    IdentityOneCheck out;
    SeriesValue v1 = evaluate(e1, policy);
    SeriesValue v2 = evaluate(e2, policy);
    out.lattice_form = v1.value;
    out.poisson_form = v2.value;
    out.theta_form = times(sqrt_rational(2 * a, policy.precision), t_c.value * t_u.value);
    out.cert = v1.cert;
    double r = std::max({diff(out.lattice_form, out.poisson_form), diff(out.lattice_form, out.theta_form),
                         diff(out.poisson_form, out.theta_form)});
    out.residual = {r, 10 * policy.tol};
    return out;
}

GaussianSeries gaussian_theta_series(const CRational& tau, const CRational& u, const CRational& v) {
    const Rational a = positive_imag(tau);
    const Rational inv_a = 1 / a;
    const CRational tau_bar{tau.re, -tau.im};
    const Rational abs2 = tau.re * tau.re + tau.im * tau.im;
    GaussianSeries s = GaussianSeries::zero(2);
    add_quad(s, 0, 0, {-inv_a / 2, 0});
    add_quad(s, 1, 1, {-abs2 * inv_a / 2, 0});
    add_quad(s, 0, 1, scalar(tau, -inv_a));
    add_lin(s, 0, scalar(u, -inv_a));
    add_lin(s, 1, scalar(tau_bar * u, -inv_a));
    add_lin(s, 0, scalar(v, inv_a));
    add_lin(s, 1, scalar(tau * v, inv_a));
    CRational w = u - v;
    s.add_complex_constant(scalar(w * w, -inv_a / 2));
    return s;
}

SeriesValue gaussian_theta_lhs(const CRational& tau, const CRational& u, const CRational& v, const NumericPolicy& policy) {
    return evaluate(gaussian_theta_series(tau, u, v), policy);
}

IdentityTwoCheck verify_identity_2(const CRational& tau, const CRational& u, const CRational& v,
                                   const NumericPolicy& policy) {
    const Rational a = positive_imag(tau);
    ThetaSpec th = one_dim_spec(tau, policy);
    const double ftol = policy.tol / 8;
    SeriesValue lhs = gaussian_theta_lhs(tau, u, v, policy);
    SeriesValue t_u = theta_dk(th, vec1(u), ftol);
    SeriesValue t_v = theta_dk(conjugate_spec(th), vec1(v), ftol);
    IdentityTwoCheck out;
    out.lhs = lhs.value;
    out.rhs = times(sqrt_rational(2 * a, policy.precision), t_u.value * t_v.value);
    out.cert = lhs.cert;
    out.residual = {diff(out.lhs, out.rhs), 10 * policy.tol};
    return out;
}

}  // namespace toridouble
