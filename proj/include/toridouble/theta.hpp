#pragma once

#include <vector>

#include "toridouble/series.hpp"

namespace toridouble {

// theta_{D,k}(z) = sum_m (-1)^{xi(m)} e^{pi i <D^{-1}k, A m>} e^{pi i <tau D p, p>} e^{2 pi i <D m - k, z>},
// p = m - D^{-1}k, A = Re tau D - D^T Re tau^T.
struct ThetaSpec {
    CRatMatrix tau;
    IntMatrix D;
    IntVector k;
    std::vector<int> xi_bits;  // xi on the standard generators; empty means all zero
    NumericPolicy policy;

    std::size_t n() const { return tau.rows(); }
};

// throws InadmissibleSpec naming the failed condition
void check_admissible(const ThetaSpec& spec);
// xi(m) = bits·m + sum_{i<j} m_i m_j A_ij mod 2
int theta_xi(const ThetaSpec& spec, const IntVector& m);

GaussianSeries theta_series(const ThetaSpec& spec, const CRatVector& z);
SeriesValue theta_dk(const ThetaSpec& spec, const CRatVector& z);
SeriesValue theta_dk(const ThetaSpec& spec, const CRatVector& z, double tol);
// theta_{D,0} for -conj(tau), same sign bits
ThetaSpec conjugate_spec(const ThetaSpec& spec);

struct Residual {
    double value = 0.0;
    double tolerance = 0.0;  // contract bound
    bool pass() const { return value <= tolerance; }
};

struct QuasiPeriodicityCheck {
    Residual residual;
    CxDD shifted;   // theta(z + tau^T h)
    CxDD base;      // theta(z)
    CxDD factor;    // (-1)^{xi(h)} e^{-pi i <tau D h, h>} e^{-2 pi i <D h, z>}
    TruncationCertificate cert;
};

// |F^{-1} theta(z + tau^T h) - theta(z)|; the shifted value is evaluated to
// tol·|F| so both sides carry the same absolute budget.
QuasiPeriodicityCheck verify_quasi_periodicity(const ThetaSpec& spec, const CRatVector& z, const IntVector& h);
// theta(z + h) = theta(z) for integer h
Residual verify_integer_periodicity(const ThetaSpec& spec, const CRatVector& z, const IntVector& h);

struct CharacteristicShiftCheck {
    Residual residual;
    CxDD shifted;  // theta_{D, k + D s}(z)
    CxDD base;     // theta_{D, k}(z)
    CxDD factor;   // (-1)^{xi(s)} e^{pi i <A s, D^{-1} k>}
};

CharacteristicShiftCheck verify_characteristic_shift(const ThetaSpec& spec, const CRatVector& z, const IntVector& s);

// One-dimensional periodized Gaussians, a = Im tau.
struct IdentityOneCheck {
    Residual residual;  // largest pairwise difference of the three expressions
    CxDD lattice_form;  // sum (-1)^{mn} e^{-pi/(2a)|m + n tau|^2} e^{-pi/a (m + n conj tau) z} e^{-pi/(2a) z^2}
    CxDD poisson_form;  // sum e^{-pi/(2a)(z+m)^2} e^{-pi/a n conj(tau)(z+m)} e^{-pi/(2a) n^2 |tau|^2}
    CxDD theta_form;    // sqrt(2a) theta_{-conj tau}(0) theta_tau(z)
    TruncationCertificate cert;
};

IdentityOneCheck verify_identity_1(const CRational& tau, const CRational& z, const NumericPolicy& policy);

GaussianSeries gaussian_theta_series(const CRational& tau, const CRational& u, const CRational& v);
SeriesValue gaussian_theta_lhs(const CRational& tau, const CRational& u, const CRational& v, const NumericPolicy& policy);

struct IdentityTwoCheck {
    Residual residual;
    CxDD lhs;
    CxDD rhs;  // sqrt(2a) theta_tau(u) theta_{-conj tau}(v)
    TruncationCertificate cert;
};

IdentityTwoCheck verify_identity_2(const CRational& tau, const CRational& u, const CRational& v,
                                   const NumericPolicy& policy);

}  // namespace toridouble
