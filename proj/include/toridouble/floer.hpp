#pragma once

#include <vector>

#include "toridouble/brane.hpp"
#include "toridouble/theta.hpp"

namespace toridouble {

struct FloerBasisElement {
    RatVector point;  // ambient coordinates in [0, 1); doubled tori use the structural frame
    IntVector k;      // Z^n / (D'-D) Z^n representative, graph pairs only
    IntVector l;      // Z^n / (D'-D)^T Z^n representative, lifted graph pairs only
};

struct FloerVector {
    std::vector<FloerBasisElement> basis;
    std::vector<CxDD> coeffs;
};

// Transverse intersection points, one per point of the torus. Graph pairs are
// labelled by k; lifted graph pairs by (k, l) with l read in the SYZ frame.
// Sorted by (k, l). Throws NonTransversal.
std::vector<FloerBasisElement> intersections(const Brane& a, const Brane& b);
std::vector<FloerBasisElement> intersections(const LiftedBrane& a, const LiftedBrane& b);

// Data of the triple (L_0, L_D, F) on a split torus.
struct FloerSetup {
    CRatMatrix tau;
    IntMatrix D;
    std::vector<int> xi_bits;
    NumericPolicy policy;

    std::size_t n() const { return tau.rows(); }
    // Throws InadmissibleD.
    static FloerSetup make(const TorusWithBField& t, const IntMatrix& d, std::vector<int> xi_bits,
                           const NumericPolicy& policy);
    ThetaSpec theta(const IntVector& k) const;
};

// A fiber of the doubled torus {r} x T_theta x T_rhat x {theta_hat} with
// connection d + 2 pi i (phi dtheta + kappa drhat); theta_hat in the SYZ frame.
struct FiberPoint {
    RatVector r;
    RatVector phi;
    RatVector theta_hat;
    RatVector kappa;
};

// the fiber point of the lift of L_z: kappa = 0, theta_hat = -phi
FiberPoint lifted_fiber_point(const RatVector& r, const RatVector& phi);
// r and phi with z = tau^T r - phi
FiberPoint fiber_point_for(const CRatMatrix& tau, const CRatVector& z);
CRatVector mirror_u_exact(const CRatMatrix& tau, const FiberPoint& pt);
CRatVector mirror_v_exact(const CRatMatrix& tau, const FiberPoint& pt);

// Coefficient of e_0 in e_D o s_(D,k) on the base torus.
GaussianSeries mu2_base_series(const FloerSetup& s, const IntVector& k, const RatVector& r, const RatVector& phi);
SeriesValue mu2_base(const FloerSetup& s, const IntVector& k, const RatVector& r, const RatVector& phi);
SeriesValue mu2_base(const FloerSetup& s, const IntVector& k, const RatVector& r, const RatVector& phi, double tol);
// e^{pi i <tau D r, r>} e^{-2 pi i <D r, phi>}: mu2_base = prefactor · theta_{D,k}(tau^T r - phi)
CRational mu2_base_prefactor_exponent(const FloerSetup& s, const RatVector& r, const RatVector& phi);

// p = D^{-1} k and q = D^{-T}(A D^{-1} k + l)
RatVector generator_p(const FloerSetup& s, const IntVector& k);
RatVector generator_q(const FloerSetup& s, const IntVector& k, const IntVector& l);

// Coefficient of e_0 in mu2(e_D, s_{k,l}) on the doubled torus, summed over (m, n) in Z^{2n}.
GaussianSeries mu2_double_series(const FloerSetup& s, const IntVector& k, const IntVector& l, const FiberPoint& pt);
SeriesValue mu2_double(const FloerSetup& s, const IntVector& k, const IntVector& l, const FiberPoint& pt);
SeriesValue mu2_double(const FloerSetup& s, const IntVector& k, const IntVector& l, const FiberPoint& pt, double tol);

// Exponent (units of pi) of the trivialization factor relating the l-summed
// Floer generators to theta_{D,k}(u)·conj-theta_{D,0}(v).
CRational trivialization_exponent(const FloerSetup& s, const FiberPoint& pt);
CxDD trivialization_factor(const FloerSetup& s, const FiberPoint& pt);

struct UPartSpace {
    IntMatrix delta;                                // D' - D
    std::vector<FloerBasisElement> points;          // all of L ∩ L'
    std::vector<std::vector<std::size_t>> members;  // per k, the indices of its points

    std::size_t dim() const { return members.size(); }
    // sum over l of s_{k,l} for the i-th k
    FloerVector vector(std::size_t i) const;
};

UPartSpace u_part_basis(const LiftedBrane& a, const LiftedBrane& b);
// s_{k,l} -> (1/|det(D'-D)|) sum_l' s_{k,l'}
FloerVector project_u(const FloerVector& x, const UPartSpace& space);

// Pi_T(mu2(x, y)) for x in CF(L_D, F), y in CF(L_0, L_D); the result lies in
// CF(L_0, F), a single generator. Throws UnsupportedTriple for any other triple.
FloerVector mu2_u(const FloerVector& x, const FloerVector& y, const LiftedBrane& l0, const LiftedBrane& ld,
                  const Brane& fiber, const TorusWithBField& t, const NumericPolicy& policy);
// reads (r, phi, theta_hat, kappa) off a fiber brane of the doubled torus
FiberPoint fiber_point_of(const Brane& fiber, int n);

struct UsubSample {
    FiberPoint point;
    CxDD lhs;     // sum_l s_{k,l}
    CxDD rhs;     // sqrt(2^n det Im tau D) theta_{D,k}(u) conj-theta_{D,0}(v) · TF
    CxDD factor;  // TF
    double residual = 0.0;
};

struct UsubReport {
    std::vector<UsubSample> samples;
    double residual = 0.0;   // worst sample
    double tolerance = 0.0;  // 10·tol
    bool pass() const { return residual <= tolerance; }
};

// normalization: sqrt(2^n det(Im tau D))
DD usub_constant(const FloerSetup& s);
UsubReport verify_usub(const FloerSetup& s, const IntVector& k, const std::vector<FiberPoint>& samples);

struct DiagramEntry {
    IntVector k;
    CRatVector z;
    CxDD upart;   // mu2_u coefficient
    CxDD base;    // mu2_base
    CxDD rho;     // upart / base
    CxDD trivialization_ratio;  // TF / prefactor at v = 0, expected 1
    CxDD predicted;
};

struct DiagramReport {
    std::vector<DiagramEntry> entries;
    CxDD predicted_constant;  // sqrt(2^n det Im tau D) · conj-theta_{D,c}(0)
    double spread = 0.0;      // max relative deviation of rho from its first value
    double mismatch = 0.0;    // max relative deviation of rho from the prediction
    double tolerance = 0.0;   // 10·tol relative
    bool pass() const { return spread <= tolerance && mismatch <= tolerance; }
};

// prediction_characteristic selects c in the predicted constant; c = 0 is the
// claimed value, anything else is a negative control.
DiagramReport verify_main_diagram(const TorusWithBField& t, const IntMatrix& d, const std::vector<int>& xi_bits,
                                  const std::vector<IntVector>& ks, const std::vector<CRatVector>& z_grid,
                                  const NumericPolicy& policy, const IntVector& prediction_characteristic = {});

struct UPartSelf {
    std::size_t complex_dim = 0;
    std::vector<std::size_t> degree_dims;  // dim of the degree-q exterior power, q = 0..complex_dim
    std::vector<CRatVector> basis;         // -i eigenvectors of J in ambient coordinates
};

// Throws JNotPreserving when J does not map the tangent space to itself.
UPartSelf u_part_self(const Brane& lb, const DoubledTorus& dt);
inline UPartSelf u_part_self(const LiftedBrane& lb, const DoubledTorus& dt) { return u_part_self(lb.brane, dt); }

}  // namespace toridouble
