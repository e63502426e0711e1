#pragma once

#include <optional>
#include <vector>

#include "toridouble/ddouble.hpp"
#include "toridouble/matrix.hpp"

namespace toridouble {

// Coordinates are x = (r_1..r_n, theta_1..theta_n); a 2-form is stored as the
// antisymmetric matrix W with form(a, b) = a^T W b.
struct SplitStructure {
    CRatMatrix tau;  // B + i·omega = tau dr∧dtheta
};

class TorusWithBField {
public:
    // Validates antisymmetry and nondegeneracy; detects the split form.
    static TorusWithBField from_forms(const RatMatrix& omega, const RatMatrix& b_field);
    // B + i·omega = tau dr∧dtheta; Im tau must be positive definite.
    static TorusWithBField from_tau(const CRatMatrix& tau);
    static TorusWithBField from_tau(const RatMatrix& re, const RatMatrix& im) { return from_tau(CRatMatrix{re, im}); }

    int n() const { return n_; }
    const RatMatrix& omega() const { return omega_; }
    const RatMatrix& b_field() const { return b_field_; }
    const std::optional<SplitStructure>& split() const { return split_; }
    bool is_split() const { return split_.has_value(); }
    // throws NotSplit
    const CRatMatrix& tau() const;
    // Id + (omega^{-1} B)^2 invertible
    bool satisfies_duality_assumption() const;

    friend bool operator==(const TorusWithBField& a, const TorusWithBField& b) {
        return a.omega_ == b.omega_ && a.b_field_ == b.b_field_;
    }

private:
    int n_ = 0;
    RatMatrix omega_;
    RatMatrix b_field_;
    std::optional<SplitStructure> split_;
};

struct DoubledTorus {
    TorusWithBField base;
    RatMatrix Omega;   // 4n x 4n, coordinates (x, x_hat)
    RatMatrix sigma0;  // 1/2 sum dx_j ∧ dx_hat_j
    RatMatrix J;

    int n() const { return base.n(); }
    std::size_t dim() const { return Omega.rows(); }
};

// x_hat -> -x_hat; carries the structural frame to the SYZ frame used by the
// mirror coordinates (and back).
RatMatrix syz_frame_map(int n);

TorusWithBField dual_torus(const TorusWithBField& t);
DoubledTorus double_torus(const TorusWithBField& t);

// B-shear [[1, 0], [B, 1]] on R^{2n} ⊕ R^{2n}
RatMatrix b_shear(const TorusWithBField& t);

struct MirrorTorus {
    CRatMatrix tau;
    // lattice Z^n + tau^T Z^n
    CRatMatrix period() const { return tau.transpose(); }
};

MirrorTorus mirror_period(const TorusWithBField& t);

struct MirrorOfDouble {
    CRatMatrix tau_u;  // tau
    CRatMatrix tau_v;  // -conj(tau)
};

MirrorOfDouble mirror_of_double(const TorusWithBField& t);

// u = tau^T (r - kappa) - phi
template <class R>
std::vector<Cx<R>> mirror_u(const CRatMatrix& tau, const RatVector& r, const RatVector& kappa, const RatVector& phi);
// v = -conj(tau)^T kappa - theta_hat - phi   (theta_hat in the SYZ frame)
template <class R>
std::vector<Cx<R>> mirror_v(const CRatMatrix& tau, const RatVector& kappa, const RatVector& theta_hat,
                            const RatVector& phi);

struct ChernData {
    IntMatrix D;
    Integer degree;  // det D: number of independent sections
};

// Requires Im tau·D = D^T·Im tau^T and Re tau·D - D^T·Re tau^T integral.
ChernData mirror_chern(const IntMatrix& d, const TorusWithBField& t);

// A = Re tau·D - D^T·Re tau^T
RatMatrix graph_curvature(const CRatMatrix& tau, const IntMatrix& d);

template <class R>
std::vector<Cx<R>> mirror_u(const CRatMatrix& tau, const RatVector& r, const RatVector& kappa, const RatVector& phi) {
    const std::size_t n = r.size();
    RatVector d = r - kappa;
    std::vector<Cx<R>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational re = -phi[i], im = 0;
        for (std::size_t j = 0; j < n; ++j) {
            re += tau.re(j, i) * d[j];
            im += tau.im(j, i) * d[j];
        }
        out[i] = {Num<R>::from(re), Num<R>::from(im)};
    }
    return out;
}

template <class R>
std::vector<Cx<R>> mirror_v(const CRatMatrix& tau, const RatVector& kappa, const RatVector& theta_hat,
                            const RatVector& phi) {
    const std::size_t n = kappa.size();
    std::vector<Cx<R>> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rational re = -theta_hat[i] - phi[i], im = 0;
        for (std::size_t j = 0; j < n; ++j) {
            re -= tau.re(j, i) * kappa[j];
            im += tau.im(j, i) * kappa[j];
        }
        out[i] = {Num<R>::from(re), Num<R>::from(im)};
    }
    return out;
}

}  // namespace toridouble
