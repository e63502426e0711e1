#include "toridouble/torus.hpp"

namespace toridouble {

namespace {

RatMatrix rtheta_form(const RatMatrix& block) {
    const std::size_t n = block.rows();
    RatMatrix z(n, n);
    return RatMatrix::blocks(z, block, -block.transpose(), z);
}

std::optional<SplitStructure> detect_split(const RatMatrix& omega, const RatMatrix& b) {
    const std::size_t n = omega.rows() / 2;
    if (!omega.block(0, 0, n, n).is_zero() || !omega.block(n, n, n, n).is_zero()) return std::nullopt;
    if (!b.block(0, 0, n, n).is_zero() || !b.block(n, n, n, n).is_zero()) return std::nullopt;
    RatMatrix im = omega.block(0, n, n, n);
    if (!is_positive_definite(im)) return std::nullopt;
    return SplitStructure{CRatMatrix{b.block(0, n, n, n), im}};
}

}  // namespace

TorusWithBField TorusWithBField::from_forms(const RatMatrix& omega, const RatMatrix& b_field) {
    if (!omega.is_square() || omega.rows() % 2 != 0 || omega.rows() == 0)
        throw InvalidTorus("omega must be a nonempty even-dimensional square matrix");
    if (b_field.rows() != omega.rows() || b_field.cols() != omega.cols())
        throw InvalidTorus("B-field shape differs from omega");
    if (!omega.is_antisymmetric()) throw InvalidTorus("omega is not antisymmetric");
    if (!b_field.is_antisymmetric()) throw InvalidTorus("B-field is not antisymmetric");
    if (det(omega) == 0) throw InvalidTorus("omega is degenerate");
    TorusWithBField t;
    t.n_ = static_cast<int>(omega.rows() / 2);
    t.omega_ = omega;
    t.b_field_ = b_field;
    t.split_ = detect_split(omega, b_field);
    return t;
}

TorusWithBField TorusWithBField::from_tau(const CRatMatrix& tau) {
    if (!tau.re.is_square() || tau.re.rows() == 0 || tau.im.rows() != tau.re.rows() || !tau.im.is_square())
        throw InvalidTorus("tau must be a nonempty square matrix");
    if (!is_positive_definite(tau.im)) throw InvalidTorus("Im tau is not positive definite");
    TorusWithBField t = from_forms(rtheta_form(tau.im), rtheta_form(tau.re));
    t.split_ = SplitStructure{tau};
    return t;
}

const CRatMatrix& TorusWithBField::tau() const {
    if (!split_) throw NotSplit("torus has no split (r, theta) structure");
    return split_->tau;
}

bool TorusWithBField::satisfies_duality_assumption() const {
    RatMatrix x = inverse(omega_) * b_field_;
    return det(RatMatrix::identity(omega_.rows()) + x * x) != 0;
}

RatMatrix syz_frame_map(int n) {
    const std::size_t m = static_cast<std::size_t>(2 * n);
    RatMatrix p = RatMatrix::identity(2 * m);
    for (std::size_t i = m; i < 2 * m; ++i) p(i, i) = -1;
    return p;
}

TorusWithBField dual_torus(const TorusWithBField& t) {
    if (!t.satisfies_duality_assumption()) throw DualityAssumptionViolated("Id + (omega^{-1} B)^2 is singular");
    const RatMatrix& w = t.omega();
    const RatMatrix& b = t.b_field();
    RatMatrix wi = inverse(w);
    RatMatrix mi = inverse(w + b * wi * b);
    return TorusWithBField::from_forms(-mi, mi * b * wi);
}

RatMatrix b_shear(const TorusWithBField& t) {
    const std::size_t m = t.omega().rows();
    return RatMatrix::blocks(RatMatrix::identity(m), RatMatrix(m, m), t.b_field(), RatMatrix::identity(m));
}

DoubledTorus double_torus(const TorusWithBField& t) {
    if (!t.satisfies_duality_assumption()) throw DualityAssumptionViolated("Id + (omega^{-1} B)^2 is singular");
    const RatMatrix& w = t.omega();
    const RatMatrix& b = t.b_field();
    const std::size_t m = w.rows();
    RatMatrix wi = inverse(w);
    RatMatrix id = RatMatrix::identity(m);
    RatMatrix z(m, m);
    DoubledTorus dt{t, {}, {}, {}};
    dt.Omega = Rational(1, 2) * RatMatrix::blocks(w + b * wi * b, b * wi, -(wi * b), -wi);
    dt.sigma0 = RatMatrix::blocks(z, Rational(1, 2) * id, Rational(-1, 2) * id, z);
    dt.J = RatMatrix::blocks(wi * b, wi, -(w + b * wi * b), -(b * wi));
    return dt;
}

MirrorTorus mirror_period(const TorusWithBField& t) { return {t.tau()}; }

MirrorOfDouble mirror_of_double(const TorusWithBField& t) {
    const CRatMatrix& tau = t.tau();
    return {tau, -tau.conj()};
}

RatMatrix graph_curvature(const CRatMatrix& tau, const IntMatrix& d) {
    RatMatrix dq = to_rational(d);
    return tau.re * dq - dq.transpose() * tau.re.transpose();
}

ChernData mirror_chern(const IntMatrix& d, const TorusWithBField& t) {
    const CRatMatrix& tau = t.tau();
    const std::size_t n = static_cast<std::size_t>(t.n());
    if (d.rows() != n || d.cols() != n) throw InadmissibleD("D must be " + std::to_string(n) + "x" + std::to_string(n));
    RatMatrix dq = to_rational(d);
    if (tau.im * dq != dq.transpose() * tau.im.transpose()) throw InadmissibleD("Im tau·D is not symmetric");
    if (!is_integral(graph_curvature(tau, d))) throw InadmissibleD("Re tau·D - D^T·Re tau^T is not integral");
    return {d, det(d)};
}

}  // namespace toridouble
