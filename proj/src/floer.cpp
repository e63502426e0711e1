#include "toridouble/floer.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "toridouble/lattice.hpp"

namespace toridouble {

namespace {

RatVector slice(const RatVector& v, std::size_t from, std::size_t count) {
    return RatVector(v.begin() + static_cast<long>(from), v.begin() + static_cast<long>(from + count));
}

RatVector neg(const RatVector& v) { return Rational(-1) * v; }

IntVector floor_vec(const RatVector& v) {
    IntVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = floor_q(v[i]);
    return out;
}

CRatVector cvec(const RatVector& v) { return CRatVector(v); }

CRational cdot(const CRatVector& a, const CRatMatrix& m, const CRatVector& b) { return dot(a, m * b); }

CRational scale(const CRational& z, const Rational& s) { return {z.re * s, z.im * s}; }

CRatMatrix complex_of(const IntMatrix& d) { return to_complex(to_rational(d)); }

bool all_zero(const RatVector& v) {
    return std::all_of(v.begin(), v.end(), [](const Rational& q) { return q == 0; });
}

void add_xi(GaussianSeries& s, const FloerSetup& f, const RatMatrix& a) {
    const std::size_t n = f.n();
    for (std::size_t i = 0; i < n; ++i) {
        if (!f.xi_bits.empty()) s.ph.lin[i] += f.xi_bits[i];
        for (std::size_t j = i + 1; j < n; ++j) s.ph.quad(i, j) += a(i, j);
    }
}

RatMatrix curvature_of(const FloerSetup& s) { return graph_curvature(s.tau, s.D); }

std::vector<FloerBasisElement> raw_points(const Brane& a, const Brane& b) {
    const std::size_t big = a.ambient_dim();
    if (b.ambient_dim() != big) throw ShapeMismatch("branes live on different tori");
    if (a.dim() + b.dim() != big) throw NonTransversal("dimensions do not add up to the ambient dimension");
    IntMatrix m = IntMatrix::hstack(a.support(), -b.support());
    if (det(m) == 0) throw NonTransversal("tangent spaces meet");
    RatMatrix minv = inverse(to_rational(m));
    RatMatrix u = to_rational(a.support());
    RatVector shift = b.offset() - a.offset();
    LatticeCosets cos = cosets(m);
    std::vector<FloerBasisElement> out;
    out.reserve(cos.size());
    for (const IntVector& z : cos.representatives) {
        RatVector sol = minv * (shift + to_rational(z));
        RatVector t = slice(sol, 0, a.dim());
        out.push_back({frac(a.offset() + u * t), {}, {}});
    }
    return out;
}

void sort_labelled(std::vector<FloerBasisElement>& pts) {
    std::sort(pts.begin(), pts.end(), [](const FloerBasisElement& x, const FloerBasisElement& y) {
        if (x.k != y.k) return x.k < y.k;
        if (x.l != y.l) return x.l < y.l;
        return x.point < y.point;
    });
}

void check_distinct_labels(const std::vector<FloerBasisElement>& pts) {
    std::set<std::pair<IntVector, IntVector>> seen;
    for (const auto& p : pts)
        if (!seen.insert({p.k, p.l}).second) throw ValidationError("intersection labels collide");
}

// two-pass: absolute budget tol·|value|/4 once the magnitude is known
template <class F>
SeriesValue relative(F eval, double tol) {
    SeriesValue first = eval(tol);
    double mag = magnitude(first.value);
    if (mag > 0 && mag < 1) return eval(tol * mag / 4);
    return first;
}

double rel_diff(const CxDD& a, const CxDD& b) {
    double m = magnitude(b);
    return m == 0 ? magnitude(a) : magnitude(a - b) / m;
}

}  // namespace

std::vector<FloerBasisElement> intersections(const Brane& a, const Brane& b) {
    std::vector<FloerBasisElement> pts = raw_points(a, b);
    if (a.graph_matrix() && b.graph_matrix() && !a.is_lift() && !b.is_lift()) {
        const std::size_t n = a.ambient_dim() / 2;
        IntMatrix delta = *b.graph_matrix() - *a.graph_matrix();
        LatticeCosets cos = cosets(delta);
        RatMatrix dq = to_rational(delta);
        for (auto& p : pts) p.k = cos.reduce(floor_vec(dq * slice(p.point, 0, n)));
        sort_labelled(pts);
        check_distinct_labels(pts);
    }
    return pts;
}

std::vector<FloerBasisElement> intersections(const LiftedBrane& a, const LiftedBrane& b) {
    std::vector<FloerBasisElement> pts = raw_points(a.brane, b.brane);
    if (!a.base.graph_matrix() || !b.base.graph_matrix()) return pts;
    const std::size_t n = a.base.ambient_dim() / 2;
    IntMatrix delta = *b.base.graph_matrix() - *a.base.graph_matrix();
    LatticeCosets cos_k = cosets(delta);
    LatticeCosets cos_l = cosets(delta.transpose());
    RatMatrix dq = to_rational(delta);
    RatMatrix dinv = inverse(dq);
    RatMatrix dt = dq.transpose();
    RatMatrix a_delta = b.base.curvature() - a.base.curvature();
    for (auto& p : pts) {
        RatVector r = slice(p.point, 0, n);
        RatVector theta_hat = neg(slice(p.point, 3 * n, n));
        IntVector fl = floor_vec(dq * r);
        p.k = cos_k.reduce(fl);
        RatVector rk = r + dinv * (to_rational(p.k) - to_rational(fl));
        p.l = cos_l.reduce(floor_vec(dt * theta_hat - a_delta * rk));
    }
    sort_labelled(pts);
    check_distinct_labels(pts);
    return pts;
}

FloerSetup FloerSetup::make(const TorusWithBField& t, const IntMatrix& d, std::vector<int> xi_bits,
                            const NumericPolicy& policy) {
    mirror_chern(d, t);
    const std::size_t n = static_cast<std::size_t>(t.n());
    if (!xi_bits.empty() && xi_bits.size() != n) throw InvalidXi("xi must have one bit per generator");
    for (int b : xi_bits)
        if (b != 0 && b != 1) throw InvalidXi("xi bits must be 0 or 1");
    return {t.tau(), d, std::move(xi_bits), policy};
}

ThetaSpec FloerSetup::theta(const IntVector& k) const { return {tau, D, k, xi_bits, policy}; }

FiberPoint lifted_fiber_point(const RatVector& r, const RatVector& phi) {
    return {r, phi, neg(phi), RatVector(r.size(), Rational(0))};
}

FiberPoint fiber_point_for(const CRatMatrix& tau, const CRatVector& z) {
    if (z.size() != tau.rows()) throw ShapeMismatch("z must have length n");
    RatVector r = inverse(tau.im.transpose()) * z.im;
    RatVector phi = tau.re.transpose() * r - z.re;
    return lifted_fiber_point(r, phi);
}

CRatVector mirror_u_exact(const CRatMatrix& tau, const FiberPoint& pt) {
    return tau.transpose() * cvec(pt.r - pt.kappa) - cvec(pt.phi);
}

CRatVector mirror_v_exact(const CRatMatrix& tau, const FiberPoint& pt) {
    CRatVector w = tau.conj().transpose() * cvec(pt.kappa);
    return CRatVector(neg(w.re), neg(w.im)) - cvec(pt.theta_hat) - cvec(pt.phi);
}

RatVector generator_p(const FloerSetup& s, const IntVector& k) { return inverse(to_rational(s.D)) * to_rational(k); }

RatVector generator_q(const FloerSetup& s, const IntVector& k, const IntVector& l) {
    RatMatrix dq = to_rational(s.D);
    return inverse(dq.transpose()) * (curvature_of(s) * generator_p(s, k) + to_rational(l));
}

GaussianSeries mu2_base_series(const FloerSetup& s, const IntVector& k, const RatVector& r, const RatVector& phi) {
    const std::size_t n = s.n();
    if (k.size() != n || r.size() != n || phi.size() != n) throw ShapeMismatch("k, r and phi must have length n");
    RatMatrix dq = to_rational(s.D);
    RatMatrix a = curvature_of(s);
    RatVector kappa0 = generator_p(s, k);
    GaussianSeries g = GaussianSeries::zero(n);
    Affine m = Affine::identity(n);
    Affine w{RatMatrix::identity(n), r - kappa0};
    Affine p = m - Affine::constant(kappa0, n);
    g.add_complex_bilinear({0, 1}, w, s.tau * complex_of(s.D), w);
    g.ph.add_linear(-2, dq.transpose() * phi, w);
    g.ph.add_linear(-1, a * r, p);
    g.ph.add_linear(1, a.transpose() * kappa0, m);
    add_xi(g, s, a);
    return g;
}

SeriesValue mu2_base(const FloerSetup& s, const IntVector& k, const RatVector& r, const RatVector& phi) {
    return evaluate(mu2_base_series(s, k, r, phi), s.policy);
}

SeriesValue mu2_base(const FloerSetup& s, const IntVector& k, const RatVector& r, const RatVector& phi, double tol) {
    return evaluate(mu2_base_series(s, k, r, phi), s.policy, tol);
}

CRational mu2_base_prefactor_exponent(const FloerSetup& s, const RatVector& r, const RatVector& phi) {
    CRational q = cdot(cvec(r), s.tau * complex_of(s.D), cvec(r));
    RatVector dr = to_rational(s.D) * r;
    return {-q.im, q.re - 2 * dot(dr, phi)};
}

GaussianSeries mu2_double_series(const FloerSetup& s, const IntVector& k, const IntVector& l, const FiberPoint& pt) {
    const std::size_t n = s.n();
    if (k.size() != n || l.size() != n) throw ShapeMismatch("k and l must have length n");
    RatMatrix dq = to_rational(s.D);
    RatMatrix a = curvature_of(s);
    RatVector p = generator_p(s, k);
    RatVector q = generator_q(s, k, l);
    RatMatrix im_inv = inverse(s.tau.im);
    CRatMatrix tau_t = s.tau.transpose();
    RatMatrix sm = im_inv * dq.transpose();
    CRatMatrix mc = to_complex(sm) * tau_t;
    CRatMatrix mx = s.tau.conj() * mc;

    RatMatrix left(n, 2 * n), right(n, 2 * n);
    left.set_block(0, 0, RatMatrix::identity(n));
    right.set_block(0, n, RatMatrix::identity(n));
    Affine x{left, pt.r - p};
    Affine y{right, pt.theta_hat - q};
    Affine m{left, RatVector(n, Rational(0))};

    GaussianSeries g = GaussianSeries::zero(2 * n);
    g.re.add_bilinear(Rational(-1, 2), y, sm, y);
    g.add_complex_bilinear({Rational(-1, 2), 0}, x, mx, x);
    g.add_complex_bilinear({-1, 0}, x, mc.transpose(), y);
    g.ph.add_linear(-2, dq.transpose() * pt.phi, x);
    g.ph.add_linear(2, dq * pt.kappa, y);
    g.ph.add_linear(-2, a.transpose() * pt.kappa, x);
    g.ph.add_linear(-1, a * pt.r, m - Affine::constant(p, 2 * n));
    g.ph.add_linear(1, a.transpose() * p, m);
    for (std::size_t i = 0; i < n; ++i) {
        if (!s.xi_bits.empty()) g.ph.lin[i] += s.xi_bits[i];
        for (std::size_t j = i + 1; j < n; ++j) g.ph.quad(i, j) += a(i, j);
    }
    return g;
}

SeriesValue mu2_double(const FloerSetup& s, const IntVector& k, const IntVector& l, const FiberPoint& pt) {
    return evaluate(mu2_double_series(s, k, l, pt), s.policy);
}

SeriesValue mu2_double(const FloerSetup& s, const IntVector& k, const IntVector& l, const FiberPoint& pt, double tol) {
    return evaluate(mu2_double_series(s, k, l, pt), s.policy, tol);
}

CRational trivialization_exponent(const FloerSetup& s, const FiberPoint& pt) {
    RatMatrix dq = to_rational(s.D);
    RatMatrix a = curvature_of(s);
    RatMatrix sm = inverse(s.tau.im) * dq.transpose();
    CRatMatrix mc = to_complex(sm) * s.tau.transpose();
    CRatMatrix mx = s.tau.conj() * mc;
    CRatVector uv = mirror_u_exact(s.tau, pt) - mirror_v_exact(s.tau, pt);
    CRatVector r = cvec(pt.r), th = cvec(pt.theta_hat);

    CRational e = scale(cdot(uv, to_complex(sm.transpose()), uv), Rational(1, 2));
    e = e - scale(cdot(th, to_complex(sm), th), Rational(1, 2));
    e = e - scale(cdot(r, mx, r), Rational(1, 2));
    e = e - cdot(r, mc.transpose(), th);
    e.im -= 2 * dot(dq * pt.r, pt.phi);
    e.im += 2 * dot(dq.transpose() * pt.theta_hat - a * pt.r, pt.kappa);
    return e;
}

CxDD trivialization_factor(const FloerSetup& s, const FiberPoint& pt) {
    return exp_pi(trivialization_exponent(s, pt), s.policy.precision);
}

FloerVector UPartSpace::vector(std::size_t i) const {
    FloerVector v;
    for (std::size_t idx : members.at(i)) {
        v.basis.push_back(points[idx]);
        v.coeffs.push_back({DD(1), DD(0)});
    }
    return v;
}

UPartSpace u_part_basis(const LiftedBrane& a, const LiftedBrane& b) {
    if (!a.base.graph_matrix() || !b.base.graph_matrix())
        throw UnsupportedTriple("the u-part is defined for lifted graph branes");
    UPartSpace sp;
    sp.delta = *b.base.graph_matrix() - *a.base.graph_matrix();
    sp.points = intersections(a, b);
    for (std::size_t i = 0; i < sp.points.size(); ++i) {
        if (i == 0 || sp.points[i].k != sp.points[i - 1].k) sp.members.emplace_back();
        sp.members.back().push_back(i);
    }
    return sp;
}

FloerVector project_u(const FloerVector& x, const UPartSpace& space) {
    if (x.basis.size() != x.coeffs.size()) throw ShapeMismatch("basis and coefficients differ in length");
    Integer d = abs(det(space.delta));
    DD inv = DD(1) / dd_from_rational(Rational(d));
    std::map<IntVector, CxDD> sums;
    for (std::size_t i = 0; i < x.basis.size(); ++i) {
        auto it = sums.try_emplace(x.basis[i].k, CxDD{DD(0), DD(0)}).first;
        it->second += x.coeffs[i];
    }
    FloerVector out;
    for (const auto& members : space.members) {
        const IntVector& k = space.points[members.front()].k;
        auto it = sums.find(k);
        CxDD c = it == sums.end() ? CxDD{DD(0), DD(0)} : inv * it->second;
        for (std::size_t idx : members) {
            out.basis.push_back(space.points[idx]);
            out.coeffs.push_back(c);
        }
    }
    return out;
}

FiberPoint fiber_point_of(const Brane& fiber, int n) {
    const std::size_t nn = static_cast<std::size_t>(n);
    if (fiber.ambient_dim() != 4 * nn || fiber.dim() != 2 * nn)
        throw UnsupportedTriple("third brane is not a fiber of the doubled torus");
    const IntMatrix& u = fiber.support();
    for (std::size_t j = 0; j < u.cols(); ++j)
        for (std::size_t i = 0; i < nn; ++i)
            if (u(i, j) != 0 || u(3 * nn + i, j) != 0)
                throw UnsupportedTriple("third brane is not a fiber of the doubled torus");
    if (!fiber.conn_quadratic().is_zero()) throw UnsupportedTriple("fiber connection must be flat");
    const RatVector& off = fiber.offset();
    const RatVector& c = fiber.conn_flat();
    return {slice(off, 0, nn), slice(c, 0, nn), neg(slice(off, 3 * nn, nn)), slice(c, nn, nn)};
}

FloerVector mu2_u(const FloerVector& x, const FloerVector& y, const LiftedBrane& l0, const LiftedBrane& ld,
                  const Brane& fiber, const TorusWithBField& t, const NumericPolicy& policy) {
    auto plain_graph = [](const Brane& b) {
        return b.graph_matrix() && all_zero(b.offset()) && all_zero(b.conn_flat());
    };
    if (!plain_graph(l0.base) || !to_rational(*l0.base.graph_matrix()).is_zero())
        throw UnsupportedTriple("first brane must be the lifted zero section");
    if (!plain_graph(ld.base)) throw UnsupportedTriple("second brane must be a lifted graph brane");
    if (x.basis.size() != x.coeffs.size() || y.basis.size() != y.coeffs.size())
        throw ShapeMismatch("basis and coefficients differ in length");
    FloerSetup s = FloerSetup::make(t, *ld.base.graph_matrix(), ld.base.xi_bits(), policy);
    FiberPoint pt = fiber_point_of(fiber, t.n());

    const double tol = policy.tol / static_cast<double>(std::max<std::size_t>(1, y.basis.size()));
    CxDD acc{DD(0), DD(0)};
    for (std::size_t i = 0; i < y.basis.size(); ++i) {
        const auto& e = y.basis[i];
        if (e.k.size() != s.n() || e.l.size() != s.n()) throw UnsupportedTriple("y must be labelled by (k, l)");
        acc += y.coeffs[i] * mu2_double(s, e.k, e.l, pt, tol).value;
    }
    CxDD xs{DD(0), DD(0)};
    for (const auto& c : x.coeffs) xs += c;

    FloerVector out;
    out.basis = intersections(l0.brane, fiber);
    if (out.basis.size() != 1) throw UnsupportedTriple("zero section and fiber must meet once");
    out.coeffs.push_back(xs * acc);
    return out;
}

DD usub_constant(const FloerSetup& s) {
    const std::size_t n = s.n();
    Rational v = det(s.tau.im * to_rational(s.D));
    for (std::size_t i = 0; i < n; ++i) v *= 2;
    return sqrt_rational(v, s.policy.precision);
}

UsubReport verify_usub(const FloerSetup& s, const IntVector& k, const std::vector<FiberPoint>& samples) {
    const double tol = s.policy.tol;
    LatticeCosets ls = cosets(s.D.transpose());
    ThetaSpec tk = s.theta(k);
    ThetaSpec t0 = conjugate_spec(tk);
    DD c = usub_constant(s);
    UsubReport rep;
    rep.tolerance = 10 * tol;
    for (const FiberPoint& pt : samples) {
        UsubSample smp;
        smp.point = pt;
        smp.lhs = {DD(0), DD(0)};
        const double each = tol / (2 * static_cast<double>(ls.size()));
        for (const IntVector& l : ls.representatives) smp.lhs += mu2_double(s, k, l, pt, each).value;
        CRatVector u = mirror_u_exact(s.tau, pt);
        CRatVector v = mirror_v_exact(s.tau, pt);
        smp.factor = trivialization_factor(s, pt);
        SeriesValue tu = theta_dk(tk, u, tol);
        SeriesValue tv = theta_dk(t0, v, tol);
        double sc = std::fabs(static_cast<double>(c)) * magnitude(smp.factor) *
                    (1 + magnitude(tu.value) + magnitude(tv.value));
        double e = tol / (4 * sc);
        if (e < tol) {
            tu = theta_dk(tk, u, e);
            tv = theta_dk(t0, v, e);
        }
        smp.rhs = c * (tu.value * tv.value * smp.factor);
        smp.residual = magnitude(smp.lhs - smp.rhs);
        rep.residual = std::max(rep.residual, smp.residual);
        rep.samples.push_back(std::move(smp));
    }
    return rep;
}

DiagramReport verify_main_diagram(const TorusWithBField& t, const IntMatrix& d, const std::vector<int>& xi_bits,
                                  const std::vector<IntVector>& ks, const std::vector<CRatVector>& z_grid,
                                  const NumericPolicy& policy, const IntVector& prediction_characteristic) {
    FloerSetup s = FloerSetup::make(t, d, xi_bits, policy);
    const std::size_t n = s.n();
    const double tol = policy.tol;
    LiftedBrane l0 = lift(zero_section(t), t);
    LiftedBrane ld = lift(graph_brane(t, d, xi_bits), t);
    UPartSpace space = u_part_basis(l0, ld);
    LatticeCosets cos = cosets(d);

    ThetaSpec tc = conjugate_spec(s.theta(IntVector(n, Integer(0))));
    if (!prediction_characteristic.empty()) tc.k = prediction_characteristic;
    DiagramReport rep;
    rep.tolerance = 10 * tol;
    SeriesValue th0 = relative([&](double e) { return theta_dk(tc, CRatVector(RatVector(n, Rational(0))), e); }, tol);
    rep.predicted_constant = usub_constant(s) * th0.value;

    for (const IntVector& k_in : ks) {
        IntVector k = cos.reduce(k_in);
        std::size_t which = space.members.size();
        for (std::size_t i = 0; i < space.members.size(); ++i)
            if (space.points[space.members[i].front()].k == k) which = i;
        if (which == space.members.size()) throw ValidationError("no intersection point carries k = " + to_string(k));
        FloerVector y = space.vector(which);
        for (const CRatVector& z : z_grid) {
            FiberPoint pt = fiber_point_for(s.tau, z);
            Brane fiber = lift(fiber_brane(t, pt.r, pt.phi), t).brane;
            FloerVector x{intersections(ld.brane, fiber), {}};
            x.coeffs.assign(x.basis.size(), CxDD{DD(0), DD(0)});
            if (!x.coeffs.empty()) x.coeffs.front() = {DD(1), DD(0)};

            DiagramEntry e;
            e.k = k;
            e.z = z;
            e.upart = relative(
                          [&](double tl) {
                              NumericPolicy p = policy;
                              p.tol = tl;
                              return SeriesValue{mu2_u(x, y, l0, ld, fiber, t, p).coeffs.front(), {}};
                          },
                          tol)
                          .value;
            e.base = relative([&](double tl) { return mu2_base(s, k, pt.r, pt.phi, tl); }, tol).value;
            e.rho = e.upart / e.base;
            CRational ratio = trivialization_exponent(s, pt) - mu2_base_prefactor_exponent(s, pt.r, pt.phi);
            e.trivialization_ratio = exp_pi(ratio, policy.precision);
            e.predicted = rep.predicted_constant * e.trivialization_ratio;
            rep.entries.push_back(std::move(e));
        }
    }
    if (!rep.entries.empty()) {
        const CxDD first = rep.entries.front().rho;
        for (const auto& e : rep.entries) {
            rep.spread = std::max(rep.spread, rel_diff(e.rho, first));
            rep.mismatch = std::max(rep.mismatch, rel_diff(e.rho, e.predicted));
        }
    }
    return rep;
}

UPartSelf u_part_self(const Brane& lb, const DoubledTorus& dt) {
    if (lb.ambient_dim() != dt.dim()) throw ShapeMismatch("brane does not live on this doubled torus");
    RatMatrix u = to_rational(lb.support());
    const std::size_t d = u.cols();
    RatMatrix ju = dt.J * u;
    RatMatrix ut = u.transpose();
    RatMatrix jl = inverse(ut * u) * (ut * ju);
    if (u * jl != ju) throw JNotPreserving("J does not preserve the tangent space");
    if (d % 2 != 0) throw JNotPreserving("tangent space has odd dimension");

    UPartSelf out;
    out.complex_dim = d / 2;
    // -i eigenvectors x + i·J_L x, chosen greedily from standard columns
    std::vector<RatVector> re_cols, im_cols;
    for (std::size_t j = 0; j < d && re_cols.size() < out.complex_dim; ++j) {
        RatVector e(d, Rational(0));
        e[j] = 1;
        RatVector je = jl * e;
        std::vector<RatVector> tr = re_cols, ti = im_cols;
        tr.push_back(e);
        ti.push_back(je);
        // complex rank via the real embedding [[Re, -Im], [Im, Re]]
        const std::size_t c = tr.size();
        RatMatrix emb(2 * d, 2 * c);
        for (std::size_t a = 0; a < c; ++a)
            for (std::size_t i = 0; i < d; ++i) {
                emb(i, a) = tr[a][i];
                emb(d + i, a) = ti[a][i];
                emb(i, c + a) = -ti[a][i];
                emb(d + i, c + a) = tr[a][i];
            }
        if (rank(emb) == 2 * c) {
            re_cols = std::move(tr);
            im_cols = std::move(ti);
        }
    }
    for (std::size_t a = 0; a < re_cols.size(); ++a) out.basis.push_back({u * re_cols[a], u * im_cols[a]});
    std::size_t binom = 1;
    for (std::size_t q = 0; q <= out.complex_dim; ++q) {
        out.degree_dims.push_back(binom);
        binom = binom * (out.complex_dim - q) / (q + 1);
    }
    return out;
}

}  // namespace toridouble
