#include "toridouble/brane.hpp"

#include <cmath>

namespace toridouble {

struct BraneAccess {
    static Brane& tag(Brane& b, BraneKind kind, std::optional<IntMatrix> d, bool lifted) {
        b.kind_ = kind;
        b.graph_d_ = std::move(d);
        b.lifted_ = lifted;
        return b;
    }
    static Brane copy_with(const Brane& b, const RatVector& offset, const RatMatrix& n, const RatVector& phi) {
        Brane c = b;
        c.offset_ = offset;
        c.n_ = n;
        c.phi_ = phi;
        return c;
    }
};

std::string to_string(BraneKind k) {
    switch (k) {
        case BraneKind::graph: return "graph";
        case BraneKind::fiber: return "fiber";
        case BraneKind::coisotropic: return "coisotropic";
        default: return "general";
    }
}

namespace {

int xi_with(const RatMatrix& w, const std::vector<int>& bits, const IntVector& g) {
    if (g.size() != bits.size()) throw ShapeMismatch("lattice vector length differs from brane dimension");
    Integer s = 0;
    for (std::size_t i = 0; i < g.size(); ++i) s += bits[i] * g[i];
    for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
            if (w(i, j).get_den() != 1) throw InvalidXi("curvature is not integral; no sign structure exists");
            s += g[i] * g[j] * w(i, j).get_num();
        }
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), s.get_mpz_t(), 2);
    return static_cast<int>(r.get_si());
}

Rational mod1(const Rational& q) { return q - Rational(floor_q(q)); }

Rational halves(long k) {
    Rational q(k, 2);
    q.canonicalize();
    return q;
}

}  // namespace

Brane Brane::make(const IntMatrix& support, const RatVector& offset, const RatMatrix& n_quad, const RatVector& phi,
                  std::vector<int> xi_bits, BraneKind kind) {
    const std::size_t big = support.rows(), d = support.cols();
    if (offset.size() != big) throw ShapeMismatch("offset length differs from ambient dimension");
    if (n_quad.rows() != d || n_quad.cols() != d) throw ShapeMismatch("connection matrix must be d x d");
    if (phi.size() != d) throw ShapeMismatch("flat connection part must have length d");
    if (xi_bits.empty()) xi_bits.assign(d, 0);
    if (xi_bits.size() != d) throw InvalidXi("sign structure needs one bit per generator");
    for (int b : xi_bits)
        if (b != 0 && b != 1) throw InvalidXi("sign structure bits must be 0 or 1");
    if (rank(to_rational(support)) != d) throw InvalidBrane("support columns are linearly dependent");
    if (!is_saturated(support)) throw InvalidBrane("support columns do not span a saturated sublattice");

    // U^T -> G U^T in Hermite form, so U_c = U G^T and t_old = G^T t_new
    HermiteForm hf = hnf(support.transpose());
    const IntMatrix& g = hf.U;
    RatMatrix gq = to_rational(g);
    Brane b;
    b.support_ = hf.H.transpose();
    b.offset_ = offset;
    b.n_ = gq * n_quad * gq.transpose();
    b.phi_ = gq * phi;
    RatMatrix w = n_quad.transpose() - n_quad;
    b.bits_.assign(d, 0);
    for (std::size_t j = 0; j < d; ++j) {
        if (is_integral(w)) {
            b.bits_[j] = xi_with(w, xi_bits, g.row(j));
        } else {
            Integer s = 0;
            for (std::size_t i = 0; i < d; ++i) s += g(j, i) * xi_bits[i];
            b.bits_[j] = mpz_odd_p(s.get_mpz_t()) ? 1 : 0;
        }
    }
    b.kind_ = kind;
    return b;
}

RatMatrix Brane::curvature() const { return n_.transpose() - n_; }

bool Brane::has_integral_curvature() const { return is_integral(curvature()); }

int Brane::xi(const IntVector& gamma) const { return xi_with(curvature(), bits_, gamma); }

int Brane::xi0(const IntVector& gamma) const { return xi_with(curvature(), std::vector<int>(dim(), 0), gamma); }

Brane Brane::with_xi(std::vector<int> bits) const {
    if (bits.size() != dim()) throw InvalidXi("sign structure needs one bit per generator");
    for (int v : bits)
        if (v != 0 && v != 1) throw InvalidXi("sign structure bits must be 0 or 1");
    Brane c = *this;
    c.bits_ = std::move(bits);
    return c;
}

Brane Brane::translated(const RatVector& shift) const {
    return BraneAccess::copy_with(*this, offset_ + shift, n_, phi_);
}

RatVector Brane::point(const RatVector& t) const { return offset_ + to_rational(support_) * t; }

Brane graph_brane(const TorusWithBField& t, const IntMatrix& d, std::vector<int> xi_bits) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    if (d.rows() != n || d.cols() != n) throw ShapeMismatch("D must be n x n");
    RatMatrix a = graph_curvature(t.tau(), d);
    IntMatrix u = IntMatrix::vstack(IntMatrix::identity(n), -d);
    Brane b = Brane::make(u, RatVector(2 * n, Rational(0)), Rational(-1, 2) * a, RatVector(n, Rational(0)),
                          std::move(xi_bits), BraneKind::graph);
    return BraneAccess::tag(b, BraneKind::graph, d, false);
}

Brane zero_section(const TorusWithBField& t) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    return graph_brane(t, IntMatrix(n, n));
}

Brane fiber_brane(const TorusWithBField& t, const RatVector& r0, const RatVector& phi, std::vector<int> xi_bits) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    if (r0.size() != n || phi.size() != n) throw ShapeMismatch("fiber position and flat part must have length n");
    IntMatrix u = IntMatrix::vstack(IntMatrix(n, n), IntMatrix::identity(n));
    RatVector off(2 * n, Rational(0));
    for (std::size_t i = 0; i < n; ++i) off[i] = r0[i];
    return Brane::make(u, off, RatMatrix(n, n), phi, std::move(xi_bits), BraneKind::fiber);
}

TorusWithBField standard_t4() {
    return TorusWithBField::from_tau(RatMatrix(2, 2), RatMatrix::identity(2));
}

Brane ko_brane() {
    // coordinates (r1, r2, theta1, theta2)
    RatMatrix n(4, 4);
    n(0, 3) = 1;
    n(1, 2) = -1;
    return Brane::make(IntMatrix::identity(4), RatVector(4, Rational(0)), n, RatVector(4, Rational(0)), {},
                       BraneKind::coisotropic);
}

RatMatrix restrict_form(const Brane& b, const RatMatrix& form) {
    RatMatrix u = to_rational(b.support());
    return u.transpose() * form * u;
}

namespace {

void check_ambient(const Brane& b, const TorusWithBField& t, ValidationReport& rep) {
    if (b.ambient_dim() != t.omega().rows()) {
        rep.pass = false;
        rep.failures.push_back("brane ambient dimension differs from the torus");
    }
}

}  // namespace

ValidationReport validate_lagrangian(const Brane& l, const TorusWithBField& t) {
    ValidationReport rep;
    check_ambient(l, t, rep);
    if (!rep.pass) return rep;
    if (l.dim() != static_cast<std::size_t>(t.n())) {
        rep.pass = false;
        rep.failures.push_back("dimension " + std::to_string(l.dim()) + " is not half of " +
                               std::to_string(t.omega().rows()));
    }
    if (!restrict_form(l, t.omega()).is_zero()) {
        rep.pass = false;
        rep.failures.push_back("omega does not vanish on the support");
    }
    RatMatrix g = l.curvature() + restrict_form(l, t.b_field());
    if (!g.is_zero()) {
        rep.pass = false;
        rep.failures.push_back("curvature differs from -B restricted to the support");
    }
    if (!l.has_integral_curvature()) {
        rep.pass = false;
        rep.failures.push_back("curvature is not integral");
    }
    return rep;
}

ValidationReport validate_coisotropic(const Brane& c, const TorusWithBField& t) {
    ValidationReport rep;
    check_ambient(c, t, rep);
    if (!rep.pass) return rep;
    const std::size_t d = c.dim();
    const std::size_t big = c.ambient_dim();
    RatMatrix wc = restrict_form(c, t.omega());
    RatMatrix g = c.curvature() + restrict_form(c, t.b_field());
    RatMatrix ker = nullspace(wc);
    if (ker.cols() + d != big) {
        rep.pass = false;
        rep.failures.push_back("support is not coisotropic (ker omega|_C has dimension " + std::to_string(ker.cols()) +
                               ", expected " + std::to_string(big - d) + ")");
        return rep;
    }
    if (!(g * ker).is_zero()) {
        rep.pass = false;
        rep.failures.push_back("F + B does not vanish on ker omega|_C");
    }
    // complement of the kernel by greedy extension with coordinate vectors
    RatMatrix basis = ker;
    RatMatrix comp(d, 0);
    for (std::size_t j = 0; j < d && basis.cols() < d; ++j) {
        RatMatrix e(d, 1);
        e(j, 0) = 1;
        RatMatrix trial = RatMatrix::hstack(basis, e);
        if (rank(trial) == trial.cols()) {
            basis = trial;
            comp = RatMatrix::hstack(comp, e);
        }
    }
    if (comp.cols() > 0) {
        RatMatrix wr = comp.transpose() * wc * comp;
        RatMatrix gr = comp.transpose() * g * comp;
        if (!(wr + gr * inverse(wr) * gr).is_zero()) {
            rep.pass = false;
            rep.failures.push_back("omega + (F+B) omega^{-1} (F+B) does not vanish on TC");
        }
    }
    if (!c.has_integral_curvature()) {
        rep.pass = false;
        rep.failures.push_back("curvature is not integral");
    }
    return rep;
}

CxD Holonomy::value() const {
    double c, s;
    Num<double>::sincospi(to_double(2 * turns), c, s);
    return {c, s};
}

Holonomy holonomy(const Brane& l, const IntVector& gamma, const RatVector& base) {
    if (gamma.size() != l.dim() || base.size() != l.dim()) throw ShapeMismatch("holonomy arguments must have length d");
    RatMatrix w = l.curvature();
    if (!is_integral(w)) throw InvalidXi("curvature is not integral; holonomy signs undefined");
    RatVector g = to_rational(gamma);
    Rational turns = dot(g, w * base) + dot(l.conn_flat(), g);
    turns += halves(l.xi(gamma) + l.xi0(gamma));
    return {mod1(turns)};
}

Holonomy transition_factor(const Brane& l, const IntVector& gamma, const RatVector& base) {
    if (gamma.size() != l.dim() || base.size() != l.dim()) throw ShapeMismatch("transition arguments must have length d");
    RatVector g = to_rational(gamma);
    const RatMatrix& n = l.conn_quadratic();
    Rational turns = halves(l.xi0(gamma)) - Rational(1, 2) * dot(g, n * g) - dot(g, n * base);
    return {mod1(turns)};
}

LiftedBrane lift(const Brane& cb, const TorusWithBField& t) {
    if (cb.ambient_dim() != t.omega().rows()) throw InvalidBrane("brane does not live on this torus");
    if (!cb.has_integral_curvature()) throw InvalidXi("curvature is not integral; no sign structure exists");
    bool lag = cb.dim() == static_cast<std::size_t>(t.n());
    ValidationReport rep = lag ? validate_lagrangian(cb, t) : validate_coisotropic(cb, t);
    if (!rep.pass) throw InvalidBrane("brane conditions fail: " + rep.failures.front());

    const std::size_t big = cb.ambient_dim(), d = cb.dim();
    const IntMatrix& u = cb.support();
    IntMatrix w = to_integer(cb.curvature());
    IntMatrix v = right_inverse_of_transpose(u);
    IntMatrix k = annihilator(u);
    // tangent columns: (U e_j, V W e_j) and (0, K^T e_i)
    IntMatrix ul(2 * big, big);
    ul.set_block(0, 0, u);
    ul.set_block(big, 0, v * w);
    ul.set_block(big, d, k.transpose());
    RatVector off(2 * big, Rational(0));
    for (std::size_t i = 0; i < big; ++i) off[i] = cb.offset()[i];
    RatVector c = cb.conn_flat();
    for (std::size_t j = 0; j < d; ++j) c[j] += halves(cb.xi_bits()[j]);
    RatVector xhat = to_rational(v) * c;
    for (std::size_t i = 0; i < big; ++i) off[big + i] = xhat[i];

    RatMatrix nl(big, big);
    nl.set_block(0, 0, cb.conn_quadratic());
    RatVector phil(big, Rational(0));
    for (std::size_t j = 0; j < d; ++j) phil[j] = cb.conn_flat()[j];
    std::vector<int> bits(big, 0);
    for (std::size_t j = 0; j < d; ++j) bits[j] = cb.xi_bits()[j];
    Brane lb = Brane::make(ul, off, nl, phil, bits, cb.kind());
    BraneAccess::tag(lb, cb.kind(), cb.graph_matrix(), true);
    return {lb, cb, v};
}

bool verify_lift_lagrangian(const Brane& lb, const DoubledTorus& dt) {
    if (lb.ambient_dim() != dt.dim()) return false;
    RatMatrix u = to_rational(lb.support());
    if (rank(u) != dt.dim() / 2) return false;
    return (u.transpose() * dt.Omega * u).is_zero();
}

bool verify_lift_complex(const Brane& lb, const DoubledTorus& dt) {
    if (lb.ambient_dim() != dt.dim()) return false;
    RatMatrix u = to_rational(lb.support());
    std::size_t r = rank(u);
    return rank(RatMatrix::hstack(u, dt.J * u)) == r;
}

bool same_subtorus(const Brane& a, const Brane& b) {
    if (a.ambient_dim() != b.ambient_dim() || a.dim() != b.dim()) return false;
    if (a.support() != b.support()) return false;
    IntMatrix k = annihilator(a.support());
    return is_integral(to_rational(k) * (a.offset() - b.offset()));
}

Brane transform_support(const Brane& b, const RatMatrix& map) {
    RatMatrix u = map * to_rational(b.support());
    Brane c = Brane::make(to_integer(u), map * b.offset(), b.conn_quadratic(), b.conn_flat(), b.xi_bits(), b.kind());
    return BraneAccess::tag(c, b.kind(), b.graph_matrix(), b.is_lift());
}

Brane twist_brane(const Brane& lb, const DoubledTorus& dt) {
    if (lb.ambient_dim() != dt.dim()) throw InvalidBrane("brane does not live on the doubled torus");
    const std::size_t half = dt.dim() / 2;
    RatMatrix u = to_rational(lb.support());
    RatMatrix ux = u.block(0, 0, half, u.cols());
    RatMatrix uh = u.block(half, 0, half, u.cols());
    RatVector ox(lb.offset().begin(), lb.offset().begin() + static_cast<std::ptrdiff_t>(half));
    // nabla_0 = d + 2 pi i alpha_0 with alpha_0 = -x · dx_hat
    RatMatrix n = lb.conn_quadratic() - ux.transpose() * uh;
    RatVector phi = lb.conn_flat() - uh.transpose() * ox;
    return BraneAccess::copy_with(lb, lb.offset(), n, phi);
}

}  // namespace toridouble
