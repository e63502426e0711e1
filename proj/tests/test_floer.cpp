#include <set>

#include "doctest.h"
#include "toridouble/floer.hpp"
#include "toridouble/lattice.hpp"

using namespace toridouble;

namespace {

// frozen from a 30-digit brute-force sum, tau = 1/2 + i, D = 2, xi = 1, k = l = 1,
// r = 1/5, phi = 1/10, theta_hat = -1/10, kappa = 0
const std::complex<double> kDouble{0.41403544846500881737, 0.32115881422254532374};
const std::complex<double> kBase{0.41249482751993716462, 0.31996378612115935129};

NumericPolicy policy(double tol = 1e-12) {
    NumericPolicy p;
    p.tol = tol;
    return p;
}

TorusWithBField t1(const char* tau) {
    CRational q = parse_complex(tau);
    return TorusWithBField::from_tau(RatMatrix{{q.re}}, RatMatrix{{q.im}});
}

TorusWithBField square2() { return TorusWithBField::from_tau(RatMatrix(2, 2), RatMatrix::identity(2)); }

RatVector rv(std::initializer_list<Rational> xs) { return RatVector(xs); }

CRatVector cz(std::initializer_list<const char*> xs) {
    CRatVector v;
    for (const char* x : xs) {
        CRational q = parse_complex(x);
        v.re.push_back(q.re);
        v.im.push_back(q.im);
    }
    return v;
}

}  // namespace

TEST_CASE("intersection counts and labels") {
    TorusWithBField t = t1("i");
    Brane l0 = zero_section(t);
    auto pts = intersections(l0, graph_brane(t, IntMatrix{{3}}));
    REQUIRE(pts.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) CHECK(pts[i].k == IntVector{static_cast<long>(i)});
    CHECK_THROWS_AS(intersections(l0, l0), NonTransversal);

    TorusWithBField t2 = square2();
    IntMatrix d{{2, 1}, {1, 3}};
    CHECK(intersections(zero_section(t2), graph_brane(t2, d)).size() == 5);

    LiftedBrane a = lift(l0, t), b = lift(graph_brane(t, IntMatrix{{3}}), t);
    auto lifted = intersections(a, b);
    CHECK(lifted.size() == 9);
    std::set<std::pair<std::string, std::string>> labels;
    for (const auto& p : lifted) labels.insert({to_string(p.k), to_string(p.l)});
    CHECK(labels.size() == 9);
    CHECK(intersections(lift(zero_section(t2), t2), lift(graph_brane(t2, d), t2)).size() == 25);
}

TEST_CASE("base product against a brute-force sum") {
    FloerSetup s = FloerSetup::make(t1("1/2+i"), IntMatrix{{2}}, {1}, policy());
    RatVector r = rv({Rational(1, 5)}), phi = rv({Rational(1, 10)});
    SeriesValue v = mu2_base(s, IntVector{1}, r, phi);
    CHECK(std::abs(to_std(v.value) - kBase) < 1e-11);
    // prefactor times theta_{D,k}(tau r - phi)
    CRatVector z{s.tau.re * r - phi, s.tau.im * r};
    CxDD th = theta_dk(s.theta(IntVector{1}), z).value;
    CxDD pref = exp_pi(mu2_base_prefactor_exponent(s, r, phi), Precision::binary64);
    CHECK(cabs(pref * th - v.value) < 1e-11);
}

TEST_CASE("doubled product against a brute-force sum") {
    FloerSetup s = FloerSetup::make(t1("1/2+i"), IntMatrix{{2}}, {1}, policy());
    FiberPoint pt = lifted_fiber_point(rv({Rational(1, 5)}), rv({Rational(1, 10)}));
    CHECK(pt.theta_hat == rv({Rational(-1, 10)}));
    SeriesValue v = mu2_double(s, IntVector{1}, IntVector{1}, pt);
    CHECK(std::abs(to_std(v.value) - kDouble) < 1e-11);
}

TEST_CASE("generators p and q") {
    FloerSetup s = FloerSetup::make(square2(), IntMatrix{{2, 1}, {1, 3}}, {0, 0}, policy());
    CHECK(generator_p(s, IntVector{1, 0}) == rv({Rational(3, 5), Rational(-1, 5)}));
    // A = 0 here, q = D^{-T} l
    CHECK(generator_q(s, IntVector{1, 0}, IntVector{0, 1}) == rv({Rational(-1, 5), Rational(2, 5)}));
    CHECK_THROWS_AS(FloerSetup::make(square2(), IntMatrix{{1, 1}, {0, 1}}, {0, 0}, policy()), InadmissibleD);
}

TEST_CASE("fiber points") {
    TorusWithBField t = t1("1/2+i");
    CRatVector z = cz({"1/3+1/4i"});
    FiberPoint pt = fiber_point_for(t.tau(), z);
    CHECK(t.tau().re * pt.r - pt.phi == z.re);
    CHECK(t.tau().im * pt.r == z.im);
    Brane f = lift(fiber_brane(t, pt.r, pt.phi), t).brane;
    FiberPoint back = fiber_point_of(f, 1);
    CHECK(back.r == pt.r);
    CHECK(back.phi == pt.phi);
    CHECK(back.theta_hat == Rational(-1) * pt.phi);
    CHECK(back.kappa == rv({0}));
    CHECK_THROWS_AS(fiber_point_of(lift(zero_section(t), t).brane, 1), UnsupportedTriple);
}

TEST_CASE("u-part projection") {
    TorusWithBField t = t1("i");
    UPartSpace sp = u_part_basis(lift(zero_section(t), t), lift(graph_brane(t, IntMatrix{{3}}), t));
    CHECK(sp.dim() == 3);
    CHECK(sp.points.size() == 9);
    for (std::size_t i = 0; i < sp.dim(); ++i) {
        FloerVector v = sp.vector(i);
        CHECK(v.basis.size() == 3);
        FloerVector pv = project_u(v, sp);
        REQUIRE(pv.coeffs.size() == sp.points.size());
        const IntVector& k = v.basis.front().k;
        for (std::size_t j = 0; j < pv.coeffs.size(); ++j) {
            double want = pv.basis[j].k == k ? 1.0 : 0.0;
            CHECK(std::abs(to_std(pv.coeffs[j]) - std::complex<double>(want, 0)) < 1e-15);
        }
    }
    // a single generator spreads evenly over its k
    FloerVector one{{sp.points[sp.members[1][0]]}, {CxDD{DD(1), DD(0)}}};
    FloerVector p1 = project_u(one, sp);
    for (std::size_t j = 0; j < p1.coeffs.size(); ++j) {
        double want = p1.basis[j].k == one.basis[0].k ? 1.0 / 3 : 0.0;
        CHECK(std::abs(to_std(p1.coeffs[j]) - std::complex<double>(want, 0)) < 1e-15);
    }
}

TEST_CASE("u-substitution") {
    for (long d : {1L, 2L, 3L}) {
        FloerSetup s = FloerSetup::make(t1("1/2+i"), IntMatrix{{d}}, {static_cast<int>(d % 2)}, policy());
        std::vector<FiberPoint> pts;
        pts.push_back(lifted_fiber_point(rv({Rational(1, 5)}), rv({Rational(1, 10)})));
        pts.push_back({rv({Rational(2, 7)}), rv({Rational(-1, 3)}), rv({Rational(1, 4)}), rv({Rational(1, 6)})});
        for (long k = 0; k < d; ++k) {
            UsubReport rep = verify_usub(s, IntVector{k}, pts);
            CHECK(rep.pass());
            CHECK(rep.residual < 1e-10);
        }
    }
    FloerSetup s2 = FloerSetup::make(square2(), IntMatrix{{2, 1}, {1, 1}}, {0, 1}, policy());
    FiberPoint pt{rv({Rational(1, 5), Rational(-1, 3)}), rv({Rational(1, 10), Rational(1, 4)}),
                  rv({Rational(1, 7), 0}), rv({Rational(1, 9), Rational(1, 2)})};
    CHECK(verify_usub(s2, IntVector{0, 0}, {pt}).pass());
    // sqrt(2^2 det D)
    CHECK(std::abs(usub_constant(s2).hi - 2.0) < 1e-15);
}

TEST_CASE("main diagram and negative control") {
    TorusWithBField t = t1("1/2+i");
    // theta_{2,1}(1/4) = 0, so real points are avoided
    std::vector<CRatVector> zs{cz({"1/10+1/5i"}), cz({"-1/3+1/2i"}), cz({"1/4+1/3i"})};
    DiagramReport rep = verify_main_diagram(t, IntMatrix{{2}}, {0}, {IntVector{0}, IntVector{1}}, zs, policy());
    CHECK(rep.entries.size() == 6);
    CHECK(rep.pass());
    for (const auto& e : rep.entries) CHECK(cabs(e.trivialization_ratio - CxDD{DD(1), DD(0)}) < 1e-12);
    DiagramReport bad = verify_main_diagram(t, IntMatrix{{2}}, {0}, {IntVector{0}}, zs, policy(), IntVector{1});
    CHECK(bad.spread <= bad.tolerance);
    CHECK(bad.mismatch > bad.tolerance);
}

TEST_CASE("unsupported triples") {
    TorusWithBField t = t1("i");
    LiftedBrane l0 = lift(zero_section(t), t);
    LiftedBrane l1 = lift(graph_brane(t, IntMatrix{{1}}), t);
    LiftedBrane l2 = lift(graph_brane(t, IntMatrix{{2}}), t);
    Brane f = lift(fiber_brane(t, rv({Rational(1, 5)}), rv({0})), t).brane;
    FloerVector x{intersections(l2.brane, f), {}};
    x.coeffs.assign(x.basis.size(), CxDD{DD(1), DD(0)});
    FloerVector y{intersections(l1, l2), {}};
    y.coeffs.assign(y.basis.size(), CxDD{DD(1), DD(0)});
    CHECK_THROWS_AS(mu2_u(x, y, l1, l2, f, t, policy()), UnsupportedTriple);
    CHECK_THROWS_AS(mu2_u(x, y, l0, l2, l2.brane, t, policy()), UnsupportedTriple);
}

TEST_CASE("self-Floer u-part dimensions") {
    for (int n : {1, 2}) {
        TorusWithBField t = TorusWithBField::from_tau(RatMatrix(n, n), RatMatrix::identity(n));
        UPartSelf u = u_part_self(lift(zero_section(t), t), double_torus(t));
        CHECK(u.complex_dim == static_cast<std::size_t>(n));
        CHECK(u.degree_dims == (n == 1 ? std::vector<std::size_t>{1, 1} : std::vector<std::size_t>{1, 2, 1}));
    }
    TorusWithBField t4 = standard_t4();
    UPartSelf ko = u_part_self(lift(ko_brane(), t4), double_torus(t4));
    CHECK(ko.degree_dims == std::vector<std::size_t>{1, 2, 1});

    TorusWithBField t = t1("i");
    Brane plane = Brane::make(IntMatrix{{1, 0}, {0, 1}, {0, 0}, {0, 0}}, RatVector(4, Rational(0)), RatMatrix(2, 2),
                              RatVector(2, Rational(0)));
    CHECK_THROWS_AS(u_part_self(plane, double_torus(t)), JNotPreserving);
}
