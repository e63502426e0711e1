#include <random>

#include "doctest.h"
#include "toridouble/torus.hpp"

using namespace toridouble;

namespace {

RatMatrix standard_form(std::size_t n) {
    RatMatrix m(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        m(i, n + i) = 1;
        m(n + i, i) = -1;
    }
    return m;
}

RatMatrix random_antisymmetric(std::mt19937& rng, std::size_t dim, int range) {
    std::uniform_int_distribution<int> num(-range, range), den(1, 3);
    RatMatrix m(dim, dim);
    for (std::size_t i = 0; i < dim; ++i)
        for (std::size_t j = i + 1; j < dim; ++j) {
            m(i, j) = Rational(num(rng), den(rng));
            m(i, j).canonicalize();
            m(j, i) = -m(i, j);
        }
    return m;
}

// random nondegenerate tori satisfying the duality assumption
std::vector<TorusWithBField> random_tori(std::mt19937& rng, std::size_t count) {
    std::vector<TorusWithBField> out;
    while (out.size() < count) {
        std::size_t n = 1 + rng() % 2;
        RatMatrix w = random_antisymmetric(rng, 2 * n, 3);
        if (det(w) == 0) continue;
        RatMatrix b = random_antisymmetric(rng, 2 * n, 2);
        TorusWithBField t = TorusWithBField::from_forms(w, b);
        if (t.satisfies_duality_assumption()) out.push_back(t);
    }
    return out;
}

RatMatrix shear(const RatMatrix& b, int sign) {
    const std::size_t m = b.rows();
    RatMatrix s = RatMatrix::identity(2 * m);
    s.set_block(m, 0, Rational(sign) * b);
    return s;
}

}  // namespace

TEST_CASE("split torus forms") {
    TorusWithBField t = TorusWithBField::from_tau(RatMatrix{{Rational(1, 2)}}, RatMatrix{{Rational(3)}});
    CHECK(t.omega() == Rational(3) * standard_form(1));
    CHECK(t.b_field() == Rational(1, 2) * standard_form(1));
    CHECK(t.is_split());
    CHECK_THROWS_AS(TorusWithBField::from_tau(RatMatrix{{0}}, RatMatrix{{-1}}), InvalidTorus);
    CHECK_THROWS_AS(TorusWithBField::from_forms(RatMatrix{{0, 1}, {1, 0}}, RatMatrix(2, 2)), InvalidTorus);
}

TEST_CASE("dual torus of a split n=1 torus is -tau^{-1}") {
    // tau = 1/2 + i: -tau^{-1} = -2/5 + 4/5 i
    TorusWithBField t = TorusWithBField::from_tau(RatMatrix{{Rational(1, 2)}}, RatMatrix{{1}});
    TorusWithBField d = dual_torus(t);
    CHECK(d.omega() == Rational(4, 5) * standard_form(1));
    CHECK(d.b_field() == Rational(-2, 5) * standard_form(1));
}

TEST_CASE("dual torus with B = 0 inverts omega") {
    TorusWithBField t = TorusWithBField::from_tau(RatMatrix(2, 2), RatMatrix{{2, 0}, {0, 3}});
    TorusWithBField d = dual_torus(t);
    CHECK(d.omega() == -inverse(t.omega()));
    CHECK(d.b_field().is_zero());
}

TEST_CASE("dual torus is an involution") {
    std::mt19937 rng(7);
    for (const auto& t : random_tori(rng, 40)) CHECK(dual_torus(dual_torus(t)) == t);
}

TEST_CASE("duality assumption violation") {
    RatMatrix b{{0, -1, -1, -1}, {1, 0, 1, 1}, {1, -1, 0, 1}, {1, -1, -1, 0}};
    TorusWithBField t = TorusWithBField::from_forms(standard_form(2), b);
    CHECK_FALSE(t.satisfies_duality_assumption());
    CHECK_THROWS_AS(dual_torus(t), DualityAssumptionViolated);
    CHECK_THROWS_AS(double_torus(t), DualityAssumptionViolated);
}

TEST_CASE("doubled standard four-torus") {
    TorusWithBField t = TorusWithBField::from_tau(RatMatrix(2, 2), RatMatrix::identity(2));
    DoubledTorus dt = double_torus(t);
    // 1/2 (dr∧dtheta + dr_hat∧dtheta_hat)
    RatMatrix expect(8, 8);
    expect.set_block(0, 0, Rational(1, 2) * standard_form(2));
    expect.set_block(4, 4, Rational(1, 2) * standard_form(2));
    CHECK(dt.Omega == expect);
    RatMatrix sigma(8, 8);
    for (std::size_t j = 0; j < 4; ++j) {
        sigma(j, 4 + j) = Rational(1, 2);
        sigma(4 + j, j) = Rational(-1, 2);
    }
    CHECK(dt.sigma0 == sigma);
}

TEST_CASE("J is the sheared product and squares to -Id") {
    // n = 1, a = b = 1
    TorusWithBField t = TorusWithBField::from_tau(RatMatrix{{1}}, RatMatrix{{1}});
    DoubledTorus dt = double_torus(t);
    const RatMatrix& w = t.omega();
    RatMatrix mid = RatMatrix::blocks(RatMatrix(2, 2), inverse(w), -w, RatMatrix(2, 2));
    RatMatrix expect = shear(t.b_field(), -1) * mid * shear(t.b_field(), 1);
    CHECK(dt.J == expect);

    std::mt19937 rng(11);
    for (const auto& r : random_tori(rng, 40)) {
        DoubledTorus d = double_torus(r);
        const std::size_t m = d.dim();
        CHECK(d.J * d.J == -RatMatrix::identity(m));
        // shear-conjugated J is the B = 0 structure
        RatMatrix w0 = r.omega();
        RatMatrix j_plain = RatMatrix::blocks(RatMatrix(m / 2, m / 2), inverse(w0), -w0, RatMatrix(m / 2, m / 2));
        CHECK(shear(r.b_field(), 1) * d.J * shear(r.b_field(), -1) == j_plain);
        // Omega = shear^T diag(omega, -omega^{-1}) shear / 2
        RatMatrix diag = RatMatrix::blocks(w0, RatMatrix(m / 2, m / 2), RatMatrix(m / 2, m / 2), -inverse(w0));
        CHECK(d.Omega == Rational(1, 2) * (shear(r.b_field(), 1).transpose() * diag * shear(r.b_field(), 1)));
        CHECK(b_shear(r) == shear(r.b_field(), 1));
    }
}

TEST_CASE("mirror period and mirror of the double") {
    TorusWithBField t1 = TorusWithBField::from_tau(RatMatrix{{0}}, RatMatrix{{1}});
    CHECK(mirror_period(t1).tau == CRatMatrix{RatMatrix{{0}}, RatMatrix{{1}}});
    TorusWithBField t2 = TorusWithBField::from_tau(RatMatrix(2, 2), RatMatrix{{1, 0}, {0, 2}});
    CHECK(mirror_period(t2).tau.im == RatMatrix{{1, 0}, {0, 2}});
    RatMatrix w = standard_form(2);
    w(0, 1) = 1;
    w(1, 0) = -1;
    TorusWithBField ns = TorusWithBField::from_forms(w, RatMatrix(4, 4));
    CHECK_FALSE(ns.is_split());
    CHECK_THROWS_AS(mirror_period(ns), NotSplit);

    MirrorOfDouble m1 = mirror_of_double(t1);
    CHECK(m1.tau_u == m1.tau_v);
    TorusWithBField t3 = TorusWithBField::from_tau(RatMatrix{{1}}, RatMatrix{{2}});
    MirrorOfDouble m3 = mirror_of_double(t3);
    CHECK(m3.tau_u == CRatMatrix{RatMatrix{{1}}, RatMatrix{{2}}});
    CHECK(m3.tau_v == CRatMatrix{RatMatrix{{-1}}, RatMatrix{{2}}});
}

TEST_CASE("mirror coordinates") {
    CRatMatrix tau{RatMatrix{{1, Rational(1, 2)}, {0, 0}}, RatMatrix{{2, 0}, {0, 1}}};
    RatVector zero(2, Rational(0));
    for (const auto& u : mirror_u<double>(tau, zero, zero, zero)) CHECK(cabs(u) == 0.0);
    for (const auto& v : mirror_v<double>(tau, zero, zero, zero)) CHECK(cabs(v) == 0.0);
    // hand values: r - kappa = (1, 2), phi = (1/4, 0)
    RatVector r{Rational(3, 2), 2}, kappa{Rational(1, 2), 0}, phi{Rational(1, 4), 0}, th{Rational(1, 8), 1};
    auto u = mirror_u<double>(tau, r, kappa, phi);
    CHECK(u[0].re == doctest::Approx(1 - 0.25));
    CHECK(u[0].im == doctest::Approx(2));
    CHECK(u[1].re == doctest::Approx(0.5));
    CHECK(u[1].im == doctest::Approx(2));
    // v = -conj(tau)^T kappa - theta_hat - phi
    auto v = mirror_v<double>(tau, kappa, th, phi);
    CHECK(v[0].re == doctest::Approx(-0.5 - 0.125 - 0.25));
    CHECK(v[0].im == doctest::Approx(1));
    CHECK(v[1].re == doctest::Approx(-0.25 - 1));
    CHECK(v[1].im == doctest::Approx(0));
}

TEST_CASE("mirror Chern data") {
    TorusWithBField t1 = TorusWithBField::from_tau(RatMatrix{{0}}, RatMatrix{{1}});
    CHECK(mirror_chern(IntMatrix{{1}}, t1).degree == 1);
    CHECK(mirror_chern(IntMatrix{{0}}, t1).degree == 0);
    TorusWithBField t2 = TorusWithBField::from_tau(RatMatrix(2, 2), RatMatrix::identity(2));
    CHECK(mirror_chern(IntMatrix{{3, 0}, {0, 3}}, t2).degree == 9);
    CHECK(mirror_chern(IntMatrix{{2, 1}, {1, 1}}, t2).degree == 1);
    // Im tau D not symmetric
    CHECK_THROWS_AS(mirror_chern(IntMatrix{{1, 1}, {0, 1}}, t2), InadmissibleD);
    // Re tau D - D^T Re tau^T not integral
    TorusWithBField t3 = TorusWithBField::from_tau(RatMatrix{{0, Rational(1, 2)}, {0, 0}}, RatMatrix::identity(2));
    CHECK_THROWS_AS(mirror_chern(IntMatrix::identity(2), t3), InadmissibleD);
    CHECK(graph_curvature(t3.tau(), IntMatrix{{2, 0}, {0, 2}}) == RatMatrix{{0, 1}, {-1, 0}});
}

TEST_CASE("SYZ frame map") {
    RatMatrix m = syz_frame_map(1);
    CHECK(m * m == RatMatrix::identity(4));
    CHECK(m(0, 0) == 1);
    CHECK(m(3, 3) == -1);
}
