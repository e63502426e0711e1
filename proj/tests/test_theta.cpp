#include "doctest.h"
#include "toridouble/theta.hpp"

using namespace toridouble;

namespace {

// frozen from a 40-digit brute-force sum of the defining series
struct Frozen {
    double re, im;
};

constexpr Frozen kJacobi{1.132801311004878635, -0.082058295842218811109};
constexpr Frozen kRank1{0.39754344095612280737, -0.27571557886342177293};
constexpr Frozen kSheared{1.1852381524374265769, 0.041464758487189640703};
constexpr Frozen kDiagonal{0.021236129323473735368, 0.082714867152442987449};
constexpr Frozen kIdentity1{1.4882199009428924927, -0.17442774398179169894};
constexpr Frozen kIdentity2{1.2949308135853220083, 0.42175706528151178647};

CRational c(const char* s) { return parse_complex(s); }

CRatVector cv(std::initializer_list<const char*> xs) {
    CRatVector v;
    for (const char* x : xs) {
        CRational q = c(x);
        v.re.push_back(q.re);
        v.im.push_back(q.im);
    }
    return v;
}

NumericPolicy policy(double tol = 1e-12, Precision p = Precision::binary64) {
    NumericPolicy pol;
    pol.tol = tol;
    pol.precision = p;
    return pol;
}

double dist(const CxDD& v, const Frozen& f) { return std::abs(to_std(v) - std::complex<double>(f.re, f.im)); }

ThetaSpec jacobi() { return {CRatMatrix{RatMatrix{{0}}, RatMatrix{{1}}}, IntMatrix{{1}}, IntVector{0}, {}, policy()}; }

ThetaSpec rank1() {
    return {CRatMatrix{RatMatrix{{Rational(1, 2)}}, RatMatrix{{1}}}, IntMatrix{{2}}, IntVector{1}, {1}, policy()};
}

ThetaSpec sheared() {
    return {CRatMatrix{RatMatrix{{0, 1}, {0, 0}}, RatMatrix::identity(2)}, IntMatrix{{2, 1}, {1, 1}}, IntVector{1, 0},
            {1, 0}, policy()};
}

ThetaSpec diagonal() {
    return {CRatMatrix{RatMatrix{{Rational(1, 2), 0}, {0, Rational(1, 3)}}, RatMatrix::identity(2)},
            IntMatrix{{2, 0}, {0, 3}}, IntVector{1, 2}, {0, 1}, policy()};
}

}  // namespace

TEST_CASE("theta values against brute-force sums") {
    CHECK(dist(theta_dk(jacobi(), cv({"1/10+1/5i"})).value, kJacobi) < 1e-11);
    CHECK(dist(theta_dk(rank1(), cv({"1/5+1/10i"})).value, kRank1) < 1e-11);
    CHECK(dist(theta_dk(sheared(), cv({"1/10+1/20i", "-1/5+1/10i"})).value, kSheared) < 1e-11);
    CHECK(dist(theta_dk(diagonal(), cv({"3/10-1/10i", "1/4+1/5i"})).value, kDiagonal) < 1e-11);
}

TEST_CASE("double-double evaluation") {
    ThetaSpec s = sheared();
    s.policy = policy(1e-24, Precision::double_double);
    SeriesValue v = theta_dk(s, cv({"1/10+1/20i", "-1/5+1/10i"}));
    // the same oracle value to all 20 printed digits
    CxDD want{dd_from_rational(parse_rational("1.1852381524374265769")),
              dd_from_rational(parse_rational("0.041464758487189640703"))};
    CHECK(cabs(v.value - want) < 1e-18);
    CHECK(v.cert.tail_bound <= 1e-24);
    CHECK(v.cert.lambda_min > 0);
}

TEST_CASE("sign cocycle") {
    ThetaSpec s = sheared();
    // bits (1, 0), A = [[0, 1], [-1, 0]]
    CHECK(theta_xi(s, IntVector{1, 0}) == 1);
    CHECK(theta_xi(s, IntVector{0, 1}) == 0);
    CHECK(theta_xi(s, IntVector{1, 1}) == 0);
    CHECK(theta_xi(s, IntVector{-3, 5}) == 0);
    CHECK(theta_xi(s, IntVector{2, 3}) == 0);
    CHECK(theta_xi(s, IntVector{1, 3}) == 0);
    CHECK(theta_xi(s, IntVector{3, 2}) == 1);
}

TEST_CASE("quasi-periodicity and characteristic shift") {
    for (ThetaSpec s : {jacobi(), rank1(), sheared(), diagonal()}) {
        const std::size_t n = s.n();
        CRatVector z = n == 1 ? cv({"1/7+1/9i"}) : cv({"1/7+1/9i", "-2/7+1/11i"});
        for (std::size_t i = 0; i < n; ++i)
            for (long step : {1L, -1L, 2L}) {
                IntVector h(n, Integer(0));
                h[i] = step;
                QuasiPeriodicityCheck q = verify_quasi_periodicity(s, z, h);
                CHECK(q.residual.value < 1e-10);
                CHECK(q.residual.pass());
                CharacteristicShiftCheck cs = verify_characteristic_shift(s, z, h);
                CHECK(cs.residual.value < 1e-10);
                CHECK(verify_integer_periodicity(s, z, h).value < 1e-10);
            }
    }
}

TEST_CASE("conjugate characteristic") {
    ThetaSpec s = sheared();
    s.k = IntVector{0, 0};
    ThetaSpec cs = conjugate_spec(s);
    CHECK(cs.tau.re == Rational(-1) * s.tau.re);
    CHECK(cs.xi_bits == s.xi_bits);
    // theta_{-conj tau}(z) = conj theta_tau(-conj z) when k = 0
    CRatVector z = cv({"1/10+1/20i", "-1/5+1/10i"});
    CRatVector mz{Rational(-1) * z.re, z.im};
    std::complex<double> a = to_std(theta_dk(cs, z).value), b = to_std(theta_dk(s, mz).value);
    CHECK(std::abs(a - std::conj(b)) < 1e-11);
}

TEST_CASE("admissibility") {
    ThetaSpec s = jacobi();
    s.D = IntMatrix{{-1}};
    CHECK_THROWS_AS(check_admissible(s), InadmissibleSpec);
    ThetaSpec t = sheared();
    t.D = IntMatrix{{1, 1}, {0, 1}};
    CHECK_THROWS_AS(check_admissible(t), InadmissibleSpec);
    ThetaSpec u = sheared();
    u.tau.re = RatMatrix{{0, Rational(1, 2)}, {0, 0}};
    u.D = IntMatrix::identity(2);
    CHECK_THROWS_AS(check_admissible(u), InadmissibleSpec);
    ThetaSpec v = sheared();
    v.xi_bits = {2, 0};
    CHECK_THROWS_AS(check_admissible(v), InadmissibleSpec);
    ThetaSpec w = sheared();
    w.k = IntVector{1};
    CHECK_THROWS_AS(theta_dk(w, cv({"0", "0"})), InadmissibleSpec);
}

TEST_CASE("truncation budget") {
    ThetaSpec s = jacobi();
    s.tau.im = RatMatrix{{Rational(1, 1000)}};
    s.policy.max_radius = 2;
    CHECK_THROWS_AS(theta_dk(s, cv({"0"})), TruncationBudgetExceeded);
}

TEST_CASE("periodized gaussian identities") {
    IdentityOneCheck one = verify_identity_1(c("1/2+i"), c("3/10+1/10i"), policy());
    CHECK(one.residual.value < 1e-10);
    CHECK(dist(one.theta_form, kIdentity1) < 1e-11);
    CHECK(dist(one.lattice_form, kIdentity1) < 1e-10);
    CHECK(dist(one.poisson_form, kIdentity1) < 1e-10);

    IdentityTwoCheck two = verify_identity_2(c("-3/10+7/10i"), c("1/5"), c("1/10-1/5i"), policy());
    CHECK(two.residual.value < 1e-10);
    CHECK(dist(two.rhs, kIdentity2) < 1e-11);
    CHECK(dist(two.lhs, kIdentity2) < 1e-10);

    CHECK_THROWS_AS(verify_identity_1(c("1/2"), c("0"), policy()), InadmissibleSpec);
}
