#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <cstring>
#include <random>

#include "doctest.h"
#include "toridouble/lattice_sum.hpp"

using namespace toridouble;
using Big = boost::multiprecision::cpp_bin_float_50;

namespace {

bool same_bits(double a, double b) { return std::memcmp(&a, &b, sizeof a) == 0; }

Big big_pi() { return boost::math::constants::pi<Big>(); }

Big to_big(const DD& x) { return Big(x.hi) + Big(x.lo); }

std::vector<double> edge_values() {
    return {0.0, -0.0, 1.0, -1.0, 0.5, -0.5, 0.25, 1e-300, -1e-300, 700.0, 709.0, 709.7, 710.0, -707.0, -708.0,
            -745.0, -1000.0, 1e6, -1e6, 123.456, -0.125, 3.0, 1.5, 2.5, 1e-8, 0.75, -0.75, 1.25};
}

}  // namespace

TEST_CASE("scalar exp and sincospi accuracy") {
    std::mt19937_64 rng(1);
    std::uniform_real_distribution<double> ex(-700.0, 700.0);
    double worst = 0;
    for (int i = 0; i < 20000; ++i) {
        double x = ex(rng);
        double got = Num<double>::exp(x);
        double want = static_cast<double>(boost::multiprecision::exp(Big(x)));
        worst = std::max(worst, std::fabs(got - want) / want);
    }
    CHECK(worst < 4e-16);
    CHECK(Num<double>::exp(0.0) == 1.0);
    CHECK(Num<double>::exp(-708.5) == 0.0);
    CHECK(std::isinf(Num<double>::exp(710.0)));

    std::uniform_real_distribution<double> ph(-1000.0, 1000.0);
    double worst_trig = 0;
    for (int i = 0; i < 20000; ++i) {
        double x = ph(rng);
        double c, s;
        Num<double>::sincospi(x, c, s);
        Big bx = Big(x) * big_pi();
        worst_trig = std::max(worst_trig, std::fabs(c - static_cast<double>(boost::multiprecision::cos(bx))));
        worst_trig = std::max(worst_trig, std::fabs(s - static_cast<double>(boost::multiprecision::sin(bx))));
    }
    CHECK(worst_trig < 4e-16);
    double c, s;
    Num<double>::sincospi(0.5, c, s);
    CHECK(c == 0.0);
    CHECK(s == 1.0);
    Num<double>::sincospi(1.0, c, s);
    CHECK(c == -1.0);
    CHECK(s == 0.0);
    Num<double>::sincospi(-0.5, c, s);
    CHECK(s == -1.0);
}

TEST_CASE("simd kernels match the scalar reference bit for bit") {
    const kernels::KernelSet* simd = kernels::avx2_kernels();
    if (simd == nullptr) {
        MESSAGE("AVX2 not available; equivalence not exercised");
        return;
    }
    const kernels::KernelSet& ref = kernels::scalar_kernels();
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> ex(-720.0, 720.0), ph(-1e4, 1e4);
    for (std::size_t n : {0u, 1u, 3u, 4u, 5u, 7u, 8u, 31u, 1024u, 1027u}) {
        std::vector<double> re(n), p(n);
        for (std::size_t i = 0; i < n; ++i) {
            re[i] = ex(rng);
            p[i] = ph(rng);
        }
        std::vector<double> a_re(n), a_im(n), b_re(n), b_im(n);
        ref.exp_cispi(re.data(), p.data(), a_re.data(), a_im.data(), n);
        simd->exp_cispi(re.data(), p.data(), b_re.data(), b_im.data(), n);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(same_bits(a_re[i], b_re[i]));
            CHECK(same_bits(a_im[i], b_im[i]));
        }
        kernels::LaneSums la, lb;
        ref.accumulate(a_re.data(), a_im.data(), n, la);
        simd->accumulate(a_re.data(), a_im.data(), n, lb);
        for (int l = 0; l < 4; ++l) {
            CHECK(same_bits(la.re_sum[l], lb.re_sum[l]));
            CHECK(same_bits(la.re_err[l], lb.re_err[l]));
            CHECK(same_bits(la.im_sum[l], lb.im_sum[l]));
            CHECK(same_bits(la.im_err[l], lb.im_err[l]));
        }
    }
    // edge inputs, every pairing
    std::vector<double> e = edge_values();
    std::vector<double> re, p;
    for (double a : e)
        for (double b : e) {
            re.push_back(a);
            p.push_back(b);
        }
    const std::size_t n = re.size();
    std::vector<double> a_re(n), a_im(n), b_re(n), b_im(n);
    ref.exp_cispi(re.data(), p.data(), a_re.data(), a_im.data(), n);
    simd->exp_cispi(re.data(), p.data(), b_re.data(), b_im.data(), n);
    int mismatches = 0;
    for (std::size_t i = 0; i < n; ++i)
        if (!same_bits(a_re[i], b_re[i]) || !same_bits(a_im[i], b_im[i])) ++mismatches;
    CHECK(mismatches == 0);
}

TEST_CASE("double-double arithmetic against 50-digit reference") {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    const Big tol = Big(1e-30);
    for (int i = 0; i < 2000; ++i) {
        DD a = DD(u(rng)) + DD(u(rng) * 1e-17);
        DD b = DD(u(rng)) + DD(u(rng) * 1e-17);
        Big ba = to_big(a), bb = to_big(b);
        Big scale = abs(ba) + abs(bb) + 1;
        CHECK(abs(to_big(a + b) - (ba + bb)) <= tol * scale);
        CHECK(abs(to_big(a * b) - ba * bb) <= tol * scale * scale);
        if (abs(bb) > Big(1e-3)) CHECK(abs(to_big(a / b) - ba / bb) <= tol * abs(ba / bb) * 4 + Big(1e-300));
    }
    std::uniform_real_distribution<double> ex(-300.0, 300.0);
    for (int i = 0; i < 500; ++i) {
        DD x = DD(ex(rng));
        Big want = boost::multiprecision::exp(to_big(x));
        CHECK(abs(to_big(dd_exp(x)) - want) <= Big(1e-30) * want);
    }
    std::uniform_real_distribution<double> ph(-50.0, 50.0);
    for (int i = 0; i < 500; ++i) {
        DD x = DD(ph(rng)) + DD(ph(rng) * 1e-18);
        DD c, s;
        dd_sincospi(x, c, s);
        Big bx = to_big(x) * big_pi();
        CHECK(abs(to_big(c) - boost::multiprecision::cos(bx)) <= Big(1e-30));
        CHECK(abs(to_big(s) - boost::multiprecision::sin(bx)) <= Big(1e-30));
    }
    DD two(2.0);
    CHECK(abs(to_big(dd_sqrt(two)) - boost::multiprecision::sqrt(Big(2))) <= Big(1e-31));
    CHECK(abs(to_big(dd_from_rational(Rational(1, 3))) - Big(1) / 3) <= Big(1e-32));
    CHECK(abs(to_big(dd_pi) - big_pi()) <= Big(1e-32));
}

TEST_CASE("certified truncation radius") {
    RatMatrix one{{1}};
    TruncationCertificate c = truncation_radius(one, 0.0, 1e-12);
    CHECK(c.radius <= 4);
    CHECK(c.tail_bound <= 1e-12);
    // the bound is honest: the actual tail of sum exp(-pi m^2) beyond the radius
    double tail = 0;
    for (int m = c.radius + 1; m < 60; ++m) tail += 2 * std::exp(-3.141592653589793 * m * m);
    CHECK(tail <= c.tail_bound);
    CHECK(truncation_radius(one, 0.0, 1.0).radius == 0);
    CHECK_THROWS_AS(truncation_radius(RatMatrix{{1, 0}, {0, 0}}, 0.0, 1e-10), NotPositiveDefinite);
    CHECK_THROWS_AS(truncation_radius(RatMatrix{{Rational(1, 1000000)}}, 0.0, 1e-14, 8), TruncationBudgetExceeded);
    Rational lam = certified_lambda_min(RatMatrix{{2, 1}, {1, 2}});
    CHECK(lam > 0);
    CHECK(lam <= 1);
    CHECK(is_positive_definite(RatMatrix{{2, 1}, {1, 2}} - lam * RatMatrix::identity(2)));
}

TEST_CASE("shell order") {
    std::vector<int> p = shell_points(2, 2);
    REQUIRE(p.size() == 2 * 25);
    CHECK(p[0] == 0);
    CHECK(p[1] == 0);
    int prev_shell = 0;
    for (std::size_t i = 0; i < 25; ++i) {
        int sh = std::max(std::abs(p[2 * i]), std::abs(p[2 * i + 1]));
        CHECK(sh >= prev_shell);
        if (i > 0 && sh == prev_shell)
            CHECK(std::make_pair(p[2 * i - 2], p[2 * i - 1]) < std::make_pair(p[2 * i], p[2 * i + 1]));
        prev_shell = sh;
    }
    CHECK(shell_points(0, 3).empty());
}

TEST_CASE("lattice sums are deterministic across worker counts") {
    auto term = [](const int* m) {
        double a = m[0], b = m[1], c = m[2];
        return LogTerm<double>{-0.05 * (a * a + b * b + c * c) - 0.01 * a * b, 0.37 * a - 0.11 * b + 0.013 * c * c};
    };
    CxD one = lattice_sum<double>(3, 20, term, 1);
    for (unsigned w : {2u, 3u, 4u}) {
        CxD many = lattice_sum<double>(3, 20, term, w);
        CHECK(same_bits(one.re, many.re));
        CHECK(same_bits(one.im, many.im));
    }
    // DD path agrees with the double path
    auto term_dd = [](const int* m) {
        DD a(m[0]), b(m[1]), c(m[2]);
        return LogTerm<DD>{DD(-0.05) * (a * a + b * b + c * c) - DD(0.01) * a * b,
                           DD(0.37) * a - DD(0.11) * b + DD(0.013) * c * c};
    };
    CxDD dd = lattice_sum<DD>(3, 20, term_dd, 2);
    CHECK(std::fabs(Num<DD>::to_d(dd.re) - one.re) < 1e-11 * std::fabs(one.re) + 1e-12);
    CHECK(std::fabs(Num<DD>::to_d(dd.im) - one.im) < 1e-11 * std::fabs(one.re) + 1e-12);
    // one-dimensional Gaussian: sum exp(-pi m^2) = 1.0864348112133080...
    CxD g = lattice_sum<double>(1, 6, [](const int* m) { return LogTerm<double>{-3.141592653589793 * m[0] * m[0], 0.0}; });
    CHECK(std::fabs(g.re - 1.0864348112133080) < 1e-15);
}
