// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>

#include "toridouble/cli.hpp"
#include "toridouble/floer.hpp"
#include "toridouble/lattice.hpp"

using namespace toridouble;

namespace {

constexpr double kTol = 1e-12;  // evaluation budget for every series below

struct Outcome {
    bool ok = true;
    std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

NumericPolicy policy() {
    NumericPolicy p;
    p.tol = kTol;
    return p;
}

TorusWithBField torus1(const char* tau) {
    CRational q = parse_complex(tau);
    return TorusWithBField::from_tau(RatMatrix{{q.re}}, RatMatrix{{q.im}});
}

TorusWithBField square(std::size_t n) { return TorusWithBField::from_tau(RatMatrix(n, n), RatMatrix::identity(n)); }

CRatVector cvec(std::initializer_list<const char*> xs) {
    CRatVector v;
    for (const char* x : xs) {
        CRational q = parse_complex(x);
        v.re.push_back(q.re);
        v.im.push_back(q.im);
    }
    return v;
}

std::string fmt(const char* f, double a, double b = 0) {
    char buf[128];
    std::snprintf(buf, sizeof buf, f, a, b);
    return buf;
}

// x -> x + omega(v, x) v preserves omega = x^T W y
IntMatrix transvection(const IntMatrix& w, const IntVector& v) {
    const std::size_t m = v.size();
    IntMatrix g = IntMatrix::identity(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) {
            Integer vw = 0;
            for (std::size_t a = 0; a < m; ++a) vw += v[a] * w(a, j);
            g(i, j) += v[i] * vw;
        }
    return g;
}

IntMatrix random_symplectic(std::mt19937& rng, const IntMatrix& w) {
    std::uniform_int_distribution<int> entry(-1, 1);
    IntMatrix g = IntMatrix::identity(w.rows());
    for (int step = 0; step < 3; ++step) {
        IntVector v(w.rows(), Integer(0));
        for (auto& x : v) x = entry(rng);
        g = transvection(w, v) * g;
    }
    return g;
}

IntMatrix standard_int_form(std::size_t n) {
    IntMatrix w(2 * n, 2 * n);
    for (std::size_t i = 0; i < n; ++i) {
        w(i, n + i) = 1;
        w(n + i, i) = -1;
    }
    return w;
}

// KO on (r1, r2, theta1, theta2) times the line {theta3 = 0}; coordinates (r1, r2, r3, theta1, theta2, theta3)
Brane ko_times_line() {
    IntMatrix u(6, 5);
    u(0, 0) = 1;  // r1
    u(1, 1) = 1;  // r2
    u(3, 2) = 1;  // theta1
    u(4, 3) = 1;  // theta2
    u(2, 4) = 1;  // r3
    RatMatrix n(5, 5);
    n(0, 3) = 1;
    n(1, 2) = -1;
    return Brane::make(u, RatVector(6, Rational(0)), n, RatVector(5, Rational(0)), {}, BraneKind::coisotropic);
}

// every D with entries in [-bound, bound] whose graph is a Lagrangian brane on t
std::vector<IntMatrix> graph_matrices(const TorusWithBField& t, int bound) {
    const std::size_t n = static_cast<std::size_t>(t.n());
    std::vector<IntMatrix> out;
    std::vector<int> e(n * n, -bound);
    for (;;) {
        IntMatrix d(n, n);
        for (std::size_t i = 0; i < n * n; ++i) d(i / n, i % n) = e[i];
        try {
            if (validate_lagrangian(graph_brane(t, d), t).pass) out.push_back(d);
        } catch (const InadmissibleD&) {
        }
        std::size_t i = 0;
        while (i < e.size() && e[i] == bound) e[i++] = -bound;
        if (i == e.size()) break;
        ++e[i];
    }
    return out;
}

bool certify(const Brane& b, const TorusWithBField& t, const DoubledTorus& dt) {
    LiftedBrane lb = lift(b, t);
    return verify_lift_lagrangian(lb, dt) && verify_lift_complex(lb, dt);
}

Outcome criterion1() {
    auto t0 = Clock::now();
    Outcome o;
    std::size_t count = 0, failed = 0;
    auto tally = [&](bool ok) {
        ++count;
        if (!ok) ++failed;
    };

    TorusWithBField t4 = standard_t4();
    DoubledTorus d4 = double_torus(t4);
    tally(certify(ko_brane(), t4, d4));

    std::size_t graphs = 0;
    std::vector<TorusWithBField> bases{torus1("i"), torus1("1/2+i"), torus1("-3/10+7/10i"), square(2),
                                       TorusWithBField::from_tau(RatMatrix{{0, 1}, {0, 0}}, RatMatrix::identity(2))};
    for (const auto& t : bases) {
        DoubledTorus dt = double_torus(t);
        for (const IntMatrix& d : graph_matrices(t, 3)) {
            const std::size_t n = d.rows();
            // every sign structure on the generators
            for (unsigned mask = 0; mask < (1u << n); ++mask) {
                std::vector<int> bits(n);
                for (std::size_t i = 0; i < n; ++i) bits[i] = (mask >> i) & 1;
                tally(certify(graph_brane(t, d, bits), t, dt));
                ++graphs;
            }
        }
        const std::size_t n = static_cast<std::size_t>(t.n());
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                RatVector r0(n, Rational(a, 4)), phi(n, Rational(b, 5));
                r0[0] = Rational(-a, 3);
                r0[0].canonicalize();
                for (auto& x : phi) x.canonicalize();
                for (auto& x : r0) x.canonicalize();
                tally(certify(fiber_brane(t, r0, phi), t, dt));
            }
    }

    std::mt19937 rng(2024);
    std::size_t random_count = 0;
    TorusWithBField t6 = square(3);
    DoubledTorus d6 = double_torus(t6);
    const RatMatrix w4 = to_rational(standard_int_form(2)), w6 = to_rational(standard_int_form(3));
    const bool forms_standard = t4.omega() == w4 && t6.omega() == w6;
    for (int i = 0; i < 60; ++i) {
        IntMatrix g = random_symplectic(rng, standard_int_form(2));
        Brane c = transform_support(ko_brane(), to_rational(g));
        bool ok = validate_coisotropic(c, t4).pass && certify(c, t4, d4);
        tally(ok);
        ++random_count;
    }
    for (int i = 0; i < 60; ++i) {
        IntMatrix g = random_symplectic(rng, standard_int_form(3));
        Brane c = transform_support(ko_times_line(), to_rational(g));
        bool ok = validate_coisotropic(c, t6).pass && certify(c, t6, d6);
        tally(ok);
        ++random_count;
    }

    double secs = seconds_since(t0);
    o.ok = failed == 0 && forms_standard && random_count >= 100 && secs < 10.0;
    o.detail = std::to_string(count) + " branes (" + std::to_string(graphs) + " graph, " + std::to_string(random_count) +
               " random coisotropic), " + std::to_string(failed) + " failed" + fmt(", %.2f s", secs);
    return o;
}

const std::vector<const char*> kTaus{"i", "1/2+i", "-3/10+7/10i"};

Outcome criterion2() {
    auto t0 = Clock::now();
    double worst = 0;
    const std::vector<const char*> zs{"0", "1/5+1/10i", "-1/3+1/4i", "1/2", "2/7-1/5i"};
    for (const char* tau : kTaus)
        for (const char* z : zs)
            worst = std::max(worst, verify_identity_1(parse_complex(tau), parse_complex(z), policy()).residual.value);
    double secs = seconds_since(t0);
    return {worst < 1e-10 && secs < 1.0, fmt("max residual %.3e, %.2f s", worst, secs)};
}

Outcome criterion3() {
    auto t0 = Clock::now();
    double worst = 0;
    const std::vector<std::pair<const char*, const char*>> uv{
        {"0", "0"}, {"1/3+1/4i", "-1/5+1/7i"}, {"1/5", "1/10-1/5i"}, {"-1/2+1/3i", "1/4"}, {"2/9-1/6i", "-1/3-1/8i"}};
    for (const char* tau : kTaus)
        for (const auto& [u, v] : uv)
            worst = std::max(worst,
                             verify_identity_2(parse_complex(tau), parse_complex(u), parse_complex(v), policy()).residual.value);
    double secs = seconds_since(t0);
    return {worst < 1e-10 && secs < 5.0, fmt("max residual %.3e, %.2f s", worst, secs)};
}

struct ThetaCase {
    CRatMatrix tau;
    IntMatrix d;
    std::vector<int> bits;
};

std::vector<ThetaCase> theta_cases() {
    std::vector<ThetaCase> out;
    const CRatMatrix t1{RatMatrix{{Rational(1, 2)}}, RatMatrix{{1}}};
    for (long d = 1; d <= 6; ++d) out.push_back({t1, IntMatrix{{d}}, {static_cast<int>(d % 2)}});
    const CRatMatrix sq{RatMatrix(2, 2), RatMatrix::identity(2)};
    const CRatMatrix sh{RatMatrix{{0, 1}, {0, 0}}, RatMatrix::identity(2)};
    for (const CRatMatrix& tau : {sq, sh})
        for (const IntMatrix& d : {IntMatrix{{2, 1}, {1, 1}}, IntMatrix{{2, 1}, {1, 2}}, IntMatrix{{2, 0}, {0, 2}},
                                   IntMatrix{{3, 1}, {1, 2}}, IntMatrix{{2, 0}, {0, 3}}})
            out.push_back({tau, d, {1, 0}});
    return out;
}

Outcome criterion4() {
    double worst = 0;
    std::size_t checks = 0;
    for (const ThetaCase& c : theta_cases()) {
        const std::size_t n = c.d.rows();
        CRatVector z = n == 1 ? cvec({"1/7+1/9i"}) : cvec({"1/7+1/9i", "-2/7+1/11i"});
        for (const IntVector& k : cosets(c.d).representatives) {
            ThetaSpec spec{c.tau, c.d, k, c.bits, policy()};
            for (std::size_t i = 0; i < n; ++i) {
                IntVector h(n, Integer(0));
                h[i] = 1;
                worst = std::max(worst, verify_quasi_periodicity(spec, z, h).residual.value);
                worst = std::max(worst, verify_characteristic_shift(spec, z, h).residual.value);
                checks += 2;
            }
        }
    }
    return {worst < 1e-10, std::to_string(checks) + fmt(" checks, max residual %.3e", worst)};
}

Outcome criterion5() {
    std::size_t cases = 0, bad = 0;
    auto count = [&](const TorusWithBField& t, const IntMatrix& d, const std::vector<int>& bits) {
        Integer det_d = abs(det(d));
        if (det_d == 0) return;
        Integer det_sq = det_d * det_d;
        Brane l0 = zero_section(t), ld = graph_brane(t, d, bits);
        bool ok = intersections(l0, ld).size() == det_d.get_ui();
        ok = ok && intersections(lift(l0, t), lift(ld, t)).size() == det_sq.get_ui();
        ++cases;
        if (!ok) ++bad;
    };
    for (const ThetaCase& c : theta_cases()) count(TorusWithBField::from_tau(c.tau), c.d, c.bits);
    for (const TorusWithBField& t : {torus1("1/2+i"), square(2)})
        for (const IntMatrix& d : graph_matrices(t, 3)) count(t, d, {});
    return {bad == 0, std::to_string(cases) + " matrices, " + std::to_string(bad) + " miscounted"};
}

Outcome criterion6() {
    auto t0 = Clock::now();
    double worst = 0;
    std::size_t samples = 0;
    auto run = [&](const TorusWithBField& t, const IntMatrix& d, std::vector<int> bits,
                   const std::vector<FiberPoint>& pts) {
        FloerSetup s = FloerSetup::make(t, d, bits, policy());
        for (const IntVector& k : cosets(d).representatives) {
            UsubReport rep = verify_usub(s, k, pts);
            worst = std::max(worst, rep.residual);
            samples += rep.samples.size();
        }
    };
    auto q = [](long a, long b) {
        Rational r(a, b);
        r.canonicalize();
        return r;
    };
    std::vector<FiberPoint> p1;
    for (long i = 0; i < 5; ++i)
        p1.push_back({RatVector{q(i + 1, 7)}, RatVector{q(2 * i - 3, 11)}, RatVector{q(i, 5)}, RatVector{q(3 - i, 13)}});
    for (long d = 1; d <= 3; ++d) run(torus1("1/2+i"), IntMatrix{{d}}, {static_cast<int>(d % 2)}, p1);
    std::vector<FiberPoint> p2;
    for (long i = 0; i < 5; ++i)
        p2.push_back({RatVector{q(i + 1, 7), q(-i, 9)}, RatVector{q(2 * i - 3, 11), q(1, 4)},
                      RatVector{q(i, 5), q(-1, 6)}, RatVector{q(3 - i, 13), q(i, 8)}});
    run(square(2), IntMatrix{{2, 1}, {1, 1}}, {0, 1}, p2);
    double secs = seconds_since(t0);
    return {worst < 1e-8 && secs < 30.0,
            std::to_string(samples) + " samples, max residual " + fmt("%.3e, %.2f s", worst, secs)};
}

Outcome criterion7() {
    auto t0 = Clock::now();
    TorusWithBField t = torus1("1/2+i");
    // theta_{2,1} vanishes at 1/4, so the grid stays off the real line
    std::vector<CRatVector> zs{cvec({"1/10+1/5i"}), cvec({"-1/3+1/2i"}), cvec({"1/4+1/3i"}), cvec({"2/5-1/7i"}),
                               cvec({"1/9i"})};
    double spread = 0, mismatch = 0;
    bool control_rejected = true;
    for (long d : {1L, 2L}) {
        IntMatrix dm{{d}};
        DiagramReport rep = verify_main_diagram(t, dm, {0}, cosets(dm).representatives, zs, policy());
        spread = std::max(spread, rep.spread);
        mismatch = std::max(mismatch, rep.mismatch);
        if (d == 2) {
            DiagramReport bad = verify_main_diagram(t, dm, {0}, {IntVector{0}}, zs, policy(), IntVector{1});
            control_rejected = bad.mismatch > 1e-8;
        }
    }
    double secs = seconds_since(t0);
    return {spread < 1e-8 && mismatch < 1e-8 && control_rejected && secs < 30.0,
            fmt("spread %.3e, mismatch %.3e", spread, mismatch) +
                (control_rejected ? ", control rejected" : ", control NOT rejected") + fmt(", %.2f s", secs)};
}

Outcome criterion8() {
    bool ok = true;
    std::string detail;
    for (std::size_t n : {1, 2}) {
        TorusWithBField t = square(n);
        UPartSelf u = u_part_self(lift(zero_section(t), t), double_torus(t));
        std::vector<std::size_t> want = n == 1 ? std::vector<std::size_t>{1, 1} : std::vector<std::size_t>{1, 2, 1};
        ok = ok && u.degree_dims == want;
        detail += "L0 n=" + std::to_string(n) + ":";
        for (auto x : u.degree_dims) detail += " " + std::to_string(x);
        detail += "; ";
    }
    TorusWithBField t4 = standard_t4();
    UPartSelf ko = u_part_self(lift(ko_brane(), t4), double_torus(t4));
    ok = ok && ko.degree_dims == std::vector<std::size_t>{1, 2, 1};
    detail += "KO:";
    for (auto x : ko.degree_dims) detail += " " + std::to_string(x);
    return {ok, detail};
}

Outcome criterion9() {
    bool ok = true;
    std::size_t runs = 0;
    for (const char* name : {"basic.ini", "ko.ini", "rank2.ini"}) {
        std::ifstream in(std::string(TORIDOUBLE_CONFIG_DIR) + "/" + name);
        if (!in) return {false, std::string("cannot read ") + name};
        std::stringstream ss;
        ss << in.rdbuf();
        JobConfig c = parse_config(ss.str());
        NumericPolicy base = resolve_policy(c.numeric);
        std::string ref;
        for (unsigned workers : {1u, 2u, 4u})
            for (int rep = 0; rep < 2; ++rep) {
                NumericPolicy p = base;
                p.workers = workers;
                std::string text = emit_report(run(c, p, rep == 0 ? 1 : 3), ReportFormat::lines);
                if (ref.empty()) ref = text;
                ok = ok && text == ref;
                ++runs;
            }
    }
    return {ok, std::to_string(runs) + " reports compared"};
}

}  // namespace

int main() {
    const std::vector<std::function<Outcome()>> criteria{criterion1, criterion2, criterion3, criterion4, criterion5,
                                                         criterion6, criterion7, criterion8, criterion9};
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i]();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        if (!o.ok) ++failures;
        std::printf("criterion %zu: %s  %s\n", i + 1, o.ok ? "PASS" : "FAIL", o.detail.c_str());
        std::fflush(stdout);
    }
    return failures == 0 ? 0 : 1;
}
