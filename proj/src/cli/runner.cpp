#include <atomic>
#include <chrono>
#include <cmath>
#include <thread>

#include "toridouble/cli.hpp"
#include "toridouble/floer.hpp"
#include "toridouble/lattice.hpp"
#include "toridouble/theta.hpp"

namespace toridouble {

namespace {

using json = nlohmann::ordered_json;

json cx(const CxDD& z) {
    std::complex<double> c = to_std(z);
    return json::array({c.real(), c.imag()});
}

json ints(const IntVector& v) {
    json a = json::array();
    for (const auto& x : v) a.push_back(x.get_str());
    return a;
}

json bits(const std::vector<int>& b) { return json(b); }

struct Recorder {
    ReportRecord& rec;

    void residual(const std::string& name, double value, double tol) { rec.residuals.push_back({name, value, tol}); }
    void residual(const std::string& name, const Residual& r) { residual(name, r.value, r.tolerance); }
    void check(const std::string& name, bool ok) { rec.checks.push_back({name, ok}); }
    void cert(const std::string& name, const TruncationCertificate& c) { rec.certificates.push_back({name, c}); }
    json& measured() { return rec.measured; }
};

const BraneConfig& brane_of(const JobConfig& c, const TaskConfig& t) { return *c.find_brane(*t.brane); }

std::vector<IntVector> rows_of(const IntMatrix& m) {
    std::vector<IntVector> out;
    for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(m.row(i));
    return out;
}

CRational task_tau(const TaskConfig& t, const TorusWithBField& torus) {
    if (t.tau) return *t.tau;
    const CRatMatrix& tau = torus.tau();
    return {tau.re(0, 0), tau.im(0, 0)};
}

void task_validate(Recorder& r, const JobConfig& c, const TaskConfig& t, const TorusWithBField& torus) {
    const BraneConfig& bc = brane_of(c, t);
    Brane b = build_brane(bc, torus);
    bool lag = b.dim() == static_cast<std::size_t>(torus.n());
    ValidationReport rep = lag ? validate_lagrangian(b, torus) : validate_coisotropic(b, torus);
    r.measured()["brane"] = bc.name;
    r.measured()["kind"] = to_string(b.kind());
    r.measured()["xi"] = bits(bc.xi_or_default(torus.n()));
    r.measured()["condition"] = lag ? "lagrangian" : "coisotropic";
    r.measured()["failures"] = rep.failures;
    r.check(lag ? "lagrangian" : "coisotropic", rep.pass);
}

void task_lift(Recorder& r, const JobConfig& c, const TaskConfig& t, const TorusWithBField& torus) {
    const BraneConfig& bc = brane_of(c, t);
    LiftedBrane lb = lift(build_brane(bc, torus), torus);
    DoubledTorus dt = double_torus(torus);
    r.measured()["brane"] = bc.name;
    r.measured()["xi"] = bits(bc.xi_or_default(torus.n()));
    r.measured()["support"] = to_string(lb.brane.support());
    r.measured()["offset"] = to_string(lb.brane.offset());
    r.check("lagrangian", verify_lift_lagrangian(lb, dt));
    r.check("complex", verify_lift_complex(lb, dt));
}

void task_twist(Recorder& r, const JobConfig& c, const TaskConfig& t, const TorusWithBField& torus) {
    const BraneConfig& bc = brane_of(c, t);
    LiftedBrane lb = lift(build_brane(bc, torus), torus);
    DoubledTorus dt = double_torus(torus);
    Brane tw = twist_brane(lb.brane, dt);
    RatMatrix shift = tw.curvature() - lb.brane.curvature();
    r.measured()["brane"] = bc.name;
    r.measured()["xi"] = bits(bc.xi_or_default(torus.n()));
    r.measured()["curvature"] = to_string(tw.curvature());
    r.check("curvature_shift_2sigma0", shift == restrict_form(lb.brane, Rational(2) * dt.sigma0));
}

void task_upart_self(Recorder& r, const JobConfig& c, const TaskConfig& t, const TorusWithBField& torus) {
    const BraneConfig& bc = brane_of(c, t);
    LiftedBrane lb = lift(build_brane(bc, torus), torus);
    UPartSelf u = u_part_self(lb, double_torus(torus));
    std::vector<int> dims(u.degree_dims.begin(), u.degree_dims.end());
    r.measured()["brane"] = bc.name;
    r.measured()["xi"] = bits(bc.xi_or_default(torus.n()));
    r.measured()["complex_dim"] = u.complex_dim;
    r.measured()["degree_dims"] = dims;
    if (t.expect) r.check("degree_dims", dims == *t.expect);
}

void task_theta(Recorder& r, const TaskConfig& t, const TorusWithBField& torus, const NumericPolicy& policy) {
    const std::size_t n = static_cast<std::size_t>(torus.n());
    ThetaSpec spec{torus.tau(), *t.d, t.k ? *t.k : IntVector(n, Integer(0)), t.xi ? *t.xi : std::vector<int>(n, 0),
                   policy};
    SeriesValue v = theta_dk(spec, *t.z);
    r.measured()["xi"] = bits(spec.xi_bits);
    r.measured()["value"] = cx(v.value);
    r.cert("theta", v.cert);
    double qp = 0, cs = 0;
    for (std::size_t i = 0; i < n; ++i) {
        IntVector e(n, Integer(0));
        e[i] = 1;
        qp = std::max(qp, verify_quasi_periodicity(spec, *t.z, e).residual.value);
        cs = std::max(cs, verify_characteristic_shift(spec, *t.z, e).residual.value);
    }
    r.residual("quasi_periodicity", qp, 10 * policy.tol);
    r.residual("characteristic_shift", cs, 10 * policy.tol);
}

void task_identity1(Recorder& r, const TaskConfig& t, const TorusWithBField& torus,
                    const NumericPolicy& policy) {
    CRational tau = task_tau(t, torus);
    IdentityOneCheck chk = verify_identity_1(tau, (*t.z)[0], policy);
    r.measured()["tau"] = to_string(tau);
    r.measured()["lattice_form"] = cx(chk.lattice_form);
    r.measured()["poisson_form"] = cx(chk.poisson_form);
    r.measured()["theta_form"] = cx(chk.theta_form);
    r.cert("lattice_form", chk.cert);
    r.residual("three_way", chk.residual);
}

void task_identity2(Recorder& r, const TaskConfig& t, const TorusWithBField& torus,
                    const NumericPolicy& policy) {
    CRational tau = task_tau(t, torus);
    IdentityTwoCheck chk = verify_identity_2(tau, (*t.u)[0], (*t.v)[0], policy);
    r.measured()["tau"] = to_string(tau);
    r.measured()["lhs"] = cx(chk.lhs);
    r.measured()["rhs"] = cx(chk.rhs);
    r.cert("lhs", chk.cert);
    r.residual("identity", chk.residual);
}

void task_usub(Recorder& r, const JobConfig& c, const TaskConfig& t, const TorusWithBField& torus,
               const NumericPolicy& policy) {
    const BraneConfig& bc = brane_of(c, t);
    const std::size_t n = static_cast<std::size_t>(torus.n());
    std::vector<int> xi = bc.xi_or_default(torus.n());
    FloerSetup s = FloerSetup::make(torus, *bc.d, xi, policy);
    FiberPoint pt{*t.r, *t.phi, t.theta_hat ? *t.theta_hat : Rational(-1) * *t.phi,
                  t.kappa ? *t.kappa : RatVector(n, Rational(0))};
    std::vector<IntVector> ks = t.k ? std::vector<IntVector>{*t.k} : cosets(*bc.d).representatives;
    r.measured()["brane"] = bc.name;
    r.measured()["xi"] = bits(xi);
    json samples = json::array();
    for (const IntVector& k : ks) {
        UsubReport rep = verify_usub(s, k, {pt});
        const UsubSample& smp = rep.samples.front();
        samples.push_back({{"k", ints(k)}, {"lhs", cx(smp.lhs)}, {"rhs", cx(smp.rhs)}, {"factor", cx(smp.factor)}});
        r.residual("usub k=" + to_string(k), rep.residual, rep.tolerance);
    }
    r.measured()["samples"] = samples;
}

void task_diagram(Recorder& r, const JobConfig& c, const TaskConfig& t, const TorusWithBField& torus,
                  const NumericPolicy& policy) {
    const BraneConfig& bc = brane_of(c, t);
    std::vector<int> xi = bc.xi_or_default(torus.n());
    std::vector<IntVector> ks = t.ks ? rows_of(*t.ks) : cosets(*bc.d).representatives;
    std::vector<CRatVector> zs;
    for (std::size_t i = 0; i < t.z_grid->rows(); ++i) zs.push_back({t.z_grid->re.row(i), t.z_grid->im.row(i)});
    DiagramReport rep = verify_main_diagram(torus, *bc.d, xi, ks, zs, policy, t.predict_c ? *t.predict_c : IntVector{});
    r.measured()["brane"] = bc.name;
    r.measured()["xi"] = bits(xi);
    r.measured()["predicted_constant"] = cx(rep.predicted_constant);
    json entries = json::array();
    for (const auto& e : rep.entries)
        entries.push_back({{"k", ints(e.k)},
                           {"z", to_string(e.z)},
                           {"rho", cx(e.rho)},
                           {"trivialization_ratio", cx(e.trivialization_ratio)}});
    r.measured()["entries"] = entries;
    r.residual("spread", rep.spread, rep.tolerance);
    r.residual("mismatch", rep.mismatch, rep.tolerance);
}

Status judge(const ReportRecord& rec) {
    for (const auto& c : rec.checks)
        if (!c.ok) return Status::fail;
    for (const auto& res : rec.residuals)
        if (!(res.value <= res.tolerance)) return Status::fail;
    return Status::pass;
}

}  // namespace

std::string to_string(Status s) {
    switch (s) {
    case Status::pass: return "pass";
    case Status::fail: return "fail";
    case Status::error: return "error";
    }
    return "?";
}

ReportRecord run_task(const JobConfig& config, const TaskConfig& task, const NumericPolicy& policy) {
    ReportRecord rec;
    rec.id = task.id;
    rec.type = to_string(task.type);
    auto start = std::chrono::steady_clock::now();
    try {
        TorusWithBField torus = build_torus(config.torus);
        Recorder r{rec};
        switch (task.type) {
        case TaskType::validate: task_validate(r, config, task, torus); break;
        case TaskType::lift: task_lift(r, config, task, torus); break;
        case TaskType::twist: task_twist(r, config, task, torus); break;
        case TaskType::upart_self: task_upart_self(r, config, task, torus); break;
        case TaskType::theta: task_theta(r, task, torus, policy); break;
        case TaskType::identity1: task_identity1(r, task, torus, policy); break;
        case TaskType::identity2: task_identity2(r, task, torus, policy); break;
        case TaskType::usub: task_usub(r, config, task, torus, policy); break;
        case TaskType::diagram: task_diagram(r, config, task, torus, policy); break;
        }
        rec.status = judge(rec);
    } catch (const std::exception& e) {
        rec.status = Status::error;
        rec.error = e.what();
    }
    rec.wall_time = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return rec;
}

std::vector<ReportRecord> run(const JobConfig& config, const NumericPolicy& policy, unsigned jobs) {
    std::vector<ReportRecord> out(config.tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        for (std::size_t i = next++; i < out.size(); i = next++) out[i] = run_task(config, config.tasks[i], policy);
    };
    unsigned count = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(out.size())));
    std::vector<std::thread> pool;
    for (unsigned w = 1; w < count; ++w) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();
    return out;
}

int exit_code(const std::vector<ReportRecord>& records) {
    for (const auto& r : records)
        if (r.status != Status::pass) return 1;
    return 0;
}

}  // namespace toridouble
