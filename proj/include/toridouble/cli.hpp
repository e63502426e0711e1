#pragma once

// Config-driven verification runs.
//
// Grammar (one item per line, '#' starts a comment):
//   [numeric]            tol, max_radius, precision (double|dd), workers, jobs
//   [torus]              n, then tau = nxn complex matrix, or omega (and optionally b) = 2nx2n
//   [brane NAME]         kind = graph|fiber|coisotropic
//                          graph:       D, xi
//                          fiber:       r, phi, xi
//                          coisotropic: support, N, offset, phi, xi
//   [task ID]            type = validate|lift|theta|identity1|identity2|usub|diagram|upart-self|twist
// Vectors are written "len: a b c", matrices "rowsxcols: a b; c d". Entries
// are exact rationals ("-3/4", "0.125") or complex numbers ("1/2+i", "-2i").

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "toridouble/brane.hpp"
#include "toridouble/errors.hpp"
#include "toridouble/lattice_sum.hpp"

namespace toridouble {

struct NumericConfig {
    std::optional<double> tol;
    std::optional<int> max_radius;
    std::optional<Precision> precision;
    std::optional<unsigned> workers;  // partitions per lattice sum
    std::optional<unsigned> jobs;     // tasks run concurrently
    bool operator==(const NumericConfig&) const = default;
};

struct TorusConfig {
    int n = 0;
    std::optional<CRatMatrix> tau;
    std::optional<RatMatrix> omega;
    std::optional<RatMatrix> b_field;
    bool operator==(const TorusConfig&) const = default;
};

struct BraneConfig {
    std::string name;
    BraneKind kind = BraneKind::graph;
    std::optional<IntMatrix> d;
    std::optional<RatVector> r;
    std::optional<IntMatrix> support;
    std::optional<RatMatrix> n_quad;
    std::optional<RatVector> offset;
    std::optional<RatVector> phi;
    std::optional<std::vector<int>> xi;  // absent: all generator bits zero
    bool operator==(const BraneConfig&) const = default;

    std::size_t dim(int n) const;
    // the bits actually used
    std::vector<int> xi_or_default(int n) const;
};

enum class TaskType { validate, lift, theta, identity1, identity2, usub, diagram, upart_self, twist };

std::string to_string(TaskType t);

struct TaskConfig {
    std::string id;
    TaskType type = TaskType::validate;
    std::optional<std::string> brane;
    std::optional<IntMatrix> d;               // theta
    std::optional<IntVector> k;               // theta, usub
    std::optional<std::vector<int>> xi;       // theta
    std::optional<CRational> tau;             // identity1/2, defaults to the torus for n = 1
    std::optional<CRatVector> z;              // theta, identity1
    std::optional<CRatVector> u;              // identity2
    std::optional<CRatVector> v;              // identity2
    std::optional<RatVector> r;               // usub
    std::optional<RatVector> phi;             // usub
    std::optional<RatVector> theta_hat;       // usub, default -phi
    std::optional<RatVector> kappa;           // usub, default 0
    std::optional<CRatMatrix> z_grid;         // diagram: one z per row
    std::optional<IntMatrix> ks;              // diagram: one k per row, default all
    std::optional<IntVector> predict_c;       // diagram: characteristic of the predicted constant
    std::optional<std::vector<int>> expect;   // upart-self degree dimensions
    bool operator==(const TaskConfig&) const = default;
};

struct JobConfig {
    NumericConfig numeric;
    TorusConfig torus;
    std::vector<BraneConfig> branes;
    std::vector<TaskConfig> tasks;
    bool operator==(const JobConfig&) const = default;

    const BraneConfig* find_brane(const std::string& name) const;
};

// Throws ParseError (syntax) or ValidationError (invariants).
JobConfig parse_config(const std::string& text);
// Canonical text; parse_config(to_config_text(c)) == c.
std::string to_config_text(const JobConfig& c);

// defaults < config < overrides
NumericPolicy resolve_policy(const NumericConfig& config, const NumericConfig& overrides = {});
TorusWithBField build_torus(const TorusConfig& t);
Brane build_brane(const BraneConfig& b, const TorusWithBField& t);

enum class Status { pass, fail, error };

std::string to_string(Status s);

struct ResidualEntry {
    std::string name;
    double value = 0.0;
    double tolerance = 0.0;
};

struct CheckEntry {
    std::string name;
    bool ok = false;
};

struct CertificateEntry {
    std::string name;
    TruncationCertificate cert;
};

struct ReportRecord {
    std::string id;
    std::string type;
    Status status = Status::error;
    nlohmann::ordered_json measured = nlohmann::ordered_json::object();
    std::vector<ResidualEntry> residuals;
    std::vector<CheckEntry> checks;
    std::vector<CertificateEntry> certificates;
    std::string error;
    double wall_time = 0.0;  // seconds; summary format only
};

// Records in declaration order; a failing task becomes an error record.
std::vector<ReportRecord> run(const JobConfig& config, const NumericPolicy& policy, unsigned jobs = 1);
ReportRecord run_task(const JobConfig& config, const TaskConfig& task, const NumericPolicy& policy);

enum class ReportFormat { lines, summary };

std::string emit_report(const std::vector<ReportRecord>& records, ReportFormat format);
nlohmann::ordered_json to_json(const ReportRecord& r);
// 0 all pass, 1 otherwise
int exit_code(const std::vector<ReportRecord>& records);

}  // namespace toridouble
