#include "toridouble/lattice_sum.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdlib>
#include <limits>

namespace toridouble {

std::string to_string(Precision p) { return p == Precision::binary64 ? "double" : "dd"; }

Precision parse_precision(const std::string& s) {
    if (s == "double") return Precision::binary64;
    if (s == "dd") return Precision::double_double;
    throw ValidationError("unknown precision '" + s + "' (expected double or dd)");
}

double default_tol(Precision p) { return p == Precision::binary64 ? 1e-10 : 1e-20; }

Rational certified_lambda_min(const RatMatrix& q) {
    if (!q.is_square() || q.rows() == 0) throw NotPositiveDefinite("Gaussian form must be a nonempty square matrix");
    RatMatrix s = symmetric_part(q);
    if (!is_positive_definite(s)) throw NotPositiveDefinite("Gaussian form is not positive definite");
    const std::size_t n = s.rows();
    Eigen::MatrixXd m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m(i, j) = to_double(s(i, j));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    double est = es.eigenvalues().minCoeff();
    Rational lambda = est > 0 ? Rational(0.9 * est) : Rational(1, 1024);
    for (int attempt = 0; attempt < 400; ++attempt) {
        if (is_positive_definite(s - lambda * RatMatrix::identity(n))) return lambda;
        lambda /= 2;
    }
    throw NotPositiveDefinite("could not certify a positive eigenvalue bound");
}

namespace {

double lambda_as_double(const RatMatrix& q) {
    Rational lam_q = certified_lambda_min(q);
    double lam = to_double(lam_q);
    if (Rational(lam) > lam_q) lam = std::nextafter(lam, 0.0);
    return lam;
}

// bound on the shells beyond m, +inf when the comparison series does not apply
double shell_tail(double lam, double dim, int m, double L, double center, double log_prefactor) {
    const double pi = 3.141592653589793;
    double s = m + 1.0;
    if (s < center) return std::numeric_limits<double>::infinity();
    double d = s - center;
    double log_g = std::log(2.0 * dim) + (dim - 1.0) * std::log(2.0 * s + 1.0) + log_prefactor - pi * lam * d * d + L * s;
    double rho = std::pow((2.0 * s + 3.0) / (2.0 * s + 1.0), dim - 1.0) * std::exp(-pi * lam * (2.0 * d + 1.0) + L);
    if (!(rho < 1.0)) return std::numeric_limits<double>::infinity();
    return std::exp(log_g) / (1.0 - rho);
}

}  // namespace

TruncationCertificate truncation_radius(const RatMatrix& q, double linear_bound, double tol, int max_radius,
                                        double center, double log_prefactor) {
    if (!(tol > 0)) throw ValidationError("tolerance must be positive");
    const double lam = lambda_as_double(q);
    const double dim = static_cast<double>(q.rows());
    const double L = std::max(0.0, linear_bound);
    for (int m = 0; m <= max_radius; ++m) {
        double bound = shell_tail(lam, dim, m, L, center, log_prefactor);
        if (bound <= tol) return {m, bound, lam};
    }
    throw TruncationBudgetExceeded("no radius <= " + std::to_string(max_radius) + " certifies tolerance " +
                                   std::to_string(tol));
}

TruncationCertificate tail_at_radius(const RatMatrix& q, int radius, double linear_bound, double center,
                                     double log_prefactor) {
    const double lam = lambda_as_double(q);
    return {radius,
            shell_tail(lam, static_cast<double>(q.rows()), radius, std::max(0.0, linear_bound), center, log_prefactor),
            lam};
}

std::vector<int> shell_points(int dim, int radius) {
    if (dim <= 0) return {};
    const int side = 2 * radius + 1;
    std::size_t total = 1;
    for (int i = 0; i < dim; ++i) total *= static_cast<std::size_t>(side);
    std::vector<int> shell_of(total);
    std::vector<std::size_t> shell_count(static_cast<std::size_t>(radius) + 1, 0);
    std::vector<int> cur(static_cast<std::size_t>(dim), -radius);
    std::vector<int> box(total * static_cast<std::size_t>(dim));
    for (std::size_t idx = 0; idx < total; ++idx) {
        int sh = 0;
        for (int i = 0; i < dim; ++i) {
            box[idx * dim + i] = cur[i];
            sh = std::max(sh, std::abs(cur[i]));
        }
        shell_of[idx] = sh;
        ++shell_count[sh];
        for (int i = dim - 1; i >= 0; --i) {
            if (++cur[i] <= radius) break;
            cur[i] = -radius;
        }
    }
    std::vector<std::size_t> offset(shell_count.size() + 1, 0);
    for (std::size_t s = 0; s < shell_count.size(); ++s) offset[s + 1] = offset[s] + shell_count[s];
    std::vector<int> out(box.size());
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::size_t pos = offset[shell_of[idx]]++;
        for (int i = 0; i < dim; ++i) out[pos * dim + i] = box[idx * dim + i];
    }
    return out;
}

}  // namespace toridouble
