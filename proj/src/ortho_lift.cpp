#include "udesign/ortho_lift.hpp"

#include "udesign/haar.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>
#include <string>

namespace udesign::ortho_lift {

namespace {

constexpr double kPi = 3.14159265358979323846;

}  // namespace

double dirichlet_q(int d, double alpha) {
    if (d < 2) throw std::invalid_argument("dirichlet_q: d must be at least 2");
    double denom = std::sin(kPi * alpha / d);
    if (std::abs(denom) < 1e-9) {
        Complex sum(0.0, 0.0);
        for (int j = 0; j < d; ++j) {
            double theta = 2.0 * kPi * alpha * j / d;
            sum += Complex(std::cos(theta), std::sin(theta));
        }
        return std::norm(sum);
    }
    double num = std::sin(kPi * alpha);
    return (num * num) / (denom * denom);
}

LiftParameters solve_alpha(int d) {
    if (d < 2) throw std::invalid_argument("solve_alpha: d must be at least 2");
    double dd = static_cast<double>(d);
    double target = 2.0 * dd / (dd + 1.0);
    double lo = 0.0, hi = 1.0;
    if (!(dirichlet_q(d, lo) > target && target > dirichlet_q(d, hi)))
        throw std::runtime_error("solve_alpha: bracket failure");
    // q decreases across [0, 1]; bisect until the midpoint stops moving.
    double mid = 0.5;
    while (true) {
        mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (dirichlet_q(d, mid) > target)
            lo = mid;
        else
            hi = mid;
    }
    double residual = std::abs(dirichlet_q(d, mid) - target);
    if (residual > 1e-12)
        throw std::runtime_error("solve_alpha: residual " + std::to_string(residual) +
                                 " exceeds 1e-12 at d = " + std::to_string(d));
    LiftParameters p;
    p.d = d;
    p.alpha = mid;
    p.w = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j) {
        double theta = kPi * j * p.alpha / d;
        p.w(j, j) = Complex(std::cos(theta), std::sin(theta));
    }
    return p;
}

namespace {

ComplexMatrix conjugated_orthogonal_twirl(int t, int d, const ComplexMatrix& wt,
                                          const ComplexMatrix& m) {
    return wt * haar::haar_orthogonal_twirl(t, d, wt.adjoint() * m * wt) * wt.adjoint();
}

ComplexMatrix gaussian_probe(long n, std::mt19937_64& engine) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) m(i, j) = Complex(gauss(engine), gauss(engine));
    return m;
}

}  // namespace

CompositionReport verify_composition_identity(int d, int t, std::uint64_t seed,
                                              long random_probes) {
    if (t != 2 && t != 3)
        throw std::invalid_argument("verify_composition_identity: t must be 2 or 3");
    if (d < 2 || d > 6)
        throw std::invalid_argument("verify_composition_identity: supported range is d in 2..6");
    CompositionReport report;
    report.d = d;
    report.t = t;
    report.informational = (t == 3 && d < 5);
    report.tol = t == 2 ? 1e-9 : 1e-8;
    ComplexMatrix wt = tensor_power(solve_alpha(d).w, t);
    long n = tensor_space_dim(d, t);
    auto probe_deviation = [&](const ComplexMatrix& m) {
        ComplexMatrix left = haar::haar_unitary_twirl(t, d, m);
        ComplexMatrix right =
            conjugated_orthogonal_twirl(t, d, wt, haar::haar_orthogonal_twirl(t, d, m));
        return max_abs(left - right);
    };
    if (t == 2) {
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) {
                ComplexMatrix unit = ComplexMatrix::Zero(n, n);
                unit(a, b) = 1.0;
                report.max_deviation = std::max(report.max_deviation, probe_deviation(unit));
            }
        report.probes = n * n;
        report.probe_kind = "matrix-units";
    } else {
        long probes = std::max<long>(random_probes, 100);
        std::mt19937_64 engine(seed);
        for (long p = 0; p < probes; ++p) {
            ComplexMatrix m = gaussian_probe(n, engine);
            report.max_deviation = std::max(report.max_deviation, probe_deviation(m));
        }
        report.probes = probes;
        report.probe_kind = "random";
    }
    report.pass = report.max_deviation <= report.tol;
    return report;
}

designs::MomentReport verify_orthogonal_design(const designs::WeightedUnitarySet& set, int t,
                                               const designs::VerifyOptions& opts) {
    if (t < 1 || t > 3)
        throw std::invalid_argument("verify_orthogonal_design: t must be in [1, 3]");
    int d = set.dimension;
    long n = tensor_space_dim(d, t);
    designs::MomentReport report;
    report.tol = t >= 3 ? opts.tol * std::pow(static_cast<double>(d), t) : opts.tol;
    bool units_fit = n * n <= kMaxTensorDim && (!opts.max_probes || n * n <= *opts.max_probes);
    if (units_fit) {
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) {
                ComplexMatrix unit = ComplexMatrix::Zero(n, n);
                unit(a, b) = 1.0;
                ComplexMatrix delta = designs::twirl_apply(set, t, unit) -
                                      haar::haar_orthogonal_twirl(t, d, unit);
                report.max_deviation = std::max(report.max_deviation, max_abs(delta));
            }
        report.probes = n * n;
        report.probe_kind = "matrix-units";
    } else {
        long probes = std::max<long>(opts.min_random_probes, 50);
        std::mt19937_64 engine(opts.seed);
        for (long p = 0; p < probes; ++p) {
            ComplexMatrix m = gaussian_probe(n, engine);
            ComplexMatrix delta =
                designs::twirl_apply(set, t, m) - haar::haar_orthogonal_twirl(t, d, m);
            report.max_deviation = std::max(report.max_deviation, max_abs(delta));
        }
        report.probes = probes;
        report.probe_kind = "random";
    }
    report.pass = report.max_deviation <= report.tol;
    return report;
}

designs::WeightedUnitarySet lift_design(const designs::WeightedUnitarySet& v, int t) {
    if (t != 2 && t != 3) throw std::invalid_argument("lift_design: t must be 2 or 3");
    if (!v.materialized()) throw std::invalid_argument("lift_design: input must be materialized");
    std::vector<designs::WeightedElement> real_elements;
    real_elements.reserve(v.elements.size());
    for (const designs::WeightedElement& e : v.elements) {
        if (max_abs(e.unitary - e.unitary.real().cast<Complex>().eval()) > 1e-10)
            throw std::invalid_argument("lift_design: element has imaginary parts above 1e-10");
        real_elements.push_back({e.unitary.real().cast<Complex>(), e.weight});
    }
    designs::WeightedUnitarySet base = designs::make_explicit(
        v.dimension, std::move(real_elements),
        v.provenance.empty() ? "orthogonal-input" : v.provenance, v.is_group);
    LiftParameters p = solve_alpha(v.dimension);
    designs::WeightedUnitarySet conjugated = designs::conjugate_set(base, p.w);
    designs::WeightedUnitarySet out = designs::product_design({conjugated, base});
    out.provenance = "lift(" + base.provenance + ")";
    return out;
}

double epsilon_propagate(double eps) {
    if (eps < 0.0) throw std::invalid_argument("epsilon_propagate: eps must be nonnegative");
    return 2.0 * eps + eps * eps;
}

namespace {

// Choi matrix of the channel whose action on column-major vectorized inputs
// is the moment matrix s: C[(i n + a), (j n + b)] = s[(b n + a), (j n + i)].
ComplexMatrix choi_from_moment(const ComplexMatrix& s, long n) {
    ComplexMatrix c(n * n, n * n);
    for (long i = 0; i < n; ++i)
        for (long a = 0; a < n; ++a)
            for (long j = 0; j < n; ++j)
                for (long b = 0; b < n; ++b)
                    c(i * n + a, j * n + b) = s(b * n + a, j * n + i);
    return (0.5 * (c + c.adjoint())).eval();
}

}  // namespace

double estimate_epsilon(const designs::WeightedUnitarySet& set, int t) {
    if (t < 1 || t > 2) throw std::invalid_argument("estimate_epsilon: t must be 1 or 2");
    int d = set.dimension;
    long n = tensor_space_dim(d, t);
    if (n * n > kMaxTensorDim)
        throw std::invalid_argument("estimate_epsilon: d^{2t} exceeds the cap");
    ComplexMatrix c_f = choi_from_moment(designs::moment_matrix(set, t), n);
    ComplexMatrix c_h = choi_from_moment(haar::haar_unitary_moment(t, d), n);

    Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(c_f);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("estimate_epsilon: eigendecomposition failed");
    const auto& vals = es.eigenvalues();
    double cutoff = 1e-10 * vals(vals.size() - 1);
    long rank = 0;
    for (long i = 0; i < vals.size(); ++i)
        if (vals(i) > cutoff) ++rank;
    if (rank == 0) return std::numeric_limits<double>::infinity();
    ComplexMatrix support = es.eigenvectors().rightCols(rank);

    // The order comparison has no finite answer if C_H leaks off supp(C_F).
    ComplexMatrix compressed = support * (support.adjoint() * c_h * support) * support.adjoint();
    double leak = max_abs(c_h - compressed);
    if (leak > 1e-8 * std::max(1.0, max_abs(c_h)))
        return std::numeric_limits<double>::infinity();

    ComplexMatrix a = support.adjoint() * c_h * support;
    ComplexMatrix b = support.adjoint() * c_f * support;
    a = (0.5 * (a + a.adjoint())).eval();
    b = (0.5 * (b + b.adjoint())).eval();
    Eigen::GeneralizedSelfAdjointEigenSolver<ComplexMatrix> ges(a, b);
    if (ges.info() != Eigen::Success)
        throw std::runtime_error("estimate_epsilon: generalized eigensolve failed");
    double lo = ges.eigenvalues()(0);
    double hi = ges.eigenvalues()(ges.eigenvalues().size() - 1);
    return std::max({hi - 1.0, 1.0 - lo, 0.0});
}

}  // namespace udesign::ortho_lift
