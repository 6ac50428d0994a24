#include "udesign/rotation2design.hpp"

#include "udesign/monomial.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace udesign::rotation2design {

namespace {

constexpr double kPi = 3.14159265358979323846;

void require_dim(int d, const char* who) {
    if (d < 2) throw std::invalid_argument(std::string(who) + ": d must be at least 2");
}

}  // namespace

double gauss_sine_sum(int d) {
    require_dim(d, "gauss_sine_sum");
    switch (d % 8) {
        case 1:
        case 2:
        case 4:
        case 5:
            return 0.0;
        case 7:
            return std::sqrt(static_cast<double>(d));
        case 3:
            return -std::sqrt(static_cast<double>(d));
        default:  // 0 or 6
            return std::sqrt(2.0 * static_cast<double>(d));
    }
}

double gauss_sine_sum_brute(int d) {
    require_dim(d, "gauss_sine_sum_brute");
    double sum = 0.0;
    for (int j = 0; j < d; ++j) {
        // Reduce j^2 mod d first so the argument stays small for large d.
        long jj = (static_cast<long>(j) * j) % d;
        sum += std::sin(4.0 * kPi * static_cast<double>(jj) / d);
    }
    return sum;
}

double gauss_cosine_double_sum(int d) {
    require_dim(d, "gauss_cosine_double_sum");
    return static_cast<double>(d) * std::gcd(4, d);
}

double gauss_cosine_double_sum_brute(int d) {
    require_dim(d, "gauss_cosine_double_sum_brute");
    double sum = 0.0;
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            long jk = (static_cast<long>(j) * k) % d;
            sum += std::cos(8.0 * kPi * static_cast<double>(jk) / d);
        }
    return sum;
}

ComplexMatrix dft_matrix(int d) {
    require_dim(d, "dft_matrix");
    ComplexMatrix f(d, d);
    double norm = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j)
        for (int k = 0; k < d; ++k) {
            long jk = (static_cast<long>(j) * k) % d;
            double theta = -2.0 * kPi * static_cast<double>(jk) / d;
            f(j, k) = norm * Complex(std::cos(theta), std::sin(theta));
        }
    return f;
}

ComplexMatrix involution_from_dft(int d) {
    ComplexMatrix f = dft_matrix(d);
    Complex half_plus(0.5, 0.5), half_minus(0.5, -0.5);
    ComplexMatrix b = half_plus * f + half_minus * f.adjoint();
    // Entrywise (cos + sin)(2 pi j k / d) / sqrt(d); drop rounding-level
    // imaginary residue so downstream algebra sees an exactly real matrix.
    return b.real().cast<Complex>();
}

ComplexMatrix rotation_path(int d, double t) {
    require_dim(d, "rotation_path");
    ComplexMatrix b = involution_from_dft(d);
    return std::cos(t) * ComplexMatrix::Identity(d, d) + Complex(0.0, std::sin(t)) * b;
}

double overlap(const ComplexMatrix& u) {
    if (u.rows() != u.cols()) throw std::invalid_argument("overlap: matrix must be square");
    double sum = 0.0;
    for (long j = 0; j < u.rows(); ++j)
        for (long k = 0; k < u.cols(); ++k) {
            double sq = std::norm(u(j, k));
            sum += sq * sq;
        }
    return sum;
}

RotationParameters solve_parameters(int d) {
    require_dim(d, "solve_parameters");
    RotationParameters p;
    p.d = d;
    double dd = static_cast<double>(d);
    p.q_d = gauss_sine_sum(d);
    double g4 = static_cast<double>(std::gcd(4, d));
    p.a = (2.0 * dd - 1.0) / 2.0 - 2.0 * p.q_d / dd - g4 / (2.0 * dd);
    p.b = -2.0 * (dd - 1.0) + 2.0 * p.q_d / dd;
    p.c = dd * (dd - 1.0) / (dd + 1.0);
    p.delta = p.b * p.b - 4.0 * p.a * p.c;
    if (p.delta < 0.0)
        throw std::runtime_error("solve_parameters: negative discriminant at d = " +
                                 std::to_string(d));
    if (std::abs(p.a) < 1e-10) {
        // Degenerate quadratic; the linear root takes over.
        p.x_star = -p.c / p.b;
    } else {
        p.x_star = (-p.b - std::sqrt(p.delta)) / (2.0 * p.a);
    }
    if (!(p.x_star > 0.0 && p.x_star < 1.0))
        throw std::runtime_error("solve_parameters: root outside (0,1) at d = " +
                                 std::to_string(d));
    p.t_star = std::asin(std::sqrt(p.x_star));
    double target = 2.0 * dd / (dd + 1.0);
    double residual = std::abs(overlap(rotation_path(d, p.t_star)) - target);
    if (residual > 1e-9)
        throw std::runtime_error("solve_parameters: overlap residual " +
                                 std::to_string(residual) + " at d = " + std::to_string(d));
    return p;
}

designs::WeightedUnitarySet construct_2design(int d) {
    if (d < 2 || d > 64)
        throw std::invalid_argument("construct_2design: supported range is 2 <= d <= 64");
    RotationParameters p = solve_parameters(d);
    ComplexMatrix q = rotation_path(d, p.t_star);
    designs::WeightedUnitarySet group = designs::make_monomial_group_set(d);
    designs::WeightedUnitarySet rotated = designs::conjugate_set(group, q);
    designs::WeightedUnitarySet out = designs::product_design({rotated, group});
    out.provenance = "rotation-2design(d=" + std::to_string(d) + ")";
    return out;
}

}  // namespace udesign::rotation2design
