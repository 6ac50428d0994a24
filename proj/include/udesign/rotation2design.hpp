#pragma once

#include "udesign/designs.hpp"
#include "udesign/tensorlin.hpp"

namespace udesign::rotation2design {

// Quadratic sum data behind the rotation angle choice for one dimension.
// The overlap of the diagonal-pair projector with its rotated copy, as a
// function of x = sin^2(angle), is the quadratic a*x^2 + b*x + d; the design
// condition picks the root x_star of a*x^2 + b*x + c in (0, 1).
struct RotationParameters {
    int d = 0;
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double q_d = 0.0;     // quadratic sine sum entering a and b
    double delta = 0.0;   // discriminant b^2 - 4ac
    double x_star = 0.0;  // root in (0, 1)
    double t_star = 0.0;  // arcsin(sqrt(x_star)), principal branch
};

// Closed form of sum_j sin(4 pi j^2 / d): 0, +-sqrt(d) or sqrt(2d) by d mod 8.
double gauss_sine_sum(int d);

// The same sum by direct summation; oracle for the closed form.
double gauss_sine_sum_brute(int d);

// Closed form of sum_{j,k} cos(8 pi j k / d), which collapses to d * gcd(4, d).
double gauss_cosine_double_sum(int d);

double gauss_cosine_double_sum_brute(int d);

// F_{jk} = exp(-2 pi i j k / d) / sqrt(d).
ComplexMatrix dft_matrix(int d);

// B = ((1+i)/2) F + ((1-i)/2) F^dag. Real, symmetric, squares to the identity.
ComplexMatrix involution_from_dft(int d);

// Q(t) = cos(t) 1 + i sin(t) B = exp(i t B); unitary for all real t.
ComplexMatrix rotation_path(int d, double t);

// sum_{j,k} |u_{jk}|^4, the overlap of the diagonal-pair projector with its
// conjugate under u tensor u.
double overlap(const ComplexMatrix& u);

// Coefficients, discriminant and the root giving overlap(Q(t_star)) = 2d/(d+1).
// Throws if the root leaves (0,1) or the overlap residual exceeds 1e-9, which
// would indicate a transcription bug rather than a numeric failure.
RotationParameters solve_parameters(int d);

// The two-factor product set: the monomial group conjugated by Q(t_star),
// composed with the monomial group itself. An exact 2-design in dimension d.
// Supported for 2 <= d <= 64; full element materialization only for small d.
designs::WeightedUnitarySet construct_2design(int d);

}  // namespace udesign::rotation2design
