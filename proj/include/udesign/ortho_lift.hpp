#pragma once

#include "udesign/designs.hpp"
#include "udesign/tensorlin.hpp"

#include <cstdint>
#include <string>

namespace udesign::ortho_lift {

// Diagonal conjugator turning orthogonal-group averages into unitary ones.
struct LiftParameters {
    int d = 0;
    double alpha = 0.0;  // in (0, 1)
    ComplexMatrix w;     // w_{jj} = exp(i pi j alpha / d), diagonal unitary
};

// |sum_{j<d} exp(2 pi i alpha j / d)|^2. Closed Dirichlet-kernel form
// sin^2(pi alpha) / sin^2(pi alpha / d) away from the removable singularity,
// direct summation near it. Decreases from d^2 at alpha=0 to 0 at alpha=1.
double dirichlet_q(int d, double alpha);

// Bisection for dirichlet_q(d, alpha) = 2d/(d+1); residual at most 1e-12.
LiftParameters solve_alpha(int d);

struct CompositionReport {
    int d = 0;
    int t = 0;
    bool pass = false;
    // Order-3 behavior below d = 5 is measured, not promised.
    bool informational = false;
    double max_deviation = 0.0;
    double tol = 0.0;
    long probes = 0;
    std::string probe_kind;
};

// Checks that the Haar unitary twirl equals the W-conjugated orthogonal twirl
// composed with the plain orthogonal twirl. Full matrix-unit basis at t=2
// (d up to 6); random probes at t=3 (d up to 6, flagged informational below 5).
CompositionReport verify_composition_identity(int d, int t, std::uint64_t seed = 0,
                                              long random_probes = 100);

// Moment verification against the orthogonal-group Haar twirl (t <= 3).
designs::MomentReport verify_orthogonal_design(const designs::WeightedUnitarySet& set, int t,
                                               const designs::VerifyOptions& opts = {});

// Product of the W-conjugated copy with the original: an exact unitary
// t-design whenever the input is an exact orthogonal t-design (t = 2, 3).
// Elements must be real within 1e-10; they are re-projected to real entries.
designs::WeightedUnitarySet lift_design(const designs::WeightedUnitarySet& v, int t);

// Error growth of the lift on approximate inputs: eps -> 2*eps + eps^2.
double epsilon_propagate(double eps);

// Smallest eps with (1-eps) C_F <= C_H <= (1+eps) C_F in the positive
// semidefinite order, from generalized eigenvalues of the two Choi matrices
// on the support of C_F. Infinity when C_H leaks outside that support. t <= 2.
double estimate_epsilon(const designs::WeightedUnitarySet& set, int t);

}  // namespace udesign::ortho_lift
