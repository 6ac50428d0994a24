#pragma once

// Shared fixtures and oracles for the test suite.

#include "udesign/designs.hpp"
#include "udesign/haar.hpp"
#include "udesign/parallel.hpp"
#include "udesign/tensorlin.hpp"

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace testutil {

using udesign::Complex;
using udesign::ComplexMatrix;
using udesign::RealMatrix;

inline ComplexMatrix random_gaussian(long rows, long cols, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(rows, cols);
    for (long c = 0; c < cols; ++c)
        for (long r = 0; r < rows; ++r) m(r, c) = Complex(gauss(rng), gauss(rng));
    return m;
}

inline ComplexMatrix random_hermitian(long n, std::uint64_t seed) {
    ComplexMatrix m = random_gaussian(n, n, seed);
    return 0.5 * (m + m.adjoint());
}

inline ComplexMatrix pauli(char which) {
    ComplexMatrix m(2, 2);
    switch (which) {
        case 'I': m << 1, 0, 0, 1; break;
        case 'X': m << 0, 1, 1, 0; break;
        case 'Y': m << 0, Complex(0, -1), Complex(0, 1), 0; break;
        default:  m << 1, 0, 0, -1; break;
    }
    return m;
}

inline udesign::designs::WeightedUnitarySet pauli_set() {
    std::vector<udesign::designs::WeightedElement> els;
    for (char p : {'I', 'X', 'Y', 'Z'}) els.push_back({pauli(p), 0.25});
    return udesign::designs::make_explicit(2, std::move(els), "pauli-mod-phase", true);
}

inline ComplexMatrix hadamard2() {
    ComplexMatrix h(2, 2);
    double s = 1.0 / std::sqrt(2.0);
    h << s, s, s, -s;
    return h;
}

inline ComplexMatrix phase_gate() {
    ComplexMatrix s(2, 2);
    s << 1, 0, 0, Complex(0, 1);
    return s;
}

// Real 2x2 rotations and reflections: the dihedral group of order 2n.
inline std::vector<ComplexMatrix> dihedral_elements(int n) {
    std::vector<ComplexMatrix> els;
    for (int k = 0; k < n; ++k) {
        double th = 2.0 * M_PI * k / n;
        ComplexMatrix r(2, 2);
        r << std::cos(th), -std::sin(th), std::sin(th), std::cos(th);
        els.push_back(r);
        ComplexMatrix f(2, 2);  // reflection: rotation composed with diag(1,-1)
        f << std::cos(th), std::sin(th), std::sin(th), -std::cos(th);
        els.push_back(f);
    }
    return els;
}

inline udesign::designs::WeightedUnitarySet uniform_set(int d,
                                                        const std::vector<ComplexMatrix>& els,
                                                        const std::string& provenance) {
    std::vector<udesign::designs::WeightedElement> weighted;
    double w = 1.0 / static_cast<double>(els.size());
    for (const ComplexMatrix& m : els) weighted.push_back({m, w});
    return udesign::designs::make_explicit(d, std::move(weighted), provenance, true);
}

// Generators of the order-60 rotation group of the icosahedron inside O(3):
// the coordinate 3-cycle and the order-5 rotation about an icosahedron vertex
// axis (0, 1, phi), built from the axis-angle formula.
inline std::vector<ComplexMatrix> icosahedral_generators() {
    ComplexMatrix cyc = ComplexMatrix::Zero(3, 3);
    cyc(0, 2) = 1;
    cyc(1, 0) = 1;
    cyc(2, 1) = 1;

    double phi = 0.5 * (1.0 + std::sqrt(5.0));
    Eigen::Vector3d axis(0.0, 1.0, phi);
    axis.normalize();
    double th = 2.0 * M_PI / 5.0;
    Eigen::Matrix3d k;
    k << 0, -axis(2), axis(1), axis(2), 0, -axis(0), -axis(1), axis(0), 0;
    Eigen::Matrix3d rot =
        Eigen::Matrix3d::Identity() + std::sin(th) * k + (1.0 - std::cos(th)) * k * k;
    return {cyc, rot.cast<Complex>()};
}

// Monte Carlo twirl average with per-entry standard errors. Sample i uses the
// deterministic sampler at seed base_seed + i, so the estimate is reproducible
// and independent of the worker count.
struct McTwirl {
    ComplexMatrix mean;
    RealMatrix stderr_entries;
};

inline McTwirl mc_twirl(int t, int d, const ComplexMatrix& probe, bool orthogonal,
                        std::uint64_t base_seed, long samples) {
    const long n = probe.rows();
    struct Acc {
        ComplexMatrix sum;
        RealMatrix sumsq;
    };
    auto make = [&] { return Acc{ComplexMatrix::Zero(n, n), RealMatrix::Zero(n, n)}; };
    auto body = [&](Acc& acc, std::size_t i) {
        ComplexMatrix v = orthogonal
                              ? udesign::haar::random_orthogonal(d, base_seed + i)
                              : udesign::haar::random_unitary(d, base_seed + i);
        ComplexMatrix vt = udesign::tensor_power(v, t);
        ComplexMatrix out = vt * probe * vt.adjoint();
        acc.sum += out;
        acc.sumsq += out.cwiseAbs2();
    };
    auto merge = [](Acc& total, const Acc& part) {
        total.sum += part.sum;
        total.sumsq += part.sumsq;
    };
    Acc total = udesign::parallel_reduce(static_cast<std::size_t>(samples), make, body, merge);

    McTwirl result;
    result.mean = total.sum / static_cast<double>(samples);
    result.stderr_entries = RealMatrix::Zero(n, n);
    for (long c = 0; c < n; ++c)
        for (long r = 0; r < n; ++r) {
            double second = total.sumsq(r, c) / static_cast<double>(samples);
            double var = second - std::norm(result.mean(r, c));
            result.stderr_entries(r, c) = std::sqrt(std::max(var, 0.0) / samples);
        }
    return result;
}

// Largest violation of |mean - exact| <= sigmas * stderr + floor over entries.
inline double mc_excess(const McTwirl& mc, const ComplexMatrix& exact, double sigmas,
                        double floor) {
    double worst = 0.0;
    for (long c = 0; c < exact.cols(); ++c)
        for (long r = 0; r < exact.rows(); ++r) {
            double dev = std::abs(mc.mean(r, c) - exact(r, c));
            double allowed = sigmas * mc.stderr_entries(r, c) + floor;
            worst = std::max(worst, dev - allowed);
        }
    return worst;
}

}  // namespace testutil
