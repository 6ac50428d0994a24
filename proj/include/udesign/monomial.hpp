#pragma once

#include "udesign/tensorlin.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace udesign::monomial {

// Element of the monomial reflection group of d x d matrices whose nonzero
// entries are cube roots of unity: a permutation together with per-site
// exponents in {0, 1, 2}.
struct MonomialElement {
    Permutation perm;               // column j carries row perm[j]
    std::vector<std::uint8_t> exps; // entry at (perm[j], j) is zeta^{exps[j]}... see natural_rep

    int dim() const { return static_cast<int>(perm.size()); }
    bool operator==(const MonomialElement& o) const { return perm == o.perm && exps == o.exps; }
};

Complex zeta3(int k);  // exp(2 pi i k / 3), exact double constants

MonomialElement identity_element(int d);
// Group law matching natural_rep(a) * natural_rep(b) = natural_rep(multiply(a, b)).
MonomialElement multiply(const MonomialElement& a, const MonomialElement& b);
MonomialElement inverse(const MonomialElement& e);

// d x d matrix with column j holding zeta^{exps[j]} at row perm[j].
ComplexMatrix natural_rep(const MonomialElement& e);
// Trace of natural_rep: sum of zeta^{exps[j]} over fixed points of the permutation.
Complex natural_character(const MonomialElement& e);

std::uint64_t group_order(int d);  // d! * 3^d

// Streams every element exactly once; d <= 8.
void for_each_element(int d, const std::function<void(const MonomialElement&)>& fn);
// Materialized enumeration; d <= 6.
std::vector<MonomialElement> enumerate(int d);

// Exact group average of V^{tensor t} m V^{dagger tensor t}, computed as the
// permutation average composed with the diagonal phase average (an entrywise
// selection rule), never touching individual group elements' tensor powers.
// t <= 2 for any d within caps; t = 3 only for d <= 4.
ComplexMatrix monomial_twirl(int d, int t, const ComplexMatrix& m);

// The twirl as a d^{2t} x d^{2t} matrix on column-major vec(m); t <= 2.
ComplexMatrix monomial_moment_matrix(int d, int t);

// Multiplicity sum <chi chi-bar, chi chi-bar> of the natural character's
// tensor square, by direct summation over all d! 3^d elements; 2 <= d <= 6.
// Rounds to the nearest integer and insists the raw value is within 1e-6.
long gamma_squared_multiplicity_check(int d);

}  // namespace udesign::monomial
