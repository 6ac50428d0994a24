#pragma once

#include "udesign/tensorlin.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace udesign::haar {

// Perfect matching of {0, ..., 2t-1}; points 0..t-1 are bra legs, t..2t-1 ket
// legs, and pair {a, b} forces the two attached indices equal.
using PairPartition = std::vector<std::pair<int, int>>;

// All (n-1)!! perfect matchings of {0, ..., n-1}; n must be even.
std::vector<PairPartition> pair_partitions(int n);

// Connected components of the multigraph on 2t points whose edges are the
// pairs of both partitions; Tr(B_a^dagger B_b) = d^{loops}.
int glued_loop_count(const PairPartition& a, const PairPartition& b, int points);

// Spanning set of the commutant of the t-fold tensor action, with the Gram
// matrix and its pseudo-inverse used for orthogonal projection onto the span.
struct SpanningOperatorSet {
    std::string group;  // "unitary" or "orthogonal"
    int t = 0;
    int d = 0;
    std::vector<ComplexMatrix> operators;
    RealMatrix gram;
    RealMatrix gram_pinv;
    int rank = 0;
    double condition = 1.0;     // largest / smallest retained Gram eigenvalue
    bool rank_deficient = false;
};

// Memoized per (group, t, d); safe for concurrent readers.
// Unitary: t <= 4, the t! factor permutation operators.
// Orthogonal: t <= 3, the (2t-1)!! pair partition contraction operators.
std::shared_ptr<const SpanningOperatorSet> spanning_set(const std::string& group, int t, int d);

// Orthogonal projection of m onto the span, i.e. the exact Haar average of
// V^{tensor t} m V^{dagger tensor t} over the group.
ComplexMatrix haar_unitary_twirl(int t, int d, const ComplexMatrix& m);
ComplexMatrix haar_orthogonal_twirl(int t, int d, const ComplexMatrix& m);

// Same channel assembled sector by sector: sum over Young diagrams gamma of
// P_gamma (Haar twirl of m) P_gamma.
ComplexMatrix haar_unitary_twirl_sectors(int t, int d, const ComplexMatrix& m);

// Channel as a d^{2t} x d^{2t} matrix acting on column-major vec(m); t <= 2.
ComplexMatrix haar_unitary_moment(int t, int d);
ComplexMatrix haar_orthogonal_moment(int t, int d);

// Haar-distributed samples (Gaussian + QR with the R-diagonal phase fix).
// Deterministic for a fixed seed.
ComplexMatrix random_unitary(int d, std::uint64_t seed);
ComplexMatrix random_orthogonal(int d, std::uint64_t seed);

}  // namespace udesign::haar
