#pragma once

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace udesign {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealMatrix = Eigen::MatrixXd;

// A permutation of {0, ..., t-1} in image form: perm[i] is where i is sent.
using Permutation = std::vector<int>;

// Dimension cap for t-fold tensor spaces: d^t may not exceed this.
inline constexpr long kMaxTensorDim = 4096;
// Elements of a weighted set must be unitary to this tolerance.
inline constexpr double kUnitaryTol = 1e-12;

double max_abs(const ComplexMatrix& m);
bool is_unitary(const ComplexMatrix& m, double tol = kUnitaryTol);
bool is_real(const ComplexMatrix& m, double tol);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix tensor_power(const ComplexMatrix& u, int t);
ComplexMatrix matrix_power_int(const ComplexMatrix& m, int k);

// Column-major vectorization; vec(E_ab) is the unit vector at index b*rows+a.
ComplexVector vec(const ComplexMatrix& m);
ComplexMatrix unvec(const ComplexVector& v, long rows, long cols);

// d^t with an overflow/cap guard; throws std::invalid_argument beyond caps.
long tensor_space_dim(int d, int t);
// Multi-index codec, big-endian: the first tensor factor is most significant.
long tensor_encode(const std::vector<int>& digits, int d);
std::vector<int> tensor_decode(long index, int d, int t);

Permutation identity_permutation(int t);
// compose(p, q) applies q first: (p*q)(i) = p(q(i)).
Permutation compose(const Permutation& p, const Permutation& q);
Permutation inverse_permutation(const Permutation& p);
std::vector<Permutation> all_permutations(int t);

// Partition of a positive integer, row lengths non-increasing.
struct YoungDiagram {
    std::vector<int> row_lengths;

    int boxes() const;
    int rows() const { return static_cast<int>(row_lengths.size()); }
    std::string str() const;
    bool operator==(const YoungDiagram& o) const { return row_lengths == o.row_lengths; }
    bool operator!=(const YoungDiagram& o) const { return !(*this == o); }
};

// Throws if the row lengths are not a valid partition.
YoungDiagram make_young_diagram(std::vector<int> row_lengths);

// All diagrams with t boxes and at most max_rows rows, descending
// lexicographic order ([t] first, the column last when it fits).
std::vector<YoungDiagram> young_diagrams(int t, int max_rows);

YoungDiagram cycle_type(const Permutation& p);
// Number of permutations in S_t with the given cycle type.
std::uint64_t symmetric_class_size(const YoungDiagram& ctype);
// Dimension of the S_t irreducible labelled by gamma (hook length formula).
std::uint64_t symmetric_irrep_dimension(const YoungDiagram& gamma);
// Dimension of the U(d) irreducible labelled by gamma (hook content formula).
std::uint64_t unitary_irrep_dimension(const YoungDiagram& gamma, int d);
// Hard-coded S_t character tables for t <= 4, validated on first use via
// column orthogonality. Throws std::invalid_argument for t > 4.
int symmetric_character(const YoungDiagram& irrep, const YoungDiagram& ctype);

// Orthogonal projector with an integer subspace dimension.
struct Projector {
    ComplexMatrix matrix;
    long subspace_dim = 0;
};

// Symmetrizes to (p + p^dagger)/2, then validates idempotency (1e-10),
// hermiticity (1e-12) and trace integrality (1e-8). Throws on failure.
Projector make_projector(ComplexMatrix p);

// R(pi) on (C^d)^{tensor t}: R(pi)|j_0 ... j_{t-1}> = |j_{pi^-1(0)} ...>.
// Satisfies R(pi) R(sigma) = R(compose(pi, sigma)).
ComplexMatrix factor_permutation_operator(const Permutation& pi, int d);

// Isotypic projector for the diagonal U(d) action on (C^d)^{tensor t}:
// sum over S_t of chi_gamma(pi) R(pi), scaled by dim(gamma)/t!.
Projector young_projector(const YoungDiagram& gamma, int d);

// Span of {|jj>} inside (C^d)^{tensor 2}.
Projector diagonal_pair_projector(int d);
// Rank-one projector onto (1/sqrt d) sum_j |jj>.
Projector bell_projector(int d);

// Young projectors for every diagram with t boxes and at most d rows,
// memoized per (t, d); safe for concurrent readers.
const std::vector<std::pair<YoungDiagram, Projector>>& sector_projectors(int t, int d);

}  // namespace udesign
