#include "udesign/monomial.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace udesign::monomial {

namespace {

constexpr double kHalfSqrt3 = 0.86602540378443864676;

void check_dim(int d, int cap, const char* what) {
    if (d < 1 || d > cap)
        throw std::invalid_argument(std::string(what) + ": d must be in [1, " +
                                    std::to_string(cap) + "]");
}

}  // namespace

Complex zeta3(int k) {
    switch (((k % 3) + 3) % 3) {
        case 0: return Complex(1.0, 0.0);
        case 1: return Complex(-0.5, kHalfSqrt3);
        default: return Complex(-0.5, -kHalfSqrt3);
    }
}

MonomialElement identity_element(int d) {
    return MonomialElement{identity_permutation(d), std::vector<std::uint8_t>(d, 0)};
}

MonomialElement multiply(const MonomialElement& a, const MonomialElement& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("monomial multiply: dimension mismatch");
    int d = a.dim();
    MonomialElement out;
    out.perm = compose(a.perm, b.perm);
    out.exps.resize(static_cast<std::size_t>(d));
    // Derived from the matrix product: column j of a*b picks up b's phase at j
    // and a's phase at the site b sends j to.
    for (int j = 0; j < d; ++j)
        out.exps[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(
            (b.exps[static_cast<std::size_t>(j)] +
             a.exps[static_cast<std::size_t>(b.perm[static_cast<std::size_t>(j)])]) %
            3);
    return out;
}

MonomialElement inverse(const MonomialElement& e) {
    int d = e.dim();
    MonomialElement out;
    out.perm = inverse_permutation(e.perm);
    out.exps.resize(static_cast<std::size_t>(d));
    for (int j = 0; j < d; ++j)
        out.exps[static_cast<std::size_t>(j)] = static_cast<std::uint8_t>(
            (3 - e.exps[static_cast<std::size_t>(out.perm[static_cast<std::size_t>(j)])]) % 3);
    return out;
}

ComplexMatrix natural_rep(const MonomialElement& e) {
    int d = e.dim();
    ComplexMatrix m = ComplexMatrix::Zero(d, d);
    for (int j = 0; j < d; ++j)
        m(e.perm[static_cast<std::size_t>(j)], j) = zeta3(e.exps[static_cast<std::size_t>(j)]);
    return m;
}

Complex natural_character(const MonomialElement& e) {
    Complex chi(0.0, 0.0);
    for (int j = 0; j < e.dim(); ++j)
        if (e.perm[static_cast<std::size_t>(j)] == j) chi += zeta3(e.exps[static_cast<std::size_t>(j)]);
    return chi;
}

std::uint64_t group_order(int d) {
    std::uint64_t order = 1;
    for (int k = 2; k <= d; ++k) order *= static_cast<std::uint64_t>(k);
    for (int k = 0; k < d; ++k) order *= 3;
    return order;
}

void for_each_element(int d, const std::function<void(const MonomialElement&)>& fn) {
    check_dim(d, 8, "for_each_element");
    MonomialElement e = identity_element(d);
    Permutation& perm = e.perm;
    std::sort(perm.begin(), perm.end());
    do {
        std::fill(e.exps.begin(), e.exps.end(), 0);
        while (true) {
            fn(e);
            // Odometer over the 3^d phase exponents.
            std::size_t k = 0;
            while (k < e.exps.size() && ++e.exps[k] == 3) e.exps[k++] = 0;
            if (k == e.exps.size()) break;
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
}

std::vector<MonomialElement> enumerate(int d) {
    check_dim(d, 6, "enumerate");
    std::vector<MonomialElement> out;
    out.reserve(group_order(d));
    for_each_element(d, [&](const MonomialElement& e) { out.push_back(e); });
    return out;
}

namespace {

// Diagonal phase average: entry (I, J) survives iff, for every site s, the
// multiplicity of s among I's digits is congruent mod 3 to that among J's.
ComplexMatrix phase_average(int d, int t, const ComplexMatrix& m) {
    long n = tensor_space_dim(d, t);
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    std::vector<int> net(static_cast<std::size_t>(d));
    for (long row = 0; row < n; ++row) {
        std::vector<int> rdig = tensor_decode(row, d, t);
        for (long col = 0; col < n; ++col) {
            std::vector<int> cdig = tensor_decode(col, d, t);
            std::fill(net.begin(), net.end(), 0);
            for (int k = 0; k < t; ++k) {
                ++net[static_cast<std::size_t>(rdig[static_cast<std::size_t>(k)])];
                --net[static_cast<std::size_t>(cdig[static_cast<std::size_t>(k)])];
            }
            bool keep = true;
            for (int s = 0; s < d && keep; ++s)
                keep = net[static_cast<std::size_t>(s)] % 3 == 0;
            if (keep) out(row, col) = m(row, col);
        }
    }
    return out;
}

// Image of a multi-index under the digitwise site permutation.
long relabel(long index, const Permutation& omega, int d, int t) {
    std::vector<int> digits = tensor_decode(index, d, t);
    for (int& digit : digits) digit = omega[static_cast<std::size_t>(digit)];
    return tensor_encode(digits, d);
}

}  // namespace

ComplexMatrix monomial_twirl(int d, int t, const ComplexMatrix& m) {
    if (t < 1 || t > 3) throw std::invalid_argument("monomial_twirl: t must be in [1, 3]");
    if (t == 3 && d > 4)
        throw std::invalid_argument("monomial_twirl: t = 3 is supported only for d <= 4");
    long n = tensor_space_dim(d, t);
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("monomial_twirl: operand must be d^t x d^t");
    ComplexMatrix z = phase_average(d, t, m);
    // Permutation average: accumulate the index relabelling for every omega.
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    Permutation omega = identity_permutation(d);
    std::uint64_t count = 0;
    std::vector<long> map(static_cast<std::size_t>(n));
    do {
        for (long i = 0; i < n; ++i) map[static_cast<std::size_t>(i)] = relabel(i, omega, d, t);
        for (long i = 0; i < n; ++i)
            for (long j = 0; j < n; ++j)
                out(map[static_cast<std::size_t>(i)], map[static_cast<std::size_t>(j)]) += z(i, j);
        ++count;
    } while (std::next_permutation(omega.begin(), omega.end()));
    return out / static_cast<double>(count);
}

ComplexMatrix monomial_moment_matrix(int d, int t) {
    if (t < 1 || t > 2) throw std::invalid_argument("monomial_moment_matrix: t must be 1 or 2");
    long n = tensor_space_dim(d, t);
    if (n * n > kMaxTensorDim)
        throw std::invalid_argument("monomial_moment_matrix: d^{2t} exceeds the cap");
    long nn = n * n;
    // Columns are vec-indices (row I, col J) of the operand; only columns that
    // pass the phase selection rule are nonzero, and each spreads uniformly
    // over the permutation orbit of (I, J).
    ComplexMatrix s = ComplexMatrix::Zero(nn, nn);
    ComplexMatrix mask = phase_average(d, t, ComplexMatrix::Ones(n, n));
    std::vector<Permutation> perms = all_permutations(d);
    double w = 1.0 / static_cast<double>(perms.size());
    std::vector<std::vector<long>> maps;
    maps.reserve(perms.size());
    for (const Permutation& omega : perms) {
        std::vector<long> map(static_cast<std::size_t>(n));
        for (long i = 0; i < n; ++i) map[static_cast<std::size_t>(i)] = relabel(i, omega, d, t);
        maps.push_back(std::move(map));
    }
    for (long row = 0; row < n; ++row)
        for (long col = 0; col < n; ++col) {
            if (mask(row, col) == 0.0) continue;
            long v = col * n + row;
            for (const auto& map : maps) {
                long u = map[static_cast<std::size_t>(col)] * n + map[static_cast<std::size_t>(row)];
                s(u, v) += w;
            }
        }
    return s;
}

long gamma_squared_multiplicity_check(int d) {
    if (d < 2 || d > 6)
        throw std::invalid_argument("gamma_squared_multiplicity_check: d must be in [2, 6]");
    double acc = 0.0;
    for_each_element(d, [&](const MonomialElement& e) {
        double a = std::norm(natural_character(e));  // |chi|^2
        acc += a * a;
    });
    double value = acc / static_cast<double>(group_order(d));
    long rounded = std::lround(value);
    if (std::abs(value - static_cast<double>(rounded)) > 1e-6)
        throw std::runtime_error("gamma_squared_multiplicity_check: non-integer multiplicity sum");
    return rounded;
}

}  // namespace udesign::monomial
