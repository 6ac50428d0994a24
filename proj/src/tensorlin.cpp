#include "udesign/tensorlin.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace udesign {

double max_abs(const ComplexMatrix& m) {
    if (m.size() == 0) return 0.0;
    return m.cwiseAbs().maxCoeff();
}

bool is_unitary(const ComplexMatrix& m, double tol) {
    if (m.rows() != m.cols()) return false;
    ComplexMatrix delta = m.adjoint() * m;
    delta -= ComplexMatrix::Identity(m.rows(), m.cols());
    return max_abs(delta) <= tol;
}

bool is_real(const ComplexMatrix& m, double tol) {
    return m.imag().cwiseAbs().maxCoeff() <= tol;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (long i = 0; i < a.rows(); ++i)
        for (long j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

ComplexMatrix tensor_power(const ComplexMatrix& u, int t) {
    if (t < 1) throw std::invalid_argument("tensor_power: t must be positive");
    ComplexMatrix out = u;
    for (int k = 1; k < t; ++k) out = kron(out, u);
    return out;
}

ComplexMatrix matrix_power_int(const ComplexMatrix& m, int k) {
    if (k < 0) throw std::invalid_argument("matrix_power_int: negative exponent");
    ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
    for (int i = 0; i < k; ++i) out = out * m;
    return out;
}

ComplexVector vec(const ComplexMatrix& m) {
    ComplexVector v(m.size());
    long k = 0;
    for (long j = 0; j < m.cols(); ++j)
        for (long i = 0; i < m.rows(); ++i) v(k++) = m(i, j);
    return v;
}

ComplexMatrix unvec(const ComplexVector& v, long rows, long cols) {
    if (v.size() != rows * cols) throw std::invalid_argument("unvec: size mismatch");
    ComplexMatrix m(rows, cols);
    long k = 0;
    for (long j = 0; j < cols; ++j)
        for (long i = 0; i < rows; ++i) m(i, j) = v(k++);
    return m;
}

long tensor_space_dim(int d, int t) {
    if (d < 1 || t < 1) throw std::invalid_argument("tensor_space_dim: d,t must be positive");
    long n = 1;
    for (int k = 0; k < t; ++k) {
        n *= d;
        if (n > kMaxTensorDim)
            throw std::invalid_argument("tensor_space_dim: d^t exceeds the cap of " +
                                        std::to_string(kMaxTensorDim));
    }
    return n;
}

long tensor_encode(const std::vector<int>& digits, int d) {
    long idx = 0;
    for (int digit : digits) idx = idx * d + digit;
    return idx;
}

std::vector<int> tensor_decode(long index, int d, int t) {
    std::vector<int> digits(t);
    for (int k = t - 1; k >= 0; --k) {
        digits[k] = static_cast<int>(index % d);
        index /= d;
    }
    return digits;
}

Permutation identity_permutation(int t) {
    Permutation p(t);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

Permutation compose(const Permutation& p, const Permutation& q) {
    if (p.size() != q.size()) throw std::invalid_argument("compose: size mismatch");
    Permutation r(p.size());
    for (std::size_t i = 0; i < q.size(); ++i) r[i] = p[q[i]];
    return r;
}

Permutation inverse_permutation(const Permutation& p) {
    Permutation inv(p.size());
    for (std::size_t i = 0; i < p.size(); ++i) inv[p[i]] = static_cast<int>(i);
    return inv;
}

std::vector<Permutation> all_permutations(int t) {
    Permutation p = identity_permutation(t);
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

int YoungDiagram::boxes() const {
    return std::accumulate(row_lengths.begin(), row_lengths.end(), 0);
}

std::string YoungDiagram::str() const {
    std::ostringstream os;
    os << '[';
    for (std::size_t i = 0; i < row_lengths.size(); ++i) {
        if (i) os << ',';
        os << row_lengths[i];
    }
    os << ']';
    return os.str();
}

YoungDiagram make_young_diagram(std::vector<int> row_lengths) {
    if (row_lengths.empty()) throw std::invalid_argument("young diagram: empty partition");
    for (std::size_t i = 0; i < row_lengths.size(); ++i) {
        if (row_lengths[i] < 1) throw std::invalid_argument("young diagram: rows must be positive");
        if (i && row_lengths[i] > row_lengths[i - 1])
            throw std::invalid_argument("young diagram: rows must be non-increasing");
    }
    return YoungDiagram{std::move(row_lengths)};
}

namespace {

void partitions_rec(int remaining, int max_part, int max_rows, std::vector<int>& stack,
                    std::vector<YoungDiagram>& out) {
    if (remaining == 0) {
        out.push_back(YoungDiagram{stack});
        return;
    }
    if (static_cast<int>(stack.size()) == max_rows) return;
    for (int part = std::min(remaining, max_part); part >= 1; --part) {
        stack.push_back(part);
        partitions_rec(remaining - part, part, max_rows, stack, out);
        stack.pop_back();
    }
}

}  // namespace

std::vector<YoungDiagram> young_diagrams(int t, int max_rows) {
    if (t < 1) throw std::invalid_argument("young_diagrams: t must be positive");
    if (max_rows < 1) throw std::invalid_argument("young_diagrams: max_rows must be positive");
    std::vector<YoungDiagram> out;
    std::vector<int> stack;
    partitions_rec(t, t, max_rows, stack, out);
    return out;
}

YoungDiagram cycle_type(const Permutation& p) {
    std::vector<bool> seen(p.size(), false);
    std::vector<int> lengths;
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        int len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(p[j]);
            ++len;
        }
        lengths.push_back(len);
    }
    std::sort(lengths.begin(), lengths.end(), std::greater<int>());
    return YoungDiagram{lengths};
}

namespace {

std::uint64_t factorial_u64(int n) {
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

}  // namespace

std::uint64_t symmetric_class_size(const YoungDiagram& ctype) {
    // t! / prod_k k^{a_k} a_k!  with a_k the number of k-cycles.
    int t = ctype.boxes();
    std::map<int, int> mult;
    for (int len : ctype.row_lengths) ++mult[len];
    std::uint64_t denom = 1;
    for (auto [len, a] : mult) {
        for (int i = 0; i < a; ++i) denom *= static_cast<std::uint64_t>(len);
        denom *= factorial_u64(a);
    }
    return factorial_u64(t) / denom;
}

namespace {

int hook_length(const std::vector<int>& rows, int r, int c) {
    int arm = rows[static_cast<std::size_t>(r)] - c - 1;
    int leg = 0;
    for (std::size_t i = static_cast<std::size_t>(r) + 1; i < rows.size(); ++i)
        if (rows[i] > c) ++leg;
    return arm + leg + 1;
}

}  // namespace

std::uint64_t symmetric_irrep_dimension(const YoungDiagram& gamma) {
    int t = gamma.boxes();
    std::uint64_t num = factorial_u64(t);
    std::uint64_t denom = 1;
    for (int r = 0; r < gamma.rows(); ++r)
        for (int c = 0; c < gamma.row_lengths[static_cast<std::size_t>(r)]; ++c)
            denom *= static_cast<std::uint64_t>(hook_length(gamma.row_lengths, r, c));
    return num / denom;
}

std::uint64_t unitary_irrep_dimension(const YoungDiagram& gamma, int d) {
    if (gamma.rows() > d) return 0;
    // prod over cells of (d + col - row) / hook; compute as exact ratio.
    std::uint64_t num = 1, denom = 1;
    for (int r = 0; r < gamma.rows(); ++r)
        for (int c = 0; c < gamma.row_lengths[static_cast<std::size_t>(r)]; ++c) {
            num *= static_cast<std::uint64_t>(d + c - r);
            denom *= static_cast<std::uint64_t>(hook_length(gamma.row_lengths, r, c));
        }
    return num / denom;
}

namespace {

struct SymmetricTable {
    std::vector<YoungDiagram> labels;        // irrep rows and class columns share labels
    std::vector<std::vector<int>> chi;       // chi[irrep][class]
};

const SymmetricTable& symmetric_table(int t) {
    static std::array<SymmetricTable, 5> tables;  // index by t, 1..4
    static std::once_flag once;
    std::call_once(once, [] {
        auto build = [](int t, std::vector<std::vector<int>> chi) {
            SymmetricTable tab;
            tab.labels = young_diagrams(t, t);
            tab.chi = std::move(chi);
            return tab;
        };
        // Class columns follow young_diagrams order: [t] (long cycles) first,
        // the identity class [1,...,1] last.
        tables[1] = build(1, {{1}});
        tables[2] = build(2, {{1, 1},    // [2]
                              {-1, 1}}); // [1,1]
        tables[3] = build(3, {{1, 1, 1},    // [3]     classes: [3],[2,1],[1,1,1]
                              {-1, 0, 2},   // [2,1]
                              {1, -1, 1}}); // [1,1,1]
        tables[4] = build(4, {{1, 1, 1, 1, 1},     // [4]  classes: [4],[3,1],[2,2],[2,1,1],[1^4]
                              {-1, 0, -1, 1, 3},   // [3,1]
                              {0, -1, 2, 0, 2},    // [2,2]
                              {1, 0, -1, -1, 3},   // [2,1,1]
                              {-1, 1, 1, -1, 1}}); // [1,1,1,1]
        // Column orthogonality: sum_gamma chi(c) chi(c') = t!/|class c| delta.
        for (int t = 1; t <= 4; ++t) {
            const SymmetricTable& tab = tables[static_cast<std::size_t>(t)];
            std::size_t n = tab.labels.size();
            for (std::size_t c1 = 0; c1 < n; ++c1)
                for (std::size_t c2 = 0; c2 < n; ++c2) {
                    long long acc = 0;
                    for (std::size_t g = 0; g < n; ++g)
                        acc += static_cast<long long>(tab.chi[g][c1]) * tab.chi[g][c2];
                    long long expect =
                        c1 == c2 ? static_cast<long long>(factorial_u64(t) /
                                                          symmetric_class_size(tab.labels[c1]))
                                 : 0;
                    if (acc != expect)
                        throw std::logic_error("symmetric character table fails orthogonality");
                }
        }
    });
    if (t < 1 || t > 4)
        throw std::invalid_argument("symmetric_character: only t <= 4 is supported");
    return tables[static_cast<std::size_t>(t)];
}

std::size_t table_index(const SymmetricTable& tab, const YoungDiagram& label,
                        const char* what) {
    for (std::size_t i = 0; i < tab.labels.size(); ++i)
        if (tab.labels[i] == label) return i;
    throw std::invalid_argument(std::string("symmetric_character: unknown ") + what);
}

}  // namespace

int symmetric_character(const YoungDiagram& irrep, const YoungDiagram& ctype) {
    if (irrep.boxes() != ctype.boxes())
        throw std::invalid_argument("symmetric_character: box counts differ");
    const SymmetricTable& tab = symmetric_table(irrep.boxes());
    return tab.chi[table_index(tab, irrep, "irrep")][table_index(tab, ctype, "class")];
}

Projector make_projector(ComplexMatrix p) {
    if (p.rows() != p.cols()) throw std::invalid_argument("make_projector: not square");
    ComplexMatrix sym = 0.5 * (p + p.adjoint().eval());
    if (max_abs(sym - p) > 1e-12)
        throw std::invalid_argument("make_projector: input not hermitian within 1e-12");
    if (max_abs(sym * sym - sym) > 1e-10)
        throw std::invalid_argument("make_projector: input not idempotent within 1e-10");
    double tr = sym.trace().real();
    long dim = std::lround(tr);
    if (std::abs(tr - static_cast<double>(dim)) > 1e-8)
        throw std::invalid_argument("make_projector: trace not integral within 1e-8");
    return Projector{std::move(sym), dim};
}

ComplexMatrix factor_permutation_operator(const Permutation& pi, int d) {
    int t = static_cast<int>(pi.size());
    long n = tensor_space_dim(d, t);
    Permutation inv = inverse_permutation(pi);
    ComplexMatrix r = ComplexMatrix::Zero(n, n);
    std::vector<int> digits(t), moved(t);
    for (long col = 0; col < n; ++col) {
        digits = tensor_decode(col, d, t);
        for (int k = 0; k < t; ++k) moved[k] = digits[static_cast<std::size_t>(inv[k])];
        r(tensor_encode(moved, d), col) = 1.0;
    }
    return r;
}

Projector young_projector(const YoungDiagram& gamma, int d) {
    int t = gamma.boxes();
    if (t > 4) throw std::invalid_argument("young_projector: only t <= 4 is supported");
    if (gamma.rows() > d)
        throw std::invalid_argument("young_projector: diagram has more than d rows");
    long n = tensor_space_dim(d, t);
    double f_gamma = static_cast<double>(symmetric_irrep_dimension(gamma));
    double tfact = static_cast<double>(factorial_u64(t));
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (const Permutation& pi : all_permutations(t)) {
        double coeff = f_gamma * symmetric_character(gamma, cycle_type(pi)) / tfact;
        if (coeff == 0.0) continue;
        // Scatter coeff * R(pi) without materializing R(pi).
        Permutation inv = inverse_permutation(pi);
        std::vector<int> digits(t), moved(t);
        for (long col = 0; col < n; ++col) {
            digits = tensor_decode(col, d, t);
            for (int k = 0; k < t; ++k) moved[k] = digits[static_cast<std::size_t>(inv[k])];
            p(tensor_encode(moved, d), col) += coeff;
        }
    }
    return make_projector(std::move(p));
}

Projector diagonal_pair_projector(int d) {
    long n = tensor_space_dim(d, 2);
    ComplexMatrix p = ComplexMatrix::Zero(n, n);
    for (int j = 0; j < d; ++j) {
        long idx = static_cast<long>(j) * d + j;
        p(idx, idx) = 1.0;
    }
    return Projector{std::move(p), d};
}

Projector bell_projector(int d) {
    long n = tensor_space_dim(d, 2);
    ComplexVector psi = ComplexVector::Zero(n);
    double amp = 1.0 / std::sqrt(static_cast<double>(d));
    for (int j = 0; j < d; ++j) psi(static_cast<long>(j) * d + j) = amp;
    ComplexMatrix p = psi * psi.adjoint();
    return Projector{std::move(p), 1};
}

const std::vector<std::pair<YoungDiagram, Projector>>& sector_projectors(int t, int d) {
    static std::map<std::pair<int, int>, std::vector<std::pair<YoungDiagram, Projector>>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(t, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    std::vector<std::pair<YoungDiagram, Projector>> sectors;
    for (const YoungDiagram& gamma : young_diagrams(t, d))
        sectors.emplace_back(gamma, young_projector(gamma, d));
    return cache.emplace(key, std::move(sectors)).first->second;
}

}  // namespace udesign
