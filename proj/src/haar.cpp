#include "udesign/haar.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <random>
#include <stdexcept>
#include <tuple>

namespace udesign::haar {

std::vector<PairPartition> pair_partitions(int n) {
    if (n < 0 || n % 2 != 0) throw std::invalid_argument("pair_partitions: n must be even");
    std::vector<PairPartition> out;
    PairPartition current;
    std::vector<bool> used(static_cast<std::size_t>(n), false);
    // Always pair the smallest free point; keeps the enumeration canonical.
    auto rec = [&](auto&& self) -> void {
        int first = -1;
        for (int i = 0; i < n; ++i)
            if (!used[static_cast<std::size_t>(i)]) {
                first = i;
                break;
            }
        if (first < 0) {
            out.push_back(current);
            return;
        }
        used[static_cast<std::size_t>(first)] = true;
        for (int j = first + 1; j < n; ++j) {
            if (used[static_cast<std::size_t>(j)]) continue;
            used[static_cast<std::size_t>(j)] = true;
            current.emplace_back(first, j);
            self(self);
            current.pop_back();
            used[static_cast<std::size_t>(j)] = false;
        }
        used[static_cast<std::size_t>(first)] = false;
    };
    rec(rec);
    return out;
}

int glued_loop_count(const PairPartition& a, const PairPartition& b, int points) {
    std::vector<int> parent(static_cast<std::size_t>(points));
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[static_cast<std::size_t>(x)] != x) {
            parent[static_cast<std::size_t>(x)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
            x = parent[static_cast<std::size_t>(x)];
        }
        return x;
    };
    auto unite = [&](int x, int y) { parent[static_cast<std::size_t>(find(x))] = find(y); };
    for (const auto& [x, y] : a) unite(x, y);
    for (const auto& [x, y] : b) unite(x, y);
    int components = 0;
    for (int i = 0; i < points; ++i)
        if (find(i) == i) ++components;
    return components;
}

namespace {

// Contraction operator of a pair partition: entry (I, J) is the product of
// delta constraints, with leg k < t reading I_k and leg t+k reading J_k.
// Built by sweeping the d^t free pair values, so only nonzeros are touched.
ComplexMatrix pairing_operator(const PairPartition& pairing, int t, int d) {
    long n = tensor_space_dim(d, t);
    ComplexMatrix op = ComplexMatrix::Zero(n, n);
    std::size_t npairs = pairing.size();
    std::vector<int> value(npairs, 0);
    std::vector<int> bra(static_cast<std::size_t>(t)), ket(static_cast<std::size_t>(t));
    while (true) {
        for (std::size_t p = 0; p < npairs; ++p) {
            for (int leg : {pairing[p].first, pairing[p].second}) {
                if (leg < t)
                    bra[static_cast<std::size_t>(leg)] = value[p];
                else
                    ket[static_cast<std::size_t>(leg - t)] = value[p];
            }
        }
        op(tensor_encode(bra, d), tensor_encode(ket, d)) += 1.0;
        std::size_t p = 0;
        while (p < npairs && ++value[p] == d) value[p++] = 0;
        if (p == npairs) break;
    }
    return op;
}

PairPartition permutation_pairing(const Permutation& pi) {
    // R(pi) as a pairing: bra leg k is tied to ket leg pi^-1(k).
    int t = static_cast<int>(pi.size());
    Permutation inv = inverse_permutation(pi);
    PairPartition pairing;
    pairing.reserve(static_cast<std::size_t>(t));
    for (int k = 0; k < t; ++k) pairing.emplace_back(k, t + inv[static_cast<std::size_t>(k)]);
    return pairing;
}

std::shared_ptr<const SpanningOperatorSet> build_spanning_set(const std::string& group, int t,
                                                              int d) {
    tensor_space_dim(d, t);  // enforces the d^t cap
    auto set = std::make_shared<SpanningOperatorSet>();
    set->group = group;
    set->t = t;
    set->d = d;
    std::vector<PairPartition> pairings;
    if (group == "unitary") {
        if (t < 1 || t > 4)
            throw std::invalid_argument("spanning_set: unitary group requires 1 <= t <= 4");
        for (const Permutation& pi : all_permutations(t)) {
            pairings.push_back(permutation_pairing(pi));
            set->operators.push_back(factor_permutation_operator(pi, d));
        }
    } else if (group == "orthogonal") {
        if (t < 1 || t > 3)
            throw std::invalid_argument("spanning_set: orthogonal group requires 1 <= t <= 3");
        pairings = pair_partitions(2 * t);
        for (const PairPartition& p : pairings) set->operators.push_back(pairing_operator(p, t, d));
    } else {
        throw std::invalid_argument("spanning_set: group must be 'unitary' or 'orthogonal'");
    }
    std::size_t m = set->operators.size();
    set->gram.resize(static_cast<long>(m), static_cast<long>(m));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j)
            set->gram(static_cast<long>(i), static_cast<long>(j)) = std::pow(
                static_cast<double>(d), glued_loop_count(pairings[i], pairings[j], 2 * t));
    Eigen::SelfAdjointEigenSolver<RealMatrix> es(set->gram);
    if (es.info() != Eigen::Success)
        throw std::runtime_error("spanning_set: Gram eigendecomposition failed");
    const auto& vals = es.eigenvalues();
    double cutoff = 1e-10 * vals(vals.size() - 1);
    RealMatrix inv_diag = RealMatrix::Zero(vals.size(), vals.size());
    double smallest_kept = 0.0;
    for (long i = 0; i < vals.size(); ++i) {
        if (vals(i) > cutoff) {
            inv_diag(i, i) = 1.0 / vals(i);
            if (smallest_kept == 0.0) smallest_kept = vals(i);
            ++set->rank;
        }
    }
    set->gram_pinv = es.eigenvectors() * inv_diag * es.eigenvectors().transpose();
    set->condition = smallest_kept > 0.0 ? vals(vals.size() - 1) / smallest_kept : 0.0;
    set->rank_deficient = set->rank < static_cast<int>(m);
    return set;
}

}  // namespace

std::shared_ptr<const SpanningOperatorSet> spanning_set(const std::string& group, int t, int d) {
    static std::map<std::tuple<std::string, int, int>, std::shared_ptr<const SpanningOperatorSet>>
        cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_tuple(group, t, d);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto set = build_spanning_set(group, t, d);
    cache.emplace(std::move(key), set);
    return set;
}

namespace {

ComplexMatrix commutant_projection(const SpanningOperatorSet& set, const ComplexMatrix& m) {
    long n = tensor_space_dim(set.d, set.t);
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("twirl: operand must be d^t x d^t");
    std::size_t k = set.operators.size();
    ComplexVector overlaps(static_cast<long>(k));
    for (std::size_t i = 0; i < k; ++i)
        overlaps(static_cast<long>(i)) = (set.operators[i].adjoint() * m).trace();
    ComplexVector coeff = set.gram_pinv.cast<Complex>() * overlaps;
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (std::size_t j = 0; j < k; ++j) out += coeff(static_cast<long>(j)) * set.operators[j];
    return out;
}

ComplexMatrix moment_from_set(const SpanningOperatorSet& set) {
    long n = tensor_space_dim(set.d, set.t);
    if (n * n > kMaxTensorDim)
        throw std::invalid_argument("moment: d^{2t} exceeds the cap of " +
                                    std::to_string(kMaxTensorDim));
    std::size_t k = set.operators.size();
    std::vector<ComplexVector> vecs;
    vecs.reserve(k);
    for (const ComplexMatrix& op : set.operators) vecs.push_back(vec(op));
    ComplexMatrix s = ComplexMatrix::Zero(n * n, n * n);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            double w = set.gram_pinv(static_cast<long>(i), static_cast<long>(j));
            if (w == 0.0) continue;
            s += w * (vecs[j] * vecs[i].adjoint());
        }
    return s;
}

}  // namespace

ComplexMatrix haar_unitary_twirl(int t, int d, const ComplexMatrix& m) {
    return commutant_projection(*spanning_set("unitary", t, d), m);
}

ComplexMatrix haar_orthogonal_twirl(int t, int d, const ComplexMatrix& m) {
    return commutant_projection(*spanning_set("orthogonal", t, d), m);
}

namespace {

// One isotypic block: operators spanning the commutant inside the block and
// the pseudo-inverse of their numeric Gram. Projecting onto this span is the
// conditional expectation X -> (partial trace over the irrep factor) tensor 1,
// evaluated without an explicit block factorization.
struct SectorBlock {
    std::vector<ComplexMatrix> operators;
    RealMatrix gram_pinv;
};

const std::vector<SectorBlock>& sector_blocks(int t, int d) {
    static std::map<std::pair<int, int>, std::unique_ptr<std::vector<SectorBlock>>> cache;
    static std::mutex mutex;
    std::lock_guard<std::mutex> lock(mutex);
    auto key = std::make_pair(t, d);
    auto it = cache.find(key);
    if (it != cache.end()) return *it->second;

    auto blocks = std::make_unique<std::vector<SectorBlock>>();
    for (const auto& [gamma, p] : sector_projectors(t, d)) {
        SectorBlock block;
        for (const Permutation& pi : all_permutations(t)) {
            ComplexMatrix op = p.matrix * factor_permutation_operator(pi, d) * p.matrix;
            if (max_abs(op) < 1e-14) continue;
            block.operators.push_back(std::move(op));
        }
        if (block.operators.empty()) continue;
        long k = static_cast<long>(block.operators.size());
        RealMatrix gram(k, k);
        for (long i = 0; i < k; ++i)
            for (long j = 0; j < k; ++j) {
                Complex g = (block.operators[i].adjoint() * block.operators[j]).trace();
                gram(i, j) = g.real();
            }
        Eigen::SelfAdjointEigenSolver<RealMatrix> es(gram);
        if (es.info() != Eigen::Success)
            throw std::runtime_error("sector_blocks: Gram eigendecomposition failed");
        const auto& vals = es.eigenvalues();
        double cutoff = 1e-10 * vals(vals.size() - 1);
        RealMatrix inv_diag = RealMatrix::Zero(k, k);
        for (long i = 0; i < k; ++i)
            if (vals(i) > cutoff) inv_diag(i, i) = 1.0 / vals(i);
        block.gram_pinv = es.eigenvectors() * inv_diag * es.eigenvectors().transpose();
        blocks->push_back(std::move(block));
    }
    const auto& stored = *cache.emplace(key, std::move(blocks)).first->second;
    return stored;
}

}  // namespace

ComplexMatrix haar_unitary_twirl_sectors(int t, int d, const ComplexMatrix& m) {
    long n = tensor_space_dim(d, t);
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("twirl: operand must be d^t x d^t");
    ComplexMatrix out = ComplexMatrix::Zero(n, n);
    for (const SectorBlock& block : sector_blocks(t, d)) {
        std::size_t k = block.operators.size();
        ComplexVector overlaps(static_cast<long>(k));
        for (std::size_t i = 0; i < k; ++i)
            overlaps(static_cast<long>(i)) =
                (block.operators[i].adjoint() * m).trace();
        ComplexVector coeff = block.gram_pinv.cast<Complex>() * overlaps;
        for (std::size_t j = 0; j < k; ++j)
            out += coeff(static_cast<long>(j)) * block.operators[j];
    }
    return out;
}

ComplexMatrix haar_unitary_moment(int t, int d) {
    if (t > 2) throw std::invalid_argument("haar_unitary_moment: explicit moment needs t <= 2");
    return moment_from_set(*spanning_set("unitary", t, d));
}

ComplexMatrix haar_orthogonal_moment(int t, int d) {
    if (t > 2) throw std::invalid_argument("haar_orthogonal_moment: explicit moment needs t <= 2");
    return moment_from_set(*spanning_set("orthogonal", t, d));
}

ComplexMatrix random_unitary(int d, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix z(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) {
            double re = gauss(engine);
            double im = gauss(engine);
            z(i, j) = Complex(re, im);
        }
    Eigen::HouseholderQR<ComplexMatrix> qr(z);
    ComplexMatrix q = qr.householderQ();
    ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix the gauge so the distribution is Haar: make diag(R) real positive.
    for (long j = 0; j < d; ++j) {
        Complex rjj = r(j, j);
        double mag = std::abs(rjj);
        q.col(j) *= mag == 0.0 ? 1.0 : rjj / mag;
    }
    return q;
}

ComplexMatrix random_orthogonal(int d, std::uint64_t seed) {
    std::mt19937_64 engine(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    RealMatrix z(d, d);
    for (long i = 0; i < d; ++i)
        for (long j = 0; j < d; ++j) z(i, j) = gauss(engine);
    Eigen::HouseholderQR<RealMatrix> qr(z);
    RealMatrix q = qr.householderQ();
    RealMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    for (long j = 0; j < d; ++j)
        if (r(j, j) < 0.0) q.col(j) *= -1.0;
    return q.cast<Complex>();
}

}  // namespace udesign::haar
