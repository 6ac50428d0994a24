#include "udesign/haar.hpp"

#include "test_util.hpp"
#include "udesign/tensorlin.hpp"

#include <doctest.h>

#include <cmath>
#include <set>

using namespace udesign;
using namespace udesign::haar;

namespace {

ComplexMatrix symmetric_projector(int d) {
    ComplexMatrix swap = factor_permutation_operator({1, 0}, d);
    return 0.5 * (ComplexMatrix::Identity(d * d, d * d) + swap);
}

}  // namespace

TEST_SUITE("haar") {

TEST_CASE("pair partition counts are (n-1)!!") {
    CHECK(pair_partitions(2).size() == 1);
    CHECK(pair_partitions(4).size() == 3);
    CHECK(pair_partitions(6).size() == 15);
    for (const auto& p : pair_partitions(6)) {
        std::set<int> seen;
        for (auto [a, b] : p) {
            seen.insert(a);
            seen.insert(b);
        }
        CHECK(seen.size() == 6);
    }
}

TEST_CASE("gram entries d^loops equal the explicit trace computation") {
    for (const std::string& group : {std::string("unitary"), std::string("orthogonal")})
        for (int t = 2; t <= 3; ++t)
            for (int d = 2; d <= 3; ++d) {
                auto span = spanning_set(group, t, d);
                long n = static_cast<long>(span->operators.size());
                for (long i = 0; i < n; ++i)
                    for (long j = 0; j < n; ++j) {
                        Complex tr = (span->operators[i].adjoint() * span->operators[j]).trace();
                        CHECK(std::abs(tr.imag()) <= 1e-9);
                        CHECK(std::abs(tr.real() - span->gram(i, j)) <= 1e-9);
                    }
            }
}

TEST_CASE("spanning set sizes and rank flags") {
    CHECK(spanning_set("unitary", 2, 3)->operators.size() == 2);
    CHECK(spanning_set("unitary", 3, 3)->operators.size() == 6);
    CHECK(spanning_set("unitary", 4, 2)->operators.size() == 24);
    CHECK(spanning_set("orthogonal", 2, 3)->operators.size() == 3);
    CHECK(spanning_set("orthogonal", 3, 3)->operators.size() == 15);

    // d < t: permutation operators become linearly dependent
    auto deficient = spanning_set("unitary", 3, 2);
    CHECK(deficient->rank_deficient);
    CHECK(deficient->rank == 5);  // sum of squared multiplicities over 2-row sectors of S_3
    auto full = spanning_set("unitary", 2, 2);
    CHECK_FALSE(full->rank_deficient);
    CHECK(full->rank == 2);
    CHECK(full->condition >= 1.0);
    // unitary t=2 Gram is [[d^2, d], [d, d^2]]
    CHECK(full->gram(0, 0) == doctest::Approx(4.0));
    CHECK(full->gram(0, 1) == doctest::Approx(2.0));
}

TEST_CASE("order one twirl is the depolarizing channel") {
    for (int d = 2; d <= 4; ++d) {
        ComplexMatrix m = testutil::random_gaussian(d, d, 17 + d);
        ComplexMatrix expected = m.trace() / static_cast<double>(d) *
                                 ComplexMatrix::Identity(d, d);
        CHECK(max_abs(haar_unitary_twirl(1, d, m) - expected) <= 1e-12);
        CHECK(max_abs(haar_orthogonal_twirl(1, d, m) - expected) <= 1e-12);
    }
}

TEST_CASE("identity is fixed and trace is preserved") {
    for (int t = 2; t <= 3; ++t)
        for (int d = 2; d <= 3; ++d) {
            long n = tensor_space_dim(d, t);
            ComplexMatrix id = ComplexMatrix::Identity(n, n);
            CHECK(max_abs(haar_unitary_twirl(t, d, id) - id) <= 1e-10);
            ComplexMatrix m = testutil::random_gaussian(n, n, 400 + 10 * t + d);
            ComplexMatrix out = haar_unitary_twirl(t, d, m);
            CHECK(std::abs((out.trace() - m.trace())) <= 1e-9);
            ComplexMatrix h = testutil::random_hermitian(n, 500 + d);
            ComplexMatrix out_h = haar_unitary_twirl(t, d, h);
            CHECK(max_abs(out_h - out_h.adjoint()) <= 1e-10);
        }
}

TEST_CASE("unitary twirl of a symmetric rank-one state is the normalized symmetric projector") {
    // Weingarten pins: the (jj,jj) entry is 2/(d(d+1)), the (jk,jk) entry 1/(d(d+1)).
    for (int d = 2; d <= 4; ++d) {
        ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
        m(0, 0) = 1.0;  // |00><00|
        ComplexMatrix expected = symmetric_projector(d) * (2.0 / (d * (d + 1.0)));
        CHECK(max_abs(haar_unitary_twirl(2, d, m) - expected) <= 1e-12);
    }
}

TEST_CASE("twirls are idempotent channels") {
    for (int t = 2; t <= 3; ++t)
        for (int d = 2; d <= 3; ++d) {
            long n = tensor_space_dim(d, t);
            ComplexMatrix m = testutil::random_gaussian(n, n, 31 * t + d);
            ComplexMatrix once = haar_unitary_twirl(t, d, m);
            CHECK(max_abs(haar_unitary_twirl(t, d, once) - once) <= 1e-10);
            ComplexMatrix o_once = haar_orthogonal_twirl(t, d, m);
            CHECK(max_abs(haar_orthogonal_twirl(t, d, o_once) - o_once) <= 1e-10);
        }
}

TEST_CASE("twirl output commutes with tensor powers of group elements") {
    int t = 2, d = 3;
    long n = tensor_space_dim(d, t);
    ComplexMatrix m = testutil::random_gaussian(n, n, 55);
    ComplexMatrix out_u = haar_unitary_twirl(t, d, m);
    ComplexMatrix out_o = haar_orthogonal_twirl(t, d, m);
    for (int k = 0; k < 20; ++k) {
        ComplexMatrix gt = tensor_power(random_unitary(d, 900 + k), t);
        CHECK(max_abs(out_u * gt - gt * out_u) <= 1e-9);
        ComplexMatrix ot = tensor_power(random_orthogonal(d, 950 + k), t);
        CHECK(max_abs(out_o * ot - ot * out_o) <= 1e-9);
    }
}

TEST_CASE("sector assembly agrees with the direct commutant projection") {
    for (int t = 2; t <= 3; ++t)
        for (int d = 2; d <= 3; ++d) {
            long n = tensor_space_dim(d, t);
            for (int k = 0; k < 3; ++k) {
                ComplexMatrix m = testutil::random_gaussian(n, n, 70 + 10 * t + d + k);
                CHECK(max_abs(haar_unitary_twirl_sectors(t, d, m) -
                              haar_unitary_twirl(t, d, m)) <= 1e-9);
            }
        }
    // t=4 with a rank-deficient spanning set
    ComplexMatrix m = testutil::random_gaussian(16, 16, 99);
    CHECK(max_abs(haar_unitary_twirl_sectors(4, 2, m) - haar_unitary_twirl(4, 2, m)) <= 1e-9);
}

TEST_CASE("probes supported on one sector stay there") {
    int t = 3, d = 2;
    const auto& sectors = sector_projectors(t, d);
    ComplexMatrix m = testutil::random_gaussian(8, 8, 123);
    for (const auto& [gamma, proj] : sectors) {
        ComplexMatrix inside = proj.matrix * m * proj.matrix;
        ComplexMatrix out = haar_unitary_twirl(t, d, inside);
        CHECK(max_abs(out - proj.matrix * out * proj.matrix) <= 1e-10);
    }
}

TEST_CASE("moment matrices act as the twirl on vectorized probes") {
    for (int t = 1; t <= 2; ++t)
        for (int d = 2; d <= 3; ++d) {
            long n = tensor_space_dim(d, t);
            ComplexMatrix s_u = haar_unitary_moment(t, d);
            ComplexMatrix s_o = haar_orthogonal_moment(t, d);
            CHECK(max_abs(s_u * s_u - s_u) <= 1e-10);
            CHECK(max_abs(s_o * s_o - s_o) <= 1e-10);
            ComplexMatrix m = testutil::random_gaussian(n, n, 140 + d + t);
            CHECK(max_abs(unvec(s_u * vec(m), n, n) - haar_unitary_twirl(t, d, m)) <= 1e-10);
            CHECK(max_abs(unvec(s_o * vec(m), n, n) - haar_orthogonal_twirl(t, d, m)) <= 1e-10);
        }
}

TEST_CASE("unitary twirl absorbs the orthogonal twirl") {
    for (int d = 2; d <= 5; ++d) {
        long n = static_cast<long>(d) * d;
        ComplexMatrix m = testutil::random_gaussian(n, n, 160 + d);
        ComplexMatrix lhs = haar_unitary_twirl(2, d, haar_orthogonal_twirl(2, d, m));
        CHECK(max_abs(lhs - haar_unitary_twirl(2, d, m)) <= 1e-9);
    }
}

TEST_CASE("orthogonal order-two twirl is the sum of three isotypic averages") {
    for (int d = 3; d <= 6; ++d) {
        long n = static_cast<long>(d) * d;
        ComplexMatrix bell = bell_projector(d).matrix;
        ComplexMatrix sym = symmetric_projector(d);
        ComplexMatrix traceless_sym = sym - bell;
        ComplexMatrix anti = ComplexMatrix::Identity(n, n) - sym;
        ComplexMatrix m = testutil::random_gaussian(n, n, 180 + d);
        ComplexMatrix expected =
            (bell.adjoint() * m).trace() * bell +
            (traceless_sym.adjoint() * m).trace() / traceless_sym.trace().real() * traceless_sym +
            (anti.adjoint() * m).trace() / anti.trace().real() * anti;
        CHECK(max_abs(haar_orthogonal_twirl(2, d, m) - expected) <= 1e-9);
    }
}

TEST_CASE("fourth moment of a single entry matches the literature constants") {
    for (int d = 2; d <= 6; ++d) {
        ComplexMatrix m = ComplexMatrix::Zero(d * d, d * d);
        m(0, 0) = 1.0;
        double u4 = haar_unitary_twirl(2, d, m)(0, 0).real();
        CHECK(u4 == doctest::Approx(2.0 / (d * (d + 1.0))).epsilon(1e-12));
        double o4 = haar_orthogonal_twirl(2, d, m)(0, 0).real();
        CHECK(o4 == doctest::Approx(3.0 / (d * (d + 2.0))).epsilon(1e-12));
    }
}

TEST_CASE("monte carlo average approaches the commutant projection") {
    int t = 2, d = 2;
    ComplexMatrix probe = testutil::random_hermitian(4, 2024);
    ComplexMatrix exact = haar_unitary_twirl(t, d, probe);
    testutil::McTwirl mc = testutil::mc_twirl(t, d, probe, false, 10000, 100000);
    CHECK(max_abs(mc.mean - exact) <= 1e-2);
    CHECK(testutil::mc_excess(mc, exact, 4.0, 1e-4) <= 0.0);
}

TEST_CASE("random unitaries are deterministic per seed and Haar-like") {
    ComplexMatrix a = random_unitary(3, 4);
    CHECK(max_abs(a - random_unitary(3, 4)) == 0.0);
    CHECK(max_abs(a - random_unitary(3, 5)) > 1e-3);
    CHECK(is_unitary(a, 1e-12));

    ComplexMatrix o = random_orthogonal(3, 4);
    CHECK(is_unitary(o, 1e-12));
    CHECK(is_real(o, 1e-13));

    // scalar first and second moment checks, 1e5 samples
    long n_samples = 100000;
    int d = 3;
    double sum11 = 0.0, sumsq = 0.0;
    Complex mean_entry(0, 0);
    bool det_plus = false, det_minus = false;
    for (long i = 0; i < n_samples; ++i) {
        ComplexMatrix u = random_unitary(d, 3000 + i);
        double p = std::norm(u(0, 0));
        sum11 += p;
        sumsq += p * p;
        mean_entry += u(1, 2);
        if (i < 100) {
            double det = random_orthogonal(d, 7000 + i).determinant().real();
            (det > 0 ? det_plus : det_minus) = true;
        }
    }
    double mean = sum11 / n_samples;
    double se = std::sqrt((sumsq / n_samples - mean * mean) / n_samples);
    CHECK(std::abs(mean - 1.0 / d) <= 3.0 * se + 1e-12);
    CHECK(std::abs(mean_entry) / n_samples <= 3.0 / std::sqrt(static_cast<double>(n_samples)));
    CHECK(det_plus);
    CHECK(det_minus);
}

}  // TEST_SUITE
