#pragma once

#include "udesign/tensorlin.hpp"

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace udesign::designs {

inline constexpr std::size_t kMaterializeCap = 1000000;
// Two unitaries are the same element iff they agree entrywise to this bound.
// Global phases are deliberately not identified.
inline constexpr double kMergeTol = 1e-10;

struct WeightedElement {
    ComplexMatrix unitary;
    double weight = 0.0;
};

// Finite weighted set of unitaries. Either materialized (elements non-empty)
// or lazy: a product of factors, or a structured group reachable through the
// twirl/moment closures. "kind" records how to rebuild the set from JSON:
//   explicit | monomial | conjugated-monomial | product
struct WeightedUnitarySet {
    int dimension = 0;
    std::string provenance = "explicit";
    std::string kind = "explicit";
    bool is_group = false;
    std::vector<WeightedElement> elements;
    std::vector<std::shared_ptr<const WeightedUnitarySet>> factors;
    ComplexMatrix conjugator;  // set when kind == "conjugated-monomial"

    // Structured fast paths; may be present alongside materialized elements.
    std::function<ComplexMatrix(int, const ComplexMatrix&)> twirl_override;
    std::function<ComplexMatrix(int)> moment_override;
    std::uint64_t structured_count = 0;  // element count of a structured group

    bool materialized() const { return !elements.empty(); }
    // Number of elements once materialized (pre-merge upper bound for products).
    std::uint64_t cardinality() const;
};

// Validates weights (positive, summing to 1 within 1e-12) and unitarity.
WeightedUnitarySet make_explicit(int dimension, std::vector<WeightedElement> elements,
                                 std::string provenance, bool is_group = false);
void validate_set(const WeightedUnitarySet& set);

// The monomial reflection group as a weighted set with uniform weights and
// structured twirl/moment paths; materializes its elements when d <= 4.
WeightedUnitarySet make_monomial_group_set(int d);

// {q v q^dagger : v in set} with unchanged weights; q must be unitary.
WeightedUnitarySet conjugate_set(const WeightedUnitarySet& set, const ComplexMatrix& q);

// Product set under the convolution weights: materialized (with merging of
// equal products) when every factor materializes and the pre-merge element
// count is at most cap, lazy otherwise. Factor order is composition order:
// elements are v1 * v2 * ... * vk.
WeightedUnitarySet product_design(const std::vector<WeightedUnitarySet>& factors,
                                  std::size_t cap = kMaterializeCap);

// Forces an explicit element list; throws above the cap.
WeightedUnitarySet materialize(const WeightedUnitarySet& set, std::size_t cap = kMaterializeCap);

// Merge duplicates (entrywise within kMergeTol), summing weights.
std::vector<WeightedElement> merge_weighted_elements(std::vector<WeightedElement> elements,
                                                     double tol = kMergeTol);

// sum_{i,j} w_i w_j |Tr(V_i^dagger V_j)|^{2t}; needs a materializable set.
double frame_potential(const WeightedUnitarySet& set, int t,
                       std::size_t cap = kMaterializeCap);

// sum_V w(V) V^{tensor t} m V^{dagger tensor t}, preferring structured paths.
ComplexMatrix twirl_apply(const WeightedUnitarySet& set, int t, const ComplexMatrix& m);
// Same channel, but strictly by summation over materialized elements.
ComplexMatrix twirl_apply_direct(const WeightedUnitarySet& set, int t, const ComplexMatrix& m);
// Channel as a d^{2t} x d^{2t} matrix on column-major vec(m); t <= 2.
ComplexMatrix moment_matrix(const WeightedUnitarySet& set, int t);

// Twirl channel handle: explicit moment matrix for t <= 2, apply procedure
// for t = 3, 4.
struct TwirlChannel {
    int dimension = 0;
    int order = 0;
    ComplexMatrix moment;  // empty unless order <= 2 and within caps
    std::function<ComplexMatrix(const ComplexMatrix&)> apply_fn;

    ComplexMatrix apply(const ComplexMatrix& m) const;
};
TwirlChannel make_twirl_channel(const WeightedUnitarySet& set, int t);

struct VerifyOptions {
    double tol = 1e-9;
    std::uint64_t seed = 0;
    int min_random_probes = 50;
    // When set, caps the matrix-unit probe count; excess falls back to random
    // probes. Matrix units are used whenever d^{2t} fits the cap.
    std::optional<long> max_probes;
};

struct MomentReport {
    bool pass = false;
    double max_deviation = 0.0;
    long probes = 0;
    std::string probe_kind;  // "matrix-units" or "random"
    double tol = 0.0;
};

struct SectorPairDeviation {
    YoungDiagram gamma;
    YoungDiagram eta;
    double deviation = 0.0;
};

struct SectorReport {
    bool pass = false;
    double max_deviation = 0.0;
    long probes = 0;
    std::string probe_kind;
    double tol = 0.0;
    std::vector<SectorPairDeviation> pairs;  // all (gamma, eta) combinations
    SectorPairDeviation worst;
};

// Entrywise comparison of the set's order-t twirl against the exact Haar
// unitary twirl, on the full matrix-unit basis when d^{2t} <= 4096 and on
// seeded Gaussian probes otherwise.
MomentReport verify_design_moment(const WeightedUnitarySet& set, int t,
                                  const VerifyOptions& opts = {});

// Same comparison split by Young sector pairs: deviation of
// P_gamma (T_set(m) - T_haar(m)) P_eta, reported per pair with the worst
// offender. Diagonal failures localize sector splitting, off-diagonal
// failures localize leakage between inequivalent sectors.
SectorReport verify_design_sectors(const WeightedUnitarySet& set, int t,
                                   const VerifyOptions& opts = {});

// Design files: {"dimension", "provenance", "elements": [{weight, re, im}]}
// or the lazy form {"dimension", "provenance", "factors": [...]} with factor
// kinds explicit | monomial | conjugated-monomial.
void write_design_file(const std::string& path, const WeightedUnitarySet& set);
WeightedUnitarySet read_design_file(const std::string& path);

}  // namespace udesign::designs
