#pragma once

#include "udesign/designs.hpp"
#include "udesign/tensorlin.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace udesign::chartheory {

// Ingested character data: irreducible characters as rows over conjugacy
// classes, plus the class maps g -> g^k needed to evaluate symmetrized
// tensor-power characters without any matrices.
struct CharacterTable {
    std::string group_name;
    std::vector<long> class_sizes;
    std::vector<int> element_orders;
    std::map<int, std::vector<int>> power_maps;
    ComplexMatrix characters;  // irreducibles (rows) x classes (cols)

    long order() const;
    int class_count() const;
    int identity_class() const;  // the unique class of element order 1
    // Class map for g -> g^k; k = 1 is the identity map, k = 4 falls back to
    // squaring twice when no explicit map is stored.
    std::vector<int> power_map(int k) const;
};

// Row orthogonality, size/order consistency, power-map sanity. Throws on
// violation; called by the reader.
void validate_character_table(const CharacterTable& table);

// JSON layout: { "name", "order", "classes": [{"size", "element_order"}],
// "power_maps": {"2": [...], "3": [...]}, "irreducibles": [[value, ...]] }
// where value is {"re":x,"im":y}, a plain number, or a string "a+b*sqrt(n)".
CharacterTable read_character_table(const std::string& path);

// Real quadratic-irrationality literal: signed decimal terms, each optionally
// carrying *sqrt(n). Examples: "3", "-1.5", "sqrt(2)", "0.5-0.5*sqrt(5)".
double parse_quadratic_string(const std::string& text);

struct MatrixGroup {
    int dimension = 0;
    std::vector<ComplexMatrix> generators;
    std::vector<ComplexMatrix> elements;
    // Elements were canonicalized by global phase during closure.
    bool mod_phase = false;

    long order() const { return static_cast<long>(elements.size()); }
};

// Breadth-first closure under multiplication, deduplicating on a 1e-9 entry
// grid. Throws "group too large or not finite at this tolerance" past cap.
MatrixGroup close_group(const std::vector<ComplexMatrix>& generators, std::size_t cap = 100000);

// Same, identifying global phases: every product is rotated so its largest-
// modulus entry (first such in column-major order) is real positive.
MatrixGroup close_group_mod_phase(const std::vector<ComplexMatrix>& generators,
                                  std::size_t cap = 100000);

// Partition of element indices into conjugacy orbits.
std::vector<std::vector<std::size_t>> conjugacy_classes(const MatrixGroup& group);

// Character of the gamma-symmetrized tensor power of the natural rep,
// evaluated per element: a cycle-type-weighted polynomial in the traces of
// matrix powers. t = boxes(gamma) must be at most 4.
std::vector<Complex> plethysm_character(const MatrixGroup& group, const YoungDiagram& gamma);

// Same per class, from table data: trace values of g^k come from rep_char
// composed with the stored power maps.
std::vector<Complex> plethysm_character(const CharacterTable& table,
                                        const std::vector<Complex>& rep_char,
                                        const YoungDiagram& gamma);

// (1/|G|) sum_g a(g) conj(b(g)), element-indexed values.
Complex element_inner_product(const MatrixGroup& group, const std::vector<Complex>& a,
                              const std::vector<Complex>& b);

// (1/|G|) sum_c |c| a(c) conj(b(c)), class-indexed values.
Complex class_inner_product(const CharacterTable& table, const std::vector<Complex>& a,
                            const std::vector<Complex>& b);

// Multiplicity pairings must land on nonnegative integers within 1e-6;
// anything else is corrupt input data, reported as an error.
long integer_multiplicity(Complex value, const std::string& what);

// <chi_gamma, chi_gamma> == 1: the sector stays irreducible under the group.
bool check_condition_one(const MatrixGroup& group, const YoungDiagram& gamma);
bool check_condition_one(const CharacterTable& table, const std::vector<Complex>& rep_char,
                         const YoungDiagram& gamma);

// <chi_gamma, chi_eta> == 0 for distinct sectors: no shared constituent, so
// no nonzero intertwiner. gamma == eta is a precondition violation.
bool check_condition_two(const MatrixGroup& group, const YoungDiagram& gamma,
                         const YoungDiagram& eta);
bool check_condition_two(const CharacterTable& table, const std::vector<Complex>& rep_char,
                         const YoungDiagram& gamma, const YoungDiagram& eta);

// One group under test: either a matrix closure (rep = the matrices) or a
// character table plus the class values of the chosen d-dimensional rep.
struct GroupInput {
    std::string name;
    std::optional<MatrixGroup> matrices;
    std::optional<CharacterTable> table;
    std::vector<Complex> rep_char;
};

struct DiagramCoverage {
    YoungDiagram gamma;
    std::vector<int> satisfied_by;  // indices into the group list
};

struct PairCoverage {
    YoungDiagram gamma;
    YoungDiagram eta;
    std::vector<int> satisfied_by;
};

struct TheoremReport {
    int t = 0;
    int d = 0;
    bool pass = false;
    std::vector<DiagramCoverage> condition_one;
    std::vector<PairCoverage> condition_two;
    std::vector<std::string> uncovered;
    // Product-design moment verification when every group came with matrices
    // and the sizes fit the caps.
    bool numeric_checked = false;
    bool numeric_pass = false;
    double numeric_deviation = 0.0;
};

// Coverage of both design conditions across all sectors with at most d rows:
// every diagram needs some group fixing condition one, every distinct pair
// some group fixing condition two. Uncovered entries are reported, not thrown.
TheoremReport check_theorem_conditions(const std::vector<GroupInput>& groups, int t, int d,
                                       bool numeric_cross_check = true);

}  // namespace udesign::chartheory
