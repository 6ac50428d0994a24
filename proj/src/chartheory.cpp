#include "udesign/chartheory.hpp"

#include "udesign/haar.hpp"
#include "udesign/parallel.hpp"

#include <json.hpp>

#include <cctype>
#include <cmath>
#include <cstdint>
#include <deque>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <unordered_map>

namespace udesign::chartheory {

using nlohmann::json;

long CharacterTable::order() const {
    return std::accumulate(class_sizes.begin(), class_sizes.end(), 0L);
}

int CharacterTable::class_count() const { return static_cast<int>(class_sizes.size()); }

int CharacterTable::identity_class() const {
    for (int c = 0; c < class_count(); ++c)
        if (element_orders[static_cast<std::size_t>(c)] == 1) return c;
    throw std::runtime_error("character table: no identity class");
}

std::vector<int> CharacterTable::power_map(int k) const {
    int n = class_count();
    if (k == 1) {
        std::vector<int> id(static_cast<std::size_t>(n));
        for (int c = 0; c < n; ++c) id[static_cast<std::size_t>(c)] = c;
        return id;
    }
    auto it = power_maps.find(k);
    if (it != power_maps.end()) return it->second;
    if (k == 4) {
        // g^4 = (g^2)^2, and squaring is well defined on classes.
        std::vector<int> p2 = power_map(2);
        std::vector<int> p4(p2.size());
        for (std::size_t c = 0; c < p2.size(); ++c)
            p4[c] = p2[static_cast<std::size_t>(p2[c])];
        return p4;
    }
    throw std::runtime_error("character table: missing power map for k = " + std::to_string(k));
}

void validate_character_table(const CharacterTable& table) {
    int n = table.class_count();
    if (n == 0) throw std::runtime_error("character table: no classes");
    if (static_cast<int>(table.element_orders.size()) != n)
        throw std::runtime_error("character table: element order count mismatch");
    if (table.characters.rows() != n || table.characters.cols() != n)
        throw std::runtime_error("character table: need exactly one irreducible per class");
    long order = table.order();
    int identity_count = 0;
    for (int c = 0; c < n; ++c) {
        long size = table.class_sizes[static_cast<std::size_t>(c)];
        int element_order = table.element_orders[static_cast<std::size_t>(c)];
        if (size < 1) throw std::runtime_error("character table: nonpositive class size");
        if (element_order < 1) throw std::runtime_error("character table: nonpositive order");
        if (order % element_order != 0)
            throw std::runtime_error("character table: element order does not divide |G|");
        if (element_order == 1) {
            ++identity_count;
            if (size != 1) throw std::runtime_error("character table: identity class size != 1");
        }
    }
    if (identity_count != 1)
        throw std::runtime_error("character table: need exactly one identity class");
    int identity = table.identity_class();

    double dim_square_sum = 0.0;
    for (int i = 0; i < n; ++i) {
        Complex dim = table.characters(i, identity);
        if (std::abs(dim.imag()) > 1e-8 || dim.real() < 1.0 - 1e-8 ||
            std::abs(dim.real() - std::round(dim.real())) > 1e-8)
            throw std::runtime_error("character table: irrep dimension not a positive integer");
        dim_square_sum += dim.real() * dim.real();
    }
    if (std::abs(dim_square_sum - static_cast<double>(order)) > 1e-6)
        throw std::runtime_error("character table: squared dimensions do not sum to |G|");

    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            Complex ip(0.0, 0.0);
            for (int c = 0; c < n; ++c)
                ip += static_cast<double>(table.class_sizes[static_cast<std::size_t>(c)]) *
                      table.characters(i, c) * std::conj(table.characters(j, c));
            ip /= static_cast<double>(order);
            double expected = i == j ? 1.0 : 0.0;
            if (std::abs(ip - Complex(expected, 0.0)) > 1e-8)
                throw std::runtime_error("character table: row orthogonality fails for rows " +
                                         std::to_string(i) + ", " + std::to_string(j));
        }

    for (const auto& [k, map] : table.power_maps) {
        if (k < 1) throw std::runtime_error("character table: power map exponent < 1");
        if (static_cast<int>(map.size()) != n)
            throw std::runtime_error("character table: power map size mismatch");
        for (int c = 0; c < n; ++c) {
            int target = map[static_cast<std::size_t>(c)];
            if (target < 0 || target >= n)
                throw std::runtime_error("character table: power map target out of range");
            int source_order = table.element_orders[static_cast<std::size_t>(c)];
            int expected = source_order / std::gcd(source_order, k);
            if (table.element_orders[static_cast<std::size_t>(target)] != expected)
                throw std::runtime_error(
                    "character table: power map violates element orders at class " +
                    std::to_string(c) + ", k = " + std::to_string(k));
            if (k == 1 && target != c)
                throw std::runtime_error("character table: power map 1 must be the identity");
        }
    }
}

double parse_quadratic_string(const std::string& text) {
    std::string s;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) s.push_back(ch);
    if (s.empty()) throw std::runtime_error("character value: empty string");

    double total = 0.0;
    std::size_t pos = 0;
    while (pos < s.size()) {
        double sign = 1.0;
        if (s[pos] == '+' || s[pos] == '-') {
            sign = s[pos] == '-' ? -1.0 : 1.0;
            ++pos;
        }
        // Term boundary: next +/- that is not part of an exponent.
        std::size_t end = pos;
        while (end < s.size() && s[end] != '+' && s[end] != '-') ++end;
        std::string term = s.substr(pos, end - pos);
        if (term.empty()) throw std::runtime_error("character value: dangling sign in '" + text + "'");
        pos = end;

        double coefficient = 1.0;
        double radical = 1.0;
        std::size_t sqrt_at = term.find("sqrt(");
        if (sqrt_at != std::string::npos) {
            if (term.back() != ')')
                throw std::runtime_error("character value: unterminated sqrt in '" + text + "'");
            std::string inner = term.substr(sqrt_at + 5, term.size() - sqrt_at - 6);
            std::size_t used = 0;
            long n = std::stol(inner, &used);
            if (used != inner.size() || n < 0)
                throw std::runtime_error("character value: bad radicand in '" + text + "'");
            radical = std::sqrt(static_cast<double>(n));
            std::string prefix = term.substr(0, sqrt_at);
            if (!prefix.empty()) {
                if (prefix.back() != '*')
                    throw std::runtime_error("character value: expected '*' before sqrt in '" +
                                             text + "'");
                prefix.pop_back();
                std::size_t c_used = 0;
                coefficient = std::stod(prefix, &c_used);
                if (c_used != prefix.size())
                    throw std::runtime_error("character value: bad coefficient in '" + text + "'");
            }
        } else {
            std::size_t used = 0;
            coefficient = std::stod(term, &used);
            if (used != term.size())
                throw std::runtime_error("character value: bad number in '" + text + "'");
        }
        total += sign * coefficient * radical;
    }
    return total;
}

namespace {

Complex parse_character_value(const json& value) {
    if (value.is_number()) return Complex(value.get<double>(), 0.0);
    if (value.is_string()) return Complex(parse_quadratic_string(value.get<std::string>()), 0.0);
    if (value.is_object())
        return Complex(value.value("re", 0.0), value.value("im", 0.0));
    throw std::runtime_error("character value: expected number, string, or {re, im}");
}

}  // namespace

CharacterTable read_character_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_character_table: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("read_character_table: " + std::string(e.what()));
    }
    CharacterTable table;
    table.group_name = j.value("name", "unnamed");
    const json& classes = j.at("classes");
    for (const json& cls : classes) {
        table.class_sizes.push_back(cls.at("size").get<long>());
        table.element_orders.push_back(cls.at("element_order").get<int>());
    }
    int n = table.class_count();
    if (j.contains("order") && j.at("order").get<long>() != table.order())
        throw std::runtime_error("read_character_table: class sizes do not sum to the order");
    if (j.contains("power_maps"))
        for (const auto& [key, map] : j.at("power_maps").items()) {
            std::vector<int> entries;
            for (const json& v : map) entries.push_back(v.get<int>());
            table.power_maps[std::stoi(key)] = std::move(entries);
        }
    const json& irreducibles = j.at("irreducibles");
    if (static_cast<int>(irreducibles.size()) != n)
        throw std::runtime_error("read_character_table: need one irreducible row per class");
    table.characters.resize(n, n);
    for (int i = 0; i < n; ++i) {
        const json& row = irreducibles.at(static_cast<std::size_t>(i));
        if (static_cast<int>(row.size()) != n)
            throw std::runtime_error("read_character_table: ragged character row");
        for (int c = 0; c < n; ++c)
            table.characters(i, c) = parse_character_value(row.at(static_cast<std::size_t>(c)));
    }
    validate_character_table(table);
    return table;
}

namespace {

struct KeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const {
        std::size_t h = 1469598103934665603ull;
        for (std::int64_t v : key) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

// 1e-9 grid key. Entries of the fixture families sit far from the rounding
// boundaries, so accumulated product error cannot split a bucket.
std::vector<std::int64_t> grid_key(const ComplexMatrix& m) {
    std::vector<std::int64_t> key;
    key.reserve(static_cast<std::size_t>(m.size()) * 2);
    for (long j = 0; j < m.cols(); ++j)
        for (long i = 0; i < m.rows(); ++i) {
            key.push_back(std::llround(m(i, j).real() * 1e9));
            key.push_back(std::llround(m(i, j).imag() * 1e9));
        }
    return key;
}

ComplexMatrix canonical_phase(const ComplexMatrix& m) {
    double best = 0.0;
    for (long j = 0; j < m.cols(); ++j)
        for (long i = 0; i < m.rows(); ++i) best = std::max(best, std::abs(m(i, j)));
    for (long j = 0; j < m.cols(); ++j)
        for (long i = 0; i < m.rows(); ++i)
            if (std::abs(m(i, j)) >= best - 1e-9) {
                Complex phase = m(i, j) / std::abs(m(i, j));
                return (m * std::conj(phase)).eval();
            }
    throw std::logic_error("canonical_phase: zero matrix");
}

MatrixGroup close_group_impl(const std::vector<ComplexMatrix>& generators, std::size_t cap,
                             bool mod_phase) {
    if (generators.empty()) throw std::invalid_argument("close_group: no generators");
    int d = static_cast<int>(generators.front().rows());
    for (const ComplexMatrix& g : generators) {
        if (g.rows() != d || g.cols() != d)
            throw std::invalid_argument("close_group: generator dimension mismatch");
        if (!is_unitary(g)) throw std::invalid_argument("close_group: generator not unitary");
    }
    MatrixGroup group;
    group.dimension = d;
    group.generators = generators;
    group.mod_phase = mod_phase;

    std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, KeyHash> buckets;
    auto try_insert = [&](ComplexMatrix m) -> bool {
        if (mod_phase) m = canonical_phase(m);
        auto& bucket = buckets[grid_key(m)];
        for (std::size_t idx : bucket)
            if (max_abs(group.elements[idx] - m) <= 1e-8) return false;
        bucket.push_back(group.elements.size());
        group.elements.push_back(std::move(m));
        return true;
    };

    try_insert(ComplexMatrix::Identity(d, d));
    std::deque<std::size_t> frontier{0};
    while (!frontier.empty()) {
        std::size_t at = frontier.front();
        frontier.pop_front();
        for (const ComplexMatrix& g : generators) {
            ComplexMatrix product = group.elements[at] * g;
            if (try_insert(std::move(product))) {
                if (group.elements.size() > cap)
                    throw std::runtime_error("group too large or not finite at this tolerance");
                frontier.push_back(group.elements.size() - 1);
            }
        }
    }
    return group;
}

}  // namespace

MatrixGroup close_group(const std::vector<ComplexMatrix>& generators, std::size_t cap) {
    return close_group_impl(generators, cap, false);
}

MatrixGroup close_group_mod_phase(const std::vector<ComplexMatrix>& generators, std::size_t cap) {
    return close_group_impl(generators, cap, true);
}

std::vector<std::vector<std::size_t>> conjugacy_classes(const MatrixGroup& group) {
    std::unordered_map<std::vector<std::int64_t>, std::size_t, KeyHash> index;
    for (std::size_t i = 0; i < group.elements.size(); ++i)
        index[grid_key(group.elements[i])] = i;
    auto lookup = [&](ComplexMatrix m) {
        if (group.mod_phase) m = canonical_phase(m);
        auto it = index.find(grid_key(m));
        if (it == index.end())
            throw std::runtime_error("conjugacy_classes: conjugate left the element set");
        return it->second;
    };
    std::vector<std::vector<std::size_t>> classes;
    std::vector<bool> assigned(group.elements.size(), false);
    for (std::size_t i = 0; i < group.elements.size(); ++i) {
        if (assigned[i]) continue;
        std::vector<std::size_t> members;
        for (const ComplexMatrix& x : group.elements) {
            std::size_t j = lookup(x * group.elements[i] * x.adjoint());
            if (!assigned[j]) {
                assigned[j] = true;
                members.push_back(j);
            }
        }
        classes.push_back(std::move(members));
    }
    return classes;
}

namespace {

// Cycle-type data of S_t: class size, and for each part length its count.
struct CycleTypeTerm {
    YoungDiagram type;
    double class_size = 0.0;
    std::vector<int> power_counts;  // power_counts[k-1] = number of k-cycles
};

std::vector<CycleTypeTerm> cycle_type_terms(int t) {
    std::vector<CycleTypeTerm> terms;
    for (const YoungDiagram& lambda : young_diagrams(t, t)) {
        CycleTypeTerm term;
        term.type = lambda;
        term.class_size = static_cast<double>(symmetric_class_size(lambda));
        term.power_counts.assign(static_cast<std::size_t>(t), 0);
        for (int part : lambda.row_lengths) ++term.power_counts[static_cast<std::size_t>(part - 1)];
        terms.push_back(std::move(term));
    }
    return terms;
}

double factorial(int t) {
    double f = 1.0;
    for (int k = 2; k <= t; ++k) f *= k;
    return f;
}

// chi_gamma(g) from the power-sum traces p[k-1] = tr(rep(g^k)), k = 1..t.
Complex plethysm_point(const std::vector<CycleTypeTerm>& terms, const YoungDiagram& gamma,
                       double t_factorial, const std::vector<Complex>& p) {
    Complex total(0.0, 0.0);
    for (const CycleTypeTerm& term : terms) {
        double weight = term.class_size * symmetric_character(gamma, term.type) / t_factorial;
        Complex product(1.0, 0.0);
        for (std::size_t k = 0; k < term.power_counts.size(); ++k)
            for (int rep = 0; rep < term.power_counts[k]; ++rep) product *= p[k];
        total += weight * product;
    }
    return total;
}

void require_boxes(const YoungDiagram& gamma, const char* who) {
    if (gamma.boxes() < 1 || gamma.boxes() > 4)
        throw std::invalid_argument(std::string(who) + ": diagram must have 1 to 4 boxes");
}

}  // namespace

std::vector<Complex> plethysm_character(const MatrixGroup& group, const YoungDiagram& gamma) {
    require_boxes(gamma, "plethysm_character");
    int t = gamma.boxes();
    auto terms = cycle_type_terms(t);
    double tf = factorial(t);
    std::vector<Complex> out(group.elements.size());
    for (std::size_t i = 0; i < group.elements.size(); ++i) {
        std::vector<Complex> p(static_cast<std::size_t>(t));
        ComplexMatrix power = group.elements[i];
        p[0] = power.trace();
        for (int k = 2; k <= t; ++k) {
            power = power * group.elements[i];
            p[static_cast<std::size_t>(k - 1)] = power.trace();
        }
        out[i] = plethysm_point(terms, gamma, tf, p);
    }
    return out;
}

std::vector<Complex> plethysm_character(const CharacterTable& table,
                                        const std::vector<Complex>& rep_char,
                                        const YoungDiagram& gamma) {
    require_boxes(gamma, "plethysm_character");
    if (static_cast<int>(rep_char.size()) != table.class_count())
        throw std::invalid_argument("plethysm_character: rep character size mismatch");
    int t = gamma.boxes();
    auto terms = cycle_type_terms(t);
    double tf = factorial(t);
    std::vector<std::vector<int>> maps;
    maps.reserve(static_cast<std::size_t>(t));
    for (int k = 1; k <= t; ++k) maps.push_back(table.power_map(k));
    std::vector<Complex> out(static_cast<std::size_t>(table.class_count()));
    for (int c = 0; c < table.class_count(); ++c) {
        std::vector<Complex> p(static_cast<std::size_t>(t));
        for (int k = 1; k <= t; ++k)
            p[static_cast<std::size_t>(k - 1)] =
                rep_char[static_cast<std::size_t>(maps[static_cast<std::size_t>(k - 1)]
                                                      [static_cast<std::size_t>(c)])];
        out[static_cast<std::size_t>(c)] = plethysm_point(terms, gamma, tf, p);
    }
    return out;
}

Complex element_inner_product(const MatrixGroup& group, const std::vector<Complex>& a,
                              const std::vector<Complex>& b) {
    if (a.size() != group.elements.size() || b.size() != group.elements.size())
        throw std::invalid_argument("element_inner_product: value count mismatch");
    Complex sum = parallel_reduce(
        a.size(), [] { return Complex(0.0, 0.0); },
        [&](Complex& acc, std::size_t i) { acc += a[i] * std::conj(b[i]); },
        [](Complex& total, Complex acc) { total += acc; });
    return sum / static_cast<double>(group.elements.size());
}

Complex class_inner_product(const CharacterTable& table, const std::vector<Complex>& a,
                            const std::vector<Complex>& b) {
    if (static_cast<int>(a.size()) != table.class_count() ||
        static_cast<int>(b.size()) != table.class_count())
        throw std::invalid_argument("class_inner_product: value count mismatch");
    Complex sum(0.0, 0.0);
    for (int c = 0; c < table.class_count(); ++c)
        sum += static_cast<double>(table.class_sizes[static_cast<std::size_t>(c)]) *
               a[static_cast<std::size_t>(c)] * std::conj(b[static_cast<std::size_t>(c)]);
    return sum / static_cast<double>(table.order());
}

long integer_multiplicity(Complex value, const std::string& what) {
    double rounded = std::round(value.real());
    if (std::abs(value.imag()) > 1e-6 || std::abs(value.real() - rounded) > 1e-6 ||
        rounded < 0.0)
        throw std::runtime_error(what + ": multiplicity " + std::to_string(value.real()) +
                                 (value.imag() != 0.0
                                      ? " + " + std::to_string(value.imag()) + "i"
                                      : "") +
                                 " is not a nonnegative integer within 1e-6");
    return std::lround(rounded);
}

bool check_condition_one(const MatrixGroup& group, const YoungDiagram& gamma) {
    std::vector<Complex> chi = plethysm_character(group, gamma);
    long m = integer_multiplicity(element_inner_product(group, chi, chi),
                                  "condition one (" + gamma.str() + ")");
    return m == 1;
}

bool check_condition_one(const CharacterTable& table, const std::vector<Complex>& rep_char,
                         const YoungDiagram& gamma) {
    std::vector<Complex> chi = plethysm_character(table, rep_char, gamma);
    long m = integer_multiplicity(class_inner_product(table, chi, chi),
                                  "condition one (" + gamma.str() + ")");
    return m == 1;
}

bool check_condition_two(const MatrixGroup& group, const YoungDiagram& gamma,
                         const YoungDiagram& eta) {
    if (gamma == eta)
        throw std::invalid_argument("check_condition_two: diagrams must be distinct");
    std::vector<Complex> a = plethysm_character(group, gamma);
    std::vector<Complex> b = plethysm_character(group, eta);
    long m = integer_multiplicity(element_inner_product(group, a, b),
                                  "condition two (" + gamma.str() + ", " + eta.str() + ")");
    return m == 0;
}

bool check_condition_two(const CharacterTable& table, const std::vector<Complex>& rep_char,
                         const YoungDiagram& gamma, const YoungDiagram& eta) {
    if (gamma == eta)
        throw std::invalid_argument("check_condition_two: diagrams must be distinct");
    std::vector<Complex> a = plethysm_character(table, rep_char, gamma);
    std::vector<Complex> b = plethysm_character(table, rep_char, eta);
    long m = integer_multiplicity(class_inner_product(table, a, b),
                                  "condition two (" + gamma.str() + ", " + eta.str() + ")");
    return m == 0;
}

namespace {

bool input_condition_one(const GroupInput& input, const YoungDiagram& gamma) {
    if (input.matrices) return check_condition_one(*input.matrices, gamma);
    if (input.table) return check_condition_one(*input.table, input.rep_char, gamma);
    throw std::invalid_argument("check_theorem_conditions: group '" + input.name +
                                "' carries neither matrices nor a table");
}

bool input_condition_two(const GroupInput& input, const YoungDiagram& gamma,
                         const YoungDiagram& eta) {
    if (input.matrices) return check_condition_two(*input.matrices, gamma, eta);
    if (input.table) return check_condition_two(*input.table, input.rep_char, gamma, eta);
    throw std::invalid_argument("check_theorem_conditions: group '" + input.name +
                                "' carries neither matrices nor a table");
}

void validate_group_input(const GroupInput& input, int d) {
    if (input.matrices && input.matrices->dimension != d)
        throw std::invalid_argument("check_theorem_conditions: group '" + input.name +
                                    "' has dimension " +
                                    std::to_string(input.matrices->dimension) +
                                    ", expected " + std::to_string(d));
    if (input.table) {
        if (static_cast<int>(input.rep_char.size()) != input.table->class_count())
            throw std::invalid_argument("check_theorem_conditions: group '" + input.name +
                                        "' rep character size mismatch");
        Complex dim = input.rep_char[static_cast<std::size_t>(input.table->identity_class())];
        if (std::abs(dim - Complex(static_cast<double>(d), 0.0)) > 1e-6)
            throw std::invalid_argument("check_theorem_conditions: group '" + input.name +
                                        "' rep dimension is not " + std::to_string(d));
    }
}

}  // namespace

TheoremReport check_theorem_conditions(const std::vector<GroupInput>& groups, int t, int d,
                                       bool numeric_cross_check) {
    if (groups.empty())
        throw std::invalid_argument("check_theorem_conditions: no groups supplied");
    if (t < 1 || t > 4)
        throw std::invalid_argument("check_theorem_conditions: t must be in [1, 4]");
    for (const GroupInput& input : groups) validate_group_input(input, d);

    TheoremReport report;
    report.t = t;
    report.d = d;
    std::vector<YoungDiagram> diagrams = young_diagrams(t, d);
    for (const YoungDiagram& gamma : diagrams) {
        DiagramCoverage coverage;
        coverage.gamma = gamma;
        for (std::size_t g = 0; g < groups.size(); ++g)
            if (input_condition_one(groups[g], gamma))
                coverage.satisfied_by.push_back(static_cast<int>(g));
        if (coverage.satisfied_by.empty())
            report.uncovered.push_back("condition one uncovered for " + gamma.str());
        report.condition_one.push_back(std::move(coverage));
    }
    for (std::size_t i = 0; i < diagrams.size(); ++i)
        for (std::size_t j = i + 1; j < diagrams.size(); ++j) {
            PairCoverage coverage;
            coverage.gamma = diagrams[i];
            coverage.eta = diagrams[j];
            for (std::size_t g = 0; g < groups.size(); ++g)
                if (input_condition_two(groups[g], diagrams[i], diagrams[j]))
                    coverage.satisfied_by.push_back(static_cast<int>(g));
            if (coverage.satisfied_by.empty())
                report.uncovered.push_back("condition two uncovered for (" + diagrams[i].str() +
                                           ", " + diagrams[j].str() + ")");
            report.condition_two.push_back(std::move(coverage));
        }
    report.pass = report.uncovered.empty();

    if (numeric_cross_check) {
        bool all_matrices = true;
        double product_order = 1.0;
        for (const GroupInput& input : groups) {
            if (!input.matrices) {
                all_matrices = false;
                break;
            }
            product_order *= static_cast<double>(input.matrices->order());
        }
        long n = tensor_space_dim(d, t);
        if (all_matrices && n * n <= kMaxTensorDim && product_order <= 2e5) {
            std::vector<designs::WeightedUnitarySet> factors;
            for (const GroupInput& input : groups) {
                std::vector<designs::WeightedElement> elements;
                double w = 1.0 / static_cast<double>(input.matrices->order());
                for (const ComplexMatrix& m : input.matrices->elements)
                    elements.push_back({m, w});
                factors.push_back(designs::make_explicit(d, std::move(elements),
                                                         input.name.empty() ? "group" : input.name,
                                                         true));
            }
            designs::WeightedUnitarySet product = designs::product_design(factors);
            designs::MomentReport numeric = designs::verify_design_moment(product, t);
            report.numeric_checked = true;
            report.numeric_pass = numeric.pass;
            report.numeric_deviation = numeric.max_deviation;
        }
    }
    return report;
}

}  // namespace udesign::chartheory
