#include "udesign/designs.hpp"

#include "udesign/haar.hpp"
#include "udesign/monomial.hpp"
#include "udesign/parallel.hpp"

#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <random>
#include <stdexcept>
#include <unordered_map>

namespace udesign::designs {

using nlohmann::json;

std::uint64_t WeightedUnitarySet::cardinality() const {
    if (materialized()) return elements.size();
    if (!factors.empty()) {
        std::uint64_t total = 1;
        for (const auto& f : factors) {
            std::uint64_t c = f->cardinality();
            if (c == 0) return 0;
            if (total > UINT64_MAX / c) return UINT64_MAX;
            total *= c;
        }
        return total;
    }
    return structured_count;
}

void validate_set(const WeightedUnitarySet& set) {
    if (set.dimension < 1) throw std::invalid_argument("weighted set: dimension must be positive");
    if (set.materialized()) {
        double sum = 0.0;
        for (const WeightedElement& e : set.elements) {
            if (e.weight <= 0.0) throw std::invalid_argument("weighted set: weights must be positive");
            if (e.unitary.rows() != set.dimension || e.unitary.cols() != set.dimension)
                throw std::invalid_argument("weighted set: element dimension mismatch");
            if (!is_unitary(e.unitary))
                throw std::invalid_argument("weighted set: element not unitary within 1e-12");
            sum += e.weight;
        }
        if (std::abs(sum - 1.0) > 1e-12)
            throw std::invalid_argument("weighted set: weights must sum to 1 within 1e-12");
    } else if (set.factors.empty() && !set.twirl_override) {
        throw std::invalid_argument("weighted set: lazy set carries no structure");
    }
    for (const auto& f : set.factors) {
        if (f->dimension != set.dimension)
            throw std::invalid_argument("weighted set: factor dimension mismatch");
    }
}

WeightedUnitarySet make_explicit(int dimension, std::vector<WeightedElement> elements,
                                 std::string provenance, bool is_group) {
    WeightedUnitarySet set;
    set.dimension = dimension;
    set.provenance = std::move(provenance);
    set.kind = "explicit";
    set.is_group = is_group;
    set.elements = std::move(elements);
    validate_set(set);
    return set;
}

WeightedUnitarySet make_monomial_group_set(int d) {
    WeightedUnitarySet set;
    set.dimension = d;
    set.provenance = "monomial-reflection-group(d=" + std::to_string(d) + ")";
    set.kind = "monomial";
    set.is_group = true;
    set.structured_count = monomial::group_order(d);
    set.twirl_override = [d](int t, const ComplexMatrix& m) {
        return monomial::monomial_twirl(d, t, m);
    };
    set.moment_override = [d](int t) { return monomial::monomial_moment_matrix(d, t); };
    if (d <= 4) {
        double w = 1.0 / static_cast<double>(monomial::group_order(d));
        for (const monomial::MonomialElement& e : monomial::enumerate(d))
            set.elements.push_back({monomial::natural_rep(e), w});
    }
    validate_set(set);
    return set;
}

WeightedUnitarySet conjugate_set(const WeightedUnitarySet& set, const ComplexMatrix& q) {
    if (q.rows() != set.dimension || q.cols() != set.dimension)
        throw std::invalid_argument("conjugate_set: conjugator dimension mismatch");
    if (!is_unitary(q)) throw std::invalid_argument("conjugate_set: conjugator not unitary");
    WeightedUnitarySet out;
    out.dimension = set.dimension;
    out.provenance = set.provenance + "^Q";
    out.is_group = set.is_group;
    out.structured_count = set.structured_count;
    if (set.kind == "monomial") {
        out.kind = "conjugated-monomial";
        out.conjugator = q;
    } else if (set.kind == "conjugated-monomial") {
        out.kind = "conjugated-monomial";
        out.conjugator = q * set.conjugator;
    } else {
        out.kind = set.kind;
    }
    for (const WeightedElement& e : set.elements)
        out.elements.push_back({q * e.unitary * q.adjoint(), e.weight});
    if (set.twirl_override) {
        auto base = set.twirl_override;
        ComplexMatrix qc = q;
        out.twirl_override = [base, qc](int t, const ComplexMatrix& m) {
            ComplexMatrix qt = tensor_power(qc, t);
            return (qt * base(t, qt.adjoint() * m * qt) * qt.adjoint()).eval();
        };
    }
    if (set.moment_override) {
        auto base = set.moment_override;
        ComplexMatrix qc = q;
        out.moment_override = [base, qc](int t) {
            ComplexMatrix qt = tensor_power(qc, t);
            ComplexMatrix k = kron(qt.conjugate(), qt);
            return (k * base(t) * k.adjoint()).eval();
        };
    }
    // Conjugated products keep their factor structure only through the
    // overrides; factors are not rewritten.
    validate_set(out);
    return out;
}

namespace {

// Bucketed dedup: entries rounded to a 1e-9 grid for hashing, equality
// confirmed entrywise within tol.
struct MatrixKeyHash {
    std::size_t operator()(const std::vector<std::int64_t>& key) const {
        std::size_t h = 1469598103934665603ull;
        for (std::int64_t v : key) {
            h ^= static_cast<std::size_t>(v);
            h *= 1099511628211ull;
        }
        return h;
    }
};

std::vector<std::int64_t> matrix_grid_key(const ComplexMatrix& m) {
    std::vector<std::int64_t> key;
    key.reserve(static_cast<std::size_t>(m.size()) * 2);
    for (long j = 0; j < m.cols(); ++j)
        for (long i = 0; i < m.rows(); ++i) {
            key.push_back(std::llround(m(i, j).real() * 1e9));
            key.push_back(std::llround(m(i, j).imag() * 1e9));
        }
    return key;
}

}  // namespace

std::vector<WeightedElement> merge_weighted_elements(std::vector<WeightedElement> elements,
                                                     double tol) {
    std::vector<WeightedElement> out;
    std::unordered_map<std::vector<std::int64_t>, std::vector<std::size_t>, MatrixKeyHash> buckets;
    for (WeightedElement& e : elements) {
        auto key = matrix_grid_key(e.unitary);
        auto& bucket = buckets[key];
        bool merged = false;
        for (std::size_t idx : bucket) {
            if (max_abs(out[idx].unitary - e.unitary) <= tol) {
                out[idx].weight += e.weight;
                merged = true;
                break;
            }
        }
        if (!merged) {
            bucket.push_back(out.size());
            out.push_back(std::move(e));
        }
    }
    return out;
}

WeightedUnitarySet product_design(const std::vector<WeightedUnitarySet>& factors,
                                  std::size_t cap) {
    if (factors.empty()) throw std::invalid_argument("product_design: no factors");
    int d = factors.front().dimension;
    for (const WeightedUnitarySet& f : factors)
        if (f.dimension != d) throw std::invalid_argument("product_design: dimension mismatch");
    if (factors.size() == 1) return factors.front();

    WeightedUnitarySet out;
    out.dimension = d;
    out.kind = "product";
    std::string provenance;
    for (const WeightedUnitarySet& f : factors) {
        if (!provenance.empty()) provenance += " * ";
        provenance += f.provenance;
        out.factors.push_back(std::make_shared<WeightedUnitarySet>(f));
    }
    out.provenance = provenance;

    // Composed channel: the twirl of a product averages factor by factor,
    // rightmost factor innermost.
    bool all_twirl = true, all_moment = true, all_material = true;
    for (const WeightedUnitarySet& f : factors) {
        all_twirl = all_twirl && (f.twirl_override || f.materialized());
        all_moment = all_moment && (f.moment_override || f.materialized());
        all_material = all_material && f.materialized();
    }
    auto shared = out.factors;  // shared_ptr copies for the closures
    if (all_twirl) {
        out.twirl_override = [shared](int t, const ComplexMatrix& m) {
            ComplexMatrix acc = m;
            for (auto it = shared.rbegin(); it != shared.rend(); ++it)
                acc = twirl_apply(**it, t, acc);
            return acc;
        };
    }
    if (all_moment) {
        out.moment_override = [shared](int t) {
            ComplexMatrix s = moment_matrix(*shared.front(), t);
            for (std::size_t i = 1; i < shared.size(); ++i) s = s * moment_matrix(*shared[i], t);
            return s;
        };
    }

    std::uint64_t total = 1;
    bool overflow = false;
    for (const WeightedUnitarySet& f : factors) {
        std::uint64_t c = f.cardinality();
        if (c == 0 || total > cap / std::max<std::uint64_t>(c, 1)) overflow = true;
        if (!overflow) total *= c;
    }
    if (all_material && !overflow && total <= cap) {
        std::vector<WeightedElement> pairs = factors.front().elements;
        for (std::size_t i = 1; i < factors.size(); ++i) {
            std::vector<WeightedElement> next;
            next.reserve(pairs.size() * factors[i].elements.size());
            for (const WeightedElement& a : pairs)
                for (const WeightedElement& b : factors[i].elements)
                    next.push_back({a.unitary * b.unitary, a.weight * b.weight});
            pairs = merge_weighted_elements(std::move(next));
        }
        out.elements = std::move(pairs);
    }
    validate_set(out);
    return out;
}

WeightedUnitarySet materialize(const WeightedUnitarySet& set, std::size_t cap) {
    if (set.materialized()) return set;
    if (set.cardinality() > cap)
        throw std::invalid_argument("materialize: set exceeds the materialization cap");
    if (set.kind == "monomial" || set.kind == "conjugated-monomial") {
        WeightedUnitarySet out = set;
        double w = 1.0 / static_cast<double>(monomial::group_order(set.dimension));
        for (const monomial::MonomialElement& e : monomial::enumerate(set.dimension)) {
            ComplexMatrix u = monomial::natural_rep(e);
            if (set.kind == "conjugated-monomial") u = set.conjugator * u * set.conjugator.adjoint();
            out.elements.push_back({std::move(u), w});
        }
        return out;
    }
    if (!set.factors.empty()) {
        std::vector<WeightedUnitarySet> mats;
        mats.reserve(set.factors.size());
        for (const auto& f : set.factors) mats.push_back(materialize(*f, cap));
        WeightedUnitarySet out = product_design(mats, cap);
        out.provenance = set.provenance;
        return out;
    }
    throw std::invalid_argument("materialize: set carries no structure to expand");
}

double frame_potential(const WeightedUnitarySet& set, int t, std::size_t cap) {
    if (t < 1 || t > 4) throw std::invalid_argument("frame_potential: t must be in [1, 4]");
    const WeightedUnitarySet* source = &set;
    WeightedUnitarySet local;
    if (!set.materialized()) {
        local = materialize(set, cap);
        source = &local;
    }
    const auto& els = source->elements;
    std::size_t n = els.size();
    return parallel_reduce(
        n * n, [] { return 0.0; },
        [&](double& acc, std::size_t k) {
            std::size_t i = k / n, j = k % n;
            double overlap = std::norm((els[i].unitary.adjoint() * els[j].unitary).trace());
            acc += els[i].weight * els[j].weight * std::pow(overlap, t);
        },
        [](double& total, double acc) { total += acc; });
}

ComplexMatrix twirl_apply_direct(const WeightedUnitarySet& set, int t, const ComplexMatrix& m) {
    if (!set.materialized())
        throw std::invalid_argument("twirl_apply_direct: set is not materialized");
    long n = tensor_space_dim(set.dimension, t);
    if (m.rows() != n || m.cols() != n)
        throw std::invalid_argument("twirl_apply_direct: operand must be d^t x d^t");
    return parallel_reduce(
        set.elements.size(), [n] { return ComplexMatrix(ComplexMatrix::Zero(n, n)); },
        [&](ComplexMatrix& acc, std::size_t i) {
            ComplexMatrix vt = tensor_power(set.elements[i].unitary, t);
            acc += set.elements[i].weight * (vt * m * vt.adjoint());
        },
        [](ComplexMatrix& total, ComplexMatrix acc) { total += acc; });
}

ComplexMatrix twirl_apply(const WeightedUnitarySet& set, int t, const ComplexMatrix& m) {
    if (set.twirl_override) return set.twirl_override(t, m);
    if (set.materialized()) return twirl_apply_direct(set, t, m);
    if (!set.factors.empty()) {
        ComplexMatrix acc = m;
        for (auto it = set.factors.rbegin(); it != set.factors.rend(); ++it)
            acc = twirl_apply(**it, t, acc);
        return acc;
    }
    throw std::invalid_argument("twirl_apply: set carries no structure");
}

ComplexMatrix moment_matrix(const WeightedUnitarySet& set, int t) {
    if (t < 1 || t > 2) throw std::invalid_argument("moment_matrix: explicit moment needs t <= 2");
    if (set.moment_override) return set.moment_override(t);
    long n = tensor_space_dim(set.dimension, t);
    if (n * n > kMaxTensorDim)
        throw std::invalid_argument("moment_matrix: d^{2t} exceeds the cap");
    if (set.materialized()) {
        return parallel_reduce(
            set.elements.size(),
            [n] { return ComplexMatrix(ComplexMatrix::Zero(n * n, n * n)); },
            [&](ComplexMatrix& acc, std::size_t i) {
                ComplexMatrix vt = tensor_power(set.elements[i].unitary, t);
                acc += set.elements[i].weight * kron(vt.conjugate(), vt);
            },
            [](ComplexMatrix& total, ComplexMatrix acc) { total += acc; });
    }
    if (!set.factors.empty()) {
        ComplexMatrix s = moment_matrix(*set.factors.front(), t);
        for (std::size_t i = 1; i < set.factors.size(); ++i)
            s = s * moment_matrix(*set.factors[i], t);
        return s;
    }
    throw std::invalid_argument("moment_matrix: set carries no structure");
}

ComplexMatrix TwirlChannel::apply(const ComplexMatrix& m) const {
    if (moment.size() != 0) {
        long n = m.rows();
        return unvec(moment * vec(m), n, n);
    }
    return apply_fn(m);
}

TwirlChannel make_twirl_channel(const WeightedUnitarySet& set, int t) {
    if (t < 1 || t > 4) throw std::invalid_argument("make_twirl_channel: t must be in [1, 4]");
    TwirlChannel ch;
    ch.dimension = set.dimension;
    ch.order = t;
    long n = tensor_space_dim(set.dimension, t);
    if (t <= 2 && n * n <= kMaxTensorDim) {
        ch.moment = moment_matrix(set, t);
    } else {
        WeightedUnitarySet copy = set;
        ch.apply_fn = [copy, t](const ComplexMatrix& m) { return twirl_apply(copy, t, m); };
    }
    return ch;
}

namespace {

ComplexMatrix random_probe(int n, std::mt19937_64& engine) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix m(n, n);
    for (long i = 0; i < n; ++i)
        for (long j = 0; j < n; ++j) {
            double re = gauss(engine);
            double im = gauss(engine);
            m(i, j) = Complex(re, im);
        }
    return m;
}

}  // namespace

namespace {

// Rounding is the only error source for exact constructions, but it compounds
// with the probe dimension at higher orders.
double effective_tol(const VerifyOptions& opts, int t, int d) {
    return t >= 3 ? opts.tol * std::pow(static_cast<double>(d), t) : opts.tol;
}

}  // namespace

MomentReport verify_design_moment(const WeightedUnitarySet& set, int t,
                                  const VerifyOptions& opts) {
    if (t < 1 || t > 4) throw std::invalid_argument("verify_design_moment: t must be in [1, 4]");
    long n = tensor_space_dim(set.dimension, t);
    MomentReport report;
    report.tol = effective_tol(opts, t, set.dimension);
    bool units_fit = n * n <= kMaxTensorDim &&
                     (!opts.max_probes || n * n <= *opts.max_probes);
    if (t <= 2 && units_fit) {
        // Entrywise moment comparison covers exactly the matrix-unit basis.
        ComplexMatrix delta = moment_matrix(set, t) - haar::haar_unitary_moment(t, set.dimension);
        report.max_deviation = max_abs(delta);
        report.probes = n * n;
        report.probe_kind = "matrix-units";
    } else if (units_fit) {
        double dev = 0.0;
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) {
                ComplexMatrix unit = ComplexMatrix::Zero(n, n);
                unit(a, b) = 1.0;
                ComplexMatrix delta =
                    twirl_apply(set, t, unit) - haar::haar_unitary_twirl(t, set.dimension, unit);
                dev = std::max(dev, max_abs(delta));
            }
        report.max_deviation = dev;
        report.probes = n * n;
        report.probe_kind = "matrix-units";
    } else {
        long probes = std::max<long>(opts.min_random_probes, 50);
        std::mt19937_64 engine(opts.seed);
        double dev = 0.0;
        for (long p = 0; p < probes; ++p) {
            ComplexMatrix probe = random_probe(static_cast<int>(n), engine);
            ComplexMatrix delta =
                twirl_apply(set, t, probe) - haar::haar_unitary_twirl(t, set.dimension, probe);
            dev = std::max(dev, max_abs(delta));
        }
        report.max_deviation = dev;
        report.probes = probes;
        report.probe_kind = "random";
    }
    report.pass = report.max_deviation <= report.tol;
    return report;
}

SectorReport verify_design_sectors(const WeightedUnitarySet& set, int t,
                                   const VerifyOptions& opts) {
    if (t < 1 || t > 4) throw std::invalid_argument("verify_design_sectors: t must be in [1, 4]");
    int d = set.dimension;
    long n = tensor_space_dim(d, t);
    const auto& sectors = sector_projectors(t, d);
    SectorReport report;
    report.tol = effective_tol(opts, t, d);
    for (const auto& [gamma, pg] : sectors)
        for (const auto& [eta, pe] : sectors)
            report.pairs.push_back({gamma, eta, 0.0});

    auto fold_probe = [&](const ComplexMatrix& a, const ComplexMatrix& h) {
        ComplexMatrix delta = a - h;
        std::size_t k = 0;
        for (const auto& [gamma, pg] : sectors)
            for (const auto& [eta, pe] : sectors) {
                double dev = max_abs(pg.matrix * delta * pe.matrix);
                report.pairs[k].deviation = std::max(report.pairs[k].deviation, dev);
                ++k;
            }
    };

    bool units_fit = n * n <= kMaxTensorDim &&
                     (!opts.max_probes || n * n <= *opts.max_probes);
    if (t <= 2 && units_fit) {
        // Columns of the set's moment matrix are its twirled matrix units; the
        // reference side always goes through the per-sector expectation.
        ComplexMatrix s_set = moment_matrix(set, t);
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) {
                ComplexMatrix unit = ComplexMatrix::Zero(n, n);
                unit(a, b) = 1.0;
                fold_probe(unvec(s_set.col(b * n + a), n, n),
                           haar::haar_unitary_twirl_sectors(t, d, unit));
            }
        report.probes = n * n;
        report.probe_kind = "matrix-units";
    } else if (units_fit) {
        for (long a = 0; a < n; ++a)
            for (long b = 0; b < n; ++b) {
                ComplexMatrix unit = ComplexMatrix::Zero(n, n);
                unit(a, b) = 1.0;
                fold_probe(twirl_apply(set, t, unit), haar::haar_unitary_twirl_sectors(t, d, unit));
            }
        report.probes = n * n;
        report.probe_kind = "matrix-units";
    } else {
        long probes = std::max<long>(opts.min_random_probes, 50);
        std::mt19937_64 engine(opts.seed);
        for (long p = 0; p < probes; ++p) {
            ComplexMatrix probe = random_probe(static_cast<int>(n), engine);
            fold_probe(twirl_apply(set, t, probe), haar::haar_unitary_twirl_sectors(t, d, probe));
        }
        report.probes = probes;
        report.probe_kind = "random";
    }
    report.worst = report.pairs.front();
    for (const SectorPairDeviation& pair : report.pairs) {
        report.max_deviation = std::max(report.max_deviation, pair.deviation);
        if (pair.deviation > report.worst.deviation) report.worst = pair;
    }
    report.pass = report.max_deviation <= report.tol;
    return report;
}

namespace {

json matrix_to_json(const ComplexMatrix& m) {
    json re = json::array(), im = json::array();
    for (long i = 0; i < m.rows(); ++i) {
        json rrow = json::array(), irow = json::array();
        for (long j = 0; j < m.cols(); ++j) {
            rrow.push_back(m(i, j).real());
            irow.push_back(m(i, j).imag());
        }
        re.push_back(std::move(rrow));
        im.push_back(std::move(irow));
    }
    return json{{"re", std::move(re)}, {"im", std::move(im)}};
}

ComplexMatrix matrix_from_json(const json& j) {
    const json& re = j.at("re");
    const json& im = j.at("im");
    long rows = static_cast<long>(re.size());
    if (rows == 0) throw std::invalid_argument("design file: empty matrix");
    long cols = static_cast<long>(re.at(0).size());
    ComplexMatrix m(rows, cols);
    for (long i = 0; i < rows; ++i) {
        if (static_cast<long>(re.at(i).size()) != cols ||
            static_cast<long>(im.at(i).size()) != cols)
            throw std::invalid_argument("design file: ragged matrix rows");
        for (long j2 = 0; j2 < cols; ++j2)
            m(i, j2) = Complex(re.at(i).at(j2).get<double>(), im.at(i).at(j2).get<double>());
    }
    return m;
}

json set_to_json(const WeightedUnitarySet& set) {
    json out;
    out["dimension"] = set.dimension;
    out["provenance"] = set.provenance;
    if (set.kind == "monomial") {
        out["kind"] = "monomial";
        return out;
    }
    if (set.kind == "conjugated-monomial") {
        out["kind"] = "conjugated-monomial";
        out["conjugator"] = matrix_to_json(set.conjugator);
        return out;
    }
    if (!set.materialized() && !set.factors.empty()) {
        out["kind"] = "product";
        json factors = json::array();
        for (const auto& f : set.factors) factors.push_back(set_to_json(*f));
        out["factors"] = std::move(factors);
        return out;
    }
    if (!set.materialized())
        throw std::invalid_argument("design file: lazy set cannot be serialized");
    out["kind"] = "explicit";
    json elements = json::array();
    for (const WeightedElement& e : set.elements) {
        json el = matrix_to_json(e.unitary);
        el["weight"] = e.weight;
        elements.push_back(std::move(el));
    }
    out["elements"] = std::move(elements);
    return out;
}

WeightedUnitarySet set_from_json(const json& j) {
    int d = j.at("dimension").get<int>();
    std::string kind = j.value("kind", j.contains("factors") ? "product" : "explicit");
    WeightedUnitarySet set;
    if (kind == "monomial") {
        set = make_monomial_group_set(d);
    } else if (kind == "conjugated-monomial") {
        set = conjugate_set(make_monomial_group_set(d), matrix_from_json(j.at("conjugator")));
    } else if (kind == "product") {
        std::vector<WeightedUnitarySet> factors;
        for (const json& f : j.at("factors")) factors.push_back(set_from_json(f));
        set = product_design(factors);
    } else if (kind == "explicit") {
        std::vector<WeightedElement> elements;
        for (const json& el : j.at("elements"))
            elements.push_back({matrix_from_json(el), el.at("weight").get<double>()});
        set.dimension = d;
        set.elements = std::move(elements);
        set.kind = "explicit";
    } else {
        throw std::invalid_argument("design file: unknown kind '" + kind + "'");
    }
    if (j.contains("provenance")) set.provenance = j.at("provenance").get<std::string>();
    validate_set(set);
    return set;
}

}  // namespace

void write_design_file(const std::string& path, const WeightedUnitarySet& set) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_design_file: cannot open " + path);
    out << set_to_json(set).dump(2) << '\n';
    if (!out) throw std::runtime_error("write_design_file: write failed for " + path);
}

WeightedUnitarySet read_design_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("read_design_file: cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw std::runtime_error("read_design_file: " + std::string(e.what()));
    }
    return set_from_json(j);
}

}  // namespace udesign::designs
