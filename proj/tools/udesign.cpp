// Command-line front end: construct the arbitrary-dimension 2-design, verify
// design files against the exact Haar channels, print the quadratic-sum
// tables, run the character-theoretic design conditions, lift orthogonal
// designs, and estimate approximation error.
//
// Exit codes: 0 pass, 1 verification failure, 2 usage or data error.

#include "udesign/chartheory.hpp"
#include "udesign/designs.hpp"
#include "udesign/monomial.hpp"
#include "udesign/ortho_lift.hpp"
#include "udesign/rotation2design.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

using namespace udesign;
using nlohmann::json;

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

json moment_report_json(const designs::MomentReport& r) {
    return json{{"pass", r.pass},
                {"max_deviation", r.max_deviation},
                {"probes", r.probes},
                {"probe_kind", r.probe_kind},
                {"tolerance", r.tol}};
}

json sector_report_json(const designs::SectorReport& r) {
    json pairs = json::array();
    for (const auto& pair : r.pairs)
        pairs.push_back(json{{"gamma", pair.gamma.str()},
                             {"eta", pair.eta.str()},
                             {"deviation", pair.deviation}});
    return json{{"pass", r.pass},
                {"max_deviation", r.max_deviation},
                {"probes", r.probes},
                {"probe_kind", r.probe_kind},
                {"tolerance", r.tol},
                {"pairs", pairs},
                {"worst_pair", json{{"gamma", r.worst.gamma.str()},
                                    {"eta", r.worst.eta.str()},
                                    {"deviation", r.worst.deviation}}}};
}

void print_sector_pairs(const designs::SectorReport& r) {
    for (const auto& pair : r.pairs)
        std::printf("  sector (%s, %s): deviation %.3e\n", pair.gamma.str().c_str(),
                    pair.eta.str().c_str(), pair.deviation);
    std::printf("  worst pair (%s, %s) at %.3e\n", r.worst.gamma.str().c_str(),
                r.worst.eta.str().c_str(), r.worst.deviation);
}

struct VerifyFlags {
    double tol = 1e-9;
    std::uint64_t seed = 0;
    long probes = 50;
    bool emit_json = false;
};

int run_verification(const designs::WeightedUnitarySet& set, int t, const VerifyFlags& flags,
                     json* extra) {
    designs::VerifyOptions opts;
    opts.tol = flags.tol;
    opts.seed = flags.seed;
    opts.min_random_probes = flags.probes;
    designs::MomentReport moment = designs::verify_design_moment(set, t, opts);
    designs::SectorReport sectors = designs::verify_design_sectors(set, t, opts);
    std::optional<double> potential;
    if (set.cardinality() <= designs::kMaterializeCap) {
        try {
            potential = designs::frame_potential(set, t);
        } catch (const std::exception&) {
            potential.reset();
        }
    }
    bool pass = moment.pass && sectors.pass;
    if (flags.emit_json) {
        json out{{"dimension", set.dimension},
                 {"order", t},
                 {"pass", pass},
                 {"moment", moment_report_json(moment)},
                 {"sectors", sector_report_json(sectors)}};
        if (potential) out["frame_potential"] = *potential;
        if (extra) out.update(*extra);
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        std::printf("dimension %d, order t=%d\n", set.dimension, t);
        std::printf("moment check:  %s, max deviation %.3e over %ld %s probes (tol %.1e)\n",
                    moment.pass ? "pass" : "FAIL", moment.max_deviation, moment.probes,
                    moment.probe_kind.c_str(), moment.tol);
        std::printf("sector check:  %s, max deviation %.3e over %ld %s probes (tol %.1e)\n",
                    sectors.pass ? "pass" : "FAIL", sectors.max_deviation, sectors.probes,
                    sectors.probe_kind.c_str(), sectors.tol);
        print_sector_pairs(sectors);
        if (potential) std::printf("frame potential at t=%d: %.12g\n", t, *potential);
        std::printf("%s\n", pass ? "PASS" : "FAIL");
    }
    return pass ? kExitPass : kExitFail;
}

int cmd_construct(int d, const std::string& out_path, bool verify, const VerifyFlags& flags) {
    designs::WeightedUnitarySet design = rotation2design::construct_2design(d);
    rotation2design::RotationParameters p = rotation2design::solve_parameters(d);
    if (!out_path.empty()) designs::write_design_file(out_path, design);
    if (verify) {
        if (d > 6) throw std::invalid_argument("construct-2design: --verify needs d <= 6");
        json extra{{"x_star", p.x_star}, {"t_star", p.t_star}, {"cardinality", design.cardinality()}};
        return run_verification(design, 2, flags, &extra);
    }
    if (flags.emit_json) {
        json out{{"dimension", d},
                 {"x_star", p.x_star},
                 {"t_star", p.t_star},
                 {"cardinality", design.cardinality()},
                 {"written", !out_path.empty()}};
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        std::printf("dimension %d: x* = %.17g, rotation angle = %.17g, %llu weighted elements\n",
                    d, p.x_star, p.t_star,
                    static_cast<unsigned long long>(design.cardinality()));
        if (!out_path.empty()) std::printf("wrote %s\n", out_path.c_str());
    }
    return kExitPass;
}

int cmd_verify(const std::string& design_path, int t, const VerifyFlags& flags) {
    designs::WeightedUnitarySet set = designs::read_design_file(design_path);
    return run_verification(set, t, flags, nullptr);
}

int cmd_gauss(int min_d, int max_d, bool emit_json) {
    json rows = json::array();
    if (!emit_json)
        std::printf("%4s %16s %16s %12s %16s %16s %12s\n", "d", "sine closed", "sine brute",
                    "|diff|", "cosine closed", "cosine brute", "|diff|");
    for (int d = min_d; d <= max_d; ++d) {
        double sc = rotation2design::gauss_sine_sum(d);
        double sb = rotation2design::gauss_sine_sum_brute(d);
        double cc = rotation2design::gauss_cosine_double_sum(d);
        double cb = rotation2design::gauss_cosine_double_sum_brute(d);
        if (emit_json)
            rows.push_back(json{{"d", d},
                                {"sine_closed", sc},
                                {"sine_brute", sb},
                                {"cosine_closed", cc},
                                {"cosine_brute", cb}});
        else
            std::printf("%4d %16.9f %16.9f %12.3e %16.9f %16.9f %12.3e\n", d, sc, sb,
                        std::abs(sc - sb), cc, cb, std::abs(cc - cb));
    }
    if (emit_json) std::printf("%s\n", json{{"rows", rows}}.dump(2).c_str());
    return kExitPass;
}

ComplexMatrix matrix_from_json(const json& j) {
    const json& re = j.at("re");
    const json& im = j.at("im");
    long rows = static_cast<long>(re.size());
    long cols = rows > 0 ? static_cast<long>(re.at(0).size()) : 0;
    ComplexMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r)
        for (long c = 0; c < cols; ++c)
            m(r, c) = Complex(re.at(r).at(c).get<double>(), im.at(r).at(c).get<double>());
    return m;
}

chartheory::GroupInput load_table_input(const std::string& path) {
    chartheory::GroupInput input;
    input.table = chartheory::read_character_table(path);
    input.name = input.table->group_name;
    std::ifstream in(path);
    json j;
    in >> j;
    if (j.contains("rep")) {
        for (const json& v : j.at("rep")) {
            if (v.is_number())
                input.rep_char.emplace_back(v.get<double>(), 0.0);
            else if (v.is_string())
                input.rep_char.emplace_back(chartheory::parse_quadratic_string(v.get<std::string>()),
                                            0.0);
            else
                input.rep_char.emplace_back(v.value("re", 0.0), v.value("im", 0.0));
        }
    } else if (j.contains("rep_row")) {
        int row = j.at("rep_row").get<int>();
        if (row < 0 || row >= input.table->class_count())
            throw std::runtime_error("check-group: rep_row out of range in " + path);
        for (int c = 0; c < input.table->class_count(); ++c)
            input.rep_char.push_back(input.table->characters(row, c));
    } else {
        throw std::runtime_error("check-group: table file " + path +
                                 " needs a \"rep\" value list or a \"rep_row\" index");
    }
    return input;
}

chartheory::GroupInput load_generators_input(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("check-group: cannot open " + path);
    json j;
    in >> j;
    std::vector<ComplexMatrix> generators;
    for (const json& g : j.at("generators")) generators.push_back(matrix_from_json(g));
    chartheory::GroupInput input;
    bool mod_phase = j.value("mod_phase", false);
    input.matrices = mod_phase ? chartheory::close_group_mod_phase(generators)
                               : chartheory::close_group(generators);
    input.name = j.value("name", path);
    return input;
}

int cmd_check_group(const std::vector<std::string>& tables,
                    const std::vector<std::string>& generator_files, bool add_monomial, int t,
                    int d, bool numeric, bool emit_json) {
    std::vector<chartheory::GroupInput> groups;
    for (const std::string& path : tables) groups.push_back(load_table_input(path));
    for (const std::string& path : generator_files) groups.push_back(load_generators_input(path));
    if (add_monomial) {
        if (d > 6) throw std::invalid_argument("check-group: --monomial needs d <= 6");
        chartheory::GroupInput input;
        chartheory::MatrixGroup group;
        group.dimension = d;
        for (const monomial::MonomialElement& e : monomial::enumerate(d))
            group.elements.push_back(monomial::natural_rep(e));
        input.matrices = std::move(group);
        input.name = "monomial(d=" + std::to_string(d) + ")";
        groups.push_back(std::move(input));
    }
    chartheory::TheoremReport report = chartheory::check_theorem_conditions(groups, t, d, numeric);
    if (emit_json) {
        json cond1 = json::array();
        for (const auto& c : report.condition_one) {
            json names = json::array();
            for (int g : c.satisfied_by) names.push_back(groups[static_cast<std::size_t>(g)].name);
            cond1.push_back(json{{"gamma", c.gamma.str()}, {"satisfied_by", names}});
        }
        json cond2 = json::array();
        for (const auto& c : report.condition_two) {
            json names = json::array();
            for (int g : c.satisfied_by) names.push_back(groups[static_cast<std::size_t>(g)].name);
            cond2.push_back(
                json{{"gamma", c.gamma.str()}, {"eta", c.eta.str()}, {"satisfied_by", names}});
        }
        json out{{"t", report.t},
                 {"dimension", report.d},
                 {"pass", report.pass},
                 {"condition_one", cond1},
                 {"condition_two", cond2},
                 {"uncovered", report.uncovered}};
        if (report.numeric_checked) {
            out["numeric_pass"] = report.numeric_pass;
            out["numeric_deviation"] = report.numeric_deviation;
        }
        std::printf("%s\n", out.dump(2).c_str());
    } else {
        std::printf("design conditions at t=%d, d=%d over %zu group(s)\n", report.t, report.d,
                    groups.size());
        for (const auto& c : report.condition_one) {
            std::printf("  irreducibility %-12s:", c.gamma.str().c_str());
            if (c.satisfied_by.empty())
                std::printf(" UNCOVERED");
            for (int g : c.satisfied_by)
                std::printf(" %s", groups[static_cast<std::size_t>(g)].name.c_str());
            std::printf("\n");
        }
        for (const auto& c : report.condition_two) {
            std::printf("  no intertwiner (%s, %s):", c.gamma.str().c_str(), c.eta.str().c_str());
            if (c.satisfied_by.empty())
                std::printf(" UNCOVERED");
            for (int g : c.satisfied_by)
                std::printf(" %s", groups[static_cast<std::size_t>(g)].name.c_str());
            std::printf("\n");
        }
        if (report.numeric_checked)
            std::printf("numeric product check: %s (max deviation %.3e)\n",
                        report.numeric_pass ? "pass" : "FAIL", report.numeric_deviation);
        std::printf("%s\n", report.pass ? "PASS" : "FAIL");
    }
    return report.pass ? kExitPass : kExitFail;
}

int cmd_lift(const std::string& design_path, int t, const std::string& out_path, bool verify,
             const VerifyFlags& flags) {
    designs::WeightedUnitarySet input = designs::read_design_file(design_path);
    designs::MomentReport input_report = ortho_lift::verify_orthogonal_design(input, t);
    designs::WeightedUnitarySet lifted = ortho_lift::lift_design(input, t);
    if (!out_path.empty()) designs::write_design_file(out_path, lifted);
    if (!flags.emit_json) {
        std::printf("input vs orthogonal average: %s (max deviation %.3e)\n",
                    input_report.pass ? "pass" : "FAIL", input_report.max_deviation);
        if (!out_path.empty()) std::printf("wrote %s\n", out_path.c_str());
    }
    if (verify) {
        json extra{{"input_orthogonal_pass", input_report.pass},
                   {"input_orthogonal_deviation", input_report.max_deviation}};
        return run_verification(lifted, t, flags, &extra);
    }
    if (flags.emit_json) {
        json out{{"dimension", lifted.dimension},
                 {"order", t},
                 {"input_orthogonal_pass", input_report.pass},
                 {"input_orthogonal_deviation", input_report.max_deviation},
                 {"cardinality", lifted.cardinality()},
                 {"written", !out_path.empty()}};
        std::printf("%s\n", out.dump(2).c_str());
    }
    return kExitPass;
}

int cmd_epsilon(const std::string& design_path, int t, bool emit_json) {
    designs::WeightedUnitarySet set = designs::read_design_file(design_path);
    double eps = ortho_lift::estimate_epsilon(set, t);
    if (emit_json) {
        json out{{"dimension", set.dimension}, {"order", t}};
        if (std::isinf(eps))
            out["epsilon"] = "infinity";
        else
            out["epsilon"] = eps;
        std::printf("%s\n", out.dump(2).c_str());
    } else if (std::isinf(eps)) {
        std::printf("epsilon: infinity (the Haar channel leaves the design channel's support)\n");
    } else {
        std::printf("epsilon: %.17g\n", eps);
    }
    return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact unitary designs: construction, verification, lifting"};
    app.require_subcommand(1);

    int dim = 2, order = 2;
    std::string out_path, design_path;
    bool verify = false, emit_json = false, add_monomial = false, no_numeric = false;
    VerifyFlags flags;
    int gauss_min = 2, gauss_max = 9;
    std::vector<std::string> tables, generator_files;

    CLI::App* construct = app.add_subcommand("construct-2design", "build the two-factor design");
    construct->add_option("--dim", dim, "dimension")->required()->check(CLI::Range(2, 64));
    construct->add_option("--out", out_path, "design file to write");
    construct->add_flag("--verify", verify, "verify against the exact Haar channel (d <= 6)");
    construct->add_flag("--json", emit_json, "machine-readable report");
    construct->add_option("--tol", flags.tol, "verification tolerance")->check(CLI::PositiveNumber);
    construct->add_option("--seed", flags.seed, "probe seed");

    CLI::App* verify_cmd = app.add_subcommand("verify", "verify a design file");
    verify_cmd->add_option("--design", design_path, "design file")->required();
    verify_cmd->add_option("--t", order, "design order")->required()->check(CLI::Range(1, 4));
    verify_cmd->add_option("--tol", flags.tol, "tolerance")->check(CLI::PositiveNumber);
    verify_cmd->add_option("--seed", flags.seed, "probe seed");
    verify_cmd->add_option("--probes", flags.probes, "minimum random probe count")
        ->check(CLI::PositiveNumber);
    verify_cmd->add_flag("--json", emit_json, "machine-readable report");

    CLI::App* gauss = app.add_subcommand("gauss", "quadratic sum table, closed vs brute");
    gauss->add_option("--min", gauss_min, "smallest dimension")->check(CLI::Range(2, 4096));
    gauss->add_option("--max", gauss_max, "largest dimension")->check(CLI::Range(2, 4096));
    gauss->add_flag("--json", emit_json, "machine-readable rows");

    CLI::App* check = app.add_subcommand("check-group", "character-theoretic design conditions");
    check->add_option("--table", tables, "character table JSON (repeatable)");
    check->add_option("--generators", generator_files, "generator matrices JSON (repeatable)");
    check->add_flag("--monomial", add_monomial, "include the monomial reflection group");
    check->add_option("--t", order, "design order")->required()->check(CLI::Range(1, 4));
    check->add_option("--dim", dim, "dimension")->required()->check(CLI::Range(2, 64));
    check->add_flag("--no-numeric", no_numeric, "skip the numeric product cross-check");
    check->add_flag("--json", emit_json, "machine-readable report");

    CLI::App* lift = app.add_subcommand("lift", "orthogonal design to unitary design");
    lift->add_option("--design", design_path, "orthogonal design file")->required();
    lift->add_option("--t", order, "design order")->required()->check(CLI::Range(2, 3));
    lift->add_option("--out", out_path, "lifted design file to write");
    lift->add_flag("--verify", verify, "verify the lifted design");
    lift->add_option("--tol", flags.tol, "tolerance")->check(CLI::PositiveNumber);
    lift->add_option("--seed", flags.seed, "probe seed");
    lift->add_flag("--json", emit_json, "machine-readable report");

    CLI::App* epsilon = app.add_subcommand("epsilon", "approximation error of a design file");
    epsilon->add_option("--design", design_path, "design file")->required();
    epsilon->add_option("--t", order, "design order")->required()->check(CLI::Range(1, 2));
    epsilon->add_flag("--json", emit_json, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }
    flags.emit_json = emit_json;

    try {
        if (construct->parsed()) return cmd_construct(dim, out_path, verify, flags);
        if (verify_cmd->parsed()) return cmd_verify(design_path, order, flags);
        if (gauss->parsed()) {
            if (gauss_max < gauss_min)
                throw std::invalid_argument("gauss: --max must be at least --min");
            return cmd_gauss(gauss_min, gauss_max, emit_json);
        }
        if (check->parsed())
            return cmd_check_group(tables, generator_files, add_monomial, order, dim, !no_numeric,
                                   emit_json);
        if (lift->parsed()) return cmd_lift(design_path, order, out_path, verify, flags);
        if (epsilon->parsed()) return cmd_epsilon(design_path, order, emit_json);
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitUsage;
    }
    return kExitUsage;
}
