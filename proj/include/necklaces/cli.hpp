#pragma once

#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "necklaces/field.hpp"
#include "necklaces/formulas.hpp"
#include "necklaces/group.hpp"
#include "necklaces/oracle.hpp"
#include "necklaces/sequences.hpp"

namespace necklaces::cli {

using json = nlohmann::ordered_json;

/// Stable exit codes: 0 success, 1 verification mismatch, 2 usage error,
/// 3 resource/budget error.
enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2, kBudget = 3 };

namespace detail {

struct Options {
    std::string subcommand;
    std::string group_spec;
    std::string k_subset = "identity";
    std::string sequence_name;
    std::string n_range;
    std::uint64_t n = 0;
    std::uint64_t period = 0;
    std::uint64_t q = 0;
    std::uint64_t budget = kDefaultTupleBudget;
    bool budget_given = false;
    bool aperiodic = false;
    bool homogeneous = false;
    bool oracle = false;
    bool list = false;
    bool as_json = false;

    std::uint64_t field_size_bound() const {
        return budget_given ? budget : ExtensionField::kDefaultSizeBound;
    }
};

inline std::vector<std::uint64_t> requested_lengths(const Options& opt) {
    if (!opt.n_range.empty()) {
        const auto sep = opt.n_range.find("..");
        if (sep == std::string::npos)
            throw parse_error("--n-range expects A..B, got \"" + opt.n_range + "\"");
        std::uint64_t lo = 0, hi = 0;
        try {
            lo = std::stoull(opt.n_range.substr(0, sep));
            hi = std::stoull(opt.n_range.substr(sep + 2));
        } catch (const std::exception&) {
            throw parse_error("--n-range expects A..B, got \"" + opt.n_range + "\"");
        }
        if (lo == 0 || hi < lo)
            throw parse_error("--n-range must be a nonempty ascending range of positive integers");
        std::vector<std::uint64_t> out;
        for (std::uint64_t n = lo; n <= hi; ++n) out.push_back(n);
        return out;
    }
    if (opt.n == 0) throw parse_error("--n must be a positive integer");
    return {opt.n};
}

struct CountOutcome {
    CountResult result;
    std::vector<FormulaTerm> terms;
    std::string mode;
    std::optional<BigInt> oracle_value;
};

inline BigInt oracle_for_mode(const FiniteGroup& g, const ConjClosedSubset& k, std::uint64_t n,
                              const std::string& mode, std::uint64_t period,
                              std::uint64_t budget) {
    if (mode == "homogeneous") return BigInt(orbits_homogeneous(g, n, budget).size());
    auto stream = enumerate_K_tuples(g, k, n, budget);
    const auto orbits = orbits_rotation(stream);
    if (mode == "identity" || mode == "k-product") return BigInt(orbits.size());
    const std::uint64_t wanted = mode == "aperiodic" ? n : period;
    std::uint64_t count = 0;
    for (const auto& o : orbits)
        if (o.smallest_period == wanted) ++count;
    return BigInt(count);
}

inline CountOutcome run_count_once(const FiniteGroup& g, const ConjClosedSubset& k,
                                   std::uint64_t n, const Options& opt) {
    CountOutcome out;
    if (opt.homogeneous) {
        out.mode = "homogeneous";
        out.result = count_homogeneous(g, n, &out.terms);
    } else if (opt.period > 0) {
        out.mode = "period";
        out.result = count_smallest_period(g, n, opt.period, &out.terms);
    } else if (opt.aperiodic) {
        out.mode = "aperiodic";
        out.result = count_K_aperiodic(g, k, n, &out.terms);
    } else {
        out.mode = k.is_identity_only() ? "identity" : "k-product";
        out.result = count_K_necklaces(g, k, n, &out.terms);
    }
    if (opt.oracle)
        out.oracle_value = oracle_for_mode(g, k, n, out.mode, opt.period, opt.budget);
    return out;
}

inline void print_terms(std::ostream& os, const CountOutcome& out, bool k_trivial) {
    const bool moebius_weights = out.mode == "aperiodic" || out.mode == "period";
    const std::string weight_name = moebius_weights ? "mu" : "phi";
    const std::string torsion_name = k_trivial ? "[G/(n/d)]" : "[G/K/(n/d)]";
    for (const auto& t : out.terms)
        os << "  d=" << t.d << " " << weight_name << "=" << t.weight << " " << torsion_name << "="
           << t.torsion << " |G|^(d-1)=" << t.power << " term=" << t.term << "\n";
    os << "  sum=" << out.result.numerator_check << " denominator=" << out.result.denominator
       << "\n";
}

inline int cmd_count(const Options& opt, std::ostream& os) {
    const FiniteGroup g = FiniteGroup::from_spec(opt.group_spec);
    const ConjClosedSubset k = ConjClosedSubset::from_spec(g, opt.k_subset);
    if ((opt.period > 0 || opt.homogeneous) && !k.is_identity_only())
        throw parse_error("--period and --homogeneous do not combine with --k-subset");

    bool all_match = true;
    json results = json::array();
    for (std::uint64_t n : requested_lengths(opt)) {
        const CountOutcome out = run_count_once(g, k, n, opt);
        const bool match = !out.oracle_value || *out.oracle_value == out.result.value;
        all_match = all_match && match;
        if (opt.as_json) {
            json r;
            r["subcommand"] = "count";
            r["group"] = opt.group_spec;
            r["n"] = n;
            r["count"] = out.result.value.str();
            r["method"] = to_string(out.result.method);
            if (out.mode != "identity") r["mode"] = out.mode;
            if (!k.is_identity_only()) r["k_subset"] = opt.k_subset;
            if (opt.period > 0) r["period"] = opt.period;
            if (out.oracle_value) {
                r["oracle_count"] = out.oracle_value->str();
                r["match"] = match;
            }
            results.push_back(std::move(r));
        } else {
            os << "group=" << opt.group_spec << " n=" << n << " mode=" << out.mode;
            if (!k.is_identity_only()) os << " k_subset=" << opt.k_subset;
            if (opt.period > 0) os << " k=" << opt.period;
            os << "\n";
            print_terms(os, out, k.is_identity_only());
            if (out.oracle_value)
                os << "formula=" << out.result.value << " oracle=" << *out.oracle_value
                   << " match=" << (match ? "true" : "false") << "\n";
            else
                os << "count=" << out.result.value << "\n";
        }
    }
    if (opt.as_json) os << (results.size() == 1 ? results[0].dump() : results.dump()) << "\n";
    return all_match ? kOk : kMismatch;
}

inline int cmd_enumerate(const Options& opt, std::ostream& os) {
    const FiniteGroup g = FiniteGroup::from_spec(opt.group_spec);
    const ConjClosedSubset k = ConjClosedSubset::from_spec(g, opt.k_subset);
    const std::uint64_t n = requested_lengths(opt).front();
    auto stream = enumerate_K_tuples(g, k, n, opt.budget);
    const auto orbits = orbits_rotation(stream);

    std::map<std::uint64_t, std::uint64_t> census;
    for (const auto& o : orbits) ++census[o.smallest_period];

    if (opt.as_json) {
        json r;
        r["subcommand"] = "enumerate";
        r["group"] = opt.group_spec;
        r["n"] = n;
        if (!k.is_identity_only()) r["k_subset"] = opt.k_subset;
        r["total"] = orbits.size();
        json orbits_json = json::array();
        for (const auto& o : orbits) {
            json item;
            item["rep"] = o.representative.entries;
            item["size"] = o.size;
            orbits_json.push_back(std::move(item));
        }
        r["orbits"] = std::move(orbits_json);
        json census_json;
        for (const auto& [period, count] : census) census_json[std::to_string(period)] = count;
        r["period_census"] = std::move(census_json);
        os << r.dump() << "\n";
    } else {
        for (const auto& o : orbits) {
            os << "rep=";
            for (std::size_t i = 0; i < o.representative.entries.size(); ++i) {
                if (i) os << ",";
                os << o.representative.entries[i];
            }
            os << " size=" << o.size << "\n";
        }
        os << "total=" << orbits.size();
        for (const auto& [period, count] : census) os << " period_" << period << "=" << count;
        os << "\n";
    }
    return kOk;
}

inline int cmd_sequence(const Options& opt, std::ostream& os) {
    const auto name = parse_sequence_name(opt.sequence_name);
    if (!name)
        throw parse_error("unknown sequence \"" + opt.sequence_name +
                          "\" (expected a000013, a130293 or a121774)");
    const std::uint64_t max_n = requested_lengths(opt).back();
    const auto terms = sequence_terms(*name, max_n);
    if (opt.as_json) {
        json r;
        r["subcommand"] = "sequence";
        r["name"] = to_string(*name);
        r["max_n"] = max_n;
        json terms_json = json::array();
        for (const auto& t : terms) terms_json.push_back(t.str());
        r["terms"] = std::move(terms_json);
        os << r.dump() << "\n";
    } else {
        for (std::size_t i = 0; i < terms.size(); ++i)
            os << "n=" << (i + 1) << " count=" << terms[i] << "\n";
    }
    return kOk;
}

inline std::pair<std::uint32_t, std::uint32_t> prime_power_split(std::uint64_t q) {
    if (q < 2) throw parse_error("--q must be a prime power >= 2");
    const auto factors = factorize(q);
    if (factors.size() != 1) throw parse_error("--q must be a prime power, got " + std::to_string(q));
    return {static_cast<std::uint32_t>(factors[0].first), factors[0].second};
}

inline FiniteGroup additive_group(std::uint32_t p, std::uint32_t e) {
    std::string spec;
    for (std::uint32_t i = 0; i < e; ++i) {
        if (!spec.empty()) spec += "x";
        spec += "C" + std::to_string(p);
    }
    return FiniteGroup::from_spec(spec);
}

inline int cmd_field(const Options& opt, std::ostream& os) {
    const auto [p, e] = prime_power_split(opt.q);
    const std::uint64_t n = requested_lengths(opt).front();
    const BaseField f(p, e);
    const auto polys =
        enumerate_irreducibles(f, static_cast<std::uint32_t>(n), fcode_t{0}, opt.field_size_bound());
    const FiniteGroup additive = additive_group(p, e);
    const CountResult necklaces_count = count_aperiodic(additive, n);
    const bool match = BigInt(polys.size()) == necklaces_count.value;

    if (opt.as_json) {
        json r;
        r["subcommand"] = "field";
        r["q"] = opt.q;
        r["n"] = n;
        r["irreducibles"] = BigInt(polys.size()).str();
        r["necklaces"] = necklaces_count.value.str();
        r["match"] = match;
        if (opt.list) {
            json list = json::array();
            for (const auto& poly : polys) list.push_back(poly_to_string(f, poly));
            r["polynomials"] = std::move(list);
        }
        os << r.dump() << "\n";
    } else {
        os << "q=" << opt.q << " n=" << n << " irreducibles=" << polys.size()
           << " necklaces=" << necklaces_count.value << " match=" << (match ? "true" : "false")
           << "\n";
        if (opt.list)
            for (const auto& poly : polys) os << poly_to_string(f, poly) << "\n";
    }
    return match ? kOk : kMismatch;
}

struct CheckLine {
    std::string name;
    bool passed;
    std::string detail;
};

inline int render_checks(const Options& opt, const std::string& instance,
                         const std::vector<CheckLine>& checks, std::ostream& os) {
    bool all = true;
    for (const auto& c : checks) all = all && c.passed;
    if (opt.as_json) {
        json r;
        r["subcommand"] = "verify";
        if (!opt.group_spec.empty()) r["group"] = opt.group_spec;
        if (opt.q > 0) r["q"] = opt.q;
        r["n"] = requested_lengths(opt).front();
        json list = json::array();
        for (const auto& c : checks) {
            json item;
            item["name"] = c.name;
            item["passed"] = c.passed;
            if (!c.detail.empty()) item["detail"] = c.detail;
            list.push_back(std::move(item));
        }
        r["checks"] = std::move(list);
        r["passed"] = all;
        os << r.dump() << "\n";
    } else {
        os << "verify " << instance << "\n";
        for (const auto& c : checks)
            os << (c.passed ? "[pass] " : "[fail] ") << c.name
               << (c.detail.empty() ? "" : ": " + c.detail) << "\n";
        os << (all ? "all checks passed" : "CHECKS FAILED") << "\n";
    }
    return all ? kOk : kMismatch;
}

inline int cmd_verify_group(const Options& opt, std::ostream& os) {
    const FiniteGroup g = FiniteGroup::from_spec(opt.group_spec);
    const std::uint64_t n = requested_lengths(opt).front();
    std::vector<CheckLine> checks;

    auto stream = enumerate_identity_tuples(g, n, opt.budget);
    const auto orbits = orbits_rotation(stream);
    std::map<std::uint64_t, std::uint64_t> census;
    for (const auto& o : orbits) ++census[o.smallest_period];

    const BigInt formula = count_identity_necklaces(g, n).value;
    checks.push_back({"identity_count_formula_vs_orbits", formula == orbits.size(),
                      formula.str() + " vs " + std::to_string(orbits.size())});

    const auto identity = ConjClosedSubset::identity_subset(g);
    const BigInt burnside = burnside_count_rotation(g, identity, n, opt.budget).value;
    checks.push_back({"burnside_vs_orbits", burnside == orbits.size(),
                      burnside.str() + " vs " + std::to_string(orbits.size())});

    const BigInt aperiodic = count_aperiodic(g, n).value;
    const std::uint64_t aperiodic_orbits = census.count(n) ? census.at(n) : 0;
    checks.push_back({"aperiodic_count_vs_census", aperiodic == aperiodic_orbits,
                      aperiodic.str() + " vs " + std::to_string(aperiodic_orbits)});

    bool periods_ok = true;
    BigInt period_sum = 0;
    for (std::uint64_t k : divisors(n)) {
        const BigInt by_formula = count_smallest_period(g, n, k).value;
        const std::uint64_t by_census = census.count(k) ? census.at(k) : 0;
        periods_ok = periods_ok && by_formula == by_census;
        period_sum += by_formula;
    }
    periods_ok = periods_ok && period_sum == formula;
    checks.push_back({"smallest_period_partition", periods_ok,
                      "per-period counts and their total"});

    bool fixed_ok = true;
    for (std::uint64_t k : divisors(n)) {
        // fixed_tuple_count faults internally if formula and enumeration split
        const BigInt a_k = fixed_tuple_count(g, identity, n, k, opt.budget).value;
        BigInt p_sum = 0;
        for (std::uint64_t d : divisors(k))
            p_sum += BigInt(d) * (census.count(d) ? census.at(d) : 0);
        fixed_ok = fixed_ok && a_k == p_sum;
    }
    checks.push_back({"fixed_tuples_vs_period_partition", fixed_ok,
                      "|A_k| equals the divisor sum of |P_d|"});

    const auto hom = orbits_homogeneous(g, n, opt.budget);
    checks.push_back({"homogeneous_orbits_vs_count", BigInt(hom.size()) == formula,
                      std::to_string(hom.size()) + " vs " + formula.str()});

    const auto bijection = verify_bijection(g, n, opt.budget);
    checks.push_back({"bijection_round_trip", bijection.passed(),
                      std::to_string(bijection.homogeneous_orbit_count) + " orbits matched, " +
                          std::to_string(bijection.counterexamples.size()) + " counterexamples"});

    BigInt class_sum = 0;
    for (const auto& cls : g.conjugacy_classes())
        class_sum += count_K_necklaces(g, ConjClosedSubset::make(g, cls), n).value;
    const BigInt moreau = count_moreau(g.order(), n).value;
    checks.push_back({"class_partition_vs_alphabet_count", class_sum == moreau,
                      class_sum.str() + " vs " + moreau.str()});

    return render_checks(opt, "group=" + opt.group_spec + " n=" + std::to_string(n), checks, os);
}

inline int cmd_verify_field(const Options& opt, std::ostream& os) {
    const auto [p, e] = prime_power_split(opt.q);
    const std::uint64_t n = requested_lengths(opt).front();
    std::vector<CheckLine> checks;

    ExtensionField k_field(BaseField(p, e), static_cast<std::uint32_t>(n),
                           opt.field_size_bound());
    const PhiReport phi = verify_phi_equivariance(k_field);
    checks.push_back({"phi_equivariance_and_trace_zero", phi.passed(),
                      std::to_string(phi.tuples_checked) + " tuples checked" +
                          (phi.exhaustive ? ", exhaustive" : ", sampled")});

    const FiniteGroup additive = additive_group(p, e);
    const auto [zero_all, zero_full] = count_trace_zero_classes(k_field);
    const BigInt zero_sum_total = count_identity_necklaces(additive, n).value;
    const BigInt zero_sum_aperiodic = count_aperiodic(additive, n).value;
    checks.push_back({"trace_zero_classes_vs_zero_sum_count", zero_all.value == zero_sum_total,
                      zero_all.value.str() + " vs " + zero_sum_total.str()});
    checks.push_back({"full_size_trace_zero_vs_aperiodic", zero_full.value == zero_sum_aperiodic,
                      zero_full.value.str() + " vs " + zero_sum_aperiodic.str()});

    const BaseField f(p, e);
    const auto with_zero = enumerate_irreducibles(f, static_cast<std::uint32_t>(n), fcode_t{0},
                                                  opt.field_size_bound());
    checks.push_back({"irreducibles_with_zero_coeff_vs_aperiodic",
                      BigInt(with_zero.size()) == zero_sum_aperiodic,
                      std::to_string(with_zero.size()) + " vs " + zero_sum_aperiodic.str()});

    const auto all_irr =
        enumerate_irreducibles(f, static_cast<std::uint32_t>(n), std::nullopt,
                               opt.field_size_bound());
    std::uint64_t full_classes = 0;
    for (const auto& cls : conjugacy_classes_of_field(k_field))
        if (cls.size() == n) ++full_classes;
    checks.push_back({"irreducibles_vs_full_size_classes", all_irr.size() == full_classes,
                      std::to_string(all_irr.size()) + " vs " + std::to_string(full_classes)});

    return render_checks(opt, "q=" + std::to_string(opt.q) + " n=" + std::to_string(n), checks,
                         os);
}

inline int cmd_verify(const Options& opt, std::ostream& os) {
    if (!opt.group_spec.empty() && opt.q > 0)
        throw parse_error("verify takes either --group or --q, not both");
    if (!opt.group_spec.empty()) return cmd_verify_group(opt, os);
    if (opt.q > 0) return cmd_verify_field(opt, os);
    throw parse_error("verify requires --group or --q");
}

} // namespace detail

/// Parses and runs one command line. Output streams are injectable so tests
/// can capture everything.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    detail::Options opt;

    CLI::App app{"Finite-group necklace counting, enumeration and verification"};
    app.require_subcommand(1);

    std::vector<CLI::Option*> budget_options;
    auto add_common = [&](CLI::App* sub, bool with_group, bool with_range = false) {
        if (with_group) sub->add_option("--group", opt.group_spec, "group spec, e.g. C2, S3, D4xC2");
        auto* n_opt = sub->add_option("--n", opt.n, "tuple length");
        if (with_range)
            sub->add_option("--n-range", opt.n_range, "length range A..B")->excludes(n_opt);
        budget_options.push_back(sub->add_option("--budget", opt.budget, "enumeration budget (tuples)"));
        sub->add_flag("--json", opt.as_json, "machine-readable output");
    };

    auto* count = app.add_subcommand("count", "evaluate a counting formula");
    add_common(count, true, true);
    count->add_option("--k-subset", opt.k_subset,
                      "product target: identity|all|class:<i>|elems:<i,j,...>");
    auto* ap = count->add_flag("--aperiodic", opt.aperiodic, "count aperiodic necklaces");
    auto* per = count->add_option("--period", opt.period, "count necklaces of this smallest period");
    auto* hom = count->add_flag("--homogeneous", opt.homogeneous,
                                "count combined rotation/translation orbits");
    ap->excludes(per)->excludes(hom);
    per->excludes(hom);
    count->add_flag("--oracle", opt.oracle, "cross-check against brute-force orbits");

    auto* enumerate = app.add_subcommand("enumerate", "list rotation orbits");
    add_common(enumerate, true);
    enumerate->add_option("--k-subset", opt.k_subset);

    auto* sequence = app.add_subcommand("sequence", "classical integer sequences");
    sequence->add_option("name", opt.sequence_name, "a000013 | a130293 | a121774")->required();
    add_common(sequence, false, true);

    auto* field = app.add_subcommand("field", "irreducible polynomial census");
    add_common(field, false);
    field->add_option("--q", opt.q, "base field size (prime power)")->required();
    field->add_flag("--list", opt.list, "print the polynomials");

    auto* verify = app.add_subcommand("verify", "run the invariant suite on one instance");
    add_common(verify, true);
    verify->add_option("--q", opt.q, "base field size (prime power)");

    try {
        std::vector<const char*> argv;
        argv.push_back("necklaces");
        for (const auto& a : args) argv.push_back(a.c_str());
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kUsage;
    }

    for (const auto* b : budget_options) opt.budget_given = opt.budget_given || b->count() > 0;
    if (count->parsed() && per->count() > 0 && opt.period == 0) {
        err << "usage error: --period must be a positive divisor of n\n";
        return kUsage;
    }

    try {
        if (count->parsed()) return detail::cmd_count(opt, out);
        if (enumerate->parsed()) return detail::cmd_enumerate(opt, out);
        if (sequence->parsed()) return detail::cmd_sequence(opt, out);
        if (field->parsed()) return detail::cmd_field(opt, out);
        if (verify->parsed()) return detail::cmd_verify(opt, out);
        err << "error: no subcommand\n";
        return kUsage;
    } catch (const budget_error& e) {
        err << "budget error: " << e.what() << "\n";
        return kBudget;
    } catch (const parse_error& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kMismatch;
    }
}

inline int run(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run(args, out, err);
}

} // namespace necklaces::cli
