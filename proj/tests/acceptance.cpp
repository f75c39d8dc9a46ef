// Acceptance suite: one criterion per run block, one pass/fail line each,
// nonzero exit if anything fails. All tolerances are exact integer equality;
// the timed criteria enforce their wall-clock limits here.

#include <chrono>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "necklaces/field.hpp"
#include "necklaces/formulas.hpp"
#include "necklaces/group.hpp"
#include "necklaces/oracle.hpp"
#include "necklaces/sequences.hpp"

using namespace necklaces;

namespace {

using CheckFn = std::function<std::string()>; // empty string = pass

// Groups named by the acceptance grid.
const std::vector<std::string> kGridSpecs = {
    "C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8",
    "C2xC2", "C2xC4", "C2xC2xC2", "C2xC3", "S3", "D4"};

std::string random_spec(std::mt19937& rng, std::uint64_t max_order) {
    static const std::vector<std::pair<std::string, std::uint64_t>> pool = [] {
        std::vector<std::pair<std::string, std::uint64_t>> terms;
        for (std::uint64_t k = 1; k <= 24; ++k) terms.emplace_back("C" + std::to_string(k), k);
        for (std::uint64_t m = 2; m <= 12; ++m) terms.emplace_back("D" + std::to_string(m), 2 * m);
        terms.emplace_back("S3", 6);
        terms.emplace_back("S4", 24);
        return terms;
    }();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> factor_count(1, 3);
    std::string spec;
    std::uint64_t order = 1;
    for (int i = 0, want = factor_count(rng); i < want; ++i) {
        const auto& [term, term_order] = pool[pick(rng)];
        if (order * term_order > max_order) break;
        if (!spec.empty()) spec += "x";
        spec += term;
        order *= term_order;
    }
    return spec.empty() ? "C1" : spec;
}

std::string criterion_1_golden_tables() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::vector<std::uint64_t>> tables = {
        {1, 2, 2, 4, 4, 8, 10, 20, 30},
        {1, 2, 5, 20, 129, 1316, 16813, 262284, 4783029},
        {1, 2, 6, 33, 260, 2812, 37450, 597965, 11111134}};
    const std::vector<SequenceName> names = {SequenceName::a000013, SequenceName::a130293,
                                             SequenceName::a121774};
    for (std::size_t s = 0; s < names.size(); ++s) {
        const auto terms = sequence_terms(names[s], 9);
        for (std::size_t i = 0; i < 9; ++i)
            if (terms[i] != tables[s][i])
                return std::string(to_string(names[s])) + " term " + std::to_string(i + 1) +
                       " = " + terms[i].str() + ", expected " + std::to_string(tables[s][i]);
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 1.0) return "runtime " + std::to_string(secs) + "s exceeds 1s";
    return {};
}

bool grid_instance_in_budget(const FiniteGroup& g, std::uint64_t n) {
    return big_pow(BigInt(g.order()), n - 1) <= 1000000;
}

std::string criterion_2_formula_vs_oracle() {
    const auto start = std::chrono::steady_clock::now();
    std::uint64_t instances = 0;
    for (const auto& spec : kGridSpecs) {
        const FiniteGroup g = FiniteGroup::from_spec(spec);
        for (std::uint64_t n = 1; n <= 8; ++n) {
            if (!grid_instance_in_budget(g, n)) continue;
            auto stream = enumerate_identity_tuples(g, n);
            const auto orbits = orbits_rotation(stream);
            if (count_identity_necklaces(g, n).value != orbits.size())
                return spec + " n=" + std::to_string(n) + ": formula != oracle";
            ++instances;
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 60.0) return "runtime " + std::to_string(secs) + "s exceeds 60s";
    if (instances == 0) return "empty grid";
    return {};
}

std::string criterion_3_period_partition() {
    for (const auto& spec : kGridSpecs) {
        const FiniteGroup g = FiniteGroup::from_spec(spec);
        for (std::uint64_t n = 1; n <= 8; ++n) {
            if (!grid_instance_in_budget(g, n)) continue;
            auto stream = enumerate_identity_tuples(g, n);
            const auto orbits = orbits_rotation(stream);
            std::map<std::uint64_t, std::uint64_t> census;
            for (const auto& o : orbits) ++census[o.smallest_period];
            BigInt total = 0;
            for (std::uint64_t k : divisors(n)) {
                const BigInt formula = count_smallest_period(g, n, k).value;
                const std::uint64_t observed = census.count(k) ? census.at(k) : 0;
                if (formula != observed)
                    return spec + " n=" + std::to_string(n) + " k=" + std::to_string(k) +
                           ": period count " + formula.str() + " != census " +
                           std::to_string(observed);
                total += formula;
            }
            if (total != count_identity_necklaces(g, n).value)
                return spec + " n=" + std::to_string(n) + ": period counts do not sum to total";
        }
    }
    return {};
}

std::string criterion_4_k_product() {
    struct Instance {
        std::string group;
        std::vector<std::vector<element_t>> subsets;
    };
    // S3: each conjugacy class, the alternating subgroup, the whole group.
    // D4: each conjugacy class, the center.
    std::vector<Instance> instances;
    {
        const FiniteGroup s3 = FiniteGroup::from_spec("S3");
        Instance inst{"S3", {}};
        for (const auto& cls : s3.conjugacy_classes()) inst.subsets.push_back(cls);
        inst.subsets.push_back({0, 3, 4});
        std::vector<element_t> all(s3.order());
        for (element_t a = 0; a < s3.order(); ++a) all[a] = a;
        inst.subsets.push_back(all);
        instances.push_back(std::move(inst));
    }
    {
        const FiniteGroup d4 = FiniteGroup::from_spec("D4");
        Instance inst{"D4", {}};
        for (const auto& cls : d4.conjugacy_classes()) inst.subsets.push_back(cls);
        inst.subsets.push_back({0, 2}); // center: 1 and r^2
        instances.push_back(std::move(inst));
    }

    for (const auto& inst : instances) {
        const FiniteGroup g = FiniteGroup::from_spec(inst.group);
        for (std::uint64_t n = 1; n <= 5; ++n) {
            for (const auto& members : inst.subsets) {
                const auto k = ConjClosedSubset::make(g, members);
                auto stream = enumerate_K_tuples(g, k, n);
                const auto orbits = orbits_rotation(stream);
                if (count_K_necklaces(g, k, n).value != orbits.size())
                    return inst.group + " n=" + std::to_string(n) + " |K|=" +
                           std::to_string(k.size()) + ": K-count formula != oracle";
            }
            BigInt class_sum = 0;
            for (const auto& cls : g.conjugacy_classes())
                class_sum += count_K_necklaces(g, ConjClosedSubset::make(g, cls), n).value;
            if (class_sum != count_moreau(g.order(), n).value)
                return inst.group + " n=" + std::to_string(n) + ": class partition != Moreau";
        }
    }
    return {};
}

std::string criterion_5_homogeneous_bijection() {
    for (const auto& spec : kGridSpecs) {
        const FiniteGroup g = FiniteGroup::from_spec(spec);
        for (std::uint64_t n = 1; n <= 8; ++n) {
            if (big_pow(BigInt(g.order()), n) > 100000) continue;
            const auto hom = orbits_homogeneous(g, n);
            if (BigInt(hom.size()) != count_identity_necklaces(g, n).value)
                return spec + " n=" + std::to_string(n) + ": homogeneous orbit count mismatch";
            const auto report = verify_bijection(g, n);
            if (!report.passed())
                return spec + " n=" + std::to_string(n) + ": " +
                       std::to_string(report.counterexamples.size()) +
                       " bijection counterexamples";
        }
    }
    return {};
}

std::string criterion_6_integrality() {
    std::mt19937 rng(987654321);
    std::uniform_int_distribution<std::uint64_t> n_dist(1, 30);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string spec = random_spec(rng, 24);
        const FiniteGroup g = FiniteGroup::from_spec(spec);
        const std::uint64_t n = n_dist(rng);
        const auto r = count_identity_necklaces(g, n);
        if (r.numerator_check % n != 0)
            return spec + " n=" + std::to_string(n) + ": divisor sum not divisible by n";
        if (r.value * r.denominator != r.numerator_check)
            return spec + " n=" + std::to_string(n) + ": result shape broken";
    }
    return {};
}

std::string criterion_7_field_correspondence() {
    const auto start = std::chrono::steady_clock::now();
    const std::vector<std::pair<std::uint32_t, std::uint32_t>> grid = {
        {2, 8}, {3, 5}, {4, 4}, {5, 3}};
    for (const auto& [q, max_n] : grid) {
        const auto factors = factorize(q);
        const std::uint32_t p = static_cast<std::uint32_t>(factors[0].first);
        const std::uint32_t e = factors[0].second;
        const BaseField f(p, e);
        std::string spec;
        for (std::uint32_t i = 0; i < e; ++i) spec += (i ? "x" : "") + ("C" + std::to_string(p));
        const FiniteGroup additive = FiniteGroup::from_spec(spec);
        for (std::uint32_t n = 1; n <= max_n; ++n) {
            const auto polys = enumerate_irreducibles(f, n, fcode_t{0});
            const BigInt necklaces_count = count_aperiodic(additive, n).value;
            if (BigInt(polys.size()) != necklaces_count)
                return "q=" + std::to_string(q) + " n=" + std::to_string(n) + ": " +
                       std::to_string(polys.size()) + " irreducibles vs " +
                       necklaces_count.str() + " necklaces";
        }
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs >= 60.0) return "runtime " + std::to_string(secs) + "s exceeds 60s";
    return {};
}

std::string criterion_8_phi_equivariance() {
    for (std::uint64_t q : {2, 3, 4, 5, 7, 8, 9, 11, 13, 16}) {
        const auto factors = factorize(q);
        const std::uint32_t p = static_cast<std::uint32_t>(factors[0].first);
        const std::uint32_t e = factors[0].second;
        std::string spec;
        for (std::uint32_t i = 0; i < e; ++i) spec += (i ? "x" : "") + ("C" + std::to_string(p));
        const FiniteGroup additive = FiniteGroup::from_spec(spec);
        for (std::uint32_t n = 1;; ++n) {
            std::uint64_t size = 1;
            bool fits = true;
            for (std::uint32_t i = 0; i < n; ++i) {
                size *= q;
                if (size > 4096) fits = false;
            }
            if (!fits) break;
            ExtensionField k_field(BaseField(p, e), n);
            const PhiReport report = verify_phi_equivariance(k_field);
            if (!report.exhaustive || report.tuples_checked != size)
                return "q=" + std::to_string(q) + " n=" + std::to_string(n) + ": not exhaustive";
            if (!report.passed())
                return "q=" + std::to_string(q) + " n=" + std::to_string(n) + ": " +
                       std::to_string(report.counterexamples.size()) + " counterexamples";
            const auto [zero_all, zero_full] = count_trace_zero_classes(k_field);
            if (zero_all.value != count_identity_necklaces(additive, n).value)
                return "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                       ": trace-zero class total mismatch";
            if (zero_full.value != count_aperiodic(additive, n).value)
                return "q=" + std::to_string(q) + " n=" + std::to_string(n) +
                       ": size-n trace-zero class count mismatch";
        }
    }
    return {};
}

std::string criterion_9_number_theory_kernel() {
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        std::uint64_t sum = 0;
        for (std::uint64_t d : divisors(n)) sum += euler_phi(d);
        if (sum != n) return "Gauss identity fails at n = " + std::to_string(n);
    }
    std::mt19937 rng(13);
    std::uniform_int_distribution<int> value(-100, 100);
    const std::uint64_t bound = 200;
    for (int fn = 0; fn < 100; ++fn) {
        std::vector<Rational> f(bound + 1);
        for (std::uint64_t k = 1; k <= bound; ++k) f[k] = value(rng);
        std::vector<Rational> g(bound + 1, Rational(0));
        for (std::uint64_t k = 1; k <= bound; ++k)
            for (std::uint64_t d : divisors(k)) g[k] += f[d];
        for (std::uint64_t k = 1; k <= bound; ++k) {
            Rational inverted = 0;
            Rational lhs = 0, rhs = 0;
            for (std::uint64_t d : divisors(k)) {
                inverted += Rational(mobius(d)) * g[k / d];
                lhs += Rational(k / d) * f[d];
                rhs += Rational(euler_phi(k / d)) * g[d];
            }
            if (inverted != f[k])
                return "Moebius inversion fails at function " + std::to_string(fn) + ", k = " +
                       std::to_string(k);
            if (lhs != rhs)
                return "divisor-sum exchange fails at function " + std::to_string(fn) + ", k = " +
                       std::to_string(k);
        }
    }
    return {};
}

std::string criterion_10_coprime_reduction() {
    std::mt19937 rng(55555);
    std::uniform_int_distribution<std::uint64_t> n_dist(1, 30);
    int done = 0;
    while (done < 50) {
        const std::string spec = random_spec(rng, 24);
        const FiniteGroup g = FiniteGroup::from_spec(spec);
        const std::uint64_t n = n_dist(rng);
        if (gcd(g.order(), n) != 1) continue;
        if (count_identity_necklaces(g, n).value * g.order() != count_moreau(g.order(), n).value)
            return spec + " n=" + std::to_string(n) + ": coprime reduction fails";
        ++done;
    }
    return {};
}

} // namespace

int main() {
    const std::vector<std::pair<std::string, CheckFn>> criteria = {
        {"golden tables 1-3 reproduced exactly, under 1s", criterion_1_golden_tables},
        {"identity-product formula equals orbit oracle on the full grid", criterion_2_formula_vs_oracle},
        {"smallest-period counts partition the total and match the census", criterion_3_period_partition},
        {"K-product counts match the oracle and partition the alphabet count", criterion_4_k_product},
        {"homogeneous orbit counts match and the bijection round-trips", criterion_5_homogeneous_bijection},
        {"divisor sums are divisible by n on 200 random instances", criterion_6_integrality},
        {"irreducible census equals the aperiodic zero-sum count", criterion_7_field_correspondence},
        {"normal-basis map is equivariant; trace-zero classes line up", criterion_8_phi_equivariance},
        {"number-theory kernel: Gauss, Moebius inversion, divisor exchange", criterion_9_number_theory_kernel},
        {"coprime case reduces to the alphabet count on 50 instances", criterion_10_coprime_reduction},
    };

    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        std::string detail;
        try {
            detail = criteria[i].second();
        } catch (const std::exception& e) {
            detail = std::string("exception: ") + e.what();
        }
        if (detail.empty()) {
            std::cout << "[PASS] criterion " << (i + 1) << ": " << criteria[i].first << "\n";
        } else {
            std::cout << "[FAIL] criterion " << (i + 1) << ": " << criteria[i].first << " -- "
                      << detail << "\n";
            ++failures;
        }
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    else std::cout << "all 10 criteria passed\n";
    return failures == 0 ? 0 : 1;
}
