#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "necklaces/formulas.hpp"

using namespace necklaces;

namespace {

void check_result_shape(const CountResult& r) {
    CHECK(r.value >= 0);
    CHECK(r.value * r.denominator == r.numerator_check);
}

// Random group specs from the constructor grammar with order <= max_order.
std::string random_spec(std::mt19937& rng, std::uint64_t max_order) {
    const std::vector<std::pair<std::string, std::uint64_t>> pool = [&] {
        std::vector<std::pair<std::string, std::uint64_t>> terms;
        for (std::uint64_t k = 1; k <= max_order; ++k)
            terms.emplace_back("C" + std::to_string(k), k);
        for (std::uint64_t m = 2; 2 * m <= max_order; ++m)
            terms.emplace_back("D" + std::to_string(m), 2 * m);
        std::uint64_t f = 1;
        for (std::uint64_t m = 1; m <= 4; ++m) {
            f *= m;
            if (f <= max_order) terms.emplace_back("S" + std::to_string(m), f);
        }
        return terms;
    }();
    std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
    std::uniform_int_distribution<int> factor_count(1, 3);
    std::string spec;
    std::uint64_t order = 1;
    const int want = factor_count(rng);
    for (int i = 0; i < want; ++i) {
        const auto& [term, term_order] = pool[pick(rng)];
        if (order * term_order > max_order) break;
        if (!spec.empty()) spec += "x";
        spec += term;
        order *= term_order;
    }
    return spec.empty() ? "C1" : spec;
}

} // namespace

TEST_CASE("count_identity_necklaces: pinned values", "[formulas]") {
    const FiniteGroup c2 = FiniteGroup::from_spec("C2");
    const FiniteGroup c5 = FiniteGroup::from_spec("C5");
    const FiniteGroup s3 = FiniteGroup::from_spec("S3");

    CHECK(count_identity_necklaces(c2, 6).value == 8);
    CHECK(count_identity_necklaces(c5, 5).value == 129);
    CHECK(count_identity_necklaces(s3, 3).value == 14);
    for (const auto* g : {&c2, &c5, &s3}) CHECK(count_identity_necklaces(*g, 1).value == 1);

    // the full first row of binary identity-product counts
    const std::vector<std::uint64_t> binary = {1, 2, 2, 4, 4, 8, 10, 20, 30};
    for (std::size_t n = 1; n <= binary.size(); ++n) {
        auto r = count_identity_necklaces(c2, n);
        CHECK(r.value == binary[n - 1]);
        check_result_shape(r);
        CHECK(r.method == CountMethod::formula);
    }
    CHECK_THROWS_AS(count_identity_necklaces(c2, 0), std::invalid_argument);
}

TEST_CASE("count_identity_necklaces: audit terms decompose the sum", "[formulas]") {
    const FiniteGroup c2 = FiniteGroup::from_spec("C2");
    std::vector<FormulaTerm> terms;
    auto r = count_identity_necklaces(c2, 6, &terms);
    REQUIRE(terms.size() == 4); // divisors 1, 2, 3, 6
    BigInt sum = 0;
    for (const auto& t : terms) {
        CHECK(t.term == t.weight * t.torsion * t.power);
        sum += t.term;
    }
    CHECK(sum == r.numerator_check);
    CHECK(terms[0].d == 1);
    CHECK(terms[0].weight == 2);  // phi(6)
    CHECK(terms[0].torsion == 2); // [C2 / 6]
    CHECK(terms[0].power == 1);
}

TEST_CASE("count_identity_necklaces_abelian: pinned values and corollary", "[formulas]") {
    CHECK(count_identity_necklaces_abelian({2}, 6).value == 8);
    CHECK(count_identity_necklaces_abelian({2, 2}, 2).value == 4);
    CHECK(count_identity_necklaces_abelian({5}, 4).value == 33);
    CHECK_THROWS_AS(count_identity_necklaces_abelian({}, 3), std::invalid_argument);
    CHECK_THROWS_AS(count_identity_necklaces_abelian({2, 0}, 3), std::invalid_argument);

    // agrees with the general formula on the built product group
    const std::vector<std::vector<std::uint64_t>> orders = {
        {1}, {2}, {3}, {16}, {2, 2}, {2, 4}, {2, 2, 2}, {3, 5}, {4, 4}, {2, 3, 2}};
    for (const auto& ks : orders) {
        std::string spec;
        for (std::uint64_t k : ks) {
            if (!spec.empty()) spec += "x";
            spec += "C" + std::to_string(k);
        }
        const FiniteGroup g = FiniteGroup::from_spec(spec);
        for (std::uint64_t n = 1; n <= 8; ++n)
            REQUIRE(count_identity_necklaces_abelian(ks, n).value ==
                    count_identity_necklaces(g, n).value);
    }
}

TEST_CASE("count_aperiodic: pinned values", "[formulas]") {
    const FiniteGroup c2 = FiniteGroup::from_spec("C2");
    CHECK(count_aperiodic(c2, 6).value == 4); // (2 - 2 - 8 + 32) / 6
    CHECK(count_aperiodic(c2, 3).value == 1);
    CHECK(count_aperiodic(c2, 1).value == 1);
    const FiniteGroup s3 = FiniteGroup::from_spec("S3");
    CHECK(count_aperiodic(s3, 1).value == 1);
    check_result_shape(count_aperiodic(s3, 6));
}

TEST_CASE("count_smallest_period: pinned values and partition", "[formulas]") {
    const FiniteGroup c2 = FiniteGroup::from_spec("C2");
    CHECK(count_smallest_period(c2, 6, 2).value == 0);
    CHECK(count_smallest_period(c2, 6, 3).value == 2);
    CHECK_THROWS_AS(count_smallest_period(c2, 6, 4), std::invalid_argument);
    CHECK_THROWS_AS(count_smallest_period(c2, 6, 0), std::invalid_argument);

    const FiniteGroup s3 = FiniteGroup::from_spec("S3");
    for (const FiniteGroup* g : {&c2, &s3}) {
        for (std::uint64_t n = 1; n <= 8; ++n) {
            CHECK(count_smallest_period(*g, n, n).value == count_aperiodic(*g, n).value);
            BigInt total = 0;
            for (std::uint64_t k : divisors(n)) total += count_smallest_period(*g, n, k).value;
            REQUIRE(total == count_identity_necklaces(*g, n).value);
        }
    }
}

TEST_CASE("count_K_necklaces: specializations and pinned values", "[formulas]") {
    const FiniteGroup s3 = FiniteGroup::from_spec("S3");
    const auto identity = ConjClosedSubset::identity_subset(s3);
    for (std::uint64_t n = 1; n <= 6; ++n)
        CHECK(count_K_necklaces(s3, identity, n).value == count_identity_necklaces(s3, n).value);

    // whole-group products recover the classical alphabet count
    for (std::uint64_t q : {1ull, 2ull, 3ull, 5ull}) {
        const FiniteGroup cq = FiniteGroup::from_spec("C" + std::to_string(q));
        const auto all = ConjClosedSubset::whole_group(cq);
        for (std::uint64_t n = 1; n <= 10; ++n)
            REQUIRE(count_K_necklaces(cq, all, n).value == count_moreau(q, n).value);
    }

    // pairs multiplying to a 3-cycle: twelve tuples, two of them fixed by the
    // swap, so (12 + 2) / 2 = 7 orbits
    const auto three_cycles = ConjClosedSubset::from_spec(s3, "class:3");
    REQUIRE(three_cycles.members() == std::vector<element_t>{3, 4});
    CHECK(count_K_necklaces(s3, three_cycles, 2).value == 7);
}

TEST_CASE("count_K_necklaces partitions the alphabet count over classes", "[formulas]") {
    for (const auto& spec : {"S3", "D4", "C6", "C2xC2"}) {
        const FiniteGroup g = FiniteGroup::from_spec(spec);
        for (std::uint64_t n = 1; n <= 6; ++n) {
            BigInt total = 0;
            for (const auto& cls : g.conjugacy_classes()) {
                const auto k = ConjClosedSubset::make(g, cls);
                total += count_K_necklaces(g, k, n).value;
            }
            REQUIRE(total == count_moreau(g.order(), n).value);
        }
    }
}

TEST_CASE("count_K_aperiodic: pinned values", "[formulas]") {
    const FiniteGroup c2 = FiniteGroup::from_spec("C2");
    const auto all = ConjClosedSubset::whole_group(c2);
    CHECK(count_K_aperiodic(c2, all, 2).value == 1);
    const auto nonidentity = ConjClosedSubset::make(c2, {1});
    CHECK(count_K_aperiodic(c2, nonidentity, 3).value == 1);

    const FiniteGroup s3 = FiniteGroup::from_spec("S3");
    const auto identity = ConjClosedSubset::identity_subset(s3);
    for (std::uint64_t n = 1; n <= 6; ++n)
        CHECK(count_K_aperiodic(s3, identity, n).value == count_aperiodic(s3, n).value);
}

TEST_CASE("count_moreau: pinned values", "[formulas]") {
    CHECK(count_moreau(2, 4).value == 6);
    CHECK(count_moreau(1, 12).value == 1);
    for (std::uint64_t q = 1; q <= 9; ++q) CHECK(count_moreau(q, 1).value == q);
    CHECK_THROWS_AS(count_moreau(0, 3), std::invalid_argument);
    CHECK_THROWS_AS(count_moreau(3, 0), std::invalid_argument);
}

TEST_CASE("count_homogeneous delegates to the identity-product count", "[formulas]") {
    const FiniteGroup c2 = FiniteGroup::from_spec("C2");
    const std::vector<std::uint64_t> binary = {1, 2, 2, 4, 4, 8, 10, 20, 30};
    for (std::size_t n = 1; n <= binary.size(); ++n)
        CHECK(count_homogeneous(c2, n).value == binary[n - 1]);
    const FiniteGroup c3 = FiniteGroup::from_spec("C3");
    CHECK(count_homogeneous(c3, 3).value == 5);
    const FiniteGroup c2c2 = FiniteGroup::from_spec("C2xC2");
    CHECK(count_homogeneous(c2c2, 2).value == 4);
}

TEST_CASE("integrality: divisor sums divide out exactly on random groups", "[formulas]") {
    std::mt19937 rng(424242);
    std::uniform_int_distribution<std::uint64_t> n_dist(1, 30);
    for (int trial = 0; trial < 200; ++trial) {
        const std::string spec = random_spec(rng, 24);
        const FiniteGroup g = FiniteGroup::from_spec(spec);
        const std::uint64_t n = n_dist(rng);
        CAPTURE(spec, n);
        auto r = count_identity_necklaces(g, n);
        REQUIRE(r.numerator_check % n == 0);
        check_result_shape(r);
        auto ra = count_aperiodic(g, n);
        REQUIRE(ra.numerator_check % n == 0);
        check_result_shape(ra);
    }
}

TEST_CASE("coprime reduction: |G| times the count is the alphabet count", "[formulas]") {
    std::mt19937 rng(31337);
    std::uniform_int_distribution<std::uint64_t> n_dist(1, 30);
    int done = 0;
    while (done < 50) {
        const std::string spec = random_spec(rng, 24);
        const FiniteGroup g = FiniteGroup::from_spec(spec);
        const std::uint64_t n = n_dist(rng);
        if (gcd(g.order(), n) != 1) continue;
        CAPTURE(spec, n);
        REQUIRE(count_identity_necklaces(g, n).value * g.order() ==
                count_moreau(g.order(), n).value);
        ++done;
    }
}
