#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "necklaces/number_theory.hpp"

using namespace necklaces;

namespace {

// Independent oracles: straight loops, no shared code with the library path.

std::vector<std::uint64_t> divisors_by_scan(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 1; d <= n; ++d)
        if (n % d == 0) out.push_back(d);
    return out;
}

std::uint64_t phi_by_count(std::uint64_t n) {
    std::uint64_t count = 0;
    for (std::uint64_t i = 1; i <= n; ++i)
        if (std::gcd(i, n) == 1) ++count;
    return count;
}

int mobius_by_definition(std::uint64_t n) {
    unsigned prime_count = 0;
    for (std::uint64_t p = 2; p <= n; ++p) {
        if (n % p != 0) continue;
        if (n % (p * p) == 0) return 0;
        ++prime_count;
        while (n % p == 0) n /= p;
    }
    return prime_count % 2 == 0 ? 1 : -1;
}

ArithmeticFunction random_function(std::uint64_t bound, std::uint32_t seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> dist(-50, 50);
    std::vector<Rational> vals(bound);
    for (auto& v : vals) v = dist(rng);
    return {bound, [&](std::uint64_t k) { return vals[k - 1]; }};
}

} // namespace

TEST_CASE("divisors: examples and oracle agreement", "[number_theory]") {
    CHECK(divisors(1) == std::vector<std::uint64_t>{1});
    CHECK(divisors(12) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 12});
    CHECK(divisors(7) == std::vector<std::uint64_t>{1, 7});
    CHECK_THROWS_AS(divisors(0), std::invalid_argument);

    for (std::uint64_t n = 1; n <= 500; ++n) {
        auto got = divisors(n);
        REQUIRE(got == divisors_by_scan(n));
        CHECK(std::is_sorted(got.begin(), got.end()));
        CHECK(got.front() == 1);
        CHECK(got.back() == n);
    }
}

TEST_CASE("euler_phi: examples and direct-count oracle", "[number_theory]") {
    CHECK(euler_phi(1) == 1);
    CHECK(euler_phi(6) == 2);
    CHECK(euler_phi(12) == 4);
    CHECK_THROWS_AS(euler_phi(0), std::invalid_argument);

    for (std::uint64_t n = 1; n <= 1000; ++n) CHECK(euler_phi(n) == phi_by_count(n));
}

TEST_CASE("mobius: examples and definition oracle", "[number_theory]") {
    CHECK(mobius(1) == 1);
    CHECK(mobius(4) == 0);
    CHECK(mobius(30) == -1);
    CHECK_THROWS_AS(mobius(0), std::invalid_argument);

    for (std::uint64_t n = 1; n <= 1000; ++n) CHECK(mobius(n) == mobius_by_definition(n));
}

TEST_CASE("gcd basics", "[number_theory]") {
    CHECK(gcd(6, 4) == 2);
    CHECK(gcd(123456, 1) == 1);
    CHECK(gcd(7, 7) == 7);
    CHECK(gcd(42, 0) == 42);
    CHECK(gcd(0, 42) == 42);
}

TEST_CASE("gcd divisibility equivalence: a | bc iff a/gcd(a,b) | c", "[number_theory]") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<std::uint64_t> dist(0, 300);
    for (int trial = 0; trial < 2000; ++trial) {
        std::uint64_t a = dist(rng), b = dist(rng), c = dist(rng);
        if (a == 0 && b == 0) continue;
        if (a == 0) continue; // divisibility by 0 is out of the lemma's domain
        const bool lhs = (b * c) % a == 0;
        const std::uint64_t reduced = a / gcd(a, b);
        const bool rhs = reduced != 0 && c % reduced == 0;
        CHECK(lhs == rhs);
    }
}

TEST_CASE("Gauss identity: totient sums over divisors give n", "[number_theory]") {
    for (std::uint64_t n = 1; n <= 10000; ++n) {
        std::uint64_t sum = 0;
        for (std::uint64_t d : divisors(n)) sum += euler_phi(d);
        REQUIRE(sum == n);
    }
}

TEST_CASE("dirichlet_convolve: known values", "[number_theory]") {
    const std::uint64_t bound = 100;
    auto phi = ArithmeticFunction::totient(bound);
    auto one = ArithmeticFunction::constant_one(bound);
    auto mu = ArithmeticFunction::moebius(bound);
    auto delta = ArithmeticFunction::unit(bound);

    CHECK(dirichlet_convolve(phi, one, 6) == Rational(6));
    for (std::uint64_t n = 1; n <= bound; ++n)
        CHECK(dirichlet_convolve(phi, one, n) == Rational(n)); // phi * 1 = id

    auto f = random_function(bound, 7);
    for (std::uint64_t n = 1; n <= bound; ++n)
        CHECK(dirichlet_convolve(f, delta, n) == f(n));

    // mu(1)+mu(2)+mu(3)+mu(4)+mu(6)+mu(12) = 1-1-1+0+1+0 = 0
    CHECK(dirichlet_convolve(mu, one, 12) == Rational(0));

    CHECK_THROWS_AS(dirichlet_convolve(phi, one, 0), std::invalid_argument);
}

TEST_CASE("dirichlet_convolve is commutative and associative on samples", "[number_theory]") {
    const std::uint64_t bound = 100;
    auto f = random_function(bound, 11);
    auto g = random_function(bound, 13);
    auto h = random_function(bound, 17);

    for (std::uint64_t n : {1ull, 12ull, 36ull, 97ull, 100ull}) {
        CHECK(dirichlet_convolve(f, g, n) == dirichlet_convolve(g, f, n));
    }

    // (f*g)*h == f*(g*h), with the inner convolutions materialized
    auto fg = ArithmeticFunction(bound, [&](std::uint64_t k) { return dirichlet_convolve(f, g, k); });
    auto gh = ArithmeticFunction(bound, [&](std::uint64_t k) { return dirichlet_convolve(g, h, k); });
    for (std::uint64_t n : {1ull, 12ull, 36ull, 60ull, 100ull})
        CHECK(dirichlet_convolve(fg, h, n) == dirichlet_convolve(f, gh, n));
}

TEST_CASE("Moebius inversion recovers f from its divisor sums", "[number_theory]") {
    const std::uint64_t bound = 200;
    for (std::uint32_t seed = 1; seed <= 100; ++seed) {
        auto f = random_function(bound, seed);
        auto g = ArithmeticFunction(bound, [&](std::uint64_t k) {
            Rational acc = 0;
            for (std::uint64_t d : divisors(k)) acc += f(d);
            return acc;
        });
        for (std::uint64_t k = 1; k <= bound; ++k) {
            Rational recovered = 0;
            for (std::uint64_t d : divisors(k)) recovered += Rational(mobius(d)) * g(k / d);
            REQUIRE(recovered == f(k));
        }
    }
}

TEST_CASE("divisor-sum exchange: sum (k/d) f(d) equals sum phi(k/d) g(d)", "[number_theory]") {
    const std::uint64_t bound = 200;
    auto f = random_function(bound, 29);
    auto g = ArithmeticFunction(bound, [&](std::uint64_t k) {
        Rational acc = 0;
        for (std::uint64_t d : divisors(k)) acc += f(d);
        return acc;
    });
    for (std::uint64_t k = 1; k <= bound; ++k) {
        Rational lhs = 0, rhs = 0;
        for (std::uint64_t d : divisors(k)) {
            lhs += Rational(k / d) * f(d);
            rhs += Rational(euler_phi(k / d)) * g(d);
        }
        REQUIRE(lhs == rhs);
    }
}

TEST_CASE("ArithmeticFunction rejects out-of-range arguments", "[number_theory]") {
    auto one = ArithmeticFunction::constant_one(10);
    CHECK_THROWS_AS(one(0), std::invalid_argument);
    CHECK_THROWS_AS(one(11), std::invalid_argument);
    CHECK(one.bound() == 10);
}
