#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <stdexcept>
#include <utility>
#include <vector>

#include "necklaces/bigint.hpp"

namespace necklaces {

/// All positive divisors of n in strictly increasing order.
inline std::vector<std::uint64_t> divisors(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("divisors: n must be positive");
    std::vector<std::uint64_t> small, large;
    for (std::uint64_t d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d != n / d) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

/// Prime factorization as (prime, exponent) pairs, primes ascending.
/// Trial division; fine for the desk scale this library targets.
inline std::vector<std::pair<std::uint64_t, unsigned>> factorize(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("factorize: n must be positive");
    std::vector<std::pair<std::uint64_t, unsigned>> factors;
    for (std::uint64_t p = 2; p * p <= n; ++p) {
        if (n % p == 0) {
            unsigned e = 0;
            while (n % p == 0) {
                n /= p;
                ++e;
            }
            factors.emplace_back(p, e);
        }
    }
    if (n > 1) factors.emplace_back(n, 1);
    return factors;
}

/// Euler totient: the number of i in {1..n} coprime to n.
inline std::uint64_t euler_phi(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("euler_phi: n must be positive");
    std::uint64_t phi = n;
    for (const auto& [p, e] : factorize(n)) phi = phi / p * (p - 1);
    return phi;
}

/// Moebius function: (-1)^m on squarefree n with m prime factors, else 0.
inline int mobius(std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("mobius: n must be positive");
    int sign = 1;
    for (const auto& [p, e] : factorize(n)) {
        if (e > 1) return 0;
        sign = -sign;
    }
    return sign;
}

/// Greatest common divisor with gcd(a, 0) = a.
inline std::uint64_t gcd(std::uint64_t a, std::uint64_t b) {
    return std::gcd(a, b);
}

/// A rational-valued function on {1, ..., bound}, materialized densely so
/// evaluation order never matters. Values are exact rationals; the counting
/// formulas rely on exact integrality checks downstream.
class ArithmeticFunction {
public:
    ArithmeticFunction(std::uint64_t bound, const std::function<Rational(std::uint64_t)>& fn)
        : values_(bound) {
        for (std::uint64_t k = 1; k <= bound; ++k) values_[k - 1] = fn(k);
    }

    std::uint64_t bound() const { return values_.size(); }

    const Rational& operator()(std::uint64_t n) const {
        if (n == 0 || n > values_.size())
            throw std::invalid_argument("ArithmeticFunction: argument outside [1, bound]");
        return values_[n - 1];
    }

    /// The constant function 1.
    static ArithmeticFunction constant_one(std::uint64_t bound) {
        return {bound, [](std::uint64_t) { return Rational(1); }};
    }

    /// id(k) = k.
    static ArithmeticFunction identity(std::uint64_t bound) {
        return {bound, [](std::uint64_t k) { return Rational(k); }};
    }

    /// The convolution unit: delta(1) = 1, delta(k) = 0 otherwise.
    static ArithmeticFunction unit(std::uint64_t bound) {
        return {bound, [](std::uint64_t k) { return Rational(k == 1 ? 1 : 0); }};
    }

    static ArithmeticFunction totient(std::uint64_t bound) {
        return {bound, [](std::uint64_t k) { return Rational(euler_phi(k)); }};
    }

    static ArithmeticFunction moebius(std::uint64_t bound) {
        return {bound, [](std::uint64_t k) { return Rational(mobius(k)); }};
    }

private:
    std::vector<Rational> values_;
};

/// Dirichlet convolution evaluated at n: sum over d | n of f(d) g(n/d).
inline Rational dirichlet_convolve(const ArithmeticFunction& f, const ArithmeticFunction& g,
                                   std::uint64_t n) {
    if (n == 0) throw std::invalid_argument("dirichlet_convolve: n must be positive");
    Rational acc = 0;
    for (std::uint64_t d : divisors(n)) acc += f(d) * g(n / d);
    return acc;
}

} // namespace necklaces
