#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "necklaces/bigint.hpp"
#include "necklaces/errors.hpp"
#include "necklaces/group.hpp"
#include "necklaces/number_theory.hpp"

namespace necklaces {

enum class CountMethod { formula, oracle };

inline const char* to_string(CountMethod m) {
    return m == CountMethod::formula ? "formula" : "oracle";
}

/// An exact nonnegative count. For formula results, `numerator_check` keeps
/// the divisor sum before the leading 1/n (or 1/k) division so integrality
/// can be audited: value * denominator == numerator_check always holds.
struct CountResult {
    BigInt value;
    BigInt numerator_check;
    BigInt denominator = 1;
    CountMethod method = CountMethod::formula;
};

inline CountResult oracle_count(BigInt value) {
    return {value, value, 1, CountMethod::oracle};
}

/// One summand of a divisor-sum formula, kept for term-by-term audit output:
/// term = weight * torsion * power, summed over d and divided by the
/// denominator at the end.
struct FormulaTerm {
    std::uint64_t d = 0;
    BigInt weight;  // phi(.) or mu(.)
    BigInt torsion; // [G / (n/d)] or [G / K / (n/d)]
    BigInt power;   // |G|^(d-1)
    BigInt term;
};

namespace detail {

inline CountResult finish_division(BigInt numerator, std::uint64_t denom, const std::string& what) {
    if (numerator < 0 || numerator % denom != 0)
        throw internal_error(what + ": divisor sum " + numerator.str() +
                             " is not a nonnegative multiple of " + std::to_string(denom));
    CountResult r;
    r.numerator_check = numerator;
    r.denominator = denom;
    r.value = numerator / denom;
    r.method = CountMethod::formula;
    return r;
}

// Shared evaluator for the rotation-count formulas. Sums over divisors d of
// `k`, weighting by phi(k/d) or mu(k/d), with torsion argument n/d and the
// group-size power |G|^(d-1); divides by k at the end. The identity and
// aperiodic counts are the k = n cases.
inline CountResult divisor_sum_count(const FiniteGroup& g, const ConjClosedSubset* k_subset,
                                     std::uint64_t n, std::uint64_t k, bool aperiodic,
                                     const std::string& what,
                                     std::vector<FormulaTerm>* terms = nullptr) {
    if (n == 0) throw std::invalid_argument(what + ": n must be positive");
    if (k == 0 || n % k != 0) throw std::invalid_argument(what + ": k must divide n");
    if (k_subset && &k_subset->group() != &g)
        throw std::invalid_argument(what + ": subset belongs to a different group");

    const BigInt order = g.order();
    BigInt sum = 0;
    for (std::uint64_t d : divisors(k)) {
        FormulaTerm t;
        t.d = d;
        t.weight = aperiodic ? BigInt(mobius(k / d)) : BigInt(euler_phi(k / d));
        const std::int64_t torsion_arg = static_cast<std::int64_t>(n / d);
        t.torsion = k_subset ? BigInt(torsion_count_K(g, *k_subset, torsion_arg))
                             : BigInt(g.torsion_count(torsion_arg));
        t.power = big_pow(order, d - 1);
        t.term = t.weight * t.torsion * t.power;
        sum += t.term;
        if (terms) terms->push_back(std::move(t));
    }
    return finish_division(std::move(sum), k,
                           what + "(" + g.spec_string() + ", n=" + std::to_string(n) +
                               (k == n ? "" : ", k=" + std::to_string(k)) + ")");
}

} // namespace detail

/// Number of rotation orbits of n-tuples over G whose entries multiply to
/// the identity: (1/n) sum over d|n of phi(n/d) [G/(n/d)] |G|^(d-1).
inline CountResult count_identity_necklaces(const FiniteGroup& g, std::uint64_t n,
                                            std::vector<FormulaTerm>* terms = nullptr) {
    return detail::divisor_sum_count(g, nullptr, n, n, false, "count_identity_necklaces", terms);
}

/// Same count for a direct product of cyclic groups of the given orders,
/// evaluated without building the group:
/// (1/n) sum over d|n of phi(n/d) prod_i gcd(k_i, n/d) k_i^(d-1).
inline CountResult count_identity_necklaces_abelian(const std::vector<std::uint64_t>& cyclic_orders,
                                                    std::uint64_t n) {
    if (cyclic_orders.empty())
        throw std::invalid_argument("count_identity_necklaces_abelian: empty order list");
    if (n == 0) throw std::invalid_argument("count_identity_necklaces_abelian: n must be positive");
    for (std::uint64_t k : cyclic_orders)
        if (k == 0) throw std::invalid_argument("count_identity_necklaces_abelian: orders must be positive");

    BigInt sum = 0;
    for (std::uint64_t d : divisors(n)) {
        BigInt term = euler_phi(n / d);
        for (std::uint64_t ki : cyclic_orders)
            term *= BigInt(gcd(ki, n / d)) * big_pow(BigInt(ki), d - 1);
        sum += term;
    }
    return detail::finish_division(std::move(sum), n, "count_identity_necklaces_abelian(n=" +
                                                          std::to_string(n) + ")");
}

/// Number of aperiodic identity-product n-necklaces (orbits of full size n):
/// same sum with the Moebius function in place of the totient.
inline CountResult count_aperiodic(const FiniteGroup& g, std::uint64_t n,
                                   std::vector<FormulaTerm>* terms = nullptr) {
    return detail::divisor_sum_count(g, nullptr, n, n, true, "count_aperiodic", terms);
}

/// Number of identity-product n-necklaces with smallest period exactly k,
/// for k | n: (1/k) sum over d|k of mu(k/d) [G/(n/d)] |G|^(d-1).
inline CountResult count_smallest_period(const FiniteGroup& g, std::uint64_t n, std::uint64_t k,
                                         std::vector<FormulaTerm>* terms = nullptr) {
    return detail::divisor_sum_count(g, nullptr, n, k, true, "count_smallest_period", terms);
}

/// Number of rotation orbits of n-tuples whose product lies in K.
/// K must be closed under conjugation. The torsion factor inside the sum is
/// the d-dependent [G / K / (n/d)].
inline CountResult count_K_necklaces(const FiniteGroup& g, const ConjClosedSubset& k,
                                     std::uint64_t n, std::vector<FormulaTerm>* terms = nullptr) {
    return detail::divisor_sum_count(g, &k, n, n, false, "count_K_necklaces", terms);
}

/// Aperiodic variant of the K-product count.
inline CountResult count_K_aperiodic(const FiniteGroup& g, const ConjClosedSubset& k,
                                     std::uint64_t n, std::vector<FormulaTerm>* terms = nullptr) {
    return detail::divisor_sum_count(g, &k, n, n, true, "count_K_aperiodic", terms);
}

/// Classical necklace count over a plain q-letter alphabet:
/// (1/n) sum over d|n of phi(d) q^(n/d).
inline CountResult count_moreau(std::uint64_t q, std::uint64_t n) {
    if (q == 0) throw std::invalid_argument("count_moreau: q must be positive");
    if (n == 0) throw std::invalid_argument("count_moreau: n must be positive");
    BigInt sum = 0;
    for (std::uint64_t d : divisors(n)) sum += BigInt(euler_phi(d)) * big_pow(BigInt(q), n / d);
    return detail::finish_division(std::move(sum), n,
                                   "count_moreau(q=" + std::to_string(q) + ", n=" + std::to_string(n) + ")");
}

/// Number of orbits of G^n under simultaneous rotation and left translation
/// by G. Equal to the identity-product necklace count; the orbit oracle
/// checks that equality independently.
inline CountResult count_homogeneous(const FiniteGroup& g, std::uint64_t n,
                                     std::vector<FormulaTerm>* terms = nullptr) {
    return detail::divisor_sum_count(g, nullptr, n, n, false, "count_homogeneous", terms);
}

} // namespace necklaces
