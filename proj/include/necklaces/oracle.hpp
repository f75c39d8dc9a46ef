#pragma once

#include <algorithm>
#include <cstdint>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "necklaces/bigint.hpp"
#include "necklaces/errors.hpp"
#include "necklaces/formulas.hpp"
#include "necklaces/group.hpp"

namespace necklaces {

/// Hard cap on brute-force enumeration sizes. Exceeding it raises
/// budget_error; there is no silent truncation anywhere in the oracle.
constexpr std::uint64_t kDefaultTupleBudget = 10'000'000;

/// Entries rotated i steps to the right (i may be negative; taken mod n).
inline GroupTuple rotate(const GroupTuple& a, std::int64_t i) {
    const std::int64_t n = static_cast<std::int64_t>(a.entries.size());
    if (n == 0) return a;
    std::int64_t s = i % n;
    if (s < 0) s += n;
    GroupTuple out{a.group, std::vector<element_t>(a.entries.size())};
    for (std::int64_t j = 0; j < n; ++j) out.entries[(j + s) % n] = a.entries[j];
    return out;
}

/// Least k >= 1 with rotate(a, k) == a. Always divides the length.
inline std::uint64_t smallest_period(const GroupTuple& a) {
    const std::uint64_t n = a.entries.size();
    for (std::uint64_t k = 1; k < n; ++k) {
        bool match = true;
        for (std::uint64_t j = 0; j < n && match; ++j)
            match = a.entries[(j + k) % n] == a.entries[j];
        if (match) return k;
    }
    return n == 0 ? 1 : n;
}

namespace detail {

// Big-endian mixed-radix encoding: the first entry is the most significant
// digit, so numeric order on codes equals lexicographic order on tuples.
inline std::uint64_t encode_tuple(const std::vector<element_t>& entries, std::uint64_t radix) {
    std::uint64_t code = 0;
    for (element_t e : entries) code = code * radix + e;
    return code;
}

inline void decode_tuple(std::uint64_t code, std::uint64_t radix, std::vector<element_t>& out) {
    for (std::size_t i = out.size(); i-- > 0;) {
        out[i] = static_cast<element_t>(code % radix);
        code /= radix;
    }
}

// Set of tuple encodings: dense bit vector when the code space is small,
// hash set otherwise.
class EncodingSet {
public:
    EncodingSet(const BigInt& space, std::uint64_t expected) {
        if (space > BigInt(1) << 62)
            throw budget_error("tuple code space " + space.str() + " exceeds 2^62");
        if (space <= (std::uint64_t(1) << 28)) {
            dense_.assign(static_cast<std::size_t>(space), false);
        } else {
            sparse_.reserve(expected * 2);
        }
    }

    void insert(std::uint64_t code) {
        if (!dense_.empty()) dense_[code] = true;
        else sparse_.insert(code);
    }

    bool contains(std::uint64_t code) const {
        if (!dense_.empty()) return dense_[code];
        return sparse_.count(code) != 0;
    }

    void erase(std::uint64_t code) {
        if (!dense_.empty()) dense_[code] = false;
        else sparse_.erase(code);
    }

private:
    std::vector<bool> dense_;
    std::unordered_set<std::uint64_t> sparse_;
};

} // namespace detail

/// Streams all n-tuples over G whose entry product lies in K, in
/// lexicographic order of the first n-1 entries (those entries range freely;
/// the last one is derived as prefix^-1 * k for each k in K).
class KTupleStream {
public:
    KTupleStream(const FiniteGroup& g, ConjClosedSubset k, std::uint64_t n,
                 std::uint64_t budget = kDefaultTupleBudget)
        : group_(&g), subset_(std::move(k)), n_(n) {
        if (n == 0) throw std::invalid_argument("tuple stream: n must be positive");
        if (&subset_.group() != &g)
            throw std::invalid_argument("tuple stream: subset belongs to a different group");
        count_ = BigInt(subset_.size()) * big_pow(BigInt(g.order()), n - 1);
        if (count_ > budget)
            throw budget_error("tuple stream: " + count_.str() +
                               " tuples exceed the enumeration budget of " + std::to_string(budget));
        reset();
    }

    static KTupleStream identity(const FiniteGroup& g, std::uint64_t n,
                                 std::uint64_t budget = kDefaultTupleBudget) {
        return KTupleStream(g, ConjClosedSubset::identity_subset(g), n, budget);
    }

    const FiniteGroup& group() const { return *group_; }
    std::uint64_t length() const { return n_; }
    const BigInt& count() const { return count_; }

    void reset() {
        prefix_.assign(n_ - 1, 0);
        prefix_products_.assign(n_, 0); // prefix_products_[i] = product of first i entries
        k_index_ = 0;
        done_ = false;
    }

    bool next(GroupTuple& out) {
        if (done_) return false;
        out.group = group_;
        out.entries.resize(n_);
        std::copy(prefix_.begin(), prefix_.end(), out.entries.begin());
        const element_t prefix_prod = prefix_products_[n_ - 1];
        out.entries[n_ - 1] =
            group_->mul(group_->inverse(prefix_prod), subset_.members()[k_index_]);
        advance();
        return true;
    }

private:
    void advance() {
        if (++k_index_ < subset_.members().size()) return;
        k_index_ = 0;
        for (std::size_t j = prefix_.size(); j-- > 0;) {
            if (++prefix_[j] < group_->order()) {
                for (std::size_t i = j; i < prefix_.size(); ++i)
                    prefix_products_[i + 1] = group_->mul(prefix_products_[i], prefix_[i]);
                return;
            }
            prefix_[j] = 0;
        }
        done_ = true;
    }

    const FiniteGroup* group_;
    ConjClosedSubset subset_;
    std::uint64_t n_;
    BigInt count_;
    std::vector<element_t> prefix_;
    std::vector<element_t> prefix_products_;
    std::size_t k_index_ = 0;
    bool done_ = false;
};

/// Identity-product n-tuples: the K = {1} case of KTupleStream. Exactly
/// |G|^(n-1) tuples, lexicographic in the first n-1 entries.
inline KTupleStream enumerate_identity_tuples(const FiniteGroup& g, std::uint64_t n,
                                              std::uint64_t budget = kDefaultTupleBudget) {
    return KTupleStream::identity(g, n, budget);
}

inline KTupleStream enumerate_K_tuples(const FiniteGroup& g, const ConjClosedSubset& k,
                                       std::uint64_t n, std::uint64_t budget = kDefaultTupleBudget) {
    return KTupleStream(g, k, n, budget);
}

/// A fixed list of tuples presented through the stream interface. Used by
/// tests to feed orbits_rotation doctored input.
class VectorTupleStream {
public:
    VectorTupleStream(const FiniteGroup& g, std::uint64_t n, std::vector<GroupTuple> tuples)
        : group_(&g), n_(n), tuples_(std::move(tuples)) {}

    const FiniteGroup& group() const { return *group_; }
    std::uint64_t length() const { return n_; }
    BigInt count() const { return BigInt(tuples_.size()); }
    void reset() { pos_ = 0; }
    bool next(GroupTuple& out) {
        if (pos_ >= tuples_.size()) return false;
        out = tuples_[pos_++];
        return true;
    }

private:
    const FiniteGroup* group_;
    std::uint64_t n_;
    std::vector<GroupTuple> tuples_;
    std::size_t pos_ = 0;
};

/// One rotation orbit: its lexicographically least member, and its size,
/// which always equals the smallest period of any member.
struct TupleOrbit {
    GroupTuple representative;
    std::uint64_t size = 0;
    std::uint64_t smallest_period = 0;
};

/// Partitions a rotation-closed tuple stream into orbits. Faults if some
/// rotation of an input tuple is missing from the stream (that would be an
/// enumerator defect, not valid input). Output is sorted by representative.
template <class Stream>
std::vector<TupleOrbit> orbits_rotation(Stream& stream) {
    const FiniteGroup& g = stream.group();
    const std::uint64_t n = stream.length();
    const std::uint64_t radix = g.order();
    const BigInt space = big_pow(BigInt(radix), n);

    std::uint64_t expected = 0;
    {
        BigInt c = stream.count();
        expected = c.template convert_to<std::uint64_t>();
    }
    detail::EncodingSet present(space, expected);

    stream.reset();
    GroupTuple t;
    while (stream.next(t)) present.insert(detail::encode_tuple(t.entries, radix));

    std::vector<TupleOrbit> orbits;
    stream.reset();
    std::vector<element_t> rot(n);
    while (stream.next(t)) {
        const std::uint64_t start = detail::encode_tuple(t.entries, radix);
        if (!present.contains(start)) continue; // orbit already emitted
        // walk rotations until we come back around
        std::uint64_t period = 0;
        std::uint64_t min_code = start;
        rot = t.entries;
        std::vector<std::uint64_t> member_codes;
        for (std::uint64_t s = 0; s < n; ++s) {
            const std::uint64_t code = detail::encode_tuple(rot, radix);
            if (s > 0 && code == start) break;
            member_codes.push_back(code);
            min_code = std::min(min_code, code);
            ++period;
            // rotate right by one step
            const element_t last = rot[n - 1];
            for (std::size_t j = n - 1; j > 0; --j) rot[j] = rot[j - 1];
            rot[0] = last;
        }
        for (std::uint64_t code : member_codes) {
            if (!present.contains(code))
                throw internal_error("orbits_rotation: stream is not closed under rotation "
                                     "(missing tuple code " + std::to_string(code) + ")");
            present.erase(code);
        }
        TupleOrbit orbit;
        orbit.representative.group = &g;
        orbit.representative.entries.resize(n);
        detail::decode_tuple(min_code, radix, orbit.representative.entries);
        orbit.size = period;
        orbit.smallest_period = period;
        orbits.push_back(std::move(orbit));
    }
    std::sort(orbits.begin(), orbits.end(),
              [](const TupleOrbit& a, const TupleOrbit& b) {
                  return a.representative.entries < b.representative.entries;
              });
    return orbits;
}

/// Orbit census keyed by smallest period.
inline std::unordered_map<std::uint64_t, std::uint64_t>
period_census(const std::vector<TupleOrbit>& orbits) {
    std::unordered_map<std::uint64_t, std::uint64_t> census;
    for (const auto& o : orbits) ++census[o.smallest_period];
    return census;
}

/// Orbit count through the fixed-point average: for each rotation g^k, the
/// tuples it fixes are length-gcd(k,n) blocks repeated, so we enumerate all
/// |G|^gcd(k,n) blocks and test (block product)^(n/gcd) against K.
inline CountResult burnside_count_rotation(const FiniteGroup& g, const ConjClosedSubset& k_subset,
                                           std::uint64_t n,
                                           std::uint64_t budget = kDefaultTupleBudget) {
    if (n == 0) throw std::invalid_argument("burnside_count_rotation: n must be positive");
    if (&k_subset.group() != &g)
        throw std::invalid_argument("burnside_count_rotation: subset belongs to a different group");
    BigInt fixed_sum = 0;
    for (std::uint64_t k = 1; k <= n; ++k) {
        const std::uint64_t block = gcd(k, n);
        const BigInt block_count = big_pow(BigInt(g.order()), block);
        if (block_count > budget)
            throw budget_error("burnside_count_rotation: |G|^" + std::to_string(block) + " = " +
                               block_count.str() + " exceeds the enumeration budget of " +
                               std::to_string(budget));
        const std::uint64_t reps = n / block;
        std::vector<element_t> entries(block, 0);
        std::uint64_t fixed = 0;
        bool more = true;
        while (more) {
            element_t prod = 0;
            for (element_t e : entries) prod = g.mul(prod, e);
            if (k_subset.contains(g.power(prod, static_cast<std::int64_t>(reps)))) ++fixed;
            more = false;
            for (std::size_t j = entries.size(); j-- > 0;) {
                if (++entries[j] < g.order()) {
                    more = true;
                    break;
                }
                entries[j] = 0;
            }
        }
        fixed_sum += fixed;
    }
    if (fixed_sum % n != 0)
        throw internal_error("burnside_count_rotation(" + g.spec_string() + ", n=" +
                             std::to_string(n) + "): fixed-point sum " + fixed_sum.str() +
                             " not divisible by n");
    CountResult r;
    r.numerator_check = fixed_sum;
    r.denominator = n;
    r.value = fixed_sum / n;
    r.method = CountMethod::oracle;
    return r;
}

/// |A_k| for k | n: the number of K-product tuples fixed by rotation by k.
/// Computed by the closed form [G / K / (n/k)] * |G|^(k-1) and, when within
/// budget, also by block enumeration; a mismatch is a hard fault.
inline CountResult fixed_tuple_count(const FiniteGroup& g, const ConjClosedSubset& k_subset,
                                     std::uint64_t n, std::uint64_t k,
                                     std::uint64_t budget = kDefaultTupleBudget) {
    if (n == 0 || k == 0 || n % k != 0)
        throw std::invalid_argument("fixed_tuple_count: k must divide n");
    if (&k_subset.group() != &g)
        throw std::invalid_argument("fixed_tuple_count: subset belongs to a different group");
    const BigInt formula =
        BigInt(torsion_count_K(g, k_subset, static_cast<std::int64_t>(n / k))) *
        big_pow(BigInt(g.order()), k - 1);

    const BigInt block_count = big_pow(BigInt(g.order()), k);
    bool enumerated = false;
    if (block_count <= budget) {
        enumerated = true;
        const std::uint64_t reps = n / k;
        std::vector<element_t> entries(k, 0);
        BigInt count = 0;
        bool more = true;
        while (more) {
            element_t prod = 0;
            for (element_t e : entries) prod = g.mul(prod, e);
            if (k_subset.contains(g.power(prod, static_cast<std::int64_t>(reps)))) ++count;
            more = false;
            for (std::size_t j = entries.size(); j-- > 0;) {
                if (++entries[j] < g.order()) {
                    more = true;
                    break;
                }
                entries[j] = 0;
            }
        }
        if (count != formula)
            throw internal_error("fixed_tuple_count(" + g.spec_string() + ", n=" +
                                 std::to_string(n) + ", k=" + std::to_string(k) +
                                 "): enumeration " + count.str() + " != formula " + formula.str());
    }
    CountResult r;
    r.value = formula;
    r.numerator_check = formula;
    r.denominator = 1;
    r.method = enumerated ? CountMethod::oracle : CountMethod::formula;
    return r;
}

/// One orbit of G^n under combined rotation and left translation.
struct HomogeneousOrbit {
    GroupTuple representative;
    std::uint64_t size = 0;
};

namespace detail {

// Minimal encoding over the combined action orbit of `entries`.
inline std::uint64_t homogeneous_canonical_code(const FiniteGroup& g,
                                                const std::vector<element_t>& entries) {
    const std::uint64_t n = entries.size();
    const std::uint64_t radix = g.order();
    std::vector<element_t> rot = entries;
    std::vector<element_t> image(n);
    std::uint64_t best = ~std::uint64_t(0);
    for (std::uint64_t i = 0; i < n; ++i) {
        for (std::uint64_t h = 0; h < radix; ++h) {
            for (std::uint64_t j = 0; j < n; ++j)
                image[j] = g.mul(static_cast<element_t>(h), rot[j]);
            best = std::min(best, encode_tuple(image, radix));
        }
        const element_t last = rot[n - 1];
        for (std::size_t j = n - 1; j > 0; --j) rot[j] = rot[j - 1];
        rot[0] = last;
    }
    return best;
}

inline std::uint64_t rotation_canonical_code(const FiniteGroup& g,
                                             const std::vector<element_t>& entries) {
    const std::uint64_t n = entries.size();
    const std::uint64_t radix = g.order();
    std::vector<element_t> rot = entries;
    std::uint64_t best = ~std::uint64_t(0);
    for (std::uint64_t i = 0; i < n; ++i) {
        best = std::min(best, encode_tuple(rot, radix));
        const element_t last = rot[n - 1];
        for (std::size_t j = n - 1; j > 0; --j) rot[j] = rot[j - 1];
        rot[0] = last;
    }
    return best;
}

} // namespace detail

/// Partitions all of G^n into orbits of the combined rotation/translation
/// action. Requires |G|^n within budget.
inline std::vector<HomogeneousOrbit> orbits_homogeneous(const FiniteGroup& g, std::uint64_t n,
                                                        std::uint64_t budget = kDefaultTupleBudget) {
    if (n == 0) throw std::invalid_argument("orbits_homogeneous: n must be positive");
    const std::uint64_t radix = g.order();
    const BigInt space_big = big_pow(BigInt(radix), n);
    if (space_big > budget)
        throw budget_error("orbits_homogeneous: |G|^n = " + space_big.str() +
                           " exceeds the enumeration budget of " + std::to_string(budget));
    const std::uint64_t space = space_big.convert_to<std::uint64_t>();

    std::vector<bool> visited(space, false);
    std::vector<HomogeneousOrbit> orbits;
    std::vector<element_t> entries(n), rot(n), image(n);
    for (std::uint64_t code = 0; code < space; ++code) {
        if (visited[code]) continue;
        detail::decode_tuple(code, radix, entries);
        std::vector<std::uint64_t> members;
        rot = entries;
        for (std::uint64_t i = 0; i < n; ++i) {
            for (std::uint64_t h = 0; h < radix; ++h) {
                for (std::uint64_t j = 0; j < n; ++j)
                    image[j] = g.mul(static_cast<element_t>(h), rot[j]);
                members.push_back(detail::encode_tuple(image, radix));
            }
            const element_t last = rot[n - 1];
            for (std::size_t j = n - 1; j > 0; --j) rot[j] = rot[j - 1];
            rot[0] = last;
        }
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        for (std::uint64_t m : members) visited[m] = true;
        HomogeneousOrbit orbit;
        orbit.representative.group = &g;
        orbit.representative.entries = entries; // scan order makes this the orbit minimum
        orbit.size = members.size();
        orbits.push_back(std::move(orbit));
    }
    return orbits;
}

/// The difference map into identity-product tuples:
/// out_j = a_(j-1)^-1 * a_j with indices mod n. Telescoping makes the
/// output product collapse to the identity for every input.
inline GroupTuple delta_map(const GroupTuple& a) {
    const FiniteGroup& g = *a.group;
    const std::uint64_t n = a.entries.size();
    GroupTuple out{a.group, std::vector<element_t>(n)};
    for (std::uint64_t j = 0; j < n; ++j) {
        const element_t prev = a.entries[(j + n - 1) % n];
        out.entries[j] = g.mul(g.inverse(prev), a.entries[j]);
    }
    return out;
}

/// The prefix-product map out_j = a_0 a_1 ... a_j. Defined only on
/// identity-product input (so the implicit index-0 prefix is the identity).
inline GroupTuple gamma_map(const GroupTuple& a) {
    const FiniteGroup& g = *a.group;
    if (tuple_product(a) != g.identity())
        throw std::invalid_argument("gamma_map: input tuple does not have identity product");
    GroupTuple out{a.group, std::vector<element_t>(a.entries.size())};
    element_t acc = 0;
    for (std::size_t j = 0; j < a.entries.size(); ++j) {
        acc = g.mul(acc, a.entries[j]);
        out.entries[j] = acc;
    }
    return out;
}

/// Exhaustive check that the difference and prefix-product maps descend to
/// mutually inverse bijections between the two orbit spaces.
struct BijectionReport {
    std::uint64_t homogeneous_orbit_count = 0;
    std::uint64_t rotation_orbit_count = 0;
    std::uint64_t tuples_checked = 0;
    std::vector<std::string> counterexamples;

    bool passed() const {
        return counterexamples.empty() && homogeneous_orbit_count == rotation_orbit_count;
    }
};

inline BijectionReport verify_bijection(const FiniteGroup& g, std::uint64_t n,
                                        std::uint64_t budget = kDefaultTupleBudget) {
    if (n == 0) throw std::invalid_argument("verify_bijection: n must be positive");
    const std::uint64_t radix = g.order();
    const BigInt space_big = big_pow(BigInt(radix), n);
    if (space_big > budget)
        throw budget_error("verify_bijection: |G|^n = " + space_big.str() +
                           " exceeds the enumeration budget of " + std::to_string(budget));
    const std::uint64_t space = space_big.convert_to<std::uint64_t>();

    BijectionReport report;
    auto describe = [&](const std::vector<element_t>& e) {
        std::string s = "(";
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(e[i]);
        }
        return s + ")";
    };

    // Difference map, orbit by orbit: everything in one combined-action
    // orbit must land in one rotation orbit.
    std::unordered_map<std::uint64_t, std::uint64_t> delta_on_orbits;
    GroupTuple a{&g, std::vector<element_t>(n)};
    for (std::uint64_t code = 0; code < space; ++code) {
        detail::decode_tuple(code, radix, a.entries);
        const GroupTuple d = delta_map(a);
        if (tuple_product(d) != g.identity()) {
            report.counterexamples.push_back("delta image of " + describe(a.entries) +
                                             " lacks identity product");
            continue;
        }
        const std::uint64_t hom = detail::homogeneous_canonical_code(g, a.entries);
        const std::uint64_t rot = detail::rotation_canonical_code(g, d.entries);
        auto [it, fresh] = delta_on_orbits.emplace(hom, rot);
        if (!fresh && it->second != rot)
            report.counterexamples.push_back("delta splits the combined-action orbit of " +
                                             describe(a.entries));
        ++report.tuples_checked;
    }
    report.homogeneous_orbit_count = delta_on_orbits.size();

    // Prefix-product map on identity-product tuples, plus the pointwise
    // round trip delta(gamma(b)) == b.
    std::unordered_map<std::uint64_t, std::uint64_t> gamma_on_orbits;
    KTupleStream stream = KTupleStream::identity(g, n, budget);
    GroupTuple b;
    while (stream.next(b)) {
        const GroupTuple p = gamma_map(b);
        const std::uint64_t rot = detail::rotation_canonical_code(g, b.entries);
        const std::uint64_t hom = detail::homogeneous_canonical_code(g, p.entries);
        auto [it, fresh] = gamma_on_orbits.emplace(rot, hom);
        if (!fresh && it->second != hom)
            report.counterexamples.push_back("gamma splits the rotation orbit of " +
                                             describe(b.entries));
        if (delta_map(p).entries != b.entries)
            report.counterexamples.push_back("delta(gamma(.)) != id at " + describe(b.entries));
    }
    report.rotation_orbit_count = gamma_on_orbits.size();

    // The induced orbit maps must invert each other.
    for (const auto& [hom, rot] : delta_on_orbits) {
        auto it = gamma_on_orbits.find(rot);
        if (it == gamma_on_orbits.end() || it->second != hom)
            report.counterexamples.push_back("orbit map round trip fails at combined-action orbit " +
                                             std::to_string(hom));
    }
    for (const auto& [rot, hom] : gamma_on_orbits) {
        auto it = delta_on_orbits.find(hom);
        if (it == delta_on_orbits.end() || it->second != rot)
            report.counterexamples.push_back("orbit map round trip fails at rotation orbit " +
                                             std::to_string(rot));
    }
    return report;
}

} // namespace necklaces
