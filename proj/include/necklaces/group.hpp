#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "necklaces/errors.hpp"
#include "necklaces/number_theory.hpp"

namespace necklaces {

using element_t = std::uint32_t;

namespace detail {

// One factor of a direct product. Index 0 is always the factor's identity.
struct CyclicFactor {
    std::uint64_t k;
};

// Permutations of {1..m} in lexicographic one-line order, so the identity
// permutation gets index 0 and indices are reproducible across runs.
struct SymmetricFactor {
    unsigned m;
    std::vector<std::vector<std::uint8_t>> perms; // one-line images, 0-based
};

// Presentation r^m = s^2 = 1, s r s = r^-1. Indices 0..m-1 are r^i,
// indices m..2m-1 are s*r^(i-m).
struct DihedralFactor {
    unsigned m;
};

using Factor = std::variant<CyclicFactor, SymmetricFactor, DihedralFactor>;

inline std::uint64_t factor_order(const Factor& f) {
    if (const auto* c = std::get_if<CyclicFactor>(&f)) return c->k;
    if (const auto* s = std::get_if<SymmetricFactor>(&f)) return s->perms.size();
    return 2ull * std::get<DihedralFactor>(f).m;
}

inline element_t factor_mul(const Factor& f, element_t a, element_t b) {
    if (const auto* c = std::get_if<CyclicFactor>(&f)) {
        return static_cast<element_t>((std::uint64_t(a) + b) % c->k);
    }
    if (const auto* s = std::get_if<SymmetricFactor>(&f)) {
        // composition: (p*q)(x) = p(q(x))
        const auto& p = s->perms[a];
        const auto& q = s->perms[b];
        std::vector<std::uint8_t> r(s->m);
        for (unsigned i = 0; i < s->m; ++i) r[i] = p[q[i]];
        // lexicographic rank via Lehmer code
        std::uint64_t rank = 0;
        std::array<std::uint64_t, 7> fact{1, 1, 2, 6, 24, 120, 720};
        for (unsigned i = 0; i < s->m; ++i) {
            unsigned smaller = 0;
            for (unsigned j = i + 1; j < s->m; ++j)
                if (r[j] < r[i]) ++smaller;
            rank += smaller * fact[s->m - 1 - i];
        }
        return static_cast<element_t>(rank);
    }
    const unsigned m = std::get<DihedralFactor>(f).m;
    const bool ra = a >= m, rb = b >= m;
    const unsigned ia = ra ? a - m : a, ib = rb ? b - m : b;
    unsigned i;
    if (!ra && !rb) i = (ia + ib) % m;              // r^ia * r^ib
    else if (!ra && rb) i = (ib + m - ia % m) % m;  // r^ia * s r^ib = s r^(ib-ia)
    else if (ra && !rb) i = (ia + ib) % m;          // s r^ia * r^ib
    else i = (ib + m - ia % m) % m;                 // s r^ia * s r^ib = r^(ib-ia)
    const bool refl = ra != rb;
    return static_cast<element_t>(refl ? i + m : i);
}

inline element_t factor_inverse(const Factor& f, element_t a) {
    if (const auto* c = std::get_if<CyclicFactor>(&f)) {
        return static_cast<element_t>(a == 0 ? 0 : c->k - a);
    }
    if (const auto* s = std::get_if<SymmetricFactor>(&f)) {
        const auto& p = s->perms[a];
        std::vector<std::uint8_t> r(s->m);
        for (unsigned i = 0; i < s->m; ++i) r[p[i]] = static_cast<std::uint8_t>(i);
        std::uint64_t rank = 0;
        std::array<std::uint64_t, 7> fact{1, 1, 2, 6, 24, 120, 720};
        for (unsigned i = 0; i < s->m; ++i) {
            unsigned smaller = 0;
            for (unsigned j = i + 1; j < s->m; ++j)
                if (r[j] < r[i]) ++smaller;
            rank += smaller * fact[s->m - 1 - i];
        }
        return static_cast<element_t>(rank);
    }
    const unsigned m = std::get<DihedralFactor>(f).m;
    if (a < m) return static_cast<element_t>(a == 0 ? 0 : m - a);
    return a; // reflections are involutions
}

inline std::string factor_label(const Factor& f, element_t a) {
    if (std::holds_alternative<CyclicFactor>(f)) {
        if (a == 0) return "1";
        if (a == 1) return "g";
        return "g^" + std::to_string(a);
    }
    if (const auto* s = std::get_if<SymmetricFactor>(&f)) {
        // cycle notation on 1-based points
        const auto& p = s->perms[a];
        std::string out;
        std::vector<bool> done(s->m, false);
        for (unsigned i = 0; i < s->m; ++i) {
            if (done[i] || p[i] == i) continue;
            out += '(';
            unsigned j = i;
            bool first = true;
            while (!done[j]) {
                done[j] = true;
                if (!first) out += ' ';
                out += std::to_string(j + 1);
                first = false;
                j = p[j];
            }
            out += ')';
        }
        return out.empty() ? "e" : out;
    }
    const unsigned m = std::get<DihedralFactor>(f).m;
    const bool refl = a >= m;
    const unsigned i = refl ? a - m : a;
    std::string rot = i == 0 ? "" : (i == 1 ? "r" : "r^" + std::to_string(i));
    if (!refl) return rot.empty() ? "1" : rot;
    return rot.empty() ? "s" : "s*" + rot;
}

} // namespace detail

/// An explicit finite group: elements are dense indices 0..order-1 with the
/// identity at index 0. Built from the spec grammar
///     spec := term ("x" term)*        term := "C" int | "S" int | "D" int
/// Direct products multiply componentwise through a mixed-radix index split.
/// Groups of order <= 512 additionally carry a flat multiplication table so
/// the law is a single lookup in enumeration-heavy code.
class FiniteGroup {
public:
    static constexpr std::uint64_t kDefaultOrderBound = 10000;
    static constexpr std::uint64_t kMulTableLimit = 512;

    static FiniteGroup from_spec(const std::string& spec,
                                 std::uint64_t order_bound = kDefaultOrderBound) {
        FiniteGroup g;
        g.spec_ = spec;
        if (spec.empty()) throw parse_error("group spec: empty string");
        std::size_t pos = 0;
        while (true) {
            std::size_t next = spec.find('x', pos);
            std::string term = spec.substr(pos, next == std::string::npos ? next : next - pos);
            g.factors_.push_back(parse_term(term));
            if (next == std::string::npos) break;
            pos = next + 1;
            if (pos >= spec.size()) throw parse_error("group spec: trailing 'x' in \"" + spec + "\"");
        }

        std::uint64_t order = 1;
        for (const auto& f : g.factors_) {
            const std::uint64_t fo = detail::factor_order(f);
            if (order > order_bound / fo + 1 || order * fo > order_bound)
                throw budget_error("group spec \"" + spec + "\": order exceeds bound " +
                                   std::to_string(order_bound));
            order *= fo;
        }
        g.order_ = order;

        g.labels_.reserve(order);
        for (std::uint64_t a = 0; a < order; ++a) g.labels_.push_back(g.make_label(static_cast<element_t>(a)));

        g.inverse_table_.resize(order);
        for (std::uint64_t a = 0; a < order; ++a)
            g.inverse_table_[a] = g.inverse_direct(static_cast<element_t>(a));

        if (order <= kMulTableLimit) {
            g.mul_table_.resize(order * order);
            for (std::uint64_t a = 0; a < order; ++a)
                for (std::uint64_t b = 0; b < order; ++b)
                    g.mul_table_[a * order + b] =
                        g.mul_direct(static_cast<element_t>(a), static_cast<element_t>(b));
        }

        g.validate();
        return g;
    }

    std::uint64_t order() const { return order_; }
    const std::string& spec_string() const { return spec_; }
    element_t identity() const { return 0; }

    const std::string& label(element_t a) const {
        check_index(a);
        return labels_[a];
    }

    bool has_mul_table() const { return !mul_table_.empty(); }

    /// Group law. Table lookup when materialized, structural otherwise.
    element_t mul(element_t a, element_t b) const {
        check_index(a);
        check_index(b);
        if (!mul_table_.empty()) return mul_table_[std::uint64_t(a) * order_ + b];
        return mul_direct(a, b);
    }

    /// Group law computed structurally (componentwise), bypassing the table.
    element_t mul_direct(element_t a, element_t b) const {
        if (factors_.size() == 1) return detail::factor_mul(factors_[0], a, b);
        element_t result = 0;
        std::uint64_t radix = 1;
        for (const auto& f : factors_) {
            const std::uint64_t fo = detail::factor_order(f);
            const element_t fa = static_cast<element_t>((a / radix) % fo);
            const element_t fb = static_cast<element_t>((b / radix) % fo);
            result += static_cast<element_t>(detail::factor_mul(f, fa, fb) * radix);
            radix *= fo;
        }
        return result;
    }

    element_t inverse(element_t a) const {
        check_index(a);
        return inverse_table_[a];
    }

    /// a^m by repeated squaring; negative exponents go through the inverse.
    element_t power(element_t a, std::int64_t m) const {
        check_index(a);
        std::uint64_t e;
        if (m < 0) {
            a = inverse(a);
            e = static_cast<std::uint64_t>(-(m + 1)) + 1;
        } else {
            e = static_cast<std::uint64_t>(m);
        }
        element_t acc = 0;
        element_t base = a;
        while (e > 0) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

    /// Number of elements a with a^n = 1. Total in n (n = 0 gives the order).
    std::uint64_t torsion_count(std::int64_t n) const {
        std::uint64_t count = 0;
        for (std::uint64_t a = 0; a < order_; ++a)
            if (power(static_cast<element_t>(a), n) == 0) ++count;
        return count;
    }

    /// Partition into conjugacy classes. The identity's class comes first;
    /// classes are ordered by smallest member and sorted internally.
    std::vector<std::vector<element_t>> conjugacy_classes() const {
        std::vector<bool> seen(order_, false);
        std::vector<std::vector<element_t>> classes;
        for (std::uint64_t a = 0; a < order_; ++a) {
            if (seen[a]) continue;
            std::set<element_t> cls;
            for (std::uint64_t g = 0; g < order_; ++g) {
                const element_t c = mul(mul(static_cast<element_t>(g), static_cast<element_t>(a)),
                                        inverse(static_cast<element_t>(g)));
                cls.insert(c);
            }
            for (element_t c : cls) seen[c] = true;
            classes.emplace_back(cls.begin(), cls.end());
        }
        return classes;
    }

private:
    FiniteGroup() = default;

    static detail::Factor parse_term(const std::string& term) {
        if (term.size() < 2) throw parse_error("group spec: bad term \"" + term + "\"");
        const char kind = term[0];
        std::uint64_t value = 0;
        for (std::size_t i = 1; i < term.size(); ++i) {
            const char c = term[i];
            if (c < '0' || c > '9') throw parse_error("group spec: bad term \"" + term + "\"");
            value = value * 10 + static_cast<std::uint64_t>(c - '0');
            if (value > 1000000) throw parse_error("group spec: parameter too large in \"" + term + "\"");
        }
        switch (kind) {
        case 'C':
            if (value < 1) throw parse_error("group spec: C requires k >= 1");
            return detail::CyclicFactor{value};
        case 'S': {
            if (value < 1 || value > 6)
                throw parse_error("group spec: S supports 1 <= m <= 6, got \"" + term + "\"");
            detail::SymmetricFactor s;
            s.m = static_cast<unsigned>(value);
            std::vector<std::uint8_t> p(s.m);
            std::iota(p.begin(), p.end(), 0);
            do {
                s.perms.push_back(p);
            } while (std::next_permutation(p.begin(), p.end()));
            return s;
        }
        case 'D':
            if (value < 2) throw parse_error("group spec: D requires m >= 2");
            return detail::DihedralFactor{static_cast<unsigned>(value)};
        default:
            throw parse_error("group spec: unknown constructor '" + std::string(1, kind) + "'");
        }
    }

    std::string make_label(element_t a) const {
        if (factors_.size() == 1) return detail::factor_label(factors_[0], a);
        std::string out = "(";
        std::uint64_t radix = 1;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            const std::uint64_t fo = detail::factor_order(factors_[i]);
            const element_t fa = static_cast<element_t>((a / radix) % fo);
            if (i) out += ",";
            out += detail::factor_label(factors_[i], fa);
            radix *= fo;
        }
        out += ")";
        return out;
    }

    element_t inverse_direct(element_t a) const {
        if (factors_.size() == 1) return detail::factor_inverse(factors_[0], a);
        element_t result = 0;
        std::uint64_t radix = 1;
        for (const auto& f : factors_) {
            const std::uint64_t fo = detail::factor_order(f);
            const element_t fa = static_cast<element_t>((a / radix) % fo);
            result += static_cast<element_t>(detail::factor_inverse(f, fa) * radix);
            radix *= fo;
        }
        return result;
    }

    void check_index(element_t a) const {
        if (a >= order_) throw std::invalid_argument("element index " + std::to_string(a) +
                                                     " out of range for group of order " +
                                                     std::to_string(order_));
    }

    // Identity and inverses are checked exhaustively, associativity
    // exhaustively up to order 12 and on fixed pseudorandom triples above.
    void validate() const {
        for (std::uint64_t a = 0; a < order_; ++a) {
            const element_t ea = static_cast<element_t>(a);
            if (mul(0, ea) != ea || mul(ea, 0) != ea)
                throw internal_error("group validation: index 0 is not a two-sided identity");
            const element_t inv = inverse_table_[a];
            if (mul(ea, inv) != 0 || mul(inv, ea) != 0)
                throw internal_error("group validation: no two-sided inverse for element " +
                                     std::to_string(a));
        }
        if (order_ <= 12) {
            for (std::uint64_t a = 0; a < order_; ++a)
                for (std::uint64_t b = 0; b < order_; ++b)
                    for (std::uint64_t c = 0; c < order_; ++c)
                        check_assoc(static_cast<element_t>(a), static_cast<element_t>(b),
                                    static_cast<element_t>(c));
        } else {
            std::uint64_t state = 0x9e3779b97f4a7c15ull;
            for (int i = 0; i < 1000; ++i) {
                auto draw = [&] {
                    state ^= state << 13;
                    state ^= state >> 7;
                    state ^= state << 17;
                    return static_cast<element_t>(state % order_);
                };
                check_assoc(draw(), draw(), draw());
            }
        }
        std::set<std::string> unique(labels_.begin(), labels_.end());
        if (unique.size() != labels_.size())
            throw internal_error("group validation: labels are not unique");
    }

    void check_assoc(element_t a, element_t b, element_t c) const {
        if (mul(mul(a, b), c) != mul(a, mul(b, c)))
            throw internal_error("group validation: law not associative at (" + std::to_string(a) +
                                 "," + std::to_string(b) + "," + std::to_string(c) + ")");
    }

    std::string spec_;
    std::uint64_t order_ = 0;
    std::vector<detail::Factor> factors_;
    std::vector<std::string> labels_;
    std::vector<element_t> inverse_table_;
    std::vector<element_t> mul_table_; // order x order, row-major; empty above the limit
};

/// Conjugation-closure violation, carrying the witness pair: conjugating
/// `member` by `conjugator` lands outside the proposed set.
class closure_error : public std::invalid_argument {
public:
    closure_error(const std::string& msg, element_t conjugator, element_t member)
        : std::invalid_argument(msg), conjugator_(conjugator), member_(member) {}
    element_t conjugator() const { return conjugator_; }
    element_t member() const { return member_; }

private:
    element_t conjugator_;
    element_t member_;
};

/// A nonempty subset of a group closed under conjugation, i.e. a union of
/// conjugacy classes. Holds a reference to its group; keep the group alive.
class ConjClosedSubset {
public:
    static ConjClosedSubset make(const FiniteGroup& g, std::vector<element_t> members) {
        if (members.empty()) throw std::invalid_argument("subset: must be nonempty");
        std::sort(members.begin(), members.end());
        members.erase(std::unique(members.begin(), members.end()), members.end());
        std::vector<bool> mask(g.order(), false);
        for (element_t m : members) {
            if (m >= g.order())
                throw std::invalid_argument("subset: element index " + std::to_string(m) +
                                            " out of range");
            mask[m] = true;
        }
        for (element_t k : members) {
            for (std::uint64_t h = 0; h < g.order(); ++h) {
                const element_t hh = static_cast<element_t>(h);
                const element_t c = g.mul(g.mul(hh, k), g.inverse(hh));
                if (!mask[c])
                    throw closure_error("subset not closed under conjugation: " + g.label(hh) +
                                            " * " + g.label(k) + " * " + g.label(hh) +
                                            "^-1 = " + g.label(c) + " is outside the set",
                                        hh, k);
            }
        }
        return ConjClosedSubset(g, std::move(members), std::move(mask));
    }

    static ConjClosedSubset identity_subset(const FiniteGroup& g) { return make(g, {0}); }

    static ConjClosedSubset whole_group(const FiniteGroup& g) {
        std::vector<element_t> all(g.order());
        std::iota(all.begin(), all.end(), 0);
        return make(g, std::move(all));
    }

    /// CLI-facing grammar: "identity" | "all" | "class:<index>" | "elems:<i,j,...>".
    static ConjClosedSubset from_spec(const FiniteGroup& g, const std::string& spec) {
        if (spec == "identity") return identity_subset(g);
        if (spec == "all") return whole_group(g);
        if (spec.rfind("class:", 0) == 0) {
            const element_t rep = parse_index(spec.substr(6), g.order());
            for (auto& cls : g.conjugacy_classes())
                if (std::find(cls.begin(), cls.end(), rep) != cls.end())
                    return make(g, std::move(cls));
            throw parse_error("subset spec: no class for index " + std::to_string(rep));
        }
        if (spec.rfind("elems:", 0) == 0) {
            std::vector<element_t> members;
            std::string rest = spec.substr(6);
            std::size_t pos = 0;
            while (pos <= rest.size()) {
                std::size_t comma = rest.find(',', pos);
                std::string tok = rest.substr(pos, comma == std::string::npos ? comma : comma - pos);
                members.push_back(parse_index(tok, g.order()));
                if (comma == std::string::npos) break;
                pos = comma + 1;
            }
            return make(g, std::move(members));
        }
        throw parse_error("subset spec: expected identity|all|class:<i>|elems:<i,j,...>, got \"" +
                          spec + "\"");
    }

    const FiniteGroup& group() const { return *group_; }
    const std::vector<element_t>& members() const { return members_; } // sorted ascending
    std::uint64_t size() const { return members_.size(); }
    bool contains(element_t a) const { return a < mask_.size() && mask_[a]; }

    bool is_identity_only() const { return members_.size() == 1 && members_[0] == 0; }

private:
    ConjClosedSubset(const FiniteGroup& g, std::vector<element_t> members, std::vector<bool> mask)
        : group_(&g), members_(std::move(members)), mask_(std::move(mask)) {}

    static element_t parse_index(const std::string& tok, std::uint64_t order) {
        if (tok.empty()) throw parse_error("subset spec: empty element index");
        std::uint64_t value = 0;
        for (char c : tok) {
            if (c < '0' || c > '9') throw parse_error("subset spec: bad index \"" + tok + "\"");
            value = value * 10 + static_cast<std::uint64_t>(c - '0');
            if (value >= order && value > 0)
                throw parse_error("subset spec: index " + tok + " out of range for order " +
                                  std::to_string(order));
        }
        if (value >= order)
            throw parse_error("subset spec: index " + tok + " out of range for order " +
                              std::to_string(order));
        return static_cast<element_t>(value);
    }

    const FiniteGroup* group_;
    std::vector<element_t> members_;
    std::vector<bool> mask_;
};

/// Number of elements a with a^n in K.
inline std::uint64_t torsion_count_K(const FiniteGroup& g, const ConjClosedSubset& k,
                                     std::int64_t n) {
    if (&k.group() != &g)
        throw std::invalid_argument("torsion_count_K: subset belongs to a different group");
    std::uint64_t count = 0;
    for (std::uint64_t a = 0; a < g.order(); ++a)
        if (k.contains(g.power(static_cast<element_t>(a), n))) ++count;
    return count;
}

/// An n-tuple of element indices of one group.
struct GroupTuple {
    const FiniteGroup* group = nullptr;
    std::vector<element_t> entries;

    bool operator==(const GroupTuple& other) const { return entries == other.entries; }
    auto operator<=>(const GroupTuple& other) const { return entries <=> other.entries; }
};

/// Left-to-right product of the entries.
inline element_t tuple_product(const GroupTuple& t) {
    element_t acc = 0;
    for (element_t e : t.entries) acc = t.group->mul(acc, e);
    return acc;
}

} // namespace necklaces
