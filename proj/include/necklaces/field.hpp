#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "necklaces/bigint.hpp"
#include "necklaces/errors.hpp"
#include "necklaces/formulas.hpp"

namespace necklaces {

using fcode_t = std::uint32_t;  // element code in a base field
using xcode_t = std::uint64_t;  // element code in an extension field

inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

/// The field of integers mod p.
class PrimeField {
public:
    explicit PrimeField(std::uint32_t p) : p_(p) {
        if (!is_prime(p)) throw std::invalid_argument("PrimeField: " + std::to_string(p) + " is not prime");
    }

    std::uint32_t p() const { return p_; }
    std::uint32_t q() const { return p_; }

    fcode_t add(fcode_t a, fcode_t b) const { return (a + b) % p_; }
    fcode_t sub(fcode_t a, fcode_t b) const { return (a + p_ - b) % p_; }
    fcode_t neg(fcode_t a) const { return a == 0 ? 0 : p_ - a; }
    fcode_t mul(fcode_t a, fcode_t b) const {
        return static_cast<fcode_t>((std::uint64_t(a) * b) % p_);
    }
    fcode_t inv(fcode_t a) const {
        if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
        // Fermat
        fcode_t acc = 1, base = a;
        std::uint32_t e = p_ - 2;
        while (e) {
            if (e & 1) acc = mul(acc, base);
            base = mul(base, base);
            e >>= 1;
        }
        return acc;
    }

private:
    std::uint32_t p_;
};

/// Polynomial over some field, coefficients by ascending degree with no
/// trailing zeros; an empty vector is the zero polynomial.
struct Poly {
    std::vector<fcode_t> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    bool is_zero() const { return coeffs.empty(); }
    bool operator==(const Poly& other) const { return coeffs == other.coeffs; }
};

inline void poly_trim(Poly& a) {
    while (!a.coeffs.empty() && a.coeffs.back() == 0) a.coeffs.pop_back();
}

template <class Field>
bool poly_is_monic(const Field&, const Poly& a) {
    return !a.coeffs.empty() && a.coeffs.back() == 1;
}

template <class Field>
Poly poly_add(const Field& f, const Poly& a, const Poly& b) {
    Poly out;
    out.coeffs.resize(std::max(a.coeffs.size(), b.coeffs.size()), 0);
    for (std::size_t i = 0; i < out.coeffs.size(); ++i) {
        const fcode_t ca = i < a.coeffs.size() ? a.coeffs[i] : 0;
        const fcode_t cb = i < b.coeffs.size() ? b.coeffs[i] : 0;
        out.coeffs[i] = f.add(ca, cb);
    }
    poly_trim(out);
    return out;
}

template <class Field>
Poly poly_mul(const Field& f, const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    Poly out;
    out.coeffs.assign(a.coeffs.size() + b.coeffs.size() - 1, 0);
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j)
            out.coeffs[i + j] = f.add(out.coeffs[i + j], f.mul(a.coeffs[i], b.coeffs[j]));
    poly_trim(out);
    return out;
}

/// Quotient and remainder; the divisor must be nonzero.
template <class Field>
std::pair<Poly, Poly> poly_divmod(const Field& f, Poly a, const Poly& b) {
    if (b.is_zero()) throw std::domain_error("poly_divmod: division by zero polynomial");
    Poly quot;
    const int db = b.degree();
    const fcode_t lead_inv = f.inv(b.coeffs.back());
    while (!a.is_zero() && a.degree() >= db) {
        const int shift = a.degree() - db;
        const fcode_t factor = f.mul(a.coeffs.back(), lead_inv);
        if (static_cast<int>(quot.coeffs.size()) < shift + 1) quot.coeffs.resize(shift + 1, 0);
        quot.coeffs[shift] = f.add(quot.coeffs[shift], factor);
        for (int i = 0; i <= db; ++i)
            a.coeffs[i + shift] = f.sub(a.coeffs[i + shift], f.mul(factor, b.coeffs[i]));
        poly_trim(a);
    }
    poly_trim(quot);
    return {quot, a};
}

template <class Field>
Poly poly_mod(const Field& f, Poly a, const Poly& b) {
    return poly_divmod(f, std::move(a), b).second;
}

/// Irreducibility over the coefficient field by trial division: no monic
/// divisor of degree 1 through deg/2 leaves remainder zero.
template <class Field>
bool poly_irreducible(const Field& f, const Poly& a) {
    const int deg = a.degree();
    if (deg < 1) return false;
    if (deg == 1) return true;
    const std::uint64_t q = f.q();
    for (int d = 1; 2 * d <= deg; ++d) {
        std::uint64_t count = 1;
        for (int i = 0; i < d; ++i) count *= q;
        for (std::uint64_t code = 0; code < count; ++code) {
            Poly divisor;
            divisor.coeffs.resize(d + 1, 0);
            std::uint64_t c = code;
            for (int i = 0; i < d; ++i) {
                divisor.coeffs[i] = static_cast<fcode_t>(c % q);
                c /= q;
            }
            divisor.coeffs[d] = 1;
            if (poly_mod(f, a, divisor).is_zero()) return false;
        }
    }
    return true;
}

/// The monic irreducible of the given degree that is minimal in the order
/// comparing coefficients from the highest degree down (equivalently, by
/// ascending little-endian code of the non-leading coefficients).
template <class Field>
Poly canonical_irreducible(const Field& f, std::uint32_t degree) {
    if (degree == 0) throw std::invalid_argument("canonical_irreducible: degree must be positive");
    const std::uint64_t q = f.q();
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < degree; ++i) count *= q;
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly candidate;
        candidate.coeffs.resize(degree + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < degree; ++i) {
            candidate.coeffs[i] = static_cast<fcode_t>(c % q);
            c /= q;
        }
        candidate.coeffs[degree] = 1;
        if (poly_irreducible(f, candidate)) return candidate;
    }
    throw internal_error("canonical_irreducible: no irreducible of degree " +
                         std::to_string(degree) + " found");
}

/// F_q with q = p^e. Elements are coefficient vectors over F_p encoded as
/// little-endian base-p integers; index 0 is zero and index 1 is one.
/// Arithmetic goes through materialized q-by-q tables, validated against the
/// field axioms at construction (exhaustively for q <= 64).
class BaseField {
public:
    static constexpr std::uint32_t kDefaultOrderBound = 512;

    explicit BaseField(std::uint32_t p, std::uint32_t e = 1,
                       std::uint32_t order_bound = kDefaultOrderBound)
        : prime_(p), e_(e) {
        if (e == 0) throw std::invalid_argument("BaseField: e must be positive");
        std::uint64_t q = 1;
        for (std::uint32_t i = 0; i < e; ++i) {
            q *= p;
            if (q > order_bound)
                throw budget_error("BaseField: p^e = " + std::to_string(p) + "^" +
                                   std::to_string(e) + " exceeds bound " +
                                   std::to_string(order_bound));
        }
        q_ = static_cast<std::uint32_t>(q);
        modulus_ = canonical_irreducible(prime_, e);
        build_tables();
        validate();
    }

    std::uint32_t p() const { return prime_.p(); }
    std::uint32_t e() const { return e_; }
    std::uint32_t q() const { return q_; }
    const PrimeField& prime_field() const { return prime_; }
    const Poly& modulus() const { return modulus_; } // over F_p; equals x when e = 1

    fcode_t add(fcode_t a, fcode_t b) const { return add_[idx(a, b)]; }
    fcode_t sub(fcode_t a, fcode_t b) const { return add_[idx(a, neg_[check(b)])]; }
    fcode_t neg(fcode_t a) const { return neg_[check(a)]; }
    fcode_t mul(fcode_t a, fcode_t b) const { return mul_[idx(a, b)]; }

    fcode_t inv(fcode_t a) const {
        check(a);
        if (a == 0) throw std::domain_error("BaseField: inverse of zero");
        return inv_[a];
    }

    fcode_t pow(fcode_t a, std::uint64_t m) const {
        fcode_t acc = 1, base = check(a);
        while (m) {
            if (m & 1) acc = mul(acc, base);
            base = mul(base, base);
            m >>= 1;
        }
        return acc;
    }

    /// F_p coefficient vector of an element code, little-endian, length e.
    std::vector<fcode_t> to_vector(fcode_t code) const {
        check(code);
        std::vector<fcode_t> v(e_);
        for (std::uint32_t i = 0; i < e_; ++i) {
            v[i] = code % p();
            code /= p();
        }
        return v;
    }

private:
    std::size_t idx(fcode_t a, fcode_t b) const { return std::size_t(check(a)) * q_ + check(b); }

    fcode_t check(fcode_t a) const {
        if (a >= q_)
            throw std::invalid_argument("BaseField: element code " + std::to_string(a) +
                                        " out of range for q = " + std::to_string(q_));
        return a;
    }

    void build_tables() {
        add_.resize(std::size_t(q_) * q_);
        mul_.resize(std::size_t(q_) * q_);
        neg_.resize(q_);
        inv_.resize(q_);
        for (fcode_t a = 0; a < q_; ++a) {
            const Poly pa = decode(a);
            for (fcode_t b = 0; b < q_; ++b) {
                const Poly pb = decode(b);
                add_[std::size_t(a) * q_ + b] = encode(poly_add(prime_, pa, pb));
                mul_[std::size_t(a) * q_ + b] =
                    encode(poly_mod(prime_, poly_mul(prime_, pa, pb), modulus_));
            }
        }
        for (fcode_t a = 0; a < q_; ++a)
            for (fcode_t b = 0; b < q_; ++b)
                if (add_[std::size_t(a) * q_ + b] == 0) neg_[a] = b;
        for (fcode_t a = 1; a < q_; ++a) {
            inv_[a] = 0;
            for (fcode_t b = 1; b < q_; ++b)
                if (mul_[std::size_t(a) * q_ + b] == 1) inv_[a] = b;
            if (inv_[a] == 0)
                throw internal_error("BaseField: element " + std::to_string(a) +
                                     " has no multiplicative inverse (modulus not irreducible?)");
        }
    }

    Poly decode(fcode_t code) const {
        Poly out;
        out.coeffs.resize(e_, 0);
        for (std::uint32_t i = 0; i < e_; ++i) {
            out.coeffs[i] = code % p();
            code /= p();
        }
        poly_trim(out);
        return out;
    }

    fcode_t encode(const Poly& a) const {
        fcode_t code = 0;
        for (std::size_t i = a.coeffs.size(); i-- > 0;) code = code * p() + a.coeffs[i];
        return code;
    }

    void validate() const {
        const bool exhaustive = q_ <= 64;
        const std::uint32_t stride = exhaustive ? 1 : q_ / 17 + 1;
        for (fcode_t a = 0; a < q_; a += 1) {
            if (add(a, 0) != a || mul(a, 1) != a || mul(a, 0) != 0)
                throw internal_error("BaseField: identity axioms fail");
            if (add(a, neg(a)) != 0) throw internal_error("BaseField: additive inverse fails");
            if (a != 0 && mul(a, inv(a)) != 1)
                throw internal_error("BaseField: multiplicative inverse fails");
        }
        for (fcode_t a = 0; a < q_; a += stride)
            for (fcode_t b = 0; b < q_; b += stride) {
                if (add(a, b) != add(b, a) || mul(a, b) != mul(b, a))
                    throw internal_error("BaseField: commutativity fails");
                for (fcode_t c = 0; c < q_; c += stride) {
                    if (add(add(a, b), c) != add(a, add(b, c)) ||
                        mul(mul(a, b), c) != mul(a, mul(b, c)) ||
                        mul(a, add(b, c)) != add(mul(a, b), mul(a, c)))
                        throw internal_error("BaseField: ring axioms fail");
                }
            }
    }

    PrimeField prime_;
    std::uint32_t e_;
    std::uint32_t q_ = 0;
    Poly modulus_;
    std::vector<fcode_t> add_, mul_, neg_, inv_;
};

class ExtensionField;

/// An element of an extension field: its coefficient vector over the base
/// field in the power basis of the defining modulus.
struct FieldElement {
    const ExtensionField* field = nullptr;
    std::vector<fcode_t> coeffs;

    bool operator==(const FieldElement& other) const { return coeffs == other.coeffs; }
    bool is_zero() const {
        return std::all_of(coeffs.begin(), coeffs.end(), [](fcode_t c) { return c == 0; });
    }
};

/// K = F_(q^n) over a base field F_q, with the canonical degree-n modulus.
/// Carries the Frobenius x -> x^q as a precomputed linear map. The normal
/// element theta starts unset; find_normal_basis fills it in.
class ExtensionField {
public:
    static constexpr std::uint64_t kDefaultSizeBound = 1ull << 20;

    ExtensionField(BaseField base, std::uint32_t n,
                   std::uint64_t size_bound = kDefaultSizeBound)
        : base_(std::move(base)), n_(n) {
        if (n == 0) throw std::invalid_argument("ExtensionField: n must be positive");
        size_ = 1;
        for (std::uint32_t i = 0; i < n; ++i) {
            size_ *= base_.q();
            if (size_ > size_bound)
                throw budget_error("ExtensionField: q^n = " + std::to_string(base_.q()) + "^" +
                                   std::to_string(n) + " exceeds bound " +
                                   std::to_string(size_bound));
        }
        modulus_ = canonical_irreducible(base_, n);
        build_frobenius_matrix();
    }

    const BaseField& base() const { return base_; }
    std::uint32_t degree() const { return n_; }
    std::uint64_t size() const { return size_; }
    const Poly& modulus() const { return modulus_; } // over the base field, monic

    FieldElement zero() const { return {this, std::vector<fcode_t>(n_, 0)}; }
    FieldElement one() const { return from_base(1); }

    FieldElement from_base(fcode_t c) const {
        FieldElement z = zero();
        z.coeffs[0] = c;
        return z;
    }

    FieldElement element(xcode_t code) const {
        if (code >= size_)
            throw std::invalid_argument("ExtensionField: code " + std::to_string(code) +
                                        " out of range");
        FieldElement z = zero();
        for (std::uint32_t i = 0; i < n_; ++i) {
            z.coeffs[i] = static_cast<fcode_t>(code % base_.q());
            code /= base_.q();
        }
        return z;
    }

    xcode_t code(const FieldElement& z) const {
        xcode_t c = 0;
        for (std::size_t i = z.coeffs.size(); i-- > 0;) c = c * base_.q() + z.coeffs[i];
        return c;
    }

    FieldElement add(const FieldElement& a, const FieldElement& b) const {
        FieldElement out = zero();
        for (std::uint32_t i = 0; i < n_; ++i) out.coeffs[i] = base_.add(a.coeffs[i], b.coeffs[i]);
        return out;
    }

    FieldElement sub(const FieldElement& a, const FieldElement& b) const {
        FieldElement out = zero();
        for (std::uint32_t i = 0; i < n_; ++i) out.coeffs[i] = base_.sub(a.coeffs[i], b.coeffs[i]);
        return out;
    }

    FieldElement neg(const FieldElement& a) const {
        FieldElement out = zero();
        for (std::uint32_t i = 0; i < n_; ++i) out.coeffs[i] = base_.neg(a.coeffs[i]);
        return out;
    }

    FieldElement scale(fcode_t c, const FieldElement& a) const {
        FieldElement out = zero();
        for (std::uint32_t i = 0; i < n_; ++i) out.coeffs[i] = base_.mul(c, a.coeffs[i]);
        return out;
    }

    FieldElement mul(const FieldElement& a, const FieldElement& b) const {
        Poly pa{a.coeffs}, pb{b.coeffs};
        poly_trim(pa);
        poly_trim(pb);
        Poly prod = poly_mod(base_, poly_mul(base_, pa, pb), modulus_);
        FieldElement out = zero();
        std::copy(prod.coeffs.begin(), prod.coeffs.end(), out.coeffs.begin());
        return out;
    }

    FieldElement pow(const FieldElement& a, std::uint64_t m) const {
        FieldElement acc = one();
        FieldElement base = a;
        while (m) {
            if (m & 1) acc = mul(acc, base);
            base = mul(base, base);
            m >>= 1;
        }
        return acc;
    }

    /// The Frobenius x -> x^q as one application of its linear map.
    FieldElement frobenius_once(const FieldElement& z) const {
        FieldElement out = zero();
        for (std::uint32_t r = 0; r < n_; ++r) {
            fcode_t acc = 0;
            for (std::uint32_t i = 0; i < n_; ++i)
                acc = base_.add(acc, base_.mul(frob_matrix_[r][i], z.coeffs[i]));
            out.coeffs[r] = acc;
        }
        return out;
    }

    bool has_normal_basis() const { return theta_.has_value(); }

    const FieldElement& theta() const {
        if (!theta_) throw std::logic_error("ExtensionField: normal basis not initialized");
        return *theta_;
    }

    /// theta, theta^q, ..., theta^(q^(n-1)).
    const std::vector<FieldElement>& theta_orbit() const {
        if (!theta_) throw std::logic_error("ExtensionField: normal basis not initialized");
        return theta_orbit_;
    }

    const std::vector<std::vector<fcode_t>>& theta_inverse_matrix() const {
        if (!theta_) throw std::logic_error("ExtensionField: normal basis not initialized");
        return theta_inverse_;
    }

    void set_normal_basis(FieldElement theta, std::vector<FieldElement> orbit,
                          std::vector<std::vector<fcode_t>> inverse) {
        theta_ = std::move(theta);
        theta_orbit_ = std::move(orbit);
        theta_inverse_ = std::move(inverse);
    }

private:
    void build_frobenius_matrix() {
        // column i holds the coefficients of (x^i)^q
        frob_matrix_.assign(n_, std::vector<fcode_t>(n_, 0));
        for (std::uint32_t i = 0; i < n_; ++i) {
            FieldElement xi = zero();
            if (i < n_) xi.coeffs[i] = 1;
            const FieldElement img = pow(xi, base_.q());
            for (std::uint32_t r = 0; r < n_; ++r) frob_matrix_[r][i] = img.coeffs[r];
        }
    }

    BaseField base_;
    std::uint32_t n_;
    std::uint64_t size_ = 0;
    Poly modulus_;
    std::vector<std::vector<fcode_t>> frob_matrix_;
    std::optional<FieldElement> theta_;
    std::vector<FieldElement> theta_orbit_;
    std::vector<std::vector<fcode_t>> theta_inverse_;
};

/// z^(q^k); the zeroth power is z itself and the n-th is z again.
inline FieldElement frobenius(const ExtensionField& k_field, const FieldElement& z,
                              std::uint64_t k) {
    FieldElement out = z;
    for (std::uint64_t i = 0; i < k % k_field.degree(); ++i) out = k_field.frobenius_once(out);
    return out;
}

/// Trace of K over its base field: z + z^q + ... + z^(q^(n-1)). The sum
/// always lands in the base field; any coefficient outside it is a fault.
inline fcode_t trace(const ExtensionField& k_field, const FieldElement& z) {
    FieldElement sum = z;
    FieldElement cur = z;
    for (std::uint32_t i = 1; i < k_field.degree(); ++i) {
        cur = k_field.frobenius_once(cur);
        sum = k_field.add(sum, cur);
    }
    for (std::uint32_t i = 1; i < k_field.degree(); ++i)
        if (sum.coeffs[i] != 0)
            throw internal_error("trace: result has a nonzero coefficient outside the base field");
    return sum.coeffs[0];
}

namespace detail {

// Rank of a matrix over the base field, destroying it in the process.
inline std::uint32_t row_reduce(const BaseField& f, std::vector<std::vector<fcode_t>>& m) {
    const std::size_t rows = m.size();
    const std::size_t cols = rows == 0 ? 0 : m[0].size();
    std::uint32_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[rank], m[pivot]);
        const fcode_t scale = f.inv(m[rank][col]);
        for (std::size_t j = 0; j < cols; ++j) m[rank][j] = f.mul(m[rank][j], scale);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][col] == 0) continue;
            const fcode_t factor = m[r][col];
            for (std::size_t j = 0; j < cols; ++j)
                m[r][j] = f.sub(m[r][j], f.mul(factor, m[rank][j]));
        }
        ++rank;
    }
    return rank;
}

// Inverse of a square matrix over the base field, if it has one.
inline std::optional<std::vector<std::vector<fcode_t>>>
invert_matrix(const BaseField& f, const std::vector<std::vector<fcode_t>>& m) {
    const std::size_t n = m.size();
    std::vector<std::vector<fcode_t>> aug(n, std::vector<fcode_t>(2 * n, 0));
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) aug[r][c] = m[r][c];
        aug[r][n + r] = 1;
    }
    if (row_reduce(f, aug) != n) return std::nullopt;
    std::vector<std::vector<fcode_t>> out(n, std::vector<fcode_t>(n, 0));
    for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) out[r][c] = aug[r][n + c];
    return out;
}

} // namespace detail

/// Finds (and caches on the field) the first element theta in code order
/// whose Frobenius orbit is a basis of K over the base field. Such an
/// element always exists; running out of candidates is a fault. The trace
/// of theta is necessarily nonzero, which we assert.
inline FieldElement find_normal_basis(ExtensionField& k_field) {
    if (k_field.has_normal_basis()) return k_field.theta();
    const std::uint32_t n = k_field.degree();
    for (xcode_t code = 1; code < k_field.size(); ++code) {
        const FieldElement candidate = k_field.element(code);
        std::vector<FieldElement> orbit(1, candidate);
        for (std::uint32_t i = 1; i < n; ++i)
            orbit.push_back(k_field.frobenius_once(orbit.back()));
        std::vector<std::vector<fcode_t>> rows;
        for (const auto& z : orbit) rows.push_back(z.coeffs);
        auto scratch = rows;
        if (detail::row_reduce(k_field.base(), scratch) != n) continue;
        if (trace(k_field, candidate) == 0)
            throw internal_error("find_normal_basis: normal element with zero trace");
        // columns of V are the orbit vectors; the inverse solves Phi
        std::vector<std::vector<fcode_t>> v(n, std::vector<fcode_t>(n, 0));
        for (std::uint32_t c = 0; c < n; ++c)
            for (std::uint32_t r = 0; r < n; ++r) v[r][c] = orbit[c].coeffs[r];
        auto inverse = detail::invert_matrix(k_field.base(), v);
        if (!inverse) throw internal_error("find_normal_basis: basis matrix not invertible");
        k_field.set_normal_basis(candidate, std::move(orbit), std::move(*inverse));
        return k_field.theta();
    }
    throw internal_error("find_normal_basis: exhausted candidates without finding a basis");
}

/// The normal-basis expansion map: (a_0, ..., a_(n-1)) -> sum a_i theta^(q^i).
inline FieldElement phi_map(const ExtensionField& k_field, const std::vector<fcode_t>& tuple) {
    if (tuple.size() != k_field.degree())
        throw std::invalid_argument("phi_map: tuple length must equal the extension degree");
    const auto& orbit = k_field.theta_orbit(); // throws if theta unset
    FieldElement acc = k_field.zero();
    for (std::size_t i = 0; i < tuple.size(); ++i)
        acc = k_field.add(acc, k_field.scale(tuple[i], orbit[i]));
    return acc;
}

/// Inverse of phi_map, by the precomputed inverse of the basis matrix.
inline std::vector<fcode_t> phi_inverse(const ExtensionField& k_field, const FieldElement& z) {
    const auto& inv = k_field.theta_inverse_matrix();
    const std::uint32_t n = k_field.degree();
    std::vector<fcode_t> tuple(n, 0);
    for (std::uint32_t i = 0; i < n; ++i) {
        fcode_t acc = 0;
        for (std::uint32_t r = 0; r < n; ++r)
            acc = k_field.base().add(acc, k_field.base().mul(inv[i][r], z.coeffs[r]));
        tuple[i] = acc;
    }
    return tuple;
}

/// A Frobenius orbit in K: the elements sharing one minimal polynomial.
struct FrobeniusClass {
    std::vector<xcode_t> codes; // sorted ascending
    fcode_t trace = 0;          // common trace of the class
    std::uint64_t size() const { return codes.size(); }
};

/// Partition of K into Frobenius orbits, ordered by smallest member code.
inline std::vector<FrobeniusClass> conjugacy_classes_of_field(const ExtensionField& k_field) {
    std::vector<bool> seen(k_field.size(), false);
    std::vector<FrobeniusClass> classes;
    for (xcode_t code = 0; code < k_field.size(); ++code) {
        if (seen[code]) continue;
        FrobeniusClass cls;
        FieldElement z = k_field.element(code);
        const xcode_t start = code;
        xcode_t cur = start;
        do {
            seen[cur] = true;
            cls.codes.push_back(cur);
            z = k_field.frobenius_once(z);
            cur = k_field.code(z);
        } while (cur != start);
        std::sort(cls.codes.begin(), cls.codes.end());
        cls.trace = trace(k_field, k_field.element(cls.codes.front()));
        classes.push_back(std::move(cls));
    }
    return classes;
}

/// Minimal polynomial of z over the base field: the product of (x - w) over
/// the Frobenius orbit of z. Monic, with degree equal to the orbit size;
/// every coefficient must land in the base field.
inline Poly min_poly(const ExtensionField& k_field, const FieldElement& z) {
    std::vector<FieldElement> orbit(1, z);
    {
        FieldElement cur = k_field.frobenius_once(z);
        while (!(cur == z)) {
            orbit.push_back(cur);
            cur = k_field.frobenius_once(cur);
        }
    }
    // expand prod (x - w): poly coefficients live in K during the product
    std::vector<FieldElement> poly{k_field.one()};
    for (const auto& w : orbit) {
        std::vector<FieldElement> next(poly.size() + 1, k_field.zero());
        for (std::size_t i = 0; i < poly.size(); ++i) {
            next[i + 1] = k_field.add(next[i + 1], poly[i]);
            next[i] = k_field.sub(next[i], k_field.mul(poly[i], w));
        }
        poly = std::move(next);
    }
    Poly out;
    out.coeffs.reserve(poly.size());
    for (const auto& c : poly) {
        for (std::size_t i = 1; i < c.coeffs.size(); ++i)
            if (c.coeffs[i] != 0)
                throw internal_error("min_poly: coefficient outside the base field");
        out.coeffs.push_back(c.coeffs[0]);
    }
    poly_trim(out);
    return out;
}

/// All monic irreducible degree-n polynomials over F, optionally filtered by
/// the coefficient of x^(n-1), in canonical ascending order.
inline std::vector<Poly> enumerate_irreducibles(const BaseField& f, std::uint32_t n,
                                                std::optional<fcode_t> second_coeff = std::nullopt,
                                                std::uint64_t size_bound =
                                                    ExtensionField::kDefaultSizeBound) {
    if (n == 0) throw std::invalid_argument("enumerate_irreducibles: n must be positive");
    std::uint64_t count = 1;
    for (std::uint32_t i = 0; i < n; ++i) {
        count *= f.q();
        if (count > size_bound)
            throw budget_error("enumerate_irreducibles: q^n exceeds bound " +
                               std::to_string(size_bound));
    }
    std::vector<Poly> out;
    for (std::uint64_t code = 0; code < count; ++code) {
        Poly candidate;
        candidate.coeffs.resize(n + 1, 0);
        std::uint64_t c = code;
        for (std::uint32_t i = 0; i < n; ++i) {
            candidate.coeffs[i] = static_cast<fcode_t>(c % f.q());
            c /= f.q();
        }
        candidate.coeffs[n] = 1;
        if (second_coeff && candidate.coeffs[n - 1] != *second_coeff) continue;
        if (poly_irreducible(f, candidate)) out.push_back(std::move(candidate));
    }
    return out;
}

/// (number of trace-zero classes, number of trace-zero classes of size
/// exactly n): oracle counts read straight off the class partition.
inline std::pair<CountResult, CountResult> count_trace_zero_classes(const ExtensionField& k_field) {
    BigInt all = 0, full_size = 0;
    for (const auto& cls : conjugacy_classes_of_field(k_field)) {
        if (cls.trace != 0) continue;
        ++all;
        if (cls.size() == k_field.degree()) ++full_size;
    }
    return {oracle_count(all), oracle_count(full_size)};
}

/// Outcome of the equivariance sweep over F^n.
struct PhiReport {
    std::uint64_t tuples_checked = 0;
    bool exhaustive = true;
    bool bijective = true;
    std::vector<std::string> counterexamples;

    bool passed() const { return bijective && counterexamples.empty(); }
};

/// Checks, over all of F^n (or a fixed-seed sample when the field is larger
/// than 100000 elements), that rotating a tuple right by one step matches
/// applying the Frobenius to its image, and that a tuple sums to zero
/// exactly when its image has trace zero. Exhaustive runs also confirm the
/// map hits every element of K once.
inline PhiReport verify_phi_equivariance(ExtensionField& k_field) {
    find_normal_basis(k_field);
    const std::uint32_t n = k_field.degree();
    const std::uint64_t space = k_field.size();
    PhiReport report;
    report.exhaustive = space <= 100000;

    std::vector<bool> image_seen;
    if (report.exhaustive) image_seen.assign(space, false);

    std::uint64_t state = 0x2545f4914f6cdd1dull;
    const std::uint64_t samples = report.exhaustive ? space : 100000;
    std::vector<fcode_t> tuple(n), rotated(n);
    for (std::uint64_t step = 0; step < samples; ++step) {
        xcode_t code;
        if (report.exhaustive) {
            code = step;
        } else {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            code = state % space;
        }
        xcode_t c = code;
        for (std::uint32_t i = 0; i < n; ++i) {
            tuple[i] = static_cast<fcode_t>(c % k_field.base().q());
            c /= k_field.base().q();
        }
        const FieldElement image = phi_map(k_field, tuple);
        if (report.exhaustive) {
            const xcode_t icode = k_field.code(image);
            if (image_seen[icode]) report.bijective = false;
            image_seen[icode] = true;
        }

        // rotate right by one: the tuple (a_(n-1), a_0, ..., a_(n-2))
        for (std::uint32_t i = 0; i < n; ++i) rotated[(i + 1) % n] = tuple[i];
        const FieldElement lhs = phi_map(k_field, rotated);
        const FieldElement rhs = k_field.frobenius_once(image);
        if (!(lhs == rhs))
            report.counterexamples.push_back("equivariance fails at tuple code " +
                                             std::to_string(code));

        fcode_t sum = 0;
        for (fcode_t a : tuple) sum = k_field.base().add(sum, a);
        const bool zero_sum = sum == 0;
        const bool zero_trace = trace(k_field, image) == 0;
        if (zero_sum != zero_trace)
            report.counterexamples.push_back("zero-sum/trace-zero mismatch at tuple code " +
                                             std::to_string(code));
        ++report.tuples_checked;
    }
    return report;
}

/// Evaluates a base-coefficient polynomial at an extension element.
inline FieldElement eval_in_extension(const ExtensionField& k_field, const Poly& poly,
                                      const FieldElement& z) {
    FieldElement acc = k_field.zero();
    for (std::size_t i = poly.coeffs.size(); i-- > 0;)
        acc = k_field.add(k_field.mul(acc, z), k_field.from_base(poly.coeffs[i]));
    return acc;
}

/// Text form, descending degree: "x^3+x+1" over a prime base field;
/// non-prime base fields show bracketed coefficient codes, "[3]x^2+[1]".
inline std::string poly_to_string(const BaseField& f, const Poly& a) {
    if (a.is_zero()) return "0";
    const bool bracket = f.e() > 1;
    std::string out;
    for (std::size_t i = a.coeffs.size(); i-- > 0;) {
        const fcode_t c = a.coeffs[i];
        if (c == 0) continue;
        if (!out.empty()) out += "+";
        if (c != 1 || i == 0)
            out += bracket ? "[" + std::to_string(c) + "]" : std::to_string(c);
        if (i > 0) {
            out += "x";
            if (i > 1) out += "^" + std::to_string(i);
        }
    }
    return out;
}

} // namespace necklaces
