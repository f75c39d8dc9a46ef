#pragma once

#include <optional>
#include <string>
#include <vector>

#include "necklaces/formulas.hpp"

namespace necklaces {

/// The three classical integer sequences this library reproduces:
///   a000013: identity-product n-necklaces over C2,
///   a130293: identity-product n-necklaces over C_n,
///   a121774: identity-product n-necklaces over C_(n+1).
enum class SequenceName { a000013, a130293, a121774 };

inline const char* to_string(SequenceName name) {
    switch (name) {
    case SequenceName::a000013: return "a000013";
    case SequenceName::a130293: return "a130293";
    default: return "a121774";
    }
}

inline std::optional<SequenceName> parse_sequence_name(const std::string& s) {
    if (s == "a000013" || s == "A000013") return SequenceName::a000013;
    if (s == "a130293" || s == "A130293") return SequenceName::a130293;
    if (s == "a121774" || s == "A121774") return SequenceName::a121774;
    return std::nullopt;
}

/// Terms for n = 1..max_n, through the cyclic-group counting formula.
inline std::vector<BigInt> sequence_terms(SequenceName name, std::uint64_t max_n) {
    if (max_n == 0) throw std::invalid_argument("sequence_terms: max_n must be positive");
    std::vector<BigInt> terms;
    terms.reserve(max_n);
    for (std::uint64_t n = 1; n <= max_n; ++n) {
        std::uint64_t k = 0;
        switch (name) {
        case SequenceName::a000013: k = 2; break;
        case SequenceName::a130293: k = n; break;
        case SequenceName::a121774: k = n + 1; break;
        }
        terms.push_back(count_identity_necklaces_abelian({k}, n).value);
    }
    return terms;
}

} // namespace necklaces
