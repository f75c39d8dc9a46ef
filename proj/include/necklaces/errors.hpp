#pragma once

#include <stdexcept>
#include <string>

namespace necklaces {

/// Malformed group spec, subset spec, or other unparsable input.
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// An operation would exceed a configured resource bound (enumeration
/// budget, group order limit, field size limit). Never silent truncation.
class budget_error : public std::runtime_error {
public:
    explicit budget_error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A cross-check failed that can only fail due to a defect: integrality of
/// a divisor sum, formula/enumeration disagreement, rotation-closure of a
/// tuple stream. Not an error path for callers.
class internal_error : public std::logic_error {
public:
    explicit internal_error(const std::string& msg) : std::logic_error(msg) {}
};

} // namespace necklaces
