#ifndef EPISIM_ERRORS_HPP
#define EPISIM_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace episim {

/// Syntax error in a formula or model file. `offset` is a byte offset into
/// the offending text when known, npos otherwise.
struct ParseError : std::runtime_error {
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
    std::size_t offset;
    explicit ParseError(const std::string& msg, std::size_t off = npos)
        : std::runtime_error(off == npos ? msg : msg + " (at offset " + std::to_string(off) + ")"),
          offset(off) {}
};

/// The input parses but violates a structural invariant; carries the
/// printable defect report.
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownWorldError : std::runtime_error {
    explicit UnknownWorldError(const std::string& id)
        : std::runtime_error("unknown world '" + id + "'") {}
};

/// The exhaustive frame-validity oracle refuses instances beyond its budget
/// instead of sampling.
struct BudgetError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace episim

#endif
