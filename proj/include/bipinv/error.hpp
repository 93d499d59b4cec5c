#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bipinv {

enum class ErrorCode {
    Syntax,
    InvalidGraph,
    NotBipartite,
    OrderMismatch,
    NoPerfectMatching,
    NotUnique,
    CycleFound,
    SameVertex,
    SizeTooSmall,
    NotTriangularizable,
    NotUnitTriangular,
    MissingVertex,
    PreconditionViolated,
    NotAcyclic,
    InvalidPoset,
    TooLarge,
    Singular,
    DimensionMismatch,
    Io,
    Internal,
};

const char* error_code_name(ErrorCode code) noexcept;

// Every failure raised by the library. `witness()` carries a vertex sequence
// when the failure has a combinatorial certificate (odd cycle, alternating
// cycle, directed cycle).
class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message, std::vector<int> witness = {})
        : std::runtime_error(message), code_(code), witness_(std::move(witness)) {}

    ErrorCode code() const noexcept { return code_; }
    const std::vector<int>& witness() const noexcept { return witness_; }

private:
    ErrorCode code_;
    std::vector<int> witness_;
};

// Raised when a perfect matching exists but is not unique: carries one perfect
// matching (as a mate array) and an alternating cycle in witness().
class NotUniqueError : public Error {
public:
    NotUniqueError(const std::string& message, std::vector<int> cycle, std::vector<int> mate)
        : Error(ErrorCode::NotUnique, message, std::move(cycle)), mate_(std::move(mate)) {}

    const std::vector<int>& mate() const noexcept { return mate_; }

private:
    std::vector<int> mate_;
};

}  // namespace bipinv
