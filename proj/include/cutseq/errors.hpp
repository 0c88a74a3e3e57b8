// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <stdexcept>
#include <string>

namespace cutseq {

/// Base class for every error raised by the library. `code()` is a stable
/// machine-readable identifier used in CLI error reports.
class Error : public std::runtime_error {
public:
    Error(std::string code, const std::string& message)
        : std::runtime_error(message), code_(std::move(code)) {}

    const std::string& code() const noexcept { return code_; }

private:
    std::string code_;
};

#define CUTSEQ_DEFINE_ERROR(Name)                                              \
    class Name : public Error {                                                \
    public:                                                                    \
        explicit Name(const std::string& message) : Error(#Name, message) {}  \
    }

CUTSEQ_DEFINE_ERROR(FieldMismatch);
CUTSEQ_DEFINE_ERROR(DivisionByZero);
CUTSEQ_DEFINE_ERROR(InvalidField);
CUTSEQ_DEFINE_ERROR(AmbiguousRelation);
CUTSEQ_DEFINE_ERROR(WordTooShort);
CUTSEQ_DEFINE_ERROR(Inconclusive);
CUTSEQ_DEFINE_ERROR(BoundaryAmbiguity);
CUTSEQ_DEFINE_ERROR(NotMinimal);
CUTSEQ_DEFINE_ERROR(NoTripleLine);
CUTSEQ_DEFINE_ERROR(NonPositiveCoordinate);
CUTSEQ_DEFINE_ERROR(InvalidArgument);

#undef CUTSEQ_DEFINE_ERROR

/// Syntax or semantic error in a direction expression.
class ParseError : public Error {
public:
    ParseError(const std::string& message, std::size_t position, std::string expected)
        : Error("ParseError", message + " at position " + std::to_string(position) +
                                  (expected.empty() ? "" : " (expected " + expected + ")")),
          position_(position), expected_(std::move(expected)) {}

    std::size_t position() const noexcept { return position_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t position_;
    std::string expected_;
};

}  // namespace cutseq
