#ifndef WCCA_ERRORS_HPP
#define WCCA_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace wcca {

/// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Two objects built on different quantile/time grids were combined.
struct GridMismatch : Error {
    explicit GridMismatch(const std::string& msg) : Error(msg) {}
};

/// Two tangent objects anchored at different base points/curves were combined.
struct BaseMismatch : Error {
    explicit BaseMismatch(const std::string& msg) : Error(msg) {}
};

/// A scalar argument fell outside its admissible domain.
struct DomainError : Error {
    explicit DomainError(const std::string& msg) : Error(msg) {}
};

/// Strict exponential map received a vector outside the log image
/// (candidate quantile vector not monotone).
struct NotInLogImage : Error {
    explicit NotInLogImage(const std::string& msg) : Error(msg) {}
};

/// Strict exponential map produced quantiles outside the support interval.
struct SupportViolation : Error {
    explicit SupportViolation(const std::string& msg) : Error(msg) {}
};

/// An operation that needs at least one observation got none.
struct EmptyInput : Error {
    explicit EmptyInput(const std::string& msg) : Error(msg) {}
};

/// A density with nonpositive total mass cannot be normalized.
struct DegenerateDensity : Error {
    explicit DegenerateDensity(const std::string& msg) : Error(msg) {}
};

/// Requested more components than the sample rank supports.
struct RankError : Error {
    explicit RankError(const std::string& msg) : Error(msg) {}
};

/// A truncated eigenvalue needed for inversion is numerically zero.
struct SingularTruncation : Error {
    explicit SingularTruncation(const std::string& msg) : Error(msg) {}
};

/// Two paired samples disagree on the number of subjects.
struct SampleMismatch : Error {
    explicit SampleMismatch(const std::string& msg) : Error(msg) {}
};

/// Cross-validation fold too small to carry a Pearson statistic.
struct FoldError : Error {
    explicit FoldError(const std::string& msg) : Error(msg) {}
};

/// Malformed input file; message carries the 1-based line number.
struct ParseError : Error {
    ParseError(const std::string& msg, long line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_number(line) {}
    long line_number;
};

} // namespace wcca

#endif // WCCA_ERRORS_HPP
