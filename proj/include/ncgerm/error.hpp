#ifndef NCGERM_ERROR_HPP
#define NCGERM_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ncgerm {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

/// A square matrix that has no inverse.
class SingularMatrix : public Error {
public:
    using Error::Error;
};

/// A jet whose constant term is singular.
class NotInvertible : public Error {
public:
    using Error::Error;
};

/// Inputs violate the hypotheses an operation relies on.
class PreconditionFailed : public Error {
public:
    using Error::Error;
};

class NotSemisimple : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

class NotSeparated : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

class NotInAlgebra : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

/// A linear system with no solution inside the allowed search range.
class Infeasible : public PreconditionFailed {
public:
    using PreconditionFailed::PreconditionFailed;
};

/// A constructed object failed its own post-construction verification.
class InternalCheckFailure : public Error {
public:
    using Error::Error;
};

/// Dense tensor or monomial count above the configured cap.
class ResourceLimit : public Error {
public:
    using Error::Error;
};

/// Malformed textual or JSON input. `position` is a character offset when known.
class ParseError : public Error {
public:
    explicit ParseError(const std::string& what, std::size_t position = npos)
        : Error(what), position_(position) {}

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    std::size_t position() const noexcept { return position_; }

private:
    std::size_t position_;
};

class SyntaxError : public ParseError {
public:
    using ParseError::ParseError;
};

} // namespace ncgerm

#endif // NCGERM_ERROR_HPP
