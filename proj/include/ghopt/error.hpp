#ifndef GHOPT_ERROR_HPP
#define GHOPT_ERROR_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace ghopt
{

// Base of every error raised by the library.
class Error : public std::runtime_error
{
public:
    using std::runtime_error::runtime_error;
};

// lo > hi or a non-finite endpoint.
class InvalidInterval : public Error
{
public:
    using Error::Error;
};

class DivisionByIntervalContainingZero : public Error
{
public:
    using Error::Error;
};

// Componentwise interval-vector operation on vectors of different length.
class LengthMismatch : public Error
{
public:
    using Error::Error;
};

// A point, direction or parameter vector whose length does not match the function.
class DimensionMismatch : public Error
{
public:
    using Error::Error;
};

class InvalidWeights : public Error
{
public:
    using Error::Error;
};

// An IVF produced f_lower(x) > f_upper(x).
class EndpointOrderViolation : public Error
{
public:
    using Error::Error;
};

class NotGHDifferentiable : public Error
{
public:
    // coordinate is 1-based.
    NotGHDifferentiable(std::size_t coordinate, const std::string &what)
        : Error(what), coordinate_(coordinate)
    {
    }
    std::size_t coordinate() const noexcept { return coordinate_; }

private:
    std::size_t coordinate_;
};

class OracleFailure : public Error
{
public:
    using Error::Error;
};

class EmptyTrace : public Error
{
public:
    using Error::Error;
};

class InvalidConfig : public Error
{
public:
    using Error::Error;
};

// Malformed text input; line and column are 1-based, 0 when unknown.
class ParseError : public Error
{
public:
    ParseError(const std::string &what, std::size_t line = 0, std::size_t column = 0)
        : Error(what), line_(line), column_(column)
    {
    }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace ghopt

#endif
