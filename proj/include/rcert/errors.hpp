#pragma once

#include <stdexcept>
#include <string>

namespace rcert {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A value all of whose computed digits vanish; square-class and symbol
// decisions must never be made on such a value.
struct ZeroToPrecision : Error {
    explicit ZeroToPrecision(const std::string& msg) : Error(msg) {}
};

struct NotSquare : Error {
    explicit NotSquare(const std::string& msg) : Error(msg) {}
};

struct NoSolution : Error {
    explicit NoSolution(const std::string& msg) : Error(msg) {}
};

struct DegreeOverflow : Error {
    explicit DegreeOverflow(const std::string& msg) : Error(msg) {}
};

struct NotMonomial : Error {
    explicit NotMonomial(const std::string& msg) : Error(msg) {}
};

struct UnsupportedField : Error {
    explicit UnsupportedField(const std::string& msg) : Error(msg) {}
};

struct UnsupportedPrime : Error {
    explicit UnsupportedPrime(const std::string& msg) : Error(msg) {}
};

struct NotSimilitude : Error {
    explicit NotSimilitude(const std::string& msg) : Error(msg) {}
};

struct NotPure : Error {
    explicit NotPure(const std::string& msg) : Error(msg) {}
};

struct NotDiagonal : Error {
    explicit NotDiagonal(const std::string& msg) : Error(msg) {}
};

struct NrdUnsupported : Error {
    explicit NrdUnsupported(const std::string& msg) : Error(msg) {}
};

struct Inconclusive : Error {
    explicit Inconclusive(const std::string& msg) : Error(msg) {}
};

struct MalformedInvolution : Error {
    explicit MalformedInvolution(const std::string& msg) : Error(msg) {}
};

struct InternalDeciderMismatch : Error {
    explicit InternalDeciderMismatch(const std::string& msg) : Error(msg) {}
};

} // namespace rcert
