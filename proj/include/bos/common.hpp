#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace bos {

using cplx = std::complex<double>;
using RVec = std::vector<double>;
using CVec = std::vector<cplx>;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Invalid physical or scaling parameters.
struct DomainError : Error {
    using Error::Error;
};

struct LimitUndefined : Error {
    using Error::Error;
};

struct SupportViolation : Error {
    using Error::Error;
};

struct CoordinateMismatch : Error {
    using Error::Error;
};

struct NonZeroMean : Error {
    using Error::Error;
};

struct ConfigError : Error {
    using Error::Error;
};

struct BlowUp : Error {
    BlowUp(double time, double max_r)
        : Error("blow-up guard tripped at t=" + std::to_string(time) +
                " (max|r|=" + std::to_string(max_r) + ")"),
          t(time), max_abs_r(max_r) {}
    double t;
    double max_abs_r;
};

}  // namespace bos
