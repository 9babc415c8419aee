#pragma once

#include <stdexcept>
#include <string>

namespace padic {

/// Requested operation falls outside what the library implements
/// (cubic machinery for p <= 3, q-th roots with p | q, ...).
struct unsupported_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Truncated arithmetic would have to return a value with no reliable digit.
struct precision_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An oracle needs a larger modulus exponent p^K. Retryable.
struct oracle_modulus_error : std::runtime_error {
    long suggested_exponent;
    oracle_modulus_error(const std::string& what, long suggested)
        : std::runtime_error(what), suggested_exponent(suggested) {}
};

/// An oracle valuation window [-T, T] does not cover all candidate root
/// valuations. Retryable.
struct oracle_window_error : std::runtime_error {
    long suggested_window;
    oracle_window_error(const std::string& what, long suggested)
        : std::runtime_error(what), suggested_window(suggested) {}
};

} // namespace padic
