#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace padic {

inline std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(
        (static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t pow_mod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t result = 1 % m;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mul_mod(result, base, m);
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Deterministic Miller-Rabin for word-size inputs.
inline bool is_prime_word(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        if (n == q) return true;
        if (n % q == 0) return false;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    // Sufficient base set for n < 3.2e18.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        std::uint64_t x = pow_mod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int r = 1; r < s; ++r) {
            x = mul_mod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

/// A verified word-size prime. Cubic-level operations additionally require
/// p > 3; that check lives with those operations.
class Prime {
public:
    explicit Prime(std::uint64_t value) {
        if (value < 2 || value >= (1ull << 31))
            throw std::invalid_argument("prime must satisfy 2 <= p < 2^31, got " +
                                        std::to_string(value));
        if (!is_prime_word(value))
            throw std::invalid_argument(std::to_string(value) + " is not prime");
        value_ = static_cast<std::uint32_t>(value);
    }

    std::uint32_t value() const { return value_; }
    bool odd() const { return value_ != 2; }

    friend bool operator==(Prime a, Prime b) { return a.value_ == b.value_; }
    friend bool operator!=(Prime a, Prime b) { return a.value_ != b.value_; }

private:
    std::uint32_t value_;
};

} // namespace padic
