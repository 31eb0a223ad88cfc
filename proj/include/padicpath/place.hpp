#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "padicpath/error.hpp"

namespace padicpath {

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    b %= m;
    while (e) {
        if (e & 1) r = mulmod(r, b, m);
        b = mulmod(b, b, m);
        e >>= 1;
    }
    return r;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the first twelve prime bases are exact for
/// every 64-bit input.
inline bool is_prime(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) { d >>= 1; ++s; }
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = detail::powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = detail::mulmod(x, x, n);
            if (x == n - 1) { composite = false; break; }
        }
        if (composite) return false;
    }
    return true;
}

/// A validated prime. Primes are kept below 2^32 so that residue arithmetic
/// on digits and small powers never needs more than 64 bits per step.
class Prime {
public:
    explicit Prime(std::uint64_t p) : p_(p) {
        if (p > 0xffffffffull || !is_prime(p))
            throw invalid_argument_error(std::to_string(p) + " is not a supported prime");
    }

    unsigned long value() const { return static_cast<unsigned long>(p_); }
    bool is_two() const { return p_ == 2; }

    friend bool operator==(Prime a, Prime b) { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
};

/// Completion of Q: the real place or the p-adic place for a prime p.
class Place {
public:
    static Place real() { return Place(); }
    static Place prime(std::uint64_t p) { return Place(Prime(p)); }

    Place(Prime p) : p_(p) {}  // NOLINT(google-explicit-constructor)

    bool is_real() const { return !p_.has_value(); }
    bool is_padic() const { return p_.has_value(); }

    Prime p() const {
        if (!p_) throw invalid_argument_error("the real place has no prime");
        return *p_;
    }

    /// "inf" (also "real", "oo") or a decimal prime.
    static Place parse(std::string_view text) {
        if (text == "inf" || text == "real" || text == "oo") return real();
        if (text.empty() || text.size() > 19) throw parse_error("malformed place '" + std::string(text) + "'");
        std::uint64_t v = 0;
        for (char c : text) {
            if (c < '0' || c > '9') throw parse_error("malformed place '" + std::string(text) + "'");
            v = v * 10 + static_cast<std::uint64_t>(c - '0');
        }
        if (v > 0xffffffffull || !is_prime(v)) throw parse_error("place '" + std::string(text) + "' is not a prime");
        return prime(v);
    }

    std::string to_string() const { return p_ ? std::to_string(p_->value()) : std::string("inf"); }

    friend bool operator==(const Place& a, const Place& b) { return a.p_ == b.p_; }

private:
    Place() = default;
    std::optional<Prime> p_;
};

}  // namespace padicpath
