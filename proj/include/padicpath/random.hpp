#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

#include "padicpath/padic.hpp"

namespace padicpath {

/// Seeded source of test rationals. Only the raw mt19937_64 stream is used
/// (no std distributions), so a seed reproduces the same values on every
/// standard library.
class RationalSampler {
public:
    explicit RationalSampler(std::uint64_t seed) : rng_(seed) {}

    std::uint64_t below(std::uint64_t n) { return rng_() % n; }
    long between(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }

    /// Nonzero n/d with |n| <= max_num, 1 <= d <= max_den, scaled by p^e with
    /// e in [-spread, spread] at a prime so that valuations vary.
    Rational nonzero(const Place& v, long max_num = 60, long max_den = 30, long spread = 3) {
        long n = 0;
        while (n == 0) n = between(-max_num, max_num);
        Rational r(Integer(n), Integer(between(1, max_den)));
        if (v.is_padic() && spread > 0) r *= prime_power(v.p(), between(-spread, spread));
        return r;
    }

    /// Nonzero u p^e with e drawn from [lo, hi] and u = n/d a p-adic unit,
    /// 1 <= |n|, d <= 6. At the real place e is ignored.
    Rational with_valuation(const Place& v, long lo, long hi) {
        if (v.is_real()) return nonzero(v, 6, 6, 0);
        const long p = static_cast<long>(v.p().value());
        auto unit = [&] {
            long x = 0;
            while (x == 0 || x % p == 0) x = between(1, 6);
            return x;
        };
        const long n = unit(), d = unit();
        return Rational(Integer(below(2) ? n : -n), Integer(d)) * prime_power(v.p(), between(lo, hi));
    }

    Rational any(const Place& v, long max_num = 60, long max_den = 30, long spread = 3) {
        if (below(8) == 0) return Rational(0);
        return nonzero(v, max_num, max_den, spread);
    }

    /// count distinct rationals sorted in the order of the place.
    std::vector<Rational> ordered_points(const Place& v, std::size_t count) {
        std::vector<Rational> pts;
        while (pts.size() < count) {
            Rational r = any(v);
            if (std::find(pts.begin(), pts.end(), r) == pts.end()) pts.push_back(r);
        }
        std::sort(pts.begin(), pts.end(), [&](const Rational& a, const Rational& b) { return place_less(a, b, v); });
        return pts;
    }

private:
    std::mt19937_64 rng_;
};

}  // namespace padicpath
