#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "padicpath/padic.hpp"

namespace padicpath::detail {

/**
 * Element sum_j c_j zeta^j of Z[zeta], zeta = exp(2 pi i / p^K), with
 * integer coefficients indexed by j mod p^K.
 *
 * Canonical form: the p^K exponents split into classes j = r + i*p^(K-1),
 * i = 0..p-1, and each class sums to zero. Subtracting the i = p-1
 * coefficient from the whole class leaves a unique representative whose
 * top block is empty; two elements are equal iff their canonical forms are.
 */
class CyclotomicSum {
public:
    CyclotomicSum(Prime p, unsigned K) : p_(p), K_(K) {
        modulus_ = 1;
        for (unsigned i = 0; i < K; ++i) modulus_ *= p.value();
        block_ = modulus_ / p.value();
    }

    std::uint64_t modulus() const { return modulus_; }
    Prime prime() const { return p_; }
    unsigned exponent() const { return K_; }

    void add(std::uint64_t index, std::int64_t coeff) {
        if (coeff == 0) return;
        auto& c = terms_[index % modulus_];
        c += coeff;
        if (c == 0) terms_.erase(index % modulus_);
    }

    const std::map<std::uint64_t, std::int64_t>& terms() const { return terms_; }

    CyclotomicSum reduced() const {
        CyclotomicSum out(p_, K_);
        const std::uint64_t top = (p_.value() - 1) * block_;
        std::map<std::uint64_t, std::int64_t> top_coeff;  // class r -> c_{r + top}
        for (auto [j, c] : terms_)
            if (j >= top) top_coeff[j - top] = c;
        for (auto [j, c] : terms_)
            if (j < top) out.add(j, c);
        for (auto [r, c] : top_coeff)
            for (std::uint64_t i = 0; i + 1 < p_.value(); ++i) out.add(r + i * block_, -c);
        return out;
    }

    bool is_zero() const { return reduced().terms_.empty(); }

    CyclotomicSum operator*(const CyclotomicSum& o) const {
        CyclotomicSum out(p_, K_);
        for (auto [j, c] : terms_)
            for (auto [k, d] : o.terms_) out.add((j + k) % modulus_, c * d);
        return out;
    }

    CyclotomicSum conj() const {
        CyclotomicSum out(p_, K_);
        for (auto [j, c] : terms_) out.add((modulus_ - j) % modulus_, c);
        return out;
    }

    /// If the element equals c * zeta^k, returns (k, c).
    std::optional<std::pair<std::uint64_t, std::int64_t>> as_monomial() const {
        const CyclotomicSum r = reduced();
        if (r.terms_.size() == 1) {
            const auto [j, c] = *r.terms_.begin();
            return std::pair{j, c};
        }
        // zeta^k with k in the top block reduces to minus the other p-1
        // members of its class.
        if (r.terms_.size() + 1 != p_.value() || r.terms_.empty()) return std::nullopt;
        const std::uint64_t cls = r.terms_.begin()->first % block_;
        const std::int64_t c = r.terms_.begin()->second;
        for (std::uint64_t i = 0; i + 1 < p_.value(); ++i) {
            auto it = r.terms_.find(cls + i * block_);
            if (it == r.terms_.end() || it->second != c) return std::nullopt;
        }
        return std::pair{cls + (p_.value() - 1) * block_, -c};
    }

private:
    Prime p_;
    unsigned K_;
    std::uint64_t modulus_;
    std::uint64_t block_;
    std::map<std::uint64_t, std::int64_t> terms_;
};

}  // namespace padicpath::detail
