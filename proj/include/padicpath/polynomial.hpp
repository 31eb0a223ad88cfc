#pragma once

#include <algorithm>
#include <initializer_list>
#include <ostream>
#include <string>
#include <vector>

#include "padicpath/rational.hpp"

namespace padicpath {

/// Dense univariate polynomial over Q, lowest degree first, no trailing zeros.
class Polynomial {
public:
    Polynomial() = default;
    Polynomial(std::initializer_list<Rational> c) : c_(c) { trim(); }
    explicit Polynomial(std::vector<Rational> c) : c_(std::move(c)) { trim(); }

    static Polynomial constant(const Rational& c) { return Polynomial({c}); }

    const std::vector<Rational>& coefficients() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    long degree() const { return static_cast<long>(c_.size()) - 1; }

    Rational coefficient(std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

    Rational operator()(const Rational& t) const {
        Rational acc(0);
        for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * t + *it;
        return acc;
    }

    Polynomial derivative() const {
        std::vector<Rational> d;
        for (std::size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * Rational(static_cast<long>(i)));
        return Polynomial(std::move(d));
    }

    /// Antiderivative with zero constant term.
    Polynomial antiderivative() const {
        std::vector<Rational> a{Rational(0)};
        for (std::size_t i = 0; i < c_.size(); ++i) a.push_back(c_[i] / Rational(static_cast<long>(i + 1)));
        return Polynomial(std::move(a));
    }

    /// Phi(upper) - Phi(lower) with Phi the antiderivative.
    Rational integrate(const Rational& lower, const Rational& upper) const {
        const Polynomial phi = antiderivative();
        return phi(upper) - phi(lower);
    }

    friend Polynomial operator+(const Polynomial& a, const Polynomial& b) {
        std::vector<Rational> s(std::max(a.c_.size(), b.c_.size()));
        for (std::size_t i = 0; i < s.size(); ++i) s[i] = a.coefficient(i) + b.coefficient(i);
        return Polynomial(std::move(s));
    }
    friend Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + b * Rational(-1); }

    friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
        if (a.is_zero() || b.is_zero()) return {};
        std::vector<Rational> s(a.c_.size() + b.c_.size() - 1);
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            for (std::size_t j = 0; j < b.c_.size(); ++j) s[i + j] += a.c_[i] * b.c_[j];
        return Polynomial(std::move(s));
    }
    friend Polynomial operator*(const Polynomial& a, const Rational& k) { return a * constant(k); }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    friend std::ostream& operator<<(std::ostream& os, const Polynomial& p) {
        if (p.is_zero()) return os << "0";
        for (std::size_t i = 0; i < p.c_.size(); ++i) {
            if (i) os << " + ";
            os << p.c_[i];
            if (i) os << "*t^" << i;
        }
        return os;
    }

private:
    void trim() {
        while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
    }

    std::vector<Rational> c_;
};

}  // namespace padicpath
