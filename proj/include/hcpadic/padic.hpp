#pragma once

/**
 * @file padic.hpp
 * @brief Elements of Q_p at finite, explicitly tracked precision.
 *
 * A non-zero value is stored canonically as x = p^v * u with u a unit
 * (u mod p != 0) known modulo p^N. N is the relative precision: the number
 * of digits of u that are known. The absolute precision v + N says modulo
 * which power of p the value is determined.
 *
 * A value all of whose known digits vanish is "zero at precision"; it keeps
 * only its absolute precision. There is no absolute equality operator:
 * compare with congruent(a, b, m).
 */

#include <compare>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace padic {

inline constexpr int kDefaultPrecision = 48;

class PadicError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class PrimeMismatch : public PadicError {
public:
    using PadicError::PadicError;
};

/// Asked for digits or congruences beyond what is known.
class PrecisionError : public PadicError {
public:
    using PadicError::PadicError;
};

class DivisionByZero : public PadicError {
public:
    using PadicError::PadicError;
};

/// Argument outside the convergence domain of a series.
class DomainError : public PadicError {
public:
    using PadicError::PadicError;
};

/// p-adic valuation with a +infinity marker for values that are zero at
/// precision. Infinity compares greater than every finite valuation.
class Valuation {
public:
    constexpr explicit Valuation(std::int64_t v) : value_(v) {}
    static constexpr Valuation infinite() { return Valuation(kInf); }

    constexpr bool is_infinite() const { return value_ == kInf; }
    constexpr std::int64_t value() const { return value_; }

    constexpr auto operator<=>(const Valuation&) const = default;
    constexpr bool operator>=(std::int64_t m) const { return value_ >= m; }
    constexpr bool operator<(std::int64_t m) const { return value_ < m; }

    std::string to_string() const;

private:
    static constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max();
    std::int64_t value_;
};

mpz_class prime_power(std::int64_t p, std::int64_t e);

/// Largest e with p^e | n (n != 0).
std::int64_t valuation_of(const mpz_class& n, std::int64_t p);

class PadicNumber {
public:
    /// Value of num/den in Q_p with `precision` unit digits.
    static PadicNumber from_rational(const mpz_class& num, const mpz_class& den, std::int64_t prime,
                                     int precision = kDefaultPrecision);
    static PadicNumber from_rational(const mpq_class& q, std::int64_t prime,
                                     int precision = kDefaultPrecision);
    static PadicNumber from_integer(const mpz_class& n, std::int64_t prime,
                                    int precision = kDefaultPrecision);
    /// p^valuation * unit, unit reduced mod p^precision. The unit must be prime to p.
    static PadicNumber from_unit(std::int64_t prime, std::int64_t valuation, const mpz_class& unit,
                                 int precision);
    /// Zero known modulo p^absolute_precision.
    static PadicNumber zero(std::int64_t prime, std::int64_t absolute_precision);
    /// d0 + d1 p + ... with each 0 <= d_i < p, known to digits.size() places.
    static PadicNumber from_digits(std::int64_t prime, const std::vector<std::int64_t>& digits);

    std::int64_t prime() const { return prime_; }
    bool is_zero() const { return unit_ == 0; }
    Valuation valuation() const;
    /// Number of known unit digits; 0 for zero at precision.
    int precision() const { return precision_; }
    /// m such that the value is determined mod p^m.
    std::int64_t absolute_precision() const { return valuation_ + precision_; }
    /// The unit part u in [0, p^N); 0 for zero.
    const mpz_class& unit() const { return unit_; }

    /// |x|_p = p^-v, and 0 for zero at precision.
    mpq_class norm() const;

    /// x_j of the canonical expansion, j < count <= precision().
    std::vector<std::int64_t> unit_digits(int count) const;
    /// Coefficients of p^0 .. p^(count-1); needs valuation >= 0.
    std::vector<std::int64_t> digits(std::int64_t count) const;
    /// Representative in [0, p^m) of a p-adic integer, m <= absolute_precision().
    mpz_class residue(std::int64_t m) const;

    /// Valuation if non-zero, otherwise the absolute precision: the order to
    /// which the value is known to vanish.
    std::int64_t vanishing_order() const;

    /// Same value, relative precision lowered to at most n.
    PadicNumber with_precision(int n) const;

    PadicNumber operator-() const;
    friend PadicNumber operator+(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator-(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator*(const PadicNumber& a, const PadicNumber& b);
    friend PadicNumber operator/(const PadicNumber& a, const PadicNumber& b);

    PadicNumber& operator+=(const PadicNumber& b) { return *this = *this + b; }
    PadicNumber& operator-=(const PadicNumber& b) { return *this = *this - b; }
    PadicNumber& operator*=(const PadicNumber& b) { return *this = *this * b; }
    PadicNumber& operator/=(const PadicNumber& b) { return *this = *this / b; }

    PadicNumber pow(std::uint64_t e) const;

    /// "p^v * (d0 + d1*p + ...) + O(p^(v+N))"
    std::string to_string() const;

private:
    PadicNumber(std::int64_t prime, std::int64_t valuation, mpz_class unit, int precision)
        : prime_(prime), valuation_(valuation), unit_(std::move(unit)), precision_(precision) {}

    std::int64_t prime_;
    // For zero at precision this holds the absolute precision.
    std::int64_t valuation_;
    mpz_class unit_;
    int precision_;
};

/// a == b (mod p^m). Requires m <= absolute precision of both operands.
bool congruent(const PadicNumber& a, const PadicNumber& b, std::int64_t m);

/// Integer n known at least modulo p^absolute_precision.
PadicNumber integer_to_absolute(const mpz_class& n, std::int64_t prime,
                                std::int64_t absolute_precision);

/// Mixed arithmetic with exact integers; the integer never limits precision.
PadicNumber operator+(const PadicNumber& a, std::int64_t b);
PadicNumber operator-(const PadicNumber& a, std::int64_t b);
PadicNumber operator*(const PadicNumber& a, std::int64_t b);

}  // namespace padic
