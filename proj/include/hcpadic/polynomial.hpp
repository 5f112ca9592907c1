#pragma once

#include <cstdint>
#include <vector>

#include "hcpadic/padic.hpp"

namespace padic {

/// Polynomial over Z_p, coefficients stored lowest degree first.
///
/// Every coefficient has norm <= 1. Trailing coefficients that are zero at
/// precision are dropped, so degree() is the index of the last non-zero one;
/// the zero polynomial has degree -1.
class PadicPolynomial {
public:
    PadicPolynomial(std::int64_t prime, std::vector<PadicNumber> coefficients);

    static PadicPolynomial constant(const PadicNumber& c);
    /// The monomial z, exact to `precision` digits.
    static PadicPolynomial variable(std::int64_t prime, int precision);

    std::int64_t prime() const { return prime_; }
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<PadicNumber>& coefficients() const { return coeffs_; }
    /// Coefficient of z^i (zero past the degree, known to `precision` of the
    /// leading coefficient).
    PadicNumber coefficient(int i) const;

    friend PadicPolynomial operator+(const PadicPolynomial& a, const PadicPolynomial& b);
    friend PadicPolynomial operator-(const PadicPolynomial& a, const PadicPolynomial& b);
    friend PadicPolynomial operator*(const PadicPolynomial& a, const PadicPolynomial& b);
    friend PadicPolynomial operator*(const PadicNumber& c, const PadicPolynomial& a);
    PadicPolynomial pow(unsigned e) const;
    /// z^s * this
    PadicPolynomial shift(int s) const;

private:
    void trim();

    std::int64_t prime_;
    std::vector<PadicNumber> coeffs_;
    // Absolute precision used for coefficients that vanish entirely.
    std::int64_t zero_precision_;
};

/// Horner evaluation.
PadicNumber poly_eval(const PadicPolynomial& f, const PadicNumber& x);
PadicPolynomial poly_derivative(const PadicPolynomial& f);

/// Quotient of num by den, which must divide it exactly. den's leading
/// coefficient must be a unit. Throws PadicError if the remainder is not
/// zero at working precision.
PadicPolynomial poly_divide_exact(const PadicPolynomial& num, const PadicPolynomial& den);

/// Coefficientwise a == b (mod p^m).
bool congruent(const PadicPolynomial& a, const PadicPolynomial& b, std::int64_t m);

/// The polynomial with coefficients reduced to integers mod p^m.
std::vector<mpz_class> residues(const PadicPolynomial& f, std::int64_t m);

/// Evaluates integer coefficients (lowest first) at x mod `modulus`.
mpz_class eval_mod(const std::vector<mpz_class>& coeffs, const mpz_class& x, const mpz_class& modulus);

}  // namespace padic
