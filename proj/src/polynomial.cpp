#include "hcpadic/polynomial.hpp"

#include <algorithm>
#include <string>

namespace padic {

namespace {

constexpr std::int64_t kUnbounded = std::numeric_limits<std::int32_t>::max();

}  // namespace

PadicPolynomial::PadicPolynomial(std::int64_t prime, std::vector<PadicNumber> coefficients)
    : prime_(prime), coeffs_(std::move(coefficients)), zero_precision_(kUnbounded) {
    for (std::size_t i = 0; i < coeffs_.size(); ++i) {
        const auto& c = coeffs_[i];
        if (c.prime() != prime_) throw PrimeMismatch("polynomial coefficient over a different prime");
        if (c.valuation() < 0) {
            throw PadicError("coefficient of z^" + std::to_string(i) + " is not a p-adic integer");
        }
        zero_precision_ = std::min(zero_precision_, c.absolute_precision());
    }
    trim();
}

void PadicPolynomial::trim() {
    while (!coeffs_.empty() && coeffs_.back().is_zero()) {
        zero_precision_ = std::min(zero_precision_, coeffs_.back().absolute_precision());
        coeffs_.pop_back();
    }
}

PadicPolynomial PadicPolynomial::constant(const PadicNumber& c) { return {c.prime(), {c}}; }

PadicPolynomial PadicPolynomial::variable(std::int64_t prime, int precision) {
    return {prime, {PadicNumber::zero(prime, precision), PadicNumber::from_integer(1, prime, precision)}};
}

PadicNumber PadicPolynomial::coefficient(int i) const {
    if (i >= 0 && i <= degree()) return coeffs_[static_cast<std::size_t>(i)];
    return PadicNumber::zero(prime_, zero_precision_);
}

PadicPolynomial operator+(const PadicPolynomial& a, const PadicPolynomial& b) {
    const int n = std::max(a.degree(), b.degree()) + 1;
    std::vector<PadicNumber> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(a.coefficient(i) + b.coefficient(i));
    if (out.empty()) out.push_back(a.coefficient(0) + b.coefficient(0));
    return {a.prime(), std::move(out)};
}

PadicPolynomial operator-(const PadicPolynomial& a, const PadicPolynomial& b) {
    const int n = std::max(a.degree(), b.degree()) + 1;
    std::vector<PadicNumber> out;
    out.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out.push_back(a.coefficient(i) - b.coefficient(i));
    if (out.empty()) out.push_back(a.coefficient(0) - b.coefficient(0));
    return {a.prime(), std::move(out)};
}

PadicPolynomial operator*(const PadicPolynomial& a, const PadicPolynomial& b) {
    if (a.degree() < 0 || b.degree() < 0) return {a.prime(), {a.coefficient(0) * b.coefficient(0)}};
    const auto da = static_cast<std::size_t>(a.degree());
    const auto db = static_cast<std::size_t>(b.degree());
    std::vector<PadicNumber> out(da + db + 1, PadicNumber::zero(a.prime(), kUnbounded));
    for (std::size_t i = 0; i <= da; ++i) {
        for (std::size_t j = 0; j <= db; ++j) out[i + j] += a.coeffs_[i] * b.coeffs_[j];
    }
    return {a.prime(), std::move(out)};
}

PadicPolynomial operator*(const PadicNumber& c, const PadicPolynomial& a) {
    std::vector<PadicNumber> out;
    out.reserve(a.coeffs_.size());
    for (const auto& x : a.coeffs_) out.push_back(c * x);
    if (out.empty()) out.push_back(c * a.coefficient(0));
    return {a.prime(), std::move(out)};
}

PadicPolynomial PadicPolynomial::pow(unsigned e) const {
    if (e == 0) {
        int n = 1;
        for (const auto& c : coeffs_) n = std::max(n, c.precision());
        return constant(PadicNumber::from_integer(1, prime_, n));
    }
    PadicPolynomial result = *this;
    PadicPolynomial base = *this;
    --e;
    while (e > 0) {
        if (e & 1U) result = result * base;
        e >>= 1U;
        if (e > 0) base = base * base;
    }
    return result;
}

PadicPolynomial PadicPolynomial::shift(int s) const {
    if (s == 0 || coeffs_.empty()) return *this;
    std::vector<PadicNumber> out(static_cast<std::size_t>(s), PadicNumber::zero(prime_, kUnbounded));
    out.insert(out.end(), coeffs_.begin(), coeffs_.end());
    return {prime_, std::move(out)};
}

PadicNumber poly_eval(const PadicPolynomial& f, const PadicNumber& x) {
    if (f.prime() != x.prime()) throw PrimeMismatch("poly_eval: prime mismatch");
    if (f.degree() < 0) return f.coefficient(0);
    const auto& c = f.coefficients();
    PadicNumber acc = c.back();
    for (int i = f.degree() - 1; i >= 0; --i) acc = acc * x + c[static_cast<std::size_t>(i)];
    return acc;
}

PadicPolynomial poly_derivative(const PadicPolynomial& f) {
    std::vector<PadicNumber> out;
    for (int i = 1; i <= f.degree(); ++i) out.push_back(f.coefficients()[static_cast<std::size_t>(i)] * i);
    if (out.empty()) out.push_back(f.coefficient(f.degree() + 1));
    return {f.prime(), std::move(out)};
}

PadicPolynomial poly_divide_exact(const PadicPolynomial& num, const PadicPolynomial& den) {
    if (num.prime() != den.prime()) throw PrimeMismatch("poly_divide_exact: prime mismatch");
    if (den.degree() < 0) throw DivisionByZero("poly_divide_exact: zero divisor");
    const PadicNumber lead = den.coefficients().back();
    if (lead.valuation() != Valuation(0)) {
        throw PadicError("poly_divide_exact: divisor's leading coefficient is not a unit");
    }
    if (num.degree() < den.degree()) {
        for (const auto& c : num.coefficients()) {
            if (!c.is_zero()) throw PadicError("poly_divide_exact: non-zero remainder");
        }
        return {num.prime(), {num.coefficient(0)}};
    }
    std::vector<PadicNumber> rem = num.coefficients();
    const int dd = den.degree();
    const int qd = num.degree() - dd;
    std::vector<PadicNumber> quot(static_cast<std::size_t>(qd + 1), PadicNumber::zero(num.prime(), kUnbounded));
    for (int i = qd; i >= 0; --i) {
        const PadicNumber q = rem[static_cast<std::size_t>(i + dd)] / lead;
        quot[static_cast<std::size_t>(i)] = q;
        for (int j = 0; j <= dd; ++j) {
            rem[static_cast<std::size_t>(i + j)] -= q * den.coefficients()[static_cast<std::size_t>(j)];
        }
    }
    for (int i = 0; i < dd; ++i) {
        const auto& r = rem[static_cast<std::size_t>(i)];
        if (!r.is_zero()) {
            throw PadicError("poly_divide_exact: remainder coefficient of z^" + std::to_string(i) +
                             " has valuation " + r.valuation().to_string());
        }
    }
    return {num.prime(), std::move(quot)};
}

bool congruent(const PadicPolynomial& a, const PadicPolynomial& b, std::int64_t m) {
    const int n = std::max(a.degree(), b.degree());
    for (int i = 0; i <= n; ++i) {
        if (!congruent(a.coefficient(i), b.coefficient(i), m)) return false;
    }
    return true;
}

std::vector<mpz_class> residues(const PadicPolynomial& f, std::int64_t m) {
    std::vector<mpz_class> out;
    out.reserve(f.coefficients().size());
    for (const auto& c : f.coefficients()) out.push_back(c.residue(m));
    return out;
}

mpz_class eval_mod(const std::vector<mpz_class>& coeffs, const mpz_class& x, const mpz_class& modulus) {
    mpz_class acc = 0;
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
        acc = acc * x + *it;
        mpz_mod(acc.get_mpz_t(), acc.get_mpz_t(), modulus.get_mpz_t());
    }
    return acc;
}

}  // namespace padic
