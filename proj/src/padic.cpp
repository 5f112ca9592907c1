#include "hcpadic/padic.hpp"

#include <algorithm>
#include <sstream>

namespace padic {

std::string Valuation::to_string() const {
    return is_infinite() ? std::string("inf") : std::to_string(value_);
}

mpz_class prime_power(std::int64_t p, std::int64_t e) {
    mpz_class r;
    mpz_ui_pow_ui(r.get_mpz_t(), static_cast<unsigned long>(p), static_cast<unsigned long>(e));
    return r;
}

std::int64_t valuation_of(const mpz_class& n, std::int64_t p) {
    if (n == 0) throw PadicError("valuation of 0 is infinite");
    mpz_class m = abs(n);
    const mpz_class pp = p;
    std::int64_t v = 0;
    while (mpz_divisible_p(m.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(m.get_mpz_t(), m.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    return v;
}

namespace {

void require_prime(std::int64_t p) {
    if (p < 2) throw PadicError("prime must be >= 2, got " + std::to_string(p));
}

void require_same_prime(const PadicNumber& a, const PadicNumber& b) {
    if (a.prime() != b.prime()) {
        throw PrimeMismatch("prime mismatch: " + std::to_string(a.prime()) + " vs " +
                            std::to_string(b.prime()));
    }
}

mpz_class mod_positive(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Strips p from n, returning the number of factors removed.
std::int64_t strip(mpz_class& n, std::int64_t p) {
    const mpz_class pp = p;
    std::int64_t v = 0;
    while (n != 0 && mpz_divisible_p(n.get_mpz_t(), pp.get_mpz_t())) {
        mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), pp.get_mpz_t());
        ++v;
    }
    return v;
}

}  // namespace

PadicNumber PadicNumber::from_rational(const mpz_class& num, const mpz_class& den, std::int64_t prime,
                                       int precision) {
    require_prime(prime);
    if (den == 0) throw DivisionByZero("from_rational: zero denominator");
    if (precision < 1) throw PrecisionError("precision must be >= 1");
    if (num == 0) return zero(prime, precision);
    mpz_class n = num;
    mpz_class d = den;
    const std::int64_t v = strip(n, prime) - strip(d, prime);
    const mpz_class mod = prime_power(prime, precision);
    mpz_class inv;
    mpz_class dm = mod_positive(d, mod);
    mpz_invert(inv.get_mpz_t(), dm.get_mpz_t(), mod.get_mpz_t());
    return PadicNumber(prime, v, mod_positive(mod_positive(n, mod) * inv, mod), precision);
}

PadicNumber PadicNumber::from_rational(const mpq_class& q, std::int64_t prime, int precision) {
    return from_rational(q.get_num(), q.get_den(), prime, precision);
}

PadicNumber PadicNumber::from_integer(const mpz_class& n, std::int64_t prime, int precision) {
    return from_rational(n, 1, prime, precision);
}

PadicNumber PadicNumber::from_unit(std::int64_t prime, std::int64_t valuation, const mpz_class& unit,
                                   int precision) {
    require_prime(prime);
    if (precision < 1) throw PrecisionError("precision must be >= 1");
    mpz_class u = mod_positive(unit, prime_power(prime, precision));
    if (mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(prime))) {
        throw PadicError("from_unit: unit divisible by p");
    }
    return PadicNumber(prime, valuation, std::move(u), precision);
}

PadicNumber PadicNumber::zero(std::int64_t prime, std::int64_t absolute_precision) {
    require_prime(prime);
    return PadicNumber(prime, absolute_precision, 0, 0);
}

PadicNumber PadicNumber::from_digits(std::int64_t prime, const std::vector<std::int64_t>& digits) {
    require_prime(prime);
    if (digits.empty()) throw PrecisionError("from_digits: empty digit list");
    mpz_class n = 0;
    for (auto it = digits.rbegin(); it != digits.rend(); ++it) {
        if (*it < 0 || *it >= prime) {
            throw PadicError("digit " + std::to_string(*it) + " out of range for p = " +
                             std::to_string(prime));
        }
        n = n * prime + *it;
    }
    const auto known = static_cast<std::int64_t>(digits.size());
    if (n == 0) return zero(prime, known);
    const std::int64_t v = strip(n, prime);
    return PadicNumber(prime, v, n, static_cast<int>(known - v));
}

Valuation PadicNumber::valuation() const {
    return is_zero() ? Valuation::infinite() : Valuation(valuation_);
}

mpq_class PadicNumber::norm() const {
    if (is_zero()) return 0;
    mpq_class r;
    if (valuation_ >= 0) {
        r = mpq_class(mpz_class(1), prime_power(prime_, valuation_));
    } else {
        r = mpq_class(prime_power(prime_, -valuation_), mpz_class(1));
    }
    r.canonicalize();
    return r;
}

std::vector<std::int64_t> PadicNumber::unit_digits(int count) const {
    if (count > precision_) {
        throw PrecisionError("requested " + std::to_string(count) + " unit digits, only " +
                             std::to_string(precision_) + " known");
    }
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    mpz_class u = unit_;
    for (int i = 0; i < count; ++i) {
        out.push_back(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(prime_)));
    }
    return out;
}

std::vector<std::int64_t> PadicNumber::digits(std::int64_t count) const {
    if (count > absolute_precision()) {
        throw PrecisionError("requested " + std::to_string(count) + " digits, value known mod p^" +
                             std::to_string(absolute_precision()));
    }
    const mpz_class r = residue(count);
    std::vector<std::int64_t> out;
    mpz_class u = r;
    for (std::int64_t i = 0; i < count; ++i) {
        out.push_back(mpz_fdiv_q_ui(u.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(prime_)));
    }
    return out;
}

mpz_class PadicNumber::residue(std::int64_t m) const {
    if (m > absolute_precision()) {
        throw PrecisionError("residue mod p^" + std::to_string(m) + " requested, value known mod p^" +
                             std::to_string(absolute_precision()));
    }
    if (m <= 0) return 0;
    if (is_zero() || valuation_ >= m) return 0;
    if (valuation_ < 0) throw PadicError("residue of a non-integral p-adic number");
    return mod_positive(unit_ * prime_power(prime_, valuation_), prime_power(prime_, m));
}

std::int64_t PadicNumber::vanishing_order() const { return valuation_; }

PadicNumber PadicNumber::with_precision(int n) const {
    if (is_zero() || n >= precision_) return *this;
    if (n < 1) return zero(prime_, valuation_ + std::max(n, 0));
    return PadicNumber(prime_, valuation_, mod_positive(unit_, prime_power(prime_, n)), n);
}

PadicNumber PadicNumber::operator-() const {
    if (is_zero()) return *this;
    return PadicNumber(prime_, valuation_, prime_power(prime_, precision_) - unit_, precision_);
}

PadicNumber operator+(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    const std::int64_t p = a.prime_;
    const std::int64_t abs_prec = std::min(a.absolute_precision(), b.absolute_precision());
    if (a.is_zero() && b.is_zero()) return PadicNumber::zero(p, abs_prec);
    std::int64_t v;
    if (a.is_zero()) {
        v = b.valuation_;
    } else if (b.is_zero()) {
        v = a.valuation_;
    } else {
        v = std::min(a.valuation_, b.valuation_);
    }
    if (abs_prec <= v) return PadicNumber::zero(p, abs_prec);
    const mpz_class mod = prime_power(p, abs_prec - v);
    mpz_class s = 0;
    if (!a.is_zero()) s += a.unit_ * prime_power(p, a.valuation_ - v);
    if (!b.is_zero()) s += b.unit_ * prime_power(p, b.valuation_ - v);
    s = mod_positive(s, mod);
    if (s == 0) return PadicNumber::zero(p, abs_prec);
    const std::int64_t t = strip(s, p);
    return PadicNumber(p, v + t, std::move(s), static_cast<int>(abs_prec - v - t));
}

PadicNumber operator-(const PadicNumber& a, const PadicNumber& b) { return a + (-b); }

PadicNumber operator*(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    const std::int64_t p = a.prime_;
    if (a.is_zero() || b.is_zero()) {
        // A zero known mod p^A times something of valuation w is known mod
        // p^(A+w); for zero operands valuation_ already stores A.
        return PadicNumber::zero(p, a.valuation_ + b.valuation_);
    }
    const int n = std::min(a.precision_, b.precision_);
    return PadicNumber(p, a.valuation_ + b.valuation_,
                       mod_positive(a.unit_ * b.unit_, prime_power(p, n)), n);
}

PadicNumber operator/(const PadicNumber& a, const PadicNumber& b) {
    require_same_prime(a, b);
    if (b.is_zero()) {
        throw DivisionByZero("division by a value that is zero mod p^" +
                             std::to_string(b.absolute_precision()));
    }
    const std::int64_t p = a.prime_;
    if (a.is_zero()) return PadicNumber::zero(p, a.valuation_ - b.valuation_);
    const int n = std::min(a.precision_, b.precision_);
    const mpz_class mod = prime_power(p, n);
    mpz_class inv;
    mpz_class bu = mod_positive(b.unit_, mod);
    mpz_invert(inv.get_mpz_t(), bu.get_mpz_t(), mod.get_mpz_t());
    return PadicNumber(p, a.valuation_ - b.valuation_, mod_positive(a.unit_ * inv, mod), n);
}

PadicNumber PadicNumber::pow(std::uint64_t e) const {
    if (e == 0) {
        return from_integer(1, prime_, std::max(precision_, 1));
    }
    if (is_zero()) {
        return zero(prime_, valuation_ * static_cast<std::int64_t>(e));
    }
    const mpz_class mod = prime_power(prime_, precision_);
    mpz_class u;
    mpz_powm_ui(u.get_mpz_t(), unit_.get_mpz_t(), static_cast<unsigned long>(e), mod.get_mpz_t());
    return PadicNumber(prime_, valuation_ * static_cast<std::int64_t>(e), std::move(u), precision_);
}

std::string PadicNumber::to_string() const {
    std::ostringstream os;
    const std::string p = std::to_string(prime_);
    if (is_zero()) {
        os << "O(" << p << "^" << valuation_ << ")";
        return os.str();
    }
    os << p << "^" << valuation_ << " * (";
    const auto ds = unit_digits(precision_);
    for (std::size_t i = 0; i < ds.size(); ++i) {
        if (i > 0) os << " + ";
        os << ds[i];
        if (i == 1) os << "*" << p;
        if (i > 1) os << "*" << p << "^" << i;
    }
    os << ") + O(" << p << "^" << absolute_precision() << ")";
    return os.str();
}

bool congruent(const PadicNumber& a, const PadicNumber& b, std::int64_t m) {
    require_same_prime(a, b);
    if (m > a.absolute_precision() || m > b.absolute_precision()) {
        throw PrecisionError("congruence mod p^" + std::to_string(m) + " exceeds known precision (" +
                             std::to_string(a.absolute_precision()) + ", " +
                             std::to_string(b.absolute_precision()) + ")");
    }
    const PadicNumber d = a - b;
    return d.vanishing_order() >= m;
}

PadicNumber integer_to_absolute(const mpz_class& n, std::int64_t prime,
                                std::int64_t absolute_precision) {
    if (n == 0) return PadicNumber::zero(prime, absolute_precision);
    const std::int64_t v = valuation_of(n, prime);
    const auto rel = std::max<std::int64_t>(1, absolute_precision - v);
    return PadicNumber::from_integer(n, prime, static_cast<int>(rel));
}

PadicNumber operator+(const PadicNumber& a, std::int64_t b) {
    return a + integer_to_absolute(b, a.prime(), a.absolute_precision());
}

PadicNumber operator-(const PadicNumber& a, std::int64_t b) {
    return a - integer_to_absolute(b, a.prime(), a.absolute_precision());
}

PadicNumber operator*(const PadicNumber& a, std::int64_t b) {
    if (b == 0) return PadicNumber::zero(a.prime(), std::max<std::int64_t>(a.absolute_precision(), 0));
    const std::int64_t v = valuation_of(b, a.prime());
    return a * integer_to_absolute(b, a.prime(), v + std::max(a.precision(), 1));
}

}  // namespace padic
