#include "hcpadic/analytic.hpp"

#include <algorithm>
#include <string>

namespace padic {

namespace {

mpz_class mod_positive(const mpz_class& a, const mpz_class& m) {
    mpz_class r;
    mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
    return r;
}

mpz_class powm(const mpz_class& b, const mpz_class& e, const mpz_class& m) {
    mpz_class r;
    mpz_powm(r.get_mpz_t(), b.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r;
}

// Floor of log_p(n) for n >= 1.
std::int64_t floor_log(std::int64_t n, std::int64_t p) {
    std::int64_t e = 0;
    while (n >= p) {
        n /= p;
        ++e;
    }
    return e;
}

// Square root of a quadratic residue u modulo an odd prime p (Tonelli-Shanks).
mpz_class sqrt_mod_prime(const mpz_class& u, std::int64_t p) {
    const mpz_class pp = p;
    const mpz_class a = mod_positive(u, pp);
    if (a == 0) return 0;
    mpz_class q = pp - 1;
    unsigned s = 0;
    while (mpz_even_p(q.get_mpz_t())) {
        q /= 2;
        ++s;
    }
    if (s == 1) return powm(a, (pp + 1) / 4, pp);
    mpz_class z = 2;
    while (powm(z, (pp - 1) / 2, pp) != pp - 1) ++z;
    unsigned m = s;
    mpz_class c = powm(z, q, pp);
    mpz_class t = powm(a, q, pp);
    mpz_class r = powm(a, (q + 1) / 2, pp);
    while (t != 1) {
        unsigned i = 0;
        mpz_class t2 = t;
        while (t2 != 1) {
            t2 = mod_positive(t2 * t2, pp);
            ++i;
        }
        mpz_class b = c;
        for (unsigned j = 0; j + i + 1 < m; ++j) b = mod_positive(b * b, pp);
        m = i;
        c = mod_positive(b * b, pp);
        t = mod_positive(t * c, pp);
        r = mod_positive(r * b, pp);
    }
    return r;
}

struct UnitRootCheck {
    bool ok;
    SqrtFailure reason;
    std::string message;
};

UnitRootCheck check_sqrt(const PadicNumber& a) {
    const std::int64_t p = a.prime();
    if (a.is_zero()) {
        return {false, SqrtFailure::Zero, "sqrt of a value that is zero at precision"};
    }
    const std::int64_t v = a.valuation().value();
    if (v % 2 != 0) {
        return {false, SqrtFailure::OddValuation, "no square root: valuation " + std::to_string(v) + " is odd"};
    }
    if (p == 2) {
        if (a.precision() < 3) throw PrecisionError("2-adic square root needs 3 known unit digits");
        const auto d = a.unit_digits(3);
        if (d[1] != 0 || d[2] != 0) {
            return {false, SqrtFailure::TwoAdicDigits,
                    "no square root: 2-adic unit digits a1 = " + std::to_string(d[1]) +
                        ", a2 = " + std::to_string(d[2]) + " (both must be 0)"};
        }
        return {true, SqrtFailure::Zero, {}};
    }
    const mpz_class pp = p;
    const mpz_class u0 = mod_positive(a.unit(), pp);
    if (powm(u0, (pp - 1) / 2, pp) != 1) {
        return {false, SqrtFailure::NonResidue,
                "no square root: leading digit " + u0.get_str() + " is not a quadratic residue mod " +
                    std::to_string(p)};
    }
    return {true, SqrtFailure::Zero, {}};
}

}  // namespace

std::int64_t exp_min_valuation(std::int64_t p) { return p == 2 ? 2 : 1; }

PadicNumber exp_p(const PadicNumber& x) {
    const std::int64_t p = x.prime();
    if (x.is_zero()) {
        return integer_to_absolute(1, p, std::max<std::int64_t>(x.absolute_precision(), 1));
    }
    const std::int64_t v = x.valuation().value();
    if (v < exp_min_valuation(p)) {
        throw DomainError("exp_p: |x|_p = " + x.norm().get_str() + " outside the convergence ball");
    }
    const std::int64_t target = x.absolute_precision();
    PadicNumber sum = integer_to_absolute(1, p, target);
    PadicNumber term = sum;
    for (std::int64_t n = 1;; ++n) {
        // v(x^n / n!) >= n v - (n - 1)/(p - 1) by Legendre's formula; the bound
        // is non-decreasing in n on the convergence ball.
        if (n * v - (n - 1) / (p - 1) >= target) break;
        term = term * x;
        term = term / integer_to_absolute(n, p, valuation_of(n, p) + x.precision());
        sum += term;
    }
    return sum;
}

PadicNumber log_p(const PadicNumber& x) {
    const std::int64_t p = x.prime();
    const PadicNumber y = x - 1;
    if (y.is_zero()) return PadicNumber::zero(p, y.absolute_precision());
    const std::int64_t v = y.valuation().value();
    if (v < 1) throw DomainError("log_p: |x - 1|_p = " + y.norm().get_str() + " is not < 1");
    const std::int64_t target = y.absolute_precision();
    PadicNumber sum = PadicNumber::zero(p, target);
    PadicNumber power = y;
    for (std::int64_t n = 1;; ++n) {
        if (n * v - floor_log(n, p) >= target) break;
        if (n > 1) power = power * y;
        PadicNumber term = power / integer_to_absolute(n, p, valuation_of(n, p) + y.precision());
        if (n % 2 == 0) {
            sum -= term;
        } else {
            sum += term;
        }
    }
    return sum;
}

bool has_sqrt(const PadicNumber& a) { return check_sqrt(a).ok; }

std::pair<PadicNumber, PadicNumber> sqrt_p(const PadicNumber& a) {
    const auto check = check_sqrt(a);
    if (!check.ok) throw SqrtError(check.reason, check.message);
    const std::int64_t p = a.prime();
    const std::int64_t half = a.valuation().value() / 2;
    const int n = a.precision();
    const mpz_class mod = prime_power(p, n);
    const mpz_class& u = a.unit();

    mpz_class r;
    int root_precision = n;
    if (p == 2) {
        r = 1;
        for (int i = 3; i < n; ++i) {
            const mpz_class m = prime_power(2, i + 1);
            if (mod_positive(r * r - u, m) != 0) r += prime_power(2, i - 1);
        }
        root_precision = n - 1;
    } else {
        r = sqrt_mod_prime(u, p);
        // Newton: r <- r - (r^2 - u) / (2r), doubling the known digits each step.
        for (int known = 1; known < n; known *= 2) {
            const mpz_class m = prime_power(p, std::min(2 * known, n));
            mpz_class inv;
            mpz_class twor = mod_positive(2 * r, m);
            mpz_invert(inv.get_mpz_t(), twor.get_mpz_t(), m.get_mpz_t());
            r = mod_positive(r - (r * r - u) * inv, m);
        }
    }
    PadicNumber r1 = PadicNumber::from_unit(p, half, r, root_precision);
    PadicNumber r2 = -r1;
    const auto lead = [](const PadicNumber& x) { return x.unit_digits(1).front(); };
    const auto l1 = lead(r1);
    const auto l2 = lead(r2);
    if (l2 < l1 || (l2 == l1 && r2.unit() < r1.unit())) std::swap(r1, r2);
    return {r1, r2};
}

PadicNumber hensel_lift(const PadicPolynomial& f, const mpz_class& a0, int precision) {
    const std::int64_t p = f.prime();
    const mpz_class pp = p;
    std::int64_t achievable = precision;
    for (const auto& c : f.coefficients()) achievable = std::min(achievable, c.absolute_precision());
    if (achievable < 1) throw PrecisionError("hensel_lift: coefficients known to no digits");
    const PadicPolynomial df = poly_derivative(f);

    const auto coeffs = residues(f, achievable);
    const auto dcoeffs = residues(df, achievable);
    const mpz_class a0r = mod_positive(a0, pp);
    const mpz_class f0 = eval_mod(coeffs, a0r, pp);
    if (f0 != 0) {
        throw HenselError("hensel_lift: F(" + a0r.get_str() + ") = " + f0.get_str() + " != 0 (mod " +
                          std::to_string(p) + ")");
    }
    if (eval_mod(dcoeffs, a0r, pp) == 0) {
        throw HenselError("hensel_lift: F'(" + a0r.get_str() + ") == 0 (mod " + std::to_string(p) +
                          "), not a simple root");
    }

    const mpz_class mod = prime_power(p, achievable);
    mpz_class a = a0r;
    for (int iter = 0;; ++iter) {
        const mpz_class fa = eval_mod(coeffs, a, mod);
        if (fa == 0) break;
        const mpz_class da = eval_mod(dcoeffs, a, mod);
        // F'(a) == F'(a0) (mod p) along the iteration, so it stays a unit.
        if (mpz_divisible_p(da.get_mpz_t(), pp.get_mpz_t())) {
            throw HenselError("hensel_lift: derivative lost its unit part during lifting");
        }
        if (iter > 2 * achievable + 8) throw HenselError("hensel_lift: Newton iteration did not converge");
        mpz_class inv;
        mpz_invert(inv.get_mpz_t(), da.get_mpz_t(), mod.get_mpz_t());
        a = mod_positive(a - fa * inv, mod);
    }
    return integer_to_absolute(a, p, achievable);
}

}  // namespace padic
