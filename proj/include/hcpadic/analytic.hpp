#pragma once

#include <cstdint>
#include <utility>

#include "hcpadic/padic.hpp"
#include "hcpadic/polynomial.hpp"

namespace padic {

/// Why a square root does not exist.
enum class SqrtFailure { Zero, OddValuation, NonResidue, TwoAdicDigits };

class SqrtError : public PadicError {
public:
    SqrtError(SqrtFailure reason, const std::string& what) : PadicError(what), reason_(reason) {}
    SqrtFailure reason() const { return reason_; }

private:
    SqrtFailure reason_;
};

/// Simple-root hypotheses of Hensel's lemma fail at the seed.
class HenselError : public PadicError {
public:
    using PadicError::PadicError;
};

/// Smallest valuation an argument of exp_p may have: 1 for odd p, 2 for p = 2.
std::int64_t exp_min_valuation(std::int64_t p);

/// sum x^n / n!, for v(x) >= exp_min_valuation(p). The result is known
/// mod p^(v(x) + N).
PadicNumber exp_p(const PadicNumber& x);

/// sum (-1)^(n+1) (x-1)^n / n, for |x - 1|_p < 1.
PadicNumber log_p(const PadicNumber& x);

/// Both square roots of a, ordered so that the first has the smaller
/// leading unit digit (ties broken by the smaller unit residue). For p = 2
/// the roots carry one digit less than a.
std::pair<PadicNumber, PadicNumber> sqrt_p(const PadicNumber& a);

/// Decides whether a has a square root without computing it.
bool has_sqrt(const PadicNumber& a);

/// Newton lifting of the simple root a0 (mod p) of f to a root known mod
/// p^N', N' = min(precision, coefficient precision).
PadicNumber hensel_lift(const PadicPolynomial& f, const mpz_class& a0, int precision);

}  // namespace padic
