#pragma once

/**
 * @file model.hpp
 * @brief p-adic hard-core model on a Cayley tree of order k.
 *
 * A splitting Gibbs measure is determined by a boundary function z with
 * values in E_p = {x : |x|_p = 1, |x - 1|_p <= 1/p} (1/4 for p = 2) that
 * satisfies z_x = prod over successors y of (lambda + z_y) / z_y. This
 * header holds the existence gates, the translation-invariant solver, the
 * period-2 solvers and the residual checks for that recursion.
 */

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hcpadic/padic.hpp"
#include "hcpadic/polynomial.hpp"

namespace hardcore {

using padic::PadicNumber;
using padic::PadicPolynomial;
using padic::Valuation;

/// Invalid model parameters or boundary values.
class ModelError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |x|_p = 1 and |x - 1|_p <= 1/p (<= 1/4 for p = 2).
bool in_Ep(const PadicNumber& x);

class ModelParams {
public:
    /// lambda = exp_p(J); requires |J|_p <= 1/p (1/4 for p = 2).
    static ModelParams from_coupling(std::int64_t p, int k, const PadicNumber& coupling);
    /// lambda validated in E_p; J = log_p(lambda).
    static ModelParams from_fugacity(std::int64_t p, int k, const PadicNumber& fugacity);

    std::int64_t p() const { return p_; }
    int k() const { return k_; }
    const PadicNumber& coupling() const { return coupling_; }
    const PadicNumber& fugacity() const { return fugacity_; }

private:
    ModelParams(std::int64_t p, int k, PadicNumber j, PadicNumber lambda)
        : p_(p), k_(k), coupling_(std::move(j)), fugacity_(std::move(lambda)) {}

    std::int64_t p_;
    int k_;
    PadicNumber coupling_;
    PadicNumber fugacity_;
};

class BoundaryField {
public:
    enum class Kind { Constant, Alternating, Explicit };

    static BoundaryField constant(const PadicNumber& z);
    /// z_even on levels at even distance from the root, z_odd on odd levels.
    static BoundaryField alternating(const PadicNumber& z_even, const PadicNumber& z_odd);
    /// values[n] on level n.
    static BoundaryField explicit_levels(std::vector<PadicNumber> values);

    Kind kind() const { return kind_; }
    const PadicNumber& at_level(int n) const;
    const std::vector<PadicNumber>& values() const { return values_; }

private:
    BoundaryField(Kind kind, std::vector<PadicNumber> values);

    Kind kind_;
    std::vector<PadicNumber> values_;
};

const char* to_string(BoundaryField::Kind kind);

// --- gates and tables ------------------------------------------------------

/// p | 2^k - 1.
bool existence_gate(std::int64_t p, int k);
/// p | 2^k - 1 and p | k - 2 (every p divides 0).
bool periodic_gate(std::int64_t p, int k);

/// k -> primes p <= p_max (all of them if p_max is empty) satisfying the gate.
using PrimeTable = std::map<int, std::vector<std::uint64_t>>;
PrimeTable existence_table(int k_max, std::optional<std::uint64_t> p_max = std::nullopt);
PrimeTable periodic_table(int k_max, std::optional<std::uint64_t> p_max = std::nullopt);

// --- reports -----------------------------------------------------------------

struct GateResult {
    std::string name;
    bool holds;
    std::string witness;
};

/// How far an identity that should vanish was verified: the difference has
/// valuation `valuation` (infinite = zero at precision) and was computed
/// modulo p^checked_to.
struct Residual {
    std::string name;
    Valuation valuation;
    std::int64_t checked_to;

    /// Known to vanish at least to order m.
    bool vanishes_to(std::int64_t m) const { return checked_to >= m && valuation >= m; }
};

Residual make_residual(std::string name, const PadicNumber& difference);

enum class SolutionClass { TranslationInvariant, Period2 };
const char* to_string(SolutionClass c);

struct Solution {
    SolutionClass solution_class;
    /// {z} for TI; {z_even, z_odd} for period 2.
    std::vector<PadicNumber> values;
    bool in_ep;
    std::vector<Residual> residuals;

    BoundaryField boundary() const;
    std::int64_t precision() const;
};

enum class SolveStatus { Solved, GateFailure, Undecided, NumericalFailure };
const char* to_string(SolveStatus s);

struct SolveReport {
    SolveStatus status;
    std::vector<GateResult> gates;
    std::vector<Solution> solutions;
    std::string message;
    std::vector<std::string> notes;

    bool gates_hold() const;
};

// --- translation-invariant solutions -----------------------------------------

/// F(z) = z^(k+1) - (lambda + z)^k.
PadicPolynomial ti_polynomial(const ModelParams& params);

/// g(z) = ((z + lambda) / z)^k, the one-level recursion for constant levels.
PadicNumber g_map(const PadicNumber& z, const ModelParams& params);

/// Hensel lift of F from 1. Gate failures (p does not divide 2^k - 1, or p
/// divides k + 2) produce a GateFailure report.
SolveReport ti_solve(const ModelParams& params, int precision);

/// Residues r mod p^m with r == 1 (mod p) and f(r) == 0 (mod p^m).
std::vector<mpz_class> scan_roots_in_ep_window(const PadicPolynomial& f, std::int64_t m);

/// Roots of F in the E_p window mod p^m; empty when the TI gates fail.
std::vector<mpz_class> ti_uniqueness_scan(const ModelParams& params, std::int64_t m);

// --- period-2 solutions ------------------------------------------------------

/// L(z) = (lambda z^k + (lambda + z)^k)^k - z (lambda + z)^(k^2).
PadicPolynomial l_polynomial(const ModelParams& params);
/// M(z) = (lambda + z)^k - z^(k+1).
PadicPolynomial m_polynomial(const ModelParams& params);
/// U from its closed-form sum.
PadicPolynomial u_polynomial_closed_form(const ModelParams& params);
/// U = L / M, checked coefficientwise against the closed form. Throws
/// ModelError if the two constructions disagree.
PadicPolynomial u_polynomial(const ModelParams& params);

/// Hensel lift of U from 1 for p >= 7 when the periodic gate holds.
SolveReport periodic_solve_general(const ModelParams& params, int precision);

/// k = 2, p = 3, |lambda - 13|_3 <= 1/27: the two roots of
/// z^2 - (lambda^2 - 2 lambda) z + lambda^2 via the quadratic formula.
SolveReport periodic_solve_k2(const ModelParams& params, int precision);

/// Valuation of z - ((lambda + z')/z')^k, z' the value on the next level.
/// Constant and alternating fields only.
Residual functional_equation_residual(const BoundaryField& z, const ModelParams& params);

}  // namespace hardcore
