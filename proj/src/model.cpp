#include "hcpadic/model.hpp"

#include <algorithm>
#include <sstream>

#include "hcpadic/analytic.hpp"
#include "hcpadic/number_theory.hpp"

namespace hardcore {

using padic::integer_to_absolute;

namespace {

// Minimal valuation of x - 1 for x in E_p.
std::int64_t ep_radius(std::int64_t p) { return p == 2 ? 2 : 1; }

std::int64_t pow2_mod(int k, std::int64_t p) {
    mpz_class r;
    const mpz_class two = 2;
    const mpz_class pp = p;
    mpz_powm_ui(r.get_mpz_t(), two.get_mpz_t(), static_cast<unsigned long>(k), pp.get_mpz_t());
    return r.get_si();
}

mpz_class binomial(int n, int k) {
    mpz_class r;
    mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
    return r;
}

// (lambda + z)^e, expanded by the binomial theorem.
PadicPolynomial shifted_power(const PadicNumber& lambda, int e) {
    std::vector<PadicNumber> c;
    c.reserve(static_cast<std::size_t>(e + 1));
    for (int i = 0; i <= e; ++i) {
        const PadicNumber l = lambda.pow(static_cast<std::uint64_t>(e - i));
        c.push_back(l * integer_to_absolute(binomial(e, i), lambda.prime(),
                                            padic::valuation_of(binomial(e, i), lambda.prime()) +
                                                lambda.precision()));
    }
    return {lambda.prime(), std::move(c)};
}

PadicPolynomial monomial(std::int64_t p, int degree, int precision) {
    return PadicPolynomial::variable(p, precision).pow(static_cast<unsigned>(degree));
}

std::string join(const std::vector<mpz_class>& xs) {
    std::ostringstream os;
    os << "[";
    for (std::size_t i = 0; i < xs.size(); ++i) os << (i ? ", " : "") << xs[i].get_str();
    os << "]";
    return os.str();
}

GateResult gate_mersenne(std::int64_t p, int k) {
    const std::int64_t r = (pow2_mod(k, p) - 1 + p) % p;
    return {"p | 2^k - 1", r == 0, "(2^" + std::to_string(k) + " - 1) mod " + std::to_string(p) + " = " +
                                       std::to_string(r)};
}

GateResult gate_not_k_plus_2(std::int64_t p, int k) {
    const std::int64_t r = (k + 2) % p;
    return {"p does not divide k + 2", r != 0,
            "(k + 2) mod " + std::to_string(p) + " = " + std::to_string(r)};
}

GateResult gate_k_minus_2(std::int64_t p, int k) {
    const std::int64_t r = ((k - 2) % p + p) % p;
    return {"p | k - 2", r == 0, "(k - 2) mod " + std::to_string(p) + " = " + std::to_string(r)};
}

int working_precision(const ModelParams& params, int requested) {
    return static_cast<int>(std::min<std::int64_t>(requested, params.fugacity().absolute_precision()));
}

std::string residue_str(const PadicNumber& x, std::int64_t m) {
    return x.residue(std::min(m, x.absolute_precision())).get_str();
}

}  // namespace

bool in_Ep(const PadicNumber& x) {
    if (x.is_zero() || x.valuation() != Valuation(0)) return false;
    return (x - 1).vanishing_order() >= ep_radius(x.prime());
}

ModelParams ModelParams::from_coupling(std::int64_t p, int k, const PadicNumber& coupling) {
    if (!is_prime(static_cast<std::uint64_t>(p))) throw ModelError(std::to_string(p) + " is not prime");
    if (k < 1) throw ModelError("tree order k must be >= 1");
    if (coupling.prime() != p) throw ModelError("coupling J is over a different prime");
    if (coupling.vanishing_order() < padic::exp_min_valuation(p)) {
        throw ModelError("|J|_p = " + coupling.norm().get_str() + " exceeds the exp_p convergence bound");
    }
    PadicNumber lambda = padic::exp_p(coupling);
    return {p, k, coupling, std::move(lambda)};
}

ModelParams ModelParams::from_fugacity(std::int64_t p, int k, const PadicNumber& fugacity) {
    if (!is_prime(static_cast<std::uint64_t>(p))) throw ModelError(std::to_string(p) + " is not prime");
    if (k < 1) throw ModelError("tree order k must be >= 1");
    if (fugacity.prime() != p) throw ModelError("fugacity lambda is over a different prime");
    if (!in_Ep(fugacity)) throw ModelError("lambda = " + fugacity.to_string() + " is not in E_p");
    PadicNumber j = padic::log_p(fugacity);
    return {p, k, std::move(j), fugacity};
}

BoundaryField::BoundaryField(Kind kind, std::vector<PadicNumber> values)
    : kind_(kind), values_(std::move(values)) {
    if (values_.empty()) throw ModelError("boundary field needs at least one value");
    for (const auto& v : values_) {
        if (!in_Ep(v)) throw ModelError("boundary value " + v.to_string() + " is not in E_p");
    }
}

BoundaryField BoundaryField::constant(const PadicNumber& z) { return {Kind::Constant, {z}}; }

BoundaryField BoundaryField::alternating(const PadicNumber& z_even, const PadicNumber& z_odd) {
    return {Kind::Alternating, {z_even, z_odd}};
}

BoundaryField BoundaryField::explicit_levels(std::vector<PadicNumber> values) {
    return {Kind::Explicit, std::move(values)};
}

const PadicNumber& BoundaryField::at_level(int n) const {
    switch (kind_) {
        case Kind::Constant:
            return values_[0];
        case Kind::Alternating:
            return values_[static_cast<std::size_t>(n % 2)];
        case Kind::Explicit:
            if (n < 0 || static_cast<std::size_t>(n) >= values_.size()) {
                throw ModelError("boundary field has no value for level " + std::to_string(n));
            }
            return values_[static_cast<std::size_t>(n)];
    }
    throw ModelError("unknown boundary kind");
}

const char* to_string(BoundaryField::Kind kind) {
    switch (kind) {
        case BoundaryField::Kind::Constant:
            return "constant";
        case BoundaryField::Kind::Alternating:
            return "alternating";
        case BoundaryField::Kind::Explicit:
            return "explicit";
    }
    return "?";
}

bool existence_gate(std::int64_t p, int k) { return pow2_mod(k, p) == 1 % p; }

bool periodic_gate(std::int64_t p, int k) { return existence_gate(p, k) && divides(p, k - 2); }

namespace {

PrimeTable make_table(int k_max, std::optional<std::uint64_t> p_max, bool periodic) {
    if (k_max < 1 || k_max > 64) throw ModelError("k_max must be in [1, 64]");
    PrimeTable table;
    for (int k = 1; k <= k_max; ++k) {
        auto& row = table[k];
        for (std::uint64_t p : prime_factors(mersenne(static_cast<unsigned>(k)))) {
            if (p_max && p > *p_max) continue;
            if (periodic && !divides(static_cast<std::int64_t>(p), k - 2)) continue;
            row.push_back(p);
        }
    }
    return table;
}

}  // namespace

PrimeTable existence_table(int k_max, std::optional<std::uint64_t> p_max) {
    return make_table(k_max, p_max, false);
}

PrimeTable periodic_table(int k_max, std::optional<std::uint64_t> p_max) {
    return make_table(k_max, p_max, true);
}

Residual make_residual(std::string name, const PadicNumber& difference) {
    return {std::move(name), difference.valuation(), difference.absolute_precision()};
}

const char* to_string(SolutionClass c) {
    return c == SolutionClass::TranslationInvariant ? "TI" : "period-2";
}

const char* to_string(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved:
            return "solved";
        case SolveStatus::GateFailure:
            return "gate_failure";
        case SolveStatus::Undecided:
            return "undecided";
        case SolveStatus::NumericalFailure:
            return "numerical_failure";
    }
    return "?";
}

BoundaryField Solution::boundary() const {
    if (solution_class == SolutionClass::TranslationInvariant) return BoundaryField::constant(values.at(0));
    return BoundaryField::alternating(values.at(0), values.at(1));
}

std::int64_t Solution::precision() const {
    std::int64_t m = std::numeric_limits<std::int64_t>::max();
    for (const auto& v : values) m = std::min(m, v.absolute_precision());
    return m;
}

bool SolveReport::gates_hold() const {
    return std::all_of(gates.begin(), gates.end(), [](const GateResult& g) { return g.holds; });
}

PadicPolynomial ti_polynomial(const ModelParams& params) {
    const auto& lambda = params.fugacity();
    const int k = params.k();
    return monomial(params.p(), k + 1, lambda.precision()) - shifted_power(lambda, k);
}

PadicNumber g_map(const PadicNumber& z, const ModelParams& params) {
    return ((z + params.fugacity()) / z).pow(static_cast<std::uint64_t>(params.k()));
}

SolveReport ti_solve(const ModelParams& params, int precision) {
    const std::int64_t p = params.p();
    const int k = params.k();
    SolveReport report{SolveStatus::Solved, {gate_mersenne(p, k), gate_not_k_plus_2(p, k)}, {}, {}, {}};
    if (!report.gates_hold()) {
        report.status = SolveStatus::GateFailure;
        report.message = "translation-invariant existence gates fail";
        return report;
    }
    const int n = working_precision(params, precision);
    const PadicPolynomial f = ti_polynomial(params);
    PadicNumber z = padic::hensel_lift(f, 1, n);

    Solution s{SolutionClass::TranslationInvariant, {z}, in_Ep(z), {}};
    s.residuals.push_back(make_residual("F(z)", poly_eval(f, z)));
    s.residuals.push_back(functional_equation_residual(BoundaryField::constant(z), params));
    report.solutions.push_back(std::move(s));
    report.message = "unique translation-invariant solution in E_p";
    return report;
}

std::vector<mpz_class> scan_roots_in_ep_window(const PadicPolynomial& f, std::int64_t m) {
    const std::int64_t p = f.prime();
    const mpz_class mod = padic::prime_power(p, m);
    const auto coeffs = padic::residues(f, m);
    std::vector<mpz_class> roots;
    for (mpz_class r = 1; r < mod; r += p) {
        if (padic::eval_mod(coeffs, r, mod) == 0) roots.push_back(r);
    }
    return roots;
}

std::vector<mpz_class> ti_uniqueness_scan(const ModelParams& params, std::int64_t m) {
    if (!existence_gate(params.p(), params.k()) || divides(params.p(), params.k() + 2)) return {};
    return scan_roots_in_ep_window(ti_polynomial(params), m);
}

PadicPolynomial m_polynomial(const ModelParams& params) {
    return shifted_power(params.fugacity(), params.k()) -
           monomial(params.p(), params.k() + 1, params.fugacity().precision());
}

PadicPolynomial l_polynomial(const ModelParams& params) {
    const auto& lambda = params.fugacity();
    const int k = params.k();
    const std::int64_t p = params.p();
    const int n = lambda.precision();
    const PadicPolynomial zk = monomial(p, k, n);
    const PadicPolynomial inner = lambda * zk + shifted_power(lambda, k);
    return inner.pow(static_cast<unsigned>(k)) - shifted_power(lambda, k * k).shift(1);
}

PadicPolynomial u_polynomial_closed_form(const ModelParams& params) {
    const auto& lambda = params.fugacity();
    const int k = params.k();
    const std::int64_t p = params.p();
    const int n = lambda.precision();
    const auto integer = [&](const mpz_class& c) {
        return c == 0 ? PadicNumber::zero(p, n) : integer_to_absolute(c, p, padic::valuation_of(c, p) + n);
    };
    const PadicPolynomial mz = m_polynomial(params);
    const PadicPolynomial lz = shifted_power(lambda, 1);

    // (1 - k) z^(k^2) + k ((lambda + z) z^k)^(k-1)
    PadicPolynomial u = integer(1 - k) * monomial(p, k * k, n) +
                        integer(k) * (lz * monomial(p, k, n)).pow(static_cast<unsigned>(k - 1));
    // + sum_{i=2}^k C(k,i) M^(i-1) z^(k(k-i)) ((lambda + z)^(k-i) - z^(k-i+1))
    PadicPolynomial m_power = PadicPolynomial::constant(integer(1));
    for (int i = 2; i <= k; ++i) {
        m_power = m_power * mz;
        const PadicPolynomial tail = shifted_power(lambda, k - i) - monomial(p, k - i + 1, n);
        u = u + integer(binomial(k, i)) * (m_power * tail).shift(k * (k - i));
    }
    return u;
}

PadicPolynomial u_polynomial(const ModelParams& params) {
    const PadicPolynomial closed = u_polynomial_closed_form(params);
    const PadicPolynomial quotient = padic::poly_divide_exact(l_polynomial(params), m_polynomial(params));
    std::int64_t m = params.fugacity().precision();
    for (const auto& c : quotient.coefficients()) m = std::min(m, c.absolute_precision());
    for (const auto& c : closed.coefficients()) m = std::min(m, c.absolute_precision());
    if (closed.degree() != quotient.degree() || !congruent(closed, quotient, m)) {
        throw ModelError("U: closed form and L / M disagree");
    }
    return quotient;
}

namespace {

// Checks shared by both period-2 solvers; z1 and z2 are the two boundary values.
void add_period2_solutions(SolveReport& report, const ModelParams& params, const PadicNumber& z1,
                           const PadicNumber& z2, const PadicPolynomial* u) {
    for (const auto& [even, odd] : {std::pair{z1, z2}, std::pair{z2, z1}}) {
        Solution s{SolutionClass::Period2, {even, odd}, in_Ep(even) && in_Ep(odd), {}};
        if (u != nullptr) s.residuals.push_back(make_residual("U(z_even)", poly_eval(*u, even)));
        s.residuals.push_back(make_residual("g(z_even) - z_odd", g_map(even, params) - odd));
        s.residuals.push_back(make_residual("g(z_odd) - z_even", g_map(odd, params) - even));
        s.residuals.push_back(make_residual("g(g(z_even)) - z_even", g_map(g_map(even, params), params) - even));
        s.residuals.push_back(
            functional_equation_residual(BoundaryField::alternating(even, odd), params));
        report.solutions.push_back(std::move(s));
    }
}

}  // namespace

SolveReport periodic_solve_general(const ModelParams& params, int precision) {
    const std::int64_t p = params.p();
    const int k = params.k();
    SolveReport report{SolveStatus::Solved, {gate_mersenne(p, k), gate_k_minus_2(p, k)}, {}, {}, {}};
    if (!report.gates_hold()) {
        report.status = SolveStatus::GateFailure;
        report.message = "period-2 gate fails: need p | 2^k - 1 and p | k - 2";
        return report;
    }
    if (p < 7) {
        report.status = SolveStatus::Undecided;
        report.message = "necessary condition holds; existence undecided for p in {2, 3, 5}";
        return report;
    }
    const int n = working_precision(params, precision);
    const PadicPolynomial u = u_polynomial(params);
    const PadicPolynomial du = padic::poly_derivative(u);
    const auto u1 = padic::residues(u, 1);
    const auto du1 = padic::residues(du, 1);
    const mpz_class pp = p;
    const mpz_class u_at_1 = padic::eval_mod(u1, 1, pp);
    const mpz_class du_at_1 = padic::eval_mod(du1, 1, pp);
    report.notes.push_back("U(1) mod p = " + u_at_1.get_str() + ", U'(1) mod p = " + du_at_1.get_str());

    std::vector<mpz_class> seeds;
    if (u_at_1 == 0 && du_at_1 != 0) {
        seeds.push_back(1);
    }
    // Fallback seeds: residues mod p^2 in the E_p window that are simple
    // roots of U. Used when the seed 1 fails or lifts to a TI root.
    const auto fallback = [&] {
        std::vector<mpz_class> out;
        const auto du2 = padic::residues(du, 2);
        for (const auto& r : scan_roots_in_ep_window(u, 2)) {
            if (padic::eval_mod(du2, r, pp) != 0 && r != 1) out.push_back(r);
        }
        return out;
    };
    bool fallback_used = seeds.empty();
    if (fallback_used) {
        report.notes.push_back("Hensel hypothesis U'(1) != 0 (mod p) fails; scanning residues mod p^2");
        seeds = fallback();
    }
    for (std::size_t i = 0; i < seeds.size(); ++i) {
        const PadicNumber z1 = padic::hensel_lift(u, seeds[i], n);
        const PadicNumber z2 = g_map(z1, params);
        const std::int64_t m = std::min(z1.absolute_precision(), z2.absolute_precision());
        if (congruent(z1, z2, m)) {
            report.notes.push_back("root lifted from " + seeds[i].get_str() + " is TI-coincident");
            if (!fallback_used) {
                fallback_used = true;
                for (auto& r : fallback()) seeds.push_back(r);
            }
            continue;
        }
        add_period2_solutions(report, params, z1, z2, &u);
        report.message = "period-2 solution lifted from residue " + seeds[i].get_str();
        return report;
    }
    const auto r2 = scan_roots_in_ep_window(u, 2);
    const auto r3 = scan_roots_in_ep_window(u, 3);
    report.notes.push_back("roots of U in the E_p window mod p^2: " + join(r2));
    report.notes.push_back("roots of U in the E_p window mod p^3: " + join(r3));
    report.status = SolveStatus::NumericalFailure;
    report.message = "no simple root of U in E_p to lift";
    return report;
}

SolveReport periodic_solve_k2(const ModelParams& params, int precision) {
    const std::int64_t p = params.p();
    const int k = params.k();
    const PadicNumber& lambda = params.fugacity();
    SolveReport report{SolveStatus::Solved, {}, {}, {}, {}};
    report.gates.push_back({"k = 2", k == 2, "k = " + std::to_string(k)});
    report.gates.push_back({"p = 3", p == 3, "p = " + std::to_string(p)});
    if (!report.gates_hold()) {
        report.status = SolveStatus::GateFailure;
        report.message = "closed-form period-2 solver needs k = 2 and p = 3";
        return report;
    }
    {
        GateResult ball{"|lambda - 13|_3 <= 1/27", false, {}};
        if (lambda.absolute_precision() < 3) {
            ball.witness = "lambda known only mod 3^" + std::to_string(lambda.absolute_precision());
        } else {
            const auto d = lambda.digits(3);
            ball.holds = d[0] == 1 && d[1] == 1 && d[2] == 1;
            ball.witness = "lambda digits (l0, l1, l2) = (" + std::to_string(d[0]) + ", " + std::to_string(d[1]) +
                           ", " + std::to_string(d[2]) + "); need l1 = 1 for sqrt(lambda - 4), l2 = 1 for a "
                           "residue leading digit";
        }
        report.gates.push_back(ball);
    }
    if (!report.gates_hold()) {
        report.status = SolveStatus::GateFailure;
        report.message = "lambda outside the ball |lambda - 13|_3 <= 1/27";
        return report;
    }

    // The roots coincide mod 3, so the quadratic formula loses a digit;
    // spend guard digits of lambda when it has them.
    const int n = working_precision(params, precision);
    const PadicNumber l = lambda.with_precision(std::min(lambda.precision(), n + 2));
    const auto [s1, s2] = padic::sqrt_p(l * (l - 4));
    const PadicNumber half = l / padic::integer_to_absolute(2, p, l.precision());
    const PadicNumber z1 = (half * (l - 2 + s1)).with_precision(n);
    const PadicNumber z2 = (half * (l - 2 + s2)).with_precision(n);

    add_period2_solutions(report, params, z1, z2, nullptr);
    for (auto& s : report.solutions) {
        const auto& a = s.values[0];
        const auto& b = s.values[1];
        s.residuals.push_back(make_residual("z1 + z2 - (lambda^2 - 2 lambda)", a + b - (l * l - l * 2)));
        s.residuals.push_back(make_residual("z1 z2 - lambda^2", a * b - l * l));
        s.residuals.push_back(make_residual("z^2 - (lambda^2 - 2 lambda) z + lambda^2",
                                            a * a - (l * l - l * 2) * a + l * l));
    }
    if ((z1 - z2).is_zero()) {
        report.status = SolveStatus::NumericalFailure;
        report.message = "roots coincide at precision";
        return report;
    }
    report.message = "two period-2 solutions z1 = " + residue_str(z1, 3) + ", z2 = " + residue_str(z2, 3) +
                     " (mod 27)";
    return report;
}

Residual functional_equation_residual(const BoundaryField& z, const ModelParams& params) {
    switch (z.kind()) {
        case BoundaryField::Kind::Constant: {
            const auto& v = z.at_level(0);
            return make_residual("z - g(z)", v - g_map(v, params));
        }
        case BoundaryField::Kind::Alternating: {
            const auto& a = z.at_level(0);
            const auto& b = z.at_level(1);
            const PadicNumber ra = a - g_map(b, params);
            const PadicNumber rb = b - g_map(a, params);
            return {"z_even - g(z_odd), z_odd - g(z_even)", std::min(ra.valuation(), rb.valuation()),
                    std::min(ra.absolute_precision(), rb.absolute_precision())};
        }
        case BoundaryField::Kind::Explicit:
            break;
    }
    throw ModelError("functional_equation_residual: constant or alternating fields only");
}

}  // namespace hardcore
