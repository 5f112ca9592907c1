#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hcpadic/analytic.hpp"
#include "hcpadic/json.hpp"
#include "hcpadic/model.hpp"
#include "hcpadic/number_theory.hpp"
#include "hcpadic/oracle.hpp"

using namespace hardcore;

namespace {

enum Exit { kOk = 0, kGate = 2, kNumerical = 3, kBadInput = 4, kCap = 5 };

constexpr int kInputGuardDigits = 4;

class BadInput : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    std::string kind;
    std::int64_t p = 0;
    int k = 0;
    std::string coupling;
    std::string fugacity;
    int precision = padic::kDefaultPrecision;
    int n = 1;
    int k_max = 10;
    std::optional<std::uint64_t> p_max;
    std::string format = "text";
    std::size_t cap = kDefaultEnumerationCap;
    std::string boundary = "ti";
};

int default_precision() {
    const char* env = std::getenv("HCPADIC_PRECISION");
    if (env == nullptr || *env == '\0') return padic::kDefaultPrecision;
    try {
        std::size_t used = 0;
        const int n = std::stoi(env, &used);
        if (used != std::string(env).size()) throw std::invalid_argument(env);
        return n;
    } catch (const std::exception&) {
        throw BadInput(std::string("HCPADIC_PRECISION is not an integer: ") + env);
    }
}

// "num", "num/den" or "digits:d0,d1,..." (least significant digit first).
PadicNumber parse_padic(const std::string& text, std::int64_t p, int precision, const char* what) {
    const std::string prefix = "digits:";
    try {
        if (text.rfind(prefix, 0) == 0) {
            std::vector<std::int64_t> digits;
            std::stringstream in(text.substr(prefix.size()));
            std::string item;
            while (std::getline(in, item, ',')) {
                std::size_t used = 0;
                const long long d = std::stoll(item, &used);
                if (used != item.size() || d < 0 || d >= p) throw std::invalid_argument(item);
                digits.push_back(d);
            }
            if (digits.empty()) throw std::invalid_argument("no digits");
            return PadicNumber::from_digits(p, digits);
        }
        mpq_class q(text, 10);
        if (q.get_den() == 0) throw std::invalid_argument("zero denominator");
        q.canonicalize();
        if (q == 0) throw BadInput(std::string(what) + " must be non-zero");
        // Rationals are exact; the guard digits absorb precision lost in solvers.
        return PadicNumber::from_rational(q, p, precision + kInputGuardDigits);
    } catch (const BadInput&) {
        throw;
    } catch (const std::exception&) {
        throw BadInput(std::string("malformed ") + what + ": '" + text + "'");
    }
}

ModelParams make_params(const RunConfig& cfg) {
    if (cfg.p == 0 || cfg.k == 0) throw BadInput("--p and --k are required");
    if (!is_prime(static_cast<std::uint64_t>(cfg.p))) throw BadInput(std::to_string(cfg.p) + " is not prime");
    if (cfg.coupling.empty() == cfg.fugacity.empty()) throw BadInput("give exactly one of --J and --lambda");
    try {
        if (!cfg.coupling.empty()) {
            return ModelParams::from_coupling(cfg.p, cfg.k, parse_padic(cfg.coupling, cfg.p, cfg.precision, "J"));
        }
        return ModelParams::from_fugacity(cfg.p, cfg.k, parse_padic(cfg.fugacity, cfg.p, cfg.precision, "lambda"));
    } catch (const ModelError& e) {
        throw BadInput(e.what());
    }
}

int exit_code(SolveStatus s) {
    switch (s) {
        case SolveStatus::Solved:
            return kOk;
        case SolveStatus::GateFailure:
        case SolveStatus::Undecided:
            return kGate;
        case SolveStatus::NumericalFailure:
            return kNumerical;
    }
    return kNumerical;
}

std::string residue_mod(const PadicNumber& x, std::int64_t m) {
    const std::int64_t e = std::min<std::int64_t>(m, x.absolute_precision());
    return x.residue(e).get_str() + " (mod " + std::to_string(x.prime()) + "^" + std::to_string(e) + ")";
}

std::string render_text(const SolveReport& r) {
    std::ostringstream out;
    out << "status: " << to_string(r.status) << "\n";
    out << "message: " << r.message << "\n";
    for (const auto& g : r.gates) {
        out << "gate " << g.name << ": " << (g.holds ? "holds" : "FAILS") << " [" << g.witness << "]\n";
    }
    for (std::size_t i = 0; i < r.solutions.size(); ++i) {
        const auto& s = r.solutions[i];
        out << "solution " << i + 1 << " (" << to_string(s.solution_class) << ", in E_p: " << (s.in_ep ? "yes" : "no")
            << ")\n";
        const char* names[] = {"z_even", "z_odd"};
        for (std::size_t j = 0; j < s.values.size(); ++j) {
            const char* name = s.values.size() == 1 ? "z" : names[j];
            out << "  " << name << " = " << s.values[j].to_string() << "\n";
            out << "  " << name << " = " << residue_mod(s.values[j], 3) << "\n";
        }
        for (const auto& res : s.residuals) {
            out << "  residual " << res.name << ": valuation " << res.valuation.to_string() << ", checked mod p^"
                << res.checked_to << "\n";
        }
    }
    for (const auto& note : r.notes) out << "note: " << note << "\n";
    return out.str();
}

std::string render_table(const PrimeTable& table, const std::string& format) {
    if (format == "json") return to_json(table).dump(2) + "\n";
    std::ostringstream out;
    out << "k\tp\n";
    for (const auto& [k, primes] : table) {
        out << k << "\t";
        if (primes.empty()) out << "-";
        for (std::size_t i = 0; i < primes.size(); ++i) out << (i ? ", " : "") << primes[i];
        out << "\n";
    }
    return out.str();
}

SolveReport solve(const RunConfig& cfg, const ModelParams& params) {
    if (cfg.kind == "ti") return ti_solve(params, cfg.precision);
    if (params.k() == 2 && params.p() == 3) return periodic_solve_k2(params, cfg.precision);
    if (params.p() >= 7) return periodic_solve_general(params, cfg.precision);
    // No solver applies; report which gate rules the case out.
    SolveReport r = periodic_solve_general(params, cfg.precision);
    if (r.status == SolveStatus::Solved) r.status = SolveStatus::Undecided;
    return r;
}

struct Output {
    std::string text;
    int code = kOk;
};

Output run_solve(const RunConfig& cfg) {
    const ModelParams params = make_params(cfg);
    const SolveReport r = solve(cfg, params);
    Output out;
    out.code = exit_code(r.status);
    out.text = cfg.format == "json" ? to_json(r, params).dump(2) + "\n" : render_text(r);
    return out;
}

BoundaryField make_boundary(const RunConfig& cfg, const ModelParams& params, Output& failure) {
    const std::string prefix = "const:";
    if (cfg.boundary.rfind(prefix, 0) == 0) {
        const PadicNumber z = parse_padic(cfg.boundary.substr(prefix.size()), cfg.p, cfg.precision, "boundary");
        try {
            return BoundaryField::constant(z);
        } catch (const ModelError& e) {
            throw BadInput(e.what());
        }
    }
    if (cfg.boundary != "ti" && cfg.boundary != "periodic") {
        throw BadInput("--boundary must be ti, periodic or const:<rational>");
    }
    RunConfig solve_cfg = cfg;
    solve_cfg.kind = cfg.boundary;
    const SolveReport r = solve(solve_cfg, params);
    if (r.status != SolveStatus::Solved || r.solutions.empty()) {
        failure.code = exit_code(r.status);
        failure.text = render_text(r);
        throw std::logic_error("boundary solve failed");
    }
    return r.solutions.front().boundary();
}

Output run_count(const RunConfig& cfg) {
    if (cfg.k < 1 || cfg.n < 0) throw BadInput("count needs --k >= 1 and --n >= 0");
    const mpz_class dp = count_admissible(cfg.k, cfg.n, Topology::FullCayley);
    std::optional<mpz_class> closed;
    if (cfg.k >= 2) closed = omega_count_closed_form(cfg.k, cfg.n);
    std::optional<std::size_t> enumerated;
    std::string skipped;
    try {
        const FiniteVolume vol = build_volume(cfg.k, cfg.n, Topology::FullCayley, cfg.cap);
        enumerated = enumerate_admissible(vol).size();
    } catch (const CapExceeded& e) {
        skipped = e.what();
    }
    bool agree = !enumerated || mpz_class(static_cast<unsigned long>(*enumerated)) == dp;
    if (closed) agree = agree && *closed == dp;

    json j;
    j["k"] = cfg.k;
    j["n"] = cfg.n;
    j["topology"] = to_string(Topology::FullCayley);
    j["omega_count"] = dp.get_str();
    j["omega_enumerated"] = enumerated ? json(*enumerated) : json(nullptr);
    j["omega_closed_form"] = closed ? json(closed->get_str()) : json(nullptr);
    if (cfg.p != 0) {
        if (!is_prime(static_cast<std::uint64_t>(cfg.p))) throw BadInput(std::to_string(cfg.p) + " is not prime");
        j["p"] = cfg.p;
        j["omega_norm"] = rational_string(integer_norm(dp, cfg.p));
        if (closed) j["omega_closed_form_norm"] = rational_string(integer_norm(*closed, cfg.p));
    }
    j["agree"] = agree;

    Output out;
    out.code = agree ? kOk : kNumerical;
    if (cfg.format == "json") {
        out.text = j.dump(2) + "\n";
        return out;
    }
    std::ostringstream s;
    s << "k = " << cfg.k << ", n = " << cfg.n << ", topology " << to_string(Topology::FullCayley) << "\n";
    s << "dynamic programming: " << dp.get_str() << "\n";
    s << "enumeration: " << (enumerated ? std::to_string(*enumerated) : "skipped (" + skipped + ")") << "\n";
    s << "closed form: " << (closed ? closed->get_str() : std::string("unsupported for k = 1")) << "\n";
    if (cfg.p != 0) s << "|count|_" << cfg.p << " = " << j["omega_norm"].get<std::string>() << "\n";
    s << (agree ? "counts agree" : "counts DISAGREE") << "\n";
    out.text = s.str();
    return out;
}

Output run_compat(const RunConfig& cfg) {
    const ModelParams params = make_params(cfg);
    Output out;
    BoundaryField boundary = [&] {
        try {
            return make_boundary(cfg, params, out);
        } catch (const std::logic_error&) {
            throw out;
        }
    }();
    const CompatibilityReport r = check_compatibility(params, boundary, cfg.n, cfg.cap);
    const bool ok = r.min_deviation >= r.checked_to;
    out.code = ok ? kOk : kNumerical;
    if (cfg.format == "json") {
        json j = to_json(r, params, boundary);
        j["compatible"] = ok;
        out.text = j.dump(2) + "\n";
        return out;
    }
    std::ostringstream s;
    s << "k = " << params.k() << ", p = " << params.p() << ", n = " << r.n << ", topology "
      << to_string(Topology::KBranch) << ", boundary " << cfg.boundary << "\n";
    s << "base configurations: " << r.base_configurations << "\n";
    s << "minimum deviation valuation: " << r.min_deviation.to_string() << " (checked mod p^" << r.checked_to
      << ")\n";
    s << (ok ? "compatible at precision" : "NOT compatible") << "\n";
    out.text = s.str();
    return out;
}

Output run_norms(const RunConfig& cfg) {
    const ModelParams params = make_params(cfg);
    Output out;
    BoundaryField boundary = [&] {
        try {
            return make_boundary(cfg, params, out);
        } catch (const std::logic_error&) {
            throw out;
        }
    }();
    const NormReport r = check_norms(params, boundary, cfg.n, Topology::FullCayley, cfg.cap);
    // p = 3: every cylinder has norm >= 3; otherwise all norms are 1.
    const bool dichotomy = params.p() == 3 ? r.mu_norm_min >= 3 : r.mu_norm_max == 1 && r.mu_norm_min == 1;
    const bool ok = dichotomy && r.normalization_ok && r.weight_norms_all_one;
    out.code = ok ? kOk : kNumerical;
    if (cfg.format == "json") {
        json j = to_json(r, boundary);
        j["dichotomy_holds"] = dichotomy;
        out.text = j.dump(2) + "\n";
        return out;
    }
    std::ostringstream s;
    s << "k = " << r.k << ", p = " << r.p << ", n = " << r.n << ", topology " << to_string(r.topology)
      << ", boundary " << cfg.boundary << "\n";
    s << "configurations: " << r.configurations << " (dp " << r.dp_count.get_str() << ")\n";
    if (r.closed_form_count) {
        s << "closed form count: " << r.closed_form_count->get_str() << ", norm "
          << rational_string(*r.closed_form_norm) << "\n";
    }
    s << "|count|_p = " << rational_string(r.omega_norm) << "\n";
    s << "|Z_n|_p = " << rational_string(r.partition_norm) << "\n";
    s << "|mu_n|_p range: [" << rational_string(r.mu_norm_min) << ", " << rational_string(r.mu_norm_max) << "]\n";
    s << "weight norms all 1: " << (r.weight_norms_all_one ? "yes" : "no") << "\n";
    s << "normalization: " << (r.normalization_ok ? "ok" : "FAILS") << " (mod p^" << r.normalization_checked_to
      << ")\n";
    s << (dichotomy ? "norm dichotomy holds" : "norm dichotomy FAILS") << "\n";
    out.text = s.str();
    return out;
}

Output run(const RunConfig& cfg) {
    if (cfg.precision < 8) throw BadInput("precision must be >= 8");
    if (cfg.command == "table") {
        if (cfg.k_max < 1 || cfg.k_max > 64) throw BadInput("--kmax must be in [1, 64]");
        const PrimeTable t =
            cfg.kind == "existence" ? existence_table(cfg.k_max, cfg.p_max) : periodic_table(cfg.k_max, cfg.p_max);
        return {render_table(t, cfg.format), kOk};
    }
    if (cfg.command == "solve") return run_solve(cfg);
    if (cfg.kind == "count") return run_count(cfg);
    if (cfg.kind == "compat") return run_compat(cfg);
    return run_norms(cfg);
}

}  // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"p-adic hard-core model on Cayley trees"};
    app.require_subcommand(1);

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("--format", cfg.format, "text or json")->check(CLI::IsMember({"text", "json"}));
    };
    const auto add_model = [&](CLI::App* sub) {
        sub->add_option("--p", cfg.p, "prime");
        sub->add_option("--k", cfg.k, "tree order");
        sub->add_option("--J", cfg.coupling, "coupling: num[/den] or digits:d0,d1,...");
        sub->add_option("--lambda", cfg.fugacity, "fugacity: num[/den] or digits:d0,d1,...");
        sub->add_option("--precision", cfg.precision, "relative precision N (>= 8)");
    };

    auto* table = app.add_subcommand("table", "existence and period-2 prime tables");
    table->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"existence", "periodic"}));
    table->add_option("--kmax", cfg.k_max, "largest k");
    table->add_option("--pmax", cfg.p_max, "largest prime listed");
    add_common(table);

    auto* solve_cmd = app.add_subcommand("solve", "boundary-law solvers");
    solve_cmd->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"ti", "periodic"}));
    add_model(solve_cmd);
    add_common(solve_cmd);

    auto* oracle = app.add_subcommand("oracle", "finite-volume checks");
    oracle->add_option("kind", cfg.kind)->required()->check(CLI::IsMember({"count", "compat", "norms"}));
    add_model(oracle);
    oracle->add_option("--n", cfg.n, "depth of the ball V_n");
    oracle->add_option("--cap", cfg.cap, "largest volume enumerated");
    oracle->add_option("--boundary", cfg.boundary, "ti, periodic or const:<rational>");
    add_common(oracle);

    try {
        cfg.precision = default_precision();
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadInput;
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    }
    cfg.command = app.get_subcommands().front()->get_name();

    try {
        const Output out = run(cfg);
        std::cout << out.text;
        return out.code;
    } catch (const Output& out) {
        std::cout << out.text;
        return out.code;
    } catch (const BadInput& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const CapExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kCap;
    } catch (const PartitionVanishes& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    } catch (const ModelError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kBadInput;
    } catch (const padic::PadicError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kNumerical;
    }
}
