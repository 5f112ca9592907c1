#include "hcpadic/oracle.hpp"

#include <algorithm>
#include <string>
#include <unordered_map>

#include "hcpadic/analytic.hpp"

namespace hardcore {

const char* to_string(Topology t) { return t == Topology::KBranch ? "kbranch" : "full_cayley"; }

namespace {

int successors(int k, int level, Topology topology) {
    return (level == 0 && topology == Topology::FullCayley) ? k + 1 : k;
}

mpz_class ipow(const mpz_class& b, unsigned long e) {
    mpz_class r;
    mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
    return r;
}

}  // namespace

mpz_class volume_size(int k, int n, Topology topology) {
    mpz_class total = 1;
    mpz_class level = 1;
    for (int m = 0; m < n; ++m) {
        level *= successors(k, m, topology);
        total += level;
    }
    return total;
}

FiniteVolume build_volume(int k, int n, Topology topology, std::size_t cap) {
    if (k < 1) throw ModelError("build_volume: k must be >= 1");
    if (n < 0) throw ModelError("build_volume: depth must be >= 0");
    const std::size_t limit = std::min(cap, kMaxEnumerableVertices);
    const mpz_class size = volume_size(k, n, topology);
    if (size > static_cast<unsigned long>(limit)) {
        throw CapExceeded("volume with k = " + std::to_string(k) + ", n = " + std::to_string(n) + " has " +
                          size.get_str() + " vertices, cap is " + std::to_string(limit));
    }
    FiniteVolume vol;
    vol.k_ = k;
    vol.depth_ = n;
    vol.topology_ = topology;
    vol.levels_.push_back({0});
    vol.parent_.push_back(-1);
    vol.level_.push_back(0);
    for (int m = 0; m < n; ++m) {
        std::vector<std::size_t> next;
        for (std::size_t v : vol.levels_.back()) {
            for (int c = 0; c < successors(k, m, topology); ++c) {
                const std::size_t id = vol.parent_.size();
                vol.parent_.push_back(static_cast<std::int64_t>(v));
                vol.level_.push_back(m + 1);
                next.push_back(id);
            }
        }
        vol.levels_.push_back(std::move(next));
    }
    return vol;
}

bool is_admissible(const FiniteVolume& vol, const AdmissibleConfiguration& c) {
    for (std::size_t v = 1; v < vol.size(); ++v) {
        if (c.at(v) && c.at(static_cast<std::size_t>(vol.parent(v)))) return false;
    }
    return true;
}

void for_each_admissible(const FiniteVolume& vol,
                         const std::function<void(const AdmissibleConfiguration&)>& visit) {
    const std::size_t n = vol.size();
    AdmissibleConfiguration current;
    // Ids are in BFS order, so a vertex's parent is always decided first.
    std::function<void(std::size_t)> assign = [&](std::size_t v) {
        if (v == n) {
            visit(current);
            return;
        }
        assign(v + 1);
        if (v == 0 || !current.at(static_cast<std::size_t>(vol.parent(v)))) {
            current.occupied |= std::uint64_t{1} << v;
            assign(v + 1);
            current.occupied &= ~(std::uint64_t{1} << v);
        }
    };
    assign(0);
}

std::vector<AdmissibleConfiguration> enumerate_admissible(const FiniteVolume& vol) {
    std::vector<AdmissibleConfiguration> out;
    for_each_admissible(vol, [&](const AdmissibleConfiguration& c) { out.push_back(c); });
    return out;
}

mpz_class count_admissible(int k, int n, Topology topology) {
    if (k < 1 || n < 0) throw ModelError("count_admissible: need k >= 1, n >= 0");
    // (occupied, vacant) counts for a subtree hanging from one vertex of level m.
    mpz_class occ = 1;
    mpz_class vac = 1;
    for (int m = n - 1; m >= 0; --m) {
        const auto c = static_cast<unsigned long>(successors(k, m, topology));
        mpz_class next_occ = ipow(vac, c);
        mpz_class next_vac = ipow(occ + vac, c);
        occ = std::move(next_occ);
        vac = std::move(next_vac);
    }
    return occ + vac;
}

mpz_class count_admissible(const FiniteVolume& vol) {
    std::vector<mpz_class> occ(vol.size(), 1);
    std::vector<mpz_class> vac(vol.size(), 1);
    for (std::size_t v = vol.size(); v-- > 1;) {
        const auto u = static_cast<std::size_t>(vol.parent(v));
        occ[u] *= vac[v];
        vac[u] *= occ[v] + vac[v];
    }
    return occ[0] + vac[0];
}

mpz_class omega_count_closed_form(int k, int n) {
    if (k < 2) throw ModelError("closed form for |Omega_n| needs k >= 2");
    if (n < 0) throw ModelError("closed form for |Omega_n| needs n >= 0");
    const mpz_class kk = k;
    const mpz_class exponent = (kk + 1) * ((ipow(kk, static_cast<unsigned long>(n)) - 1) / (kk - 1));
    return ipow(2, exponent.get_ui()) + 1;
}

mpq_class integer_norm(const mpz_class& n, std::int64_t p) {
    if (n == 0) return 0;
    mpq_class r(mpz_class(1), padic::prime_power(p, padic::valuation_of(n, p)));
    r.canonicalize();
    return r;
}

mpq_class omega_norm(int k, int n, std::int64_t p) { return integer_norm(omega_count_closed_form(k, n), p); }

namespace {

PadicNumber boundary_product(const AdmissibleConfiguration& c, const FiniteVolume& vol,
                             const BoundaryField& boundary, PadicNumber acc) {
    const int n = vol.depth();
    const PadicNumber& z = boundary.at_level(n);
    int vacant = 0;
    for (std::size_t v : vol.levels().back()) {
        if (!c.at(v)) ++vacant;
    }
    return acc * z.pow(static_cast<std::uint64_t>(vacant));
}

}  // namespace

PadicNumber measure_weight(const AdmissibleConfiguration& c, const FiniteVolume& vol, const ModelParams& params,
                           const BoundaryField& boundary) {
    const PadicNumber lw = params.fugacity().pow(static_cast<std::uint64_t>(c.occupied_count()));
    return boundary_product(c, vol, boundary, lw);
}

PadicNumber measure_weight_via_exp(const AdmissibleConfiguration& c, const FiniteVolume& vol,
                                   const ModelParams& params, const BoundaryField& boundary) {
    const PadicNumber e = padic::exp_p(params.coupling() * c.occupied_count());
    return boundary_product(c, vol, boundary, e);
}

VolumeMeasure::VolumeMeasure(const FiniteVolume& vol, const ModelParams& params, const BoundaryField& boundary)
    : vol_(vol), params_(params), boundary_(boundary), partition_(PadicNumber::zero(params.p(), 0)) {
    lambda_powers_.push_back(params_.fugacity().pow(0));
    for (std::size_t i = 1; i <= vol_.size(); ++i) lambda_powers_.push_back(lambda_powers_.back() * params_.fugacity());
    bool first = true;
    for_each_admissible(vol_, [&](const AdmissibleConfiguration& c) {
        const PadicNumber w = weight(c);
        partition_ = first ? w : partition_ + w;
        first = false;
    });
    if (partition_.is_zero()) {
        throw PartitionVanishes("Z_n is zero mod p^" + std::to_string(partition_.absolute_precision()));
    }
}

PadicNumber VolumeMeasure::weight(const AdmissibleConfiguration& c) const {
    return boundary_product(c, vol_, boundary_, lambda_powers_[static_cast<std::size_t>(c.occupied_count())]);
}

PadicNumber VolumeMeasure::probability(const AdmissibleConfiguration& c) const { return weight(c) / partition_; }

PadicNumber partition_function(const FiniteVolume& vol, const ModelParams& params, const BoundaryField& boundary) {
    return VolumeMeasure(vol, params, boundary).partition_function();
}

PadicNumber mu_n(const AdmissibleConfiguration& c, const FiniteVolume& vol, const ModelParams& params,
                 const BoundaryField& boundary) {
    return VolumeMeasure(vol, params, boundary).probability(c);
}

CompatibilityReport check_compatibility(const ModelParams& params, const BoundaryField& boundary, int n,
                                        std::size_t cap) {
    if (n < 1) throw ModelError("check_compatibility: n must be >= 1");
    const FiniteVolume outer = build_volume(params.k(), n, Topology::KBranch, cap);
    const FiniteVolume inner = build_volume(params.k(), n - 1, Topology::KBranch, cap);
    const VolumeMeasure mu_outer(outer, params, boundary);
    const VolumeMeasure mu_inner(inner, params, boundary);

    const std::size_t prefix = inner.size();
    std::unordered_map<std::uint64_t, PadicNumber> marginal;
    for_each_admissible(outer, [&](const AdmissibleConfiguration& c) {
        const PadicNumber m = mu_outer.probability(c);
        const auto key = c.restrict_to(prefix).occupied;
        auto it = marginal.find(key);
        if (it == marginal.end()) {
            marginal.emplace(key, m);
        } else {
            it->second += m;
        }
    });

    CompatibilityReport report{n, 0, Valuation::infinite(), std::numeric_limits<std::int64_t>::max()};
    for_each_admissible(inner, [&](const AdmissibleConfiguration& c) {
        const auto it = marginal.find(c.occupied);
        if (it == marginal.end()) throw ModelError("admissible configuration without an admissible extension");
        const PadicNumber deviation = it->second - mu_inner.probability(c);
        report.min_deviation = std::min(report.min_deviation, deviation.valuation());
        report.checked_to = std::min(report.checked_to, deviation.absolute_precision());
        ++report.base_configurations;
    });
    return report;
}

NormReport check_norms(const ModelParams& params, const BoundaryField& boundary, int n, Topology topology,
                       std::size_t cap) {
    const FiniteVolume vol = build_volume(params.k(), n, topology, cap);
    const VolumeMeasure measure(vol, params, boundary);
    const std::int64_t p = params.p();

    NormReport r{params.k(), n, topology, p, 0, count_admissible(vol), std::nullopt, 0, std::nullopt,
                 measure.partition_function().norm(), 0, 0, true, false, 0};
    if (topology == Topology::FullCayley && params.k() >= 2) {
        r.closed_form_count = omega_count_closed_form(params.k(), n);
        r.closed_form_norm = integer_norm(*r.closed_form_count, p);
    }
    bool first = true;
    PadicNumber total = PadicNumber::zero(p, 0);
    for_each_admissible(vol, [&](const AdmissibleConfiguration& c) {
        const PadicNumber w = measure.weight(c);
        if (w.norm() != 1) r.weight_norms_all_one = false;
        const PadicNumber mu = w / measure.partition_function();
        const mpq_class nm = mu.norm();
        if (first) {
            r.mu_norm_min = nm;
            r.mu_norm_max = nm;
            total = mu;
        } else {
            r.mu_norm_min = std::min(r.mu_norm_min, nm);
            r.mu_norm_max = std::max(r.mu_norm_max, nm);
            total += mu;
        }
        first = false;
        ++r.configurations;
    });
    r.omega_norm = integer_norm(r.configurations, p);
    const PadicNumber defect = total - 1;
    r.normalization_ok = defect.is_zero();
    r.normalization_checked_to = defect.absolute_precision();
    return r;
}

}  // namespace hardcore
