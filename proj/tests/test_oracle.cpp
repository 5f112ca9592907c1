#include <doctest.h>

#include <map>

#include "hcpadic/analytic.hpp"
#include "hcpadic/oracle.hpp"
#include "oracles.hpp"

using namespace hardcore;
using padic::PadicNumber;

namespace {

PadicNumber integer(long n, std::int64_t p, int prec = 24) { return PadicNumber::from_integer(n, p, prec); }

ModelParams fugacity(std::int64_t p, int k, long lambda, int prec = 24) {
    return ModelParams::from_fugacity(p, k, integer(lambda, p, prec));
}

int root_children(int k, Topology t) { return t == Topology::FullCayley ? k + 1 : k; }

// Exact weights for a constant rational boundary z.
struct RationalMeasure {
    std::vector<std::int64_t> parent;
    std::vector<int> level;
    int depth;
    std::map<std::uint64_t, mpq_class> weight;
    mpq_class z_n = 0;

    RationalMeasure(int k, int n, Topology t, const mpq_class& lambda, const mpq_class& z) : depth(n) {
        parent = oracle::tree(k, n, root_children(k, t));
        level.assign(parent.size(), 0);
        for (std::size_t v = 1; v < parent.size(); ++v) level[v] = level[static_cast<std::size_t>(parent[v])] + 1;
        for (auto s : oracle::admissible_subsets(parent)) {
            mpq_class w = 1;
            for (std::size_t v = 0; v < parent.size(); ++v) {
                const bool occ = (s >> v) & 1U;
                if (occ) w *= lambda;
                if (!occ && level[v] == n) w *= z;
            }
            weight[s] = w;
            z_n += w;
        }
    }
    mpq_class mu(std::uint64_t s) const { return weight.at(s) / z_n; }
};

}  // namespace

TEST_CASE("volume sizes") {
    CHECK(volume_size(2, 1, Topology::FullCayley) == 4);
    CHECK(volume_size(2, 2, Topology::FullCayley) == 10);
    CHECK(volume_size(3, 1, Topology::KBranch) == 4);
    CHECK(volume_size(2, 0, Topology::KBranch) == 1);
    const auto vol = build_volume(2, 2, Topology::FullCayley);
    CHECK(vol.size() == 10);
    CHECK(vol.levels()[1].size() == 3);
    CHECK(vol.levels()[2].size() == 6);
    CHECK(vol.level_end(1) == 4);
    CHECK(vol.parent(0) == -1);
    for (std::size_t v = 1; v < vol.size(); ++v) CHECK(vol.level(v) == vol.level(vol.parent(v)) + 1);
    CHECK_THROWS_AS(build_volume(2, 4, Topology::FullCayley), CapExceeded);
    CHECK_NOTHROW(build_volume(2, 4, Topology::FullCayley, 64));
    CHECK_THROWS_AS(build_volume(3, 4, Topology::FullCayley, 1000), CapExceeded);
}

TEST_CASE("admissible configuration counts") {
    CHECK(count_admissible(2, 1, Topology::FullCayley) == 9);
    CHECK(count_admissible(2, 0, Topology::FullCayley) == 2);
    CHECK(count_admissible(2, 1, Topology::KBranch) == 5);
    CHECK(enumerate_admissible(build_volume(2, 1, Topology::FullCayley)).size() == 9);
}

TEST_CASE("dynamic programming and enumeration agree with brute force") {
    for (auto t : {Topology::KBranch, Topology::FullCayley}) {
        for (int k = 1; k <= 4; ++k) {
            for (int n = 0; n <= 4; ++n) {
                if (volume_size(k, n, t) > 20) continue;
                const auto brute = oracle::admissible_subsets(oracle::tree(k, n, root_children(k, t)));
                const auto vol = build_volume(k, n, t);
                const auto list = enumerate_admissible(vol);
                CHECK(list.size() == brute.size());
                CHECK(count_admissible(k, n, t) == static_cast<unsigned long>(brute.size()));
                CHECK(count_admissible(vol) == static_cast<unsigned long>(brute.size()));
                std::vector<std::uint64_t> masks;
                for (const auto& c : list) {
                    CHECK(is_admissible(vol, c));
                    masks.push_back(c.occupied);
                }
                std::sort(masks.begin(), masks.end());
                CHECK(masks == brute);
            }
        }
    }
}

TEST_CASE("enumeration order is vacant first") {
    const auto list = enumerate_admissible(build_volume(2, 1, Topology::KBranch));
    REQUIRE(list.size() == 5);
    CHECK(list.front().occupied == 0);
    CHECK(list.back().occupied == 1);
}

TEST_CASE("closed form matches the true count only for stars") {
    for (int k = 2; k <= 6; ++k) {
        CHECK(omega_count_closed_form(k, 1) == count_admissible(k, 1, Topology::FullCayley));
    }
    CHECK(omega_count_closed_form(2, 2) == 513);
    CHECK(omega_count_closed_form(3, 1) == 17);
    // Brute force over the 10-vertex ball.
    const auto brute = oracle::admissible_subsets(oracle::tree(2, 2, 3));
    CHECK(brute.size() == 189);
    CHECK(count_admissible(2, 2, Topology::FullCayley) == 189);
    CHECK(omega_count_closed_form(2, 2) != count_admissible(2, 2, Topology::FullCayley));
    CHECK_THROWS(omega_count_closed_form(1, 2));
}

TEST_CASE("norms of counts") {
    CHECK(integer_norm(513, 3) == mpq_class(1, 27));
    CHECK(integer_norm(17, 7) == 1);
    CHECK(omega_norm(2, 2, 3) == mpq_class(1, 27));
    for (int n = 1; n <= 6; ++n) {
        CHECK(integer_norm(count_admissible(2, n, Topology::FullCayley), 3) <= mpq_class(1, 3));
    }
    CHECK(integer_norm(count_admissible(3, 1, Topology::FullCayley), 7) == 1);
    CHECK(integer_norm(count_admissible(3, 2, Topology::FullCayley), 7) == 1);
}

TEST_CASE("weights") {
    const auto params = fugacity(3, 2, 13);
    const auto z = integer(4, 3);
    const auto boundary = BoundaryField::constant(z);
    const auto vol = build_volume(2, 1, Topology::FullCayley);

    const auto vacant = measure_weight({0}, vol, params, boundary);
    CHECK(congruent(vacant, z.pow(3), 24));
    const auto root = measure_weight({1}, vol, params, boundary);
    CHECK(congruent(root, params.fugacity() * z.pow(3), 24));
    // One leaf occupied: lambda * z^2.
    const auto leaf = measure_weight({2}, vol, params, boundary);
    CHECK(congruent(leaf, params.fugacity() * z.pow(2), 24));

    for (const auto& c : enumerate_admissible(vol)) {
        const auto a = measure_weight(c, vol, params, boundary);
        const auto b = measure_weight_via_exp(c, vol, params, boundary);
        CHECK(a.norm() == 1);
        const std::int64_t m = std::min(a.absolute_precision(), b.absolute_precision());
        CHECK(m >= 20);
        CHECK(congruent(a, b, m));
    }
}

TEST_CASE("measure agrees with exact rational computation") {
    for (auto [p, k, lambda, z] : {std::tuple<std::int64_t, int, long, long>{3, 2, 13, 1},
                                   {3, 2, 4, 7},
                                   {7, 3, 8, 15},
                                   {5, 2, 6, 11}}) {
        for (auto t : {Topology::KBranch, Topology::FullCayley}) {
            const int n = k == 2 ? 2 : 1;
            const auto params = fugacity(p, k, lambda, 16);
            const auto boundary = BoundaryField::constant(integer(z, p, 16));
            const auto vol = build_volume(k, n, t);
            const RationalMeasure exact(k, n, t, lambda, z);
            const VolumeMeasure measure(vol, params, boundary);
            CHECK(measure.partition_function().vanishing_order() == oracle::val(exact.z_n, p));
            for (const auto& c : enumerate_admissible(vol)) {
                const auto mu = measure.probability(c);
                const mpq_class q = exact.mu(c.occupied);
                CHECK(mu.valuation().value() == oracle::val(q, p));
                CHECK(oracle::mod(mu.unit(), oracle::ipow(p, 6)) == oracle::unit_residue(q, p, 6));
            }
        }
    }
}

TEST_CASE("normalization") {
    const auto params = fugacity(3, 2, 13);
    const auto z = ti_solve(params, 24).solutions.at(0).boundary();
    for (int n = 1; n <= 2; ++n) {
        const auto vol = build_volume(2, n, Topology::FullCayley);
        const VolumeMeasure measure(vol, params, z);
        PadicNumber total = PadicNumber::zero(3, 100);
        for (const auto& c : enumerate_admissible(vol)) total += measure.probability(c);
        CHECK(congruent(total, integer(1, 3), total.absolute_precision()));
        CHECK(total.absolute_precision() >= 20);
        CHECK(congruent(total, integer(1, 3), 20));
    }
    CHECK(check_norms(params, z, 2).normalization_ok);
}

TEST_CASE("compatibility holds for solutions and fails for perturbations") {
    const auto params = fugacity(3, 2, 13, 16);
    const auto ti = ti_solve(params, 12).solutions.at(0);
    const auto periodic = periodic_solve_k2(params, 12).solutions.at(0);

    const auto ti_report = check_compatibility(params, ti.boundary(), 2);
    CHECK(ti_report.base_configurations == 5);
    CHECK(ti_report.compatible_to(12));

    const auto alt_report = check_compatibility(params, periodic.boundary(), 2);
    CHECK(alt_report.compatible_to(12));
    CHECK(check_compatibility(params, periodic.boundary(), 3).compatible_to(12));

    const auto bump = integer(4, 3, 16);
    const auto ti_bad = BoundaryField::constant(ti.values[0] * bump);
    const auto alt_bad = BoundaryField::alternating(periodic.values[0] * bump, periodic.values[1] * bump);
    for (const auto& b : {ti_bad, alt_bad, BoundaryField::constant(integer(1, 3, 16))}) {
        const auto r = check_compatibility(params, b, 2);
        CHECK_FALSE(r.min_deviation.is_infinite());
        CHECK(r.min_deviation < 12);
        CHECK_FALSE(r.compatible_to(12));
    }
}

TEST_CASE("compatibility and the functional equation move together") {
    const auto params = fugacity(7, 3, 8, 16);
    for (long z : {8L, 15L, 50L, 1L}) {
        const auto b = BoundaryField::constant(integer(z, 7, 16));
        const bool solves = functional_equation_residual(b, params).vanishes_to(12);
        const auto r = check_compatibility(params, b, 1);
        CHECK(r.compatible_to(12) == solves);
    }
}

TEST_CASE("deviation matches the exact rational deviation") {
    const auto params = fugacity(3, 2, 13, 16);
    const auto b = BoundaryField::constant(integer(1, 3, 16));
    const auto r = check_compatibility(params, b, 2);
    const RationalMeasure outer(2, 2, Topology::KBranch, 13, 1);
    const RationalMeasure inner(2, 1, Topology::KBranch, 13, 1);
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (const auto& [s, w] : inner.weight) {
        mpq_class sum = 0;
        for (const auto& [t, wt] : outer.weight) {
            if ((t & 0b111) == s) sum += outer.mu(t);
        }
        const mpq_class d = sum - inner.mu(s);
        if (d != 0) best = std::min(best, oracle::val(d, 3));
    }
    CHECK(r.min_deviation.value() == best);
}

TEST_CASE("norm dichotomy") {
    {
        const auto params = fugacity(3, 2, 13);
        const auto z = ti_solve(params, 24).solutions.at(0).boundary();
        for (int n = 1; n <= 2; ++n) {
            const auto r = check_norms(params, z, n);
            CHECK(r.mu_norm_min >= 3);
            CHECK(r.omega_norm <= mpq_class(1, 3));
            CHECK(r.partition_norm <= mpq_class(1, 3));
            CHECK(r.weight_norms_all_one);
            CHECK(r.normalization_ok);
            CHECK(r.dp_count == static_cast<unsigned long>(r.configurations));
        }
    }
    {
        const auto params = fugacity(7, 3, 8);
        const auto z = BoundaryField::constant(integer(8, 7));
        const auto r = check_norms(params, z, 1);
        CHECK(r.configurations == 17);
        CHECK(r.mu_norm_min == 1);
        CHECK(r.mu_norm_max == 1);
        CHECK(r.omega_norm == 1);
        CHECK(r.normalization_ok);
    }
}

TEST_CASE("vanishing partition function is reported") {
    // lambda = z = 1 makes every weight 1, so Z = 189 = 27 * 7 vanishes mod 3^3.
    const auto params = ModelParams::from_fugacity(3, 2, integer(1, 3, 3));
    const auto b = BoundaryField::constant(integer(1, 3, 3));
    CHECK_THROWS_AS(partition_function(build_volume(2, 2, Topology::FullCayley), params, b), PartitionVanishes);
}
