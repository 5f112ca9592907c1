#pragma once

/**
 * @file oracle.hpp
 * @brief Brute-force finite-volume checks for the p-adic hard-core measures.
 *
 * Builds the ball V_n of a rooted tree, enumerates its admissible (hard-core)
 * configurations and evaluates the finite-volume measures
 *
 *     mu_n(sigma) = lambda^(#occupied) * prod_{x in W_n, sigma(x) = 0} z_x / Z_n
 *
 * exactly in Q_p. Everything here is independent of the solvers in model.hpp
 * apart from the boundary field handed in.
 */

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "hcpadic/model.hpp"

namespace hardcore {

enum class Topology {
    KBranch,     ///< every vertex, root included, has k successors
    FullCayley,  ///< the root has k + 1 successors
};

const char* to_string(Topology t);

inline constexpr std::size_t kDefaultEnumerationCap = 24;
/// Configurations are bitmasks, so no volume may exceed this.
inline constexpr std::size_t kMaxEnumerableVertices = 64;

class CapExceeded : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Z_n is zero at working precision.
class PartitionVanishes : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// |V_n| from the level sizes: k^m (KBranch) or (k+1) k^(m-1) (FullCayley).
mpz_class volume_size(int k, int n, Topology topology);

class FiniteVolume {
public:
    int k() const { return k_; }
    int depth() const { return depth_; }
    Topology topology() const { return topology_; }
    std::size_t size() const { return parent_.size(); }

    /// Vertex ids of W_0 .. W_n. Ids are assigned level by level, so V_m is
    /// the id prefix [0, level_end(m)).
    const std::vector<std::vector<std::size_t>>& levels() const { return levels_; }
    std::size_t level_end(int m) const { return levels_[static_cast<std::size_t>(m)].back() + 1; }
    /// Parent id, or -1 for the root.
    std::int64_t parent(std::size_t v) const { return parent_[v]; }
    int level(std::size_t v) const { return level_[v]; }

private:
    friend FiniteVolume build_volume(int k, int n, Topology topology, std::size_t cap);

    int k_ = 0;
    int depth_ = 0;
    Topology topology_ = Topology::KBranch;
    std::vector<std::vector<std::size_t>> levels_;
    std::vector<std::int64_t> parent_;
    std::vector<int> level_;
};

/// Throws CapExceeded when |V_n| > cap (cap itself is clamped to 64).
FiniteVolume build_volume(int k, int n, Topology topology, std::size_t cap = kDefaultEnumerationCap);

/// Occupation bitmask over the vertex ids of a FiniteVolume.
struct AdmissibleConfiguration {
    std::uint64_t occupied = 0;

    bool at(std::size_t v) const { return (occupied >> v) & 1U; }
    int occupied_count() const { return __builtin_popcountll(occupied); }
    /// Restriction to the vertex prefix [0, n).
    AdmissibleConfiguration restrict_to(std::size_t n) const {
        return {n >= 64 ? occupied : occupied & ((std::uint64_t{1} << n) - 1)};
    }
};

/// No edge joins two occupied vertices.
bool is_admissible(const FiniteVolume& vol, const AdmissibleConfiguration& c);

/// Depth-first over vertex ids, vacant before occupied, children of an
/// occupied vertex forced vacant.
void for_each_admissible(const FiniteVolume& vol, const std::function<void(const AdmissibleConfiguration&)>& visit);
std::vector<AdmissibleConfiguration> enumerate_admissible(const FiniteVolume& vol);

/// Two-state subtree dynamic programming; no size limit.
mpz_class count_admissible(int k, int n, Topology topology);
mpz_class count_admissible(const FiniteVolume& vol);

/// 2^((k+1)(k^n - 1)/(k - 1)) + 1, the closed form stated for the full
/// Cayley tree. Requires k >= 2.
mpz_class omega_count_closed_form(int k, int n);
mpq_class omega_norm(int k, int n, std::int64_t p);
/// |n|_p for a non-zero integer.
mpq_class integer_norm(const mpz_class& n, std::int64_t p);

/// lambda^(#occupied in V_n) * prod over vacant x in W_n of z_x.
PadicNumber measure_weight(const AdmissibleConfiguration& c, const FiniteVolume& vol, const ModelParams& params,
                           const BoundaryField& boundary);

/// The same weight computed as exp_p(J * #occupied) * prod z_x.
PadicNumber measure_weight_via_exp(const AdmissibleConfiguration& c, const FiniteVolume& vol,
                                   const ModelParams& params, const BoundaryField& boundary);

/// mu_n on one volume, with Z_n computed once.
class VolumeMeasure {
public:
    VolumeMeasure(const FiniteVolume& vol, const ModelParams& params, const BoundaryField& boundary);

    const PadicNumber& partition_function() const { return partition_; }
    PadicNumber weight(const AdmissibleConfiguration& c) const;
    PadicNumber probability(const AdmissibleConfiguration& c) const;

private:
    FiniteVolume vol_;
    ModelParams params_;
    BoundaryField boundary_;
    std::vector<PadicNumber> lambda_powers_;
    PadicNumber partition_;
};

PadicNumber partition_function(const FiniteVolume& vol, const ModelParams& params, const BoundaryField& boundary);
PadicNumber mu_n(const AdmissibleConfiguration& c, const FiniteVolume& vol, const ModelParams& params,
                 const BoundaryField& boundary);

struct CompatibilityReport {
    int n;
    std::size_t base_configurations;
    /// Minimum over sigma_(n-1) of v(sum_omega mu_n(sigma v omega) - mu_(n-1)(sigma)).
    Valuation min_deviation;
    /// All deviations were computed modulo p^checked_to.
    std::int64_t checked_to;

    bool compatible_to(std::int64_t m) const { return min_deviation >= m && checked_to >= m; }
};

/// Compatibility of mu_(n-1) and mu_n on KBranch volumes.
CompatibilityReport check_compatibility(const ModelParams& params, const BoundaryField& boundary, int n,
                                        std::size_t cap = kDefaultEnumerationCap);

struct NormReport {
    int k;
    int n;
    Topology topology;
    std::int64_t p;
    std::size_t configurations;  ///< enumerated |Omega_n|
    mpz_class dp_count;
    std::optional<mpz_class> closed_form_count;
    mpq_class omega_norm;  ///< |enumerated count|_p
    std::optional<mpq_class> closed_form_norm;
    mpq_class partition_norm;
    mpq_class mu_norm_min;
    mpq_class mu_norm_max;
    bool weight_norms_all_one;
    bool normalization_ok;
    std::int64_t normalization_checked_to;
};

/// Enumerates Omega_n and records |mu_n(sigma)|_p over all sigma.
NormReport check_norms(const ModelParams& params, const BoundaryField& boundary, int n,
                       Topology topology = Topology::FullCayley, std::size_t cap = kDefaultEnumerationCap);

}  // namespace hardcore
