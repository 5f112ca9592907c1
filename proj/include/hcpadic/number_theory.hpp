#pragma once

#include <cstdint>
#include <vector>

namespace hardcore {

/// Deterministic Miller-Rabin for all 64-bit n (bases 2..37).
bool is_prime(std::uint64_t n);

/// Distinct prime factors of n >= 1, ascending. Trial division to 10^6,
/// then Pollard rho (Brent) with every factor certified by is_prime.
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

/// 2^k - 1 for 1 <= k <= 64.
std::uint64_t mersenne(unsigned k);

/// p | n with the convention that every p divides 0.
inline bool divides(std::int64_t p, std::int64_t n) { return n % p == 0; }

}  // namespace hardcore
