#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string_view>

#include "elimvote/profile.hpp"

namespace elimvote {

enum class RandomModel { kUniform, kUrn };

/// CLI spellings: "uniform", "urn".
RandomModel model_from_string(std::string_view name);
std::string_view to_string(RandomModel model);

/// A random-profile request. `urn_a` is the urn reinforcement count (how
/// many extra copies of a drawn vote go back into the urn); leaving it
/// unset selects the default of m!, which is handled symbolically so it
/// works at any m. An explicit value requires m <= 20 (m! must fit in an
/// integer) and may be 0, which degenerates to the uniform model.
struct GeneratorSpec {
  RandomModel model = RandomModel::kUniform;
  int m = 0;
  long long n = 0;
  std::uint64_t seed = 0;
  std::optional<long long> urn_a;
};

/// n independent uniform random linear orders over candidates c1..cm,
/// produced by an unbiased Fisher–Yates shuffle. Pure function of its argument.
Profile uniform_profile(const GeneratorSpec& spec);

/// Pólya urn: the urn starts with every one of the m! orders once; each
/// drawn vote goes back along with `urn_a` extra copies. Implemented as the
/// equivalent sequential process — the k-th vote copies a uniformly chosen
/// earlier vote with probability k*a / (m! + k*a), otherwise it is a fresh
/// uniform order — so the urn is never materialized and the default a = m!
/// reduces to probability k/(k+1) without computing m!.
Profile urn_profile(const GeneratorSpec& spec);

/// Dispatches on spec.model.
Profile generate_profile(const GeneratorSpec& spec);

/// The fixed RNG for everything randomized in this project: std::mt19937_64
/// (bit-exact across platforms) seeded with mix64(seed) so that nearby
/// seeds such as base, base+1, ... start from uncorrelated states.
std::mt19937_64 make_rng(std::uint64_t seed);

/// SplitMix64 finalizer; also used to salt seeds for independent streams.
std::uint64_t mix64(std::uint64_t x);

/// Uniform integer in [0, bound) by rejection sampling on the raw 64-bit
/// stream — unbiased and identical on every platform, unlike
/// std::uniform_int_distribution. bound must be positive.
std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t bound);

/// In-place unbiased shuffle driven by bounded_u64.
void portable_shuffle(std::vector<int>& values, std::mt19937_64& rng);

}  // namespace elimvote
