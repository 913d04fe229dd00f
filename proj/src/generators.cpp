#include "elimvote/generators.hpp"

#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace elimvote {

namespace {

using u128 = unsigned __int128;

CandidateSet numbered_candidates(int m) {
  std::vector<std::string> names;
  names.reserve(static_cast<std::size_t>(m));
  for (int i = 1; i <= m; ++i) names.push_back("c" + std::to_string(i));
  return CandidateSet{std::move(names)};
}

void validate(const GeneratorSpec& spec) {
  if (spec.m < 2) throw std::invalid_argument("generator needs at least 2 candidates");
  if (spec.n < 1) throw std::invalid_argument("generator needs at least 1 voter");
  if (spec.urn_a && *spec.urn_a < 0) {
    throw std::invalid_argument("urn reinforcement count must be non-negative");
  }
}

std::uint64_t raw_u128_half(std::mt19937_64& rng) { return rng(); }

/// Uniform in [0, bound) over 128-bit arithmetic, same rejection scheme as
/// bounded_u64. bound must be positive.
u128 bounded_u128(std::mt19937_64& rng, u128 bound) {
  const u128 max = ~static_cast<u128>(0);
  const u128 rem = (max % bound + 1) % bound;  // 2^128 mod bound
  const u128 cutoff = max - rem;               // largest accepted value
  for (;;) {
    const u128 x = (static_cast<u128>(raw_u128_half(rng)) << 64) | raw_u128_half(rng);
    if (x <= cutoff) return x % bound;
  }
}

LinearOrder fresh_order(int m, std::mt19937_64& rng) {
  std::vector<int> ranking(static_cast<std::size_t>(m));
  std::iota(ranking.begin(), ranking.end(), 0);
  portable_shuffle(ranking, rng);
  return LinearOrder{std::move(ranking)};
}

u128 factorial_u128(int m) {
  u128 f = 1;
  for (int i = 2; i <= m; ++i) f *= static_cast<u128>(i);
  return f;
}

}  // namespace

RandomModel model_from_string(std::string_view name) {
  if (name == "uniform") return RandomModel::kUniform;
  if (name == "urn") return RandomModel::kUrn;
  throw std::invalid_argument("unknown vote model: " + std::string(name));
}

std::string_view to_string(RandomModel model) {
  return model == RandomModel::kUniform ? "uniform" : "urn";
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

std::mt19937_64 make_rng(std::uint64_t seed) { return std::mt19937_64(mix64(seed)); }

std::uint64_t bounded_u64(std::mt19937_64& rng, std::uint64_t bound) {
  const std::uint64_t max = ~0ull;
  const std::uint64_t rem = (max % bound + 1) % bound;  // 2^64 mod bound
  const std::uint64_t cutoff = max - rem;
  for (;;) {
    const std::uint64_t x = rng();
    if (x <= cutoff) return x % bound;
  }
}

void portable_shuffle(std::vector<int>& values, std::mt19937_64& rng) {
  for (std::size_t i = values.size(); i > 1; --i) {
    const std::size_t j = static_cast<std::size_t>(bounded_u64(rng, i));
    std::swap(values[i - 1], values[j]);
  }
}

Profile uniform_profile(const GeneratorSpec& spec) {
  validate(spec);
  if (spec.model != RandomModel::kUniform) {
    throw std::invalid_argument("spec does not request the uniform model");
  }
  std::mt19937_64 rng = make_rng(spec.seed);
  Profile profile(numbered_candidates(spec.m));
  for (long long i = 0; i < spec.n; ++i) {
    profile.add_ballot(fresh_order(spec.m, rng), Rational(1));
  }
  return profile;
}

Profile urn_profile(const GeneratorSpec& spec) {
  validate(spec);
  if (spec.model != RandomModel::kUrn) {
    throw std::invalid_argument("spec does not request the urn model");
  }
  const bool default_a = !spec.urn_a.has_value();
  u128 a = 0;
  u128 m_factorial = 0;
  if (!default_a) {
    if (spec.m > 20) {
      throw std::invalid_argument(
          "explicit urn reinforcement needs m <= 20 (m! must be computed exactly); "
          "omit it to use the default of m!");
    }
    a = static_cast<u128>(*spec.urn_a);
    m_factorial = factorial_u128(spec.m);
  }

  std::mt19937_64 rng = make_rng(spec.seed);
  Profile profile(numbered_candidates(spec.m));
  std::vector<LinearOrder> drawn;
  drawn.reserve(static_cast<std::size_t>(spec.n));
  for (long long k = 0; k < spec.n; ++k) {
    bool copy = false;
    if (k > 0) {
      if (default_a) {
        // a = m! makes the copy probability k*a / (m! + k*a) = k/(k+1).
        copy = bounded_u64(rng, static_cast<std::uint64_t>(k) + 1) <
               static_cast<std::uint64_t>(k);
      } else if (a > 0) {
        const u128 copies = static_cast<u128>(k) * a;
        copy = bounded_u128(rng, m_factorial + copies) < copies;
      }
    }
    if (copy) {
      const std::uint64_t idx = bounded_u64(rng, static_cast<std::uint64_t>(k));
      drawn.push_back(drawn[static_cast<std::size_t>(idx)]);
    } else {
      drawn.push_back(fresh_order(spec.m, rng));
    }
    profile.add_ballot(drawn.back(), Rational(1));
  }
  return profile;
}

Profile generate_profile(const GeneratorSpec& spec) {
  return spec.model == RandomModel::kUniform ? uniform_profile(spec) : urn_profile(spec);
}

}  // namespace elimvote
