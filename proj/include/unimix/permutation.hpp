#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace unimix {

class PolicyFamily;

/// Largest n for which the (n+1)-element permutation sets are enumerated.
inline constexpr std::size_t kMaxEnumerationN = 10;

/// Bijection on {0, ..., m-1} with its sign. Printing uses 1-based images.
struct Permutation {
    std::vector<std::size_t> image;
    int sign = 1;

    std::string str() const;  // "(2,1,4,3)"
    bool operator==(const Permutation&) const = default;
};

/// Sign by cycle decomposition. `image` must be a bijection.
int permutation_sign(std::span<const std::size_t> image);

using PermutationVisitor = std::function<void(std::span<const std::size_t> image, int sign)>;

/// Visits every permutation gamma of {0..n} with gamma(k) = n, i.e. the n!
/// arrangements of {0..n-1} on the slots other than k, generated by Heap's
/// algorithm with the sign flipped on every swap. Throws EnumerationLimit
/// for n > kMaxEnumerationN and InvalidInput for k > n.
void for_each_gamma_prime(std::size_t n, std::size_t k, const PermutationVisitor& visit);

std::vector<Permutation> enumerate_gamma_prime(std::size_t n, std::size_t k);

/// Gamma_k for a family whose target is the all-ones word: the members of
/// enumerate_gamma_prime(n, k) for which base word j has a 0 at position
/// gamma(j) for every j != k. `k` is a 0-based policy index.
std::vector<Permutation> enumerate_gamma(const PolicyFamily& family, std::size_t k);

}  // namespace unimix
