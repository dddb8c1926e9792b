#include "unimix/permutation.hpp"

#include "unimix/error.hpp"
#include "unimix/mdp.hpp"

#include <numeric>
#include <utility>

namespace unimix {

std::string Permutation::str() const {
    std::string out = "(";
    for (std::size_t i = 0; i < image.size(); ++i) {
        if (i) out += ',';
        out += std::to_string(image[i] + 1);
    }
    return out + ")";
}

int permutation_sign(std::span<const std::size_t> image) {
    std::vector<bool> visited(image.size(), false);
    int sign = 1;
    for (std::size_t start = 0; start < image.size(); ++start) {
        if (visited[start]) continue;
        std::size_t length = 0;
        for (std::size_t j = start; !visited[j]; j = image[j]) {
            visited[j] = true;
            ++length;
        }
        if (length % 2 == 0) sign = -sign;
    }
    return sign;
}

void for_each_gamma_prime(std::size_t n, std::size_t k, const PermutationVisitor& visit) {
    if (n > kMaxEnumerationN)
        throw EnumerationLimit("permutation enumeration supports n <= " +
                               std::to_string(kMaxEnumerationN) + ", got " + std::to_string(n));
    if (k > n) throw InvalidInput("policy index " + std::to_string(k) + " exceeds n = " + std::to_string(n));

    // slots[t] is the position that receives the t-th free value.
    std::vector<std::size_t> slots;
    slots.reserve(n);
    for (std::size_t j = 0; j <= n; ++j)
        if (j != k) slots.push_back(j);

    std::vector<std::size_t> values(n);
    std::iota(values.begin(), values.end(), std::size_t{0});

    std::vector<std::size_t> image(n + 1);
    image[k] = n;
    auto emit = [&](int sign) {
        for (std::size_t t = 0; t < n; ++t) image[slots[t]] = values[t];
        visit(image, sign);
    };

    // Starting image is the cycle k -> n -> n-1 -> ... -> k+1 -> k of length n-k+1.
    int sign = ((n - k) % 2 == 0) ? 1 : -1;
    emit(sign);

    std::vector<std::size_t> counters(n, 0);
    std::size_t i = 1;
    while (i < n) {
        if (counters[i] < i) {
            if (i % 2 == 0)
                std::swap(values[0], values[i]);
            else
                std::swap(values[counters[i]], values[i]);
            sign = -sign;
            emit(sign);
            ++counters[i];
            i = 1;
        } else {
            counters[i] = 0;
            ++i;
        }
    }
}

std::vector<Permutation> enumerate_gamma_prime(std::size_t n, std::size_t k) {
    std::vector<Permutation> out;
    for_each_gamma_prime(n, k, [&](std::span<const std::size_t> image, int sign) {
        out.push_back({std::vector<std::size_t>(image.begin(), image.end()), sign});
    });
    return out;
}

std::vector<Permutation> enumerate_gamma(const PolicyFamily& family, std::size_t k) {
    const std::size_t n = family.num_diff_states();
    const auto& words = family.base_words();
    std::vector<Permutation> out;
    for_each_gamma_prime(n, k, [&](std::span<const std::size_t> image, int sign) {
        for (std::size_t j = 0; j <= n; ++j)
            if (j != k && words[j][image[j]] != 0) return;
        out.push_back({std::vector<std::size_t>(image.begin(), image.end()), sign});
    });
    return out;
}

}  // namespace unimix
