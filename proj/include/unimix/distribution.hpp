#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace unimix {

/// Strictly positive probability vector over states.
///
/// Construction checks that the entries sum to 1 within `kSumTolerance` and
/// that every entry is > 0; it throws InvalidInput otherwise.
class Distribution {
public:
    static constexpr double kSumTolerance = 1e-10;

    explicit Distribution(std::vector<double> probs);

    /// Divides by the exact sum, then checks strict positivity. Throws
    /// NonPositiveResult when an entry is <= 0 (or the sum is not positive).
    static Distribution normalized(std::vector<double> weights);

    std::size_t size() const noexcept { return probs_.size(); }
    double operator[](std::size_t s) const noexcept { return probs_[s]; }
    std::span<const double> probs() const noexcept { return probs_; }

    bool operator==(const Distribution&) const = default;

private:
    std::vector<double> probs_;
};

/// Max componentwise absolute difference; sizes must match.
double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace unimix
