#include "unimix/distribution.hpp"

#include "unimix/error.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

namespace unimix {

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
    if (probs_.empty()) throw InvalidInput("distribution must have at least one state");
    double sum = 0.0;
    for (std::size_t s = 0; s < probs_.size(); ++s) {
        const double p = probs_[s];
        if (!(p > 0.0)) {
            std::ostringstream msg;
            msg << "distribution entry " << s << " is not strictly positive (" << p << ")";
            throw InvalidInput(msg.str());
        }
        sum += p;
    }
    if (std::abs(sum - 1.0) > kSumTolerance) {
        std::ostringstream msg;
        msg.precision(17);
        msg << "distribution sums to " << sum;
        throw InvalidInput(msg.str());
    }
}

Distribution Distribution::normalized(std::vector<double> weights) {
    const double sum = std::accumulate(weights.begin(), weights.end(), 0.0);
    if (!(sum > 0.0) || !std::isfinite(sum)) {
        std::ostringstream msg;
        msg << "cannot normalize weights with sum " << sum;
        throw NonPositiveResult(msg.str());
    }
    for (std::size_t s = 0; s < weights.size(); ++s) {
        weights[s] /= sum;
        if (!(weights[s] > 0.0)) {
            std::ostringstream msg;
            msg << "normalized entry " << s << " is " << weights[s];
            throw NonPositiveResult(msg.str());
        }
    }
    return Distribution(std::move(weights));
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
    return worst;
}

}  // namespace unimix
