#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "morl/types.hpp"

namespace morl {

/// Monotonically increasing map from a vector return to a scalar.
class UtilityFunction {
public:
    enum class Kind { Min, Linear, Tabulated };

    /// Smallest component; the fairness utility.
    static UtilityFunction min();

    /// Weighted sum. Weights must be non-negative and sum to 1.
    static UtilityFunction linear(std::vector<double> weights);

    /// Lookup table over a finite set of return vectors. Rejects tables that
    /// violate monotonicity on any comparable pair of points. Evaluating a
    /// vector that is not in the table is an error.
    static UtilityFunction tabulated(std::vector<std::pair<RewardVector, double>> table,
                                     double grid = 1e-9);

    double operator()(const RewardVector& v) const;

    Kind kind() const { return kind_; }
    const std::vector<double>& weights() const { return weights_; }

    /// Objective count this utility is tied to; 0 for min, which accepts any.
    std::size_t dimension() const;

    /// Canonical textual form, e.g. "min" or "linear:0.5,0.5".
    std::string spec() const;

private:
    Kind kind_ = Kind::Min;
    std::vector<double> weights_;
    std::map<std::vector<std::int64_t>, double> table_;
    std::size_t table_dim_ = 0;
    double grid_ = 1e-9;
};

/// Parses `min` or `linear:w1,w2,...`.
UtilityFunction parse_utility(const std::string& text);

}  // namespace morl
