#include "morl/utility.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ranges.h>

#include "morl/momdp.hpp"

namespace morl {

UtilityFunction UtilityFunction::min() { return UtilityFunction{}; }

UtilityFunction UtilityFunction::linear(std::vector<double> weights) {
    if (weights.empty()) throw InvalidInput("linear utility needs at least one weight");
    double sum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw InvalidInput(fmt::format("linear weight {} is negative", w));
        sum += w;
    }
    if (std::abs(sum - 1.0) > 1e-9) throw InvalidInput(fmt::format("linear weights sum to {}, not 1", sum));
    UtilityFunction u;
    u.kind_ = Kind::Linear;
    u.weights_ = std::move(weights);
    return u;
}

UtilityFunction UtilityFunction::tabulated(std::vector<std::pair<RewardVector, double>> table, double grid) {
    if (table.empty()) throw InvalidInput("tabulated utility needs at least one entry");
    const std::size_t dim = table.front().first.size();
    for (const auto& [x, ux] : table) {
        if (x.size() != dim) throw InvalidInput("tabulated utility points have mixed dimensions");
        for (const auto& [y, uy] : table) {
            bool dominates = true;
            for (std::size_t i = 0; i < dim; ++i) dominates = dominates && x[i] >= y[i];
            if (dominates && ux < uy)
                throw InvalidInput(fmt::format("tabulated utility is not monotone: u({}) = {} < u({}) = {}",
                                               fmt::join(x, ","), ux, fmt::join(y, ","), uy));
        }
    }
    UtilityFunction u;
    u.kind_ = Kind::Tabulated;
    u.grid_ = grid;
    u.table_dim_ = dim;
    for (auto& [x, ux] : table) u.table_[quantize(x, grid)] = ux;
    return u;
}

std::size_t UtilityFunction::dimension() const {
    switch (kind_) {
        case Kind::Min: return 0;
        case Kind::Linear: return weights_.size();
        case Kind::Tabulated: return table_dim_;
    }
    return 0;
}

double UtilityFunction::operator()(const RewardVector& v) const {
    if (v.empty()) throw InvalidInput("utility of an empty vector");
    const std::size_t dim = dimension();
    if (dim != 0 && dim != v.size())
        throw InvalidInput(fmt::format("utility expects dimension {}, got {}", dim, v.size()));
    switch (kind_) {
        case Kind::Min: return *std::min_element(v.begin(), v.end());
        case Kind::Linear: {
            double s = 0.0;
            for (std::size_t i = 0; i < v.size(); ++i) s += weights_[i] * v[i];
            return s;
        }
        case Kind::Tabulated: {
            auto it = table_.find(quantize(v, grid_));
            if (it == table_.end())
                throw InvalidInput(fmt::format("vector ({}) is not in the utility table", fmt::join(v, ",")));
            return it->second;
        }
    }
    return 0.0;
}

std::string UtilityFunction::spec() const {
    switch (kind_) {
        case Kind::Min: return "min";
        case Kind::Linear: return fmt::format("linear:{}", fmt::join(weights_, ","));
        case Kind::Tabulated: return fmt::format("tabulated:{}", table_.size());
    }
    return "?";
}

UtilityFunction parse_utility(const std::string& text) {
    if (text == "min") return UtilityFunction::min();
    const std::string prefix = "linear:";
    if (text.rfind(prefix, 0) == 0) {
        std::vector<double> weights;
        std::stringstream ss(text.substr(prefix.size()));
        std::string item;
        while (std::getline(ss, item, ',')) {
            try {
                std::size_t used = 0;
                weights.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::logic_error&) {
                throw InvalidInput(fmt::format("bad weight '{}' in utility spec '{}'", item, text));
            }
        }
        return UtilityFunction::linear(std::move(weights));
    }
    throw InvalidInput(fmt::format("unknown utility spec '{}' (expected min or linear:w1,w2,...)", text));
}

}  // namespace morl
