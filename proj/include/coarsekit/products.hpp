#pragma once

#include <string>
#include <vector>

#include "coarsekit/ext_real.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

// every pair of distinct points is at distance >= c
bool is_c_discrete(const SpacePtr& X, double c);

// Capped-sum product distance between coordinate tuples: per factor, equal
// coordinates contribute 0, pairs within the weight contribute the weight,
// and farther pairs contribute their own distance.
ExtReal asymptotic_metric(const std::vector<SpacePtr>& factors,
                          const std::vector<double>& weights,
                          const std::vector<int>& u, const std::vector<int>& v);

// Weighted l1 product distance: sum of weight * factor distance.
ExtReal reduced_metric(const std::vector<SpacePtr>& factors,
                       const std::vector<double>& weights,
                       const std::vector<int>& u, const std::vector<int>& v);

// Weighted product space over the leading factors whose full product stays
// within the point budget; the remaining factors are pinned to their first
// point via one-point subspaces.
SpacePtr build_product_space(const std::vector<SpacePtr>& factors,
                             const std::vector<double>& weights,
                             WeightedKind kind, std::int64_t budget = 1 << 16,
                             std::string name = "");

// Control functions between two metrics on the same point set, tabulated at
// every finite distance value: forward(t) = max d_A over pairs with d_B <= t,
// backward(t) = max d_B over pairs with d_A <= t.
struct EnvelopeTable {
    std::vector<double> thresholds;  // sorted distinct finite values, both metrics
    std::vector<ExtReal> forward;
    std::vector<ExtReal> backward;
    bool finite() const {
        for (const auto& v : forward)
            if (v.is_inf()) return false;
        for (const auto& v : backward)
            if (v.is_inf()) return false;
        return true;
    }
};

// Both spaces must have the same point count; pairs are matched by index.
EnvelopeTable coarse_envelope(const SpacePtr& A, const SpacePtr& B);

std::string envelope_csv(const EnvelopeTable& t);

}  // namespace coarsekit
