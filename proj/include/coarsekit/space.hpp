#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coarsekit/ext_real.hpp"
#include "coarsekit/point_set.hpp"

namespace coarsekit {

class FiniteMetricSpace;
using SpacePtr = std::shared_ptr<const FiniteMetricSpace>;

enum class Norm { L1, Sup };

// How the combined metric of a weighted product is computed from the factor
// distances rho_d and the per-factor weights a(d):
//   Asymptotic: sum of r_d where r_d = a(d) if coordinates differ and
//               rho_d <= a(d); r_d = rho_d if rho_d > a(d); r_d = 0 otherwise.
//   Reduced:    sum of a(d) * rho_d.
enum class WeightedKind { Asymptotic, Reduced };

enum class MetricKind {
    Table,            // explicit square distance table
    Interval,         // {0..n-1} with |i-j| * scale
    Grid,             // axis-aligned box, per-axis |di| combined by norm
    DisjointUnion,    // cross-part distances are infinite
    Product,          // finite product of factor spaces, L1 or sup
    WeightedProduct,  // asymptotic / reduced product metric
    Subspace,         // induced metric on a subset of a parent space
};

// A finite space with an extended pseudo-metric: d(x,x)=0, d symmetric, the
// triangle inequality holds whenever all three values are finite. Distinct
// points may sit at distance 0 or infinity. Instances are immutable and
// shared through SpacePtr.
class FiniteMetricSpace {
  public:
    int n() const { return n_; }
    const std::string& name() const { return name_; }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    MetricKind kind() const { return kind_; }

    double dist(int i, int j) const {
        switch (kind_) {
            case MetricKind::Table:
                return table_[static_cast<std::size_t>(i) * n_ + j];
            case MetricKind::Interval: {
                double d = coords_[i] - coords_[j];
                return d < 0 ? -d : d;
            }
            case MetricKind::Grid:
                return grid_dist(i, j);
            case MetricKind::DisjointUnion:
                return union_dist(i, j);
            case MetricKind::Product:
                return product_dist(i, j);
            case MetricKind::WeightedProduct:
                return weighted_dist(i, j);
            case MetricKind::Subspace:
                return parent_->dist(map_[i], map_[j]);
        }
        return 0.0;
    }
    ExtReal distance(int i, int j) const { return ExtReal(dist(i, j)); }

    // Accessors used by serialization; meaningful per kind.
    const std::vector<double>& table() const { return table_; }
    const std::vector<std::int64_t>& dims() const { return dims_; }
    double scale() const { return scale_; }
    Norm norm() const { return norm_; }
    WeightedKind weighted_kind() const { return wkind_; }
    const std::vector<SpacePtr>& children() const { return children_; }
    const std::vector<double>& weights() const { return weights_; }
    const SpacePtr& parent() const { return parent_; }
    const std::vector<int>& subspace_map() const { return map_; }

    // Position of a point within a product/weighted-product along factor f.
    int factor_index(int i, int f) const {
        return static_cast<int>((i / strides_[f]) % children_[f]->n());
    }
    // Index of the product point with the given per-factor positions.
    int point_at(const std::vector<int>& pos) const {
        std::int64_t i = 0;
        for (std::size_t f = 0; f < pos.size(); ++f) i += pos[f] * strides_[f];
        return static_cast<int>(i);
    }

    struct TriangleViolation {
        int i, j, k;
        double dij, dik, dkj;
    };
    // Full O(n^3) check of symmetry, zero diagonal, non-negativity and the
    // finite-triple triangle inequality. Returns the first violation found.
    std::optional<TriangleViolation> validate_full() const;
    // Deterministic sampled variant for generator-backed spaces.
    std::optional<TriangleViolation> validate_sampled(int samples = 20000) const;

    // Deep content equality: same name, labels, and pairwise distances.
    bool same_space(const FiniteMetricSpace& o) const;

  private:
    double grid_dist(int i, int j) const {
        const std::int32_t* a = &coords32_[static_cast<std::size_t>(i) * naxes_];
        const std::int32_t* b = &coords32_[static_cast<std::size_t>(j) * naxes_];
        if (norm_ == Norm::L1) {
            std::int64_t s = 0;
            for (int k = 0; k < naxes_; ++k) {
                std::int64_t d = a[k] - b[k];
                s += d < 0 ? -d : d;
            }
            return s * scale_;
        }
        std::int64_t m = 0;
        for (int k = 0; k < naxes_; ++k) {
            std::int64_t d = a[k] - b[k];
            if (d < 0) d = -d;
            if (d > m) m = d;
        }
        return m * scale_;
    }

    double union_dist(int i, int j) const {
        // offsets_ holds child start indices, ascending.
        int ci = child_of(i), cj = child_of(j);
        if (ci != cj) return kInfinity;
        return children_[ci]->dist(i - static_cast<int>(offsets_[ci]),
                                   j - static_cast<int>(offsets_[ci]));
    }
    int child_of(int i) const {
        int lo = 0, hi = static_cast<int>(offsets_.size()) - 1;
        while (lo < hi) {
            int mid = (lo + hi + 1) / 2;
            if (offsets_[mid] <= i) lo = mid; else hi = mid - 1;
        }
        return lo;
    }

    double product_dist(int i, int j) const {
        double acc = 0.0;
        for (std::size_t f = 0; f < children_.size(); ++f) {
            int nf = children_[f]->n();
            int a = static_cast<int>((i / strides_[f]) % nf);
            int b = static_cast<int>((j / strides_[f]) % nf);
            double d = children_[f]->dist(a, b);
            if (norm_ == Norm::L1) acc += d;
            else if (d > acc) acc = d;
        }
        return acc;
    }

    double weighted_dist(int i, int j) const {
        double acc = 0.0;
        for (std::size_t f = 0; f < children_.size(); ++f) {
            int nf = children_[f]->n();
            int a = static_cast<int>((i / strides_[f]) % nf);
            int b = static_cast<int>((j / strides_[f]) % nf);
            double rho = children_[f]->dist(a, b);
            double alpha = weights_[f];
            double term;
            if (wkind_ == WeightedKind::Reduced) {
                term = a == b ? 0.0 : alpha * rho;
            } else {
                if (a == b) term = 0.0;
                else if (rho <= alpha) term = alpha;
                else term = rho;
            }
            acc += term;
        }
        return acc;
    }

    friend class SpaceBuilder;

    std::string name_;
    std::vector<std::string> labels_;
    MetricKind kind_ = MetricKind::Table;
    int n_ = 0;

    std::vector<double> table_;            // Table
    std::vector<double> coords_;           // Interval: point coordinates
    std::vector<std::int32_t> coords32_;   // Grid: n * naxes coordinates
    int naxes_ = 0;
    std::vector<std::int64_t> dims_;       // Grid
    double scale_ = 1.0;
    Norm norm_ = Norm::L1;
    WeightedKind wkind_ = WeightedKind::Asymptotic;
    std::vector<SpacePtr> children_;       // union / products
    std::vector<std::int64_t> offsets_;    // union
    std::vector<std::int64_t> strides_;    // products
    std::vector<double> weights_;          // weighted product
    SpacePtr parent_;                      // subspace
    std::vector<int> map_;                 // subspace -> parent indices
};

// Builders. Generated labels are deterministic: intervals/grids use decimal
// indices / coordinate tuples, unions prefix the part number, products join
// factor labels.
SpacePtr make_interval(int n, double scale = 1.0, std::string name = "");
SpacePtr make_grid(std::vector<std::int64_t> dims, Norm norm = Norm::L1,
                   double scale = 1.0, std::string name = "");
SpacePtr make_table(std::vector<std::string> labels, std::vector<double> table,
                    std::string name = "");
// Weighted undirected graph; the metric is shortest-path length, infinite
// across components. Edges are (u, v, w) index triples.
SpacePtr make_graph(std::vector<std::string> labels,
                    const std::vector<std::tuple<int, int, double>>& edges,
                    std::string name = "");
SpacePtr make_disjoint_union(std::vector<SpacePtr> parts, std::string name = "");
SpacePtr make_product(std::vector<SpacePtr> factors, Norm norm = Norm::L1,
                      std::string name = "");
SpacePtr make_weighted_product(std::vector<SpacePtr> factors,
                               std::vector<double> weights, WeightedKind kind,
                               std::string name = "");
SpacePtr make_subspace(const SpacePtr& parent, const PointSet& points,
                       std::string name = "");

// Same metric and kind as base, with the given labels (and optionally a new
// name). Empty labels vector keeps the generated labels.
SpacePtr relabel(const SpacePtr& base, std::vector<std::string> labels,
                 std::string name = "");

// New space with distance beta(d(x,y)) where beta is non-decreasing with
// beta(0) = 0 and subadditive over the occurring finite distance values
// (validated; beta(inf) = inf). Materialized as an explicit table.
SpacePtr transform_metric(const SpacePtr& base,
                          const std::vector<std::pair<double, double>>& beta_steps,
                          std::string name = "");

}  // namespace coarsekit
