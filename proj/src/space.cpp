#include "coarsekit/space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coarsekit/errors.hpp"

namespace coarsekit {

namespace {

bool bad_value(double d) { return std::isnan(d) || d < 0.0; }

std::string join_labels(const std::vector<std::string>& parts) {
    std::string s = "(";
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i) s += ",";
        s += parts[i];
    }
    s += ")";
    return s;
}

}  // namespace

// SpaceBuilder is a friend of FiniteMetricSpace; all make_* functions funnel
// through it so the class itself stays immutable.
class SpaceBuilder {
  public:
    static std::shared_ptr<FiniteMetricSpace> fresh() {
        return std::make_shared<FiniteMetricSpace>();
    }
    static void set_core(FiniteMetricSpace& s, MetricKind k, int n,
                         std::string name, std::vector<std::string> labels) {
        s.kind_ = k;
        s.n_ = n;
        s.name_ = std::move(name);
        s.labels_ = std::move(labels);
    }
    static std::vector<double>& table(FiniteMetricSpace& s) { return s.table_; }
    static std::vector<double>& coords(FiniteMetricSpace& s) { return s.coords_; }
    static std::vector<std::int32_t>& coords32(FiniteMetricSpace& s) { return s.coords32_; }
    static int& naxes(FiniteMetricSpace& s) { return s.naxes_; }
    static std::vector<std::int64_t>& dims(FiniteMetricSpace& s) { return s.dims_; }
    static double& scale(FiniteMetricSpace& s) { return s.scale_; }
    static Norm& norm(FiniteMetricSpace& s) { return s.norm_; }
    static WeightedKind& wkind(FiniteMetricSpace& s) { return s.wkind_; }
    static std::vector<SpacePtr>& children(FiniteMetricSpace& s) { return s.children_; }
    static std::vector<std::int64_t>& offsets(FiniteMetricSpace& s) { return s.offsets_; }
    static std::vector<std::int64_t>& strides(FiniteMetricSpace& s) { return s.strides_; }
    static std::vector<double>& weights(FiniteMetricSpace& s) { return s.weights_; }
    static SpacePtr& parent(FiniteMetricSpace& s) { return s.parent_; }
    static std::vector<int>& map(FiniteMetricSpace& s) { return s.map_; }
};

std::optional<FiniteMetricSpace::TriangleViolation>
FiniteMetricSpace::validate_full() const {
    for (int i = 0; i < n_; ++i) {
        if (dist(i, i) != 0.0)
            return TriangleViolation{i, i, i, dist(i, i), 0, 0};
        for (int j = 0; j < n_; ++j) {
            double dij = dist(i, j);
            if (bad_value(dij))
                return TriangleViolation{i, j, j, dij, 0, 0};
            if (dij != dist(j, i))
                return TriangleViolation{i, j, i, dij, dist(j, i), 0};
        }
    }
    for (int i = 0; i < n_; ++i)
        for (int k = 0; k < n_; ++k) {
            double dik = dist(i, k);
            if (std::isinf(dik)) continue;
            for (int j = 0; j < n_; ++j) {
                double dkj = dist(k, j);
                if (std::isinf(dkj)) continue;
                double dij = dist(i, j);
                // the triangle inequality binds only among all-finite triples
                if (!std::isinf(dij) && dij > dik + dkj)
                    return TriangleViolation{i, j, k, dij, dik, dkj};
            }
        }
    return std::nullopt;
}

std::optional<FiniteMetricSpace::TriangleViolation>
FiniteMetricSpace::validate_sampled(int samples) const {
    if (n_ == 0) return std::nullopt;
    // deterministic linear congruential sampling
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return static_cast<int>((state >> 33) % n_);
    };
    for (int t = 0; t < samples; ++t) {
        int i = next(), j = next(), k = next();
        double dij = dist(i, j), dik = dist(i, k), dkj = dist(k, j);
        if (bad_value(dij)) return TriangleViolation{i, j, k, dij, dik, dkj};
        if (dij != dist(j, i)) return TriangleViolation{i, j, k, dij, dik, dkj};
        if (i == j && dij != 0.0) return TriangleViolation{i, j, k, dij, 0, 0};
        if (!std::isinf(dij) && !std::isinf(dik) && !std::isinf(dkj) &&
            dij > dik + dkj)
            return TriangleViolation{i, j, k, dij, dik, dkj};
    }
    return std::nullopt;
}

bool FiniteMetricSpace::same_space(const FiniteMetricSpace& o) const {
    if (n_ != o.n_ || name_ != o.name_ || labels_ != o.labels_) return false;
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
            if (dist(i, j) != o.dist(i, j)) return false;
    return true;
}

SpacePtr make_interval(int n, double scale, std::string name) {
    if (n < 0) throw ValidationError("interval size must be non-negative");
    if (!(scale > 0.0)) throw ValidationError("interval scale must be positive");
    auto sp = SpaceBuilder::fresh();
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) labels[i] = std::to_string(i);
    if (name.empty()) {
        name = "I" + std::to_string(n);
        if (scale != 1.0) name += "x" + ExtReal(scale).str();
    }
    SpaceBuilder::set_core(*sp, MetricKind::Interval, n, std::move(name),
                           std::move(labels));
    auto& c = SpaceBuilder::coords(*sp);
    c.resize(n);
    for (int i = 0; i < n; ++i) c[i] = i * scale;
    SpaceBuilder::scale(*sp) = scale;
    return sp;
}

SpacePtr make_grid(std::vector<std::int64_t> dims, Norm norm, double scale,
                   std::string name) {
    if (dims.empty()) throw ValidationError("grid needs at least one axis");
    if (!(scale > 0.0)) throw ValidationError("grid scale must be positive");
    std::int64_t n64 = 1;
    for (auto d : dims) {
        if (d <= 0) throw ValidationError("grid axis lengths must be positive");
        n64 *= d;
        if (n64 > (1 << 26)) throw ValidationError("grid too large");
    }
    int n = static_cast<int>(n64);
    int naxes = static_cast<int>(dims.size());
    auto sp = SpaceBuilder::fresh();
    std::vector<std::string> labels(n);
    std::vector<std::int32_t> coords(static_cast<std::size_t>(n) * naxes);
    for (int i = 0; i < n; ++i) {
        std::int64_t rest = i;
        // row-major: last axis varies fastest
        for (int k = naxes - 1; k >= 0; --k) {
            coords[static_cast<std::size_t>(i) * naxes + k] =
                static_cast<std::int32_t>(rest % dims[k]);
            rest /= dims[k];
        }
        std::string lab = "(";
        for (int k = 0; k < naxes; ++k) {
            if (k) lab += ",";
            lab += std::to_string(coords[static_cast<std::size_t>(i) * naxes + k]);
        }
        lab += ")";
        labels[i] = std::move(lab);
    }
    if (name.empty()) {
        name = "G";
        for (std::size_t k = 0; k < dims.size(); ++k) {
            if (k) name += "x";
            name += std::to_string(dims[k]);
        }
        if (norm == Norm::Sup) name += "sup";
    }
    SpaceBuilder::set_core(*sp, MetricKind::Grid, n, std::move(name),
                           std::move(labels));
    SpaceBuilder::coords32(*sp) = std::move(coords);
    SpaceBuilder::naxes(*sp) = naxes;
    SpaceBuilder::dims(*sp) = std::move(dims);
    SpaceBuilder::scale(*sp) = scale;
    SpaceBuilder::norm(*sp) = norm;
    return sp;
}

SpacePtr make_table(std::vector<std::string> labels, std::vector<double> table,
                    std::string name) {
    int n = static_cast<int>(labels.size());
    if (table.size() != static_cast<std::size_t>(n) * n)
        throw ValidationError("distance table must be square and match labels");
    auto sp = SpaceBuilder::fresh();
    if (name.empty()) name = "T" + std::to_string(n);
    SpaceBuilder::set_core(*sp, MetricKind::Table, n, std::move(name),
                           std::move(labels));
    SpaceBuilder::table(*sp) = std::move(table);
    if (auto v = sp->validate_full()) {
        std::ostringstream os;
        os << "invalid metric table: ";
        if (v->i == v->j && v->j == v->k)
            os << "d(" << sp->label(v->i) << "," << sp->label(v->i)
               << ") = " << v->dij << " != 0";
        else if (v->dkj == 0 && v->dik != sp->dist(v->i, v->j))
            os << "value at (" << sp->label(v->i) << "," << sp->label(v->j)
               << ") is negative or NaN";
        else if (v->i == v->k)
            os << "asymmetric: d(" << sp->label(v->i) << "," << sp->label(v->j)
               << ") = " << v->dij << " but d(" << sp->label(v->j) << ","
               << sp->label(v->i) << ") = " << v->dik;
        else
            os << "triangle violated: d(" << sp->label(v->i) << ","
               << sp->label(v->j) << ") = " << v->dij << " > "
               << v->dik << " + " << v->dkj << " = d(" << sp->label(v->i) << ","
               << sp->label(v->k) << ") + d(" << sp->label(v->k) << ","
               << sp->label(v->j) << ")";
        throw ValidationError(os.str());
    }
    return sp;
}

SpacePtr make_graph(std::vector<std::string> labels,
                    const std::vector<std::tuple<int, int, double>>& edges,
                    std::string name) {
    int n = static_cast<int>(labels.size());
    std::vector<double> d(static_cast<std::size_t>(n) * n, kInfinity);
    for (int i = 0; i < n; ++i) d[static_cast<std::size_t>(i) * n + i] = 0.0;
    for (auto& [u, v, w] : edges) {
        if (u < 0 || u >= n || v < 0 || v >= n)
            throw ValidationError("graph edge endpoint out of range");
        if (bad_value(w)) throw ValidationError("graph edge weight must be non-negative");
        auto& duv = d[static_cast<std::size_t>(u) * n + v];
        auto& dvu = d[static_cast<std::size_t>(v) * n + u];
        duv = std::min(duv, w);
        dvu = std::min(dvu, w);
    }
    // Floyd-Warshall
    for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i) {
            double dik = d[static_cast<std::size_t>(i) * n + k];
            if (std::isinf(dik)) continue;
            for (int j = 0; j < n; ++j) {
                double alt = dik + d[static_cast<std::size_t>(k) * n + j];
                auto& dij = d[static_cast<std::size_t>(i) * n + j];
                if (alt < dij) dij = alt;
            }
        }
    if (name.empty()) name = "graph" + std::to_string(n);
    return make_table(std::move(labels), std::move(d), std::move(name));
}

SpacePtr make_disjoint_union(std::vector<SpacePtr> parts, std::string name) {
    if (parts.empty()) throw ValidationError("disjoint union needs at least one part");
    int n = 0;
    std::vector<std::int64_t> offsets;
    std::vector<std::string> labels;
    for (std::size_t p = 0; p < parts.size(); ++p) {
        offsets.push_back(n);
        for (int i = 0; i < parts[p]->n(); ++i)
            labels.push_back(std::to_string(p) + ":" + parts[p]->label(i));
        n += parts[p]->n();
    }
    if (name.empty()) {
        name = "U(";
        for (std::size_t p = 0; p < parts.size(); ++p) {
            if (p) name += ",";
            name += parts[p]->name();
        }
        name += ")";
    }
    auto sp = SpaceBuilder::fresh();
    SpaceBuilder::set_core(*sp, MetricKind::DisjointUnion, n, std::move(name),
                           std::move(labels));
    SpaceBuilder::children(*sp) = std::move(parts);
    SpaceBuilder::offsets(*sp) = std::move(offsets);
    return sp;
}

namespace {

// shared by make_product / make_weighted_product
void build_product_core(std::shared_ptr<FiniteMetricSpace>& sp, MetricKind kind,
                        std::vector<SpacePtr> factors, std::string name,
                        const char* auto_prefix) {
    if (factors.empty()) throw ValidationError("product needs at least one factor");
    std::int64_t n64 = 1;
    for (auto& f : factors) {
        n64 *= std::max(1, f->n());
        if (n64 > (1 << 26)) throw ValidationError("product space too large");
        if (f->n() == 0) n64 = 0;
    }
    int n = static_cast<int>(n64);
    int nf = static_cast<int>(factors.size());
    // row-major strides: last factor varies fastest
    std::vector<std::int64_t> strides(nf, 1);
    for (int f = nf - 2; f >= 0; --f)
        strides[f] = strides[f + 1] * factors[f + 1]->n();
    std::vector<std::string> labels(n);
    for (int i = 0; i < n; ++i) {
        std::vector<std::string> parts(nf);
        for (int f = 0; f < nf; ++f)
            parts[f] = factors[f]->label(
                static_cast<int>((i / strides[f]) % factors[f]->n()));
        labels[i] = join_labels(parts);
    }
    if (name.empty()) {
        name = auto_prefix;
        name += "(";
        for (int f = 0; f < nf; ++f) {
            if (f) name += ",";
            name += factors[f]->name();
        }
        name += ")";
    }
    SpaceBuilder::set_core(*sp, kind, n, std::move(name), std::move(labels));
    SpaceBuilder::children(*sp) = std::move(factors);
    SpaceBuilder::strides(*sp) = std::move(strides);
}

}  // namespace

SpacePtr make_product(std::vector<SpacePtr> factors, Norm norm, std::string name) {
    auto sp = SpaceBuilder::fresh();
    build_product_core(sp, MetricKind::Product, std::move(factors),
                       std::move(name), norm == Norm::L1 ? "P" : "Psup");
    SpaceBuilder::norm(*sp) = norm;
    return sp;
}

SpacePtr make_weighted_product(std::vector<SpacePtr> factors,
                               std::vector<double> weights, WeightedKind kind,
                               std::string name) {
    if (weights.size() != factors.size())
        throw ValidationError("one weight per factor required");
    for (double w : weights)
        if (bad_value(w) || w == 0.0)
            throw ValidationError("weights must be positive");
    auto sp = SpaceBuilder::fresh();
    build_product_core(sp, MetricKind::WeightedProduct, std::move(factors),
                       std::move(name),
                       kind == WeightedKind::Asymptotic ? "A" : "R");
    SpaceBuilder::wkind(*sp) = kind;
    SpaceBuilder::weights(*sp) = std::move(weights);
    return sp;
}

SpacePtr make_subspace(const SpacePtr& parent, const PointSet& points,
                       std::string name) {
    if (points.capacity() != parent->n())
        throw ValidationError("subspace point set does not match parent");
    auto sp = SpaceBuilder::fresh();
    std::vector<int> map = points.indices();
    std::vector<std::string> labels(map.size());
    for (std::size_t i = 0; i < map.size(); ++i) labels[i] = parent->label(map[i]);
    if (name.empty()) name = parent->name() + "|" + std::to_string(map.size());
    // flatten nested subspaces
    SpacePtr real_parent = parent;
    if (parent->kind() == MetricKind::Subspace) {
        std::vector<int> composed(map.size());
        for (std::size_t i = 0; i < map.size(); ++i)
            composed[i] = parent->subspace_map()[map[i]];
        map = std::move(composed);
        real_parent = parent->parent();
    }
    SpaceBuilder::set_core(*sp, MetricKind::Subspace,
                           static_cast<int>(map.size()), std::move(name),
                           std::move(labels));
    SpaceBuilder::parent(*sp) = real_parent;
    SpaceBuilder::map(*sp) = std::move(map);
    return sp;
}

SpacePtr transform_metric(const SpacePtr& base,
                          const std::vector<std::pair<double, double>>& beta_steps,
                          std::string name) {
    if (beta_steps.empty())
        throw ValidationError("metric transform needs a step function");
    for (std::size_t i = 0; i + 1 < beta_steps.size(); ++i)
        if (beta_steps[i].first >= beta_steps[i + 1].first ||
            beta_steps[i].second > beta_steps[i + 1].second)
            throw ValidationError("metric transform must be a non-decreasing step function");
    auto beta = [&](double d) -> double {
        if (std::isinf(d)) return kInfinity;
        double v = beta_steps.front().second;
        for (auto& [t, val] : beta_steps)
            if (t <= d) v = val;
            else break;
        return v;
    };
    if (beta(0.0) != 0.0)
        throw ValidationError("metric transform must map 0 to 0");
    int n = base->n();
    // collect occurring finite values and check subadditivity over them
    std::vector<double> vals;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            double d = base->dist(i, j);
            if (!std::isinf(d)) vals.push_back(d);
        }
    std::sort(vals.begin(), vals.end());
    vals.erase(std::unique(vals.begin(), vals.end()), vals.end());
    for (double a : vals)
        for (double b : vals)
            if (beta(a + b) > beta(a) + beta(b)) {
                std::ostringstream os;
                os << "metric transform not subadditive: beta(" << a << "+" << b
                   << ") = " << beta(a + b) << " > " << beta(a) << " + " << beta(b);
                throw ValidationError(os.str());
            }
    std::vector<double> table(static_cast<std::size_t>(n) * n, 0.0);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            table[static_cast<std::size_t>(i) * n + j] =
                i == j ? 0.0 : beta(base->dist(i, j));
    if (name.empty()) name = base->name() + "'";
    return make_table(base->labels(), std::move(table), std::move(name));
}

SpacePtr relabel(const SpacePtr& base, std::vector<std::string> labels,
                 std::string name) {
    if (!base) throw ValidationError("relabel needs a space");
    if (!labels.empty() && static_cast<int>(labels.size()) != base->n())
        throw ValidationError("relabel: " + std::to_string(labels.size()) +
                              " labels for " + std::to_string(base->n()) +
                              " points");
    auto sp = std::make_shared<FiniteMetricSpace>(*base);
    SpaceBuilder::set_core(*sp, base->kind(), base->n(),
                           name.empty() ? base->name() : std::move(name),
                           labels.empty() ? base->labels() : std::move(labels));
    return sp;
}

}  // namespace coarsekit
