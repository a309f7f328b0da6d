#include "coarsekit/products.hpp"

#include <algorithm>
#include <cstdint>
#include <set>
#include <utility>

#include "coarsekit/errors.hpp"

namespace coarsekit {

bool is_c_discrete(const SpacePtr& X, double c) {
    const int n = X->n();
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (X->dist(i, j) < c) return false;
    return true;
}

namespace {

void check_tuple(const std::vector<SpacePtr>& factors,
                 const std::vector<double>& weights,
                 const std::vector<int>& u, const std::vector<int>& v) {
    if (factors.empty()) throw ValidationError("need at least one factor");
    if (weights.size() != factors.size())
        throw ValidationError("one weight per factor required");
    if (u.size() != factors.size() || v.size() != factors.size())
        throw ValidationError("coordinate tuples must match the factor count");
    for (std::size_t d = 0; d < factors.size(); ++d) {
        if (!(weights[d] > 0.0))
            throw ValidationError("weights must be positive");
        if (u[d] < 0 || u[d] >= factors[d]->n() || v[d] < 0 ||
            v[d] >= factors[d]->n())
            throw ValidationError("coordinate out of range");
    }
}

}  // namespace

ExtReal asymptotic_metric(const std::vector<SpacePtr>& factors,
                          const std::vector<double>& weights,
                          const std::vector<int>& u, const std::vector<int>& v) {
    check_tuple(factors, weights, u, v);
    ExtReal total = ExtReal::zero();
    for (std::size_t d = 0; d < factors.size(); ++d) {
        if (u[d] == v[d]) continue;
        double rho = factors[d]->dist(u[d], v[d]);
        total += ExtReal(rho <= weights[d] ? weights[d] : rho);
    }
    return total;
}

ExtReal reduced_metric(const std::vector<SpacePtr>& factors,
                       const std::vector<double>& weights,
                       const std::vector<int>& u, const std::vector<int>& v) {
    check_tuple(factors, weights, u, v);
    ExtReal total = ExtReal::zero();
    for (std::size_t d = 0; d < factors.size(); ++d)
        total += ExtReal(weights[d] * factors[d]->dist(u[d], v[d]));
    return total;
}

SpacePtr build_product_space(const std::vector<SpacePtr>& factors,
                             const std::vector<double>& weights,
                             WeightedKind kind, std::int64_t budget,
                             std::string name) {
    if (factors.empty()) throw ValidationError("need at least one factor");
    if (weights.size() != factors.size())
        throw ValidationError("one weight per factor required");
    for (double w : weights)
        if (!(w > 0.0)) throw ValidationError("weights must be positive");
    if (budget < 1) throw ValidationError("point budget must be positive");

    // Keep the longest prefix whose full product fits the budget; pin the
    // remaining factors to their first point so the metric formula still
    // ranges over every factor.
    std::size_t keep = 0;
    std::int64_t count = 1;
    while (keep < factors.size()) {
        std::int64_t next = count * factors[keep]->n();
        if (keep > 0 && next > budget) break;
        count = next;
        ++keep;
    }
    std::vector<SpacePtr> children;
    children.reserve(factors.size());
    for (std::size_t d = 0; d < factors.size(); ++d) {
        if (d < keep)
            children.push_back(factors[d]);
        else
            children.push_back(make_subspace(
                factors[d], PointSet::single(factors[d]->n(), 0),
                factors[d]->name() + "@0"));
    }
    return make_weighted_product(std::move(children),
                                 std::vector<double>(weights), kind,
                                 std::move(name));
}

EnvelopeTable coarse_envelope(const SpacePtr& A, const SpacePtr& B) {
    if (A->n() != B->n())
        throw ValidationError("envelope needs equal point counts");
    const int n = A->n();

    std::vector<std::pair<double, double>> pairs;  // (dA, dB) per unordered pair
    pairs.reserve(static_cast<std::size_t>(n) * (n - 1) / 2);
    std::set<double> ts{0.0};
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            double da = A->dist(i, j), db = B->dist(i, j);
            pairs.emplace_back(da, db);
            if (!std::isinf(da)) ts.insert(da);
            if (!std::isinf(db)) ts.insert(db);
        }
    }

    EnvelopeTable out;
    out.thresholds.assign(ts.begin(), ts.end());
    auto tabulate = [&](bool forward) {
        // max response distance over pairs whose probe distance is <= t
        std::vector<std::pair<double, double>> v;  // (probe, response)
        v.reserve(pairs.size());
        for (auto [da, db] : pairs)
            v.emplace_back(forward ? db : da, forward ? da : db);
        std::sort(v.begin(), v.end());
        std::vector<ExtReal> col;
        col.reserve(out.thresholds.size());
        std::size_t k = 0;
        ExtReal best = ExtReal::zero();
        for (double t : out.thresholds) {
            while (k < v.size() && v[k].first <= t) {
                best = max(best, ExtReal(v[k].second));
                ++k;
            }
            col.push_back(best);
        }
        return col;
    };
    out.forward = tabulate(true);
    out.backward = tabulate(false);
    return out;
}

std::string envelope_csv(const EnvelopeTable& t) {
    std::string s = "threshold,forward,backward\n";
    for (std::size_t i = 0; i < t.thresholds.size(); ++i) {
        s += ExtReal(t.thresholds[i]).str();
        s += ',';
        s += t.forward[i].str();
        s += ',';
        s += t.backward[i].str();
        s += '\n';
    }
    return s;
}

}  // namespace coarsekit
