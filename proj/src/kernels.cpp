#include "coarsekit/kernels.hpp"

#include <algorithm>
#include <cmath>

#include "coarsekit/errors.hpp"

namespace coarsekit {

namespace {

void require_capacity(const FiniteMetricSpace& X, const PointSet& s,
                      const char* what) {
    if (s.capacity() != X.n())
        throw IndexMismatchError(std::string(what) +
                                 ": point set does not match the space");
}

void require_radius(double r) {
    if (std::isnan(r) || r < 0.0)
        throw ValidationError("ball radius must be non-negative");
}

// Number of lattice steps of length `scale` that fit inside r (clamped).
std::int64_t step_budget(double r, double scale, std::int64_t clamp) {
    if (std::isinf(r)) return clamp;
    double q = std::floor(r / scale);
    if (q >= static_cast<double>(clamp)) return clamp;
    return static_cast<std::int64_t>(q);
}

// Interval metric: the ball of src is a union of index ranges.
void ball_interval(const FiniteMetricSpace& X, const PointSet& src, double r,
                   PointSet& out) {
    const std::int64_t R = step_budget(r, X.scale(), X.n());
    int open = -1, close = -1;  // current merged range [open, close]
    auto flush = [&]() {
        for (int i = open; i <= close; ++i) out.set(i);
    };
    src.for_each([&](int i) {
        int lo = static_cast<int>(std::max<std::int64_t>(0, i - R));
        int hi = static_cast<int>(std::min<std::int64_t>(X.n() - 1, i + R));
        if (open < 0) {
            open = lo;
            close = hi;
        } else if (lo <= close + 1) {
            close = std::max(close, hi);
        } else {
            flush();
            open = lo;
            close = hi;
        }
    });
    if (open >= 0) flush();
}

// L1 grid metric: multi-source flood over the lattice graph, one unit step
// per scale quantum. Work is linear in the flooded region.
void ball_grid_l1(const FiniteMetricSpace& X, const PointSet& src, double r,
                  PointSet& out) {
    const auto& dims = X.dims();
    const int naxes = static_cast<int>(dims.size());
    std::vector<std::int64_t> strides(naxes, 1);
    for (int k = naxes - 2; k >= 0; --k) strides[k] = strides[k + 1] * dims[k + 1];
    std::int64_t total = 0;
    for (auto d : dims) total += d;
    const std::int64_t R = step_budget(r, X.scale(), total);

    std::vector<int> frontier = src.indices();
    for (int i : frontier) out.set(i);
    std::vector<int> next;
    for (std::int64_t step = 0; step < R && !frontier.empty(); ++step) {
        next.clear();
        for (int i : frontier) {
            for (int k = 0; k < naxes; ++k) {
                std::int64_t c = (i / strides[k]) % dims[k];
                if (c + 1 < dims[k]) {
                    int j = i + static_cast<int>(strides[k]);
                    if (!out.test(j)) {
                        out.set(j);
                        next.push_back(j);
                    }
                }
                if (c > 0) {
                    int j = i - static_cast<int>(strides[k]);
                    if (!out.test(j)) {
                        out.set(j);
                        next.push_back(j);
                    }
                }
            }
        }
        frontier.swap(next);
    }
}

bool has_fast_ball(const FiniteMetricSpace& X) {
    return X.kind() == MetricKind::Interval ||
           (X.kind() == MetricKind::Grid && X.norm() == Norm::L1);
}

}  // namespace

void ball_into_generic_serial(const FiniteMetricSpace& X, const PointSet& src,
                              double r, PointSet& out) {
    require_capacity(X, src, "ball");
    require_capacity(X, out, "ball");
    require_radius(r);
    out.clear();
    const std::vector<int> s = src.indices();
    const int n = X.n();
    for (int z = 0; z < n; ++z)
        for (int x : s)
            if (X.dist(z, x) <= r) {
                out.set(z);
                break;
            }
}

void ball_into_generic_parallel(const FiniteMetricSpace& X, const PointSet& src,
                                double r, PointSet& out) {
    require_capacity(X, src, "ball");
    require_capacity(X, out, "ball");
    require_radius(r);
    out.clear();
    const std::vector<int> s = src.indices();
    const int n = X.n();
    const int nwords = static_cast<int>(out.words());
    // each thread owns whole 64-bit words, so writes never race
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int w = 0; w < nwords; ++w) {
        std::uint64_t bits = 0;
        const int z0 = w * 64;
        const int z1 = std::min(n, z0 + 64);
        for (int z = z0; z < z1; ++z)
            for (int x : s)
                if (X.dist(z, x) <= r) {
                    bits |= 1ull << (z - z0);
                    break;
                }
        out.word_ref(w) = bits;
    }
}

void ball_into(const FiniteMetricSpace& X, const PointSet& src, double r,
               PointSet& out, Exec ex) {
    if (has_fast_ball(X)) {
        require_capacity(X, src, "ball");
        require_capacity(X, out, "ball");
        require_radius(r);
        out.clear();
        if (X.kind() == MetricKind::Interval)
            ball_interval(X, src, r, out);
        else
            ball_grid_l1(X, src, r, out);
        return;
    }
    if (ex == Exec::Parallel)
        ball_into_generic_parallel(X, src, r, out);
    else
        ball_into_generic_serial(X, src, r, out);
}

PointSet ball(const FiniteMetricSpace& X, const PointSet& src, double r,
              Exec ex) {
    PointSet out(X.n());
    ball_into(X, src, r, out, ex);
    return out;
}

namespace {

// One chain step from `cur`: everything in `domain` sharing a witness with
// the current frontier. zone/nxt are scratch with space capacity.
void chain_step(const FiniteMetricSpace& X, const PointSet& cur, double r,
                const PointSet* domain, const PointSet* witnesses,
                PointSet& zone, PointSet& nxt, Exec ex) {
    ball_into(X, cur, r, zone, ex);
    if (witnesses) zone &= *witnesses;
    ball_into(X, zone, r, nxt, ex);
    if (domain) nxt &= *domain;
}

}  // namespace

std::vector<std::int32_t> chain_levels(const FiniteMetricSpace& X,
                                       const PointSet& sources, double r,
                                       const PointSet* domain,
                                       const PointSet* witnesses, Exec ex) {
    require_capacity(X, sources, "chain_levels");
    if (domain) require_capacity(X, *domain, "chain_levels");
    if (witnesses) require_capacity(X, *witnesses, "chain_levels");
    require_radius(r);

    const int n = X.n();
    std::vector<std::int32_t> levels(n, -1);
    PointSet cur = sources;
    if (domain) cur &= *domain;
    cur.for_each([&](int i) { levels[i] = 0; });
    PointSet seen = cur;
    PointSet zone(n), nxt(n);
    for (std::int32_t k = 1; !cur.empty(); ++k) {
        chain_step(X, cur, r, domain, witnesses, zone, nxt, ex);
        nxt -= seen;
        if (nxt.empty()) break;
        nxt.for_each([&](int i) { levels[i] = k; });
        seen |= nxt;
        cur = nxt;
    }
    return levels;
}

std::vector<PointSet> chain_components(const FiniteMetricSpace& X,
                                       const PointSet& A, double r,
                                       const PointSet* witnesses, Exec ex) {
    require_capacity(X, A, "chain_components");
    if (witnesses) require_capacity(X, *witnesses, "chain_components");
    require_radius(r);

    const int n = X.n();
    std::vector<PointSet> classes;
    PointSet rem = A;
    PointSet zone(n), nxt(n);
    while (true) {
        int a = rem.first();
        if (a < 0) break;
        PointSet cls = PointSet::single(n, a);
        PointSet cur = cls;
        while (!cur.empty()) {
            chain_step(X, cur, r, &A, witnesses, zone, nxt, ex);
            nxt -= cls;
            cls |= nxt;
            cur = nxt;
        }
        rem -= cls;
        classes.push_back(std::move(cls));
    }
    return classes;
}

double set_diameter_generic_serial(const FiniteMetricSpace& X,
                                   const PointSet& pts) {
    require_capacity(X, pts, "set_diameter");
    const std::vector<int> p = pts.indices();
    double best = 0.0;
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = a + 1; b < p.size(); ++b) {
            double d = X.dist(p[a], p[b]);
            if (d > best) best = d;
        }
    return best;
}

double set_diameter_generic_parallel(const FiniteMetricSpace& X,
                                     const PointSet& pts) {
    require_capacity(X, pts, "set_diameter");
    const std::vector<int> p = pts.indices();
    const int m = static_cast<int>(p.size());
    double best = 0.0;
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) reduction(max : best)
#endif
    for (int a = 0; a < m; ++a)
        for (int b = a + 1; b < m; ++b) {
            double d = X.dist(p[a], p[b]);
            if (d > best) best = d;
        }
    return best;
}

double set_diameter(const FiniteMetricSpace& X, const PointSet& pts, Exec ex) {
    if (X.kind() == MetricKind::Interval) {
        require_capacity(X, pts, "set_diameter");
        int lo = pts.first();
        if (lo < 0) return 0.0;
        int hi = lo;
        pts.for_each([&](int i) { hi = i; });
        return (hi - lo) * X.scale();
    }
    if (X.kind() == MetricKind::Grid && X.dims().size() <= 16) {
        require_capacity(X, pts, "set_diameter");
        if (pts.empty()) return 0.0;
        const auto& dims = X.dims();
        const int naxes = static_cast<int>(dims.size());
        std::vector<std::int64_t> strides(naxes, 1);
        for (int k = naxes - 2; k >= 0; --k)
            strides[k] = strides[k + 1] * dims[k + 1];
        if (X.norm() == Norm::Sup) {
            // per-axis extent, then the largest one
            std::int64_t best = 0;
            for (int k = 0; k < naxes; ++k) {
                std::int64_t lo = dims[k], hi = -1;
                pts.for_each([&](int i) {
                    std::int64_t c = (i / strides[k]) % dims[k];
                    lo = std::min(lo, c);
                    hi = std::max(hi, c);
                });
                best = std::max(best, hi - lo);
            }
            return best * X.scale();
        }
        // L1: max over sign patterns sigma of range(sigma . coords); the
        // leading sign can be fixed to +, halving the patterns.
        std::int64_t best = 0;
        const int patterns = 1 << (naxes - 1);
        for (int mask = 0; mask < patterns; ++mask) {
            std::int64_t lo = 0, hi = 0;
            bool any = false;
            pts.for_each([&](int i) {
                std::int64_t v = 0;
                for (int k = 0; k < naxes; ++k) {
                    std::int64_t c = (i / strides[k]) % dims[k];
                    v += (k > 0 && (mask >> (k - 1)) & 1) ? -c : c;
                }
                if (!any) {
                    lo = hi = v;
                    any = true;
                } else {
                    lo = std::min(lo, v);
                    hi = std::max(hi, v);
                }
            });
            best = std::max(best, hi - lo);
        }
        return best * X.scale();
    }
    if (ex == Exec::Parallel) return set_diameter_generic_parallel(X, pts);
    return set_diameter_generic_serial(X, pts);
}

}  // namespace coarsekit
