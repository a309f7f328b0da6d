#pragma once

#include <cstdint>
#include <queue>
#include <random>
#include <string>
#include <tuple>
#include <vector>

#include "coarsekit/algebra.hpp"
#include "coarsekit/components.hpp"
#include "coarsekit/disjointness.hpp"
#include "coarsekit/kernels.hpp"
#include "coarsekit/point_set.hpp"
#include "coarsekit/space.hpp"

namespace testsupport {

using namespace coarsekit;

inline int pick(std::mt19937& g, int lo, int hi) {
    return std::uniform_int_distribution<int>(lo, hi)(g);
}

inline bool chance(std::mt19937& g, double p) {
    return std::uniform_real_distribution<double>(0.0, 1.0)(g) < p;
}

// Small space of mixed kind: intervals, grids, graphs (possibly disconnected,
// possibly with zero-weight edges, so infinite distances and distinct points
// at distance zero both occur), disjoint unions, products.
inline SpacePtr random_space(std::mt19937& g, int max_pts = 12) {
    switch (pick(g, 0, 5)) {
        case 0:
            return make_interval(pick(g, 1, max_pts),
                                 chance(g, 0.3) ? 0.5 : 1.0);
        case 1: {
            int a = pick(g, 1, 4), b = pick(g, 1, max_pts / std::max(a, 1));
            return make_grid({a, std::max(b, 1)},
                             chance(g, 0.5) ? Norm::L1 : Norm::Sup);
        }
        case 2: {
            int n = pick(g, 2, max_pts);
            std::vector<std::string> labels;
            for (int i = 0; i < n; ++i) labels.push_back("v" + std::to_string(i));
            std::vector<std::tuple<int, int, double>> edges;
            int m = pick(g, 0, 2 * n);
            for (int e = 0; e < m; ++e) {
                int u = pick(g, 0, n - 1), v = pick(g, 0, n - 1);
                if (u == v) continue;
                double w = chance(g, 0.15) ? 0.0 : pick(g, 1, 3);
                edges.emplace_back(u, v, w);
            }
            return make_graph(labels, edges);
        }
        case 3: {
            int a = pick(g, 1, max_pts / 2), b = pick(g, 1, max_pts - a);
            return make_disjoint_union({make_interval(a), make_interval(b)});
        }
        case 4: {
            int a = pick(g, 1, 3), b = pick(g, 1, max_pts / std::max(a, 1));
            return make_product({make_interval(a), make_interval(std::max(b, 1))},
                                chance(g, 0.5) ? Norm::L1 : Norm::Sup);
        }
        default:
            return make_interval(pick(g, 1, max_pts));
    }
}

inline PointSet random_subset(std::mt19937& g, int n, double density = 0.5) {
    PointSet s(n);
    for (int i = 0; i < n; ++i)
        if (chance(g, density)) s.set(i);
    return s;
}

inline SubsetArray random_array(std::mt19937& g, const SpacePtr& X, int k,
                                double density = 0.4) {
    SubsetArray A(X, IndexSet::numbered(k));
    for (int s = 0; s < k; ++s) A.entry(s) = random_subset(g, X->n(), density);
    return A;
}

inline SubsetMatrix random_matrix(std::mt19937& g, const SpacePtr& X, int nr,
                                  int nc, double density = 0.4) {
    SubsetMatrix M(X, IndexSet::numbered(nr, "r"), IndexSet::numbered(nc, "c"));
    for (int i = 0; i < nr; ++i)
        for (int j = 0; j < nc; ++j)
            M.entry(i, j) = random_subset(g, X->n(), density);
    return M;
}

// Throw every uncovered point into a random entry so the array covers.
inline void patch_cover(std::mt19937& g, SubsetArray& A) {
    PointSet u = set_norm(A);
    for (int i = 0; i < A.space()->n(); ++i)
        if (!u.test(i)) A.entry(pick(g, 0, A.size() - 1)).set(i);
}

// Closed-ball oracle straight from the definition.
inline PointSet naive_ball(const SpacePtr& X, const PointSet& src, double r) {
    PointSet out(X->n());
    for (int z = 0; z < X->n(); ++z) {
        bool in = false;
        src.for_each([&](int x) {
            if (!in && X->dist(z, x) <= r) in = true;
        });
        if (in) out.set(z);
    }
    return out;
}

// Two points of A are adjacent when their closed r-balls (in the ambient
// space) share a witness; components are connectivity classes of that graph.
inline std::vector<PointSet> naive_components(const SpacePtr& X,
                                              const PointSet& A, double r) {
    const int n = X->n();
    std::vector<int> pts = A.indices();
    auto adj = [&](int x, int y) {
        for (int z = 0; z < n; ++z)
            if (X->dist(z, x) <= r && X->dist(z, y) <= r) return true;
        return false;
    };
    std::vector<PointSet> classes;
    PointSet left = A;
    while (!left.empty()) {
        int seed = left.first();
        PointSet cls(n);
        cls.set(seed);
        left.reset(seed);
        bool grew = true;
        while (grew) {
            grew = false;
            for (int p : pts)
                if (left.test(p)) {
                    bool hit = false;
                    cls.for_each([&](int q) {
                        if (!hit && adj(p, q)) hit = true;
                    });
                    if (hit) {
                        cls.set(p);
                        left.reset(p);
                        grew = true;
                    }
                }
        }
        classes.push_back(cls);
    }
    return classes;
}

// Breadth-first chain-step count with the same adjacency.
inline double naive_chain_metric(const SpacePtr& X, double r, int x, int y) {
    if (x == y) return 0.0;
    const int n = X->n();
    std::vector<int> dist(n, -1);
    std::queue<int> q;
    dist[x] = 0;
    q.push(x);
    while (!q.empty()) {
        int cur = q.front();
        q.pop();
        for (int nxt = 0; nxt < n; ++nxt)
            if (dist[nxt] < 0) {
                bool adj = false;
                for (int z = 0; z < n && !adj; ++z)
                    if (X->dist(z, cur) <= r && X->dist(z, nxt) <= r) adj = true;
                if (adj) {
                    dist[nxt] = dist[cur] + 1;
                    if (nxt == y) return dist[nxt];
                    q.push(nxt);
                }
            }
    }
    return kInfinity;
}

// Pool of unit-width cells along an interval, consecutive cells separated by
// gaps wider than 2r, so distinct cells have disjoint r-balls.
struct CellPool {
    SpacePtr space;
    std::vector<PointSet> cells;
};

inline CellPool make_cell_pool(double r, int ncells, int width = 2) {
    int gap = static_cast<int>(2 * r) + 1;
    int n = ncells * (width + gap);
    CellPool pool;
    pool.space = make_interval(n);
    for (int c = 0; c < ncells; ++c) {
        PointSet cell(n);
        int base = c * (width + gap);
        for (int k = 0; k < width; ++k) cell.set(base + k);
        pool.cells.push_back(cell);
    }
    return pool;
}

// Random r-orthogonal matrix over the pool: within each column every cell is
// assigned to at most one row, so column entries have pairwise disjoint
// r-balls by construction.
inline SubsetMatrix random_orthogonal_matrix(std::mt19937& g,
                                             const CellPool& pool, int nr,
                                             int nc) {
    SubsetMatrix M(pool.space, IndexSet::numbered(nr, "r"),
                   IndexSet::numbered(nc, "c"));
    for (int j = 0; j < nc; ++j)
        for (const auto& cell : pool.cells) {
            int row = pick(g, 0, 2 * nr - 1);  // miss half the time
            if (row < nr) M.entry(row, j) |= cell;
        }
    return M;
}

}  // namespace testsupport
