#pragma once

#include <cstdint>
#include <vector>

#include "coarsekit/point_set.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

// Execution backend for the heavy kernels. Parallel uses OpenMP when
// compiled in; Serial is the reference implementation the tests compare
// against.
enum class Exec { Serial, Parallel };

// out := { z in X : d(z, s) <= r for some s in src }, computed over the whole
// space; out is overwritten and must have capacity X.n(). Interval and
// L1-grid metrics use closed-form range merging / lattice flooding, all other
// metrics scan every (destination, source) pair.
void ball_into(const FiniteMetricSpace& X, const PointSet& src, double r,
               PointSet& out, Exec ex = Exec::Serial);
PointSet ball(const FiniteMetricSpace& X, const PointSet& src, double r,
              Exec ex = Exec::Serial);

// Serial / parallel twins of the generic pair scan, exposed for equality
// tests and benchmarks. They ignore the geometric fast paths.
void ball_into_generic_serial(const FiniteMetricSpace& X, const PointSet& src,
                              double r, PointSet& out);
void ball_into_generic_parallel(const FiniteMetricSpace& X, const PointSet& src,
                                double r, PointSet& out);

// Hop counts of chain reachability at scale r. levels[i] is the least k such
// that some chain x_0, ..., x_k inside `domain` joins a point of `sources` to
// i, where consecutive chain points share a witness z in `witnesses` with
// d(z, x_t) <= r and d(z, x_{t+1}) <= r; -1 when no chain exists. Sources
// outside the domain are dropped. A null mask means the whole space.
std::vector<std::int32_t> chain_levels(const FiniteMetricSpace& X,
                                       const PointSet& sources, double r,
                                       const PointSet* domain = nullptr,
                                       const PointSet* witnesses = nullptr,
                                       Exec ex = Exec::Serial);

// Partition of A into chain-connected classes at scale r: two points of A are
// joined when a chain inside A connects them, with witnesses drawn from
// `witnesses` (whole space when null). Classes are ordered by their smallest
// member; each class lists its points over the indices of X.
std::vector<PointSet> chain_components(const FiniteMetricSpace& X,
                                       const PointSet& A, double r,
                                       const PointSet* witnesses = nullptr,
                                       Exec ex = Exec::Serial);

// max d(x, y) over pairs in pts; 0 for empty or singleton sets; may be
// infinite. Interval and grid metrics use coordinate extremes, the rest scan
// all pairs.
double set_diameter(const FiniteMetricSpace& X, const PointSet& pts,
                    Exec ex = Exec::Serial);
double set_diameter_generic_serial(const FiniteMetricSpace& X,
                                   const PointSet& pts);
double set_diameter_generic_parallel(const FiniteMetricSpace& X,
                                     const PointSet& pts);

}  // namespace coarsekit
