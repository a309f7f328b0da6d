#pragma once

#include <vector>

#include "coarsekit/ext_real.hpp"
#include "coarsekit/kernels.hpp"
#include "coarsekit/point_set.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

// Partition of a base set into chain-connected classes at a fixed scale.
// Classes are disjoint, cover the base exactly, and are ordered by smallest
// member index.
struct ComponentsPartition {
    SpacePtr space;
    PointSet base;
    double scale = 0.0;
    std::vector<PointSet> classes;
};

// Witnesses that every chain-connected class of a set at scale `scale` has
// diameter at most `bound`. Valid at every smaller scale with the same
// bound, since shrinking the scale only refines the classes.
struct Dim0Certificate {
    double scale = 0.0;
    ExtReal bound;
};

// { x : d(x, A) <= r } as a set over the same space.
PointSet subset_ball(const SpacePtr& X, const PointSet& A, double r,
                     Exec ex = Exec::Serial);

// Classes of A under scale-r chain connectivity: consecutive chain points
// lie in A and share an ambient witness z with d(z, .) <= r to both.
ComponentsPartition components(const SpacePtr& X, const PointSet& A, double r,
                               Exec ex = Exec::Serial);

// Largest class diameter of components(X, A, r); 0 for the empty set.
ExtReal components_norm(const SpacePtr& X, const PointSet& A, double r,
                        Exec ex = Exec::Serial);

// Steps of the shortest scale-r chain from x to y through the whole space
// (0 when x = y, infinity when no chain exists).
ExtReal chain_metric(const SpacePtr& X, double r, int x, int y,
                     Exec ex = Exec::Serial);

// (r, components_norm(A, r)).
Dim0Certificate dim0_certificate(const SpacePtr& X, const PointSet& A,
                                 double r, Exec ex = Exec::Serial);

// Re-measures the components norm of A at the certificate's scale and
// checks it against the recorded bound.
bool check_dim0(const SpacePtr& X, const PointSet& A,
                const Dim0Certificate& cert, Exec ex = Exec::Serial);

}  // namespace coarsekit
