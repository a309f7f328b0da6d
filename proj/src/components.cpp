#include "coarsekit/components.hpp"

#include "coarsekit/errors.hpp"

namespace coarsekit {

PointSet subset_ball(const SpacePtr& X, const PointSet& A, double r, Exec ex) {
    return ball(*X, A, r, ex);
}

ComponentsPartition components(const SpacePtr& X, const PointSet& A, double r,
                               Exec ex) {
    ComponentsPartition part;
    part.space = X;
    part.base = A;
    part.scale = r;
    part.classes = chain_components(*X, A, r, nullptr, ex);
    return part;
}

ExtReal components_norm(const SpacePtr& X, const PointSet& A, double r,
                        Exec ex) {
    ExtReal best = ExtReal::zero();
    for (const PointSet& cls : chain_components(*X, A, r, nullptr, ex))
        best = max(best, ExtReal(set_diameter(*X, cls, ex)));
    return best;
}

ExtReal chain_metric(const SpacePtr& X, double r, int x, int y, Exec ex) {
    if (x < 0 || x >= X->n() || y < 0 || y >= X->n())
        throw ValidationError("chain_metric: point index out of range");
    auto levels = chain_levels(*X, PointSet::single(X->n(), x), r, nullptr,
                               nullptr, ex);
    if (levels[y] < 0) return ExtReal::inf();
    return ExtReal(static_cast<double>(levels[y]));
}

Dim0Certificate dim0_certificate(const SpacePtr& X, const PointSet& A,
                                 double r, Exec ex) {
    return Dim0Certificate{r, components_norm(X, A, r, ex)};
}

bool check_dim0(const SpacePtr& X, const PointSet& A,
                const Dim0Certificate& cert, Exec ex) {
    return components_norm(X, A, cert.scale, ex) <= cert.bound;
}

}  // namespace coarsekit
