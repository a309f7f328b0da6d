#include "coarsekit/decomposition.hpp"

#include <cmath>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "coarsekit/errors.hpp"
#include "coarsekit/products.hpp"

namespace coarsekit {

namespace {

void require_positive_scale(double v, const char* what) {
    if (std::isnan(v) || std::isinf(v) || !(v > 0.0))
        throw ValidationError(std::string(what) + " must be a positive finite value");
}

PointSet level_set(const std::vector<std::int32_t>& levels, int n, int lv) {
    PointSet out(n);
    for (int i = 0; i < n; ++i)
        if (levels[i] == lv) out.set(i);
    return out;
}

}  // namespace

// --- chain-level rings and the perpendicular array ---

PointSet outer_ring(const SpacePtr& X, const PointSet& A, double s, int k,
                    Exec ex) {
    require_positive_scale(s, "ring scale");
    if (k < 0) throw ValidationError("ring index must be non-negative");
    auto levels = chain_levels(*X, A, s, nullptr, nullptr, ex);
    return level_set(levels, X->n(), k + 1);
}

SubsetArray perp_array(const SpacePtr& X, const PointSet& Y, double s, int m,
                       Exec ex) {
    require_positive_scale(s, "scale");
    if (m < 1) throw ValidationError("perpendicular array needs at least two entries");
    auto levels = chain_levels(*X, Y, s, nullptr, nullptr, ex);
    SubsetArray out(X, IndexSet::numbered(m + 1));
    for (int i = 0; i <= m; ++i)
        out.entry(i) = level_set(levels, X->n(), ring_level(RingSchedule::Standard, i));
    return out;
}

Report verify_perp(const SpacePtr& X, const PointSet& Y,
                   const SubsetArray& Yperp, double s, Exec ex) {
    Report rep;
    rep.construction = "perp_array";
    rep.space = X;
    rep.add_scale("s", s);
    rep.add_measure("entries", ExtReal(Yperp.size()));
    rep.add_set("y", Y);
    for (int i = 0; i < Yperp.size(); ++i)
        rep.add_set("perp_" + std::to_string(i), Yperp.entry(i));

    // The three disjointness conditions, each by its own route.
    rep.add_verdict("entries_scale_disjoint", array_scale_disjoint(Yperp, s, ex));
    rep.add_verdict("entries_orthogonal_to_base",
                    arrays_orthogonal(Yperp, const_array(X, Yperp.index(), Y), s, ex));
    SubsetMatrix bm = ball_matrix(as_row_matrix(Yperp), s, ex);
    SubsetMatrix prod = matmul_cap(transpose(bm), bm);
    bool diag = true;
    for (int i = 0; i < prod.nrows(); ++i)
        for (int j = 0; j < prod.ncols(); ++j)
            if (i != j && !prod.entry(i, j).empty()) diag = false;
    rep.add_verdict("ball_product_diagonal", diag);

    // The entries really are the advertised chain-level rings.
    bool levels_ok = Yperp.size() >= 2;
    if (levels_ok) {
        SubsetArray fresh = perp_array(X, Y, s, Yperp.size() - 1, ex);
        levels_ok = fresh == Yperp;
    }
    rep.add_verdict("entries_are_rings", levels_ok);
    return rep;
}

PerpSplitResult perp_split(const SpacePtr& X, const PointSet& Y,
                           const SubsetArray& Z, const SubsetArray& Yperp,
                           double r, Exec ex) {
    require_positive_scale(r, "scale");
    if (!(Z.index() == Yperp.index()))
        throw IndexMismatchError("perp_split: index sets " + Z.index().str() +
                                 " vs " + Yperp.index().str());
    if (Z.space().get() != X.get() || Yperp.space().get() != X.get())
        throw IndexMismatchError("perp_split: arrays must live on the given space");

    const int k = Z.size();
    SubsetArray inner(X, Z.index());
    SubsetArray outer(X, Z.index());
    for (int i = 0; i < k; ++i) {
        inner.entry(i) = Z.entry(i) & Yperp.entry(i);
        outer.entry(i) = (Y | Z.entry(i)) - Yperp.entry(i);
    }

    Report rep;
    rep.construction = "perp_split";
    rep.space = X;
    rep.add_scale("r", r);
    rep.add_measure("entries", ExtReal(k));
    rep.add_set("y", Y);
    for (int i = 0; i < k; ++i) {
        auto t = std::to_string(i);
        rep.add_set("z_" + t, Z.entry(i));
        rep.add_set("perp_" + t, Yperp.entry(i));
        rep.add_set("inner_" + t, inner.entry(i));
        rep.add_set("outer_" + t, outer.entry(i));
    }

    SubsetArray base = const_array(X, Z.index(), Y);
    rep.add_verdict("outer_contains_base", leq(base, outer));
    bool recovers = true;
    for (int i = 0; i < k; ++i)
        if (!((inner.entry(i) | outer.entry(i)) == (Y | Z.entry(i))))
            recovers = false;
    rep.add_verdict("split_recovers_union", recovers);
    rep.add_verdict("inner_within_perp", leq(inner, Yperp));

    ExtReal worst = ExtReal::zero();
    for (int i = 0; i < k; ++i) {
        auto c = dim0_certificate(X, outer.entry(i), r, ex);
        rep.add_cert("outer_" + std::to_string(i), c);
        worst = max(worst, c.bound);
    }
    rep.add_measure("outer_max_bound", worst);
    return {std::move(inner), std::move(outer), std::move(rep)};
}

// --- union bound for component norms ---

double union_bound(double M, double s, double r) { return M + s + 2.0 * r; }

UnionBoundCheck check_union_bound(const SpacePtr& X, const PointSet& A,
                                  const PointSet& B, double r, Exec ex) {
    require_positive_scale(r, "scale");
    UnionBoundCheck out;
    out.m_bound = components_norm(X, A, r, ex);
    double inner_scale =
        out.m_bound.is_inf() ? kInfinity : out.m_bound.value() + 2.0 * r;
    out.s_bound = components_norm(X, B, inner_scale, ex);
    out.bound = out.m_bound + out.s_bound + ExtReal(2.0 * r);
    out.measured = components_norm(X, A | B, r, ex);
    out.ok = out.measured <= out.bound;
    return out;
}

// --- brick generators ---

int ring_level(RingSchedule sch, int row) {
    if (row < 0) throw ValidationError("ring row must be non-negative");
    return sch == RingSchedule::Standard ? 3 * row + 4 : 2 * row + 2;
}

double brick_length(double r, int m, RingSchedule sch) {
    require_positive_scale(r, "scale");
    if (m < 1) throw ValidationError("row count must be positive");
    return sch == RingSchedule::Standard ? 2.0 * r * (6.0 * m + 1.0)
                                         : 2.0 * r * (4.0 * m - 1.0);
}

std::vector<std::vector<double>> axis_coordinates(const SpacePtr& X) {
    if (!X) return {};
    const int n = X->n();
    switch (X->kind()) {
        case MetricKind::Interval: {
            std::vector<std::vector<double>> ax(1, std::vector<double>(n));
            for (int i = 0; i < n; ++i) ax[0][i] = i * X->scale();
            return ax;
        }
        case MetricKind::Grid: {
            const auto& dims = X->dims();
            const int na = static_cast<int>(dims.size());
            std::vector<std::int64_t> stride(na, 1);
            for (int k = na - 2; k >= 0; --k) stride[k] = stride[k + 1] * dims[k + 1];
            std::vector<std::vector<double>> ax(na, std::vector<double>(n));
            for (int k = 0; k < na; ++k)
                for (int i = 0; i < n; ++i)
                    ax[k][i] = static_cast<double>((i / stride[k]) % dims[k]) * X->scale();
            return ax;
        }
        case MetricKind::Product: {
            std::vector<std::vector<double>> ax;
            const auto& ch = X->children();
            for (std::size_t f = 0; f < ch.size(); ++f) {
                auto sub = axis_coordinates(ch[f]);
                if (sub.empty()) return {};
                for (auto& axis : sub) {
                    std::vector<double> col(n);
                    for (int i = 0; i < n; ++i)
                        col[i] = axis[X->factor_index(i, static_cast<int>(f))];
                    ax.push_back(std::move(col));
                }
            }
            return ax;
        }
        case MetricKind::Subspace: {
            auto pax = axis_coordinates(X->parent());
            if (pax.empty()) return {};
            const auto& map = X->subspace_map();
            std::vector<std::vector<double>> ax(pax.size(), std::vector<double>(n));
            for (std::size_t a = 0; a < pax.size(); ++a)
                for (int i = 0; i < n; ++i) ax[a][i] = pax[a][map[i]];
            return ax;
        }
        default:
            return {};
    }
}

SubsetArray brick_parts(const SpacePtr& X, double L) {
    require_positive_scale(L, "brick length");
    auto axes = axis_coordinates(X);
    if (axes.empty())
        throw ValidationError("space has no axis structure for bricks: " + X->name());
    const int d = static_cast<int>(axes.size());
    if (d > 16) throw ValidationError("too many axes for brick coloring");
    std::vector<double> mn(d);
    for (int a = 0; a < d; ++a) {
        mn[a] = axes[a][0];
        for (double c : axes[a])
            if (c < mn[a]) mn[a] = c;
    }
    SubsetArray parts(X, IndexSet::numbered(1 << d));
    for (int i = 0; i < X->n(); ++i) {
        int code = 0;
        for (int a = 0; a < d; ++a) {
            auto color =
                static_cast<long long>(std::floor((axes[a][i] - mn[a]) / L)) & 1;
            code |= static_cast<int>(color) << a;
        }
        parts.entry(code).set(i);
    }
    return parts;
}

std::vector<PointSet> brick_cover(const SpacePtr& X, double W) {
    require_positive_scale(W, "cell width");
    auto axes = axis_coordinates(X);
    if (axes.empty()) return {PointSet::full(X->n())};
    const int d = static_cast<int>(axes.size());
    std::vector<double> mn(d);
    for (int a = 0; a < d; ++a) {
        mn[a] = axes[a][0];
        for (double c : axes[a])
            if (c < mn[a]) mn[a] = c;
    }
    std::map<std::vector<long long>, int> ids;  // cell -> position, first-seen order
    std::vector<PointSet> out;
    std::vector<long long> key(d);
    for (int i = 0; i < X->n(); ++i) {
        for (int a = 0; a < d; ++a)
            key[a] = static_cast<long long>(std::floor((axes[a][i] - mn[a]) / W));
        auto [it, fresh] = ids.try_emplace(key, static_cast<int>(out.size()));
        if (fresh) out.emplace_back(X->n());
        out[it->second].set(i);
    }
    return out;
}

// --- the augmented dimension matrix ---

AugmentedMatrix asdim_matrix(const SubsetArray& parts, double r, int m,
                             RingSchedule sch, Exec ex) {
    require_positive_scale(r, "scale");
    if (m < 1) throw ValidationError("row count must be positive");
    if (parts.size() < 1) throw ValidationError("need at least one part");
    const SpacePtr& X = parts.space();
    const int n = parts.size() - 1;

    PointSet seen(X->n());
    for (int c = 0; c <= n; ++c) {
        if (seen.intersects(parts.entry(c)))
            throw ValidationError("parts overlap at entry " +
                                  parts.index().label(c));
        seen |= parts.entry(c);
    }
    if (!(seen == PointSet::full(X->n())))
        throw ValidationError("parts do not cover the space");

    // Each part must have bounded components at the coarse scale the
    // induction consumes; unbounded parts cannot seed uniform bounds.
    const double part_scale = (m + 1) * r;
    for (int c = 0; c <= n; ++c) {
        if (components_norm(X, parts.entry(c), part_scale, ex).is_inf())
            throw ValidationError("part " + parts.index().label(c) +
                                  " has unbounded components at scale " +
                                  ExtReal(part_scale).str());
    }

    std::vector<std::string> collabels{"b"};
    for (int c = 1; c <= n; ++c) collabels.push_back("a" + std::to_string(c));
    SubsetMatrix mat(X, IndexSet::numbered(m), IndexSet(std::move(collabels)));

    // Inductive sweep: fold parts in one at a time; each row peels off the
    // ring of its level around the incoming part and keeps the rest.
    std::vector<PointSet> B(m, parts.entry(0));
    PointSet W = parts.entry(0);
    for (int c = 1; c <= n; ++c) {
        W |= parts.entry(c);
        auto levels = chain_levels(*X, parts.entry(c), r, &W, &W, ex);
        for (int j = 0; j < m; ++j) {
            PointSet ring = level_set(levels, X->n(), ring_level(sch, j));
            PointSet a = B[j] & ring;
            mat.entry(j, c) = a;
            B[j] = (parts.entry(c) | B[j]) - a;
        }
    }
    for (int j = 0; j < m; ++j) mat.entry(j, 0) = std::move(B[j]);

    AugmentedMatrix out{std::move(mat), r, {}};
    out.certs.reserve(static_cast<std::size_t>(m) * (n + 1));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j <= n; ++j)
            out.certs.push_back(dim0_certificate(X, out.matrix.entry(i, j), r, ex));

    Report rep = verify_asdim_matrix(out, r, ex);
    if (!rep.pass())
        throw ConstructionDefect(rep.first_failure(),
                                 "dimension matrix verification failed: " +
                                     rep.first_failure());
    return out;
}

Report verify_asdim_matrix(const AugmentedMatrix& M, double r, Exec ex) {
    const SubsetMatrix& mat = M.matrix;
    const SpacePtr& X = mat.space();
    const int m = mat.nrows(), w = mat.ncols();
    const int n = w - 1;

    Report rep;
    rep.construction = "asdim_matrix";
    rep.space = X;
    rep.add_scale("r", r);
    rep.add_measure("rows", ExtReal(m));
    rep.add_measure("cols", ExtReal(w));
    rep.add_verdict("b_column_first", w >= 1 && mat.cols().label(0) == "b");

    // Rows cover the space: directly, and through the identity inequality
    // against the matrix times its transpose.
    PointSet fullX = PointSet::full(X->n());
    bool cover_direct = true;
    for (int i = 0; i < m; ++i) {
        PointSet u(X->n());
        for (int j = 0; j < w; ++j) u |= mat.entry(i, j);
        if (!(u == fullX)) cover_direct = false;
    }
    rep.add_verdict("rows_cover", cover_direct);
    rep.add_verdict("rows_cover_identity_route",
                    leq(identity_matrix(X, mat.rows()),
                        matmul_cap(mat, transpose(mat))));

    // The non-b columns form an orthogonal matrix at this scale; all three
    // equivalent formulations are computed independently.
    OrthogonalityVerdict ov{true, true, true};
    if (n >= 1) {
        std::vector<std::string> alabels;
        for (int j = 1; j <= n; ++j) alabels.push_back(mat.cols().label(j));
        SubsetMatrix A(X, mat.rows(), IndexSet(std::move(alabels)));
        for (int i = 0; i < m; ++i)
            for (int j = 1; j <= n; ++j) A.entry(i, j - 1) = mat.entry(i, j);
        ov = matrix_orthogonal(A, r, ex);
    }
    rep.add_verdict("a_cols_scale_disjoint", ov.cols_scale_disjoint);
    rep.add_verdict("a_rows_orthogonal", ov.rows_orthogonal);
    rep.add_verdict("a_ball_product_diagonal", ov.ball_product_diagonal);

    // Recorded certificates agree with fresh measurements at this scale.
    bool shape_ok = M.certs.size() == static_cast<std::size_t>(m) * w;
    bool scale_ok = shape_ok, match = shape_ok, finite = true;
    ExtReal maxb = ExtReal::zero(), maxb_b = ExtReal::zero(),
            maxb_a = ExtReal::zero();
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < w; ++j) {
            auto fresh = dim0_certificate(X, mat.entry(i, j), r, ex);
            if (shape_ok) {
                const auto& rec = M.cert(i, j);
                if (rec.scale != r) scale_ok = false;
                if (!(rec.bound == fresh.bound)) match = false;
            }
            if (fresh.bound.is_inf()) finite = false;
            maxb = max(maxb, fresh.bound);
            (j == 0 ? maxb_b : maxb_a) = max(j == 0 ? maxb_b : maxb_a, fresh.bound);
            auto name = "entry_" + std::to_string(i) + "_" + std::to_string(j);
            rep.add_set(name, mat.entry(i, j));
            rep.add_cert(name, fresh);
        }
    }
    rep.add_verdict("entry_certs_at_scale", scale_ok);
    rep.add_verdict("entry_certs_match", match);
    rep.add_verdict("entry_bounds_finite", finite);
    rep.add_measure("max_entry_bound", maxb);
    rep.add_measure("max_b_bound", maxb_b);
    rep.add_measure("max_a_bound", maxb_a);
    return rep;
}

// --- disjoint refinement ---

RefineResult refine_disjoint(const SpacePtr& X, const PointSet& Xset,
                             const Dim0Certificate& cert, double s, Exec ex) {
    require_positive_scale(s, "refinement scale");
    require_positive_scale(cert.scale, "certificate scale");
    if (cert.bound.is_inf())
        throw ValidationError("refinement needs a finite component bound");
    if (!check_dim0(X, Xset, cert, ex))
        throw ValidationError("certificate does not hold for the given set");

    const double r = cert.scale;
    const double M = cert.bound.value();
    const double T = M + 2.0 * s + 2.0 * r;
    const double W = 2.0 * T + 2.0;

    auto cover = brick_cover(X, W);
    const int p = static_cast<int>(cover.size());
    SubsetArray parts(X, IndexSet::numbered(p));
    for (const auto& cls : components(X, Xset, r, ex).classes) {
        for (int i = 0; i < p; ++i) {
            if (cls.intersects(cover[i])) {
                parts.entry(i) |= cls;
                break;
            }
        }
    }

    ExtReal cover_norm = ExtReal::zero();
    for (const auto& cell : cover)
        cover_norm = max(cover_norm, components_norm(X, cell, T, ex));
    ExtReal predicted = cover_norm + ExtReal(2.0 * M);

    RefineResult out;
    out.parts = std::move(parts);
    out.predicted = predicted;
    out.certs.reserve(p);
    for (int i = 0; i < p; ++i)
        out.certs.push_back(dim0_certificate(X, out.parts.entry(i), s, ex));

    Report rep;
    rep.construction = "refine_disjoint";
    rep.space = X;
    rep.add_scale("r", r);
    rep.add_scale("s", s);
    rep.add_scale("anchor_scale", T);
    rep.add_scale("cell_width", W);
    rep.add_measure("parts", ExtReal(p));
    rep.add_measure("input_bound", ExtReal(M));
    rep.add_measure("cover_norm", cover_norm);
    rep.add_measure("predicted", predicted);
    rep.add_set("input", Xset);
    ExtReal worst = ExtReal::zero();
    for (int i = 0; i < p; ++i) {
        auto name = "part_" + std::to_string(i);
        rep.add_set(name, out.parts.entry(i));
        rep.add_cert(name, out.certs[i]);
        worst = max(worst, out.certs[i].bound);
    }
    rep.add_measure("max_part_bound", worst);

    rep.add_verdict("covers_input", set_norm(out.parts) == Xset);
    rep.add_verdict("pairwise_scale_disjoint",
                    array_scale_disjoint(out.parts, r, ex));
    rep.add_verdict("bounds_within_prediction", worst <= predicted);
    out.report = std::move(rep);
    return out;
}

// --- product decompositions ---

CrossDim0 cross_dim0(const ProductHandle& P, const SubsetArray& A,
                     const SubsetArray& B, double r, Exec ex) {
    require_positive_scale(r, "scale");
    if (!array_scale_disjoint(A, r, ex))
        throw ValidationError("first factor array is not scale-disjoint");
    ExtReal na = ExtReal::zero(), nb = ExtReal::zero();
    for (int i = 0; i < A.size(); ++i)
        na = max(na, components_norm(A.space(), A.entry(i), r, ex));
    for (int i = 0; i < B.size(); ++i)
        nb = max(nb, components_norm(B.space(), B.entry(i), r, ex));
    ExtReal predicted = P.product()->norm() == Norm::L1 ? na + nb : max(na, nb);
    PointSet z = cross_dot(P, A, B);
    ExtReal measured = components_norm(P.product(), z, r, ex);
    return {Dim0Certificate{r, measured}, predicted};
}

ProductSplitResult product_split(const ProductHandle& P,
                                 const AugmentedMatrix& Mx,
                                 const SubsetArray& Yparts, double s, Exec ex) {
    require_positive_scale(s, "scale");
    const double r = Mx.scale;
    require_positive_scale(r, "matrix scale");
    if (Mx.matrix.nrows() != Yparts.size())
        throw IndexMismatchError("product_split: matrix rows " +
                                 Mx.matrix.rows().str() + " vs parts " +
                                 Yparts.index().str());

    SubsetMatrix zm =
        matmul_cross(P, transpose(Mx.matrix), as_col_matrix(Yparts));
    SubsetArray Z = to_array(zm);

    // Same sets assembled directly, term by term.
    const int m = Mx.matrix.nrows(), w = Mx.matrix.ncols();
    SubsetArray direct(P.product(), Z.index());
    for (int j = 0; j < w; ++j)
        for (int i = 0; i < m; ++i)
            direct.entry(j) |=
                cross_subset(P, Mx.matrix.entry(i, j), Yparts.entry(i));
    bool agrees = Z == direct;

    ProductSplitResult out;
    out.certs.reserve(w);
    for (int j = 0; j < w; ++j)
        out.certs.push_back(
            dim0_certificate(P.product(), Z.entry(j), j == 0 ? r : s, ex));

    // First-entry bound predicted from the factor component norms.
    Norm pn = P.product()->norm();
    ExtReal z0_pred = ExtReal::zero();
    for (int i = 0; i < m; ++i) {
        ExtReal bx = components_norm(P.left(), Mx.matrix.entry(i, 0), r, ex);
        ExtReal by = components_norm(P.right(), Yparts.entry(i), r, ex);
        z0_pred = max(z0_pred, pn == Norm::L1 ? bx + by : max(bx, by));
    }

    Report rep;
    rep.construction = "product_split";
    rep.space = P.product();
    rep.add_scale("r", r);
    rep.add_scale("s", s);
    rep.add_measure("factor_rows", ExtReal(m));
    rep.add_measure("entries", ExtReal(w));
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < w; ++j)
            rep.add_set("mx_" + std::to_string(i) + "_" + std::to_string(j),
                        Mx.matrix.entry(i, j));
        rep.add_set("y_" + std::to_string(i), Yparts.entry(i));
    }
    ExtReal tail_worst = ExtReal::zero();
    bool tail_finite = true;
    for (int j = 0; j < w; ++j) {
        auto name = "z_" + Mx.matrix.cols().label(j);
        rep.add_set(name, Z.entry(j));
        rep.add_cert(name, out.certs[j]);
        if (j > 0) {
            tail_worst = max(tail_worst, out.certs[j].bound);
            if (out.certs[j].bound.is_inf()) tail_finite = false;
        }
    }
    rep.add_measure("z0_predicted", z0_pred);
    rep.add_measure("z0_bound", out.certs[0].bound);
    rep.add_measure("max_tail_bound", tail_worst);

    rep.add_verdict("construction_agrees", agrees);
    rep.add_verdict("covers_product",
                    set_norm(Z) == PointSet::full(P.product()->n()));
    bool factor_rows_ok = true;
    PointSet fullX = PointSet::full(P.left()->n());
    for (int i = 0; i < m; ++i) {
        PointSet u(P.left()->n());
        for (int j = 0; j < w; ++j) u |= Mx.matrix.entry(i, j);
        if (!(u == fullX)) factor_rows_ok = false;
    }
    rep.add_verdict("factor_rows_cover", factor_rows_ok);
    rep.add_verdict("factor_parts_cover", is_cover(Yparts));
    rep.add_verdict("factor_parts_scale_disjoint",
                    array_scale_disjoint(Yparts, r, ex));
    rep.add_verdict("z0_within_prediction", out.certs[0].bound <= z0_pred);
    rep.add_verdict("tail_bounds_finite", tail_finite);

    out.Z = std::move(Z);
    out.report = std::move(rep);
    return out;
}

TruncatedResult truncated_product_decomposition(
    const std::vector<SpacePtr>& factors, int k, double s, int truncation,
    Norm norm, Exec ex) {
    if (truncation < 2)
        throw ValidationError("truncation must keep at least two factors");
    if (k < 1 || k >= truncation)
        throw ValidationError("head size must satisfy 1 <= k < truncation");
    if (static_cast<int>(factors.size()) < truncation)
        throw ValidationError("need at least as many factors as the truncation");
    require_positive_scale(s, "tail scale");
    for (int i = 0; i < truncation; ++i) {
        double need = 2.0 * (i + 1);
        if (!is_c_discrete(factors[i], need))
            throw ValidationError("factor " + factors[i]->name() +
                                  " is not " + ExtReal(need).str() + "-discrete");
    }

    std::vector<SpacePtr> hf(factors.begin(), factors.begin() + k);
    SpacePtr head = k == 1 ? factors[0] : make_product(std::move(hf), norm);
    std::vector<SpacePtr> tf(factors.begin() + k, factors.begin() + truncation);
    SpacePtr tail =
        tf.size() == 1 ? tf[0] : make_product(std::move(tf), norm);

    const double r = static_cast<double>(k);
    PointSet tail_full = PointSet::full(tail->n());
    ExtReal tail_norm = components_norm(tail, tail_full, r, ex);
    if (tail_norm.is_inf())
        throw ValidationError("tail components unbounded at the head scale");
    Dim0Certificate tail_cert{r, tail_norm};

    RefineResult ref = refine_disjoint(tail, tail_full, tail_cert, s, ex);
    const int m = ref.parts.size();
    AugmentedMatrix Mx = asdim_matrix(
        brick_parts(head, brick_length(r, m, RingSchedule::Standard)), r, m,
        RingSchedule::Standard, ex);

    ProductHandle P = ProductHandle::make(head, tail, norm);
    ProductSplitResult sp = product_split(P, Mx, ref.parts, s, ex);

    TruncatedResult out;
    out.head = head;
    out.tail = tail;
    out.product = P.product();
    out.Z = std::move(sp.Z);
    out.report = std::move(sp.report);
    out.report.construction = "truncated_product";
    out.report.add_scale("k", r);
    out.report.add_measure("truncation", ExtReal(truncation));
    out.report.add_measure("head_factors", ExtReal(k));
    out.report.add_measure("tail_parts", ExtReal(m));
    out.report.add_verdict("tail_scale_isolated", tail_norm == ExtReal::zero());
    out.report.add_verdict("tail_refine_ok", ref.report.pass());
    return out;
}

}  // namespace coarsekit
