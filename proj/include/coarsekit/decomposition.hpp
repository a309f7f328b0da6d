#pragma once

#include <vector>

#include "coarsekit/algebra.hpp"
#include "coarsekit/components.hpp"
#include "coarsekit/disjointness.hpp"
#include "coarsekit/report.hpp"

namespace coarsekit {

// --- chain-level rings and the perpendicular array ---

// { x : chain distance at scale s from x to A equals k+1 }
PointSet outer_ring(const SpacePtr& X, const PointSet& A, double s, int k,
                    Exec ex = Exec::Serial);

// Array with entries i = 0..m given by the rings at chain distance 3i+4;
// entries are pairwise scale-s-disjoint and s-orthogonal to the constant
// array of Y (verified by verify_perp, not assumed).
SubsetArray perp_array(const SpacePtr& X, const PointSet& Y, double s, int m,
                       Exec ex = Exec::Serial);

Report verify_perp(const SpacePtr& X, const PointSet& Y,
                   const SubsetArray& Yperp, double s, Exec ex = Exec::Serial);

struct PerpSplitResult {
    SubsetArray inner;  // Z(i) ∩ Yperp(i)
    SubsetArray outer;  // (Y ∪ Z(i)) \ Yperp(i)
    Report report;      // set identities plus measured outer bounds at r
};

PerpSplitResult perp_split(const SpacePtr& X, const PointSet& Y,
                           const SubsetArray& Z, const SubsetArray& Yperp,
                           double r, Exec ex = Exec::Serial);

// --- union bound for component norms ---

// Bound for components_norm(A ∪ B, r) when components_norm(A, r) <= M and
// components_norm(B, M + 2r) <= s.
double union_bound(double M, double s, double r);

struct UnionBoundCheck {
    ExtReal m_bound;   // measured components_norm(A, r)
    ExtReal s_bound;   // measured components_norm(B, M + 2r)
    ExtReal bound;     // M + s + 2r
    ExtReal measured;  // components_norm(A ∪ B, r)
    bool ok = false;
};

UnionBoundCheck check_union_bound(const SpacePtr& X, const PointSet& A,
                                  const PointSet& B, double r,
                                  Exec ex = Exec::Serial);

// --- brick generators over axis-structured spaces ---

// Rows of the dimension matrix are taken from ring levels with gaps >= 2, so
// distinct rows of one column are scale-r-disjoint structurally. Standard
// spacing follows the perpendicular-array levels 3j+4; Compact packs levels
// at 2j+2, the tightest admissible spacing.
enum class RingSchedule { Standard, Compact };

int ring_level(RingSchedule sch, int row);

// Brick side length (in metric units) that keeps every ring row non-empty on
// alternating-brick interval/grid families.
double brick_length(double r, int m, RingSchedule sch);

// Per-axis metric coordinates for interval, grid, products of intervals, and
// subspaces of these; empty when the space has no axis structure.
std::vector<std::vector<double>> axis_coordinates(const SpacePtr& X);

// 2^d-part coloring: per-axis alternating blocks of length L; part index is
// the binary code of the per-axis colors. Throws when no axis structure.
SubsetArray brick_parts(const SpacePtr& X, double L);

// Cover by single axis-aligned cells of side W, one part per non-empty cell;
// spaces without axis structure yield the one-part cover.
std::vector<PointSet> brick_cover(const SpacePtr& X, double W);

// --- the augmented dimension matrix ---

struct AugmentedMatrix {
    SubsetMatrix matrix;  // m x (n+1), first column distinguished as "b"
    double scale = 0.0;
    std::vector<Dim0Certificate> certs;  // row-major, all entries

    const Dim0Certificate& cert(int i, int j) const {
        return certs[static_cast<std::size_t>(i) * matrix.ncols() + j];
    }
};

// Builds the m-row augmented matrix from a disjoint covering array of parts
// (certified internally at scale (m+1)r) by the inductive ring construction,
// then verifies it; a failed verification throws ConstructionDefect.
AugmentedMatrix asdim_matrix(const SubsetArray& parts, double r, int m,
                             RingSchedule sch = RingSchedule::Standard,
                             Exec ex = Exec::Serial);

// Independent check: every row covers the space (two routes), the non-b
// columns form an r-orthogonal matrix (three routes), and every recorded
// certificate matches a fresh recomputation.
Report verify_asdim_matrix(const AugmentedMatrix& M, double r,
                           Exec ex = Exec::Serial);

// --- disjoint refinement ---

struct RefineResult {
    SubsetArray parts;
    std::vector<Dim0Certificate> certs;  // per part, at scale s
    ExtReal predicted;                   // cover-norm + 2M chain of constants
    Report report;
};

// Splits a scale-r-dimension-0 set (certified by cert) into parts that are
// pairwise scale-r-disjoint and individually scale-s-dimension 0.
RefineResult refine_disjoint(const SpacePtr& X, const PointSet& Xset,
                             const Dim0Certificate& cert, double s,
                             Exec ex = Exec::Serial);

// --- product decompositions ---

struct CrossDim0 {
    Dim0Certificate cert;  // measured for cross_dot(A, B)
    ExtReal predicted;     // sum (l1) or max (sup) of the factor norms
};

// Certificate for the cross-dot product set; A must be scale-r-disjoint.
CrossDim0 cross_dim0(const ProductHandle& P, const SubsetArray& A,
                     const SubsetArray& B, double r, Exec ex = Exec::Serial);

struct ProductSplitResult {
    SubsetArray Z;                       // n+1 entries over the product
    std::vector<Dim0Certificate> certs;  // Z(0) at r, the rest at s
    Report report;
};

// Z(j) = union over i of Mx(i,j) x Yparts(i); Mx rows must match Yparts.
ProductSplitResult product_split(const ProductHandle& P,
                                 const AugmentedMatrix& Mx,
                                 const SubsetArray& Yparts, double s,
                                 Exec ex = Exec::Serial);

struct TruncatedResult {
    SpacePtr head;
    SpacePtr tail;
    SpacePtr product;
    SubsetArray Z;  // entry 0 certified at k, the rest at s
    Report report;
};

// Product of the first `truncation` factors split via the head/tail scheme:
// the head is the product of the first k factors, the tail is pinned beyond
// the truncation point. Factors must be 2i-discrete (i starting at 1).
TruncatedResult truncated_product_decomposition(
    const std::vector<SpacePtr>& factors, int k, double s, int truncation,
    Norm norm = Norm::L1, Exec ex = Exec::Serial);

}  // namespace coarsekit
