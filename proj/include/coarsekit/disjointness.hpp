#pragma once

#include "coarsekit/algebra.hpp"
#include "coarsekit/kernels.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

// closed r-balls around C and D do not meet
bool sets_scale_disjoint(const SpacePtr& X, const PointSet& C,
                         const PointSet& D, double r, Exec ex = Exec::Serial);

// entries pairwise scale-r-disjoint
bool array_scale_disjoint(const SubsetArray& A, double r,
                          Exec ex = Exec::Serial);

// cap_dot of the r-ball arrays is empty
bool arrays_orthogonal(const SubsetArray& A, const SubsetArray& B, double r,
                       Exec ex = Exec::Serial);

// Three independently computed characterizations of matrix orthogonality;
// they are equivalent, so agree() failing indicates a library defect.
struct OrthogonalityVerdict {
    bool cols_scale_disjoint = false;   // each column scale-r-disjoint
    bool rows_orthogonal = false;       // rows pairwise r-orthogonal
    bool ball_product_diagonal = false; // B(M,r) ·∩ B(M,r)ᵀ diagonal
    bool agree() const {
        return cols_scale_disjoint == rows_orthogonal &&
               rows_orthogonal == ball_product_diagonal;
    }
    bool all() const {
        return cols_scale_disjoint && rows_orthogonal && ball_product_diagonal;
    }
};

OrthogonalityVerdict matrix_orthogonal(const SubsetMatrix& M, double r,
                                       Exec ex = Exec::Serial);

}  // namespace coarsekit
