#include "coarsekit/disjointness.hpp"

namespace coarsekit {

bool sets_scale_disjoint(const SpacePtr& X, const PointSet& C,
                         const PointSet& D, double r, Exec ex) {
    return !ball(*X, C, r, ex).intersects(ball(*X, D, r, ex));
}

bool array_scale_disjoint(const SubsetArray& A, double r, Exec ex) {
    std::vector<PointSet> balls;
    balls.reserve(A.size());
    for (int s = 0; s < A.size(); ++s)
        balls.push_back(ball(*A.space(), A.entry(s), r, ex));
    for (int s = 0; s < A.size(); ++s)
        for (int t = s + 1; t < A.size(); ++t)
            if (balls[s].intersects(balls[t])) return false;
    return true;
}

bool arrays_orthogonal(const SubsetArray& A, const SubsetArray& B, double r,
                       Exec ex) {
    return cap_dot(ball_array(A, r, ex), ball_array(B, r, ex)).empty();
}

OrthogonalityVerdict matrix_orthogonal(const SubsetMatrix& M, double r,
                                       Exec ex) {
    OrthogonalityVerdict v;

    v.cols_scale_disjoint = true;
    for (int j = 0; j < M.ncols() && v.cols_scale_disjoint; ++j)
        if (!array_scale_disjoint(col_array(M, j), r, ex))
            v.cols_scale_disjoint = false;

    v.rows_orthogonal = true;
    for (int i = 0; i < M.nrows() && v.rows_orthogonal; ++i)
        for (int k = i + 1; k < M.nrows(); ++k)
            if (!arrays_orthogonal(row_array(M, i), row_array(M, k), r, ex)) {
                v.rows_orthogonal = false;
                break;
            }

    SubsetMatrix BM = ball_matrix(M, r, ex);
    SubsetMatrix P = matmul_cap(BM, transpose(BM));
    v.ball_product_diagonal = true;
    for (int i = 0; i < P.nrows() && v.ball_product_diagonal; ++i)
        for (int j = 0; j < P.ncols(); ++j)
            if (i != j && !P.entry(i, j).empty()) {
                v.ball_product_diagonal = false;
                break;
            }

    return v;
}

}  // namespace coarsekit
