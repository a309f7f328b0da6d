#pragma once

#include <string>
#include <vector>

#include "coarsekit/kernels.hpp"
#include "coarsekit/point_set.hpp"
#include "coarsekit/space.hpp"

namespace coarsekit {

// Finite ordered list of distinct labels. Two arrays/matrices combine only
// when their index sets are equal as ordered lists; positional matching
// across different label lists is an error by design.
class IndexSet {
  public:
    IndexSet() = default;
    explicit IndexSet(std::vector<std::string> labels);
    static IndexSet numbered(int k, const std::string& prefix = "");
    // labels "(s,t)" over the cartesian product, t varying fastest
    static IndexSet pairs(const IndexSet& a, const IndexSet& b);

    int size() const { return static_cast<int>(labels_.size()); }
    const std::string& label(int i) const { return labels_[i]; }
    const std::vector<std::string>& labels() const { return labels_; }
    int find(const std::string& label) const;  // -1 when absent
    std::string str() const;                   // "[a,b,c]" for error messages

    friend bool operator==(const IndexSet&, const IndexSet&) = default;

  private:
    std::vector<std::string> labels_;
};

// Function from an index set to subsets of one space.
class SubsetArray {
  public:
    SubsetArray() = default;
    SubsetArray(SpacePtr space, IndexSet index);

    const SpacePtr& space() const { return space_; }
    const IndexSet& index() const { return index_; }
    int size() const { return index_.size(); }
    PointSet& entry(int i) { return entries_[i]; }
    const PointSet& entry(int i) const { return entries_[i]; }

    friend bool operator==(const SubsetArray& a, const SubsetArray& b) {
        return a.index_ == b.index_ && a.entries_ == b.entries_;
    }

  private:
    SpacePtr space_;
    IndexSet index_;
    std::vector<PointSet> entries_;
};

// Subset array indexed by rows x cols, stored row-major.
class SubsetMatrix {
  public:
    SubsetMatrix() = default;
    SubsetMatrix(SpacePtr space, IndexSet rows, IndexSet cols);

    const SpacePtr& space() const { return space_; }
    const IndexSet& rows() const { return rows_; }
    const IndexSet& cols() const { return cols_; }
    int nrows() const { return rows_.size(); }
    int ncols() const { return cols_.size(); }
    PointSet& entry(int i, int j) { return entries_[idx(i, j)]; }
    const PointSet& entry(int i, int j) const { return entries_[idx(i, j)]; }

    friend bool operator==(const SubsetMatrix& a, const SubsetMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
               a.entries_ == b.entries_;
    }

  private:
    std::size_t idx(int i, int j) const {
        return static_cast<std::size_t>(i) * cols_.size() + j;
    }
    SpacePtr space_;
    IndexSet rows_, cols_;
    std::vector<PointSet> entries_;
};

// --- array operations ---

// union over s of A(s) ∩ B(s)
PointSet cap_dot(const SubsetArray& A, const SubsetArray& B);
// cap_dot(A, A) = union of all entries; equals the space iff A is a cover
PointSet set_norm(const SubsetArray& A);
SubsetArray array_union(const SubsetArray& A, const SubsetArray& B);
bool leq(const SubsetArray& A, const SubsetArray& B);  // entrywise inclusion
SubsetArray const_array(const SpacePtr& X, const IndexSet& S,
                        const PointSet& Y);
// entrywise intersection with a scalar set
SubsetArray scalar_cap(const PointSet& B, const SubsetArray& A);
bool is_cover(const SubsetArray& A);
SubsetArray ball_array(const SubsetArray& A, double r, Exec ex = Exec::Serial);

// --- matrix operations ---

SubsetMatrix transpose(const SubsetMatrix& M);
SubsetMatrix matmul_cap(const SubsetMatrix& M, const SubsetMatrix& N);
SubsetMatrix identity_matrix(const SpacePtr& X, const IndexSet& S);
bool leq(const SubsetMatrix& M, const SubsetMatrix& N);
SubsetMatrix matrix_union(const SubsetMatrix& M, const SubsetMatrix& N);
// every diagonal entry of transpose(M) ·∩ M equals the space
bool columns_cover(const SubsetMatrix& M);
SubsetMatrix ball_matrix(const SubsetMatrix& M, double r,
                         Exec ex = Exec::Serial);

// views / conversions
SubsetArray row_array(const SubsetMatrix& M, int i);
SubsetArray col_array(const SubsetMatrix& M, int j);
// 1 x n or n x 1 matrix flattened to an array over its long axis
SubsetArray to_array(const SubsetMatrix& M);
SubsetMatrix as_row_matrix(const SubsetArray& A);  // 1 x S
SubsetMatrix as_col_matrix(const SubsetArray& A);  // S x 1

// --- products across two spaces ---

// A two-factor product space with index arithmetic between factor points and
// product points. Cross products of arrays land in the space this handle
// wraps, so the norm (l1 or sup) is fixed explicitly at construction.
class ProductHandle {
  public:
    explicit ProductHandle(SpacePtr product);  // must have exactly 2 factors
    static ProductHandle make(SpacePtr x, SpacePtr y, Norm norm = Norm::L1,
                              std::string name = "");

    const SpacePtr& product() const { return product_; }
    const SpacePtr& left() const { return product_->children()[0]; }
    const SpacePtr& right() const { return product_->children()[1]; }
    int pair(int ix, int iy) const { return ix * right()->n() + iy; }

  private:
    SpacePtr product_;
};

// a x b as a subset of the product
PointSet cross_subset(const ProductHandle& P, const PointSet& a,
                      const PointSet& b);
// union over s of A(s) x B(s)
PointSet cross_dot(const ProductHandle& P, const SubsetArray& A,
                   const SubsetArray& B);
// row-by-column matrix product with x in place of ∩
SubsetMatrix matmul_cross(const ProductHandle& P, const SubsetMatrix& M,
                          const SubsetMatrix& N);
// array over S x T sending (s,t) to A(s) x B(t)
SubsetArray cartesian_product_arrays(const ProductHandle& P,
                                     const SubsetArray& A,
                                     const SubsetArray& B);

}  // namespace coarsekit
