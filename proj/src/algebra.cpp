#include "coarsekit/algebra.hpp"

#include <unordered_set>

#include "coarsekit/errors.hpp"

namespace coarsekit {

namespace {

void check_space(const SpacePtr& a, const SpacePtr& b) {
    if (!a || !b) throw ValidationError("operand has no space");
    if (a.get() == b.get()) return;
    if (!a->same_space(*b))
        throw IndexMismatchError("operands live over different spaces: " +
                                 a->name() + " vs " + b->name());
}

void check_index(const IndexSet& a, const IndexSet& b, const char* what) {
    if (a == b) return;
    throw IndexMismatchError(std::string(what) + ": index sets " + a.str() +
                             " vs " + b.str());
}

void check_capacity(const SpacePtr& X, const PointSet& s, const char* what) {
    if (s.capacity() != X->n())
        throw IndexMismatchError(std::string(what) + ": set over " +
                                 std::to_string(s.capacity()) +
                                 " points, space " + X->name() + " has " +
                                 std::to_string(X->n()));
}

}  // namespace

IndexSet::IndexSet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
    std::unordered_set<std::string> seen;
    for (const auto& l : labels_)
        if (!seen.insert(l).second)
            throw ValidationError("duplicate index label: " + l);
}

IndexSet IndexSet::numbered(int k, const std::string& prefix) {
    if (k < 0) throw ValidationError("negative index-set size");
    std::vector<std::string> labels;
    labels.reserve(k);
    for (int i = 0; i < k; ++i) labels.push_back(prefix + std::to_string(i));
    return IndexSet(std::move(labels));
}

IndexSet IndexSet::pairs(const IndexSet& a, const IndexSet& b) {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(a.size()) * b.size());
    for (const auto& s : a.labels())
        for (const auto& t : b.labels()) labels.push_back("(" + s + "," + t + ")");
    return IndexSet(std::move(labels));
}

int IndexSet::find(const std::string& label) const {
    for (int i = 0; i < size(); ++i)
        if (labels_[i] == label) return i;
    return -1;
}

std::string IndexSet::str() const {
    std::string out = "[";
    for (int i = 0; i < size(); ++i) {
        if (i) out += ",";
        out += labels_[i];
    }
    return out + "]";
}

SubsetArray::SubsetArray(SpacePtr space, IndexSet index)
    : space_(std::move(space)), index_(std::move(index)) {
    if (!space_) throw ValidationError("array needs a space");
    entries_.assign(index_.size(), PointSet(space_->n()));
}

SubsetMatrix::SubsetMatrix(SpacePtr space, IndexSet rows, IndexSet cols)
    : space_(std::move(space)), rows_(std::move(rows)), cols_(std::move(cols)) {
    if (!space_) throw ValidationError("matrix needs a space");
    entries_.assign(static_cast<std::size_t>(rows_.size()) * cols_.size(),
                    PointSet(space_->n()));
}

PointSet cap_dot(const SubsetArray& A, const SubsetArray& B) {
    check_space(A.space(), B.space());
    check_index(A.index(), B.index(), "cap_dot");
    PointSet out(A.space()->n());
    for (int s = 0; s < A.size(); ++s) out |= A.entry(s) & B.entry(s);
    return out;
}

PointSet set_norm(const SubsetArray& A) {
    PointSet out(A.space()->n());
    for (int s = 0; s < A.size(); ++s) out |= A.entry(s);
    return out;
}

SubsetArray array_union(const SubsetArray& A, const SubsetArray& B) {
    check_space(A.space(), B.space());
    check_index(A.index(), B.index(), "array_union");
    SubsetArray out(A.space(), A.index());
    for (int s = 0; s < A.size(); ++s)
        out.entry(s) = A.entry(s) | B.entry(s);
    return out;
}

bool leq(const SubsetArray& A, const SubsetArray& B) {
    check_space(A.space(), B.space());
    check_index(A.index(), B.index(), "leq");
    for (int s = 0; s < A.size(); ++s)
        if (!A.entry(s).is_subset_of(B.entry(s))) return false;
    return true;
}

SubsetArray const_array(const SpacePtr& X, const IndexSet& S,
                        const PointSet& Y) {
    check_capacity(X, Y, "const_array");
    SubsetArray out(X, S);
    for (int s = 0; s < out.size(); ++s) out.entry(s) = Y;
    return out;
}

SubsetArray scalar_cap(const PointSet& B, const SubsetArray& A) {
    check_capacity(A.space(), B, "scalar_cap");
    SubsetArray out(A.space(), A.index());
    for (int s = 0; s < A.size(); ++s) out.entry(s) = B & A.entry(s);
    return out;
}

bool is_cover(const SubsetArray& A) {
    return set_norm(A).count() == A.space()->n();
}

SubsetArray ball_array(const SubsetArray& A, double r, Exec ex) {
    SubsetArray out(A.space(), A.index());
    for (int s = 0; s < A.size(); ++s)
        ball_into(*A.space(), A.entry(s), r, out.entry(s), ex);
    return out;
}

SubsetMatrix transpose(const SubsetMatrix& M) {
    SubsetMatrix out(M.space(), M.cols(), M.rows());
    for (int i = 0; i < M.nrows(); ++i)
        for (int j = 0; j < M.ncols(); ++j) out.entry(j, i) = M.entry(i, j);
    return out;
}

SubsetMatrix matmul_cap(const SubsetMatrix& M, const SubsetMatrix& N) {
    check_space(M.space(), N.space());
    check_index(M.cols(), N.rows(), "matmul_cap inner");
    SubsetMatrix out(M.space(), M.rows(), N.cols());
    for (int i = 0; i < M.nrows(); ++i)
        for (int j = 0; j < N.ncols(); ++j) {
            PointSet& acc = out.entry(i, j);
            for (int t = 0; t < M.ncols(); ++t)
                acc |= M.entry(i, t) & N.entry(t, j);
        }
    return out;
}

SubsetMatrix identity_matrix(const SpacePtr& X, const IndexSet& S) {
    SubsetMatrix out(X, S, S);
    for (int s = 0; s < S.size(); ++s)
        out.entry(s, s) = PointSet::full(X->n());
    return out;
}

bool leq(const SubsetMatrix& M, const SubsetMatrix& N) {
    check_space(M.space(), N.space());
    check_index(M.rows(), N.rows(), "leq rows");
    check_index(M.cols(), N.cols(), "leq cols");
    for (int i = 0; i < M.nrows(); ++i)
        for (int j = 0; j < M.ncols(); ++j)
            if (!M.entry(i, j).is_subset_of(N.entry(i, j))) return false;
    return true;
}

SubsetMatrix matrix_union(const SubsetMatrix& M, const SubsetMatrix& N) {
    check_space(M.space(), N.space());
    check_index(M.rows(), N.rows(), "matrix_union rows");
    check_index(M.cols(), N.cols(), "matrix_union cols");
    SubsetMatrix out(M.space(), M.rows(), M.cols());
    for (int i = 0; i < M.nrows(); ++i)
        for (int j = 0; j < M.ncols(); ++j)
            out.entry(i, j) = M.entry(i, j) | N.entry(i, j);
    return out;
}

bool columns_cover(const SubsetMatrix& M) {
    const int n = M.space()->n();
    for (int j = 0; j < M.ncols(); ++j) {
        PointSet u(n);
        for (int i = 0; i < M.nrows(); ++i) u |= M.entry(i, j);
        if (u.count() != n) return false;
    }
    return true;
}

SubsetMatrix ball_matrix(const SubsetMatrix& M, double r, Exec ex) {
    SubsetMatrix out(M.space(), M.rows(), M.cols());
    for (int i = 0; i < M.nrows(); ++i)
        for (int j = 0; j < M.ncols(); ++j)
            ball_into(*M.space(), M.entry(i, j), r, out.entry(i, j), ex);
    return out;
}

SubsetArray row_array(const SubsetMatrix& M, int i) {
    SubsetArray out(M.space(), M.cols());
    for (int j = 0; j < M.ncols(); ++j) out.entry(j) = M.entry(i, j);
    return out;
}

SubsetArray col_array(const SubsetMatrix& M, int j) {
    SubsetArray out(M.space(), M.rows());
    for (int i = 0; i < M.nrows(); ++i) out.entry(i) = M.entry(i, j);
    return out;
}

SubsetArray to_array(const SubsetMatrix& M) {
    if (M.nrows() == 1) return row_array(M, 0);
    if (M.ncols() == 1) return col_array(M, 0);
    throw ValidationError("to_array needs a single-row or single-column matrix");
}

SubsetMatrix as_row_matrix(const SubsetArray& A) {
    SubsetMatrix out(A.space(), IndexSet::numbered(1), A.index());
    for (int s = 0; s < A.size(); ++s) out.entry(0, s) = A.entry(s);
    return out;
}

SubsetMatrix as_col_matrix(const SubsetArray& A) {
    SubsetMatrix out(A.space(), A.index(), IndexSet::numbered(1));
    for (int s = 0; s < A.size(); ++s) out.entry(s, 0) = A.entry(s);
    return out;
}

ProductHandle::ProductHandle(SpacePtr product) : product_(std::move(product)) {
    if (!product_) throw ValidationError("product handle needs a space");
    if (product_->kind() != MetricKind::Product ||
        product_->children().size() != 2)
        throw ValidationError("product handle needs a two-factor product, got " +
                              product_->name());
}

ProductHandle ProductHandle::make(SpacePtr x, SpacePtr y, Norm norm,
                                  std::string name) {
    return ProductHandle(
        make_product({std::move(x), std::move(y)}, norm, std::move(name)));
}

PointSet cross_subset(const ProductHandle& P, const PointSet& a,
                      const PointSet& b) {
    check_capacity(P.left(), a, "cross_subset left");
    check_capacity(P.right(), b, "cross_subset right");
    PointSet out(P.product()->n());
    a.for_each([&](int ix) {
        b.for_each([&](int iy) { out.set(P.pair(ix, iy)); });
    });
    return out;
}

PointSet cross_dot(const ProductHandle& P, const SubsetArray& A,
                   const SubsetArray& B) {
    check_space(A.space(), P.left());
    check_space(B.space(), P.right());
    check_index(A.index(), B.index(), "cross_dot");
    PointSet out(P.product()->n());
    for (int s = 0; s < A.size(); ++s)
        out |= cross_subset(P, A.entry(s), B.entry(s));
    return out;
}

SubsetMatrix matmul_cross(const ProductHandle& P, const SubsetMatrix& M,
                          const SubsetMatrix& N) {
    check_space(M.space(), P.left());
    check_space(N.space(), P.right());
    check_index(M.cols(), N.rows(), "matmul_cross inner");
    SubsetMatrix out(P.product(), M.rows(), N.cols());
    for (int i = 0; i < M.nrows(); ++i)
        for (int j = 0; j < N.ncols(); ++j) {
            PointSet& acc = out.entry(i, j);
            for (int t = 0; t < M.ncols(); ++t)
                acc |= cross_subset(P, M.entry(i, t), N.entry(t, j));
        }
    return out;
}

SubsetArray cartesian_product_arrays(const ProductHandle& P,
                                     const SubsetArray& A,
                                     const SubsetArray& B) {
    check_space(A.space(), P.left());
    check_space(B.space(), P.right());
    SubsetArray out(P.product(), IndexSet::pairs(A.index(), B.index()));
    int k = 0;
    for (int s = 0; s < A.size(); ++s)
        for (int t = 0; t < B.size(); ++t)
            out.entry(k++) = cross_subset(P, A.entry(s), B.entry(t));
    return out;
}

}  // namespace coarsekit
