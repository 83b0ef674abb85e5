#ifndef DIRACFEM_SPARSE_HPP
#define DIRACFEM_SPARSE_HPP

#include <cstddef>
#include <vector>

namespace diracfem {

struct Triplet {
    std::size_t row;
    std::size_t col;
    double value;
};

/// Row-compressed sparse matrix. Duplicate triplets are summed on build;
/// column indices are sorted within each row.
class SparseMatrixCSR {
  public:
    SparseMatrixCSR() = default;
    static SparseMatrixCSR from_triplets(std::size_t rows, std::size_t cols,
                                         std::vector<Triplet> triplets);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    /// y = A x
    void apply(const std::vector<double>& x, std::vector<double>& y) const;
    std::vector<double> apply(const std::vector<double>& x) const;

    /// y = A^T x
    std::vector<double> apply_transpose(const std::vector<double>& x) const;

    double row_sum(std::size_t i) const;
    bool is_structurally_symmetric(double tol = 0.0) const;
    double entry(std::size_t i, std::size_t j) const;

    /// Submatrix over kept indices (same index set for rows and columns).
    /// keep maps old index -> new index, or npos for dropped.
    SparseMatrixCSR restrict_symmetric(const std::vector<std::size_t>& keep,
                                       std::size_t kept_count) const;

    static constexpr std::size_t npos = static_cast<std::size_t>(-1);

    const std::vector<std::size_t>& row_ptr() const { return row_ptr_; }
    const std::vector<std::size_t>& col_idx() const { return col_idx_; }
    const std::vector<double>& values() const { return values_; }

  private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<std::size_t> row_ptr_;
    std::vector<std::size_t> col_idx_;
    std::vector<double> values_;
};

}  // namespace diracfem

#endif
