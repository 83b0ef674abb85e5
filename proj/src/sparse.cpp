#include "diracfem/sparse.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace diracfem {

SparseMatrixCSR SparseMatrixCSR::from_triplets(std::size_t rows, std::size_t cols,
                                               std::vector<Triplet> triplets) {
    std::sort(triplets.begin(), triplets.end(), [](const Triplet& a, const Triplet& b) {
        return a.row != b.row ? a.row < b.row : a.col < b.col;
    });

    SparseMatrixCSR m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.row_ptr_.assign(rows + 1, 0);
    for (std::size_t k = 0; k < triplets.size();) {
        const std::size_t r = triplets[k].row;
        const std::size_t c = triplets[k].col;
        if (r >= rows || c >= cols) throw std::out_of_range("from_triplets: index out of range");
        double v = 0.0;
        while (k < triplets.size() && triplets[k].row == r && triplets[k].col == c)
            v += triplets[k++].value;
        m.col_idx_.push_back(c);
        m.values_.push_back(v);
        ++m.row_ptr_[r + 1];
    }
    for (std::size_t i = 0; i < rows; ++i) m.row_ptr_[i + 1] += m.row_ptr_[i];
    return m;
}

void SparseMatrixCSR::apply(const std::vector<double>& x, std::vector<double>& y) const {
    if (x.size() != cols_) throw std::invalid_argument("SparseMatrixCSR::apply: size mismatch");
    y.assign(rows_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i) {
        double s = 0.0;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            s += values_[k] * x[col_idx_[k]];
        y[i] = s;
    }
}

std::vector<double> SparseMatrixCSR::apply(const std::vector<double>& x) const {
    std::vector<double> y;
    apply(x, y);
    return y;
}

std::vector<double> SparseMatrixCSR::apply_transpose(const std::vector<double>& x) const {
    if (x.size() != rows_)
        throw std::invalid_argument("SparseMatrixCSR::apply_transpose: size mismatch");
    std::vector<double> y(cols_, 0.0);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            y[col_idx_[k]] += values_[k] * x[i];
    return y;
}

double SparseMatrixCSR::row_sum(std::size_t i) const {
    double s = 0.0;
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) s += values_[k];
    return s;
}

double SparseMatrixCSR::entry(std::size_t i, std::size_t j) const {
    for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
        if (col_idx_[k] == j) return values_[k];
    return 0.0;
}

bool SparseMatrixCSR::is_structurally_symmetric(double tol) const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k)
            if (std::abs(values_[k] - entry(col_idx_[k], i)) > tol) return false;
    return true;
}

SparseMatrixCSR SparseMatrixCSR::restrict_symmetric(const std::vector<std::size_t>& keep,
                                                    std::size_t kept_count) const {
    if (keep.size() != rows_ || rows_ != cols_)
        throw std::invalid_argument("restrict_symmetric: square matrix and full map required");
    std::vector<Triplet> trip;
    for (std::size_t i = 0; i < rows_; ++i) {
        if (keep[i] == npos) continue;
        for (std::size_t k = row_ptr_[i]; k < row_ptr_[i + 1]; ++k) {
            const std::size_t j = col_idx_[k];
            if (keep[j] == npos) continue;
            trip.push_back({keep[i], keep[j], values_[k]});
        }
    }
    return from_triplets(kept_count, kept_count, std::move(trip));
}

}  // namespace diracfem
