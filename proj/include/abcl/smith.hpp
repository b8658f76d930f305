#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "abcl/numtheory.hpp"

namespace abcl {

class IntegerMatrix
{
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> entries_;

  public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols);
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntegerMatrix identity(std::size_t n);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    Integer const& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    IntegerMatrix operator*(IntegerMatrix const& o) const;
    bool operator==(IntegerMatrix const& o) const;

    void swap_rows(std::size_t a, std::size_t b);
    void swap_cols(std::size_t a, std::size_t b);
    /* row[dst] += k * row[src] */
    void add_row_multiple(std::size_t dst, std::size_t src, Integer const& k);
    void add_col_multiple(std::size_t dst, std::size_t src, Integer const& k);
    void negate_row(std::size_t r);
};

Integer determinant(IntegerMatrix const& m);

struct SmithForm
{
    /* min(rows, cols) entries, non-negative, d[0] | d[1] | ... */
    std::vector<Integer> diagonal;
    IntegerMatrix left;  /* U, rows x rows, unimodular */
    IntegerMatrix right; /* V, cols x cols, unimodular */
};

/* U * M * V = diag. Pivot is the entry of smallest absolute value in the
 * remaining block, first in row-major order on ties. */
SmithForm smith_normal_form(IntegerMatrix const& m);

} // namespace abcl
