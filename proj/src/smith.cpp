#include "abcl/smith.hpp"

#include <utility>

#include "abcl/error.hpp"

namespace abcl {

IntegerMatrix::IntegerMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols)
{
}

IntegerMatrix::IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows)
{
    rows_ = rows.size();
    cols_ = rows_ ? rows.begin()->size() : 0;
    for (auto const& r : rows) {
        if (r.size() != cols_)
            throw domain_error("IntegerMatrix: ragged rows");
        for (long v : r)
            entries_.emplace_back(v);
    }
}

IntegerMatrix IntegerMatrix::identity(std::size_t n)
{
    IntegerMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        m(i, i) = 1;
    return m;
}

IntegerMatrix IntegerMatrix::operator*(IntegerMatrix const& o) const
{
    if (cols_ != o.rows_)
        throw domain_error("IntegerMatrix: dimension mismatch");
    IntegerMatrix r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
        for (std::size_t k = 0; k < cols_; ++k) {
            Integer const& a = (*this)(i, k);
            if (a == 0)
                continue;
            for (std::size_t j = 0; j < o.cols_; ++j)
                r(i, j) += a * o(k, j);
        }
    return r;
}

bool IntegerMatrix::operator==(IntegerMatrix const& o) const
{
    return rows_ == o.rows_ && cols_ == o.cols_ && entries_ == o.entries_;
}

void IntegerMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t j = 0; j < cols_; ++j)
        std::swap((*this)(a, j), (*this)(b, j));
}

void IntegerMatrix::swap_cols(std::size_t a, std::size_t b)
{
    if (a == b)
        return;
    for (std::size_t i = 0; i < rows_; ++i)
        std::swap((*this)(i, a), (*this)(i, b));
}

void IntegerMatrix::add_row_multiple(std::size_t dst, std::size_t src, Integer const& k)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(dst, j) += k * (*this)(src, j);
}

void IntegerMatrix::add_col_multiple(std::size_t dst, std::size_t src, Integer const& k)
{
    for (std::size_t i = 0; i < rows_; ++i)
        (*this)(i, dst) += k * (*this)(i, src);
}

void IntegerMatrix::negate_row(std::size_t r)
{
    for (std::size_t j = 0; j < cols_; ++j)
        (*this)(r, j) = -(*this)(r, j);
}

Integer determinant(IntegerMatrix const& m)
{
    if (m.rows() != m.cols())
        throw domain_error("determinant: square matrix required");
    /* Bareiss fraction-free elimination */
    std::size_t const n = m.rows();
    if (n == 0)
        return 1;
    IntegerMatrix a = m;
    Integer prev = 1;
    int sign = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a(k, k) == 0) {
            std::size_t r = k + 1;
            while (r < n && a(r, k) == 0)
                ++r;
            if (r == n)
                return 0;
            a.swap_rows(k, r);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j)
                a(i, j) = (a(i, j) * a(k, k) - a(i, k) * a(k, j)) / prev;
        prev = a(k, k);
    }
    return sign * a(n - 1, n - 1);
}

namespace {

/* truncating division: the remainder is strictly smaller than the pivot */
Integer quotient(Integer const& a, Integer const& b)
{
    Integer q;
    mpz_tdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

} // namespace

SmithForm smith_normal_form(IntegerMatrix const& m)
{
    std::size_t const nr = m.rows(), nc = m.cols();
    IntegerMatrix a = m;
    IntegerMatrix u = IntegerMatrix::identity(nr);
    IntegerMatrix v = IntegerMatrix::identity(nc);
    std::size_t const n = std::min(nr, nc);

    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            /* pivot: smallest non-zero |entry| in the block */
            std::size_t pi = nr, pj = nc;
            for (std::size_t i = t; i < nr; ++i)
                for (std::size_t j = t; j < nc; ++j) {
                    if (a(i, j) == 0)
                        continue;
                    if (pi == nr || mpz_cmpabs(a(i, j).get_mpz_t(), a(pi, pj).get_mpz_t()) < 0) {
                        pi = i;
                        pj = j;
                    }
                }
            if (pi == nr)
                goto done; /* remaining block is zero */
            a.swap_rows(t, pi);
            u.swap_rows(t, pi);
            a.swap_cols(t, pj);
            v.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < nr; ++i) {
                if (a(i, t) == 0)
                    continue;
                Integer q = -quotient(a(i, t), a(t, t));
                a.add_row_multiple(i, t, q);
                u.add_row_multiple(i, t, q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < nc; ++j) {
                if (a(t, j) == 0)
                    continue;
                Integer q = -quotient(a(t, j), a(t, t));
                a.add_col_multiple(j, t, q);
                v.add_col_multiple(j, t, q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;

            /* divisibility: fold an offending row into row t and retry */
            bool divides = true;
            for (std::size_t i = t + 1; i < nr && divides; ++i)
                for (std::size_t j = t + 1; j < nc; ++j)
                    if (!mpz_divisible_p(a(i, j).get_mpz_t(), a(t, t).get_mpz_t())) {
                        a.add_row_multiple(t, i, 1);
                        u.add_row_multiple(t, i, 1);
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (a(t, t) < 0) {
            a.negate_row(t);
            u.negate_row(t);
        }
    }
done:
    SmithForm result{std::vector<Integer>(n), std::move(u), std::move(v)};
    for (std::size_t i = 0; i < n; ++i)
        result.diagonal[i] = a(i, i);
    return result;
}

} // namespace abcl
