#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include <gmpxx.h>

namespace bipinv {

using Integer = mpz_class;
using Rational = mpq_class;

// Dense row-major matrix of arbitrary-precision integers.
class IntegerMatrix {
public:
    IntegerMatrix() = default;
    IntegerMatrix(std::size_t rows, std::size_t cols);
    IntegerMatrix(std::initializer_list<std::initializer_list<long>> rows);

    static IntegerMatrix identity(std::size_t n);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }

    Integer& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const Integer& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    IntegerMatrix transpose() const;
    std::size_t nonzero_count() const;

    bool is_zero_one() const;
    bool is_unit_lower_triangular() const;
    bool is_symmetric() const;
    bool is_nonnegative() const;

    friend bool operator==(const IntegerMatrix& a, const IntegerMatrix& b);

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Integer> data_;
};

// Throws Error(DimensionMismatch) on incompatible shapes.
IntegerMatrix operator*(const IntegerMatrix& a, const IntegerMatrix& b);

// Matrix Market "coordinate integer general". Entries are written in
// row-major order, 1-based, as decimal integers of any length.
std::string to_matrix_market(const IntegerMatrix& m);
IntegerMatrix parse_matrix_market(const std::string& text);
IntegerMatrix read_matrix_market(const std::string& path);
void write_matrix_market(const IntegerMatrix& m, const std::string& path);

std::ostream& operator<<(std::ostream& os, const IntegerMatrix& m);

}  // namespace bipinv
