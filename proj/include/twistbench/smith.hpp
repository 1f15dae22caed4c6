#pragma once

#include <cstdint>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace twistbench {

using BigInt = boost::multiprecision::cpp_int;

template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, T fill = T(0)) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    bool operator==(const Matrix& o) const { return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_; }

private:
    std::size_t rows_ = 0, cols_ = 0;
    std::vector<T> data_;
};

using BigMatrix = Matrix<BigInt>;

BigMatrix multiply(const BigMatrix& a, const BigMatrix& b);

struct SmithResult {
    BigMatrix U, D, V;       // U·M·V = D
    BigMatrix U_inv, V_inv;  // inverses of U and V
    std::size_t rank = 0;
    // diagonal entries d1 | d2 | ... (nonnegative), min(rows, cols) of them
    std::vector<BigInt> diagonal() const;
};

// Exact Smith normal form over the integers. Column transforms are skipped
// (left empty) when track_columns is false.
SmithResult smith_normal_form(const BigMatrix& M, bool track_columns = true);

// Diagonalization over Z/m (m >= 2) by unimodular row and column operations:
// U·A·V ≡ diag(d) mod m; the gcd(d_i, m) are the elementary divisors.
struct ModularSmith {
    std::int64_t modulus = 0;
    std::vector<std::int64_t> d;  // one per column of A
    Matrix<std::int64_t> U, U_inv;  // empty unless requested
    Matrix<std::int64_t> V, V_inv;
};

ModularSmith modular_smith(const Matrix<std::int64_t>& A, std::int64_t modulus, bool track_rows);

std::int64_t mod_reduce(std::int64_t a, std::int64_t m);
std::int64_t mod_inverse(std::int64_t a, std::int64_t m);

}  // namespace twistbench
