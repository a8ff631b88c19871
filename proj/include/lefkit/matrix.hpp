#pragma once

#include "lefkit/rational.hpp"

#include <vector>

namespace lefkit {

/// Dense matrix of exact rationals, row-major. Rows or columns may be zero
/// (empty matrices carry their shape); all query operations are pure.
class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(int rows, int cols);

    static RatMatrix identity(int n);
    static RatMatrix from_rows(const std::vector<std::vector<Rat>>& rows);
    static RatMatrix column(const std::vector<Rat>& v);
    static RatMatrix row(const std::vector<Rat>& v);

    int rows() const { return rows_; }
    int cols() const { return cols_; }
    bool empty() const { return rows_ == 0 || cols_ == 0; }

    Rat& at(int r, int c);
    const Rat& at(int r, int c) const;

    bool is_zero() const;
    bool is_square() const { return rows_ == cols_; }
    bool is_symmetric() const;

    RatMatrix transpose() const;
    RatMatrix scaled(const Rat& c) const;

    RatMatrix operator+(const RatMatrix& o) const;
    RatMatrix operator-(const RatMatrix& o) const;
    RatMatrix operator*(const RatMatrix& o) const;
    RatMatrix operator-() const;
    bool operator==(const RatMatrix& o) const;
    bool operator!=(const RatMatrix& o) const { return !(*this == o); }

    /// Horizontal / vertical concatenation; shapes must agree on the shared
    /// dimension (an empty side with 0 rows/cols adapts).
    RatMatrix hstack(const RatMatrix& o) const;
    RatMatrix vstack(const RatMatrix& o) const;

    std::vector<Rat> row_vec(int r) const;
    std::vector<Rat> col_vec(int c) const;
    RatMatrix row_matrix(int r) const;
    RatMatrix col_matrix(int c) const;

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<Rat> e_;
};

} // namespace lefkit
