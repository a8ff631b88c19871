#include "lefkit/matrix.hpp"

#include "lefkit/errors.hpp"

namespace lefkit {

RatMatrix::RatMatrix(int rows, int cols) : rows_(rows), cols_(cols) {
    if (rows < 0 || cols < 0) throw ContractError("RatMatrix: negative shape");
    e_.assign(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), Rat(0));
}

RatMatrix RatMatrix::identity(int n) {
    RatMatrix m(n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Rat(1);
    return m;
}

RatMatrix RatMatrix::from_rows(const std::vector<std::vector<Rat>>& rows) {
    if (rows.empty()) return RatMatrix();
    const int c = static_cast<int>(rows[0].size());
    RatMatrix m(static_cast<int>(rows.size()), c);
    for (int i = 0; i < m.rows(); ++i) {
        if (static_cast<int>(rows[i].size()) != c)
            throw ContractError("RatMatrix: ragged rows");
        for (int j = 0; j < c; ++j) m.at(i, j) = rows[i][j];
    }
    return m;
}

RatMatrix RatMatrix::column(const std::vector<Rat>& v) {
    RatMatrix m(static_cast<int>(v.size()), 1);
    for (int i = 0; i < m.rows(); ++i) m.at(i, 0) = v[i];
    return m;
}

RatMatrix RatMatrix::row(const std::vector<Rat>& v) {
    RatMatrix m(1, static_cast<int>(v.size()));
    for (int j = 0; j < m.cols(); ++j) m.at(0, j) = v[j];
    return m;
}

Rat& RatMatrix::at(int r, int c) {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw ContractError("RatMatrix: index out of range");
    return e_[static_cast<std::size_t>(r) * cols_ + c];
}

const Rat& RatMatrix::at(int r, int c) const {
    if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
        throw ContractError("RatMatrix: index out of range");
    return e_[static_cast<std::size_t>(r) * cols_ + c];
}

bool RatMatrix::is_zero() const {
    for (const auto& x : e_)
        if (!x.is_zero()) return false;
    return true;
}

bool RatMatrix::is_symmetric() const {
    if (!is_square()) return false;
    for (int i = 0; i < rows_; ++i)
        for (int j = i + 1; j < cols_; ++j)
            if (at(i, j) != at(j, i)) return false;
    return true;
}

RatMatrix RatMatrix::transpose() const {
    RatMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
    return t;
}

RatMatrix RatMatrix::scaled(const Rat& c) const {
    RatMatrix m = *this;
    for (auto& x : m.e_) x *= c;
    return m;
}

RatMatrix RatMatrix::operator+(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ContractError("RatMatrix: shape mismatch in +");
    RatMatrix m = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] += o.e_[k];
    return m;
}

RatMatrix RatMatrix::operator-(const RatMatrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_)
        throw ContractError("RatMatrix: shape mismatch in -");
    RatMatrix m = *this;
    for (std::size_t k = 0; k < e_.size(); ++k) m.e_[k] -= o.e_[k];
    return m;
}

RatMatrix RatMatrix::operator-() const { return scaled(Rat(-1)); }

RatMatrix RatMatrix::operator*(const RatMatrix& o) const {
    if (cols_ != o.rows_)
        throw ContractError("RatMatrix: shape mismatch in *");
    RatMatrix m(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            const Rat& a = at(i, k);
            if (a.is_zero()) continue;
            for (int j = 0; j < o.cols_; ++j) {
                const Rat& b = o.at(k, j);
                if (!b.is_zero()) m.at(i, j) += a * b;
            }
        }
    return m;
}

bool RatMatrix::operator==(const RatMatrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && e_ == o.e_;
}

RatMatrix RatMatrix::hstack(const RatMatrix& o) const {
    if (rows_ != o.rows_) throw ContractError("hstack: row mismatch");
    RatMatrix m(rows_, cols_ + o.cols_);
    for (int i = 0; i < rows_; ++i) {
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
        for (int j = 0; j < o.cols_; ++j) m.at(i, cols_ + j) = o.at(i, j);
    }
    return m;
}

RatMatrix RatMatrix::vstack(const RatMatrix& o) const {
    if (cols_ != o.cols_) throw ContractError("vstack: column mismatch");
    RatMatrix m(rows_ + o.rows_, cols_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(i, j) = at(i, j);
    for (int i = 0; i < o.rows_; ++i)
        for (int j = 0; j < cols_; ++j) m.at(rows_ + i, j) = o.at(i, j);
    return m;
}

std::vector<Rat> RatMatrix::row_vec(int r) const {
    std::vector<Rat> v(cols_);
    for (int j = 0; j < cols_; ++j) v[j] = at(r, j);
    return v;
}

std::vector<Rat> RatMatrix::col_vec(int c) const {
    std::vector<Rat> v(rows_);
    for (int i = 0; i < rows_; ++i) v[i] = at(i, c);
    return v;
}

RatMatrix RatMatrix::row_matrix(int r) const { return RatMatrix::row(row_vec(r)); }
RatMatrix RatMatrix::col_matrix(int c) const { return RatMatrix::column(col_vec(c)); }

} // namespace lefkit
