#include "k3taut/numeric.hpp"

namespace k3taut {

Rat rat_from_string(const std::string& s)
{
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos)
            return Rat(BigInt(s));
        BigInt num(s.substr(0, slash));
        BigInt den(s.substr(slash + 1));
        if (den == 0)
            throw ValidationError("rational with zero denominator: " + s);
        return Rat(num, den);
    } catch (const std::exception&) {
        throw ValidationError("malformed rational: " + s);
    }
}

BigInt isqrt_floor(const BigInt& x)
{
    if (x < 0)
        throw ComputeError("isqrt of negative number");
    if (x == 0)
        return 0;
    BigInt r = x, prev = 0;
    /* Newton iteration; monotone decreasing once above the root. */
    while (true) {
        BigInt next = (r + x / r) / 2;
        if (next >= r)
            break;
        r = next;
    }
    while (r * r > x)
        --r;
    while ((r + 1) * (r + 1) <= x)
        ++r;
    return r;
}

BigInt isqrt_ceil(const BigInt& x)
{
    BigInt f = isqrt_floor(x);
    return f * f == x ? f : f + 1;
}

BigInt rat_ceil(const Rat& r)
{
    BigInt n = numerator(r), d = denominator(r);
    BigInt q = n / d;
    if (q * d < n)
        ++q;
    return q;
}

QMatrix QMatrix::identity(int n)
{
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        m.at(i, i) = 1;
    return m;
}

QMatrix QMatrix::transposed() const
{
    QMatrix t(cols_, rows_);
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < cols_; ++j)
            t.at(j, i) = at(i, j);
    return t;
}

QMatrix QMatrix::operator*(const QMatrix& o) const
{
    if (cols_ != o.rows_)
        throw ComputeError("matrix dimension mismatch");
    QMatrix r(rows_, o.cols_);
    for (int i = 0; i < rows_; ++i)
        for (int k = 0; k < cols_; ++k) {
            if (at(i, k) == 0)
                continue;
            for (int j = 0; j < o.cols_; ++j)
                r.at(i, j) += at(i, k) * o.at(k, j);
        }
    return r;
}

namespace {

/* Row-reduce a copy; returns (rank, det-if-square). */
std::pair<int, Rat> eliminate(QMatrix m)
{
    const int rows = m.rows(), cols = m.cols();
    Rat det = 1;
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int pivot = -1;
        for (int i = rank; i < rows; ++i)
            if (m.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0) {
            det = 0;
            continue;
        }
        if (pivot != rank) {
            for (int j = 0; j < cols; ++j)
                std::swap(m.at(pivot, j), m.at(rank, j));
            det = -det;
        }
        det *= m.at(rank, col);
        for (int i = rank + 1; i < rows; ++i) {
            if (m.at(i, col) == 0)
                continue;
            Rat f = m.at(i, col) / m.at(rank, col);
            for (int j = col; j < cols; ++j)
                m.at(i, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    if (rank < std::min(rows, cols))
        det = 0;
    return {rank, det};
}

} // namespace

int QMatrix::rank() const
{
    return eliminate(*this).first;
}

Rat QMatrix::det() const
{
    if (rows_ != cols_)
        throw ComputeError("determinant of non-square matrix");
    return eliminate(*this).second;
}

QMatrix QMatrix::inverse() const
{
    if (rows_ != cols_)
        throw ComputeError("inverse of non-square matrix");
    const int n = rows_;
    QMatrix aug(n, 2 * n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j)
            aug.at(i, j) = at(i, j);
        aug.at(i, n + i) = 1;
    }
    for (int col = 0; col < n; ++col) {
        int pivot = -1;
        for (int i = col; i < n; ++i)
            if (aug.at(i, col) != 0) {
                pivot = i;
                break;
            }
        if (pivot < 0)
            throw ComputeError("singular matrix");
        if (pivot != col)
            for (int j = 0; j < 2 * n; ++j)
                std::swap(aug.at(pivot, j), aug.at(col, j));
        Rat p = aug.at(col, col);
        for (int j = 0; j < 2 * n; ++j)
            aug.at(col, j) /= p;
        for (int i = 0; i < n; ++i) {
            if (i == col || aug.at(i, col) == 0)
                continue;
            Rat f = aug.at(i, col);
            for (int j = 0; j < 2 * n; ++j)
                aug.at(i, j) -= f * aug.at(col, j);
        }
    }
    QMatrix inv(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            inv.at(i, j) = aug.at(i, n + j);
    return inv;
}

std::vector<Rat> QMatrix::solve(const std::vector<Rat>& b) const
{
    if (rows_ != cols_ || static_cast<int>(b.size()) != rows_)
        throw ComputeError("solve: dimension mismatch");
    QMatrix inv = inverse();
    std::vector<Rat> x(static_cast<size_t>(rows_));
    for (int i = 0; i < rows_; ++i)
        for (int j = 0; j < rows_; ++j)
            x[static_cast<size_t>(i)] += inv.at(i, j) * b[static_cast<size_t>(j)];
    return x;
}

} // namespace k3taut
