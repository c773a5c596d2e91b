#ifndef K3TAUT_NUMERIC_HPP
#define K3TAUT_NUMERIC_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace k3taut {

using Int = long long;
using BigInt = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

/* Input that fails structural validation (CLI exit code 2). */
struct ValidationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Valid input on which the requested computation is undefined or an
 * internal check failed (CLI exit code 1). */
struct ComputeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/* Admissibility in the boundary case <H,L> = 0 cannot be decided from
 * lattice data alone; the caller must supply an effectivity hint. */
struct EffectivityUndecidable : ComputeError {
    using ComputeError::ComputeError;
};

inline std::string rat_to_string(const Rat& r)
{
    std::string s = numerator(r).str();
    if (denominator(r) != 1)
        s += "/" + denominator(r).str();
    return s;
}

Rat rat_from_string(const std::string& s);

/* floor(sqrt(x)) for x >= 0. */
BigInt isqrt_floor(const BigInt& x);

/* smallest integer b with b*b >= x, for x >= 0. */
BigInt isqrt_ceil(const BigInt& x);

/* ceil of a nonnegative rational. */
BigInt rat_ceil(const Rat& r);

/* Dense exact matrices, used for the small linear systems of the
 * reduction algorithm and for quadratic-form bookkeeping. */
class QMatrix {
public:
    QMatrix() : rows_(0), cols_(0) {}
    QMatrix(int rows, int cols) : rows_(rows), cols_(cols), a_(static_cast<size_t>(rows) * cols) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    Rat& at(int i, int j) { return a_[static_cast<size_t>(i) * cols_ + j]; }
    const Rat& at(int i, int j) const { return a_[static_cast<size_t>(i) * cols_ + j]; }

    static QMatrix identity(int n);

    QMatrix transposed() const;
    QMatrix operator*(const QMatrix& o) const;

    int rank() const;
    Rat det() const;

    /* Inverse of a square nonsingular matrix; throws ComputeError if singular. */
    QMatrix inverse() const;

    /* Solve A x = b; A must be square nonsingular. */
    std::vector<Rat> solve(const std::vector<Rat>& b) const;

private:
    int rows_, cols_;
    std::vector<Rat> a_;
};

} // namespace k3taut

#endif
