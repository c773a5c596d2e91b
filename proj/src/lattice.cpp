#include "k3taut/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace k3taut {

bool is_zero(const Vec& v)
{
    return std::all_of(v.begin(), v.end(), [](Int c) { return c == 0; });
}

Vec vec_add(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw ValidationError("vector dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] + b[i];
    return r;
}

Vec vec_sub(const Vec& a, const Vec& b)
{
    if (a.size() != b.size())
        throw ValidationError("vector dimension mismatch");
    Vec r(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        r[i] = a[i] - b[i];
    return r;
}

Vec vec_scale(Int k, const Vec& v)
{
    Vec r(v.size());
    for (size_t i = 0; i < v.size(); ++i)
        r[i] = k * v[i];
    return r;
}

std::string vec_to_string(const Vec& v)
{
    std::string s = "[";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i)
            s += ",";
        s += std::to_string(v[i]);
    }
    return s + "]";
}

BilinearLattice::BilinearLattice(std::vector<std::vector<Int>> rows)
{
    rank_ = static_cast<int>(rows.size());
    if (rank_ <= 0)
        throw ValidationError("lattice rank must be positive");
    gram_.resize(static_cast<size_t>(rank_) * rank_);
    for (int i = 0; i < rank_; ++i) {
        if (static_cast<int>(rows[static_cast<size_t>(i)].size()) != rank_)
            throw ValidationError("gram matrix is not square");
        for (int j = 0; j < rank_; ++j)
            gram_[static_cast<size_t>(i) * rank_ + j] = rows[static_cast<size_t>(i)][static_cast<size_t>(j)];
    }
    for (int i = 0; i < rank_; ++i) {
        if (gram(i, i) % 2 != 0)
            throw ValidationError("gram diagonal must be even");
        for (int j = 0; j < i; ++j)
            if (gram(i, j) != gram(j, i))
                throw ValidationError("gram matrix must be symmetric");
    }
    compute_inertia();
}

Int BilinearLattice::pairing(const Vec& v, const Vec& w) const
{
    if (static_cast<int>(v.size()) != rank_ || static_cast<int>(w.size()) != rank_)
        throw ValidationError("vector length does not match lattice rank");
    Int s = 0;
    for (int i = 0; i < rank_; ++i) {
        if (v[static_cast<size_t>(i)] == 0)
            continue;
        Int row = 0;
        for (int j = 0; j < rank_; ++j)
            row += gram(i, j) * w[static_cast<size_t>(j)];
        s += v[static_cast<size_t>(i)] * row;
    }
    return s;
}

std::pair<int, int> BilinearLattice::signature() const
{
    if (inertia_zero_ > 0)
        throw ComputeError("degenerate bilinear form");
    return {inertia_pos_, inertia_neg_};
}

void BilinearLattice::compute_inertia()
{
    /* Inertia by symmetric congruence reduction over Q. */
    const int n = rank_;
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = gram(i, j);
    int pos = 0, neg = 0, zero = 0;
    std::vector<bool> done(static_cast<size_t>(n), false);
    for (int step = 0; step < n; ++step) {
        int p = -1;
        for (int i = 0; i < n; ++i)
            if (!done[static_cast<size_t>(i)] && m.at(i, i) != 0) {
                p = i;
                break;
            }
        if (p < 0) {
            /* No nonzero diagonal left; look for an off-diagonal entry and
             * symmetrize it onto the diagonal. */
            int a = -1, b = -1;
            for (int i = 0; i < n && a < 0; ++i)
                for (int j = 0; j < n; ++j)
                    if (!done[static_cast<size_t>(i)] && !done[static_cast<size_t>(j)] && i != j && m.at(i, j) != 0) {
                        a = i;
                        b = j;
                        break;
                    }
            if (a < 0) {
                for (int i = 0; i < n; ++i)
                    if (!done[static_cast<size_t>(i)])
                        ++zero;
                break;
            }
            for (int j = 0; j < n; ++j)
                m.at(a, j) += m.at(b, j);
            for (int i = 0; i < n; ++i)
                m.at(i, a) += m.at(i, b);
            p = a;
        }
        Rat piv = m.at(p, p);
        if (piv > 0)
            ++pos;
        else
            ++neg;
        for (int i = 0; i < n; ++i) {
            if (i == p || done[static_cast<size_t>(i)] || m.at(i, p) == 0)
                continue;
            Rat f = m.at(i, p) / piv;
            for (int j = 0; j < n; ++j)
                m.at(i, j) -= f * m.at(p, j);
            for (int j = 0; j < n; ++j)
                m.at(j, i) -= f * m.at(j, p);
        }
        done[static_cast<size_t>(p)] = true;
    }
    inertia_pos_ = pos;
    inertia_neg_ = neg;
    inertia_zero_ = zero;
}

BigInt BilinearLattice::det() const
{
    const int n = rank_;
    QMatrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            m.at(i, j) = gram(i, j);
    Rat d = m.det();
    return numerator(d);
}

BigInt BilinearLattice::discriminant() const
{
    signature(); /* rejects degenerate forms */
    BigInt d = det();
    if (rank_ % 2 == 0)
        d = -d;
    if (d <= 0)
        throw ComputeError("discriminant is not positive; signature is not (1, r-1)");
    return d;
}

BilinearLattice BilinearLattice::rank_one(Int two_ell)
{
    return BilinearLattice(std::vector<std::vector<Int>>{{two_ell}});
}

BilinearLattice BilinearLattice::hyperbolic_u()
{
    return BilinearLattice({{0, 1}, {1, 0}});
}

BilinearLattice BilinearLattice::e8_minus()
{
    /* Negative Cartan matrix of E8. */
    return BilinearLattice({
        {-2, 0, 1, 0, 0, 0, 0, 0},
        {0, -2, 0, 1, 0, 0, 0, 0},
        {1, 0, -2, 1, 0, 0, 0, 0},
        {0, 1, 1, -2, 1, 0, 0, 0},
        {0, 0, 0, 1, -2, 1, 0, 0},
        {0, 0, 0, 0, 1, -2, 1, 0},
        {0, 0, 0, 0, 0, 1, -2, 1},
        {0, 0, 0, 0, 0, 0, 1, -2},
    });
}

Int divisibility(const Vec& v)
{
    if (is_zero(v))
        throw ValidationError("undefined divisibility of the zero vector");
    Int g = 0;
    for (Int c : v)
        g = std::gcd(g, c < 0 ? -c : c);
    return g;
}

/* ------------------------------------------------------------------ */
/* Hermite normal form and integral kernels.                           */

std::vector<std::vector<BigInt>> hnf_rows(std::vector<std::vector<BigInt>> m)
{
    if (m.empty())
        return m;
    const size_t cols = m[0].size();
    size_t row = 0;
    for (size_t col = 0; col < cols && row < m.size(); ++col) {
        /* Euclidean reduction within the column below `row`. */
        while (true) {
            size_t best = m.size();
            for (size_t i = row; i < m.size(); ++i)
                if (m[i][col] != 0 && (best == m.size() || abs(m[i][col]) < abs(m[best][col])))
                    best = i;
            if (best == m.size())
                break;
            std::swap(m[row], m[best]);
            bool cleared = true;
            for (size_t i = row + 1; i < m.size(); ++i) {
                if (m[i][col] == 0)
                    continue;
                BigInt q = m[i][col] / m[row][col];
                for (size_t j = 0; j < cols; ++j)
                    m[i][j] -= q * m[row][j];
                if (m[i][col] != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (m[row][col] == 0)
            continue;
        if (m[row][col] < 0)
            for (size_t j = 0; j < cols; ++j)
                m[row][j] = -m[row][j];
        for (size_t i = 0; i < row; ++i) {
            BigInt q = m[i][col] / m[row][col];
            if (m[i][col] < 0 && m[i][col] % m[row][col] != 0)
                --q; /* floor division */
            if (q != 0)
                for (size_t j = 0; j < cols; ++j)
                    m[i][j] -= q * m[row][j];
        }
        ++row;
    }
    m.resize(row);
    return m;
}

std::vector<std::vector<BigInt>> integral_kernel(const std::vector<std::vector<BigInt>>& m)
{
    /* Kernel of x |-> m x on column vectors.  Row-reduce the transpose
     * with a unimodular transform; rows of the transform matching zero
     * rows of the HNF span the kernel. */
    if (m.empty())
        throw ComputeError("integral_kernel of empty matrix");
    const size_t rows = m.size();
    const size_t cols = m[0].size();
    /* a = m^T augmented with identity. */
    std::vector<std::vector<BigInt>> a(cols, std::vector<BigInt>(rows + cols));
    for (size_t i = 0; i < cols; ++i) {
        for (size_t j = 0; j < rows; ++j)
            a[i][j] = m[j][i];
        a[i][rows + i] = 1;
    }
    size_t row = 0;
    for (size_t col = 0; col < rows && row < cols; ++col) {
        while (true) {
            size_t best = cols;
            for (size_t i = row; i < cols; ++i)
                if (a[i][col] != 0 && (best == cols || abs(a[i][col]) < abs(a[best][col])))
                    best = i;
            if (best == cols)
                break;
            std::swap(a[row], a[best]);
            bool cleared = true;
            for (size_t i = row + 1; i < cols; ++i) {
                if (a[i][col] == 0)
                    continue;
                BigInt q = a[i][col] / a[row][col];
                for (size_t j = 0; j < rows + cols; ++j)
                    a[i][j] -= q * a[row][j];
                if (a[i][col] != 0)
                    cleared = false;
            }
            if (cleared)
                break;
        }
        if (a[row][col] != 0)
            ++row;
    }
    std::vector<std::vector<BigInt>> kernel;
    for (size_t i = row; i < cols; ++i)
        kernel.emplace_back(a[i].begin() + static_cast<long>(rows), a[i].end());
    return hnf_rows(kernel);
}

std::vector<Vec> saturate(const BilinearLattice& lat, const std::vector<Vec>& gens)
{
    if (gens.empty())
        throw ValidationError("saturate requires at least one generator");
    const size_t r = static_cast<size_t>(lat.rank());
    std::vector<std::vector<BigInt>> b;
    for (const Vec& g : gens) {
        if (g.size() != r)
            throw ValidationError("generator length does not match lattice rank");
        if (is_zero(g))
            continue;
        b.emplace_back(g.begin(), g.end());
    }
    if (b.empty())
        return {};
    /* orth = { z : B z = 0 }; saturation = { x : z . x = 0 for all z }. */
    std::vector<std::vector<BigInt>> orth = integral_kernel(b);
    std::vector<std::vector<BigInt>> basis;
    if (orth.empty()) {
        /* Generators span the whole ambient space over Q. */
        basis.assign(r, std::vector<BigInt>(r));
        for (size_t i = 0; i < r; ++i)
            basis[i][i] = 1;
    } else {
        basis = integral_kernel(orth);
    }
    std::vector<Vec> out;
    for (const auto& row : basis) {
        Vec v(r);
        for (size_t j = 0; j < r; ++j)
            v[j] = static_cast<Int>(row[j]);
        out.push_back(std::move(v));
    }
    return out;
}

/* ------------------------------------------------------------------ */

PolarizedLattice::PolarizedLattice(BilinearLattice lattice, Vec h)
    : lat_(std::move(lattice)), h_(std::move(h))
{
    if (static_cast<int>(h_.size()) != lat_.rank())
        throw ValidationError("quasi-polarization length does not match rank");
    if (is_zero(h_))
        throw ValidationError("quasi-polarization must be nonzero");
    if (divisibility(h_) != 1)
        throw ValidationError("quasi-polarization must be primitive");
    two_ell_ = lat_.norm(h_);
    if (two_ell_ <= 0)
        throw ValidationError("quasi-polarization must have positive square");
    auto sig = lat_.signature();
    if (sig.first != 1 || sig.second != lat_.rank() - 1)
        throw ValidationError("lattice signature must be (1, r-1)");
}

BigInt PolarizedLattice::hodge_form(const Vec& l) const
{
    BigInt n = norm(l), hl = h_pairing(l);
    return BigInt(two_ell_) * n - hl * hl;
}

PolarizedLattice PolarizedLattice::degree(Int two_ell)
{
    return PolarizedLattice(BilinearLattice::rank_one(two_ell), Vec{1});
}

bool is_admissible(const PolarizedLattice& pl, const Vec& l, std::optional<bool> effective_hint)
{
    if (static_cast<int>(l.size()) != pl.rank())
        throw ValidationError("class length does not match lattice rank");
    if (is_zero(l))
        throw ValidationError("admissibility of the zero class is undefined");
    Int m = divisibility(l);
    Int n = pl.norm(l);
    Int prim_norm = n / (m * m);
    if (prim_norm < -2)
        return false;
    Int hl = pl.h_pairing(l);
    if (hl < 0)
        return false;
    if (hl > 0)
        return true;
    /* <H,L> = 0 forces the primitive square to be exactly -2 here. */
    if (prim_norm != -2)
        throw ComputeError("internal: <H,L>=0 with nonnegative square contradicts signature");
    if (!effective_hint)
        throw EffectivityUndecidable("effectivity undecidable from lattice data");
    return *effective_hint;
}

/* ------------------------------------------------------------------ */
/* Split enumeration.                                                  */

namespace {

/* Q(x) = <H,x>^2/(2l) - <x,x>: positive semidefinite with radical QH. */
Rat seminorm_q(const PolarizedLattice& pl, const Vec& x)
{
    BigInt hx = pl.h_pairing(x);
    return Rat(hx * hx, pl.two_ell()) - Rat(pl.norm(x));
}

/* Admissibility bound: a part with <H,part> = k > 0 has divisibility at
 * most k, so Q(part) <= k^2/(2l) + 2k^2. */
Rat direct_bound(const PolarizedLattice& pl, Int k)
{
    Rat k2 = Rat(BigInt(k) * k);
    return k2 / pl.two_ell() + 2 * k2;
}

/* Rational upper bound for (sqrt(a) + sqrt(b))^2. */
Rat sum_sqrt_bound(const Rat& a, const Rat& b)
{
    BigInt cross = isqrt_ceil(rat_ceil(a) * rat_ceil(b));
    return a + b + 2 * Rat(cross) + 2;
}

/* All nonzero integer vectors x with qform(x) <= bound, qform positive
 * definite.  Coordinate bounds come from the inverse Gram diagonal. */
std::vector<Vec> ellipsoid_points(const QMatrix& qform, const Rat& bound)
{
    const int r = qform.rows();
    if (bound < 0)
        return {};
    QMatrix inv = qform.inverse();
    std::vector<Int> box(static_cast<size_t>(r));
    Rat volume = 1;
    for (int i = 0; i < r; ++i) {
        Rat b2 = bound * inv.at(i, i);
        if (b2 < 0)
            throw ComputeError("split search form is not positive definite");
        box[static_cast<size_t>(i)] = static_cast<Int>(isqrt_ceil(rat_ceil(b2)));
        volume *= 2 * box[static_cast<size_t>(i)] + 1;
    }
    if (volume > 50000000)
        throw ComputeError("split enumeration box too large");
    std::vector<Vec> out;
    Vec x(static_cast<size_t>(r), 0);
    for (size_t i = 0; i < x.size(); ++i)
        x[i] = -box[i];
    while (true) {
        if (!is_zero(x)) {
            Rat q = 0;
            for (int i = 0; i < r; ++i)
                for (int j = 0; j < r; ++j)
                    if (x[static_cast<size_t>(i)] != 0 && x[static_cast<size_t>(j)] != 0)
                        q += qform.at(i, j) * x[static_cast<size_t>(i)] * x[static_cast<size_t>(j)];
            if (q <= bound)
                out.push_back(x);
        }
        int i = 0;
        for (; i < r; ++i) {
            if (x[static_cast<size_t>(i)] < box[static_cast<size_t>(i)]) {
                ++x[static_cast<size_t>(i)];
                break;
            }
            x[static_cast<size_t>(i)] = -box[static_cast<size_t>(i)];
        }
        if (i == r)
            break;
    }
    return out;
}

/* Gram of Q'(x) = Q(x) + <H,x>^2, positive definite. */
QMatrix box_form(const PolarizedLattice& pl)
{
    const int r = pl.rank();
    std::vector<BigInt> gh(static_cast<size_t>(r));
    for (int i = 0; i < r; ++i) {
        BigInt s = 0;
        for (int j = 0; j < r; ++j)
            s += BigInt(pl.lattice().gram(i, j)) * pl.h()[static_cast<size_t>(j)];
        gh[static_cast<size_t>(i)] = s;
    }
    QMatrix q(r, r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            q.at(i, j) = Rat(gh[static_cast<size_t>(i)] * gh[static_cast<size_t>(j)], pl.two_ell())
                         - Rat(pl.lattice().gram(i, j))
                         + Rat(gh[static_cast<size_t>(i)] * gh[static_cast<size_t>(j)]);
    return q;
}

enum class PartStatus { Inadmissible, Admissible, Undecided };

/* Decide a split part.  Parts orthogonal to H hit the effectivity
 * boundary; they are decidable only when proportional to a class whose
 * effectivity the caller pinned down. */
PartStatus decide_part(const PolarizedLattice& pl, const Vec& part,
                       const Vec* hinted_primitive, bool hinted_effective)
{
    if (is_zero(part))
        return PartStatus::Inadmissible;
    Int m = divisibility(part);
    Int prim_norm = pl.norm(part) / (m * m);
    if (prim_norm < -2)
        return PartStatus::Inadmissible;
    Int hp = pl.h_pairing(part);
    if (hp < 0)
        return PartStatus::Inadmissible;
    if (hp > 0)
        return PartStatus::Admissible;
    if (prim_norm != -2)
        return PartStatus::Inadmissible;
    if (hinted_primitive) {
        Vec prim(part.size());
        for (size_t i = 0; i < part.size(); ++i)
            prim[i] = part[i] / m;
        if (prim == *hinted_primitive)
            return hinted_effective ? PartStatus::Admissible : PartStatus::Inadmissible;
        Vec neg = vec_scale(-1, prim);
        if (neg == *hinted_primitive)
            /* The opposite orientation of an effective (-2)-class is
             * never effective. */
            return hinted_effective ? PartStatus::Inadmissible : PartStatus::Undecided;
    }
    return PartStatus::Undecided;
}

SplitPair make_pair_sorted(Vec a, Vec b)
{
    if (b < a)
        std::swap(a, b);
    return SplitPair{std::move(a), std::move(b)};
}

/* Roots of the H-orthogonal complement: norm -2, <H,.> = 0. */
std::vector<Vec> orthogonal_roots(const PolarizedLattice& pl)
{
    std::vector<Vec> roots;
    for (const Vec& x : ellipsoid_points(box_form(pl), Rat(2)))
        if (pl.h_pairing(x) == 0 && pl.norm(x) == -2)
            roots.push_back(x);
    return roots;
}

/* Decompositions of a target orthogonal to H into two parts of the shape
 * m_i * root.  Opposite-orientation root pairs can never both be
 * effective and are skipped outright. */
void orthogonal_target_pairs(const PolarizedLattice& pl, const Vec& target,
                             const Vec* hinted_primitive, bool hinted_effective,
                             std::set<std::pair<Vec, Vec>>& seen, SplitEnumeration& out)
{
    std::vector<Vec> roots = orthogonal_roots(pl);
    const int r = pl.rank();
    for (size_t i = 0; i < roots.size(); ++i) {
        for (size_t j = i; j < roots.size(); ++j) {
            const Vec& r1 = roots[i];
            const Vec& r2 = roots[j];
            std::vector<std::pair<Int, Int>> solutions;
            if (r1 == r2) {
                /* target = (m1 + m2) r1 */
                Vec prim = r1;
                bool prop = true;
                Int k = 0;
                for (int c = 0; c < r && prop; ++c) {
                    Int tc = target[static_cast<size_t>(c)], pc = prim[static_cast<size_t>(c)];
                    if (pc == 0) {
                        prop = tc == 0;
                    } else if (tc % pc != 0) {
                        prop = false;
                    } else if (k == 0) {
                        k = tc / pc;
                    } else {
                        prop = tc == k * pc;
                    }
                }
                if (!prop || k < 2)
                    continue;
                for (Int a = 1; 2 * a <= k; ++a)
                    solutions.emplace_back(a, k - a);
            } else if (r2 == vec_scale(-1, r1)) {
                continue;
            } else {
                /* Solve m1 r1 + m2 r2 = target over Q. */
                int c1 = -1, c2 = -1;
                for (int a = 0; a < r && c2 < 0; ++a)
                    for (int b = a + 1; b < r; ++b) {
                        BigInt d = BigInt(r1[static_cast<size_t>(a)]) * r2[static_cast<size_t>(b)]
                                   - BigInt(r1[static_cast<size_t>(b)]) * r2[static_cast<size_t>(a)];
                        if (d != 0) {
                            c1 = a;
                            c2 = b;
                            break;
                        }
                    }
                if (c2 < 0)
                    continue; /* proportional but not equal/opposite: impossible for roots */
                Rat det = Rat(BigInt(r1[static_cast<size_t>(c1)]) * r2[static_cast<size_t>(c2)]
                              - BigInt(r1[static_cast<size_t>(c2)]) * r2[static_cast<size_t>(c1)]);
                Rat m1 = (Rat(target[static_cast<size_t>(c1)]) * r2[static_cast<size_t>(c2)]
                          - Rat(target[static_cast<size_t>(c2)]) * r2[static_cast<size_t>(c1)])
                         / det;
                Rat m2 = (Rat(r1[static_cast<size_t>(c1)]) * target[static_cast<size_t>(c2)]
                          - Rat(r1[static_cast<size_t>(c2)]) * target[static_cast<size_t>(c1)])
                         / det;
                if (denominator(m1) != 1 || denominator(m2) != 1 || m1 < 1 || m2 < 1)
                    continue;
                Int im1 = static_cast<Int>(numerator(m1));
                Int im2 = static_cast<Int>(numerator(m2));
                if (vec_add(vec_scale(im1, r1), vec_scale(im2, r2)) != target)
                    continue;
                solutions.emplace_back(im1, im2);
            }
            for (auto [m1, m2] : solutions) {
                Vec p1 = vec_scale(m1, r1);
                Vec p2 = vec_scale(m2, r2);
                SplitPair sp = make_pair_sorted(p1, p2);
                if (!seen.insert({sp.l1, sp.l2}).second)
                    continue;
                PartStatus s1 = decide_part(pl, sp.l1, hinted_primitive, hinted_effective);
                PartStatus s2 = decide_part(pl, sp.l2, hinted_primitive, hinted_effective);
                if (s1 == PartStatus::Inadmissible || s2 == PartStatus::Inadmissible)
                    continue;
                if (s1 == PartStatus::Admissible && s2 == PartStatus::Admissible)
                    out.pairs.push_back(sp);
                else
                    out.undecidable.push_back(sp);
            }
        }
    }
}

/* Core two-part enumeration; `target` itself need not be admissible. */
SplitEnumeration enumerate_pairs_of(const PolarizedLattice& pl, const Vec& target,
                                    const Vec* hinted_primitive, bool hinted_effective)
{
    SplitEnumeration out;
    std::set<std::pair<Vec, Vec>> seen;
    Int h = pl.h_pairing(target);
    if (h < 0)
        return out;
    if (h == 0) {
        orthogonal_target_pairs(pl, target, hinted_primitive, hinted_effective, seen, out);
        return out;
    }
    Rat qt = seminorm_q(pl, target);
    Rat dmax = direct_bound(pl, h);
    Rat triangle = sum_sqrt_bound(qt, dmax);
    Rat cmax = 0;
    std::vector<Rat> bound_for(static_cast<size_t>(h) + 1);
    for (Int h1 = 0; h1 <= h; ++h1) {
        Rat b = h1 > 0 ? direct_bound(pl, h1) : triangle;
        bound_for[static_cast<size_t>(h1)] = b;
        Rat c = b + Rat(BigInt(h1) * h1);
        if (c > cmax)
            cmax = c;
    }
    for (const Vec& x : ellipsoid_points(box_form(pl), cmax)) {
        Int h1 = pl.h_pairing(x);
        if (h1 < 0 || h1 > h)
            continue;
        if (seminorm_q(pl, x) > bound_for[static_cast<size_t>(h1)])
            continue;
        Vec y = vec_sub(target, x);
        if (is_zero(y))
            continue;
        SplitPair sp = make_pair_sorted(x, y);
        if (seen.count({sp.l1, sp.l2}))
            continue;
        PartStatus s1 = decide_part(pl, sp.l1, hinted_primitive, hinted_effective);
        if (s1 == PartStatus::Inadmissible)
            continue;
        PartStatus s2 = decide_part(pl, sp.l2, hinted_primitive, hinted_effective);
        if (s2 == PartStatus::Inadmissible)
            continue;
        seen.insert({sp.l1, sp.l2});
        if (s1 == PartStatus::Admissible && s2 == PartStatus::Admissible)
            out.pairs.push_back(sp);
        else
            out.undecidable.push_back(sp);
    }
    std::sort(out.pairs.begin(), out.pairs.end(),
              [](const SplitPair& a, const SplitPair& b) { return std::tie(a.l1, a.l2) < std::tie(b.l1, b.l2); });
    std::sort(out.undecidable.begin(), out.undecidable.end(),
              [](const SplitPair& a, const SplitPair& b) { return std::tie(a.l1, a.l2) < std::tie(b.l1, b.l2); });
    return out;
}

} // namespace

SplitEnumeration enumerate_admissible_splits(const PolarizedLattice& pl, const Vec& l,
                                             std::optional<bool> effective_hint)
{
    if (!is_admissible(pl, l, effective_hint))
        throw ValidationError("split enumeration requires an admissible class");
    Vec prim;
    const Vec* hinted = nullptr;
    bool hinted_effective = false;
    if (pl.h_pairing(l) == 0) {
        Int m = divisibility(l);
        prim.resize(l.size());
        for (size_t i = 0; i < l.size(); ++i)
            prim[i] = l[i] / m;
        hinted = &prim;
        hinted_effective = effective_hint.value_or(false);
    }
    return enumerate_pairs_of(pl, l, hinted, hinted_effective);
}

std::pair<std::vector<SplitTriple>, int>
enumerate_admissible_triple_splits(const PolarizedLattice& pl, const Vec& l,
                                   std::optional<bool> effective_hint)
{
    if (!is_admissible(pl, l, effective_hint))
        throw ValidationError("split enumeration requires an admissible class");
    std::vector<SplitTriple> out;
    int skipped = 0;
    std::set<std::vector<Vec>> seen;
    Int h = pl.h_pairing(l);

    Vec prim;
    const Vec* hinted = nullptr;
    bool hinted_effective = false;
    if (h == 0) {
        Int m = divisibility(l);
        prim.resize(l.size());
        for (size_t i = 0; i < l.size(); ++i)
            prim[i] = l[i] / m;
        hinted = &prim;
        hinted_effective = effective_hint.value_or(false);
    }

    /* Candidate first parts: same box as the pair search but with the
     * triangle bound relaxed to allow two remaining admissible parts. */
    std::vector<Vec> candidates;
    if (h == 0) {
        Int m = divisibility(l);
        for (Int a = 1; a <= m - 2; ++a)
            candidates.push_back(vec_scale(a, prim));
        /* Mixed root decompositions of an orthogonal class are made of
         * undecidable parts; count rather than enumerate them. */
        if (!orthogonal_roots(pl).empty() && pl.rank() > 1)
            ++skipped;
    } else {
        Rat qt = seminorm_q(pl, l);
        Rat dmax = direct_bound(pl, h);
        Rat reach = sum_sqrt_bound(qt, sum_sqrt_bound(dmax, dmax));
        Rat cmax = 0;
        std::vector<Rat> bound_for(static_cast<size_t>(h) + 1);
        for (Int h1 = 0; h1 <= h; ++h1) {
            Rat b = h1 > 0 ? direct_bound(pl, h1) : reach;
            bound_for[static_cast<size_t>(h1)] = b;
            Rat c = b + Rat(BigInt(h1) * h1);
            if (c > cmax)
                cmax = c;
        }
        for (const Vec& x : ellipsoid_points(box_form(pl), cmax)) {
            Int h1 = pl.h_pairing(x);
            if (h1 < 0 || h1 > h)
                continue;
            if (seminorm_q(pl, x) > bound_for[static_cast<size_t>(h1)])
                continue;
            candidates.push_back(x);
        }
    }

    for (const Vec& l1 : candidates) {
        PartStatus s1 = decide_part(pl, l1, hinted, hinted_effective);
        if (s1 == PartStatus::Inadmissible)
            continue;
        Vec rest = vec_sub(l, l1);
        if (is_zero(rest))
            continue;
        SplitEnumeration sub = enumerate_pairs_of(pl, rest, hinted, hinted_effective);
        skipped += static_cast<int>(sub.undecidable.size());
        if (s1 == PartStatus::Undecided) {
            skipped += static_cast<int>(sub.pairs.size());
            continue;
        }
        for (const SplitPair& sp : sub.pairs) {
            for (int flip = 0; flip < 2; ++flip) {
                Vec l2 = flip ? sp.l2 : sp.l1;
                Vec l3 = flip ? sp.l1 : sp.l2;
                if (flip && sp.l1 == sp.l2)
                    continue;
                std::vector<Vec> key{l1, l2, l3};
                if (seen.insert(key).second)
                    out.push_back(SplitTriple{l1, l2, l3});
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const SplitTriple& a, const SplitTriple& b) {
        return std::tie(a.l1, a.l2, a.l3) < std::tie(b.l1, b.l2, b.l3);
    });
    return {out, skipped};
}

} // namespace k3taut
