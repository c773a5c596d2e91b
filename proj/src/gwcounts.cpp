#include "k3taut/gwcounts.hpp"

#include "k3taut/qseries.hpp"

namespace k3taut {

CurveClassData::CurveClassData(Int n, Int d) : norm(n), div(d)
{
    if (d < 1)
        throw ValidationError("divisibility must be positive");
    if (n % 2 != 0)
        throw ValidationError("class square must be even");
    if (n % (d * d) != 0)
        throw ValidationError("square not divisible by the divisibility squared");
}

CurveClassData CurveClassData::of(const BilinearLattice& lat, const Vec& l)
{
    return CurveClassData(lat.norm(l), divisibility(l));
}

namespace {

/* Coefficient N_g(a) when 2 r^2 divides the norm evenly; fractional or
 * out-of-range arguments contribute 0 in the multiple cover sums. */
Rat series_value(const RationalQSeries& s, Int norm, Int r)
{
    Int q = 2 * r * r;
    if (norm % q != 0)
        return 0;
    Int arg = norm / q;
    if (arg < s.lead())
        return 0;
    return s.coefficient(static_cast<int>(arg));
}

} // namespace

Rat n0_class(const CurveClassData& c)
{
    if (!c.admissible())
        throw ValidationError("n0_class requires an admissible class");
    int order = static_cast<int>(std::max<Int>(c.norm / 2, 0));
    RationalQSeries s = n0_series(order);
    Rat total = 0;
    for (Int r = 1; r <= c.div; ++r) {
        if (c.div % r != 0)
            continue;
        total += series_value(s, c.norm, r) / Rat(BigInt(r) * r * r);
    }
    return total;
}

Rat n1_class(const CurveClassData& c)
{
    if (!c.admissible())
        throw ValidationError("n1_class requires an admissible class");
    int order = static_cast<int>(std::max<Int>(c.norm / 2, 0));
    RationalQSeries s = n1_series(order);
    Rat total = 0;
    for (Int r = 1; r <= c.div; ++r) {
        if (c.div % r != 0)
            continue;
        total += Rat(r) * series_value(s, c.norm, r);
    }
    return total;
}

Rat n2_class(const CurveClassData& c)
{
    Rat norm2 = Rat(BigInt(c.norm) * c.norm);
    return n1_class(c) / 10 + norm2 / 960 * n0_class(c);
}

Rat n0_of(const PolarizedLattice& pl, const Vec& l)
{
    return n0_class(CurveClassData::of(pl.lattice(), l));
}

Rat n1_of(const PolarizedLattice& pl, const Vec& l)
{
    return n1_class(CurveClassData::of(pl.lattice(), l));
}

} // namespace k3taut
