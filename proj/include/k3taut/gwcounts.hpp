#ifndef K3TAUT_GWCOUNTS_HPP
#define K3TAUT_GWCOUNTS_HPP

#include "k3taut/lattice.hpp"
#include "k3taut/numeric.hpp"

namespace k3taut {

/* The invariants depend on a curve class only through its square and
 * divisibility. */
struct CurveClassData {
    Int norm; /* <L,L>, even */
    Int div;  /* m(L) >= 1 */

    CurveClassData(Int n, Int d);

    bool admissible() const { return norm >= -2 * div * div; }

    static CurveClassData of(const BilinearLattice& lat, const Vec& l);
};

/* Reduced genus 0 count with the multiple cover sum
 * N0(L) = sum_{r | m(L)} r^{-3} N0(<L,L>/(2 r^2)); positive for every
 * admissible class (Yau-Zaslow). */
Rat n0_class(const CurveClassData& c);

/* Reduced genus 1 count N1(L) = sum_{r | m(L)} r N1(<L,L>/(2 r^2));
 * positive exactly when the square is nonnegative. */
Rat n1_class(const CurveClassData& c);

/* Genus 2 lambda_2-integral: N2 = N1/10 + <L,L>^2/960 * N0. */
Rat n2_class(const CurveClassData& c);

Rat n0_of(const PolarizedLattice& pl, const Vec& l);
Rat n1_of(const PolarizedLattice& pl, const Vec& l);

} // namespace k3taut

#endif
