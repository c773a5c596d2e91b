#ifndef K3TAUT_QSERIES_HPP
#define K3TAUT_QSERIES_HPP

#include "k3taut/numeric.hpp"

#include <vector>

namespace k3taut {

/* Truncated Laurent series in q with exact rational coefficients.
 * Coefficients are stored for exponents lead..order and are zero below
 * lead; reading past the truncation order is a hard error. */
class RationalQSeries {
public:
    RationalQSeries(int lead, int order, std::vector<Rat> coeffs);

    static RationalQSeries zero(int order);
    static RationalQSeries one(int order);
    static RationalQSeries monomial(const Rat& c, int exponent, int order);

    int lead() const { return lead_; }
    int order() const { return order_; }

    /* Exact coefficient of q^e; 0 below the lead, error above order. */
    Rat coefficient(int e) const;

    RationalQSeries operator+(const RationalQSeries& o) const;
    RationalQSeries operator-(const RationalQSeries& o) const;
    RationalQSeries operator*(const RationalQSeries& o) const;
    RationalQSeries scaled(const Rat& c) const;
    RationalQSeries shifted(int k) const;

    /* Multiplicative inverse; the leading coefficient must be nonzero. */
    RationalQSeries inverse() const;

    RationalQSeries pow(int k) const;

    bool operator==(const RationalQSeries& o) const;

private:
    void trim();
    int lead_;
    int order_;
    std::vector<Rat> c_; /* c_[i] = coefficient of q^(lead_ + i) */
};

/* prod_{n>=1} (1 - q^n), truncated (pentagonal number expansion). */
RationalQSeries euler_product(int order);

/* prod_{n>=1} (1 - q^n)^{-k}, truncated. */
RationalQSeries eta_inverse_power(int k, int order);

/* Genus 0 counts: 1 / (q prod (1-q^n)^24), lead -1. */
RationalQSeries n0_series(int order);

/* Genus 1 counts: (sum_k sigma_1(k) k q^k) / (q prod (1-q^n)^24), lead 0. */
RationalQSeries n1_series(int order);

} // namespace k3taut

#endif
