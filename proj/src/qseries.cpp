#include "k3taut/qseries.hpp"

#include <algorithm>

namespace k3taut {

RationalQSeries::RationalQSeries(int lead, int order, std::vector<Rat> coeffs)
    : lead_(lead), order_(order), c_(std::move(coeffs))
{
    if (order_ < lead_ - 1)
        throw ValidationError("series order below leading exponent");
    c_.resize(static_cast<size_t>(order_ - lead_ + 1));
    trim();
}

void RationalQSeries::trim()
{
    while (!c_.empty() && c_.front() == 0) {
        c_.erase(c_.begin());
        ++lead_;
    }
}

RationalQSeries RationalQSeries::zero(int order)
{
    return RationalQSeries(order + 1, order, {});
}

RationalQSeries RationalQSeries::one(int order)
{
    return monomial(1, 0, order);
}

RationalQSeries RationalQSeries::monomial(const Rat& c, int exponent, int order)
{
    if (c == 0 || exponent > order)
        return zero(order);
    std::vector<Rat> v(static_cast<size_t>(order - exponent + 1));
    v[0] = c;
    return RationalQSeries(exponent, order, std::move(v));
}

Rat RationalQSeries::coefficient(int e) const
{
    if (e > order_)
        throw ComputeError("insufficient order: coefficient beyond truncation");
    if (e < lead_)
        return 0;
    return c_[static_cast<size_t>(e - lead_)];
}

RationalQSeries RationalQSeries::operator+(const RationalQSeries& o) const
{
    int order = std::min(order_, o.order_);
    int lead = std::min(lead_, o.lead_);
    if (lead > order)
        return zero(order);
    std::vector<Rat> v(static_cast<size_t>(order - lead + 1));
    for (int e = lead; e <= order; ++e) {
        Rat a = e >= lead_ ? c_[static_cast<size_t>(e - lead_)] : Rat(0);
        Rat b = e >= o.lead_ ? o.c_[static_cast<size_t>(e - o.lead_)] : Rat(0);
        v[static_cast<size_t>(e - lead)] = a + b;
    }
    return RationalQSeries(lead, order, std::move(v));
}

RationalQSeries RationalQSeries::operator-(const RationalQSeries& o) const
{
    return *this + o.scaled(-1);
}

RationalQSeries RationalQSeries::operator*(const RationalQSeries& o) const
{
    if (c_.empty() || o.c_.empty()) {
        /* One factor is zero to its full order; the product order is
         * limited by how far the zero side is known. */
        int order = std::min(order_ + std::min(o.lead_, 0), o.order_ + std::min(lead_, 0));
        return zero(std::min({order_, o.order_, order}));
    }
    /* Term a_i q^(lead+i) knows the product up to its own order plus the
     * other factor's lead. */
    int order = std::min(order_ + o.lead_, o.order_ + lead_);
    int lead = lead_ + o.lead_;
    std::vector<Rat> v(static_cast<size_t>(order - lead + 1));
    for (size_t i = 0; i < c_.size(); ++i) {
        if (c_[i] == 0)
            continue;
        for (size_t j = 0; j < o.c_.size(); ++j) {
            int e = lead_ + static_cast<int>(i) + o.lead_ + static_cast<int>(j);
            if (e > order)
                break;
            if (o.c_[j] != 0)
                v[static_cast<size_t>(e - lead)] += c_[i] * o.c_[j];
        }
    }
    return RationalQSeries(lead, order, std::move(v));
}

RationalQSeries RationalQSeries::scaled(const Rat& c) const
{
    std::vector<Rat> v = c_;
    for (Rat& x : v)
        x *= c;
    return RationalQSeries(lead_, order_, std::move(v));
}

RationalQSeries RationalQSeries::shifted(int k) const
{
    return RationalQSeries(lead_ + k, order_ + k, c_);
}

RationalQSeries RationalQSeries::inverse() const
{
    if (c_.empty() || c_[0] == 0)
        throw ComputeError("series inverse requires a nonzero leading coefficient");
    /* (c0 q^d (1 + t))^{-1} with t = higher terms / c0. */
    int n = order_ - lead_;
    std::vector<Rat> inv(static_cast<size_t>(n + 1));
    inv[0] = Rat(1) / c_[0];
    for (int e = 1; e <= n; ++e) {
        Rat s = 0;
        for (int k = 1; k <= e; ++k) {
            Rat a = static_cast<size_t>(k) < c_.size() ? c_[static_cast<size_t>(k)] : Rat(0);
            if (a != 0)
                s += a * inv[static_cast<size_t>(e - k)];
        }
        inv[static_cast<size_t>(e)] = -s / c_[0];
    }
    return RationalQSeries(-lead_, n - lead_, std::move(inv));
}

RationalQSeries RationalQSeries::pow(int k) const
{
    if (k < 0)
        return inverse().pow(-k);
    RationalQSeries r = one(order_ - std::min(lead_, 0) * k);
    RationalQSeries base = *this;
    /* Small exponents only; plain square-and-multiply. */
    while (k > 0) {
        if (k & 1)
            r = r * base;
        if (k >>= 1)
            base = base * base;
    }
    return r;
}

bool RationalQSeries::operator==(const RationalQSeries& o) const
{
    int order = std::min(order_, o.order_);
    for (int e = std::min(lead_, o.lead_); e <= order; ++e)
        if (coefficient(e) != o.coefficient(e))
            return false;
    return true;
}

RationalQSeries euler_product(int order)
{
    /* Pentagonal number theorem:
     * prod (1-q^n) = sum_{k} (-1)^k q^{k(3k-1)/2}, k over all integers. */
    std::vector<Rat> v(static_cast<size_t>(order + 1));
    for (Int k = 0;; ++k) {
        Int e1 = k * (3 * k - 1) / 2;
        Int e2 = k * (3 * k + 1) / 2;
        if (e1 > order && e2 > order)
            break;
        Rat sign = (k % 2 == 0) ? 1 : -1;
        if (e1 <= order)
            v[static_cast<size_t>(e1)] += sign;
        if (k > 0 && e2 <= order)
            v[static_cast<size_t>(e2)] += sign;
    }
    return RationalQSeries(0, order, std::move(v));
}

RationalQSeries eta_inverse_power(int k, int order)
{
    if (order < 0)
        throw ValidationError("series order must be nonnegative");
    if (k == 0)
        return RationalQSeries::one(order);
    if (k < 0)
        return euler_product(order).pow(-k);
    return euler_product(order).pow(k).inverse();
}

RationalQSeries n0_series(int order)
{
    if (order < 0)
        throw ValidationError("series order must be nonnegative");
    return eta_inverse_power(24, order + 1).shifted(-1);
}

RationalQSeries n1_series(int order)
{
    if (order < 0)
        throw ValidationError("series order must be nonnegative");
    /* Numerator sum_{k>=1} sigma_1(k) k q^k. */
    std::vector<Rat> num(static_cast<size_t>(order + 2));
    for (int d = 1; d <= order + 1; ++d)
        for (int k = d; k <= order + 1; k += d)
            num[static_cast<size_t>(k)] += Rat(BigInt(d) * k);
    RationalQSeries numerator_series(0, order + 1, std::move(num));
    return (numerator_series * eta_inverse_power(24, order + 1)).shifted(-1);
}

} // namespace k3taut
