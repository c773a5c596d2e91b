#ifndef K3TAUT_CALCULUS_HPP
#define K3TAUT_CALCULUS_HPP

#include "k3taut/lattice.hpp"
#include "k3taut/numeric.hpp"
#include "k3taut/symbols.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace k3taut {

/* Divisors and c2(T_pi)-powers attach to blocks of the factor partition,
 * never to individual indices inside a block; this builds the transfer
 * rule Delta_(ij) L_(i) = Delta_(ij) L_(j) into the representation. */
struct BlockData {
    std::vector<Vec> divisors; /* sorted */
    int c2 = 0;

    bool trivial() const { return divisors.empty() && c2 == 0; }
    bool operator==(const BlockData& o) const { return divisors == o.divisors && c2 == o.c2; }
    bool operator<(const BlockData& o) const
    {
        if (divisors != o.divisors)
            return divisors < o.divisors;
        return c2 < o.c2;
    }
};

struct Block {
    std::vector<int> indices; /* sorted, 1-based */
    BlockData data;

    bool operator==(const Block& o) const { return indices == o.indices && data == o.data; }
    bool operator<(const Block& o) const
    {
        if (indices != o.indices)
            return indices < o.indices;
        return data < o.data;
    }
};

/* Canonical monomial shape on n factors: a set partition (blocks of size
 * one with no data are implicit) with per-block divisor multisets and
 * c2-powers.  A block of size k >= 2 stands for the relative diagonal
 * Delta_B of codimension 2(k-1). */
class Monomial {
public:
    Monomial() : n_(0) {}
    explicit Monomial(int n) : n_(n) {}
    Monomial(int n, std::vector<Block> blocks);

    int n() const { return n_; }
    const std::vector<Block>& blocks() const { return blocks_; }
    bool trivial_shape() const { return blocks_.empty(); }

    int codim() const;
    std::string to_string() const;

    /* convenience builders */
    static Monomial divisor(int n, int factor, const Vec& v);
    static Monomial diagonal(int n, std::vector<int> indices);

    bool operator==(const Monomial& o) const { return n_ == o.n_ && blocks_ == o.blocks_; }
    bool operator<(const Monomial& o) const
    {
        if (n_ != o.n_)
            return n_ < o.n_;
        return blocks_ < o.blocks_;
    }

private:
    int n_;
    std::vector<Block> blocks_;
};

struct TermKey {
    Monomial shape;
    SymbolProduct symbols;

    bool operator==(const TermKey& o) const { return shape == o.shape && symbols == o.symbols; }
};

struct TermKeyLess {
    bool operator()(const TermKey& a, const TermKey& b) const
    {
        if (!(a.shape == b.shape))
            return a.shape < b.shape;
        return symbol_product_less(a.symbols, b.symbols);
    }
};

struct CodimResult {
    enum Kind { Pure, Mixed, Any } kind;
    int value; /* meaningful for Pure */
};

class TautExpression {
public:
    explicit TautExpression(int n = 0) : n_(n) {}

    int n() const { return n_; }
    bool empty() const { return terms_.empty(); }
    size_t term_count() const { return terms_.size(); }
    const std::map<TermKey, Rat, TermKeyLess>& terms() const { return terms_; }

    void add_term(const Monomial& shape, const SymbolProduct& symbols, const Rat& coeff);
    void add(const TautExpression& o);
    TautExpression operator+(const TautExpression& o) const;
    TautExpression operator-(const TautExpression& o) const;
    TautExpression scaled(const Rat& c) const;

    /* Coefficient of an exact (shape, symbols) key; 0 if absent. */
    Rat coefficient(const Monomial& shape, const SymbolProduct& symbols) const;

    CodimResult codim() const;

    bool operator==(const TautExpression& o) const { return n_ == o.n_ && terms_ == o.terms_; }

    std::string to_string() const;

private:
    int n_;
    std::map<TermKey, Rat, TermKeyLess> terms_;
};

/* Either a rational scalar or scalar * symbol. */
struct KappaValue {
    Rat scalar;
    std::optional<BaseSymbol> symbol;
};

/* The intersection calculus on fiber powers of the universal surface,
 * parameterized by the polarized lattice. */
class Calculus {
public:
    explicit Calculus(PolarizedLattice pl) : pl_(std::move(pl)) {}

    const PolarizedLattice& pl() const { return pl_; }

    /* pi_*(prod divisors . c2^b) on one fiber factor: 0 in negative
     * codimension, a scalar in codimension 0 (24 for c2, the pairing for
     * two divisors), a kappa symbol otherwise. */
    KappaValue kappa_evaluate(const std::vector<Vec>& divisors, int c2) const;

    /* Chow product: partitions join and each merged block picks up
     * excess powers of c2(T_pi) from diagonal self-overlap. */
    TautExpression multiply(const TautExpression& a, const TautExpression& b) const;
    TautExpression insert(const TautExpression& e, const Monomial& m) const;

    /* Push along the projection dropping factor j (codim drops by 2). */
    TautExpression push_drop_factor(const TautExpression& e, int j) const;

    /* Push to the moduli base; equals iterated push_drop_factor. */
    TautExpression push_to_base(const TautExpression& e) const;

    /* Relabel factors by a permutation (perm[old-1] = new, 1-based). */
    TautExpression permute_factors(const TautExpression& e, const std::vector<int>& perm) const;

    TautExpression from_monomial(int n, const Monomial& m, const Rat& coeff = 1,
                                 const SymbolProduct& symbols = {}) const;

private:
    PolarizedLattice pl_;
};

} // namespace k3taut

#endif
