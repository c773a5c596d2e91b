#ifndef K3TAUT_LATTICE_HPP
#define K3TAUT_LATTICE_HPP

#include "k3taut/numeric.hpp"

#include <optional>
#include <utility>
#include <vector>

namespace k3taut {

/* Coordinates with respect to the fixed integral basis of the lattice. */
using Vec = std::vector<Int>;

bool is_zero(const Vec& v);
Vec vec_add(const Vec& a, const Vec& b);
Vec vec_sub(const Vec& a, const Vec& b);
Vec vec_scale(Int k, const Vec& v);
std::string vec_to_string(const Vec& v);

/* Even integral lattice given by its Gram matrix.  The basis is never
 * changed, so coordinates stay stable across all operations. */
class BilinearLattice {
public:
    explicit BilinearLattice(std::vector<std::vector<Int>> gram);
    BilinearLattice(std::initializer_list<std::vector<Int>> gram)
        : BilinearLattice(std::vector<std::vector<Int>>(gram))
    {
    }

    int rank() const { return rank_; }
    Int gram(int i, int j) const { return gram_[static_cast<size_t>(i) * rank_ + j]; }

    Int pairing(const Vec& v, const Vec& w) const;
    Int norm(const Vec& v) const { return pairing(v, v); }

    /* (positive, negative) inertia indices; throws on a degenerate form.
     * Computed at construction, so instances are immutable values. */
    std::pair<int, int> signature() const;

    BigInt det() const;

    /* (-1)^(rank-1) * det(gram); positive exactly for signature (1, rank-1). */
    BigInt discriminant() const;

    bool operator==(const BilinearLattice& o) const
    {
        return rank_ == o.rank_ && gram_ == o.gram_;
    }

    static BilinearLattice rank_one(Int two_ell);
    static BilinearLattice hyperbolic_u();
    static BilinearLattice e8_minus();

private:
    int rank_;
    std::vector<Int> gram_;
    int inertia_pos_ = 0, inertia_neg_ = 0, inertia_zero_ = 0;

    void compute_inertia();
};

/* gcd of the coordinates; errors on the zero vector. */
Int divisibility(const Vec& v);

/* Basis of the primitive closure (span_Q of gens) intersect Z^rank,
 * computed through integral kernels in Hermite normal form.  Zero
 * generators are ignored; idempotent. */
std::vector<Vec> saturate(const BilinearLattice& lat, const std::vector<Vec>& gens);

/* Integral row-style Hermite normal form utilities (exported for tests). */
std::vector<std::vector<BigInt>> hnf_rows(std::vector<std::vector<BigInt>> m);
std::vector<std::vector<BigInt>> integral_kernel(const std::vector<std::vector<BigInt>>& m);

class PolarizedLattice {
public:
    PolarizedLattice(BilinearLattice lattice, Vec h);

    const BilinearLattice& lattice() const { return lat_; }
    const Vec& h() const { return h_; }
    Int two_ell() const { return two_ell_; }
    int rank() const { return lat_.rank(); }

    Int pairing(const Vec& v, const Vec& w) const { return lat_.pairing(v, w); }
    Int norm(const Vec& v) const { return lat_.norm(v); }
    Int h_pairing(const Vec& v) const { return lat_.pairing(h_, v); }

    bool is_h(const Vec& v) const { return v == h_; }

    /* 2l*<L,L> - <H,L>^2, negative for admissible L not proportional to H. */
    BigInt hodge_form(const Vec& l) const;

    static PolarizedLattice degree(Int two_ell);

private:
    BilinearLattice lat_;
    Vec h_;
    Int two_ell_;
};

/* Admissibility: the primitive part has square >= -2 and <H,L> >= 0;
 * in the boundary case <H,L> = 0 (forcing square exactly -2) the result
 * is the caller-supplied effectivity hint, and its absence is an error. */
bool is_admissible(const PolarizedLattice& pl, const Vec& l,
                   std::optional<bool> effective_hint = std::nullopt);

struct SplitPair {
    Vec l1, l2; /* unordered; stored with l1 <= l2 lexicographically */
};

struct SplitEnumeration {
    std::vector<SplitPair> pairs;
    /* Candidates where one part hits the <H,.> = 0 boundary and no
     * effectivity decision is possible from lattice data. */
    std::vector<SplitPair> undecidable;
};

/* All unordered decompositions l = l1 + l2 with both parts admissible
 * inside the given lattice.  Completeness comes from a bounded box
 * search in the negative-definite complement of H. */
SplitEnumeration enumerate_admissible_splits(const PolarizedLattice& pl, const Vec& l,
                                             std::optional<bool> effective_hint = std::nullopt);

struct SplitTriple {
    Vec l1, l2, l3;
};

/* All ordered decompositions l = l1 + l2 + l3 with every part admissible
 * inside the lattice.  Triples with an undecidable part are skipped and
 * counted in the returned .second. */
std::pair<std::vector<SplitTriple>, int>
enumerate_admissible_triple_splits(const PolarizedLattice& pl, const Vec& l,
                                   std::optional<bool> effective_hint = std::nullopt);

} // namespace k3taut

#endif
