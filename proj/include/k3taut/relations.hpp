#ifndef K3TAUT_RELATIONS_HPP
#define K3TAUT_RELATIONS_HPP

#include "k3taut/calculus.hpp"
#include "k3taut/gwcounts.hpp"

#include <optional>
#include <string>
#include <vector>

namespace k3taut {

struct ExportOptions {
    enum class Mode { mod_nl, keep_lambda, full };
    Mode mode = Mode::mod_nl;
    bool include_splits_within_lambda = true;
    /* Divide by N0(L) (WDVV) or 12 N1(L) (Getzler). */
    bool normalize = false;
};

struct DroppedTerm {
    std::string kind; /* "lambda", "rank-raising", "undecidable-split" */
    std::string desc;
    TautExpression part;
};

struct RelationReport {
    TautExpression expr;
    std::vector<DroppedTerm> dropped_nl_terms;
    std::vector<SplitPair> splits;             /* within-lattice splits processed */
    std::vector<SplitPair> undecidable_splits; /* boundary candidates, reported not used */
    int triple_splits_used = 0;
    int triple_splits_skipped = 0;
};

/* Monomial from divisor placements and pairwise-disjoint diagonals;
 * divisors land on the block containing their factor. */
Monomial insertion_monomial(const Calculus& calc, int n,
                            const std::vector<std::pair<int, Vec>>& divisors,
                            const std::vector<std::vector<int>>& diagonals);

/* Exported WDVV relation on the 4th fiber power (codim 5, sums to 0).
 * Principal part L1 L2 L3 D34 + L1 L3 L4 D12 - L1 L2 L3 D24 - L1 L2 L4 D13
 * times N0(L); within-lattice splits carry -lambda, rank-raising split
 * families an opaque NL tag. */
RelationReport export_wdvv(const Calculus& calc, const Vec& l, const ExportOptions& opts,
                           std::optional<bool> effective_hint = std::nullopt);

/* Exported Getzler relation on the 4th fiber power (codim 5, sums to 0);
 * requires <L,L> >= 0 so the genus 1 invariant is nonzero. */
RelationReport export_getzler(const Calculus& calc, const Vec& l, const ExportOptions& opts,
                              std::optional<bool> effective_hint = std::nullopt);

/* Universal diagonal decomposition on the 3rd fiber power: the push of
 * H_(4) * Getzler(H) along the 4th factor, scaled so the small-diagonal
 * term reads +2l D_(123).  Codim 4, sums to 0. */
RelationReport diagonal_decomposition(const Calculus& calc, const ExportOptions& opts);

/* Codim-2 identity on the universal surface obtained by inserting D_(12)
 * into the diagonal decomposition and projecting to the third factor:
 * 2l c2(T_pi) - 24 H^2 + kappa_[H^2;1] + (NL-supported terms) = 0. */
TautExpression c2_identity(const Calculus& calc);

/* Both sides of kappa_[H^a;b] = pi_*(H^a_(1) D_(23)^b D_(123)). */
std::pair<TautExpression, TautExpression> kappa_from_diagonal(const Calculus& calc, int a, int b);

} // namespace k3taut

#endif
