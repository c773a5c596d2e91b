#include "k3taut/relations.hpp"

#include <algorithm>

namespace k3taut {

Monomial insertion_monomial(const Calculus& calc, int n,
                            const std::vector<std::pair<int, Vec>>& divisors,
                            const std::vector<std::vector<int>>& diagonals)
{
    TautExpression e = calc.from_monomial(n, Monomial(n));
    for (const auto& d : diagonals)
        e = calc.multiply(e, calc.from_monomial(n, Monomial::diagonal(n, d)));
    for (const auto& [factor, v] : divisors)
        e = calc.multiply(e, calc.from_monomial(n, Monomial::divisor(n, factor, v)));
    if (e.term_count() != 1)
        throw ComputeError("internal: insertion monomial did not stay a single term");
    const auto& [key, coeff] = *e.terms().begin();
    if (coeff != 1 || !key.symbols.empty())
        throw ComputeError("internal: insertion monomial picked up a coefficient");
    return key.shape;
}

namespace {

const BaseSymbol kLambda = BaseSymbol(LambdaSymbol{});

struct TermsBuilder {
    const Calculus& calc;
    TautExpression expr;

    TermsBuilder(const Calculus& c, int n) : calc(c), expr(n) {}

    void add(const Rat& coeff, const std::vector<std::pair<int, Vec>>& divisors,
             const std::vector<std::vector<int>>& diagonals, SymbolProduct symbols = {})
    {
        if (coeff == 0)
            return;
        std::sort(symbols.begin(), symbols.end(), symbol_less);
        expr.add_term(insertion_monomial(calc, expr.n(), divisors, diagonals), symbols, coeff);
    }
};

/* The three perfect matchings of {1,2,3,4}. */
const std::vector<std::pair<std::vector<int>, std::vector<int>>> kMatchings = {
    {{1, 2}, {3, 4}},
    {{1, 3}, {2, 4}},
    {{1, 4}, {2, 3}},
};

std::vector<int> complement4(const std::vector<int>& s)
{
    std::vector<int> out;
    for (int i = 1; i <= 4; ++i)
        if (std::find(s.begin(), s.end(), i) == s.end())
            out.push_back(i);
    return out;
}

/* Split the expression into principal / lambda-carrying / tag-carrying
 * parts and apply the export mode. */
void apply_mode(const Calculus& calc, const ExportOptions& opts, TautExpression& expr,
                std::vector<DroppedTerm>& dropped)
{
    TautExpression principal(expr.n()), lambda_part(expr.n());
    std::map<std::string, TautExpression> tag_parts;
    for (const auto& [key, coeff] : expr.terms()) {
        bool tag = std::any_of(key.symbols.begin(), key.symbols.end(), is_nl_tag);
        bool lam = std::any_of(key.symbols.begin(), key.symbols.end(), is_lambda);
        if (tag) {
            std::string desc;
            for (const auto& s : key.symbols)
                if (is_nl_tag(s)) {
                    desc = std::get<NLTagSymbol>(s).desc;
                    break;
                }
            auto [it, fresh] = tag_parts.try_emplace(desc, TautExpression(expr.n()));
            it->second.add_term(key.shape, key.symbols, coeff);
        } else if (lam) {
            lambda_part.add_term(key.shape, key.symbols, coeff);
        } else {
            principal.add_term(key.shape, key.symbols, coeff);
        }
    }
    switch (opts.mode) {
    case ExportOptions::Mode::mod_nl:
        expr = principal;
        if (!lambda_part.empty())
            dropped.push_back({"lambda", "terms multiplied by the Hodge class", lambda_part});
        for (auto& [desc, part] : tag_parts)
            dropped.push_back({"rank-raising", desc, part});
        break;
    case ExportOptions::Mode::keep_lambda:
        expr = principal + lambda_part;
        for (auto& [desc, part] : tag_parts)
            dropped.push_back({"rank-raising", desc, part});
        break;
    case ExportOptions::Mode::full:
        break;
    }
    (void)calc;
}

void note_undecidable(const SplitEnumeration& splits, RelationReport& report)
{
    for (const SplitPair& sp : splits.undecidable) {
        report.undecidable_splits.push_back(sp);
        report.dropped_nl_terms.push_back(
            {"undecidable-split",
             "effectivity of " + vec_to_string(sp.l1) + " + " + vec_to_string(sp.l2)
                 + " undecidable from lattice data",
             TautExpression(4)});
    }
}

} // namespace

RelationReport export_wdvv(const Calculus& calc, const Vec& l, const ExportOptions& opts,
                           std::optional<bool> effective_hint)
{
    const PolarizedLattice& pl = calc.pl();
    if (!is_admissible(pl, l, effective_hint))
        throw ValidationError("WDVV export requires an admissible class");
    Rat n0l = n0_of(pl, l);
    if (!(n0l > 0))
        throw ComputeError("internal: N0 must be positive for an admissible class");

    RelationReport report{TautExpression(4), {}, {}, {}, 0, 0};
    TermsBuilder b(calc, 4);

    /* Unsplit contributions: two marked degenerations of each graph. */
    b.add(n0l, {{1, l}, {2, l}, {3, l}}, {{3, 4}});
    b.add(n0l, {{1, l}, {3, l}, {4, l}}, {{1, 2}});
    b.add(-n0l, {{1, l}, {2, l}, {3, l}}, {{2, 4}});
    b.add(-n0l, {{1, l}, {2, l}, {4, l}}, {{1, 3}});

    /* Split contributions within the lattice carry a factor -lambda. */
    if (opts.include_splits_within_lambda) {
        SplitEnumeration splits = enumerate_admissible_splits(pl, l, effective_hint);
        note_undecidable(splits, report);
        for (const SplitPair& sp : splits.pairs) {
            report.splits.push_back(sp);
            std::vector<std::pair<Vec, Vec>> ordered{{sp.l1, sp.l2}};
            if (sp.l1 != sp.l2)
                ordered.push_back({sp.l2, sp.l1});
            for (const auto& [x, y] : ordered) {
                Rat c = n0_of(pl, x) * n0_of(pl, y) * pl.pairing(x, y);
                /* distribution: x at the vertex with markings {1,2} resp {1,3} */
                b.add(-c, {{1, x}, {2, x}, {3, y}, {4, y}}, {}, {kLambda});
                b.add(c, {{1, x}, {3, x}, {2, y}, {4, y}}, {}, {kLambda});
            }
        }
    }

    /* Splits raising the Picard rank live over proper NL divisors and
     * stay a single opaque family. */
    b.expr.add_term(Monomial(4),
                    {BaseSymbol(NLTagSymbol{"wdvv-rank-raising-splits:L=" + vec_to_string(l), 5})},
                    1);
    report.triple_splits_used = 0;

    report.expr = std::move(b.expr);
    apply_mode(calc, opts, report.expr, report.dropped_nl_terms);
    if (opts.normalize) {
        report.expr = report.expr.scaled(1 / n0l);
        for (auto& d : report.dropped_nl_terms)
            d.part = d.part.scaled(1 / n0l);
    }
    return report;
}

RelationReport export_getzler(const Calculus& calc, const Vec& l, const ExportOptions& opts,
                              std::optional<bool> effective_hint)
{
    const PolarizedLattice& pl = calc.pl();
    if (!is_admissible(pl, l, effective_hint))
        throw ValidationError("Getzler export requires an admissible class");
    if (pl.norm(l) < 0)
        throw ComputeError("N1 vanishes, Getzler export undefined for <L,L> < 0");
    Rat n1l = n1_of(pl, l);
    Rat n0l = n0_of(pl, l);
    if (!(n1l > 0))
        throw ComputeError("internal: N1 must be positive for an admissible class of square >= 0");

    RelationReport report{TautExpression(4), {}, {}, {}, 0, 0};
    TermsBuilder b(calc, 4);
    const BaseSymbol z_l = BaseSymbol(ZSymbol{l});
    const BaseSymbol kappa_l1 = BaseSymbol(KappaSymbol::make({l}, 1));

    /* Stratum 1 (unsplit): genus 1 vertex between two 2-marked genus 0
     * vertices; the class rides on one of the two diagonal blocks. */
    for (const auto& [p, q] : kMatchings) {
        b.add(12 * n1l, {{p[0], l}}, {p, q});
        b.add(12 * n1l, {{q[0], l}}, {p, q});
        b.add(12 * n1l, {}, {p, q}, {z_l});
    }

    /* Stratum 2 (unsplit): triple diagonals; the class sits on the free
     * marking or on the diagonal block. */
    for (int s = 1; s <= 4; ++s) {
        std::vector<int> t = complement4({s});
        b.add(-12 * n1l, {{s, l}}, {t});
        b.add(-12 * n1l, {{t[0], l}}, {t});
        b.add(-12 * n1l, {}, {t}, {z_l});
    }

    /* Stratum 4 (unsplit): contracted genus 1 tail gives the Hodge class. */
    b.add(n0l, {{1, l}, {2, l}, {3, l}, {4, l}}, {}, {kLambda});

    /* Stratum 6 (unsplit): genus 0 self-node gives c2, i.e. kappa_[L;1]. */
    b.add(n0l / 2, {{1, l}, {2, l}, {3, l}, {4, l}}, {}, {kappa_l1});

    if (opts.include_splits_within_lambda) {
        SplitEnumeration splits = enumerate_admissible_splits(pl, l, effective_hint);
        note_undecidable(splits, report);
        for (const SplitPair& sp : splits.pairs) {
            report.splits.push_back(sp);
            std::vector<std::pair<Vec, Vec>> ordered{{sp.l1, sp.l2}};
            if (sp.l1 != sp.l2)
                ordered.push_back({sp.l2, sp.l1});
            /* x is the class on the genus 1 (or looped genus 0) vertex. */
            for (const auto& [x, y] : ordered) {
                Rat n1x = n1_of(pl, x);
                Rat n0x = n0_of(pl, x);
                Rat n0y = n0_of(pl, y);
                Rat xy = pl.pairing(x, y);
                Rat xx = pl.norm(x);

                /* Stratum 1 */
                Rat c = -12 * n1x * n0y * xy; /* times -lambda */
                if (c != 0)
                    for (const auto& [p, q] : kMatchings) {
                        std::vector<int> cp = complement4(p);
                        std::vector<int> cq = complement4(q);
                        b.add(c, {{cp[0], y}, {cp[1], y}}, {p}, {kLambda});
                        b.add(c, {{cq[0], y}, {cq[1], y}}, {q}, {kLambda});
                    }

                /* Stratum 2, first marked graph: free marking t, diagonal
                 * block {u,v}, the fourth marking on the genus 1 vertex. */
                c = 4 * n1x * n0y * xy;
                if (c != 0)
                    for (int t = 1; t <= 4; ++t) {
                        std::vector<int> rest = complement4({t});
                        for (int drop = 0; drop < 3; ++drop) {
                            std::vector<int> uv;
                            for (int k = 0; k < 3; ++k)
                                if (k != drop)
                                    uv.push_back(rest[static_cast<size_t>(k)]);
                            b.add(c, {{t, y}, {uv[0], y}}, {uv}, {kLambda});
                        }
                    }

                /* Stratum 2, second marked graph. */
                if (n1x != 0) {
                    for (int p = 1; p <= 4; ++p)
                        b.add(12 * n1x * n0y,
                              {{p, x},
                               {complement4({p})[0], y},
                               {complement4({p})[1], y},
                               {complement4({p})[2], y}},
                              {}, {kLambda});
                    for (int q = 1; q <= 4; ++q)
                        for (int p = 1; p <= 4; ++p) {
                            if (p == q)
                                continue;
                            std::vector<int> uv = complement4({p, q});
                            b.add(4 * n1x * n0y, {{q, x}, {q, y}, {uv[0], y}, {uv[1], y}}, {},
                                  {kLambda});
                        }
                    for (int bare = 1; bare <= 4; ++bare) {
                        std::vector<int> s = complement4({bare});
                        b.add(12 * n1x * n0y, {{s[0], y}, {s[1], y}, {s[2], y}}, {},
                              {kLambda, BaseSymbol(ZSymbol{x})});
                    }
                }

                /* Stratum 4 */
                b.add(-24 * n1x * n0y, {{1, y}, {2, y}, {3, y}, {4, y}}, {}, {kLambda});

                /* Strata 5 and 6: genus 0 vertex with a self-node. */
                c = -n0x * n0y * xx * xy / 2;
                if (c != 0) {
                    for (int s = 1; s <= 4; ++s) {
                        std::vector<int> rest = complement4({s});
                        b.add(c, {{s, x}, {rest[0], y}, {rest[1], y}, {rest[2], y}}, {}, {kLambda});
                    }
                    b.add(c, {{1, y}, {2, y}, {3, y}, {4, y}}, {}, {kLambda});
                }
            }

            /* Stratum 7: two genus 0 vertices joined by a double edge; the
             * displayed sum already covers both class orientations. */
            {
                const Vec& x = sp.l1;
                const Vec& y = sp.l2;
                Rat xy = pl.pairing(x, y);
                Rat c = n0_of(pl, x) * n0_of(pl, y) * xy * xy; /* times -(-lambda) */
                if (c != 0) {
                    std::vector<std::vector<int>> subsets;
                    if (x == y)
                        subsets = {{1, 2}, {1, 3}, {1, 4}};
                    else
                        subsets = {{1, 2}, {3, 4}, {1, 3}, {2, 4}, {1, 4}, {2, 3}};
                    for (const auto& s : subsets) {
                        std::vector<int> t = complement4(s);
                        b.add(c, {{s[0], x}, {s[1], x}, {t[0], y}, {t[1], y}}, {}, {kLambda});
                    }
                }
            }
        }

        /* Three-part splits contribute only through Stratum 2 and carry
         * (-lambda)^2 when the lattice does not grow. */
        auto [triples, skipped] = enumerate_admissible_triple_splits(pl, l, effective_hint);
        report.triple_splits_used = static_cast<int>(triples.size());
        report.triple_splits_skipped = skipped;
        for (const SplitTriple& tr : triples) {
            Rat n1x = n1_of(pl, tr.l1);
            if (n1x == 0)
                continue;
            Rat c = -4 * n1x * n0_of(pl, tr.l2) * n0_of(pl, tr.l3) * pl.pairing(tr.l1, tr.l2)
                    * pl.pairing(tr.l2, tr.l3);
            if (c == 0)
                continue;
            for (int q = 1; q <= 4; ++q) {
                std::vector<int> rest = complement4({q});
                for (int drop = 0; drop < 3; ++drop) {
                    std::vector<int> uv;
                    for (int k = 0; k < 3; ++k)
                        if (k != drop)
                            uv.push_back(rest[static_cast<size_t>(k)]);
                    b.add(c, {{q, tr.l2}, {uv[0], tr.l3}, {uv[1], tr.l3}}, {}, {kLambda, kLambda});
                }
            }
        }
    }

    b.expr.add_term(Monomial(4),
                    {BaseSymbol(NLTagSymbol{"getzler-rank-raising-splits:L=" + vec_to_string(l), 5})},
                    1);

    report.expr = std::move(b.expr);
    apply_mode(calc, opts, report.expr, report.dropped_nl_terms);
    if (opts.normalize) {
        Rat scale = 1 / (12 * n1l);
        report.expr = report.expr.scaled(scale);
        for (auto& d : report.dropped_nl_terms)
            d.part = d.part.scaled(scale);
    }
    return report;
}

RelationReport diagonal_decomposition(const Calculus& calc, const ExportOptions& opts)
{
    const PolarizedLattice& pl = calc.pl();
    ExportOptions inner;
    inner.mode = ExportOptions::Mode::full;
    inner.include_splits_within_lambda = opts.include_splits_within_lambda;
    RelationReport g = export_getzler(calc, pl.h(), inner);

    TautExpression e4 = calc.multiply(g.expr, calc.from_monomial(4, Monomial::divisor(4, 4, pl.h())));
    TautExpression e3 = calc.push_drop_factor(e4, 4);
    /* Scale so the small diagonal appears as +2l D_(123). */
    Rat scale = Rat(-1) / (12 * n1_of(pl, pl.h()));
    e3 = e3.scaled(scale);

    RelationReport report{std::move(e3), {}, std::move(g.splits), std::move(g.undecidable_splits),
                          g.triple_splits_used, g.triple_splits_skipped};
    for (auto& d : g.dropped_nl_terms)
        if (d.kind == "undecidable-split")
            report.dropped_nl_terms.push_back(d);
    apply_mode(calc, opts, report.expr, report.dropped_nl_terms);
    return report;
}

TautExpression c2_identity(const Calculus& calc)
{
    ExportOptions opts;
    opts.mode = ExportOptions::Mode::full;
    RelationReport d = diagonal_decomposition(calc, opts);
    TautExpression e = calc.multiply(d.expr, calc.from_monomial(3, Monomial::diagonal(3, {1, 2})));
    e = calc.push_drop_factor(e, 1);
    e = calc.push_drop_factor(e, 1);
    return e;
}

std::pair<TautExpression, TautExpression> kappa_from_diagonal(const Calculus& calc, int a, int b)
{
    if (a < 0 || b < 0)
        throw ValidationError("kappa indices must be nonnegative");
    const PolarizedLattice& pl = calc.pl();
    TautExpression e = calc.from_monomial(3, Monomial(3));
    for (int i = 0; i < a; ++i)
        e = calc.multiply(e, calc.from_monomial(3, Monomial::divisor(3, 1, pl.h())));
    for (int i = 0; i < b; ++i)
        e = calc.multiply(e, calc.from_monomial(3, Monomial::diagonal(3, {2, 3})));
    e = calc.multiply(e, calc.from_monomial(3, Monomial::diagonal(3, {1, 2, 3})));
    TautExpression lhs = calc.push_to_base(e);

    TautExpression rhs(0);
    std::vector<Vec> divisors(static_cast<size_t>(a), pl.h());
    KappaValue kv = calc.kappa_evaluate(divisors, b);
    if (kv.symbol)
        rhs.add_term(Monomial(0), {*kv.symbol}, kv.scalar);
    else
        rhs.add_term(Monomial(0), {}, kv.scalar);
    return {lhs, rhs};
}

} // namespace k3taut
