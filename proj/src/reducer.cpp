#include "k3taut/reducer.hpp"

#include <algorithm>

namespace k3taut {

const NLCertificate& KnowledgeBase::certificate(const BaseSymbol& s) const
{
    auto it = certs_.find(s);
    if (it == certs_.end())
        throw ComputeError("no certificate for " + symbol_to_string(s));
    return it->second;
}

void KnowledgeBase::insert(NLCertificate cert)
{
    BaseSymbol key = cert.target;
    certs_.try_emplace(key, std::move(cert));
}

bool KnowledgeBase::symbol_certified(const BaseSymbol& s) const
{
    if (is_nl_tag(s))
        return true;
    if (is_lambda(s))
        return lambda_axiom_;
    return certs_.count(s) != 0;
}

bool KnowledgeBase::term_certified(const SymbolProduct& p) const
{
    return std::any_of(p.begin(), p.end(), [&](const BaseSymbol& s) { return symbol_certified(s); });
}

namespace {

TautExpression build_relation(const Calculus& calc, const std::string& relation, const Vec& cls,
                              std::optional<bool> hint)
{
    ExportOptions full;
    full.mode = ExportOptions::Mode::full;
    if (relation == "wdvv")
        return export_wdvv(calc, cls, full, hint).expr;
    if (relation == "getzler")
        return export_getzler(calc, cls, full, hint).expr;
    if (relation == "diagonal")
        return diagonal_decomposition(calc, full).expr;
    if (relation == "c2")
        return c2_identity(calc);
    throw ValidationError("unknown relation id: " + relation);
}

TautExpression finish_step(const Calculus& calc, const TautExpression& rel, const CertStep& step)
{
    TautExpression r = rel;
    if (!step.perm.empty())
        r = calc.permute_factors(r, step.perm);
    TautExpression e = calc.multiply(r, calc.from_monomial(r.n(), step.insertion));
    return calc.push_to_base(e).scaled(step.scale);
}

} // namespace

TautExpression replay_step(const Calculus& calc, const CertStep& step)
{
    return finish_step(calc, build_relation(calc, step.relation, step.cls, step.effective_hint),
                       step);
}

bool verify_certificate(const Calculus& calc, const NLCertificate& cert, const KnowledgeBase& kb,
                        std::string* diff)
{
    auto fail = [&](const std::string& msg) {
        if (diff)
            *diff = msg;
        return false;
    };
    TautExpression combined(0);
    for (size_t i = 0; i < cert.steps.size(); ++i) {
        const CertStep& step = cert.steps[i];
        TautExpression replayed = replay_step(calc, step);
        if (!(replayed == step.pushed))
            return fail("step " + std::to_string(i) + " (" + step.relation
                        + ") does not replay: recorded " + step.pushed.to_string() + ", recomputed "
                        + replayed.to_string());
        combined.add(replayed.scaled(step.combo));
    }
    TautExpression expected(0);
    expected.add_term(Monomial(0), {cert.target}, 1);
    expected.add(cert.nl_expression.scaled(-1));
    if (!(combined == expected))
        return fail("combination mismatch: combined " + combined.to_string() + ", expected "
                    + expected.to_string());
    for (const BaseSymbol& dep : cert.deps)
        if (!kb.symbol_certified(dep))
            return fail("dependency not certified: " + symbol_to_string(dep));
    for (const auto& [key, coeff] : cert.nl_expression.terms())
        if (!kb.term_certified(key.symbols))
            return fail("remainder term not NL-certified: " + symbol_product_to_string(key.symbols));
    return true;
}

/* ------------------------------------------------------------------ */

Reducer::Reducer(Calculus calc, std::map<Vec, bool> effectivity_hints)
    : calc_(std::move(calc)), kb_(true), effectivity_hints_(std::move(effectivity_hints))
{
}

std::optional<bool> Reducer::hint_for(const Vec& v) const
{
    auto it = effectivity_hints_.find(v);
    if (it == effectivity_hints_.end())
        return std::nullopt;
    return it->second;
}

const TautExpression& Reducer::relation_expr(const std::string& relation, const Vec& cls,
                                             std::optional<bool> hint)
{
    auto key = std::make_pair(relation, cls);
    auto it = relation_cache_.find(key);
    if (it == relation_cache_.end())
        it = relation_cache_.emplace(key, build_relation(calc_, relation, cls, hint)).first;
    return it->second;
}

CertStep Reducer::make_step(const std::string& relation, const Vec& cls, const Monomial& insertion,
                            const Rat& scale)
{
    CertStep step;
    step.relation = relation;
    step.cls = cls;
    step.effective_hint = hint_for(cls);
    step.insertion = insertion;
    step.scale = scale;
    step.pushed = finish_step(calc_, relation_expr(relation, cls, step.effective_hint), step);
    return step;
}

Reducer::Equation Reducer::extract(CertStep step, const std::vector<BaseSymbol>& unknowns,
                                   bool allow_recursive_certify)
{
    Equation eq{std::move(step), std::vector<Rat>(unknowns.size()), TautExpression(0)};
    for (const auto& [key, coeff] : eq.step.pushed.terms()) {
        if (!key.shape.trivial_shape() || key.shape.n() != 0)
            throw ComputeError("internal: pushed equation not on the base");
        bool matched = false;
        if (key.symbols.size() == 1) {
            for (size_t j = 0; j < unknowns.size(); ++j)
                if (key.symbols[0] == unknowns[j]) {
                    eq.coeffs[j] += coeff;
                    matched = true;
                    break;
                }
        }
        if (matched)
            continue;
        if (key.symbols.empty())
            throw ComputeError("internal: scalar term in a relation of positive codimension");
        if (!kb_.term_certified(key.symbols)) {
            if (!allow_recursive_certify)
                throw ComputeError("uncertified term in equation: "
                                   + symbol_product_to_string(key.symbols));
            /* Certify the cheapest factor that is not being solved for. */
            const BaseSymbol* pick = nullptr;
            for (const BaseSymbol& s : key.symbols) {
                if (is_lambda(s) || is_nl_tag(s))
                    continue;
                if (std::any_of(unknowns.begin(), unknowns.end(),
                                [&](const BaseSymbol& u) { return u == s; }))
                    continue;
                if (!pick || symbol_codim(s) < symbol_codim(*pick)
                    || (symbol_codim(s) == symbol_codim(*pick) && symbol_less(s, *pick)))
                    pick = &s;
            }
            if (!pick)
                throw ComputeError("uncertifiable term (nonlinear in the unknowns): "
                                   + symbol_product_to_string(key.symbols));
            certify(*pick);
        }
        eq.remainder.add_term(key.shape, key.symbols, coeff);
    }
    return eq;
}

NLCertificate Reducer::combine(const BaseSymbol& target, const std::vector<Equation>& eqs,
                               const std::vector<Rat>& combo, const std::string& note)
{
    if (combo.size() != eqs.size())
        throw ComputeError("internal: combination size mismatch");
    NLCertificate cert;
    cert.target = target;
    cert.note = note;
    TautExpression combined(0);
    for (size_t i = 0; i < eqs.size(); ++i) {
        CertStep step = eqs[i].step;
        step.combo = combo[i];
        cert.steps.push_back(std::move(step));
        combined.add(eqs[i].step.pushed.scaled(combo[i]));
    }
    TautExpression target_expr(0);
    target_expr.add_term(Monomial(0), {target}, 1);
    cert.nl_expression = target_expr - combined;
    for (const auto& [key, coeff] : cert.nl_expression.terms()) {
        if (!kb_.term_certified(key.symbols))
            throw ComputeError("internal: combination left an uncertified term "
                               + symbol_product_to_string(key.symbols));
        for (const BaseSymbol& s : key.symbols)
            if (kb_.has(s)
                && std::none_of(cert.deps.begin(), cert.deps.end(),
                                [&](const BaseSymbol& d) { return d == s; }))
                cert.deps.push_back(s);
    }
    std::sort(cert.deps.begin(), cert.deps.end(), symbol_less);
    return cert;
}

const NLCertificate& Reducer::certify(const BaseSymbol& target)
{
    certify_impl(target);
    return kb_.certificate(target);
}

void Reducer::certify_impl(const BaseSymbol& target)
{
    if (kb_.has(target))
        return;
    if (is_nl_tag(target))
        throw ValidationError("NL tags are certified by construction");
    if (is_lambda(target)) {
        if (kb_.lambda_axiom())
            throw ValidationError("lambda is an axiom here; see the keep-lambda system");
        throw ComputeError("lambda certification requires the keep-lambda system");
    }
    if (in_progress_.count(target))
        throw ComputeError("certification cycle at " + symbol_to_string(target));
    in_progress_.insert(target);
    struct Guard {
        std::set<BaseSymbol, SymbolLess>& s;
        const BaseSymbol& t;
        ~Guard() { s.erase(t); }
    } guard{in_progress_, target};

    if (const auto* z = std::get_if<ZSymbol>(&target)) {
        Int n = calc_.pl().norm(z->cls);
        if (n > 0)
            run_case_a(z->cls);
        else if (n == 0)
            run_case_d(z->cls);
        else
            throw ValidationError("Z(L) is undefined for <L,L> < 0");
    } else {
        const auto& k = std::get<KappaSymbol>(target);
        int codim = k.codim();
        if (codim <= 0)
            throw ValidationError("kappa of nonpositive codimension is a scalar, not a symbol");
        const Vec& h = calc_.pl().h();
        if (codim == 1) {
            if (k.c2 == 1) {
                const Vec& x = k.classes[0].first;
                Int n = calc_.pl().norm(x);
                if (n > 0)
                    run_case_a(x);
                else if (n < 0)
                    run_case_c(x);
                else
                    run_case_d(x);
            } else {
                std::vector<Vec> divs = k.divisor_list();
                if (divs[0] == divs[1] && divs[1] == divs[2]) {
                    const Vec& x = divs[0];
                    Int n = calc_.pl().norm(x);
                    if (n > 0)
                        run_case_a(x);
                    else if (n < 0)
                        run_case_c(x);
                    else
                        run_case_d(x);
                } else {
                    int hcount = static_cast<int>(std::count(divs.begin(), divs.end(), h));
                    if (hcount == 2) {
                        Vec x;
                        for (const Vec& d : divs)
                            if (d != h)
                                x = d;
                        Int n = calc_.pl().norm(x);
                        if (n > 0)
                            run_case_b(x);
                        else if (n < 0)
                            run_case_c(x);
                        else
                            run_case_d(x);
                    } else {
                        run_case_e(divs);
                    }
                }
            }
        } else if (k.c2 > 0) {
            KappaSymbol h2c2 = KappaSymbol::make({h, h}, 1);
            if (k == h2c2)
                run_kappa_h2c2();
            else
                run_c2_elimination(k);
        } else if (codim == 2) {
            run_codim2(k);
        } else {
            run_codim_high(k);
        }
    }
    if (!kb_.has(target))
        throw ComputeError("reduction did not certify " + symbol_to_string(target));
}

/* ------------------------------------------------------------------ */

namespace {

Monomial ins4(const Calculus& calc, const std::vector<std::pair<int, Vec>>& divs,
              const std::vector<std::vector<int>>& diags)
{
    return insertion_monomial(calc, 4, divs, diags);
}

Monomial ins3(const Calculus& calc, const std::vector<std::pair<int, Vec>>& divs,
              const std::vector<std::vector<int>>& diags = {})
{
    return insertion_monomial(calc, 3, divs, diags);
}

} // namespace

void Reducer::run_case_a(const Vec& l)
{
    const PolarizedLattice& pl = calc_.pl();
    if (pl.norm(l) <= 0)
        throw ComputeError("internal: case A requires <L,L> > 0");
    Rat n0l = n0_of(pl, l);
    if (!(n0l > 0))
        throw ComputeError("internal: missing positivity witness for N0");
    Rat nLL = Rat(pl.norm(l));

    std::vector<BaseSymbol> unknowns = {
        BaseSymbol(KappaSymbol::make({l, l, l}, 0)),
        BaseSymbol(KappaSymbol::make({l}, 1)),
        BaseSymbol(ZSymbol{l}),
    };
    std::vector<Equation> eqs;
    eqs.push_back(extract(make_step("wdvv", l, ins4(calc_, {}, {{1, 2}, {3, 4}}), 1 / n0l), unknowns, true));
    eqs.push_back(extract(make_step("getzler", l,
                                    ins4(calc_, {{1, l}, {2, l}, {3, l}, {4, l}}, {}), 1 / nLL),
                          unknowns, true));
    eqs.push_back(extract(make_step("getzler", l, ins4(calc_, {{1, l}, {2, l}}, {{3, 4}}), 1),
                          unknowns, true));
    eqs.push_back(extract(make_step("getzler", l, ins4(calc_, {}, {{1, 2}, {3, 4}}), 1), unknowns, true));

    QMatrix m(4, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            m.at(i, j) = eqs[static_cast<size_t>(i)].coeffs[static_cast<size_t>(j)];
    if (m.rank() != 3)
        throw ComputeError("case A system does not have maximal rank 3 (calculus bug)");

    /* First row triple of rank 3 solves; the leftover equation is then a
     * row combination of the selected ones, which is the consistency
     * condition. */
    std::vector<std::vector<int>> triples = {{0, 1, 2}, {0, 1, 3}, {0, 2, 3}, {1, 2, 3}};
    std::vector<int> rows;
    QMatrix inv;
    for (const auto& t : triples) {
        QMatrix sel(3, 3);
        for (int i = 0; i < 3; ++i)
            for (int j = 0; j < 3; ++j)
                sel.at(i, j) = m.at(t[static_cast<size_t>(i)], j);
        if (sel.rank() == 3) {
            rows = t;
            inv = sel.inverse();
            break;
        }
    }
    if (rows.empty())
        throw ComputeError("case A: no invertible row triple");

    std::string note = "case A: 4x3 system of rank 3, rows {wdvv:DD, getzler:LLLL, getzler:LLD, getzler:DD}, solved from rows "
                       + std::to_string(rows[0]) + std::to_string(rows[1]) + std::to_string(rows[2]);
    for (size_t j = 0; j < unknowns.size(); ++j) {
        std::vector<Rat> combo(4);
        for (int i = 0; i < 3; ++i)
            combo[static_cast<size_t>(rows[static_cast<size_t>(i)])] = inv.at(static_cast<int>(j), i);
        kb_.insert(combine(unknowns[j], eqs, combo, note));
    }
}

QMatrix Reducer::case_a_system(const Vec& l)
{
    const PolarizedLattice& pl = calc_.pl();
    Rat n0l = n0_of(pl, l);
    Rat nLL = Rat(pl.norm(l));
    std::vector<BaseSymbol> unknowns = {
        BaseSymbol(KappaSymbol::make({l, l, l}, 0)),
        BaseSymbol(KappaSymbol::make({l}, 1)),
        BaseSymbol(ZSymbol{l}),
    };
    std::vector<Equation> eqs;
    eqs.push_back(extract(make_step("wdvv", l, ins4(calc_, {}, {{1, 2}, {3, 4}}), 1 / n0l), unknowns, true));
    eqs.push_back(extract(make_step("getzler", l,
                                    ins4(calc_, {{1, l}, {2, l}, {3, l}, {4, l}}, {}), 1 / nLL),
                          unknowns, true));
    eqs.push_back(extract(make_step("getzler", l, ins4(calc_, {{1, l}, {2, l}}, {{3, 4}}), 1),
                          unknowns, true));
    eqs.push_back(extract(make_step("getzler", l, ins4(calc_, {}, {{1, 2}, {3, 4}}), 1), unknowns, true));
    QMatrix m(4, 3);
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 3; ++j)
            m.at(i, j) = eqs[static_cast<size_t>(i)].coeffs[static_cast<size_t>(j)];
    return m;
}

void Reducer::run_case_c(const Vec& l)
{
    const PolarizedLattice& pl = calc_.pl();
    const Vec& h = pl.h();
    if (pl.norm(l) >= 0)
        throw ComputeError("internal: case C requires <L,L> < 0");
    Rat n0l = n0_of(pl, l);
    if (!(n0l > 0))
        throw ComputeError("internal: missing positivity witness for N0");
    Rat nLL = Rat(pl.norm(l));
    Rat hl = Rat(pl.h_pairing(l));
    Rat two_ell = Rat(pl.two_ell());

    std::vector<BaseSymbol> unknowns = {
        BaseSymbol(KappaSymbol::make({l, l, l}, 0)),
        BaseSymbol(KappaSymbol::make({h, l, l}, 0)),
        BaseSymbol(KappaSymbol::make({h, h, l}, 0)),
    };
    std::vector<Equation> eqs;
    eqs.push_back(extract(make_step("diagonal", h, ins3(calc_, {{1, l}, {2, l}, {3, l}}), 1),
                          unknowns, true));
    eqs.push_back(extract(make_step("diagonal", h, ins3(calc_, {{1, h}, {2, l}, {3, l}}), 1),
                          unknowns, true));
    eqs.push_back(extract(make_step("wdvv", l, ins4(calc_, {{1, h}, {2, h}, {3, l}, {4, l}}, {}), 1 / n0l),
                          unknowns, true));

    QMatrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m.at(i, j) = eqs[static_cast<size_t>(i)].coeffs[static_cast<size_t>(j)];
    Rat det = m.det();
    Rat closed = two_ell * nLL * (two_ell * nLL - hl * hl);
    if (det != closed)
        throw ComputeError("case C determinant does not match 2l<L,L>(2l<L,L>-<H,L>^2) (calculus bug)");
    if (!(det > 0))
        throw ComputeError("case C determinant not positive; Hodge index violated");
    QMatrix inv = m.inverse();
    std::string note = "case C: 3x3 system {diag:LLL, diag:HLL, wdvv:HHLL}, det = 2l<L,L>(2l<L,L>-<H,L>^2) = "
                       + rat_to_string(det);
    for (size_t j = 0; j < unknowns.size(); ++j) {
        std::vector<Rat> combo(3);
        for (int i = 0; i < 3; ++i)
            combo[static_cast<size_t>(i)] = inv.at(static_cast<int>(j), i);
        kb_.insert(combine(unknowns[j], eqs, combo, note));
    }

    /* kappa_[L;1] from the WDVV insertion Delta_12 Delta_34. */
    BaseSymbol kappa1 = BaseSymbol(KappaSymbol::make({l}, 1));
    std::vector<BaseSymbol> u2 = {kappa1};
    Equation e4 = extract(make_step("wdvv", l, ins4(calc_, {}, {{1, 2}, {3, 4}}), 1 / n0l), u2, true);
    if (e4.coeffs[0] == 0)
        throw ComputeError("internal: the wdvv:DD equation lost its kappa_[L;1] term");
    kb_.insert(combine(kappa1, {e4}, {1 / e4.coeffs[0]}, "case C: kappa_[L;1] via wdvv:DD"));
}

std::pair<QMatrix, Rat> Reducer::case_c_system(const Vec& l)
{
    const PolarizedLattice& pl = calc_.pl();
    const Vec& h = pl.h();
    Rat n0l = n0_of(pl, l);
    std::vector<BaseSymbol> unknowns = {
        BaseSymbol(KappaSymbol::make({l, l, l}, 0)),
        BaseSymbol(KappaSymbol::make({h, l, l}, 0)),
        BaseSymbol(KappaSymbol::make({h, h, l}, 0)),
    };
    std::vector<Equation> eqs;
    eqs.push_back(extract(make_step("diagonal", h, ins3(calc_, {{1, l}, {2, l}, {3, l}}), 1),
                          unknowns, true));
    eqs.push_back(extract(make_step("diagonal", h, ins3(calc_, {{1, h}, {2, l}, {3, l}}), 1),
                          unknowns, true));
    eqs.push_back(extract(make_step("wdvv", l, ins4(calc_, {{1, h}, {2, h}, {3, l}, {4, l}}, {}), 1 / n0l),
                          unknowns, true));
    QMatrix m(3, 3);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            m.at(i, j) = eqs[static_cast<size_t>(i)].coeffs[static_cast<size_t>(j)];
    return {m, m.det()};
}

std::vector<Reducer::Equation> Reducer::case_d_equations(const Vec& l)
{
    const PolarizedLattice& pl = calc_.pl();
    const Vec& h = pl.h();
    Rat n0l = n0_of(pl, l);
    Rat n1l = n1_of(pl, l);
    if (!(n0l > 0))
        throw ComputeError("internal: missing positivity witness for N0 in case D");
    if (!(n1l > 0))
        throw ComputeError("internal: missing positivity witness for N1 in case D");
    std::vector<BaseSymbol> unknowns = {
        BaseSymbol(KappaSymbol::make({h, h, l}, 0)),
        BaseSymbol(KappaSymbol::make({h, l, l}, 0)),
        BaseSymbol(KappaSymbol::make({l}, 1)),
        BaseSymbol(ZSymbol{l}),
    };
    std::vector<Equation> eqs;
    eqs.push_back(extract(make_step("diagonal", h, ins3(calc_, {{1, h}, {2, l}, {3, l}}), 1),
                          unknowns, true)); /* diag:HLL */
    eqs.push_back(extract(make_step("wdvv", l, ins4(calc_, {{1, h}, {2, h}}, {{3, 4}}), 1 / n0l),
                          unknowns, true)); /* wdvv:HHD, undivided form */
    eqs.push_back(extract(make_step("getzler", l, ins4(calc_, {{1, h}, {2, h}, {3, h}, {4, l}}, {}),
                                    1 / (12 * n1l)),
                          unknowns, true)); /* getzler:HHHL */
    eqs.push_back(extract(make_step("getzler", l, ins4(calc_, {{1, h}, {2, h}}, {{3, 4}}), 1 / (12 * n1l)),
                          unknowns, true)); /* getzler:HHD */
    return eqs;
}

std::vector<Rat> Reducer::case_d_chain_combo(const Vec& l) const
{
    const PolarizedLattice& pl = calc_.pl();
    Rat hl = Rat(pl.h_pairing(l));
    Rat two_ell = Rat(pl.two_ell());
    if (hl == 0)
        throw ComputeError("case D requires <H,L> != 0 (Hodge index)");
    /* <H,L> * getzler:HHD + 12 * diag:HLL - (2l/<H,L>) * wdvv:HHD - 8 * getzler:HHHL */
    return {Rat(12), -two_ell / hl, Rat(-8), hl};
}

Rat Reducer::case_d_chain_coefficient(const Vec& l)
{
    std::vector<Equation> eqs = case_d_equations(l);
    std::vector<Rat> chain = case_d_chain_combo(l);
    std::vector<Rat> row(4);
    for (size_t i = 0; i < eqs.size(); ++i)
        for (size_t j = 0; j < 4; ++j)
            row[j] += chain[i] * eqs[i].coeffs[j];
    if (row[0] != 0 || row[2] != 0 || row[3] != 0)
        throw ComputeError("case D chain failed to eliminate the other unknowns");
    return row[1];
}

void Reducer::run_case_d(const Vec& l)
{
    const PolarizedLattice& pl = calc_.pl();
    const Vec& h = pl.h();
    if (pl.norm(l) != 0)
        throw ComputeError("internal: case D requires <L,L> = 0");
    Rat hl = Rat(pl.h_pairing(l));
    Rat two_ell = Rat(pl.two_ell());

    /* kappa_[L^3;0] drops out of the first diagonal insertion alone
     * because <L,L> = 0 kills the other principal term. */
    BaseSymbol kappa3 = BaseSymbol(KappaSymbol::make({l, l, l}, 0));
    {
        Equation e = extract(make_step("diagonal", h, ins3(calc_, {{1, l}, {2, l}, {3, l}}), 1),
                             {kappa3}, true);
        if (e.coeffs[0] != two_ell)
            throw ComputeError("internal: the diag:LLL coefficient is not 2l in case D");
        kb_.insert(combine(kappa3, {e}, {1 / two_ell}, "case D: kappa_[L^3;0] via diag:LLL at <L,L>=0"));
    }

    std::vector<BaseSymbol> unknowns = {
        BaseSymbol(KappaSymbol::make({h, h, l}, 0)),
        BaseSymbol(KappaSymbol::make({h, l, l}, 0)),
        BaseSymbol(KappaSymbol::make({l}, 1)),
        BaseSymbol(ZSymbol{l}),
    };
    std::vector<Equation> eqs = case_d_equations(l);
    std::vector<Rat> chain = case_d_chain_combo(l);
    std::vector<Rat> row(4);
    for (size_t i = 0; i < eqs.size(); ++i)
        for (size_t j = 0; j < 4; ++j)
            row[j] += chain[i] * eqs[i].coeffs[j];
    if (row[0] != 0 || row[2] != 0 || row[3] != 0)
        throw ComputeError("case D chain failed to eliminate the other unknowns");
    Rat elim = row[1];
    if (elim != Rat(-10) * two_ell)
        throw ComputeError("case D elimination coefficient is not -10(2l)");

    std::string note = "case D: substitution chain {diag:HLL, wdvv:HHD, getzler:HHHL, getzler:HHD}, elimination coefficient "
                       + rat_to_string(elim);
    /* kappa_[H,L^2;0] */
    std::vector<Rat> combo_hl2(4);
    for (size_t i = 0; i < 4; ++i)
        combo_hl2[i] = chain[i] / elim;
    kb_.insert(combine(unknowns[1], eqs, combo_hl2, note));
    /* kappa_[H^2,L;0] from diag:HLL */
    std::vector<Rat> combo_h2l(4);
    combo_h2l[0] = Rat(-1) / (2 * hl);
    for (size_t i = 0; i < 4; ++i)
        combo_h2l[i] += (two_ell / (2 * hl)) * combo_hl2[i];
    kb_.insert(combine(unknowns[0], eqs, combo_h2l, note));
    /* kappa_[L;1] from wdvv:HHD */
    std::vector<Rat> combo_k1(4);
    combo_k1[1] = 1 / (hl * hl);
    for (size_t i = 0; i < 4; ++i)
        combo_k1[i] += (2 / hl) * combo_hl2[i];
    kb_.insert(combine(unknowns[2], eqs, combo_k1, note));
    /* Z(L) from getzler:HHHL */
    std::vector<Rat> combo_z(4);
    combo_z[2] = 1 / (3 * two_ell * hl);
    for (size_t i = 0; i < 4; ++i)
        combo_z[i] -= (1 / hl) * combo_hl2[i];
    kb_.insert(combine(unknowns[3], eqs, combo_z, note));
}

void Reducer::run_case_b(const Vec& l)
{
    const PolarizedLattice& pl = calc_.pl();
    const Vec& h = pl.h();
    if (pl.norm(l) <= 0)
        throw ComputeError("internal: case B requires <L,L> > 0");
    certify(BaseSymbol(KappaSymbol::make({l, l, l}, 0)));
    BaseSymbol target = BaseSymbol(KappaSymbol::make({h, h, l}, 0));
    Equation e = extract(make_step("diagonal", h, ins3(calc_, {{1, l}, {2, l}, {3, l}}), 1), {target},
                         true);
    if (e.coeffs[0] == 0)
        throw ComputeError("internal: case B equation lost its target");
    kb_.insert(combine(target, {e}, {1 / e.coeffs[0]}, "case B: diagonal insertion L L L"));
}

void Reducer::run_case_e(const std::vector<Vec>& divisors)
{
    const Vec& h = calc_.pl().h();
    if (divisors.size() != 3)
        throw ComputeError("internal: case E expects three divisor classes");
    BaseSymbol target = BaseSymbol(KappaSymbol::make(divisors, 0));
    Equation e = extract(make_step("diagonal", h,
                                   ins3(calc_, {{1, divisors[0]}, {2, divisors[1]}, {3, divisors[2]}}),
                                   1),
                         {target}, true);
    if (e.coeffs[0] == 0)
        throw ComputeError("internal: case E equation lost its target");
    kb_.insert(combine(target, {e}, {1 / e.coeffs[0]}, "case E: diagonal insertion L1 L2 L3"));
}

void Reducer::run_kappa_h2c2()
{
    const Vec& h = calc_.pl().h();
    BaseSymbol target = BaseSymbol(KappaSymbol::make({h, h}, 1));
    Equation e = extract(make_step("diagonal", h, ins3(calc_, {{1, h}, {2, h}}, {{2, 3}}), 1), {target},
                         true);
    if (e.coeffs[0] == 0)
        throw ComputeError("internal: kappa_[H^2;1] equation lost its target");
    kb_.insert(combine(target, {e}, {1 / e.coeffs[0]},
                       "c2 step: diagonal insertion H_(1) H_(2) Delta_(23)"));
}

void Reducer::run_c2_elimination(const KappaSymbol& target)
{
    const Vec& h = calc_.pl().h();
    certify(BaseSymbol(KappaSymbol::make({h, h}, 1)));
    std::vector<Vec> divs = target.divisor_list();
    Block blk;
    blk.indices = {1};
    blk.data.divisors = divs;
    blk.data.c2 = target.c2 - 1;
    Monomial m(1, {blk});
    Equation e = extract(make_step("c2", h, m, 1), {BaseSymbol(target)}, true);
    if (e.coeffs[0] == 0)
        throw ComputeError("internal: c2 elimination lost its target");
    kb_.insert(combine(BaseSymbol(target), {e}, {1 / e.coeffs[0]},
                       "c2 index elimination via 2l c2 = 24 H^2 - kappa_[H^2;1] + NL"));
}

void Reducer::run_codim2(const KappaSymbol& target)
{
    const Vec& h = calc_.pl().h();
    std::vector<Vec> divs = target.divisor_list();
    std::vector<Vec> others;
    int a = 0;
    for (const Vec& d : divs) {
        if (d == h)
            ++a;
        else
            others.push_back(d);
    }
    Monomial m;
    switch (a) {
    case 4:
        m = ins3(calc_, {{1, h}, {1, h}}, {{2, 3}});
        break;
    case 3:
        m = ins3(calc_, {{1, h}, {1, h}, {2, h}, {3, others[0]}});
        break;
    case 2:
        m = ins3(calc_, {{1, h}, {1, h}, {2, others[0]}, {3, others[1]}});
        break;
    case 1:
        m = ins3(calc_, {{1, h}, {1, others[0]}, {2, others[1]}, {3, others[2]}});
        break;
    default:
        m = ins3(calc_, {{1, others[0]}, {1, others[1]}, {2, others[2]}, {3, others[3]}});
        break;
    }
    Equation e = extract(make_step("diagonal", h, m, 1), {BaseSymbol(target)}, true);
    if (e.coeffs[0] == 0)
        throw ComputeError("internal: codim-2 equation lost its target");
    kb_.insert(combine(BaseSymbol(target), {e}, {1 / e.coeffs[0]},
                       "codimension 2: diagonal insertion, H-multiplicity " + std::to_string(a)));
}

void Reducer::run_codim_high(const KappaSymbol& target)
{
    const Vec& h = calc_.pl().h();
    std::vector<Vec> divs = target.divisor_list();
    std::vector<Vec> others;
    int a = 0;
    for (const Vec& d : divs) {
        if (d == h)
            ++a;
        else
            others.push_back(d);
    }
    int k = static_cast<int>(others.size());
    std::vector<std::pair<int, Vec>> placement;
    std::string note;
    if (k == 0) {
        /* base of the H-index induction: H^(a-3) H^2 H */
        for (int i = 0; i < a - 3; ++i)
            placement.push_back({1, h});
        placement.push_back({2, h});
        placement.push_back({2, h});
        placement.push_back({3, h});
        note = "H-index base: insertion H^(a-3)_(1) H^2_(2) H_(3)";
    } else if (a > 0) {
        for (int i = 0; i < a - 1; ++i)
            placement.push_back({1, h});
        for (int i = 0; i + 1 < k; ++i)
            placement.push_back({1, others[static_cast<size_t>(i)]});
        placement.push_back({2, h});
        placement.push_back({3, others[static_cast<size_t>(k - 1)]});
        note = "H-index raising: insertion H^(a-1) L_1..L_(k-1) at (1), H_(2), L_k_(3)";
    } else {
        for (int i = 0; i + 2 < k; ++i)
            placement.push_back({1, others[static_cast<size_t>(i)]});
        placement.push_back({2, others[static_cast<size_t>(k - 2)]});
        placement.push_back({3, others[static_cast<size_t>(k - 1)]});
        note = "H-index start: insertion L_1..L_(k-2) at (1), L_(k-1)_(2), L_k_(3)";
    }
    Equation e = extract(make_step("diagonal", h, ins3(calc_, placement), 1), {BaseSymbol(target)},
                         true);
    if (!(e.coeffs[0] > 0))
        throw ComputeError("codim >= 3 equation lost positivity of the target coefficient");
    kb_.insert(combine(BaseSymbol(target), {e}, {1 / e.coeffs[0]}, note));
}

std::vector<BaseSymbol> Reducer::reduce_divisorial(const Vec& l)
{
    const PolarizedLattice& pl = calc_.pl();
    const Vec& h = pl.h();
    if (!is_admissible(pl, l, hint_for(l)))
        throw ValidationError("reduce requires an admissible class");
    Int n = pl.norm(l);
    std::vector<BaseSymbol> targets = {
        BaseSymbol(KappaSymbol::make({l, l, l}, 0)),
        BaseSymbol(KappaSymbol::make({l}, 1)),
    };
    if (n >= 0)
        targets.push_back(BaseSymbol(ZSymbol{l}));
    if (l != h) {
        targets.push_back(BaseSymbol(KappaSymbol::make({h, h, l}, 0)));
        targets.push_back(BaseSymbol(KappaSymbol::make({h, l, l}, 0)));
    }
    for (const BaseSymbol& t : targets)
        certify(t);
    return targets;
}

TautExpression Reducer::eliminate_c2()
{
    const Vec& h = calc_.pl().h();
    certify(BaseSymbol(KappaSymbol::make({h, h}, 1)));
    return c2_identity(calc_);
}

const NLCertificate& Reducer::reduce_kappa(const KappaSymbol& target)
{
    return certify(BaseSymbol(target));
}

/* ------------------------------------------------------------------ */

FootnoteSystem footnote_lambda_system(Int two_ell)
{
    if (two_ell < 2 || two_ell % 2 != 0)
        throw ValidationError("footnote system requires an even degree >= 2");
    PolarizedLattice pl = PolarizedLattice::degree(two_ell);
    Calculus calc(pl);
    Vec h = pl.h();
    Rat n0h = n0_of(pl, h);
    if (!(n0h > 0))
        throw ComputeError("internal: missing positivity witness for N0");

    std::vector<CertStep> steps;
    auto push = [&](const std::string& rel, const Monomial& ins, const Rat& scale) {
        CertStep s;
        s.relation = rel;
        s.cls = h;
        s.insertion = ins;
        s.scale = scale;
        s.pushed = replay_step(calc, s);
        steps.push_back(std::move(s));
    };
    push("wdvv", insertion_monomial(calc, 4, {}, {{1, 2}, {3, 4}}), 1 / n0h);
    push("getzler", insertion_monomial(calc, 4, {{1, h}, {2, h}, {3, h}, {4, h}}, {}),
         Rat(1) / two_ell);
    push("getzler", insertion_monomial(calc, 4, {{1, h}, {2, h}}, {{3, 4}}), 1);
    push("getzler", insertion_monomial(calc, 4, {}, {{1, 2}, {3, 4}}), 1);

    std::vector<BaseSymbol> unknowns = {
        BaseSymbol(KappaSymbol::make({h, h, h}, 0)),
        BaseSymbol(KappaSymbol::make({h}, 1)),
        BaseSymbol(ZSymbol{h}),
        BaseSymbol(LambdaSymbol{}),
    };
    QMatrix m(4, 4);
    for (int i = 0; i < 4; ++i) {
        for (const auto& [key, coeff] : steps[static_cast<size_t>(i)].pushed.terms()) {
            bool matched = false;
            if (key.symbols.size() == 1)
                for (int j = 0; j < 4; ++j)
                    if (key.symbols[0] == unknowns[static_cast<size_t>(j)]) {
                        m.at(i, j) += coeff;
                        matched = true;
                        break;
                    }
            if (!matched && !std::all_of(key.symbols.begin(), key.symbols.end(), is_nl_tag))
                throw ComputeError("footnote system: unexpected term "
                                   + symbol_product_to_string(key.symbols));
        }
    }
    return FootnoteSystem{m, m.det()};
}

} // namespace k3taut
