#include "k3taut/json_io.hpp"

#include <algorithm>
#include <functional>
#include <set>

namespace k3taut {

json vec_to_json(const Vec& v)
{
    return json(v);
}

Vec vec_from_json(const json& j)
{
    if (!j.is_array())
        throw ValidationError("vector must be a JSON array of integers");
    Vec v;
    for (const auto& c : j) {
        if (!c.is_number_integer())
            throw ValidationError("vector entries must be integers");
        v.push_back(c.get<Int>());
    }
    return v;
}

json lattice_to_json(const PolarizedLattice& pl)
{
    json gram = json::array();
    for (int i = 0; i < pl.rank(); ++i) {
        json row = json::array();
        for (int j = 0; j < pl.rank(); ++j)
            row.push_back(pl.lattice().gram(i, j));
        gram.push_back(row);
    }
    return json{{"gram", gram}, {"h", vec_to_json(pl.h())}};
}

PolarizedLattice lattice_from_json(const json& j)
{
    if (!j.is_object() || !j.contains("gram") || !j.contains("h"))
        throw ValidationError("lattice JSON needs \"gram\" and \"h\"");
    std::vector<std::vector<Int>> gram;
    for (const auto& row : j.at("gram")) {
        std::vector<Int> r;
        for (const auto& c : row) {
            if (!c.is_number_integer())
                throw ValidationError("gram entries must be integers");
            r.push_back(c.get<Int>());
        }
        gram.push_back(std::move(r));
    }
    return PolarizedLattice(BilinearLattice(std::move(gram)), vec_from_json(j.at("h")));
}

json series_to_json(const RationalQSeries& s)
{
    json coeffs = json::array();
    for (int e = s.lead(); e <= s.order(); ++e)
        coeffs.push_back(rat_to_string(s.coefficient(e)));
    return json{{"lead", s.lead()}, {"order", s.order()}, {"coefficients", coeffs}};
}

json symbol_to_json(const BaseSymbol& s)
{
    if (is_lambda(s))
        return json{{"kind", "lambda"}};
    if (const auto* z = std::get_if<ZSymbol>(&s))
        return json{{"kind", "Z"}, {"class", vec_to_json(z->cls)}};
    if (const auto* k = std::get_if<KappaSymbol>(&s)) {
        json classes = json::array();
        for (const auto& [v, a] : k->classes)
            classes.push_back(json{{"class", vec_to_json(v)}, {"power", a}});
        return json{{"kind", "kappa"}, {"classes", classes}, {"c2", k->c2}};
    }
    const auto& t = std::get<NLTagSymbol>(s);
    return json{{"kind", "nl-tag"}, {"desc", t.desc}, {"codim", t.codim}};
}

BaseSymbol symbol_from_json(const json& j)
{
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "lambda")
        return BaseSymbol(LambdaSymbol{});
    if (kind == "Z")
        return BaseSymbol(ZSymbol{vec_from_json(j.at("class"))});
    if (kind == "kappa") {
        std::vector<Vec> divisors;
        for (const auto& c : j.at("classes")) {
            Vec v = vec_from_json(c.at("class"));
            int a = c.at("power").get<int>();
            for (int i = 0; i < a; ++i)
                divisors.push_back(v);
        }
        return BaseSymbol(KappaSymbol::make(divisors, j.at("c2").get<int>()));
    }
    if (kind == "nl-tag")
        return BaseSymbol(NLTagSymbol{j.at("desc").get<std::string>(), j.at("codim").get<int>()});
    throw ValidationError("unknown symbol kind: " + kind);
}

json monomial_to_json(const Monomial& m)
{
    json blocks = json::array();
    std::set<int> covered;
    for (const Block& b : m.blocks()) {
        json divisors = json::array();
        for (const Vec& v : b.data.divisors)
            divisors.push_back(vec_to_json(v));
        json indices = json::array();
        for (int i : b.indices) {
            indices.push_back(i);
            covered.insert(i);
        }
        blocks.push_back(json{{"indices", indices}, {"divisors", divisors}, {"c2", b.data.c2}});
    }
    json partition = json::array();
    for (const Block& b : m.blocks()) {
        json part = json::array();
        for (int i : b.indices)
            part.push_back(i);
        partition.push_back(part);
    }
    for (int i = 1; i <= m.n(); ++i)
        if (!covered.count(i))
            partition.push_back(json::array({i}));
    return json{{"n", m.n()}, {"partition", partition}, {"blocks", blocks}};
}

Monomial monomial_from_json(const json& j)
{
    int n = j.at("n").get<int>();
    std::vector<Block> blocks;
    for (const auto& b : j.at("blocks")) {
        Block blk;
        for (const auto& i : b.at("indices"))
            blk.indices.push_back(i.get<int>());
        for (const auto& d : b.at("divisors"))
            blk.data.divisors.push_back(vec_from_json(d));
        blk.data.c2 = b.at("c2").get<int>();
        blocks.push_back(std::move(blk));
    }
    return Monomial(n, std::move(blocks));
}

json expression_to_json(const TautExpression& e)
{
    json terms = json::array();
    for (const auto& [key, coeff] : e.terms()) {
        json symbols = json::array();
        for (const auto& s : key.symbols)
            symbols.push_back(symbol_to_json(s));
        terms.push_back(json{{"shape", monomial_to_json(key.shape)},
                             {"symbols", symbols},
                             {"coeff", rat_to_string(coeff)}});
    }
    return json{{"n", e.n()}, {"terms", terms}};
}

TautExpression expression_from_json(const json& j)
{
    TautExpression e(j.at("n").get<int>());
    for (const auto& t : j.at("terms")) {
        SymbolProduct symbols;
        for (const auto& s : t.at("symbols"))
            symbols.push_back(symbol_from_json(s));
        std::sort(symbols.begin(), symbols.end(), symbol_less);
        e.add_term(monomial_from_json(t.at("shape")), symbols,
                   rat_from_string(t.at("coeff").get<std::string>()));
    }
    return e;
}

json report_to_json(const RelationReport& r)
{
    json dropped = json::array();
    for (const auto& d : r.dropped_nl_terms)
        dropped.push_back(json{{"kind", d.kind}, {"desc", d.desc}, {"part", expression_to_json(d.part)}});
    json splits = json::array();
    for (const auto& sp : r.splits)
        splits.push_back(json{{"l1", vec_to_json(sp.l1)}, {"l2", vec_to_json(sp.l2)}});
    json undecidable = json::array();
    for (const auto& sp : r.undecidable_splits)
        undecidable.push_back(json{{"l1", vec_to_json(sp.l1)}, {"l2", vec_to_json(sp.l2)}});
    return json{{"expression", expression_to_json(r.expr)},
                {"dropped_nl_terms", dropped},
                {"splits", splits},
                {"undecidable_splits", undecidable},
                {"triple_splits_used", r.triple_splits_used},
                {"triple_splits_skipped", r.triple_splits_skipped}};
}

json certificate_to_json(const NLCertificate& c)
{
    json steps = json::array();
    for (const CertStep& s : c.steps) {
        json step{{"relation", s.relation},
                  {"class", vec_to_json(s.cls)},
                  {"insertion", monomial_to_json(s.insertion)},
                  {"scale", rat_to_string(s.scale)},
                  {"pushed", expression_to_json(s.pushed)},
                  {"solve", json{{"combine", rat_to_string(s.combo)}}}};
        if (s.effective_hint)
            step["effective_hint"] = *s.effective_hint;
        if (!s.perm.empty())
            step["perm"] = json(s.perm);
        steps.push_back(std::move(step));
    }
    json deps = json::array();
    for (const auto& d : c.deps)
        deps.push_back(symbol_to_json(d));
    return json{{"target", symbol_to_json(c.target)},
                {"steps", steps},
                {"nl_expression", expression_to_json(c.nl_expression)},
                {"deps", deps},
                {"note", c.note}};
}

NLCertificate certificate_from_json(const json& j)
{
    NLCertificate c;
    c.target = symbol_from_json(j.at("target"));
    for (const auto& s : j.at("steps")) {
        CertStep step;
        step.relation = s.at("relation").get<std::string>();
        step.cls = vec_from_json(s.at("class"));
        step.insertion = monomial_from_json(s.at("insertion"));
        step.scale = rat_from_string(s.at("scale").get<std::string>());
        step.pushed = expression_from_json(s.at("pushed"));
        step.combo = rat_from_string(s.at("solve").at("combine").get<std::string>());
        if (s.contains("effective_hint"))
            step.effective_hint = s.at("effective_hint").get<bool>();
        if (s.contains("perm"))
            for (const auto& p : s.at("perm"))
                step.perm.push_back(p.get<int>());
        c.steps.push_back(std::move(step));
    }
    c.nl_expression = expression_from_json(j.at("nl_expression"));
    for (const auto& d : j.at("deps"))
        c.deps.push_back(symbol_from_json(d));
    c.note = j.value("note", std::string());
    return c;
}

json bundle_to_json(const PolarizedLattice& pl, const KnowledgeBase& kb, const BaseSymbol& target)
{
    /* Dependency-first ordering via depth-first search. */
    std::vector<json> ordered;
    std::set<BaseSymbol, SymbolLess> done;
    std::function<void(const BaseSymbol&)> visit = [&](const BaseSymbol& s) {
        if (done.count(s) || !kb.has(s))
            return;
        done.insert(s);
        const NLCertificate& cert = kb.certificate(s);
        for (const BaseSymbol& d : cert.deps)
            visit(d);
        ordered.push_back(certificate_to_json(cert));
    };
    visit(target);
    return json{{"lattice", lattice_to_json(pl)},
                {"target", symbol_to_json(target)},
                {"certificates", ordered}};
}

KappaSymbol kappa_spec_from_json(const json& j)
{
    std::vector<Vec> divisors;
    for (const auto& c : j.at("classes"))
        divisors.push_back(vec_from_json(c));
    int c2 = j.value("c2", 0);
    if (c2 < 0)
        throw ValidationError("c2 power must be nonnegative");
    return KappaSymbol::make(divisors, c2);
}

} // namespace k3taut
