#include "k3taut/symbols.hpp"

#include <algorithm>
#include <map>

namespace k3taut {

KappaSymbol KappaSymbol::make(std::vector<Vec> divisors, int c2)
{
    std::map<Vec, int> mult;
    for (auto& d : divisors)
        ++mult[d];
    KappaSymbol k;
    k.c2 = c2;
    k.classes.assign(mult.begin(), mult.end());
    return k;
}

int KappaSymbol::codim() const
{
    return total_divisors() + 2 * c2 - 2;
}

int KappaSymbol::total_divisors() const
{
    int t = 0;
    for (const auto& [v, a] : classes)
        t += a;
    return t;
}

std::vector<Vec> KappaSymbol::divisor_list() const
{
    std::vector<Vec> out;
    for (const auto& [v, a] : classes)
        for (int i = 0; i < a; ++i)
            out.push_back(v);
    return out;
}

int symbol_codim(const BaseSymbol& s)
{
    if (std::holds_alternative<LambdaSymbol>(s))
        return 1;
    if (std::holds_alternative<ZSymbol>(s))
        return 1;
    if (const auto* k = std::get_if<KappaSymbol>(&s))
        return k->codim();
    return std::get<NLTagSymbol>(s).codim;
}

bool symbol_less(const BaseSymbol& a, const BaseSymbol& b)
{
    if (a.index() != b.index())
        return a.index() < b.index();
    return std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            return x < std::get<T>(b);
        },
        a);
}

std::string symbol_to_string(const BaseSymbol& s)
{
    if (std::holds_alternative<LambdaSymbol>(s))
        return "lambda";
    if (const auto* z = std::get_if<ZSymbol>(&s))
        return "Z(" + vec_to_string(z->cls) + ")";
    if (const auto* k = std::get_if<KappaSymbol>(&s)) {
        std::string out = "kappa[";
        bool first = true;
        for (const auto& [v, a] : k->classes) {
            if (!first)
                out += ",";
            first = false;
            out += vec_to_string(v);
            if (a > 1)
                out += "^" + std::to_string(a);
        }
        return out + ";" + std::to_string(k->c2) + "]";
    }
    const auto& t = std::get<NLTagSymbol>(s);
    return "NL{" + t.desc + ";codim " + std::to_string(t.codim) + "}";
}

SymbolProduct symbol_product_merge(const SymbolProduct& a, const SymbolProduct& b)
{
    SymbolProduct out;
    out.reserve(a.size() + b.size());
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), symbol_less);
    return out;
}

int symbol_product_codim(const SymbolProduct& p)
{
    int c = 0;
    for (const auto& s : p)
        c += symbol_codim(s);
    return c;
}

bool symbol_product_less(const SymbolProduct& a, const SymbolProduct& b)
{
    return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), symbol_less);
}

std::string symbol_product_to_string(const SymbolProduct& p)
{
    if (p.empty())
        return "1";
    std::string out;
    for (size_t i = 0; i < p.size(); ++i) {
        if (i)
            out += "*";
        out += symbol_to_string(p[i]);
    }
    return out;
}

} // namespace k3taut
