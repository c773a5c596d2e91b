#ifndef K3TAUT_SYMBOLS_HPP
#define K3TAUT_SYMBOLS_HPP

#include "k3taut/lattice.hpp"
#include "k3taut/numeric.hpp"

#include <string>
#include <variant>
#include <vector>

namespace k3taut {

/* Opaque coefficient symbols living on the moduli base: the Hodge class
 * lambda, kappa classes, the genus-1 two-point divisor Z(L), and tags
 * for classes known only to be supported on Noether-Lefschetz loci. */

struct LambdaSymbol {
    bool operator==(const LambdaSymbol&) const { return true; }
    bool operator<(const LambdaSymbol&) const { return false; }
};

struct ZSymbol {
    Vec cls;
    bool operator==(const ZSymbol& o) const { return cls == o.cls; }
    bool operator<(const ZSymbol& o) const { return cls < o.cls; }
};

/* kappa_[L1^a1,...,Lk^ak; b]: classes kept sorted so equality is
 * syntactic; codim = sum a_i + 2b - 2. */
struct KappaSymbol {
    std::vector<std::pair<Vec, int>> classes; /* sorted by vector, exponents >= 1 */
    int c2 = 0;

    static KappaSymbol make(std::vector<Vec> divisors, int c2);
    int codim() const;
    int total_divisors() const;
    std::vector<Vec> divisor_list() const;

    bool operator==(const KappaSymbol& o) const { return classes == o.classes && c2 == o.c2; }
    bool operator<(const KappaSymbol& o) const
    {
        if (c2 != o.c2)
            return c2 < o.c2;
        return classes < o.classes;
    }
};

struct NLTagSymbol {
    std::string desc;
    int codim = 0;
    bool operator==(const NLTagSymbol& o) const { return desc == o.desc && codim == o.codim; }
    bool operator<(const NLTagSymbol& o) const
    {
        if (codim != o.codim)
            return codim < o.codim;
        return desc < o.desc;
    }
};

using BaseSymbol = std::variant<LambdaSymbol, ZSymbol, KappaSymbol, NLTagSymbol>;

int symbol_codim(const BaseSymbol& s);
bool symbol_less(const BaseSymbol& a, const BaseSymbol& b);
std::string symbol_to_string(const BaseSymbol& s);

struct SymbolLess {
    bool operator()(const BaseSymbol& a, const BaseSymbol& b) const { return symbol_less(a, b); }
};

inline bool is_lambda(const BaseSymbol& s) { return std::holds_alternative<LambdaSymbol>(s); }
inline bool is_nl_tag(const BaseSymbol& s) { return std::holds_alternative<NLTagSymbol>(s); }

/* Sorted multiset of base symbols. */
using SymbolProduct = std::vector<BaseSymbol>;

SymbolProduct symbol_product_merge(const SymbolProduct& a, const SymbolProduct& b);
int symbol_product_codim(const SymbolProduct& p);
bool symbol_product_less(const SymbolProduct& a, const SymbolProduct& b);
std::string symbol_product_to_string(const SymbolProduct& p);

} // namespace k3taut

#endif
