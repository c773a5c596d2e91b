#include "k3taut/calculus.hpp"

#include <algorithm>
#include <numeric>

namespace k3taut {

Monomial::Monomial(int n, std::vector<Block> blocks) : n_(n)
{
    std::vector<bool> used(static_cast<size_t>(n) + 1, false);
    for (Block& b : blocks) {
        std::sort(b.indices.begin(), b.indices.end());
        std::sort(b.data.divisors.begin(), b.data.divisors.end());
        for (int i : b.indices) {
            if (i < 1 || i > n)
                throw ValidationError("block index out of range");
            if (used[static_cast<size_t>(i)])
                throw ValidationError("blocks must be disjoint");
            used[static_cast<size_t>(i)] = true;
        }
        if (b.indices.size() == 1 && b.data.trivial())
            b.indices.clear(); /* implicit singleton */
    }
    blocks.erase(std::remove_if(blocks.begin(), blocks.end(),
                                [](const Block& b) { return b.indices.empty(); }),
                 blocks.end());
    std::sort(blocks.begin(), blocks.end(),
              [](const Block& a, const Block& b) { return a.indices.front() < b.indices.front(); });
    blocks_ = std::move(blocks);
}

int Monomial::codim() const
{
    int c = 0;
    for (const Block& b : blocks_)
        c += 2 * (static_cast<int>(b.indices.size()) - 1) + static_cast<int>(b.data.divisors.size())
             + 2 * b.data.c2;
    return c;
}

std::string Monomial::to_string() const
{
    std::string out = "{n=" + std::to_string(n_);
    for (const Block& b : blocks_) {
        out += " (";
        for (size_t i = 0; i < b.indices.size(); ++i) {
            if (i)
                out += ",";
            out += std::to_string(b.indices[i]);
        }
        out += ")";
        for (const Vec& d : b.data.divisors)
            out += vec_to_string(d);
        if (b.data.c2)
            out += "c2^" + std::to_string(b.data.c2);
    }
    return out + "}";
}

Monomial Monomial::divisor(int n, int factor, const Vec& v)
{
    return Monomial(n, {Block{{factor}, BlockData{{v}, 0}}});
}

Monomial Monomial::diagonal(int n, std::vector<int> indices)
{
    return Monomial(n, {Block{std::move(indices), BlockData{}}});
}

void TautExpression::add_term(const Monomial& shape, const SymbolProduct& symbols, const Rat& coeff)
{
    if (shape.n() != n_)
        throw ValidationError("term factor count does not match expression");
    if (coeff == 0)
        return;
    TermKey key{shape, symbols};
    auto [it, inserted] = terms_.try_emplace(key, coeff);
    if (!inserted) {
        it->second += coeff;
        if (it->second == 0)
            terms_.erase(it);
    }
}

void TautExpression::add(const TautExpression& o)
{
    if (o.n_ != n_)
        throw ValidationError("expression factor counts differ");
    for (const auto& [k, c] : o.terms_)
        add_term(k.shape, k.symbols, c);
}

TautExpression TautExpression::operator+(const TautExpression& o) const
{
    TautExpression r = *this;
    r.add(o);
    return r;
}

TautExpression TautExpression::operator-(const TautExpression& o) const
{
    TautExpression r = *this;
    r.add(o.scaled(-1));
    return r;
}

TautExpression TautExpression::scaled(const Rat& c) const
{
    TautExpression r(n_);
    if (c == 0)
        return r;
    for (const auto& [k, v] : terms_)
        r.terms_.emplace(k, v * c);
    return r;
}

Rat TautExpression::coefficient(const Monomial& shape, const SymbolProduct& symbols) const
{
    auto it = terms_.find(TermKey{shape, symbols});
    return it == terms_.end() ? Rat(0) : it->second;
}

CodimResult TautExpression::codim() const
{
    if (terms_.empty())
        return {CodimResult::Any, 0};
    std::optional<int> c;
    for (const auto& [k, v] : terms_) {
        int tc = k.shape.codim() + symbol_product_codim(k.symbols);
        if (!c)
            c = tc;
        else if (*c != tc)
            return {CodimResult::Mixed, 0};
    }
    return {CodimResult::Pure, *c};
}

std::string TautExpression::to_string() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto& [k, v] : terms_) {
        if (!out.empty())
            out += " + ";
        out += "(" + rat_to_string(v) + ")";
        if (!k.symbols.empty())
            out += "*" + symbol_product_to_string(k.symbols);
        if (!k.shape.trivial_shape())
            out += "*" + k.shape.to_string();
    }
    return out;
}

/* ------------------------------------------------------------------ */

KappaValue Calculus::kappa_evaluate(const std::vector<Vec>& divisors, int c2) const
{
    int codim = static_cast<int>(divisors.size()) + 2 * c2 - 2;
    if (codim < 0)
        return {Rat(0), std::nullopt};
    if (codim == 0) {
        if (c2 == 1)
            return {Rat(24), std::nullopt}; /* Euler number of a K3 fiber */
        return {Rat(pl_.pairing(divisors[0], divisors[1])), std::nullopt};
    }
    return {Rat(1), BaseSymbol(KappaSymbol::make(divisors, c2))};
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<size_t>(n))
    {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int x)
    {
        while (parent[static_cast<size_t>(x)] != x) {
            parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
            x = parent[static_cast<size_t>(x)];
        }
        return x;
    }
    void unite(int a, int b) { parent[static_cast<size_t>(find(a))] = find(b); }
};

bool has_tag(const SymbolProduct& p)
{
    return std::any_of(p.begin(), p.end(), is_nl_tag);
}

struct FoldedTag {
    SymbolProduct rest;
    std::string desc;
    int codim;
};

/* Folding an opaque NL-supported term: the shape cannot be evaluated
 * through the tag, so only the descriptor and the codimension
 * bookkeeping survive the push.  Keeping the descriptor free of the
 * shape makes pushes order-independent and equivariant under factor
 * relabeling; the provenance of a push lives in the certificate steps,
 * not in the symbol. */
FoldedTag fold_tag_symbols(const SymbolProduct& symbols, const Monomial& shape)
{
    FoldedTag f;
    f.codim = shape.codim();
    for (const auto& s : symbols) {
        if (is_nl_tag(s)) {
            const auto& t = std::get<NLTagSymbol>(s);
            if (!f.desc.empty())
                f.desc += "&";
            f.desc += t.desc;
            f.codim += t.codim;
        } else {
            f.rest.push_back(s);
        }
    }
    return f;
}

} // namespace

TautExpression Calculus::multiply(const TautExpression& a, const TautExpression& b) const
{
    if (a.n() != b.n())
        throw ValidationError("cannot multiply expressions with different factor counts");
    const int n = a.n();
    TautExpression out(n);
    for (const auto& [ka, ca] : a.terms()) {
        for (const auto& [kb, cb] : b.terms()) {
            UnionFind uf(n + 1);
            for (const Block& blk : ka.shape.blocks())
                for (size_t i = 1; i < blk.indices.size(); ++i)
                    uf.unite(blk.indices[0], blk.indices[i]);
            for (const Block& blk : kb.shape.blocks())
                for (size_t i = 1; i < blk.indices.size(); ++i)
                    uf.unite(blk.indices[0], blk.indices[i]);

            std::map<int, Block> joined;
            for (int i = 1; i <= n; ++i)
                joined[uf.find(i)].indices.push_back(i);
            std::map<int, int> excess_src; /* sum over contributing blocks of (size-1) */
            auto absorb = [&](const Monomial& shape) {
                for (const Block& blk : shape.blocks()) {
                    Block& dst = joined[uf.find(blk.indices[0])];
                    excess_src[uf.find(blk.indices[0])] +=
                        static_cast<int>(blk.indices.size()) - 1;
                    dst.data.c2 += blk.data.c2;
                    dst.data.divisors.insert(dst.data.divisors.end(), blk.data.divisors.begin(),
                                             blk.data.divisors.end());
                }
            };
            absorb(ka.shape);
            absorb(kb.shape);

            std::vector<Block> blocks;
            for (auto& [root, blk] : joined) {
                int excess = excess_src[root] - (static_cast<int>(blk.indices.size()) - 1);
                blk.data.c2 += excess;
                if (blk.indices.size() >= 2 || !blk.data.trivial())
                    blocks.push_back(std::move(blk));
            }
            out.add_term(Monomial(n, std::move(blocks)),
                         symbol_product_merge(ka.symbols, kb.symbols), ca * cb);
        }
    }
    return out;
}

TautExpression Calculus::insert(const TautExpression& e, const Monomial& m) const
{
    return multiply(e, from_monomial(e.n(), m));
}

TautExpression Calculus::push_drop_factor(const TautExpression& e, int j) const
{
    if (j < 1 || j > e.n())
        throw ValidationError("push index out of range");
    const int n = e.n();
    TautExpression out(n - 1);
    for (const auto& [key, coeff] : e.terms()) {
        if (has_tag(key.symbols)) {
            FoldedTag f = fold_tag_symbols(key.symbols, key.shape);
            SymbolProduct rest = std::move(f.rest);
            rest.push_back(BaseSymbol(NLTagSymbol{f.desc, f.codim - 2}));
            std::sort(rest.begin(), rest.end(), symbol_less);
            out.add_term(Monomial(n - 1), rest, coeff);
            continue;
        }
        Rat c = coeff;
        SymbolProduct symbols = key.symbols;
        std::vector<Block> blocks;
        bool in_block = false;
        for (const Block& blk : key.shape.blocks()) {
            auto it = std::find(blk.indices.begin(), blk.indices.end(), j);
            if (it == blk.indices.end()) {
                Block nb = blk;
                for (int& idx : nb.indices)
                    if (idx > j)
                        --idx;
                blocks.push_back(std::move(nb));
                continue;
            }
            in_block = true;
            if (blk.indices.size() == 1) {
                KappaValue kv = kappa_evaluate(blk.data.divisors, blk.data.c2);
                c *= kv.scalar;
                if (kv.symbol) {
                    symbols.push_back(*kv.symbol);
                    std::sort(symbols.begin(), symbols.end(), symbol_less);
                }
            } else {
                Block nb = blk;
                nb.indices.erase(std::find(nb.indices.begin(), nb.indices.end(), j));
                for (int& idx : nb.indices)
                    if (idx > j)
                        --idx;
                blocks.push_back(std::move(nb));
            }
        }
        if (!in_block)
            continue; /* bare factor: positive-dimensional fibers, pushes to 0 */
        if (c == 0)
            continue;
        out.add_term(Monomial(n - 1, std::move(blocks)), symbols, c);
    }
    return out;
}

TautExpression Calculus::push_to_base(const TautExpression& e) const
{
    TautExpression cur = e;
    while (cur.n() > 0)
        cur = push_drop_factor(cur, cur.n());
    return cur;
}

TautExpression Calculus::permute_factors(const TautExpression& e, const std::vector<int>& perm) const
{
    const int n = e.n();
    if (static_cast<int>(perm.size()) != n)
        throw ValidationError("permutation size mismatch");
    std::vector<bool> seen(static_cast<size_t>(n) + 1, false);
    for (int p : perm) {
        if (p < 1 || p > n || seen[static_cast<size_t>(p)])
            throw ValidationError("not a permutation");
        seen[static_cast<size_t>(p)] = true;
    }
    TautExpression out(n);
    for (const auto& [key, coeff] : e.terms()) {
        std::vector<Block> blocks;
        for (const Block& blk : key.shape.blocks()) {
            Block nb = blk;
            for (int& idx : nb.indices)
                idx = perm[static_cast<size_t>(idx - 1)];
            blocks.push_back(std::move(nb));
        }
        out.add_term(Monomial(n, std::move(blocks)), key.symbols, coeff);
    }
    return out;
}

TautExpression Calculus::from_monomial(int n, const Monomial& m, const Rat& coeff,
                                       const SymbolProduct& symbols) const
{
    TautExpression e(n);
    e.add_term(m, symbols, coeff);
    return e;
}

} // namespace k3taut
