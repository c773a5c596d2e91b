#ifndef K3TAUT_REDUCER_HPP
#define K3TAUT_REDUCER_HPP

#include "k3taut/relations.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace k3taut {

/* One replayable proof step: which exported relation, which class, which
 * insertion, and the resulting pushed equation (an n = 0 expression that
 * sums to zero).  `scale` is the row normalization applied after the
 * push; `combo` is this step's coefficient in the linear combination
 * that isolates the certificate's target. */
struct CertStep {
    std::string relation; /* "wdvv" | "getzler" | "diagonal" | "c2" */
    Vec cls;              /* curve class for wdvv/getzler */
    std::optional<bool> effective_hint;
    std::vector<int> perm; /* factor relabeling; empty = identity */
    Monomial insertion;
    Rat scale = 1;
    TautExpression pushed;
    Rat combo = 0;
};

/* Proof that `target` lies in the Noether-Lefschetz subring: the recorded
 * linear combination of the step equations equals target + R with R
 * supported on NL classes, so target = nl_expression := -R. */
struct NLCertificate {
    BaseSymbol target;
    std::vector<CertStep> steps;
    TautExpression nl_expression;
    std::vector<BaseSymbol> deps; /* previously certified symbols used by R */
    std::string note;
};

class KnowledgeBase {
public:
    explicit KnowledgeBase(bool lambda_axiom = true) : lambda_axiom_(lambda_axiom) {}

    bool lambda_axiom() const { return lambda_axiom_; }
    bool has(const BaseSymbol& s) const { return certs_.count(s) != 0; }
    const NLCertificate& certificate(const BaseSymbol& s) const;
    void insert(NLCertificate cert);

    /* lambda (axiom), NL tags, and certified symbols. */
    bool symbol_certified(const BaseSymbol& s) const;
    /* A product is NL as soon as one factor is. */
    bool term_certified(const SymbolProduct& p) const;

    const std::map<BaseSymbol, NLCertificate, SymbolLess>& all() const { return certs_; }

private:
    bool lambda_axiom_;
    std::map<BaseSymbol, NLCertificate, SymbolLess> certs_;
};

/* Recompute a step's equation from scratch (full-mode exports, explicit
 * scaling); ignores the recorded `pushed`. */
TautExpression replay_step(const Calculus& calc, const CertStep& step);

/* Replays every step, re-checks the linear combination against the
 * target, and re-checks that the remainder is NL-only over kb.  Returns
 * false with a diff message on the first mismatch. */
bool verify_certificate(const Calculus& calc, const NLCertificate& cert, const KnowledgeBase& kb,
                        std::string* diff = nullptr);

/* The Noether-Lefschetz generation algorithm: induction on codimension
 * with an H-index induction inside each codimension. */
class Reducer {
public:
    explicit Reducer(Calculus calc, std::map<Vec, bool> effectivity_hints = {});

    const Calculus& calc() const { return calc_; }
    KnowledgeBase& kb() { return kb_; }
    const KnowledgeBase& kb() const { return kb_; }

    /* Certify one symbol (recursively certifying what it needs). */
    const NLCertificate& certify(const BaseSymbol& target);

    /* Divisorial kappa classes attached to l (the codimension-1 base of
     * the induction); returns the symbols certified. */
    std::vector<BaseSymbol> reduce_divisorial(const Vec& l);

    /* Certifies kappa_[H^2;1] and returns the c2 replacement identity
     * 2l c2 = 24 H^2 - kappa_[H^2;1] + NL as an n = 1 expression. */
    TautExpression eliminate_c2();

    const NLCertificate& reduce_kappa(const KappaSymbol& target);

    /* Inspection hooks for the verification suite. */
    QMatrix case_a_system(const Vec& l);                 /* 4 x 3, rows wdvv:DD, getzler:LLLL, getzler:LLD, getzler:DD */
    std::pair<QMatrix, Rat> case_c_system(const Vec& l); /* 3 x 3 and its determinant */
    Rat case_d_chain_coefficient(const Vec& l);          /* equals -10 * (2l) */

private:
    struct Equation {
        CertStep step;
        std::vector<Rat> coeffs; /* per unknown */
        TautExpression remainder;
    };

    CertStep make_step(const std::string& relation, const Vec& cls, const Monomial& insertion,
                       const Rat& scale);
    const TautExpression& relation_expr(const std::string& relation, const Vec& cls,
                                        std::optional<bool> hint);
    Equation extract(CertStep step, const std::vector<BaseSymbol>& unknowns,
                     bool allow_recursive_certify);
    NLCertificate combine(const BaseSymbol& target, const std::vector<Equation>& eqs,
                          const std::vector<Rat>& combo, const std::string& note);

    std::optional<bool> hint_for(const Vec& v) const;

    void certify_impl(const BaseSymbol& target);
    void run_case_a(const Vec& l);
    void run_case_c(const Vec& l);
    void run_case_d(const Vec& l);
    void run_case_b(const Vec& l);           /* kappa_[H^2,L;0], <L,L> > 0 */
    void run_case_e(const std::vector<Vec>& divisors);
    void run_kappa_h2c2();                   /* kappa_[H^2;1] */
    void run_c2_elimination(const KappaSymbol& target);
    void run_codim2(const KappaSymbol& target);
    void run_codim_high(const KappaSymbol& target);

    std::vector<Equation> case_d_equations(const Vec& l);
    std::vector<Rat> case_d_chain_combo(const Vec& l) const;

    Calculus calc_;
    KnowledgeBase kb_;
    std::map<Vec, bool> effectivity_hints_;
    std::set<BaseSymbol, SymbolLess> in_progress_;
    /* exported relations are deterministic in (relation, class); cache
     * them across the many insertions of one reduction */
    std::map<std::pair<std::string, Vec>, TautExpression> relation_cache_;
};

struct FootnoteSystem {
    QMatrix matrix; /* 4 x 4, columns kappa_[H^3;0], kappa_[H;1], Z(H), lambda */
    Rat det;
};

/* Keep-lambda system on the rank-1 lattice of the given degree; a
 * nonzero determinant certifies lambda in NL^1 for that degree. */
FootnoteSystem footnote_lambda_system(Int two_ell);

} // namespace k3taut

#endif
