#ifndef K3TAUT_JSON_IO_HPP
#define K3TAUT_JSON_IO_HPP

#include "k3taut/qseries.hpp"
#include "k3taut/reducer.hpp"
#include "k3taut/relations.hpp"

#include <json.hpp>

namespace k3taut {

using json = nlohmann::json;

json vec_to_json(const Vec& v);
Vec vec_from_json(const json& j);

/* { "gram": [[...]], "h": [...] } */
json lattice_to_json(const PolarizedLattice& pl);
PolarizedLattice lattice_from_json(const json& j);

/* coefficients as exact "num/den" strings */
json series_to_json(const RationalQSeries& s);

json symbol_to_json(const BaseSymbol& s);
BaseSymbol symbol_from_json(const json& j);

json monomial_to_json(const Monomial& m);
Monomial monomial_from_json(const json& j);

json expression_to_json(const TautExpression& e);
TautExpression expression_from_json(const json& j);

json report_to_json(const RelationReport& r);

json certificate_to_json(const NLCertificate& c);
NLCertificate certificate_from_json(const json& j);

/* Self-contained proof bundle: lattice, dependency-ordered certificates,
 * and the target symbol. */
json bundle_to_json(const PolarizedLattice& pl, const KnowledgeBase& kb, const BaseSymbol& target);

/* { "classes": [[...], ...], "c2": b } with repetitions spelled out. */
KappaSymbol kappa_spec_from_json(const json& j);

} // namespace k3taut

#endif
