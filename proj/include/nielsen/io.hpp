#pragma once

#include <string>

#include "json.hpp"
#include "nielsen/chain.hpp"
#include "nielsen/cw.hpp"
#include "nielsen/group.hpp"
#include "nielsen/group_ring.hpp"
#include "nielsen/matrix.hpp"

namespace nielsen::io {

using Json = nlohmann::ordered_json;

/// Every file carries "schema": "1".
inline constexpr const char* schema_version = "1";

/// Parse text or a file; ParseError on malformed JSON or a wrong schema tag.
Json parse_document(const std::string& text);
Json read_document(const std::string& path);

/// {"kind": "free"|"free_abelian", "rank": n}, {"kind": "cyclic", "order": n},
/// {"kind": "symmetric", "n": n}, {"kind": "trivial"} or
/// {"kind": "finite", "names": [...], "table": [[...]]}.
Group parse_group(const Json& j);
/// Signed generator list for free and free abelian groups, index or name for
/// finite groups; "e" is the identity everywhere.
GroupElement parse_element(const Json& j, const Group& g);
/// "Z", "Q", "Z/6" or {"coefficients": ..., "group": {...}}.
GroupRing parse_ring(const Json& j);
/// Integer/rational scalar or a list of [coefficient, element] terms.
GroupRingElement parse_ring_element(const Json& j, const GroupRing& r);
RingMatrix parse_entries(const Json& entries, const GroupRing& r, std::size_t rows, std::size_t cols);
/// {"ring", "rows", "cols", "entries"}.
RingMatrix parse_matrix(const Json& j);
/// {"images": [...]} (one per generator, or per element for finite groups)
/// or {"matrix": [[...]]} for free abelian groups; identity when absent.
GroupHomomorphism parse_endomorphism(const Json& j, const Group& g);

CWComplex2 parse_complex(const Json& j);
GroupTarget parse_target(const Json& j);
CWSelfMap parse_self_map(const Json& j, const GroupRing& r);
/// {"ring", "ranks", "boundaries": [entries...]}.
TwistedChainComplex parse_chain_complex(const Json& j);
/// {"phi", "matrices": [entries...]} over the complex's ring.
TwistedChainMap parse_chain_map(const Json& j, const TwistedChainComplex& c);
/// {"group", "images"}: a quotient map out of `source`.
GroupHomomorphism parse_quotient(const Json& j, const Group& source);

Json to_json(const Rational& r);
Json to_json(const ShadowElement& s);
Json to_json(const RingMatrix& m);
Json to_json(const EdgePath& p);

}  // namespace nielsen::io
