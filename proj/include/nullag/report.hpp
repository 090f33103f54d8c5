#pragma once

#include "nullag/construct.hpp"
#include "nullag/domain.hpp"
#include "nullag/equivalence.hpp"
#include "nullag/errors.hpp"
#include "nullag/numint.hpp"
#include "nullag/systems.hpp"
#include "nullag/variational.hpp"

#include <json.hpp>

#include <iosfwd>
#include <string>
#include <vector>

namespace nullag {

inline constexpr const char* kVersion = "0.1.0";

using json = nlohmann::ordered_json;

json to_json(const Witness& w);
json to_json(const EquivalenceReport& r);
json to_json(const NullityReport& r);
json to_json(const NullPair& np);
json to_json(const EquationOfMotion& eom);
json to_json(const SystemCase& c);
json to_json(const DriftReport& d);
json to_json(const Deviation& d);
json to_json(const AuditEntry& a);
json to_json(const Error& e);
json to_json(const Domain& d);

/// Corpus record:
///   {"name": ..., "kind": "generating", "B": ..., "f": ..., "domain": {...}}
///   {"name": ..., "kind": "fraction", "f1": ..., "f2": ..., "f3": ..., "f4": ..., "f": ..., "domain": {...}}
/// "f" and "domain" are optional. Domain keys: x, t, xdot, xddot, params as
/// [lo, hi]; fixed as {name: "rational"}; guards as [{"expr": ..., "kind":
/// "nonzero" | "positive"}]. Throws invalid_argument or a parse error.
CorpusEntry corpus_entry_from_json(const json& j);
json to_json(const CorpusEntry& e);
Domain domain_from_json(const json& j);

/// One record per non-blank line; lines starting with '#' are skipped.
std::vector<CorpusEntry> load_corpus(std::istream& in);

}  // namespace nullag
