#pragma once

// JSON forms of lattice elements, verdicts, witness sequences and flow
// summaries. Emitting, parsing and emitting again is byte-identical.

#include <string>

#include <json.hpp>

#include "weyl/classifier.hpp"
#include "weyl/flowsim.hpp"
#include "weyl/witness.hpp"

namespace weyl {

using Json = nlohmann::ordered_json;

/// {"d": d, "entries": [[u, v] x 4]} in the integral basis.
Json to_json(const QuadMatrix& m);
QuadMatrix quad_matrix_from_json(const Json& j);

/// [a, b, c, d].
Json to_json(const Mobius& m);
Mobius mobius_from_json(const Json& j);

Json to_json(const ProjMap& p);
ProjMap projmap_from_json(const Json& j);

/// Lattice element form when g has provenance, {"first", "second"} otherwise.
Json to_json(const GElem& g);
GElem gelem_from_json(const Json& j);

/// "inf" or a number. Exact algebraic data is not serialized.
Json to_json(const BPoint& p);
BPoint bpoint_from_json(const Json& j);

Json to_json(const FBoundaryPoint& p);
FBoundaryPoint fboundary_from_json(const Json& j);

Json to_json(const OrbitVerdict& v);
OrbitVerdict verdict_from_json(const Json& j);

Json to_json(const WitnessSequence& w);
WitnessSequence witness_from_json(const Json& j);

/// {visited_cells, max_excursion, min_return_distance, checkpoints}.
Json summary_json(const TrajectoryStats& s);

Json to_json(const HoroballReport& r);

/// Two-space indent plus a trailing newline.
std::string emit(const Json& j);

}  // namespace weyl
