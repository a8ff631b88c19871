#pragma once

#include "lefkit/models.hpp"

#include <json.hpp>

namespace lefkit {

using Json = nlohmann::json;

// scalars, matrices, graded data
Json rat_to_json(const Rat& r);
Rat rat_from_json(const Json& j);
Json matrix_to_json(const RatMatrix& m);
RatMatrix matrix_from_json(const Json& j);
Json dims_to_json(const GradedSpace& s);
GradedSpace dims_from_json(const Json& j);
Json blocks_to_json(const std::map<int, RatMatrix>& blocks);
std::map<int, RatMatrix> blocks_from_json(const Json& j);
Json map_to_json(const GradedMap& f);
GradedMap map_from_json(const Json& j, int shift);
Json pairing_to_json(const GradedPairing& p);
GradedPairing pairing_from_json(const Json& j);
Json family_to_json(const std::map<int, Subspace>& fam);
std::map<int, Subspace> family_from_json(const Json& j, const GradedSpace& ambient);
Json cycle_to_json(const Cycle& z);
Cycle cycle_from_json(const Json& j);

// documents; every document carries "lefkit_schema": 1 and a "type" tag
Json module_to_json(const LefschetzModule& m);
LefschetzModule module_from_json(const Json& j);
Json subspace_family_to_json(const std::map<int, Subspace>& fam);
Json exact_sequence_to_json(const ExactSequence& s);
ExactSequence exact_sequence_from_json(const Json& j);
Json filtered_to_json(const FilteredLefschetzModule& f);
FilteredLefschetzModule filtered_from_json(const Json& j);
Json special_fiber_to_json(const SpecialFiberData& f);
SpecialFiberData special_fiber_from_json(const Json& j);
Json local_model_to_json(const LocalModel& m);
LocalModel local_model_from_json(const Json& j);
Json arakelov_to_json(const ArakelovData& d);
ArakelovData arakelov_from_json(const Json& j);

/// Wraps a document body with the schema tag and type marker.
Json make_document(const std::string& type, Json body);

/// Validates the schema tag and returns the "type" field.
std::string document_type(const Json& j);

} // namespace lefkit
