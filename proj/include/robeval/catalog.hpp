#pragma once
// The fixed catalog of 28 transformations across four families.

#include <vector>

#include "robeval/types.hpp"

namespace robeval {

// All 28 specs with their default parameters and deterministic flags.
const std::vector<TransformSpec>& catalog();

// Lookup by catalog name. Throws ValidationError listing the catalog when
// the name is unknown.
const TransformSpec& catalog_lookup(const std::string& name);

// All members of one family, in catalog order.
std::vector<TransformSpec> catalog_family(Family f);

}  // namespace robeval
