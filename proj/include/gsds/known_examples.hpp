#pragma once

// The two order-764 constructions: n = 191, H = <39>, and the coset index
// sets J_1..J_4 of each family.

#include "gsds/sds_core.hpp"
#include "gsds/sds_search.hpp"

namespace gsds::examples {

inline constexpr Residue kModulus = 191;
inline constexpr Residue kGenerator = 39;

const IndexSets& example1_index_sets();
const IndexSets& example2_index_sets();

const CosetTable& coset_table_191();
/// example is 1 or 2.
SdsFamily family(int example);

}  // namespace gsds::examples
