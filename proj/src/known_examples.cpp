#include "gsds/known_examples.hpp"

#include <stdexcept>

namespace gsds::examples {

const IndexSets& example1_index_sets() {
    static const IndexSets j{{
        {1, 7, 9, 10, 11, 13, 17, 18, 25, 26, 30, 31, 33, 34, 35, 36, 37},
        {1, 4, 7, 9, 11, 12, 13, 14, 19, 21, 22, 23, 24, 25, 26, 29, 36, 37},
        {0, 3, 4, 5, 7, 8, 9, 16, 17, 19, 24, 25, 29, 30, 31, 33, 35, 37},
        {1, 3, 4, 5, 8, 11, 14, 18, 19, 20, 21, 23, 24, 25, 28, 29, 30, 32, 34, 35},
    }};
    return j;
}

const IndexSets& example2_index_sets() {
    static const IndexSets j{{
        {0, 1, 6, 8, 9, 11, 12, 16, 18, 20, 21, 23, 28, 31, 33, 36, 37},
        {0, 1, 3, 4, 10, 12, 13, 17, 20, 22, 24, 31, 32, 33, 34, 35, 36, 37},
        {4, 8, 9, 10, 12, 13, 14, 16, 17, 20, 21, 24, 26, 27, 29, 31, 32, 34},
        {1, 7, 9, 10, 11, 12, 14, 15, 16, 17, 20, 22, 23, 25, 28, 29, 32, 33, 34, 37},
    }};
    return j;
}

const CosetTable& coset_table_191() {
    static const CosetTable t = coset_table_build(subgroup_generate(PrimeModulus(kModulus), kGenerator));
    return t;
}

SdsFamily family(int example) {
    switch (example) {
        case 1: return family_from_cosets(coset_table_191(), example1_index_sets());
        case 2: return family_from_cosets(coset_table_191(), example2_index_sets());
        default: throw std::invalid_argument("example must be 1 or 2");
    }
}

}  // namespace gsds::examples
