#pragma once
#include "conelip/kernels.hpp"

namespace conelip::kernels {

const Table& scalar_table();

#if defined(CONELIP_HAVE_AVX2)
const Table& avx2_table();
#endif

}  // namespace conelip::kernels
