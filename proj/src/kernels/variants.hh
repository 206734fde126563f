#pragma once

#include <tourhom/kernels.hh>

namespace tourhom::kernels::detail
{
    // Each returns nullptr when the variant is not built for this target.
    auto avx2_table() -> const Table *;
    auto neon_table() -> const Table *;
}
