#pragma once

namespace dvs::detail {

// Exact products of two 64-bit costs.
__extension__ using Wide = __int128;

}  // namespace dvs::detail
