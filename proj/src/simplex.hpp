#pragma once

#include "excset/grassmann.hpp"

namespace excset::detail {

/// Largest eps in [0, 1] such that some y with |y|_inf <= 1 satisfies
/// <w_i, y> <= -eps for every row w_i of `rows`. Positive iff the rows lie
/// strictly inside an open half-space. Dense tableau simplex, Bland's rule.
double separation_margin(const Matrix& rows);

}  // namespace excset::detail
