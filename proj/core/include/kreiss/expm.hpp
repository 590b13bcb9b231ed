// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "kreiss/types.hpp"

namespace kreiss
{

/// Matrix exponential by scaling and squaring with a diagonal Padé
/// approximant of degree 3, 5, 7, 9 or 13, selected from the 1-norm.
Matrix expm(const Matrix &a);

}  // namespace kreiss
