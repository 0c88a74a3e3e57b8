// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <string>
#include <string_view>

#include "cutseq/coding.hpp"

namespace cutseq {

/// Parses a direction such as
///   (1, sqrt2, sqrt3)
///   (1, 2/3, 5/7)
///   (1, 1/t, 1/(1-t)) in field t^3+t-1 @ [0.6, 0.7]
///   (1, root(x^3+x-1, [0.6, 0.7]), 2)
///
/// Without a field clause the field is inferred: rationals only give Q;
/// sqrt2, sqrt3 and sqrt(n) with squarefree part 2, 3 or 6 embed into
/// Q(sqrt2 + sqrt3), root of x^4 - 10x^2 + 1; a single other squarefree
/// part m gives Q(sqrt m); root(p, [lo, hi]) gives Q(theta) for that root.
/// Values are exact. Throws ParseError (with position and expected tokens),
/// InvalidField, NonPositiveCoordinate.
Direction3 parse_direction(std::string_view text);

/// Parses "(x, y, z)" into `field`. The generator name of the field and, where
/// the field contains them, sqrt(n) are available. A trailing field clause
/// must name the same field.
Point3 parse_point(std::string_view text, const FieldPtr& field);

/// Text that parse_direction maps back to the same exact values.
std::string format_direction(const Direction3& w);

}  // namespace cutseq
