// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cutseq/coding.hpp"
#include "json.hpp"

namespace cutseq {

/// How an exact integer coordinate is floored.
enum class BoundarySide {
    Reject,  // throw BoundaryAmbiguity
    Lower,   // the point belongs to the cell above: floor(k) = k
    Upper,   // the point belongs to the cell below: floor(k) = k - 1
};

/// Floor sum of the coordinates.
Integer edge_combinatorial_length(const Point3& p, BoundarySide side = BoundarySide::Reject);

/// Unit lattice segment parallel to axis `type` (1, 2 or 3). `base` holds the
/// two fixed integer coordinates and, on the free axis, the lower end.
struct LatticeEdge {
    int type = 1;
    std::array<Integer, 3> base;

    std::string to_string() const;
    nlohmann::json to_json() const;
};

/// Segment of direction w from a point of `start_edge` to a point of
/// `end_edge`. Start edges are normalised to the edge of type i through the
/// origin. When the segment meets a third edge in its interior, that edge is
/// recorded in `passes_through` and the record is not a proper diagonal.
struct DiagonalRecord {
    LatticeEdge start_edge;
    LatticeEdge end_edge;
    std::optional<LatticeEdge> passes_through;
    AlgebraicNumber start_offset;  // position on the free axis of the start edge
    AlgebraicNumber travel_time;   // end point = start point + travel_time * w
    Integer combinatorial_length;

    nlohmann::json to_json() const;
};

struct DiagonalCount {
    std::size_t n = 0;
    /// Proper diagonals: segments meeting exactly two edges.
    std::size_t proper = 0;
    /// Lines through three edges, recorded once each.
    std::size_t triple = 0;
    std::vector<DiagonalRecord> records;

    nlohmann::json to_json() const;
};

/// Diagonals of combinatorial length n. Requires a minimal direction
/// (1, alpha, beta independent), else NotMinimal. n = 0 gives no records.
DiagonalCount count_diagonals(const Direction3& w, std::size_t n);

/// Same for every n in 0..n_max, sharing the enumeration.
std::vector<DiagonalCount> count_diagonals_up_to(const Direction3& w, std::size_t n_max);

/// Sign of x(type-2 edge) - x(type-3 edge), which fixes the traversal sense.
enum class Orientation { NonNegative, NonPositive };

struct EdgeOrder {
    std::array<int, 3> types;  // edge types in order of increasing time
    std::array<AlgebraicNumber, 3> times;
    std::string tag() const;   // e.g. "3;1;2"
};

/// Crossing order of the three edges met by a line of direction w whose
/// type-1 edge sits at time 0. `relation` = (A, B, C) with
/// A/w1 + B/w2 + C/w3 = 0; when absent it is taken from the exact kernel of
/// (1/w1, 1/w2, 1/w3). Throws NoTripleLine when no such line exists.
EdgeOrder edge_order_check(const Direction3& w, const std::optional<IntVector>& relation,
                           Orientation orientation = Orientation::NonNegative);

/// Crossing indices n along the orbit of the origin at which the crossed face
/// belongs to family `lone` (1-based) and the face index is a multiple of A.
/// The index is the combinatorial length of the crossing point.
std::vector<std::size_t> zero_increment_prediction(const Direction3& w, int lone, const Integer& A, std::size_t n_max);

}  // namespace cutseq
