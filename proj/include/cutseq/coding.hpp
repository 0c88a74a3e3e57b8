// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "cutseq/numfield.hpp"

namespace cutseq {

/// Direction of the flow on the 3-torus. All coordinates lie in one field
/// and are strictly positive; only ratios matter.
struct Direction3 {
    std::array<AlgebraicNumber, 3> w;

    /// Validates positivity (NonPositiveCoordinate) and field membership
    /// (FieldMismatch).
    static Direction3 make(AlgebraicNumber w1, AlgebraicNumber w2, AlgebraicNumber w3);

    const FieldPtr& field() const { return w[0].field(); }
    /// omega2 / omega1
    AlgebraicNumber alpha() const { return w[1] / w[0]; }
    /// omega3 / omega1
    AlgebraicNumber beta() const { return w[2] / w[0]; }
    /// Same direction scaled so that the first coordinate is 1.
    Direction3 normalized() const;
    /// Coordinates reordered: result.w[i] = w[perm[i]].
    Direction3 permuted(const std::array<int, 3>& perm) const;
    std::string to_string() const;
};

struct Point3 {
    std::array<AlgebraicNumber, 3> x;

    /// (1/7, 1/11, 1/13) in the given field.
    static Point3 default_start(const FieldPtr& field);
    Point3 permuted(const std::array<int, 3>& perm) const;
    std::string to_string() const;
};

struct Point2 {
    std::array<AlgebraicNumber, 2> x;

    /// (1/7, 1/11) in the given field.
    static Point2 default_start(const FieldPtr& field);
};

/// Finite prefix of a cutting sequence. Letters are 1..alphabet.
struct SymbolicWord {
    std::vector<std::uint8_t> letters;
    int alphabet = 3;
    std::string direction;
    std::string start;

    std::size_t length() const { return letters.size(); }
    /// Letters rendered as digits, e.g. "3121...".
    std::string str() const;
    static SymbolicWord from_string(const std::string& digits, int alphabet);
};

/// The orbit meets a lattice edge: two crossing times coincide.
class SingularOrbit : public Error {
public:
    SingularOrbit(AlgebraicNumber time, int family_a, int family_b);

    const AlgebraicNumber& time() const { return time_; }
    int family_a() const { return family_a_; }
    int family_b() const { return family_b_; }

private:
    AlgebraicNumber time_;
    int family_a_, family_b_;
};

/// First `length` letters of the coding of the ray m + t w, t > 0: letter i
/// when coordinate i crosses an integer. Throws SingularOrbit on a tie.
SymbolicWord cutting_word_3d(const Direction3& w, const Point3& m, std::size_t length);

/// Two-family analogue (square billiard / Sturmian coding).
SymbolicWord cutting_word_2d(const AlgebraicNumber& a, const AlgebraicNumber& b, const Point2& m, std::size_t length);

/// Letter counts divided by the length; one entry per letter of the alphabet.
std::vector<Rational> orbit_letter_frequencies(const SymbolicWord& word);

/// Documented finite sample of start points used for non-minimal directions:
/// the default start followed by (1/7 + j/17, 1/11 + j/19, 1/13 + j/23) mod 1.
std::vector<Point3> sample_start_points(const FieldPtr& field, std::size_t count);

}  // namespace cutseq
