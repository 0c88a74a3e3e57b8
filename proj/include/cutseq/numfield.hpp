// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>

#include <memory>
#include <mutex>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutseq/errors.hpp"

namespace cutseq {

using Integer = mpz_class;
using Rational = mpq_class;

/// Closed interval with exact rational endpoints.
struct RationalInterval {
    Rational lo, hi;

    bool contains(const Rational& v) const { return lo <= v && v <= hi; }
    bool excludes_zero() const { return sgn(lo) > 0 || sgn(hi) < 0; }
    Rational width() const { return hi - lo; }
    RationalInterval intersect(const RationalInterval& o) const;

    friend RationalInterval operator+(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator-(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator*(const RationalInterval& a, const RationalInterval& b);
    friend RationalInterval operator*(const RationalInterval& a, const Rational& c);
};

/// num/den in lowest terms.
inline Rational make_rational(long num, long den) {
    Rational q(num, den);
    q.canonicalize();
    return q;
}

/// Parses "3", "-7/2" or "0.125" into an exact rational.
Rational parse_rational(std::string_view text);

/// Floor of a rational as an integer.
Integer floor_rational(const Rational& q);

class NumberField;
using FieldPtr = std::shared_ptr<const NumberField>;

/// A real number field Q(theta) given by the monic integer minimal polynomial
/// of theta and a rational interval isolating theta among the real roots.
///
/// The root enclosure is refined by bisection on demand; refinement is
/// guarded by a mutex and only ever shrinks the stored interval.
class NumberField {
public:
    /// `min_poly` lists coefficients from the constant term upward and must be
    /// monic. Throws InvalidField when the polynomial is not monic, not
    /// irreducible (checked for degree <= 4), or the interval does not isolate
    /// exactly one real root.
    static FieldPtr create(std::vector<Integer> min_poly, RationalInterval isolating,
                           std::string generator = "t");

    /// Q itself, presented as Q(0) with minimal polynomial x.
    static FieldPtr rationals();

    /// Q(sqrt2, sqrt3) = Q(theta) with theta = sqrt2 + sqrt3, root of x^4 - 10x^2 + 1.
    static FieldPtr sqrt2_sqrt3();

    int degree() const { return static_cast<int>(min_poly_.size()) - 1; }
    const std::vector<Integer>& min_poly() const { return min_poly_; }
    const RationalInterval& isolating_interval() const { return isolating_; }
    const std::string& generator() const { return generator_; }

    /// False when irreducibility was accepted without proof (degree > 4).
    bool irreducibility_verified() const { return irreducibility_verified_; }

    /// Enclosure of theta with width at most 2^-bits.
    RationalInterval root_enclosure(unsigned bits) const;

    /// Polynomial rendered in the generator variable, e.g. "t^3+t-1".
    std::string poly_string() const;

    /// Structural equality: same polynomial and the same isolated root.
    bool same_as(const NumberField& other) const;

private:
    NumberField() = default;

    std::vector<Integer> min_poly_;
    RationalInterval isolating_;
    std::string generator_;
    bool irreducibility_verified_ = true;

    mutable std::mutex mutex_;
    mutable RationalInterval refined_;
};

bool same_field(const FieldPtr& a, const FieldPtr& b);

/// Element of a NumberField in power-basis coordinates 1, theta, ..., theta^(d-1).
///
/// Values are immutable. The cached enclosure is shared between copies and
/// only shrinks; concurrent refinement is serialized by a mutex.
class AlgebraicNumber {
public:
    AlgebraicNumber() = default;
    explicit AlgebraicNumber(FieldPtr field);
    AlgebraicNumber(FieldPtr field, std::vector<Rational> coords);
    AlgebraicNumber(FieldPtr field, const Rational& value);

    static AlgebraicNumber generator(FieldPtr field);

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coords() const { return coords_; }

    bool is_zero() const;
    bool is_rational() const;
    /// Only meaningful when is_rational().
    const Rational& rational_part() const { return coords_[0]; }

    /// Current cached enclosure (computed if absent).
    RationalInterval enclosure() const;
    /// Enclosure of width at most 2^-bits.
    RationalInterval refine(unsigned bits) const;

    /// Exact sign in {-1, 0, +1}.
    int sign() const;
    /// Largest integer k with k <= value.
    Integer floor() const;
    /// Exact three-way comparison.
    int compare(const AlgebraicNumber& other) const;

    AlgebraicNumber inverse() const;

    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b);
    friend AlgebraicNumber operator-(const AlgebraicNumber& a);
    friend AlgebraicNumber operator*(const AlgebraicNumber& a, const Rational& c);
    friend AlgebraicNumber operator+(const AlgebraicNumber& a, const Rational& c);

    /// Exact equality of values (coordinate vectors in the same field).
    friend bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b);

    /// Polynomial expression in the field generator, e.g. "1/2 - 3*t^2".
    std::string to_expression() const;
    /// Decimal with `digits` significant digits, round-half-even, certified.
    std::string to_decimal(int digits = 30) const;
    /// Double approximation for display and heuristics only.
    double approx() const;

private:
    struct Cache {
        std::mutex mutex;
        std::optional<RationalInterval> interval;
    };

    RationalInterval evaluate(const RationalInterval& root) const;
    void store(const RationalInterval& iv) const;
    std::optional<RationalInterval> cached() const;

    FieldPtr field_;
    std::vector<Rational> coords_;
    std::shared_ptr<Cache> cache_ = std::make_shared<Cache>();
};

// Named forms of the field operations.
AlgebraicNumber fe_add(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber fe_mul(const AlgebraicNumber& a, const AlgebraicNumber& b);
AlgebraicNumber fe_inv(const AlgebraicNumber& a);
int fe_sign(const AlgebraicNumber& a);
Integer fe_floor(const AlgebraicNumber& a);

using IntVector = std::vector<Integer>;

/// Z-basis of the lattice { c in Z^k : sum c_i v_i = 0 }, in Hermite normal
/// form (first nonzero entry of each row positive). Exact linear algebra on
/// the coordinate matrix; no numerics.
std::vector<IntVector> rational_relations(std::span<const AlgebraicNumber> values);

/// Generator of the relation lattice when it has rank 1; nullopt for rank 0.
/// Rank >= 2 throws AmbiguousRelation unless `allow_higher_rank`, in which
/// case the first Hermite basis row is returned.
std::optional<IntVector> primitive_relation(std::span<const AlgebraicNumber> values,
                                            bool allow_higher_rank = false);

/// Renders a rational with `digits` significant decimal digits, round-half-even.
std::string rational_to_decimal(const Rational& q, int digits);

}  // namespace cutseq
