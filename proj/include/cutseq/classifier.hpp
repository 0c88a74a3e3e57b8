// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "cutseq/coding.hpp"
#include "cutseq/geometry.hpp"
#include "cutseq/wordlab.hpp"
#include "json.hpp"

namespace cutseq {

/// Exact value as {"coords", "expression", "decimal"} (30 significant digits).
nlohmann::json algebraic_json(const AlgebraicNumber& a);

enum class LawKind { EventuallyConstant, LinearBounded, AsymptoticQuadratic, ExactQuadratic };

std::string law_name(LawKind k);

struct Classification {
    int case_tag = 5;
    Direction3 direction;
    AlgebraicNumber alpha;  // w2 / w1
    AlgebraicNumber beta;   // w3 / w1
    /// Hermite basis of integer relations c0 + c1 alpha + c2 beta = 0.
    std::vector<IntVector> relations;
    /// Case 2: permutation moving the rational pair to axes 1 and 3, so that
    /// the permuted beta is rational. Identity otherwise.
    std::array<int, 3> permutation{0, 1, 2};
    /// Case 4: (A, B, C) > 0 with A / w_lone = B / w_p + C / w_q, p < q the other
    /// axes; `signed_relation` is the primitive kernel vector of (1/w1, 1/w2, 1/w3).
    std::optional<IntVector> reciprocal_relation;
    std::optional<IntVector> signed_relation;
    int lone_index = 0;  // 1-based, case 4 only
    /// Case 4: density of zero increments w_lone / (A (w1 + w2 + w3)) and the
    /// leading constant 1 - l.
    std::optional<AlgebraicNumber> l_frequency;
    std::optional<AlgebraicNumber> c_pred;
    LawKind predicted = LawKind::ExactQuadratic;

    bool minimal() const { return case_tag >= 4; }
    nlohmann::json to_json() const;
};

/// Decides the complexity regime by exact relation finding.
Classification classify(const Direction3& w);

struct Prediction {
    LawKind kind;
    std::optional<Integer> exact;           // case 5
    std::optional<double> asymptotic;       // case 4: c_pred * n^2
    std::string description;
    nlohmann::json to_json() const;
};

Prediction predicted_profile(const Classification& c, std::size_t n);

/// Zero-increment positions predicted for case 4 on the crossing-index scale;
/// empty for the other cases.
std::vector<std::size_t> predicted_zero_increments(const Classification& c, std::size_t n_max);

struct VerifyOptions {
    std::size_t length = 1000000;
    std::size_t n_max = 100;
    std::optional<Point3> start;
    /// Start points for non-minimal directions; the profile is the maximum
    /// over them at each n, certified up to the smallest stable_up_to.
    std::size_t seed_points = 1;
    std::optional<Direction3> partner;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    nlohmann::json detail;
};

struct VerificationReport {
    Classification classification;
    ComplexityProfile profile;
    std::optional<GrowthFit> growth;
    std::string growth_error;
    std::vector<CheckResult> checks;

    bool passed() const;
    const CheckResult* find(const std::string& name) const;
    nlohmann::json to_json() const;
};

/// Profile over the start points used by `verify` (max over sampled points
/// for non-minimal directions, single point otherwise).
ComplexityProfile measured_profile(const Direction3& w, const Classification& c, const VerifyOptions& options);

/// Offsets d in [lo, hi] with d2(n) == N(n + d) for every n in [1, top].
std::vector<int> fit_diagonal_offsets(const ComplexityProfile& profile, const std::vector<DiagonalCount>& counts,
                                      std::size_t top, int lo = -3, int hi = 3);

VerificationReport verify(const Direction3& w, const VerifyOptions& options = {});

}  // namespace cutseq
