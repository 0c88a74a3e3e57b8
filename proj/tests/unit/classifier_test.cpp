// SPDX-License-Identifier: Apache-2.0
#include <random>
#include <set>

#include "../support/fields.hpp"
#include "cutseq/classifier.hpp"
#include "doctest.h"

using namespace cutseq;
using namespace cutseq::testing;

namespace {

AlgebraicNumber one_of(const Direction3& w) { return AlgebraicNumber(w.field(), Rational(1)); }

Direction3 scaled(const Direction3& w, const Rational& lambda) {
    return Direction3::make(w.w[0] * lambda, w.w[1] * lambda, w.w[2] * lambda);
}

// theta^3 + theta = 1; 2/1 = 1/(1/theta) + 1/(1/(2 - theta)) gives A = 2.
Direction3 cubic_direction_a2() {
    const FieldPtr f = cubic_plus();
    const AlgebraicNumber t = AlgebraicNumber::generator(f);
    return Direction3::make(q(f, 1), t.inverse(), (q(f, 2) - t).inverse());
}

}  // namespace

TEST_CASE("classify: documented examples") {
    SUBCASE("rational direction is case 1") {
        const auto c = classify(rational_direction(2, 3, 5, 7));
        CHECK(c.case_tag == 1);
        CHECK(c.predicted == LawKind::EventuallyConstant);
        CHECK(c.relations.size() == 2);
        CHECK_FALSE(c.minimal());
    }
    SUBCASE("(1, sqrt2, 1 + sqrt2) is case 3 with relation (1, 1, -1)") {
        const auto c = classify(quadratic_direction(sqrt2_field(), 1, 1));
        CHECK(c.case_tag == 3);
        REQUIRE(c.relations.size() == 1);
        IntVector r = c.relations[0];
        if (r[0] < 0) {
            for (auto& x : r) x = -x;
        }
        CHECK(r == IntVector{1, 1, -1});
        CHECK(c.predicted == LawKind::LinearBounded);
    }
    SUBCASE("cubic direction is case 4 with (1, 1, 1)") {
        const Direction3 w = cubic_direction();
        const auto c = classify(w);
        CHECK(c.case_tag == 4);
        CHECK(c.relations.empty());
        REQUIRE(c.reciprocal_relation);
        CHECK(*c.reciprocal_relation == IntVector{1, 1, 1});
        CHECK(c.lone_index == 1);
        REQUIRE(c.c_pred);
        REQUIRE(c.l_frequency);
        const AlgebraicNumber expected = one_of(w) - (one_of(w) + c.alpha + c.beta).inverse();
        CHECK(*c.c_pred == expected);
        CHECK(*c.l_frequency + *c.c_pred == one_of(w));
        CHECK(c.c_pred->approx() == doctest::Approx(0.8219).epsilon(1e-4));
        CHECK(c.predicted == LawKind::AsymptoticQuadratic);
    }
    SUBCASE("(1, sqrt2, sqrt3) is case 5") {
        const auto c = classify(generic_direction());
        CHECK(c.case_tag == 5);
        CHECK(c.relations.empty());
        CHECK_FALSE(c.reciprocal_relation);
        CHECK(c.predicted == LawKind::ExactQuadratic);
    }
    SUBCASE("(1, sqrt2, 1/2) is case 2") {
        const FieldPtr f = sqrt2_field();
        const auto c = classify(Direction3::make(q(f, 1), AlgebraicNumber::generator(f), q(f, 1, 2)));
        CHECK(c.case_tag == 2);
        CHECK(c.permutation == std::array<int, 3>{0, 1, 2});
        CHECK(c.beta.is_rational());
    }
}

TEST_CASE("classify: case 2 permutation makes beta rational") {
    const FieldPtr f = sqrt2_field();
    const AlgebraicNumber r = AlgebraicNumber::generator(f);
    const std::vector<Direction3> ws{
        Direction3::make(q(f, 1), r, q(f, 1, 2)),
        Direction3::make(q(f, 1), q(f, 1, 3), r),
        Direction3::make(r, q(f, 2), q(f, 5)),
        Direction3::make(r + q(f, 1), q(f, 3), r * Rational(2) + q(f, 2)),
    };
    for (const auto& w : ws) {
        const auto c = classify(w);
        REQUIRE(c.case_tag == 2);
        const Direction3 p = w.permuted(c.permutation);
        CHECK(p.beta().is_rational());
        CHECK_FALSE(p.alpha().is_rational());
    }
}

TEST_CASE("classify: case 4 normalization") {
    SUBCASE("A = 2") {
        const Direction3 w = cubic_direction_a2();
        const auto c = classify(w);
        REQUIRE(c.case_tag == 4);
        CHECK(*c.reciprocal_relation == IntVector{2, 1, 1});
        CHECK(c.lone_index == 1);
        // A / w_lone = B / w_p + C / w_q
        const auto& abc = *c.reciprocal_relation;
        CHECK(w.w[0].inverse() * Rational(abc[0]) == w.w[1].inverse() * Rational(abc[1]) + w.w[2].inverse() * Rational(abc[2]));
        const AlgebraicNumber total = w.w[0] + w.w[1] + w.w[2];
        CHECK(*c.l_frequency == w.w[0] / (total * Rational(2)));
    }
    SUBCASE("lone index follows a permutation") {
        const Direction3 w = cubic_direction();
        for (const auto& perm : std::vector<std::array<int, 3>>{{1, 0, 2}, {1, 2, 0}, {2, 1, 0}}) {
            const auto c = classify(w.permuted(perm));
            REQUIRE(c.case_tag == 4);
            // The lone axis of w is 0; after permuting, w'[i] = w[perm[i]].
            const int expected = static_cast<int>(std::find(perm.begin(), perm.end(), 0) - perm.begin()) + 1;
            CHECK(c.lone_index == expected);
            CHECK(*c.reciprocal_relation == IntVector{1, 1, 1});
            CHECK(*c.c_pred == *classify(w).c_pred);
        }
    }
}

TEST_CASE("classify: scaling invariance") {
    const std::vector<Direction3> ws{rational_direction(2, 3, 5, 7), quadratic_direction(sqrt2_field(), 1, 1),
                                     cubic_direction(), generic_direction(), cubic_direction_a2()};
    for (const auto& w : ws) {
        const auto base = classify(w);
        for (const Rational& lambda : {Rational(3, 7), Rational(5), Rational(11, 2)}) {
            const auto c = classify(scaled(w, lambda));
            CHECK(c.case_tag == base.case_tag);
            CHECK(c.relations == base.relations);
            CHECK(c.predicted == base.predicted);
            CHECK(c.alpha == base.alpha);
            CHECK(c.beta == base.beta);
            CHECK(c.reciprocal_relation == base.reciprocal_relation);
            CHECK(c.lone_index == base.lone_index);
            if (base.c_pred) CHECK(*c.c_pred == *base.c_pred);
        }
    }
}

TEST_CASE("classify: decision table is total and consistent") {
    std::mt19937 rng(7);
    std::uniform_int_distribution<long> coef(-3, 3), pos(1, 6);
    const FieldPtr f = sqrt2_field();
    const AlgebraicNumber r = AlgebraicNumber::generator(f);
    std::set<int> seen;
    int made = 0;
    while (made < 200) {
        std::array<AlgebraicNumber, 3> w;
        bool ok = true;
        for (auto& x : w) {
            x = q(f, coef(rng), pos(rng)) + r * Rational(coef(rng));
            ok &= x.sign() > 0;
        }
        if (!ok) continue;
        ++made;
        const auto c = classify(Direction3::make(w[0], w[1], w[2]));
        seen.insert(c.case_tag);
        const bool ar = c.alpha.is_rational(), br = c.beta.is_rational();
        const bool gr = (w[2] / w[1]).is_rational();
        const int rational_ratios = int(ar) + int(br) + int(gr);
        // In a quadratic field 1, alpha, beta are always dependent: cases 1-3 only.
        CHECK(c.case_tag <= 3);
        CHECK_FALSE(c.relations.empty());
        if (rational_ratios >= 2) {
            CHECK(c.case_tag == 1);
        } else if (rational_ratios == 1) {
            CHECK(c.case_tag == 2);
        } else {
            CHECK(c.case_tag == 3);
        }
        // Hermite basis vectors really are relations.
        for (const auto& rel : c.relations) {
            const AlgebraicNumber v = q(f, 0) + c.alpha * Rational(rel[1]) + c.beta * Rational(rel[2]) + Rational(rel[0]);
            CHECK(v.is_zero());
        }
    }
    CHECK(seen == std::set<int>{1, 2, 3});
}

TEST_CASE("predicted_profile") {
    const auto c5 = classify(generic_direction());
    const auto p = predicted_profile(c5, 10);
    REQUIRE(p.exact);
    CHECK(*p.exact == 111);
    CHECK(*predicted_profile(c5, 0).exact == 1);

    const auto c4 = classify(cubic_direction());
    const auto p4 = predicted_profile(c4, 1000);
    REQUIRE(p4.asymptotic);
    CHECK(*p4.asymptotic / 1e6 == doctest::Approx(0.8219).epsilon(1e-4));
    CHECK_FALSE(p4.exact);

    const auto c1 = classify(rational_direction(2, 3, 5, 7));
    CHECK(predicted_profile(c1, 5).kind == LawKind::EventuallyConstant);
    CHECK_FALSE(predicted_profile(c1, 5).exact);
    CHECK(predicted_profile(c1, 5).to_json()["kind"] == "constant");
}

TEST_CASE("predicted_zero_increments") {
    const auto c4 = classify(cubic_direction());
    const auto z = predicted_zero_increments(c4, 40);
    CHECK(z == std::vector<std::size_t>{5, 10, 16, 21, 27, 32, 39});
    CHECK(predicted_zero_increments(classify(generic_direction()), 40).empty());
}

TEST_CASE("fit_diagonal_offsets on synthetic data") {
    ComplexityProfile prof;
    prof.n_max = 10;
    prof.d2.assign(11, 2);
    prof.d2[4] = 0;
    std::vector<DiagonalCount> counts(16);
    for (std::size_t n = 0; n < counts.size(); ++n) {
        counts[n].n = n;
        counts[n].proper = n == 6 ? 0 : 2;
    }
    CHECK(fit_diagonal_offsets(prof, counts, 10) == std::vector<int>{2});
    CHECK(fit_diagonal_offsets(prof, counts, 3, 0, 1) == std::vector<int>{0, 1});
    counts[6].proper = 2;
    CHECK(fit_diagonal_offsets(prof, counts, 10).empty());
}

TEST_CASE("verify: case 1") {
    VerifyOptions o;
    o.length = 20000;
    o.n_max = 60;
    const auto r = verify(rational_direction(2, 3, 5, 7), o);
    CHECK(r.passed());
    REQUIRE(r.growth);
    CHECK(r.growth->kind == GrowthKind::Constant);
    CHECK(r.growth->eventual_value == 50);
    REQUIRE(r.find("period_detected"));
    CHECK(r.find("period_detected")->detail["period"] == 50);
}

TEST_CASE("verify: case 2 and case 3 partners") {
    VerifyOptions o;
    o.length = 300000;
    o.n_max = 60;
    const FieldPtr s2 = sqrt2_field(), s3 = sqrt3_field();
    SUBCASE("same beta") {
        o.partner = Direction3::make(q(s3, 1), AlgebraicNumber::generator(s3), q(s3, 1, 2));
        const auto r = verify(Direction3::make(q(s2, 1), AlgebraicNumber::generator(s2), q(s2, 1, 2)), o);
        CHECK(r.passed());
        CHECK(r.find("partner_same_complexity")->detail["same_beta"] == true);
        CHECK(r.growth->kind == GrowthKind::Linear);
    }
    SUBCASE("same plane") {
        o.partner = quadratic_direction(s3, 1, 1);
        const auto r = verify(quadratic_direction(s2, 1, 1), o);
        CHECK(r.passed());
        CHECK(r.find("partner_same_complexity")->detail["same_plane"] == true);
    }
    SUBCASE("different beta is reported, not hidden") {
        o.partner = Direction3::make(q(s3, 1), AlgebraicNumber::generator(s3), q(s3, 1, 3));
        const auto r = verify(Direction3::make(q(s2, 1), AlgebraicNumber::generator(s2), q(s2, 1, 2)), o);
        REQUIRE(r.find("partner_same_complexity"));
        CHECK(r.find("partner_same_complexity")->detail["same_beta"] == false);
    }
}

TEST_CASE("verify: case 4") {
    VerifyOptions o;
    o.length = 2000000;
    o.n_max = 120;
    const auto r = verify(cubic_direction(), o);
    for (const auto& c : r.checks) {
        INFO(c.name << " " << c.detail.dump());
        CHECK(c.passed);
    }
    CHECK(r.find("diagonal_offset")->detail["offsets"] == nlohmann::json::array({2}));
    CHECK(r.find("zero_positions")->detail["offsets"] == nlohmann::json::array({1}));
}

TEST_CASE("verify: case 5 on a short prefix") {
    VerifyOptions o;
    o.length = 200000;
    o.n_max = 40;
    const auto r = verify(generic_direction(), o);
    CHECK(r.find("cassaigne_identity")->passed);
    CHECK(r.find("diagonal_bound")->passed);
    CHECK(r.find("diagonal_offset")->passed);
    // The prefix is too short for exactness up to 40 and the report says so.
    const auto* exact = r.find("exact_formula");
    REQUIRE(exact);
    const std::size_t bad = exact->detail["first_mismatch"];
    if (bad) {
        CHECK_FALSE(exact->passed);
        for (std::size_t n = 1; n < bad; ++n) CHECK(r.profile.p[n] == n * n + n + 1);
    }
}

TEST_CASE("serialization") {
    const auto c = classify(cubic_direction());
    const auto j = c.to_json();
    CHECK(j["schema"] == 1);
    CHECK(j["case_tag"] == 4);
    CHECK(j["lone_index"] == 1);
    CHECK(j["reciprocal_relation"] == nlohmann::json::array({1, 1, 1}));
    const std::string dec = j["c_pred"]["decimal"];
    CHECK(dec.rfind("0.821", 0) == 0);
    CHECK(j["c_pred"]["coords"].size() == 3);
    CHECK(classify(generic_direction()).to_json()["predicted"] == "n^2+n+1");

    VerifyOptions o;
    o.length = 5000;
    o.n_max = 10;
    const auto rep = verify(rational_direction(2, 3, 5, 7), o).to_json();
    CHECK(rep["schema"] == 1);
    CHECK(rep["checks"].is_array());
    CHECK(rep["profile"]["schema"] == 1);
}
