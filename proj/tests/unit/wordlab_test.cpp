// SPDX-License-Identifier: Apache-2.0
#include <random>

#include "../support/fields.hpp"
#include "../support/oracles.hpp"
#include "cutseq/wordlab.hpp"
#include "doctest.h"

using namespace cutseq;
using namespace cutseq::testing;

namespace {

SymbolicWord random_word(std::mt19937_64& rng, std::size_t len, int alphabet) {
    std::uniform_int_distribution<int> d(1, alphabet);
    SymbolicWord w;
    w.alphabet = alphabet;
    for (std::size_t i = 0; i < len; ++i) w.letters.push_back(static_cast<std::uint8_t>(d(rng)));
    return w;
}

SymbolicWord sturmian(std::size_t len) {
    const FieldPtr f = golden_field();
    return cutting_word_2d(q(f, 1), AlgebraicNumber::generator(f), Point2::default_start(f), len);
}

SymbolicWord cube_word(std::size_t len) {
    const Direction3 w = generic_direction();
    return cutting_word_3d(w, Point3::default_start(w.field()), len);
}

}  // namespace

TEST_CASE("suffix array matches a comparison sort") {
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 200; ++trial) {
        const int alphabet = 1 + trial % 3;
        const auto w = random_word(rng, 1 + rng() % 300, alphabet);
        const FactorIndex index(w);
        const auto ref = oracle::naive_suffix_array(w.str());
        REQUIRE(std::equal(ref.begin(), ref.end(), index.suffix_array().begin()));
    }
    // Highly repetitive inputs exercise the recursion.
    for (std::size_t len : {17u, 64u, 1000u}) {
        SymbolicWord w = SymbolicWord::from_string(std::string(len, '1'), 2);
        const auto ref = oracle::naive_suffix_array(w.str());
        CHECK(std::equal(ref.begin(), ref.end(), FactorIndex(w).suffix_array().begin()));
        const auto fib = sturmian(len);
        const auto ref2 = oracle::naive_suffix_array(fib.str());
        CHECK(std::equal(ref2.begin(), ref2.end(), FactorIndex(fib).suffix_array().begin()));
    }
}

TEST_CASE("factor counts match the hash-set oracle") {
    CHECK(complexity_profile(SymbolicWord::from_string("121212", 2), 2).p[2] == 2);
    std::mt19937_64 rng(5);
    std::vector<SymbolicWord> words;
    for (int i = 0; i < 20; ++i) words.push_back(random_word(rng, 500 + rng() % 1500, 1 + i % 3));
    words.push_back(sturmian(20000));
    words.push_back(cube_word(20000));
    words.push_back(cutting_word_3d(rational_direction(2, 3, 5, 7), Point3::default_start(NumberField::rationals()), 5000));
    for (const auto& w : words) {
        const std::size_t n_max = std::min<std::size_t>(w.length() - 1, 120);
        const auto ref = oracle::naive_factor_counts(w.str(), n_max);
        const auto got = FactorIndex(w).factor_counts(n_max);
        REQUIRE(ref == got);
    }
}

TEST_CASE("profile invariants and the doubling certificate") {
    const auto w = cube_word(200000);
    const auto prof = complexity_profile(w, 60);
    REQUIRE(prof.stable_up_to >= 25);
    CHECK(prof.p[1] <= 3);
    for (std::size_t n = 1; n + 1 < prof.p.size(); ++n) CHECK(prof.p[n] <= prof.p[n + 1]);
    for (std::size_t m = 1; m <= 20; ++m)
        for (std::size_t n = 1; m + n <= 40; ++n) CHECK(prof.p[m + n] <= prof.p[m] * prof.p[n]);
    // Doubling the prefix never lowers a count and keeps certified ones.
    const auto w2 = cube_word(400000);
    const auto prof2 = complexity_profile(w2, 60);
    for (std::size_t n = 1; n <= 62; ++n) {
        CHECK(prof2.p[n] >= prof.p[n]);
        if (n <= prof.stable_up_to) CHECK(prof2.p[n] == prof.p[n]);
    }
    CHECK_THROWS_AS(complexity_profile(SymbolicWord::from_string("123", 3), 3), WordTooShort);
}

TEST_CASE("Sturmian words have n + 1 factors and one special factor per side") {
    const auto w = sturmian(30000);
    const auto prof = complexity_profile(w, 200);
    REQUIRE(prof.stable_up_to >= 200);
    for (std::size_t n = 1; n <= 200; ++n) CHECK(prof.p[n] == n + 1);
    for (std::size_t n : {1u, 2u, 5u, 13u, 40u}) {
        const auto c = special_census(w, n);
        CHECK(c.left_special.size() == 1);
        CHECK(c.right_special.size() == 1);
    }
    const auto rep = cassaigne_check(w, prof, 1, 100);
    CHECK(rep.ok());
    for (const auto& row : rep.rows) CHECK(row.d2 == 0);
    CHECK_FALSE(period_detect(w).has_value());
    const auto fit = growth_fit(prof);
    CHECK(fit.kind == GrowthKind::Linear);
    CHECK(fit.slope == doctest::Approx(1.0));
    CHECK(fit.intercept == doctest::Approx(1.0));
}

TEST_CASE("generic cube word has n^2 + n + 1 factors") {
    // A 10^6 prefix holds every factor up to length 28; two length-29 factors
    // have frequency near 4e-8 and first occur around position 9.8e7.
    const auto w = cube_word(1000000);
    const FactorIndex index(w);
    const auto prof = complexity_profile(w, index, 60);
    REQUIRE(prof.stable_up_to >= 42);
    for (std::size_t n = 1; n <= 28; ++n) CHECK(prof.p[n] == n * n + n + 1);
    CHECK(prof.p[29] == 869);
    const auto rep = cassaigne_check(index, prof, 1, 40);
    CHECK(rep.ok());
    for (const auto& row : rep.rows) {
        if (row.n <= 26) CHECK(row.bispecial_sum == 2);
    }
    const auto fit = growth_fit(prof);
    CHECK(fit.kind == GrowthKind::Quadratic);
    CHECK(fit.leading == doctest::Approx(1.0));
}

TEST_CASE("census agrees with the naive extension sets") {
    std::mt19937_64 rng(3);
    std::vector<SymbolicWord> words{cube_word(3000), sturmian(3000)};
    for (int i = 0; i < 6; ++i) words.push_back(random_word(rng, 400, 2 + i % 2));
    for (const auto& w : words) {
        const std::string s = w.str();
        const FactorIndex index(w);
        const auto totals = index.bispecial_totals(30);
        for (std::size_t n = 0; n <= 30; ++n) {
            const auto naive = oracle::naive_extensions(s, n);
            const auto census = special_census(w, n);
            std::size_t left = 0, right = 0, bi = 0;
            for (const auto& [v, e] : naive) {
                left += e.left.size() >= 2;
                right += e.right.size() >= 2;
                bi += e.left.size() >= 2 && e.right.size() >= 2;
            }
            REQUIRE(census.left_special.size() == left);
            REQUIRE(census.right_special.size() == right);
            REQUIRE(census.bispecial.size() == bi);
            for (const auto& f : census.bispecial) {
                const auto& e = naive.at(f.factor);
                CHECK(f.m_l == static_cast<int>(e.left.size()));
                CHECK(f.m_r == static_cast<int>(e.right.size()));
                CHECK(f.m_b == static_cast<int>(e.both.size()));
                CHECK(f.m_b <= f.m_l * f.m_r);
            }
            CHECK(census.cassaigne_sum() == oracle::naive_cassaigne_sum(s, n));
            if (n >= 1) {
                CHECK(totals.sum[n] == census.cassaigne_sum());
                CHECK(totals.count[n] == census.bispecial.size());
                CHECK(totals.right_special[n] == census.right_special.size());
            }
        }
    }
}

TEST_CASE("small census examples") {
    const auto c = special_census(SymbolicWord::from_string("121212", 2), 1);
    CHECK(c.left_special.empty());
    CHECK(c.right_special.empty());
    CHECK(c.bispecial.empty());
    CHECK_THROWS_AS(special_census(SymbolicWord::from_string("12", 2), 1), WordTooShort);
}

TEST_CASE("periodic words") {
    const auto p = period_detect(SymbolicWord::from_string("123123123", 3));
    REQUIRE(p.has_value());
    CHECK(p->preperiod == 0);
    CHECK(p->period == 3);
    const auto q2 = period_detect(SymbolicWord::from_string("2111111111", 2));
    REQUIRE(q2.has_value());
    CHECK(q2->preperiod == 1);
    CHECK(q2->period == 1);
    CHECK_FALSE(period_detect(SymbolicWord::from_string("1231231", 3)).has_value());

    const auto w = cutting_word_3d(rational_direction(2, 3, 5, 7), Point3::default_start(NumberField::rationals()), 20000);
    const auto per = period_detect(w);
    REQUIRE(per.has_value());
    CHECK(50 % per->period == 0);
    const auto prof = complexity_profile(w, 120);
    const auto fit = growth_fit(prof);
    CHECK(fit.kind == GrowthKind::Constant);
    CHECK(fit.eventual_value == per->period);
    const auto rep = cassaigne_check(w, prof, 1, std::min<std::size_t>(prof.stable_up_to, 120) - 2);
    CHECK(rep.ok());
}

TEST_CASE("growth fit on synthetic profiles") {
    auto make = [](auto p_of_n) {
        ComplexityProfile prof;
        prof.n_max = 100;
        prof.stable_up_to = 102;
        for (std::size_t n = 0; n <= 102; ++n) prof.p.push_back(n == 0 ? 1 : p_of_n(n));
        for (std::size_t n = 0; n < 102; ++n) prof.s.push_back(std::int64_t(prof.p[n + 1]) - std::int64_t(prof.p[n]));
        for (std::size_t n = 0; n <= 100; ++n) prof.d2.push_back(prof.s[n + 1] - prof.s[n]);
        return prof;
    };
    const auto lin = growth_fit(make([](std::size_t n) { return n + 1; }));
    CHECK(lin.kind == GrowthKind::Linear);
    CHECK(lin.slope == doctest::Approx(1.0));
    CHECK(lin.intercept == doctest::Approx(1.0));
    const auto quad = growth_fit(make([](std::size_t n) { return n * n + n + 1; }));
    CHECK(quad.kind == GrowthKind::Quadratic);
    CHECK(quad.leading == doctest::Approx(1.0));
    const auto flat = growth_fit(make([](std::size_t n) { return std::min<std::size_t>(n + 1, 30); }));
    CHECK(flat.kind == GrowthKind::Constant);
    CHECK(flat.eventual_value == 30);
    CHECK_THROWS_AS(growth_fit(make([](std::size_t n) { return n * n * n; })), Inconclusive);
    auto short_prof = make([](std::size_t n) { return n + 1; });
    short_prof.stable_up_to = 10;
    CHECK_THROWS_AS(growth_fit(short_prof), WordTooShort);
}

TEST_CASE("profile serialization") {
    const auto prof = complexity_profile(SymbolicWord::from_string("12112121121", 2), 4);
    const std::string csv = prof.to_csv();
    CHECK(csv.rfind("n,p,s,d2,stable\n1,2,", 0) == 0);
    const auto j = prof.to_json();
    CHECK(j["rows"].size() == 4);
    CHECK(j["rows"][1]["p"] == 3);
}
