// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cutseq/coding.hpp"
#include "json.hpp"

namespace cutseq {

/// Suffix array and LCP array of a word over letters 1..alphabet (at most 8).
/// Built once; read-only afterwards, so concurrent queries are safe.
class FactorIndex {
public:
    FactorIndex(std::span<const std::uint8_t> letters, int alphabet);
    explicit FactorIndex(const SymbolicWord& word) : FactorIndex(word.letters, word.alphabet) {}

    std::size_t size() const { return text_.size(); }
    int alphabet() const { return alphabet_; }
    std::span<const std::int32_t> suffix_array() const { return sa_; }
    /// lcp[r] = longest common prefix of suffixes sa[r-1] and sa[r]; lcp[0] = 0.
    std::span<const std::int32_t> lcp() const { return lcp_; }

    /// counts[n] = number of distinct factors of length n, n = 0..n_max.
    std::vector<std::uint64_t> factor_counts(std::size_t n_max) const;

    /// Per length n = 0..n_max: the number of bispecial factors and the sum of
    /// m_b - m_l - m_r + 1 over them, using interior occurrences only.
    struct BispecialTotals {
        std::vector<std::int64_t> sum;
        std::vector<std::uint64_t> count;
        std::vector<std::uint64_t> right_special;
    };
    BispecialTotals bispecial_totals(std::size_t n_max) const;

private:
    std::vector<std::uint8_t> text_;
    int alphabet_;
    std::vector<std::int32_t> sa_;
    std::vector<std::int32_t> lcp_;
};

/// Factor complexity of a finite prefix, indexed by n = 0..n_max. Only the
/// values with n <= stable_up_to are certified; the certificate compares
/// the counts of the half prefix and the full prefix, which is a heuristic.
struct ComplexityProfile {
    std::vector<std::uint64_t> p;  // p[n], n = 0..n_max + 2
    std::vector<std::int64_t> s;   // s[n] = p[n+1] - p[n], n = 0..n_max + 1
    std::vector<std::int64_t> d2;  // d2[n] = s[n+1] - s[n], n = 0..n_max
    std::size_t n_max = 0;
    std::size_t stable_up_to = 0;
    std::size_t source_length = 0;
    int alphabet = 3;

    /// Rows n = 1..n_max.
    std::string to_csv() const;
    nlohmann::json to_json() const;
};

/// Builds the profile from the word (n_max < length, else WordTooShort).
ComplexityProfile complexity_profile(const SymbolicWord& word, std::size_t n_max);
/// Same, reusing an index already built over `word`.
ComplexityProfile complexity_profile(const SymbolicWord& word, const FactorIndex& index, std::size_t n_max);

/// Extension data of one factor v of length n. m_l counts letters a with av a
/// factor, m_r letters b with vb a factor, m_b pairs (a, b) with avb a factor.
struct SpecialFactor {
    std::string factor;
    int m_l = 0;
    int m_r = 0;
    int m_b = 0;
    std::int64_t cassaigne_term() const { return std::int64_t{m_b} - m_l - m_r + 1; }
};

struct SpecialFactorCensus {
    std::size_t n = 0;
    std::vector<SpecialFactor> left_special;
    std::vector<SpecialFactor> right_special;
    std::vector<SpecialFactor> bispecial;

    /// Sum of m_b - m_l - m_r + 1 over the bispecial factors.
    std::int64_t cassaigne_sum() const;
    nlohmann::json to_json() const;
};

/// Special factors of length n. Extensions come from occurrences with both
/// neighbours inside the word. Requires n + 2 <= length, else WordTooShort.
SpecialFactorCensus special_census(const SymbolicWord& word, std::size_t n);

struct CassaigneReport {
    struct Row {
        std::size_t n;
        std::int64_t d2;
        std::int64_t bispecial_sum;
        std::uint64_t bispecial_count;
    };
    std::vector<Row> rows;
    std::vector<std::size_t> violations;
    bool ok() const { return violations.empty(); }
    nlohmann::json to_json() const;
};

/// Compares d2(n) with the bispecial sum for n in [n_lo, n_hi]. The range must
/// satisfy n_hi + 2 <= profile.stable_up_to (InvalidArgument otherwise).
CassaigneReport cassaigne_check(const SymbolicWord& word, const ComplexityProfile& profile, std::size_t n_lo,
                                std::size_t n_hi);
CassaigneReport cassaigne_check(const FactorIndex& index, const ComplexityProfile& profile, std::size_t n_lo,
                                std::size_t n_hi);

struct Periodicity {
    std::size_t preperiod;
    std::size_t period;
};

/// Smallest period P (then smallest preperiod q) with w[i] = w[i + P] for all
/// i >= q, subject to q <= length / 2 and at least three full periods after q.
std::optional<Periodicity> period_detect(const SymbolicWord& word);

enum class GrowthKind { Constant, Linear, Quadratic };

struct GrowthFit {
    GrowthKind kind = GrowthKind::Linear;
    std::size_t range_lo = 0;
    std::size_t range_hi = 0;
    /// Constant: the eventual value of p.
    std::uint64_t eventual_value = 0;
    /// Linear: slope and intercept of p(n) = slope * n + intercept fitted on the
    /// last half of the range, and sup p(n)/n over the range.
    double slope = 0;
    double intercept = 0;
    double sup_ratio = 0;
    /// Quadratic: Cesaro mean of d2 / 2 over the last half, and p(N)/N^2.
    double leading = 0;
    double ratio_at_end = 0;

    std::string kind_name() const;
    nlohmann::json to_json() const;
};

/// Classifies the growth of p on [1, stable_up_to]; needs stable_up_to >= 20
/// (WordTooShort) and throws Inconclusive when no regime fits.
GrowthFit growth_fit(const ComplexityProfile& profile);

}  // namespace cutseq
