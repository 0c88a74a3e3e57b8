// SPDX-License-Identifier: Apache-2.0
#include "cutseq/wordlab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace cutseq {

namespace {

// Induced-sorting suffix array construction over an integer alphabet
// [0, upper]. Suffixes are ordered with a proper prefix before its extensions.
std::vector<std::int32_t> sa_is(const std::vector<std::int32_t>& s, std::int32_t upper) {
    const std::int32_t n = static_cast<std::int32_t>(s.size());
    if (n == 0) return {};
    if (n == 1) return {0};
    if (n == 2) return s[0] < s[1] ? std::vector<std::int32_t>{0, 1} : std::vector<std::int32_t>{1, 0};
    if (n < 16) {
        std::vector<std::int32_t> sa(static_cast<std::size_t>(n));
        std::iota(sa.begin(), sa.end(), 0);
        std::sort(sa.begin(), sa.end(), [&](std::int32_t a, std::int32_t b) {
            return std::lexicographical_compare(s.begin() + a, s.end(), s.begin() + b, s.end());
        });
        return sa;
    }

    std::vector<std::int32_t> sa(static_cast<std::size_t>(n));
    std::vector<bool> is_s(static_cast<std::size_t>(n), false);
    for (std::int32_t i = n - 2; i >= 0; --i) is_s[i] = s[i] == s[i + 1] ? is_s[i + 1] : s[i] < s[i + 1];

    // Bucket boundaries: sum_l[c] = start of bucket c, sum_s[c] = start of its S part.
    std::vector<std::int32_t> sum_l(static_cast<std::size_t>(upper) + 1, 0), sum_s(static_cast<std::size_t>(upper) + 1, 0);
    for (std::int32_t i = 0; i < n; ++i) {
        if (!is_s[i]) {
            ++sum_s[s[i]];
        } else {
            ++sum_l[s[i] + 1];
        }
    }
    for (std::int32_t c = 0; c <= upper; ++c) {
        sum_s[c] += sum_l[c];
        if (c < upper) sum_l[c + 1] += sum_s[c];
    }

    auto induce = [&](const std::vector<std::int32_t>& lms) {
        std::fill(sa.begin(), sa.end(), -1);
        std::vector<std::int32_t> buf(sum_s);
        for (std::int32_t d : lms) {
            if (d != n) sa[buf[s[d]]++] = d;
        }
        buf = sum_l;
        sa[buf[s[n - 1]]++] = n - 1;
        for (std::int32_t i = 0; i < n; ++i) {
            const std::int32_t v = sa[i];
            if (v >= 1 && !is_s[v - 1]) sa[buf[s[v - 1]]++] = v - 1;
        }
        buf = sum_l;
        for (std::int32_t i = n - 1; i >= 0; --i) {
            const std::int32_t v = sa[i];
            if (v >= 1 && is_s[v - 1]) sa[--buf[s[v - 1] + 1]] = v - 1;
        }
    };

    std::vector<std::int32_t> lms_index(static_cast<std::size_t>(n) + 1, -1);
    std::vector<std::int32_t> lms;
    for (std::int32_t i = 1; i < n; ++i) {
        if (!is_s[i - 1] && is_s[i]) {
            lms_index[i] = static_cast<std::int32_t>(lms.size());
            lms.push_back(i);
        }
    }
    const std::int32_t m = static_cast<std::int32_t>(lms.size());
    induce(lms);
    if (m == 0) return sa;

    std::vector<std::int32_t> sorted_lms;
    sorted_lms.reserve(static_cast<std::size_t>(m));
    for (std::int32_t v : sa) {
        if (lms_index[v] != -1) sorted_lms.push_back(v);
    }
    // Name LMS substrings; equal names mean identical substrings.
    std::vector<std::int32_t> reduced(static_cast<std::size_t>(m));
    std::int32_t name = 0;
    reduced[lms_index[sorted_lms[0]]] = 0;
    for (std::int32_t i = 1; i < m; ++i) {
        std::int32_t l = sorted_lms[i - 1], r = sorted_lms[i];
        const std::int32_t end_l = lms_index[l] + 1 < m ? lms[lms_index[l] + 1] : n;
        const std::int32_t end_r = lms_index[r] + 1 < m ? lms[lms_index[r] + 1] : n;
        bool same = true;
        if (end_l - l != end_r - r) {
            same = false;
        } else {
            while (l < end_l && s[l] == s[r]) {
                ++l;
                ++r;
            }
            if (l == n || s[l] != s[r]) same = false;
        }
        if (!same) ++name;
        reduced[lms_index[sorted_lms[i]]] = name;
    }
    const std::vector<std::int32_t> reduced_sa = sa_is(reduced, name);
    for (std::int32_t i = 0; i < m; ++i) sorted_lms[i] = lms[reduced_sa[i]];
    induce(sorted_lms);
    return sa;
}

// Kasai: lcp[r] between suffixes sa[r-1] and sa[r].
std::vector<std::int32_t> kasai(const std::vector<std::uint8_t>& t, const std::vector<std::int32_t>& sa) {
    const std::size_t n = t.size();
    std::vector<std::int32_t> rank(n), lcp(n, 0);
    for (std::size_t r = 0; r < n; ++r) rank[sa[r]] = static_cast<std::int32_t>(r);
    std::size_t h = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (h > 0) --h;
        if (rank[i] == 0) {
            h = 0;
            continue;
        }
        const std::size_t j = sa[rank[i] - 1];
        while (i + h < n && j + h < n && t[i + h] == t[j + h]) ++h;
        lcp[rank[i]] = static_cast<std::int32_t>(h);
    }
    return lcp;
}

std::string factor_string(const std::vector<std::uint8_t>& letters, std::size_t pos, std::size_t n) {
    std::string s(n, '0');
    for (std::size_t i = 0; i < n; ++i) s[i] = static_cast<char>('0' + letters[pos + i]);
    return s;
}

}  // namespace

FactorIndex::FactorIndex(std::span<const std::uint8_t> letters, int alphabet)
    : text_(letters.begin(), letters.end()), alphabet_(alphabet) {
    if (alphabet < 1 || alphabet > 8) throw InvalidArgument("alphabet size must be between 1 and 8");
    if (text_.size() >= static_cast<std::size_t>(INT32_MAX)) throw InvalidArgument("word too long for the factor index");
    std::vector<std::int32_t> s(text_.size());
    for (std::size_t i = 0; i < text_.size(); ++i) {
        if (text_[i] < 1 || text_[i] > alphabet) throw InvalidArgument("letter outside the alphabet");
        s[i] = text_[i] - 1;
    }
    sa_ = sa_is(s, alphabet - 1);
    lcp_ = kasai(text_, sa_);
}

std::vector<std::uint64_t> FactorIndex::factor_counts(std::size_t n_max) const {
    // Rank r contributes the new factors of lengths lcp[r] + 1 .. |suffix|.
    std::vector<std::int64_t> diff(n_max + 2, 0);
    const std::size_t len = text_.size();
    for (std::size_t r = 0; r < len; ++r) {
        const std::size_t from = static_cast<std::size_t>(lcp_[r]) + 1;
        const std::size_t to = std::min(len - static_cast<std::size_t>(sa_[r]), n_max);
        if (from <= to) {
            ++diff[from];
            --diff[to + 1];
        }
    }
    std::vector<std::uint64_t> counts(n_max + 1, 0);
    counts[0] = 1;
    std::int64_t run = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        run += diff[n];
        counts[n] = static_cast<std::uint64_t>(run);
    }
    return counts;
}

FactorIndex::BispecialTotals FactorIndex::bispecial_totals(std::size_t n_max) const {
    // Bottom-up traversal of lcp intervals: each internal node of depth d is a
    // factor v of length d with at least two distinct continuations. A child
    // carries the set of letters preceding interior occurrences in its subtree.
    struct Child {
        std::uint8_t left;
        std::int32_t pos;  // some occurrence of the child's label
        bool end;          // the occurrence reaches the end of the word
    };
    struct Node {
        std::int32_t depth;
        std::uint8_t left_all = 0;  // every occurrence in the subtree
        std::uint8_t left_or = 0;   // occurrences with a right extension
        std::int32_t pos = -1;
        int m_r = 0;
        int m_b = 0;
    };
    BispecialTotals out;
    out.sum.assign(n_max + 1, 0);
    out.count.assign(n_max + 1, 0);
    out.right_special.assign(n_max + 1, 0);
    const std::int32_t len = static_cast<std::int32_t>(text_.size());
    if (len == 0) return out;

    auto leaf = [&](std::int32_t r) {
        const std::int32_t j = sa_[r];
        const std::uint8_t mask = j >= 1 ? static_cast<std::uint8_t>(1u << (text_[j - 1] - 1)) : 0;
        return Child{mask, j, true};
    };
    auto attach = [&](Node& node, const Child& c) {
        if (node.pos < 0) node.pos = c.pos;
        node.left_all |= c.left;
        // A leaf whose suffix ends exactly at depth has no right extension
        // here, though it does for every shallower ancestor.
        if (c.end && c.pos + node.depth == len) return;
        node.left_or |= c.left;
        if (c.left) {
            ++node.m_r;
            node.m_b += std::popcount(static_cast<unsigned>(c.left));
        }
    };
    auto close = [&](const Node& node) {
        const std::size_t d = static_cast<std::size_t>(node.depth);
        if (d >= 1 && d <= n_max) {
            const int m_l = std::popcount(static_cast<unsigned>(node.left_or));
            if (node.m_r >= 2) ++out.right_special[d];
            if (node.m_r >= 2 && m_l >= 2) {
                ++out.count[d];
                out.sum[d] += std::int64_t{node.m_b} - m_l - node.m_r + 1;
            }
        }
        return Child{node.left_all, node.pos, false};
    };

    std::vector<Node> stack;
    stack.push_back(Node{0});
    std::optional<Child> pending = leaf(0);
    for (std::int32_t r = 1; r <= len; ++r) {
        const std::int32_t h = r < len ? lcp_[r] : 0;
        // Finish every node deeper than h; the last finished one becomes a child.
        while (stack.back().depth > h) {
            Node node = stack.back();
            stack.pop_back();
            if (pending) attach(node, *pending);
            pending = close(node);
            if (stack.back().depth < h) {
                stack.push_back(Node{h});
            }
        }
        if (stack.back().depth < h) stack.push_back(Node{h});
        if (pending) attach(stack.back(), *pending);
        pending.reset();
        if (r < len) pending = leaf(r);
    }
    while (stack.size() > 1) {
        Node node = stack.back();
        stack.pop_back();
        if (pending) attach(node, *pending);
        pending = close(node);
    }
    return out;
}

ComplexityProfile complexity_profile(const SymbolicWord& word, std::size_t n_max) {
    if (n_max >= word.length()) throw WordTooShort("n_max must be smaller than the word length");
    return complexity_profile(word, FactorIndex(word), n_max);
}

ComplexityProfile complexity_profile(const SymbolicWord& word, const FactorIndex& index, std::size_t n_max) {
    if (n_max >= word.length()) throw WordTooShort("n_max must be smaller than the word length");
    if (index.size() != word.length()) throw InvalidArgument("index was built over a different word");
    ComplexityProfile prof;
    prof.n_max = n_max;
    prof.source_length = word.length();
    prof.alphabet = word.alphabet;
    const std::size_t top = n_max + 2;
    prof.p = index.factor_counts(top);
    const std::size_t half_length = word.length() / 2;
    const FactorIndex half(std::span<const std::uint8_t>(word.letters.data(), half_length), word.alphabet);
    const std::vector<std::uint64_t> p_half = half.factor_counts(top);
    std::size_t stable = 0;
    while (stable < top && p_half[stable + 1] == prof.p[stable + 1]) ++stable;
    prof.stable_up_to = stable;
    prof.s.resize(top);
    for (std::size_t n = 0; n < top; ++n)
        prof.s[n] = static_cast<std::int64_t>(prof.p[n + 1]) - static_cast<std::int64_t>(prof.p[n]);
    prof.d2.resize(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) prof.d2[n] = prof.s[n + 1] - prof.s[n];
    return prof;
}

std::string ComplexityProfile::to_csv() const {
    std::ostringstream out;
    out << "n,p,s,d2,stable\n";
    for (std::size_t n = 1; n <= n_max; ++n) {
        out << n << ',' << p[n] << ',' << s[n] << ',' << d2[n] << ',' << (n <= stable_up_to ? "true" : "false")
            << '\n';
    }
    return out.str();
}

nlohmann::json ComplexityProfile::to_json() const {
    nlohmann::json rows = nlohmann::json::array();
    for (std::size_t n = 1; n <= n_max; ++n) {
        rows.push_back({{"n", n}, {"p", p[n]}, {"s", s[n]}, {"d2", d2[n]}, {"stable", n <= stable_up_to}});
    }
    return {{"schema", 1},
            {"n_max", n_max},
            {"stable_up_to", stable_up_to},
            {"source_length", source_length},
            {"certificate", "heuristic: counts agree between the half prefix and the full prefix"},
            {"rows", rows}};
}

std::int64_t SpecialFactorCensus::cassaigne_sum() const {
    std::int64_t total = 0;
    for (const auto& f : bispecial) total += f.cassaigne_term();
    return total;
}

nlohmann::json SpecialFactorCensus::to_json() const {
    auto list = [](const std::vector<SpecialFactor>& fs) {
        nlohmann::json a = nlohmann::json::array();
        for (const auto& f : fs) a.push_back({{"factor", f.factor}, {"m_l", f.m_l}, {"m_r", f.m_r}, {"m_b", f.m_b}});
        return a;
    };
    return {{"n", n},
            {"left_special", list(left_special)},
            {"right_special", list(right_special)},
            {"bispecial", list(bispecial)},
            {"cassaigne_sum", cassaigne_sum()}};
}

SpecialFactorCensus special_census(const SymbolicWord& word, std::size_t n) {
    const std::size_t len = word.length();
    if (n + 2 > len) throw WordTooShort("census needs n + 2 <= word length");
    const FactorIndex index(word);
    const auto sa = index.suffix_array();
    const auto lcp = index.lcp();
    SpecialFactorCensus census;
    census.n = n;

    // Suffixes sharing their first n letters are contiguous in the suffix array.
    std::size_t r = 0;
    while (r < len) {
        std::size_t end = r + 1;
        while (end < len && static_cast<std::size_t>(lcp[end]) >= n) ++end;
        const std::size_t pos0 = static_cast<std::size_t>(sa[r]);
        if (len - pos0 >= n) {
            unsigned left = 0, right = 0;
            std::uint64_t pairs = 0;  // bit (a * 8 + b)
            for (std::size_t k = r; k < end; ++k) {
                const std::size_t j = static_cast<std::size_t>(sa[k]);
                if (j < 1 || j + n >= len) continue;
                const unsigned a = word.letters[j - 1] - 1u, b = word.letters[j + n] - 1u;
                left |= 1u << a;
                right |= 1u << b;
                pairs |= std::uint64_t{1} << (a * 8 + b);
            }
            SpecialFactor f;
            f.m_l = std::popcount(left);
            f.m_r = std::popcount(right);
            f.m_b = std::popcount(pairs);
            if (f.m_l >= 2 || f.m_r >= 2) {
                f.factor = factor_string(word.letters, pos0, n);
                if (f.m_l >= 2) census.left_special.push_back(f);
                if (f.m_r >= 2) census.right_special.push_back(f);
                if (f.m_l >= 2 && f.m_r >= 2) census.bispecial.push_back(f);
            }
        }
        r = end;
    }
    return census;
}

nlohmann::json CassaigneReport::to_json() const {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& row : rows) {
        a.push_back({{"n", row.n}, {"d2", row.d2}, {"bispecial_sum", row.bispecial_sum}, {"bispecial_count", row.bispecial_count}});
    }
    return {{"ok", ok()}, {"violations", violations}, {"rows", a}};
}

CassaigneReport cassaigne_check(const SymbolicWord& word, const ComplexityProfile& profile, std::size_t n_lo,
                                std::size_t n_hi) {
    return cassaigne_check(FactorIndex(word), profile, n_lo, n_hi);
}

CassaigneReport cassaigne_check(const FactorIndex& index, const ComplexityProfile& profile, std::size_t n_lo,
                                std::size_t n_hi) {
    if (n_lo > n_hi || n_hi + 2 > profile.stable_up_to || n_hi > profile.n_max)
        throw InvalidArgument("Cassaigne range must lie within the stable range minus 2");
    if (index.size() != profile.source_length) throw InvalidArgument("index and profile come from different words");
    const auto totals = index.bispecial_totals(n_hi);
    CassaigneReport report;
    for (std::size_t n = n_lo; n <= n_hi; ++n) {
        report.rows.push_back({n, profile.d2[n], totals.sum[n], totals.count[n]});
        if (profile.d2[n] != totals.sum[n]) report.violations.push_back(n);
    }
    return report;
}

std::optional<Periodicity> period_detect(const SymbolicWord& word) {
    const std::size_t len = word.length();
    if (len < 3) return std::nullopt;
    // z[P] on the reversed word: the longest suffix of the word with period P
    // has length P + z[P].
    std::vector<std::uint8_t> rev(word.letters.rbegin(), word.letters.rend());
    std::vector<std::size_t> z(len, 0);
    std::size_t l = 0, r = 0;
    for (std::size_t i = 1; i < len; ++i) {
        if (i < r) z[i] = std::min(r - i, z[i - l]);
        while (i + z[i] < len && rev[z[i]] == rev[i + z[i]]) ++z[i];
        if (i + z[i] > r) {
            l = i;
            r = i + z[i];
        }
    }
    for (std::size_t period = 1; 3 * period <= len; ++period) {
        const std::size_t periodic = period + z[period];
        const std::size_t pre = len - std::min(periodic, len);
        if (pre <= len / 2 && len - pre >= 3 * period) return Periodicity{pre, period};
    }
    return std::nullopt;
}

std::string GrowthFit::kind_name() const {
    switch (kind) {
        case GrowthKind::Constant: return "constant";
        case GrowthKind::Linear: return "linear";
        case GrowthKind::Quadratic: return "quadratic";
    }
    return "unknown";
}

nlohmann::json GrowthFit::to_json() const {
    nlohmann::json j = {{"kind", kind_name()}, {"range", {range_lo, range_hi}}};
    switch (kind) {
        case GrowthKind::Constant: j["eventual_value"] = eventual_value; break;
        case GrowthKind::Linear:
            j["slope"] = slope;
            j["intercept"] = intercept;
            j["sup_p_over_n"] = sup_ratio;
            break;
        case GrowthKind::Quadratic:
            j["leading"] = leading;
            j["p_over_n2_at_end"] = ratio_at_end;
            break;
    }
    return j;
}

GrowthFit growth_fit(const ComplexityProfile& profile) {
    const std::size_t top = std::min(profile.stable_up_to, profile.n_max);
    if (top < 20) throw WordTooShort("growth fit needs at least 20 certified lengths");
    GrowthFit fit;
    fit.range_lo = 1;
    fit.range_hi = top;
    const std::size_t mid = top / 2;
    // s[n] is certified for n + 1 <= top, d2[n] for n + 2 <= top.
    bool flat = true;
    for (std::size_t n = mid; n + 1 <= top; ++n) flat &= profile.s[n] == 0;
    if (flat) {
        fit.kind = GrowthKind::Constant;
        fit.eventual_value = profile.p[top];
        return fit;
    }

    const std::size_t d2_end = top - 2;
    const double span = static_cast<double>(d2_end + 1 - mid);
    const double growth = static_cast<double>(profile.s[d2_end + 1] - profile.s[mid]);
    const double mean_d2 = growth / span;
    bool d2_in_range = true;
    std::size_t nonzero = 0;
    for (std::size_t n = mid; n <= d2_end; ++n) {
        d2_in_range &= profile.d2[n] >= 0 && profile.d2[n] <= 2;
        nonzero += profile.d2[n] != 0;
    }
    const double top_d = static_cast<double>(top);
    if (d2_in_range && static_cast<double>(nonzero) >= 0.2 * span && mean_d2 >= 0.1) {
        fit.kind = GrowthKind::Quadratic;
        fit.leading = mean_d2 / 2;
        fit.ratio_at_end = static_cast<double>(profile.p[top]) / (top_d * top_d);
        return fit;
    }

    // Bounded s: no more than two units of growth over the last half.
    std::int64_t s_max_first = 0, s_max_last = 0;
    for (std::size_t n = 1; n < mid; ++n) s_max_first = std::max(s_max_first, profile.s[n]);
    for (std::size_t n = mid; n + 1 <= top; ++n) s_max_last = std::max(s_max_last, profile.s[n]);
    if (s_max_last <= s_max_first + 2 && growth <= 2) {
        fit.kind = GrowthKind::Linear;
        double sx = 0, sy = 0, sxx = 0, sxy = 0, k = 0;
        for (std::size_t n = mid; n <= top; ++n) {
            const double x = static_cast<double>(n), y = static_cast<double>(profile.p[n]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
            k += 1;
        }
        fit.slope = (k * sxy - sx * sy) / (k * sxx - sx * sx);
        fit.intercept = (sy - fit.slope * sx) / k;
        for (std::size_t n = 1; n <= top; ++n)
            fit.sup_ratio = std::max(fit.sup_ratio, static_cast<double>(profile.p[n]) / static_cast<double>(n));
        return fit;
    }
    throw Inconclusive("growth does not match the constant, linear or quadratic pattern on the certified range");
}

}  // namespace cutseq
