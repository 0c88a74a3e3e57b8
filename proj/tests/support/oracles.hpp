// SPDX-License-Identifier: Apache-2.0
//
// Independent reference implementations used only by tests. Nothing here
// shares code paths with the library routines they check.
#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "cutseq/numfield.hpp"

namespace cutseq::oracle {

using Float = boost::multiprecision::number<boost::multiprecision::cpp_bin_float<160>>;

inline Float to_float(const Rational& q) {
    return Float(q.get_num().get_str()) / Float(q.get_den().get_str());
}

/// High-precision value of the field generator by plain floating bisection on
/// the minimal polynomial.
inline Float generator_value(const NumberField& field) {
    const auto& p = field.min_poly();
    auto eval = [&](const Float& x) {
        Float acc = 0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + Float(it->get_str());
        return acc;
    };
    Float lo = to_float(field.isolating_interval().lo), hi = to_float(field.isolating_interval().hi);
    if (lo == hi) return lo;
    const bool lo_negative = eval(lo) < 0;
    for (int i = 0; i < 520; ++i) {
        Float mid = (lo + hi) / 2;
        if ((eval(mid) < 0) == lo_negative) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return (lo + hi) / 2;
}

inline Float value_of(const AlgebraicNumber& a, const Float& theta) {
    Float acc = 0;
    const auto& c = a.coords();
    for (auto it = c.rbegin(); it != c.rend(); ++it) acc = acc * theta + to_float(*it);
    return acc;
}

/// All nonzero integer vectors with entries in [-bound, bound] whose
/// combination with `values` vanishes to 10^-80 (brute force over the box).
inline std::vector<IntVector> brute_force_relations(const std::vector<AlgebraicNumber>& values, int bound) {
    const Float theta = generator_value(*values.at(0).field());
    std::vector<Float> v;
    for (const auto& a : values) v.push_back(value_of(a, theta));
    const Float eps("1e-80");
    std::vector<IntVector> found;
    const std::size_t k = v.size();
    std::vector<int> c(k, -bound);
    for (;;) {
        Float sum = 0;
        bool nonzero = false;
        for (std::size_t i = 0; i < k; ++i) {
            sum += c[i] * v[i];
            nonzero |= c[i] != 0;
        }
        if (nonzero && abs(sum) < eps) {
            IntVector r;
            for (int x : c) r.emplace_back(x);
            found.push_back(r);
        }
        std::size_t i = 0;
        while (i < k && c[i] == bound) c[i++] = -bound;
        if (i == k) break;
        ++c[i];
    }
    return found;
}

/// True when `x` is an integer combination of the rows of a Hermite basis.
inline bool in_lattice(IntVector x, const std::vector<IntVector>& hermite_basis) {
    for (const auto& row : hermite_basis) {
        std::size_t pivot = 0;
        while (pivot < row.size() && row[pivot] == 0) ++pivot;
        if (pivot == row.size()) continue;
        for (std::size_t j = 0; j < pivot; ++j) {
            if (x[j] != 0) return false;
        }
        if (x[pivot] % row[pivot] != 0) return false;
        const Integer q = x[pivot] / row[pivot];
        for (std::size_t j = 0; j < x.size(); ++j) x[j] -= q * row[j];
    }
    return std::all_of(x.begin(), x.end(), [](const Integer& e) { return e == 0; });
}

/// Distinct factors of each length 1..n_max by a hash set of substrings.
inline std::vector<std::uint64_t> naive_factor_counts(std::string_view word, std::size_t n_max) {
    std::vector<std::uint64_t> p(n_max + 1, 0);
    p[0] = 1;
    for (std::size_t n = 1; n <= n_max && n <= word.size(); ++n) {
        std::unordered_set<std::string_view> seen;
        for (std::size_t i = 0; i + n <= word.size(); ++i) seen.insert(word.substr(i, n));
        p[n] = seen.size();
    }
    return p;
}

/// Extension sets of every length-n factor, read off occurrences that have a
/// letter on both sides.
struct NaiveExtensions {
    std::set<char> left, right;
    std::set<std::pair<char, char>> both;
};
inline std::map<std::string, NaiveExtensions> naive_extensions(const std::string& word, std::size_t n) {
    std::map<std::string, NaiveExtensions> out;
    for (std::size_t j = 1; j + n < word.size(); ++j) {
        auto& e = out[word.substr(j, n)];
        e.left.insert(word[j - 1]);
        e.right.insert(word[j + n]);
        e.both.insert({word[j - 1], word[j + n]});
    }
    return out;
}

/// Sum of |both| - |left| - |right| + 1 over factors with two or more
/// extensions on each side.
inline long naive_cassaigne_sum(const std::string& word, std::size_t n) {
    long total = 0;
    for (const auto& [v, e] : naive_extensions(word, n)) {
        if (e.left.size() >= 2 && e.right.size() >= 2)
            total += static_cast<long>(e.both.size()) - static_cast<long>(e.left.size()) - static_cast<long>(e.right.size()) + 1;
    }
    return total;
}

/// Suffix array by plain comparison sort.
inline std::vector<std::int32_t> naive_suffix_array(const std::string& word) {
    std::vector<std::int32_t> sa(word.size());
    for (std::size_t i = 0; i < sa.size(); ++i) sa[i] = static_cast<std::int32_t>(i);
    std::sort(sa.begin(), sa.end(), [&](std::int32_t a, std::int32_t b) {
        return std::string_view(word).substr(static_cast<std::size_t>(a)) < std::string_view(word).substr(static_cast<std::size_t>(b));
    });
    return sa;
}

/// Cutting sequence of a rational direction with rational start over one
/// lattice period: every crossing time is computed exactly and the events are
/// sorted. Returns letters 1..dims for times in (0, period].
inline std::vector<std::uint8_t> rational_period_word(const std::vector<Rational>& direction,
                                                      const std::vector<Rational>& start, Rational* period_out = nullptr) {
    // Smallest T > 0 with T * w_i integral for every i.
    Rational period;
    {
        // T in (den_i/num_i) Z for all i: the intersection is lcm(den)/gcd(num) Z.
        Integer lcm_den = 1, gcd_num = 0;
        for (const auto& w : direction) {
            mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), w.get_den_mpz_t());
            mpz_gcd(gcd_num.get_mpz_t(), gcd_num.get_mpz_t(), w.get_num_mpz_t());
        }
        period = Rational(lcm_den, gcd_num);
        period.canonicalize();
    }
    std::vector<std::pair<Rational, int>> events;
    for (std::size_t i = 0; i < direction.size(); ++i) {
        // Times t = (k - x_i) / w_i for integers k > x_i with t <= T.
        Integer k;
        mpz_fdiv_q(k.get_mpz_t(), start[i].get_num_mpz_t(), start[i].get_den_mpz_t());
        ++k;
        for (;; ++k) {
            Rational t = (Rational(k) - start[i]) / direction[i];
            if (t > period) break;
            events.emplace_back(t, static_cast<int>(i) + 1);
        }
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 1; i < events.size(); ++i) {
        if (events[i].first == events[i - 1].first) return {};  // edge hit
    }
    if (period_out) *period_out = period;
    std::vector<std::uint8_t> out;
    for (const auto& e : events) out.push_back(static_cast<std::uint8_t>(e.second));
    return out;
}

/// Number of distinct length-n windows of the bi-infinite periodic word.
inline std::size_t cyclic_factor_count(const std::vector<std::uint8_t>& period_word, std::size_t n) {
    std::set<std::vector<std::uint8_t>> seen;
    const std::size_t p = period_word.size();
    for (std::size_t i = 0; i < p; ++i) {
        std::vector<std::uint8_t> f(n);
        for (std::size_t j = 0; j < n; ++j) f[j] = period_word[(i + j) % p];
        seen.insert(std::move(f));
    }
    return seen.size();
}

/// Floating-point cutting sequence: every crossing time up to the horizon is
/// listed in 160-bit arithmetic and the list is sorted. Meaningful only when
/// distinct event times are separated by far more than the working precision.
inline std::vector<std::uint8_t> float_cutting_word(const std::vector<Float>& direction, const std::vector<Float>& start,
                                                    std::size_t length) {
    // Each letter is at least one crossing, so the horizon length / min(w)
    // contains enough events; take the first `length`.
    Float total = 0;
    for (const auto& w : direction) total += w;
    const Float horizon = Float(static_cast<unsigned long>(length + 2)) / total * 2;
    std::vector<std::pair<Float, int>> events;
    for (std::size_t i = 0; i < direction.size(); ++i) {
        Float k = floor(start[i]) + 1;
        for (;; k += 1) {
            const Float t = (k - start[i]) / direction[i];
            if (t > horizon) break;
            events.emplace_back(t, static_cast<int>(i) + 1);
        }
    }
    std::sort(events.begin(), events.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::uint8_t> out;
    for (std::size_t i = 0; i < length && i < events.size(); ++i) out.push_back(static_cast<std::uint8_t>(events[i].second));
    return out;
}

/// Letters (1..3 or 1..2) rendered as a string of digits.
inline std::string letters_string(const std::vector<std::uint8_t>& w) {
    std::string s;
    s.reserve(w.size());
    for (auto c : w) s.push_back(static_cast<char>('0' + c));
    return s;
}

}  // namespace cutseq::oracle
