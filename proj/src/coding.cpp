// SPDX-License-Identifier: Apache-2.0
#include "cutseq/coding.hpp"

#include <algorithm>
#include <span>

namespace cutseq {

namespace {

using i128 = __int128;

// Largest crossing index supported by the fixed-point comparison.
constexpr std::int64_t kMaxIndex = std::int64_t{1} << 40;

i128 to_i128(const Integer& z) {
    if (mpz_sizeinbase(z.get_mpz_t(), 2) > 125) throw InvalidArgument("fixed-point constant out of range");
    const Integer mag = abs(z);
    static_assert(sizeof(mp_limb_t) == 8);
    const mp_size_t limbs = mpz_size(mag.get_mpz_t());
    unsigned __int128 v = 0;
    if (limbs > 0) v = mpz_getlimbn(mag.get_mpz_t(), 0);
    if (limbs > 1) v |= static_cast<unsigned __int128>(mpz_getlimbn(mag.get_mpz_t(), 1)) << 64;
    const i128 r = static_cast<i128>(v);
    return sgn(z) < 0 ? -r : r;
}

// Integer bounds lo <= value * 2^shift <= hi.
struct Fixed {
    i128 lo, hi;
};

Fixed to_fixed(const AlgebraicNumber& a, unsigned shift) {
    const RationalInterval iv = a.refine(shift + 2);
    Rational scale = 1;
    mpz_mul_2exp(scale.get_num_mpz_t(), scale.get_num_mpz_t(), shift);
    const Rational lo = iv.lo * scale, hi = iv.hi * scale;
    Integer flo, chi;
    mpz_fdiv_q(flo.get_mpz_t(), lo.get_num_mpz_t(), lo.get_den_mpz_t());
    mpz_cdiv_q(chi.get_mpz_t(), hi.get_num_mpz_t(), hi.get_den_mpz_t());
    return {to_i128(flo), to_i128(chi)};
}

// [lo, hi] * k for an integer k.
Fixed scale(const Fixed& f, std::int64_t k) {
    const i128 a = f.lo * k, b = f.hi * k;
    return k >= 0 ? Fixed{a, b} : Fixed{b, a};
}

// Merges the crossing-time streams t_i(k) = (k - x_i) / w_i, k > x_i, of
// two or three hyperplane families by exact comparison.
class EventMerger {
public:
    EventMerger(std::span<const AlgebraicNumber> w, std::span<const AlgebraicNumber> x)
        : n_(w.size()), w_(w.begin(), w.end()), x_(x.begin(), x.end()) {
        for (std::size_t i = 0; i < n_; ++i) {
            const Integer k = x_[i].floor() + 1;
            if (abs(k) >= kMaxIndex) throw InvalidArgument("start coordinate too large");
            k_[i] = k.get_si();
        }
        std::vector<AlgebraicNumber> constants(w_.begin(), w_.end());
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) {
                c_exact_[i][j] = x_[i] * w_[j] - x_[j] * w_[i];
                constants.push_back(c_exact_[i][j]);
            }
        }
        // Keep |constant| * 2^shift below 2^84 so that every product with an
        // index below 2^40 and the three-term sum stay inside 127 bits.
        long magnitude_bits = 0;
        for (const auto& c : constants) {
            const RationalInterval iv = c.refine(8);
            const Rational m = std::max(abs(iv.lo), abs(iv.hi)) + 1;
            const long bits = static_cast<long>(mpz_sizeinbase(m.get_num_mpz_t(), 2)) -
                              static_cast<long>(mpz_sizeinbase(m.get_den_mpz_t(), 2)) + 1;
            magnitude_bits = std::max(magnitude_bits, bits);
        }
        shift_ = static_cast<unsigned>(std::clamp<long>(84 - magnitude_bits, 8, 64));
        for (std::size_t i = 0; i < n_; ++i) w_fixed_[i] = to_fixed(w_[i], shift_);
        for (std::size_t i = 0; i < n_; ++i) {
            for (std::size_t j = i + 1; j < n_; ++j) c_fixed_[i][j] = to_fixed(c_exact_[i][j], shift_);
        }
    }

    // Family index (0-based) of the next crossing.
    int next() {
        int m;
        if (n_ == 2) {
            const int c = compare(0, 1);
            if (c == 0) singular(0, 1);
            m = c < 0 ? 0 : 1;
        } else {
            const int c01 = compare(0, 1);
            const int a = c01 <= 0 ? 0 : 1;
            const int c = compare(a, 2);
            if (c == 0) singular(a, 2);
            if (c < 0) {
                if (c01 == 0) singular(0, 1);
                m = a;
            } else {
                m = 2;
            }
        }
        if (++k_[m] >= kMaxIndex) throw InvalidArgument("crossing index exceeds supported range");
        return m;
    }

private:
    // Sign of t_i - t_j, i.e. of k_i w_j - k_j w_i - (x_i w_j - x_j w_i).
    int compare(int i, int j) {
        if (i > j) return -compare(j, i);
        const Fixed a = scale(w_fixed_[j], k_[i]);
        const Fixed b = scale(w_fixed_[i], k_[j]);
        const Fixed& c = c_fixed_[i][j];
        const i128 lo = a.lo - b.hi - c.hi;
        const i128 hi = a.hi - b.lo - c.lo;
        if (lo > 0) return 1;
        if (hi < 0) return -1;
        ++exact_fallbacks_;
        const AlgebraicNumber d =
            w_[j] * Rational(Integer(static_cast<long>(k_[i]))) - w_[i] * Rational(Integer(static_cast<long>(k_[j]))) -
            c_exact_[i][j];
        return d.sign();
    }

    [[noreturn]] void singular(int i, int j) {
        const AlgebraicNumber t = (AlgebraicNumber(x_[i].field(), Rational(Integer(static_cast<long>(k_[i])))) - x_[i]) /
                                  w_[i];
        throw SingularOrbit(t, i + 1, j + 1);
    }

    std::size_t n_;
    std::vector<AlgebraicNumber> w_, x_;
    std::int64_t k_[3] = {0, 0, 0};
    AlgebraicNumber c_exact_[3][3];
    Fixed w_fixed_[3]{};
    Fixed c_fixed_[3][3]{};
    unsigned shift_ = 64;
    std::size_t exact_fallbacks_ = 0;
};

void require_positive(const AlgebraicNumber& a, const char* what) {
    if (a.sign() <= 0) throw NonPositiveCoordinate(std::string(what) + " must be strictly positive");
}

std::string join(std::span<const AlgebraicNumber> xs) {
    std::string s = "(";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) s += ", ";
        s += xs[i].to_expression();
    }
    s += ")";
    const FieldPtr& f = xs[0].field();
    if (f->degree() > 1) {
        s += " in field " + f->poly_string() + " @ [" + f->isolating_interval().lo.get_str() + ", " +
             f->isolating_interval().hi.get_str() + "]";
    }
    return s;
}

SymbolicWord generate_word(std::span<const AlgebraicNumber> w, std::span<const AlgebraicNumber> x, std::size_t length) {
    if (length < 1) throw InvalidArgument("word length must be at least 1");
    for (const auto& v : x) {
        if (!same_field(v.field(), w[0].field())) throw FieldMismatch("start point and direction use different fields");
    }
    EventMerger merger(w, x);
    SymbolicWord word;
    word.alphabet = static_cast<int>(w.size());
    word.direction = join(w);
    word.start = join(x);
    word.letters.resize(length);
    for (auto& letter : word.letters) letter = static_cast<std::uint8_t>(merger.next() + 1);
    return word;
}

AlgebraicNumber frac_point(const FieldPtr& f, const Rational& q) { return AlgebraicNumber(f, Rational(q - floor_rational(q))); }

}  // namespace

SingularOrbit::SingularOrbit(AlgebraicNumber time, int family_a, int family_b)
    : Error("SingularOrbit", "orbit meets a lattice edge: families " + std::to_string(family_a) + " and " +
                                 std::to_string(family_b) + " cross simultaneously at t = " + time.to_expression()),
      time_(std::move(time)), family_a_(family_a), family_b_(family_b) {}

Direction3 Direction3::make(AlgebraicNumber w1, AlgebraicNumber w2, AlgebraicNumber w3) {
    if (!same_field(w1.field(), w2.field()) || !same_field(w1.field(), w3.field()))
        throw FieldMismatch("direction coordinates belong to different fields");
    require_positive(w1, "omega_1");
    require_positive(w2, "omega_2");
    require_positive(w3, "omega_3");
    return Direction3{{std::move(w1), std::move(w2), std::move(w3)}};
}

Direction3 Direction3::normalized() const {
    const AlgebraicNumber inv = w[0].inverse();
    return Direction3{{AlgebraicNumber(field(), Rational(1)), w[1] * inv, w[2] * inv}};
}

Direction3 Direction3::permuted(const std::array<int, 3>& perm) const {
    return Direction3{{w[static_cast<std::size_t>(perm[0])], w[static_cast<std::size_t>(perm[1])],
                       w[static_cast<std::size_t>(perm[2])]}};
}

std::string Direction3::to_string() const { return join(w); }

Point3 Point3::default_start(const FieldPtr& field) {
    return Point3{{AlgebraicNumber(field, Rational(1, 7)), AlgebraicNumber(field, Rational(1, 11)),
                   AlgebraicNumber(field, Rational(1, 13))}};
}

Point3 Point3::permuted(const std::array<int, 3>& perm) const {
    return Point3{{x[static_cast<std::size_t>(perm[0])], x[static_cast<std::size_t>(perm[1])],
                   x[static_cast<std::size_t>(perm[2])]}};
}

std::string Point3::to_string() const { return join(x); }

Point2 Point2::default_start(const FieldPtr& field) {
    return Point2{{AlgebraicNumber(field, Rational(1, 7)), AlgebraicNumber(field, Rational(1, 11))}};
}

std::string SymbolicWord::str() const {
    std::string s(letters.size(), '0');
    for (std::size_t i = 0; i < letters.size(); ++i) s[i] = static_cast<char>('0' + letters[i]);
    return s;
}

SymbolicWord SymbolicWord::from_string(const std::string& digits, int alphabet) {
    SymbolicWord w;
    w.alphabet = alphabet;
    for (char c : digits) {
        const int v = c - '0';
        if (v < 1 || v > alphabet) throw InvalidArgument(std::string("letter out of alphabet: ") + c);
        w.letters.push_back(static_cast<std::uint8_t>(v));
    }
    return w;
}

SymbolicWord cutting_word_3d(const Direction3& w, const Point3& m, std::size_t length) {
    return generate_word(w.w, m.x, length);
}

SymbolicWord cutting_word_2d(const AlgebraicNumber& a, const AlgebraicNumber& b, const Point2& m, std::size_t length) {
    if (!same_field(a.field(), b.field())) throw FieldMismatch("direction coordinates belong to different fields");
    require_positive(a, "a");
    require_positive(b, "b");
    const std::array<AlgebraicNumber, 2> w{a, b};
    return generate_word(w, m.x, length);
}

std::vector<Rational> orbit_letter_frequencies(const SymbolicWord& word) {
    if (word.letters.empty()) throw WordTooShort("frequencies need a non-empty word");
    std::vector<std::size_t> counts(static_cast<std::size_t>(word.alphabet), 0);
    for (auto c : word.letters) ++counts[c - 1u];
    std::vector<Rational> out;
    for (auto c : counts) {
        Rational q(static_cast<unsigned long>(c), static_cast<unsigned long>(word.letters.size()));
        q.canonicalize();
        out.push_back(q);
    }
    return out;
}

std::vector<Point3> sample_start_points(const FieldPtr& field, std::size_t count) {
    std::vector<Point3> points;
    for (std::size_t j = 0; j < count; ++j) {
        const long jj = static_cast<long>(j);
        points.push_back(Point3{{frac_point(field, Rational(1, 7) + make_rational(jj, 17)),
                                 frac_point(field, Rational(1, 11) + make_rational(jj, 19)),
                                 frac_point(field, Rational(1, 13) + make_rational(jj, 23))}});
    }
    return points;
}

}  // namespace cutseq
