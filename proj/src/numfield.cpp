// SPDX-License-Identifier: Apache-2.0
#include "cutseq/numfield.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

namespace cutseq {

namespace {

using RatPoly = std::vector<Rational>;  // constant term first

void trim(RatPoly& p) {
    while (!p.empty() && sgn(p.back()) == 0) p.pop_back();
}

RatPoly to_rat_poly(const std::vector<Integer>& p) {
    RatPoly r(p.begin(), p.end());
    trim(r);
    return r;
}

Rational eval(const RatPoly& p, const Rational& x) {
    Rational acc = 0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

int sign_at(const RatPoly& p, const Rational& x) { return sgn(eval(p, x)); }

RatPoly derivative(const RatPoly& p) {
    RatPoly d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long>(i));
    trim(d);
    return d;
}

RatPoly poly_mul(const RatPoly& a, const RatPoly& b) {
    if (a.empty() || b.empty()) return {};
    RatPoly r(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    }
    trim(r);
    return r;
}

RatPoly poly_sub(RatPoly a, const RatPoly& b) {
    if (a.size() < b.size()) a.resize(b.size(), Rational(0));
    for (std::size_t i = 0; i < b.size(); ++i) a[i] -= b[i];
    trim(a);
    return a;
}

// Returns (quotient, remainder) of a / b with b nonzero.
std::pair<RatPoly, RatPoly> poly_divmod(RatPoly a, const RatPoly& b) {
    trim(a);
    if (a.size() < b.size()) return {{}, a};
    RatPoly q(a.size() - b.size() + 1, Rational(0));
    const Rational& lead = b.back();
    while (!a.empty() && a.size() >= b.size()) {
        const std::size_t shift = a.size() - b.size();
        Rational c = a.back() / lead;
        q[shift] = c;
        for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= c * b[i];
        a.pop_back();
        trim(a);
    }
    trim(q);
    return {q, a};
}

RatPoly poly_mod(const RatPoly& a, const RatPoly& m) { return poly_divmod(a, m).second; }

// Number of sign variations of the Sturm chain at x.
int sturm_variations(const std::vector<RatPoly>& chain, const Rational& x) {
    int variations = 0;
    int last = 0;
    for (const auto& p : chain) {
        const int s = sign_at(p, x);
        if (s == 0) continue;
        if (last != 0 && s != last) ++variations;
        last = s;
    }
    return variations;
}

std::vector<RatPoly> sturm_chain(const RatPoly& p) {
    std::vector<RatPoly> chain{p, derivative(p)};
    while (!chain.back().empty()) {
        RatPoly r = poly_mod(chain[chain.size() - 2], chain.back());
        for (auto& c : r) c = -c;
        if (r.empty()) break;
        chain.push_back(std::move(r));
    }
    return chain;
}

// Distinct real roots of a squarefree p in the closed interval [lo, hi].
int count_roots(const RatPoly& p, const RationalInterval& iv) {
    const auto chain = sturm_chain(p);
    int n = sturm_variations(chain, iv.lo) - sturm_variations(chain, iv.hi);
    if (sign_at(p, iv.lo) == 0) ++n;
    return n;
}

RatPoly poly_gcd(RatPoly a, RatPoly b) {
    trim(a);
    trim(b);
    while (!b.empty()) {
        RatPoly r = poly_mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return a;
}

std::vector<Integer> divisors(Integer n) {
    n = abs(n);
    std::vector<Integer> small, large;
    for (Integer d = 1; d * d <= n; ++d) {
        if (n % d == 0) {
            small.push_back(d);
            if (d * d != n) large.push_back(n / d);
        }
    }
    small.insert(small.end(), large.rbegin(), large.rend());
    return small;
}

bool has_integer_root(const std::vector<Integer>& p) {
    if (p[0] == 0) return true;
    const RatPoly rp = to_rat_poly(p);
    for (const auto& d : divisors(p[0])) {
        if (sign_at(rp, Rational(d)) == 0 || sign_at(rp, Rational(-d)) == 0) return true;
    }
    return false;
}

bool is_perfect_square(const Integer& n) { return n >= 0 && mpz_perfect_square_p(n.get_mpz_t()); }

// Monic integer quartic x^4 + a3 x^3 + a2 x^2 + a1 x + a0 as a product of two
// monic integer quadratics (x^2 + a x + b)(x^2 + c x + d).
bool splits_into_quadratics(const std::vector<Integer>& p) {
    const Integer &a0 = p[0], &a1 = p[1], &a2 = p[2], &a3 = p[3];
    for (const auto& dpos : divisors(a0)) {
        for (int s : {1, -1}) {
            const Integer b = dpos * s;
            const Integer d = a0 / b;
            if (d != b) {
                const Integer num = a1 - a3 * b;
                const Integer den = d - b;
                if (num % den != 0) continue;
                const Integer a = num / den;
                const Integer c = a3 - a;
                if (a * c + b + d == a2) return true;
            } else {
                if (a1 != a3 * b) continue;
                // a + c = a3, a c = a2 - 2b
                const Integer disc = a3 * a3 - 4 * (a2 - 2 * b);
                if (is_perfect_square(disc)) return true;
            }
        }
    }
    return false;
}

Rational pow2(long e) {
    Rational r = 1;
    if (e >= 0) {
        mpz_mul_2exp(r.get_num_mpz_t(), r.get_num_mpz_t(), static_cast<mp_bitcnt_t>(e));
    } else {
        mpz_mul_2exp(r.get_den_mpz_t(), r.get_den_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    }
    return r;
}

// Dyadic point well inside (lo, hi).
Rational dyadic_split(const Rational& lo, const Rational& hi) {
    const Rational w = hi - lo;
    long k = 0;
    while (pow2(-k) > w / 2) ++k;
    while (k > -4096 && pow2(-(k - 1)) <= w / 2) --k;
    const Rational scale = pow2(k);
    Rational target = (lo + w / 4) * scale;
    Integer q;
    mpz_cdiv_q(q.get_mpz_t(), target.get_num_mpz_t(), target.get_den_mpz_t());
    Rational m(q);
    m /= scale;
    m.canonicalize();
    return m;
}

// Number of bits by which `w` exceeds 2^-bits, rounded up; 0 if w <= 2^-bits.
long excess_bits(const Rational& w, unsigned bits) {
    if (sgn(w) == 0) return 0;
    Rational scaled = w * pow2(static_cast<long>(bits));
    if (scaled <= 1) return 0;
    const long num_bits = static_cast<long>(mpz_sizeinbase(scaled.get_num_mpz_t(), 2));
    const long den_bits = static_cast<long>(mpz_sizeinbase(scaled.get_den_mpz_t(), 2));
    return std::max<long>(1, num_bits - den_bits + 1);
}

}  // namespace

// ---------------------------------------------------------------------------
// RationalInterval

RationalInterval RationalInterval::intersect(const RationalInterval& o) const {
    return {std::max(lo, o.lo), std::min(hi, o.hi)};
}

RationalInterval operator+(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo + b.lo, a.hi + b.hi};
}

RationalInterval operator-(const RationalInterval& a, const RationalInterval& b) {
    return {a.lo - b.hi, a.hi - b.lo};
}

RationalInterval operator*(const RationalInterval& a, const RationalInterval& b) {
    Rational p[4] = {a.lo * b.lo, a.lo * b.hi, a.hi * b.lo, a.hi * b.hi};
    return {*std::min_element(p, p + 4), *std::max_element(p, p + 4)};
}

RationalInterval operator*(const RationalInterval& a, const Rational& c) {
    if (sgn(c) >= 0) return {a.lo * c, a.hi * c};
    return {a.hi * c, a.lo * c};
}

Rational parse_rational(std::string_view text) {
    std::string s(text);
    s.erase(std::remove_if(s.begin(), s.end(), [](char ch) { return std::isspace(static_cast<unsigned char>(ch)); }),
            s.end());
    if (s.empty()) throw InvalidArgument("empty rational literal");
    bool negative = false;
    std::size_t pos = 0;
    if (s[0] == '-' || s[0] == '+') {
        negative = s[0] == '-';
        pos = 1;
    }
    Rational value;
    const auto slash = s.find('/', pos);
    const auto dot = s.find('.', pos);
    auto digits_only = [](std::string_view v) {
        return !v.empty() && std::all_of(v.begin(), v.end(), [](char ch) { return ch >= '0' && ch <= '9'; });
    };
    if (slash != std::string::npos) {
        const std::string num = s.substr(pos, slash - pos), den = s.substr(slash + 1);
        if (!digits_only(num) || !digits_only(den)) throw InvalidArgument("bad rational literal: " + s);
        value = Rational(Integer(num), Integer(den));
        if (value.get_den() == 0) throw DivisionByZero("zero denominator in " + s);
        value.canonicalize();
    } else if (dot != std::string::npos) {
        const std::string ip = s.substr(pos, dot - pos), fp = s.substr(dot + 1);
        if ((!ip.empty() && !digits_only(ip)) || (!fp.empty() && !digits_only(fp)) || (ip.empty() && fp.empty()))
            throw InvalidArgument("bad decimal literal: " + s);
        Integer den = 1;
        for (std::size_t i = 0; i < fp.size(); ++i) den *= 10;
        value = Rational(Integer(ip.empty() ? "0" : ip) * den + Integer(fp.empty() ? "0" : fp), den);
        value.canonicalize();
    } else {
        const std::string ip = s.substr(pos);
        if (!digits_only(ip)) throw InvalidArgument("bad integer literal: " + s);
        value = Rational(Integer(ip));
    }
    return negative ? Rational(-value) : value;
}

Integer floor_rational(const Rational& q) {
    Integer r;
    mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
    return r;
}

// ---------------------------------------------------------------------------
// NumberField

FieldPtr NumberField::create(std::vector<Integer> min_poly, RationalInterval isolating, std::string generator) {
    while (min_poly.size() > 1 && min_poly.back() == 0) min_poly.pop_back();
    if (min_poly.size() < 2) throw InvalidField("minimal polynomial must have degree >= 1");
    if (min_poly.back() != 1) throw InvalidField("minimal polynomial must be monic");
    if (isolating.lo > isolating.hi) throw InvalidField("isolating interval has lo > hi");

    const int degree = static_cast<int>(min_poly.size()) - 1;
    const RatPoly rp = to_rat_poly(min_poly);
    bool verified = true;
    if (degree >= 2) {
        if (poly_gcd(rp, derivative(rp)).size() > 1) throw InvalidField("minimal polynomial is not squarefree");
        bool reducible = has_integer_root(min_poly);
        if (degree == 4 && !reducible) reducible = splits_into_quadratics(min_poly);
        if (reducible) throw InvalidField("minimal polynomial is reducible over Q");
        verified = degree <= 4;
    }
    if (count_roots(rp, isolating) != 1)
        throw InvalidField("interval does not isolate exactly one real root");
    if (isolating.lo != isolating.hi) {
        const int slo = sign_at(rp, isolating.lo), shi = sign_at(rp, isolating.hi);
        if (slo == 0 || shi == 0) {
            if (degree > 1) throw InvalidField("isolating interval endpoint is a root");
            const Rational root = slo == 0 ? isolating.lo : isolating.hi;
            isolating = {root, root};
        } else if (slo == shi) {
            throw InvalidField("minimal polynomial does not change sign across the interval");
        }
    }

    auto field = std::shared_ptr<NumberField>(new NumberField());
    field->min_poly_ = std::move(min_poly);
    field->isolating_ = isolating;
    field->refined_ = isolating;
    field->generator_ = std::move(generator);
    field->irreducibility_verified_ = verified;
    return field;
}

FieldPtr NumberField::rationals() {
    static const FieldPtr q = create({Integer(0), Integer(1)}, {Rational(0), Rational(0)}, "t");
    return q;
}

FieldPtr NumberField::sqrt2_sqrt3() {
    static const FieldPtr f =
        create({Integer(1), Integer(0), Integer(-10), Integer(0), Integer(1)}, {Rational(31, 10), Rational(16, 5)}, "x");
    return f;
}

RationalInterval NumberField::root_enclosure(unsigned bits) const {
    std::lock_guard lock(mutex_);
    const Rational target = pow2(-static_cast<long>(bits));
    if (refined_.width() <= target) return refined_;
    const RatPoly rp = to_rat_poly(min_poly_);
    int slo = sign_at(rp, refined_.lo);
    while (refined_.width() > target) {
        const Rational mid = dyadic_split(refined_.lo, refined_.hi);
        const int sm = sign_at(rp, mid);
        if (sm == 0) {
            refined_ = {mid, mid};
            break;
        }
        if (sm == slo) {
            refined_.lo = mid;
        } else {
            refined_.hi = mid;
        }
    }
    return refined_;
}

std::string NumberField::poly_string() const {
    std::ostringstream out;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Integer& c = min_poly_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        Integer mag = abs(c);
        if (first) {
            if (c < 0) out << '-';
        } else {
            out << (c < 0 ? '-' : '+');
        }
        first = false;
        if (i == 0 || mag != 1) out << mag.get_str();
        if (i >= 1) {
            if (mag != 1) out << '*';
            out << generator_;
            if (i > 1) out << '^' << i;
        }
    }
    return out.str();
}

bool NumberField::same_as(const NumberField& other) const {
    if (this == &other) return true;
    if (min_poly_ != other.min_poly_) return false;
    // Same polynomial: the roots agree iff the isolating intervals overlap
    // within a common isolating interval.
    const RationalInterval a = isolating_, b = other.isolating_;
    const RationalInterval hull{std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
    return count_roots(to_rat_poly(min_poly_), hull) == 1 && !(a.hi < b.lo || b.hi < a.lo);
}

bool same_field(const FieldPtr& a, const FieldPtr& b) {
    if (a == b) return true;
    if (!a || !b) return false;
    return a->same_as(*b);
}

// ---------------------------------------------------------------------------
// AlgebraicNumber

AlgebraicNumber::AlgebraicNumber(FieldPtr field)
    : field_(std::move(field)), coords_(static_cast<std::size_t>(field_->degree()), Rational(0)) {}

AlgebraicNumber::AlgebraicNumber(FieldPtr field, std::vector<Rational> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    const auto d = static_cast<std::size_t>(field_->degree());
    if (coords_.size() > d) {
        // Reduce a longer polynomial modulo the minimal polynomial.
        RatPoly r = poly_mod(coords_, to_rat_poly(field_->min_poly()));
        coords_ = std::move(r);
    }
    coords_.resize(d, Rational(0));
}

AlgebraicNumber::AlgebraicNumber(FieldPtr field, const Rational& value) : AlgebraicNumber(std::move(field)) {
    coords_[0] = value;
    cache_->interval = RationalInterval{value, value};
}

AlgebraicNumber AlgebraicNumber::generator(FieldPtr field) {
    if (field->degree() == 1) {
        // theta is the rational root of x - r.
        const Rational root = Rational(-field->min_poly()[0]);
        return AlgebraicNumber(std::move(field), root);
    }
    std::vector<Rational> c(static_cast<std::size_t>(field->degree()), Rational(0));
    c[1] = 1;
    return AlgebraicNumber(std::move(field), std::move(c));
}

bool AlgebraicNumber::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

bool AlgebraicNumber::is_rational() const {
    return std::all_of(coords_.begin() + 1, coords_.end(), [](const Rational& c) { return sgn(c) == 0; });
}

RationalInterval AlgebraicNumber::evaluate(const RationalInterval& root) const {
    RationalInterval acc{coords_.back(), coords_.back()};
    for (std::size_t i = coords_.size() - 1; i-- > 0;) {
        acc = acc * root;
        acc.lo += coords_[i];
        acc.hi += coords_[i];
    }
    return acc;
}

std::optional<RationalInterval> AlgebraicNumber::cached() const {
    std::lock_guard lock(cache_->mutex);
    return cache_->interval;
}

void AlgebraicNumber::store(const RationalInterval& iv) const {
    std::lock_guard lock(cache_->mutex);
    if (!cache_->interval) {
        cache_->interval = iv;
    } else {
        cache_->interval = cache_->interval->intersect(iv);
    }
}

RationalInterval AlgebraicNumber::enclosure() const {
    {
        std::lock_guard lock(cache_->mutex);
        if (cache_->interval) return *cache_->interval;
    }
    if (is_rational()) {
        store({coords_[0], coords_[0]});
    } else {
        store(evaluate(field_->root_enclosure(32)));
    }
    std::lock_guard lock(cache_->mutex);
    return *cache_->interval;
}

RationalInterval AlgebraicNumber::refine(unsigned bits) const {
    RationalInterval current = enclosure();
    if (current.width() <= pow2(-static_cast<long>(bits))) return current;
    unsigned root_bits = bits + 8;
    for (;;) {
        const RationalInterval iv = evaluate(field_->root_enclosure(root_bits));
        store(iv);
        current = enclosure();
        const long excess = excess_bits(current.width(), bits);
        if (excess == 0) return current;
        root_bits += static_cast<unsigned>(std::max<long>(excess, 8));
    }
}

int AlgebraicNumber::sign() const {
    if (is_zero()) return 0;
    RationalInterval iv = enclosure();
    unsigned bits = 32;
    while (!iv.excludes_zero()) {
        iv = refine(bits);
        bits *= 2;
    }
    return sgn(iv.lo) > 0 ? 1 : -1;
}

Integer AlgebraicNumber::floor() const {
    if (is_rational()) return floor_rational(coords_[0]);
    RationalInterval iv = enclosure();
    unsigned bits = 32;
    for (;;) {
        Integer flo = floor_rational(iv.lo), fhi = floor_rational(iv.hi);
        if (flo == fhi) return flo;
        iv = refine(bits);
        bits *= 2;
    }
}

int AlgebraicNumber::compare(const AlgebraicNumber& other) const { return (*this - other).sign(); }

AlgebraicNumber AlgebraicNumber::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of zero");
    if (is_rational()) return AlgebraicNumber(field_, Rational(1 / coords_[0]));
    // Extended Euclid: s*a + t*m = g with g a nonzero constant.
    const RatPoly m = to_rat_poly(field_->min_poly());
    RatPoly a(coords_);
    trim(a);
    RatPoly r0 = m, r1 = a;
    RatPoly s0{}, s1{Rational(1)};
    while (r1.size() > 1) {
        auto [q, r] = poly_divmod(r0, r1);
        RatPoly s2 = poly_sub(s0, poly_mul(q, s1));
        r0 = std::move(r1);
        r1 = std::move(r);
        s0 = std::move(s1);
        s1 = std::move(s2);
    }
    if (r1.empty()) throw InvalidField("element is a zero divisor: minimal polynomial is reducible");
    const Rational g = r1[0];
    for (auto& c : s1) c /= g;
    return AlgebraicNumber(field_, poly_mod(s1, m));
}

namespace {
void require_same_field(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    if (!same_field(a.field(), b.field())) throw FieldMismatch("operands belong to different number fields");
}
}  // namespace

AlgebraicNumber operator+(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    require_same_field(a, b);
    std::vector<Rational> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coords_[i] + b.coords_[i];
    AlgebraicNumber r(a.field_, std::move(c));
    const auto ia = a.cached(), ib = b.cached();
    if (ia && ib) r.cache_->interval = *ia + *ib;
    return r;
}

AlgebraicNumber operator-(const AlgebraicNumber& a) {
    std::vector<Rational> c(a.coords_.size());
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = -a.coords_[i];
    AlgebraicNumber r(a.field_, std::move(c));
    if (const auto ia = a.cached()) r.cache_->interval = RationalInterval{-ia->hi, -ia->lo};
    return r;
}

AlgebraicNumber operator-(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a + (-b); }

AlgebraicNumber operator*(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    require_same_field(a, b);
    const RatPoly m = to_rat_poly(a.field_->min_poly());
    RatPoly prod = poly_mul(a.coords_, b.coords_);
    AlgebraicNumber r(a.field_, poly_mod(prod, m));
    return r;
}

AlgebraicNumber operator*(const AlgebraicNumber& a, const Rational& c) {
    std::vector<Rational> out(a.coords_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a.coords_[i] * c;
    AlgebraicNumber r(a.field_, std::move(out));
    if (const auto ia = a.cached()) r.cache_->interval = *ia * c;
    return r;
}

AlgebraicNumber operator+(const AlgebraicNumber& a, const Rational& c) {
    return a + AlgebraicNumber(a.field_, c);
}

AlgebraicNumber operator/(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a * b.inverse(); }

bool operator==(const AlgebraicNumber& a, const AlgebraicNumber& b) {
    return same_field(a.field_, b.field_) && a.coords_ == b.coords_;
}

std::string AlgebraicNumber::to_expression() const {
    std::ostringstream out;
    bool first = true;
    const std::string& g = field_->generator();
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        const Rational& c = coords_[i];
        if (sgn(c) == 0) continue;
        const Rational mag = abs(c);
        if (first) {
            if (sgn(c) < 0) out << '-';
        } else {
            out << (sgn(c) < 0 ? " - " : " + ");
        }
        first = false;
        if (i == 0) {
            out << mag.get_str();
        } else {
            if (mag != 1) out << mag.get_str() << '*';
            out << g;
            if (i > 1) out << '^' << i;
        }
    }
    if (first) out << '0';
    return out.str();
}

double AlgebraicNumber::approx() const {
    const RationalInterval iv = refine(60);
    return Rational((iv.lo + iv.hi) / 2).get_d();
}

std::string rational_to_decimal(const Rational& q, int digits) {
    if (sgn(q) == 0) return "0";
    const bool negative = sgn(q) < 0;
    const Rational x = abs(q);
    // e = floor(log10 x)
    long e = static_cast<long>(mpz_sizeinbase(x.get_num_mpz_t(), 10)) -
             static_cast<long>(mpz_sizeinbase(x.get_den_mpz_t(), 10));
    auto pow10 = [](long k) {
        Integer p;
        mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k < 0 ? -k : k));
        return k >= 0 ? Rational(p) : Rational(Integer(1), p);
    };
    while (pow10(e) > x) --e;
    while (pow10(e + 1) <= x) ++e;
    const Rational scaled = x * pow10(digits - 1 - e);
    Integer n = floor_rational(scaled);
    const Rational frac = scaled - n;
    if (frac > Rational(1, 2) || (frac == Rational(1, 2) && mpz_odd_p(n.get_mpz_t()))) ++n;
    std::string s = n.get_str();
    if (static_cast<int>(s.size()) > digits) {
        s.pop_back();
        ++e;
    }
    std::string out = negative ? "-" : "";
    if (e >= 0 && e < digits) {
        out += s.substr(0, static_cast<std::size_t>(e + 1));
        if (static_cast<int>(e + 1) < digits) out += "." + s.substr(static_cast<std::size_t>(e + 1));
    } else if (e < 0 && e >= -7) {
        out += "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + s;
    } else {
        out += s.substr(0, 1);
        if (digits > 1) out += "." + s.substr(1);
        out += "e" + std::to_string(e);
    }
    return out;
}

std::string AlgebraicNumber::to_decimal(int digits) const {
    if (is_rational()) return rational_to_decimal(coords_[0], digits);
    sign();  // ensures the enclosure excludes zero
    unsigned bits = 64;
    for (;;) {
        const RationalInterval iv = refine(bits);
        std::string lo = rational_to_decimal(iv.lo, digits), hi = rational_to_decimal(iv.hi, digits);
        if (lo == hi) return lo;
        bits += 64;
    }
}

AlgebraicNumber fe_add(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a + b; }
AlgebraicNumber fe_mul(const AlgebraicNumber& a, const AlgebraicNumber& b) { return a * b; }
AlgebraicNumber fe_inv(const AlgebraicNumber& a) { return a.inverse(); }
int fe_sign(const AlgebraicNumber& a) { return a.sign(); }
Integer fe_floor(const AlgebraicNumber& a) { return a.floor(); }

// ---------------------------------------------------------------------------
// Exact relation lattices

namespace {

using IntMatrix = std::vector<IntVector>;  // row-major

// Column operations on `m` (rows x cols), mirrored on unimodular `u`
// (cols x cols, stored column-major as u[col][row]). Returns the number of
// pivot columns; columns u[rank..] span the integer kernel.
std::size_t column_echelon(IntMatrix& m, IntMatrix& u) {
    const std::size_t rows = m.size();
    const std::size_t cols = u.size();
    auto swap_cols = [&](std::size_t a, std::size_t b) {
        if (a == b) return;
        for (auto& row : m) std::swap(row[a], row[b]);
        std::swap(u[a], u[b]);
    };
    auto sub_col = [&](std::size_t dst, std::size_t src, const Integer& q) {
        for (auto& row : m) row[dst] -= q * row[src];
        for (std::size_t i = 0; i < cols; ++i) u[dst][i] -= q * u[src][i];
    };
    std::size_t pc = 0;
    for (std::size_t r = 0; r < rows && pc < cols; ++r) {
        for (;;) {
            std::size_t best = cols;
            for (std::size_t c = pc; c < cols; ++c) {
                if (m[r][c] != 0 && (best == cols || abs(m[r][c]) < abs(m[r][best]))) best = c;
            }
            if (best == cols) break;
            swap_cols(pc, best);
            bool remaining = false;
            for (std::size_t c = pc + 1; c < cols; ++c) {
                if (m[r][c] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), m[r][c].get_mpz_t(), m[r][pc].get_mpz_t());
                sub_col(c, pc, q);
                if (m[r][c] != 0) remaining = true;
            }
            if (!remaining) break;
        }
        if (m[r][pc] != 0) ++pc;
    }
    return pc;
}

void hermite_rows(IntMatrix& b) {
    if (b.empty()) return;
    const std::size_t cols = b[0].size();
    std::size_t row = 0;
    for (std::size_t col = 0; col < cols && row < b.size(); ++col) {
        for (;;) {
            std::size_t best = b.size();
            for (std::size_t i = row; i < b.size(); ++i) {
                if (b[i][col] != 0 && (best == b.size() || abs(b[i][col]) < abs(b[best][col]))) best = i;
            }
            if (best == b.size()) break;
            std::swap(b[row], b[best]);
            bool remaining = false;
            for (std::size_t i = row + 1; i < b.size(); ++i) {
                if (b[i][col] == 0) continue;
                Integer q;
                mpz_fdiv_q(q.get_mpz_t(), b[i][col].get_mpz_t(), b[row][col].get_mpz_t());
                for (std::size_t j = 0; j < cols; ++j) b[i][j] -= q * b[row][j];
                if (b[i][col] != 0) remaining = true;
            }
            if (!remaining) break;
        }
        if (b[row][col] == 0) continue;
        if (b[row][col] < 0) {
            for (auto& x : b[row]) x = -x;
        }
        for (std::size_t i = 0; i < row; ++i) {
            Integer q;
            mpz_fdiv_q(q.get_mpz_t(), b[i][col].get_mpz_t(), b[row][col].get_mpz_t());
            if (q != 0) {
                for (std::size_t j = 0; j < cols; ++j) b[i][j] -= q * b[row][j];
            }
        }
        ++row;
    }
    b.resize(row);
}

}  // namespace

std::vector<IntVector> rational_relations(std::span<const AlgebraicNumber> values) {
    if (values.empty()) return {};
    const FieldPtr& field = values[0].field();
    for (const auto& v : values) {
        if (!same_field(v.field(), field)) throw FieldMismatch("relation inputs belong to different fields");
    }
    const std::size_t k = values.size();
    const auto d = static_cast<std::size_t>(field->degree());
    IntMatrix m(d, IntVector(k));
    for (std::size_t r = 0; r < d; ++r) {
        Integer lcm = 1;
        for (std::size_t c = 0; c < k; ++c) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), values[c].coords()[r].get_den_mpz_t());
        for (std::size_t c = 0; c < k; ++c) {
            const Rational scaled = values[c].coords()[r] * lcm;
            m[r][c] = scaled.get_num();
        }
    }
    IntMatrix u(k, IntVector(k, Integer(0)));
    for (std::size_t i = 0; i < k; ++i) u[i][i] = 1;
    const std::size_t rank = column_echelon(m, u);
    IntMatrix basis(u.begin() + static_cast<std::ptrdiff_t>(rank), u.end());
    hermite_rows(basis);
    return basis;
}

std::optional<IntVector> primitive_relation(std::span<const AlgebraicNumber> values, bool allow_higher_rank) {
    auto basis = rational_relations(values);
    if (basis.empty()) return std::nullopt;
    if (basis.size() > 1 && !allow_higher_rank)
        throw AmbiguousRelation("relation lattice has rank " + std::to_string(basis.size()));
    return basis.front();
}

}  // namespace cutseq
