// SPDX-License-Identifier: Apache-2.0
#include "cutseq/classifier.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace cutseq {

namespace {

nlohmann::json vec_json(const IntVector& v) {
    nlohmann::json a = nlohmann::json::array();
    for (const auto& x : v) a.push_back(x.get_si());
    return a;
}

std::array<int, 3> case2_permutation(int i, int j) {
    // Put the rationally related pair (i, j) on axes 1 and 3.
    const int k = 3 - i - j;
    return {i, k, j};
}

}  // namespace

nlohmann::json algebraic_json(const AlgebraicNumber& a) {
    nlohmann::json coords = nlohmann::json::array();
    for (const auto& c : a.coords()) coords.push_back(c.get_str());
    return {{"coords", coords}, {"expression", a.to_expression()}, {"decimal", a.to_decimal(30)}};
}

std::string law_name(LawKind k) {
    switch (k) {
        case LawKind::EventuallyConstant: return "constant";
        case LawKind::LinearBounded: return "linear-bounded";
        case LawKind::AsymptoticQuadratic: return "quadratic";
        case LawKind::ExactQuadratic: return "n^2+n+1";
    }
    return "unknown";
}

nlohmann::json Classification::to_json() const {
    nlohmann::json rel = nlohmann::json::array();
    for (const auto& r : relations) rel.push_back(vec_json(r));
    nlohmann::json j = {{"schema", 1},
                        {"case_tag", case_tag},
                        {"direction", direction.to_string()},
                        {"field", direction.field()->poly_string()},
                        {"alpha", algebraic_json(alpha)},
                        {"beta", algebraic_json(beta)},
                        {"relations", rel},
                        {"minimal", minimal()},
                        {"predicted", law_name(predicted)}};
    if (case_tag == 2) j["permutation"] = {permutation[0] + 1, permutation[1] + 1, permutation[2] + 1};
    if (reciprocal_relation) {
        j["reciprocal_relation"] = vec_json(*reciprocal_relation);
        j["signed_relation"] = vec_json(*signed_relation);
        j["lone_index"] = lone_index;
    }
    if (l_frequency) j["l"] = algebraic_json(*l_frequency);
    if (c_pred) j["c_pred"] = algebraic_json(*c_pred);
    return j;
}

Classification classify(const Direction3& w) {
    const FieldPtr& f = w.field();
    if (!same_field(f, w.w[1].field()) || !same_field(f, w.w[2].field()))
        throw FieldMismatch("direction coordinates belong to different fields");
    Classification c;
    c.direction = w;
    c.alpha = w.alpha();
    c.beta = w.beta();
    const AlgebraicNumber one(f, Rational(1));
    const std::array<AlgebraicNumber, 3> base{one, c.alpha, c.beta};
    c.relations = rational_relations(base);

    // Rational pairwise ratios w_i / w_j.
    std::vector<std::pair<int, int>> rational_pairs;
    for (int i = 0; i < 3; ++i) {
        for (int j = i + 1; j < 3; ++j) {
            if ((w.w[j] / w.w[i]).is_rational()) rational_pairs.emplace_back(i, j);
        }
    }
    if (rational_pairs.size() >= 2) {
        c.case_tag = 1;
        c.predicted = LawKind::EventuallyConstant;
        return c;
    }
    if (rational_pairs.size() == 1) {
        c.case_tag = 2;
        c.permutation = case2_permutation(rational_pairs[0].first, rational_pairs[0].second);
        c.predicted = LawKind::LinearBounded;
        return c;
    }
    if (!c.relations.empty()) {
        c.case_tag = 3;
        c.predicted = LawKind::LinearBounded;
        return c;
    }
    const std::array<AlgebraicNumber, 3> inv{w.w[0].inverse(), w.w[1].inverse(), w.w[2].inverse()};
    const auto rel = primitive_relation(inv);
    if (!rel) {
        c.case_tag = 5;
        c.predicted = LawKind::ExactQuadratic;
        return c;
    }
    c.case_tag = 4;
    c.predicted = LawKind::AsymptoticQuadratic;
    c.signed_relation = *rel;
    // Positive coordinates force mixed signs; no ratio is rational here, so
    // every entry is nonzero and exactly one sign stands alone.
    const IntVector& r = *rel;
    int lone = -1;
    for (int i = 0; i < 3; ++i) {
        const int a = (i + 1) % 3, b = (i + 2) % 3;
        if (sgn(r[a]) == sgn(r[b]) && sgn(r[i]) == -sgn(r[a])) lone = i;
    }
    if (lone < 0) {
        c.reciprocal_relation = r;  // raw signed triple
        c.lone_index = 0;
        return c;
    }
    c.lone_index = lone + 1;
    const int p = lone == 0 ? 1 : 0;
    const int q = lone == 2 ? 1 : 2;
    c.reciprocal_relation = IntVector{abs(r[lone]), abs(r[p]), abs(r[q])};
    const AlgebraicNumber total = w.w[0] + w.w[1] + w.w[2];
    c.l_frequency = w.w[lone] / (total * Rational((*c.reciprocal_relation)[0]));
    c.c_pred = one - *c.l_frequency;
    return c;
}

nlohmann::json Prediction::to_json() const {
    nlohmann::json j = {{"kind", law_name(kind)}, {"description", description}};
    if (exact) j["exact"] = exact->get_str();
    if (asymptotic) j["asymptotic"] = *asymptotic;
    return j;
}

Prediction predicted_profile(const Classification& c, std::size_t n) {
    Prediction p{c.predicted, std::nullopt, std::nullopt, ""};
    const Integer nz(static_cast<unsigned long>(n));
    switch (c.case_tag) {
        case 1: p.description = "p(n) is eventually constant"; break;
        case 2:
        case 3: p.description = "p(n) <= C n for some constant C"; break;
        case 4:
            if (c.c_pred) {
                p.asymptotic = c.c_pred->approx() * static_cast<double>(n) * static_cast<double>(n);
                p.description = "p(n) ~ C n^2 with C = " + c.c_pred->to_decimal(12);
            } else {
                p.description = "p(n) ~ C n^2 with 0 < C < 1";
            }
            break;
        default:
            p.exact = nz * nz + nz + 1;
            p.description = "p(n) = n^2 + n + 1";
            break;
    }
    return p;
}

std::vector<std::size_t> predicted_zero_increments(const Classification& c, std::size_t n_max) {
    if (c.case_tag != 4 || c.lone_index == 0) return {};
    return zero_increment_prediction(c.direction, c.lone_index, (*c.reciprocal_relation)[0], n_max);
}

bool VerificationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.passed; });
}

const CheckResult* VerificationReport::find(const std::string& name) const {
    for (const auto& c : checks) {
        if (c.name == name) return &c;
    }
    return nullptr;
}

nlohmann::json VerificationReport::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& c : checks) cs.push_back({{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
    nlohmann::json j = {{"schema", 1},
                        {"classification", classification.to_json()},
                        {"profile", profile.to_json()},
                        {"checks", cs},
                        {"passed", passed()}};
    if (growth) {
        j["growth"] = growth->to_json();
    } else {
        j["growth"] = {{"error", growth_error}};
    }
    return j;
}

namespace {

struct Measurement {
    ComplexityProfile combined;
    std::vector<SymbolicWord> words;
    std::vector<CassaigneReport> cassaigne;
};

std::vector<Point3> start_points(const Direction3& w, const Classification& c, const VerifyOptions& o) {
    if (o.start) return {*o.start};
    if (c.minimal() || o.seed_points <= 1) return {Point3::default_start(w.field())};
    return sample_start_points(w.field(), o.seed_points);
}

Measurement measure(const Direction3& w, const Classification& c, const VerifyOptions& o, bool with_cassaigne) {
    Measurement m;
    bool first = true;
    for (const auto& pt : start_points(w, c, o)) {
        SymbolicWord word = cutting_word_3d(w, pt, o.length);
        const FactorIndex index(word);
        ComplexityProfile prof = complexity_profile(word, index, o.n_max);
        if (with_cassaigne && prof.stable_up_to >= 3) {
            const std::size_t hi = std::min(prof.stable_up_to - 2, o.n_max);
            m.cassaigne.push_back(cassaigne_check(index, prof, 1, hi));
        }
        if (first) {
            m.combined = prof;
            first = false;
        } else {
            for (std::size_t n = 0; n < prof.p.size(); ++n) m.combined.p[n] = std::max(m.combined.p[n], prof.p[n]);
            m.combined.stable_up_to = std::min(m.combined.stable_up_to, prof.stable_up_to);
        }
        m.words.push_back(std::move(word));
    }
    ComplexityProfile& p = m.combined;
    for (std::size_t n = 0; n < p.s.size(); ++n) p.s[n] = static_cast<std::int64_t>(p.p[n + 1]) - static_cast<std::int64_t>(p.p[n]);
    for (std::size_t n = 0; n < p.d2.size(); ++n) p.d2[n] = p.s[n + 1] - p.s[n];
    return m;
}

std::size_t certified_top(const ComplexityProfile& p) { return std::min(p.stable_up_to, p.n_max); }

// d2(n) needs p(n + 2).
std::size_t d2_certified_top(const ComplexityProfile& p) {
    return p.stable_up_to >= 2 ? std::min(p.stable_up_to - 2, p.n_max) : 0;
}

}  // namespace

ComplexityProfile measured_profile(const Direction3& w, const Classification& c, const VerifyOptions& options) {
    return measure(w, c, options, false).combined;
}

std::vector<int> fit_diagonal_offsets(const ComplexityProfile& profile, const std::vector<DiagonalCount>& counts,
                                      std::size_t top, int lo, int hi) {
    std::vector<int> out;
    for (int d = lo; d <= hi; ++d) {
        bool ok = top >= 1;
        for (std::size_t n = 1; n <= top && ok; ++n) {
            const long idx = static_cast<long>(n) + d;
            if (idx < 0 || idx >= static_cast<long>(counts.size()) || n >= profile.d2.size()) {
                ok = false;
                break;
            }
            ok = profile.d2[n] == static_cast<std::int64_t>(counts[static_cast<std::size_t>(idx)].proper);
        }
        if (ok) out.push_back(d);
    }
    return out;
}

VerificationReport verify(const Direction3& w, const VerifyOptions& options) {
    VerificationReport rep;
    rep.classification = classify(w);
    const Classification& c = rep.classification;
    Measurement m = measure(w, c, options, true);
    std::optional<Classification> pc;
    std::optional<Measurement> pm;
    if (options.partner) {
        pc = classify(*options.partner);
        VerifyOptions po = options;
        po.partner.reset();
        po.start.reset();
        pm = measure(*options.partner, *pc, po, true);
    }
    rep.profile = m.combined;
    const ComplexityProfile& prof = rep.profile;
    const std::size_t top = certified_top(prof);
    auto add = [&](std::string name, bool ok, nlohmann::json detail) {
        rep.checks.push_back({std::move(name), ok, std::move(detail)});
    };

    try {
        rep.growth = growth_fit(prof);
    } catch (const Error& e) {
        rep.growth_error = e.what();
    }

    {
        bool monotone = true, nonneg = true;
        for (std::size_t n = 1; n + 1 <= top; ++n) {
            monotone &= prof.p[n] <= prof.p[n + 1];
            nonneg &= prof.s[n] >= 0;
        }
        add("profile_invariants", monotone && nonneg && prof.p[1] <= 3,
            {{"p1", prof.p[1]}, {"monotone", monotone}, {"s_nonnegative", nonneg}, {"certified_up_to", top}});
    }
    {
        bool ok = !m.cassaigne.empty();
        nlohmann::json per = nlohmann::json::array();
        auto record = [&](const std::vector<CassaigneReport>& reports, const char* role) {
            for (const auto& r : reports) {
                ok &= r.ok();
                per.push_back({{"word", role},
                               {"checked_up_to", r.rows.empty() ? 0 : r.rows.back().n},
                               {"violations", r.violations}});
            }
        };
        record(m.cassaigne, "direction");
        if (pm) record(pm->cassaigne, "partner");
        add("cassaigne_identity", ok, {{"words", per}});
    }

    const bool grew = rep.growth.has_value();
    switch (c.case_tag) {
        case 1: {
            const auto per = period_detect(m.words.front());
            add("period_detected", per.has_value(),
                per ? nlohmann::json{{"preperiod", per->preperiod}, {"period", per->period}} : nlohmann::json{});
            add("growth_constant", grew && rep.growth->kind == GrowthKind::Constant,
                grew ? rep.growth->to_json() : nlohmann::json{{"error", rep.growth_error}});
            break;
        }
        case 2:
        case 3: {
            std::int64_t s_max = 0;
            bool lower = true;
            for (std::size_t n = 1; n <= top; ++n) {
                lower &= prof.p[n] >= n + 1;
                if (n + 1 <= top) s_max = std::max(s_max, prof.s[n]);
            }
            add("growth_linear", grew && rep.growth->kind == GrowthKind::Linear,
                grew ? rep.growth->to_json() : nlohmann::json{{"error", rep.growth_error}});
            add("lower_bound_n_plus_1", lower, {{"max_s", s_max}, {"certified_up_to", top}});
            break;
        }
        case 4: {
            const std::size_t d2_top = d2_certified_top(prof);
            std::size_t zeros = 0, ones = 0, twos = 0, other = 0;
            std::set<std::size_t> zero_set;
            for (std::size_t n = 1; n <= d2_top; ++n) {
                switch (prof.d2[n]) {
                    case 0: ++zeros; zero_set.insert(n); break;
                    case 1: ++ones; break;
                    case 2: ++twos; break;
                    default: ++other; break;
                }
            }
            add("d2_dichotomy", other == 0 && ones == 0 && d2_top > 0,
                {{"zeros", zeros}, {"ones", ones}, {"twos", twos}, {"other", other}, {"range", d2_top}});
            const double l = c.l_frequency ? c.l_frequency->approx() : 0.0;
            const double density = d2_top ? static_cast<double>(zeros) / static_cast<double>(d2_top) : 0.0;
            add("zero_density", c.l_frequency && std::abs(density - l) <= 0.2 * l,
                {{"measured", density}, {"l", l}, {"tolerance", 0.2}});

            // Offset between predicted crossing indices and measured zeros.
            const auto predicted = predicted_zero_increments(c, d2_top + 4);
            std::vector<int> fits;
            for (int d = -3; d <= 3; ++d) {
                std::set<std::size_t> shifted;
                for (auto n : predicted) {
                    const long v = static_cast<long>(n) - d;
                    if (v >= 1 && v <= static_cast<long>(d2_top)) shifted.insert(static_cast<std::size_t>(v));
                }
                if (shifted == zero_set) fits.push_back(d);
            }
            add("zero_positions", !fits.empty(), {{"offsets", fits}, {"convention", "d2(n) = 0 iff n + offset is predicted"}});

            const double n = static_cast<double>(top);
            const double ratio = static_cast<double>(prof.p[top]) / (n * n);
            const double cp = c.c_pred ? c.c_pred->approx() : 0.0;
            add("leading_constant", c.c_pred && std::abs(ratio - cp) <= 0.15 * cp,
                {{"n", top}, {"p_over_n2", ratio}, {"c_pred", cp}, {"tolerance", 0.15}});
            const double total = static_cast<double>(zeros + ones + twos);
            const double fin1 = total > 0 ? (static_cast<double>(ones) + 2.0 * static_cast<double>(twos)) / (2.0 * total) : 0.0;
            add("frequency_reconstruction", c.c_pred && std::abs(fin1 - cp) <= 0.15 * cp,
                {{"from_d2_frequencies", fin1}, {"c_pred", cp}});

            const auto counts = count_diagonals_up_to(w, d2_top + 4);
            const auto offsets = fit_diagonal_offsets(prof, counts, d2_top);
            add("diagonal_offset", !offsets.empty(), {{"offsets", offsets}, {"convention", "d2(n) = N(n + offset)"}});
            add("growth_quadratic", grew && rep.growth->kind == GrowthKind::Quadratic,
                grew ? rep.growth->to_json() : nlohmann::json{{"error", rep.growth_error}});
            break;
        }
        default: {
            std::size_t first_bad = 0;
            for (std::size_t n = 1; n <= top && !first_bad; ++n) {
                if (prof.p[n] != n * n + n + 1) first_bad = n;
            }
            add("exact_formula", first_bad == 0 && top > 0,
                {{"certified_up_to", top}, {"first_mismatch", first_bad},
                 {"note", "certificate compares half and full prefix; rare factors may be missing"}});
            const std::size_t d2_top = d2_certified_top(prof);
            const auto counts = count_diagonals_up_to(w, d2_top + 4);
            std::size_t max_n = 0;
            for (const auto& cnt : counts) max_n = std::max(max_n, cnt.proper + cnt.triple);
            add("diagonal_bound", max_n <= 2, {{"max_N", max_n}, {"up_to", d2_top + 4}});
            // d2(n) reads p up to n + 2, so a short p(k) spoils d2 from k - 2 on.
            // The fit only uses the range the measured profile gets right.
            const std::size_t fit_top = first_bad ? (first_bad >= 3 ? first_bad - 3 : 0) : d2_top;
            const auto offsets = fit_diagonal_offsets(prof, counts, fit_top);
            add("diagonal_offset", !offsets.empty(),
                {{"offsets", offsets}, {"fit_range", {1, fit_top}}, {"convention", "d2(n) = N(n + offset)"}});
            add("growth_quadratic", grew && rep.growth->kind == GrowthKind::Quadratic,
                grew ? rep.growth->to_json() : nlohmann::json{{"error", rep.growth_error}});
            break;
        }
    }

    if (options.partner) {
        const ComplexityProfile& pp = pm->combined;
        const std::size_t upto = std::min({certified_top(prof), certified_top(pp), std::size_t{100}});
        std::size_t first_diff = 0;
        for (std::size_t n = 1; n <= upto && !first_diff; ++n) {
            if (prof.p[n] != pp.p[n]) first_diff = n;
        }
        nlohmann::json detail = {{"partner", options.partner->to_string()},
                                 {"partner_case", pc->case_tag},
                                 {"compared_up_to", upto},
                                 {"first_difference", first_diff}};
        if (c.case_tag == 2 && pc->case_tag == 2) {
            const AlgebraicNumber b1 = c.direction.permuted(c.permutation).beta();
            const AlgebraicNumber b2 = options.partner->permuted(pc->permutation).beta();
            detail["same_beta"] = b1.rational_part() == b2.rational_part();
        }
        if (c.case_tag == 3 && pc->case_tag == 3) detail["same_plane"] = c.relations == pc->relations;
        add("partner_same_complexity", first_diff == 0 && upto > 0 && pc->case_tag == c.case_tag, detail);
    }
    return rep;
}

}  // namespace cutseq
