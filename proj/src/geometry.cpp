// SPDX-License-Identifier: Apache-2.0
#include "cutseq/geometry.hpp"

#include <algorithm>

namespace cutseq {

namespace {

void require_minimal(const Direction3& w) {
    const FieldPtr& f = w.field();
    const std::array<AlgebraicNumber, 3> v{AlgebraicNumber(f, Rational(1)), w.alpha(), w.beta()};
    if (!rational_relations(v).empty()) throw NotMinimal("direction coordinates are rationally dependent");
}

Integer floor_with(const AlgebraicNumber& c, BoundarySide side) {
    if (c.is_rational()) {
        const Rational q = c.rational_part();
        if (q.get_den() == 1) {
            switch (side) {
                case BoundarySide::Reject: throw BoundaryAmbiguity("coordinate " + q.get_str() + " is an exact integer");
                case BoundarySide::Lower: return q.get_num();
                case BoundarySide::Upper: return q.get_num() - 1;
            }
        }
    }
    return c.floor();
}

LatticeEdge make_edge(int type, Integer a, Integer b, Integer c) { return LatticeEdge{type, {std::move(a), std::move(b), std::move(c)}}; }

}  // namespace

Integer edge_combinatorial_length(const Point3& p, BoundarySide side) {
    Integer total = 0;
    for (const auto& c : p.x) total += floor_with(c, side);
    return total;
}

std::string LatticeEdge::to_string() const {
    std::string s = "type " + std::to_string(type) + " at (";
    for (int i = 0; i < 3; ++i) {
        if (i) s += ", ";
        s += i + 1 == type ? "[" + base[i].get_str() + ", " + Integer(base[i] + 1).get_str() + "]" : base[i].get_str();
    }
    return s + ")";
}

nlohmann::json LatticeEdge::to_json() const {
    return {{"type", type}, {"base", {base[0].get_str(), base[1].get_str(), base[2].get_str()}}};
}

nlohmann::json DiagonalRecord::to_json() const {
    nlohmann::json j = {{"start_edge", start_edge.to_json()},
                        {"end_edge", end_edge.to_json()},
                        {"passes_through", passes_through ? passes_through->to_json() : nlohmann::json(nullptr)},
                        {"start_offset", start_offset.to_expression()},
                        {"travel_time", travel_time.to_expression()},
                        {"travel_time_decimal", travel_time.to_decimal(30)},
                        {"combinatorial_length", combinatorial_length.get_str()}};
    return j;
}

nlohmann::json DiagonalCount::to_json() const {
    nlohmann::json rec = nlohmann::json::array();
    for (const auto& r : records) rec.push_back(r.to_json());
    return {{"n", n}, {"proper", proper}, {"triple", triple}, {"records", rec}};
}

std::vector<DiagonalCount> count_diagonals_up_to(const Direction3& w, std::size_t n_max) {
    require_minimal(w);
    const FieldPtr& f = w.field();
    std::vector<DiagonalCount> out(n_max + 1);
    for (std::size_t n = 0; n <= n_max; ++n) out[n].n = n;

    // A diagonal from the type-i edge through the origin, {s e_i : 0 < s < 1},
    // to an edge of type j != i: with k the third axis the end point has
    // x_k = a_k and x_i = a_i integral, so t = a_k / w_k and
    // s = a_i - a_k w_i / w_k, which fixes a_i = ceil(a_k w_i / w_k).
    for (int i = 0; i < 3; ++i) {
        for (int j = 0; j < 3; ++j) {
            if (i == j) continue;
            const int k = 3 - i - j;
            const AlgebraicNumber rho = w.w[i] / w.w[k];
            const AlgebraicNumber sigma = w.w[i] / w.w[j];
            const AlgebraicNumber tau = w.w[j] / w.w[k];
            // The open segment meets an edge of type k exactly when
            // c - a_k rho + b_j sigma = 0 for integers c and 0 < b_j < a_k tau.
            const std::array<AlgebraicNumber, 3> triple_values{AlgebraicNumber(f, Rational(1)), rho, sigma};
            const std::vector<IntVector> lattice = rational_relations(triple_values);
            if (lattice.size() > 1) throw NotMinimal("direction has too many reciprocal relations");

            // Cap per the crossing-count bound: a_k <= n + 2.
            for (long ak = 1; ak <= static_cast<long>(n_max) + 2; ++ak) {
                const Rational akq(ak);
                const AlgebraicNumber x = rho * akq;
                const Integer ai = x.floor() + 1;
                const AlgebraicNumber end_j = tau * akq;
                const Integer qj = end_j.floor();
                Point3 probe{{AlgebraicNumber(f), AlgebraicNumber(f), AlgebraicNumber(f)}};
                probe.x[i] = AlgebraicNumber(f, Rational(ai));
                probe.x[k] = AlgebraicNumber(f, akq);
                probe.x[j] = AlgebraicNumber(f, Rational(qj) + Rational(1, 2));
                // Fixed coordinates of an edge are integers and floor to themselves.
                const Integer length = edge_combinatorial_length(probe, BoundarySide::Lower);
                if (length > static_cast<long>(n_max)) break;  // lengths increase with a_k

                DiagonalRecord rec;
                rec.start_edge = make_edge(i + 1, 0, 0, 0);
                std::array<Integer, 3> end_base;
                end_base[i] = ai;
                end_base[k] = ak;
                end_base[j] = qj;
                rec.end_edge = LatticeEdge{j + 1, end_base};
                rec.start_offset = AlgebraicNumber(f, Rational(ai)) - x;
                rec.travel_time = AlgebraicNumber(f, akq) / w.w[k];
                rec.combinatorial_length = length;

                if (lattice.size() == 1) {
                    const IntVector& r = lattice[0];
                    if (r[1] != 0 && Integer(ak) % r[1] == 0) {
                        const Integer lambda = -Integer(ak) / r[1];
                        const Integer bj = lambda * r[2];
                        const Integer c = lambda * r[0];
                        // 0 < b_j / w_j < a_k / w_k
                        if (bj > 0 && (w.w[k] * Rational(bj)).compare(w.w[j] * akq) < 0) {
                            const AlgebraicNumber xk = w.w[k] / w.w[j] * Rational(bj);
                            std::array<Integer, 3> mid;
                            mid[i] = ai - c;
                            mid[j] = bj;
                            mid[k] = xk.floor();
                            rec.passes_through = LatticeEdge{k + 1, mid};
                        }
                    }
                }
                const std::size_t n = length.get_ui();
                if (n == 0) continue;
                if (rec.passes_through) {
                    ++out[n].triple;
                } else {
                    ++out[n].proper;
                }
                out[n].records.push_back(std::move(rec));
            }
        }
    }
    return out;
}

DiagonalCount count_diagonals(const Direction3& w, std::size_t n) { return count_diagonals_up_to(w, n)[n]; }

std::string EdgeOrder::tag() const {
    return std::to_string(types[0]) + ";" + std::to_string(types[1]) + ";" + std::to_string(types[2]);
}

EdgeOrder edge_order_check(const Direction3& w, const std::optional<IntVector>& relation, Orientation orientation) {
    const FieldPtr& f = w.field();
    const std::array<AlgebraicNumber, 3> inv{w.w[0].inverse(), w.w[1].inverse(), w.w[2].inverse()};
    IntVector r;
    if (relation) {
        r = *relation;
    } else {
        auto found = primitive_relation(inv);
        if (!found) throw NoTripleLine("no integer relation among the reciprocal coordinates");
        r = *found;
    }
    if (r.size() != 3) throw InvalidArgument("relation must have three entries");
    const AlgebraicNumber check = inv[0] * Rational(r[0]) + inv[1] * Rational(r[1]) + inv[2] * Rational(r[2]);
    if (!check.is_zero()) throw NoTripleLine("given triple is not a relation among the reciprocal coordinates");

    // Edges (x,0,0), (a,y,b), (c,d,z): (a-c)/w1 - b/w3 + d/w2 = 0 forces
    // (a-c, d, -b) = k (A, B, C). The type-2 edge is reached at b/w3, the
    // type-3 edge at d/w2.
    const int want = orientation == Orientation::NonNegative ? 1 : -1;
    const int k = sgn(r[0]) == 0 ? want : want * sgn(r[0]);
    const AlgebraicNumber lambda = AlgebraicNumber(f, Rational(Integer(-k * r[2]))) / w.w[2];
    const AlgebraicNumber mu = AlgebraicNumber(f, Rational(Integer(k * r[1]))) / w.w[1];
    const AlgebraicNumber zero(f);
    if (lambda.is_zero() || mu.is_zero() || lambda == mu)
        throw NoTripleLine("relation does not separate the three edges");

    std::array<std::pair<AlgebraicNumber, int>, 3> ev{{{zero, 1}, {lambda, 2}, {mu, 3}}};
    std::sort(ev.begin(), ev.end(), [](const auto& a, const auto& b) { return a.first.compare(b.first) < 0; });
    EdgeOrder order;
    for (int e = 0; e < 3; ++e) {
        order.types[e] = ev[e].second;
        order.times[e] = ev[e].first;
    }
    return order;
}

std::vector<std::size_t> zero_increment_prediction(const Direction3& w, int lone, const Integer& A, std::size_t n_max) {
    if (lone < 1 || lone > 3) throw InvalidArgument("lone index must be 1, 2 or 3");
    if (A == 0) throw InvalidArgument("A must be nonzero");
    const Integer a = abs(A);
    std::vector<std::size_t> out;
    if (n_max == 0) return out;
    const FieldPtr& f = w.field();
    const Point3 origin{{AlgebraicNumber(f), AlgebraicNumber(f), AlgebraicNumber(f)}};
    const SymbolicWord orbit = cutting_word_3d(w, origin, n_max);
    Integer face = 0;
    for (std::size_t n = 1; n <= n_max; ++n) {
        if (orbit.letters[n - 1] != lone) continue;
        ++face;
        if (face % a == 0) out.push_back(n);
    }
    return out;
}

}  // namespace cutseq
