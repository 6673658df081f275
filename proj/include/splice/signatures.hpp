#pragma once

// Neumann data of splice components, equivariant signatures, the
// Tristram-Levine step function and the average signature.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <utility>
#include <vector>

#include "splice/dedekind.hpp"
#include "splice/diagram.hpp"
#include "splice/error.hpp"
#include "splice/operations.hpp"
#include "splice/rational.hpp"

namespace splice {

/// Seifert data of a one-node diagram, one entry per edge at the node
/// (in edge order).
struct ComponentData {
    std::vector<VertexId> ends;   // neighbor in each direction
    std::vector<Integer> alphas;  // weights at the node
    std::vector<Integer> mults;   // arrowhead multiplicity, 0 towards a leaf
    std::vector<Integer> betas;
    Integer m = 0;
    std::vector<Integer> s;
};

inline ComponentData component_data(const SpliceDiagram& c) {
    const auto nodes = c.indices_of(VertexKind::node);
    if (nodes.size() != 1)
        throw DomainError("component_data: expected exactly one node, found " + std::to_string(nodes.size()));
    const std::size_t n = nodes.front();
    ComponentData out;
    Integer product = 1;
    for (const Incidence& inc : c.incident(n)) {
        const Vertex& nb = c.vertex(inc.neighbor);
        out.ends.push_back(nb.id);
        out.alphas.push_back(inc.near_weight);
        out.mults.push_back(nb.kind == VertexKind::arrowhead ? nb.multiplicity : Integer(0));
        product *= inc.near_weight;
    }
    for (std::size_t j = 0; j < out.alphas.size(); ++j) {
        const Integer& a = out.alphas[j];
        const Integer others = product / a;
        out.betas.push_back(a == 1 ? Integer(0) : mod_inverse(others, a));
        out.m += others * out.mults[j];
    }
    if (out.m != detail::multiplicity(c, n))
        throw InvariantFailure("component_data: m = " + out.m.str() + " disagrees with the node multiplicity " +
                               detail::multiplicity(c, n).str());
    for (std::size_t j = 0; j < out.alphas.size(); ++j) {
        const Integer num = out.mults[j] - out.betas[j] * out.m;
        if (num % out.alphas[j] != 0)
            throw InvariantFailure("component_data: s_j is not an integer at '" + out.ends[j] + "'");
        out.s.push_back(num / out.alphas[j]);
    }
    return out;
}

namespace detail {

inline std::size_t nonzero_arrowheads(const SpliceDiagram& d) {
    std::size_t k = 0;
    for (const Vertex& v : d.vertices())
        if (v.kind == VertexKind::arrowhead && v.multiplicity != 0) ++k;
    return k;
}

inline void require_nonzero_arrowhead(const SpliceDiagram& d, const char* what) {
    if (nonzero_arrowheads(d) == 0)
        throw DomainError(std::string(what) + ": diagram has no arrowhead of non-zero multiplicity");
}

// 2 * sum_j ((s_j p / q)) for one component.
inline Rational component_sigma(const ComponentData& cd, const Integer& p, const Integer& q) {
    Rational total;
    for (const Integer& sj : cd.s) total += sawtooth(Rational(sj * p, q));
    return total * Rational(2);
}

}  // namespace detail

/// sigma^-(e^{2 pi i p/q}): the sum of 2 * sum_j ((s_j p/q)) over splice
/// components whose multiplicity is divisible by q.
inline Integer equivariant_signature(const SpliceDiagram& d, const Integer& p, const Integer& q) {
    if (q < 1 || p <= 0 || p >= q) throw DomainError("equivariant_signature: need 0 < p < q");
    if (gcd(p, q) != 1) throw DomainError("equivariant_signature: " + p.str() + "/" + q.str() + " is not reduced");
    detail::require_nonzero_arrowhead(d, "equivariant_signature");
    Rational total;
    for (const SpliceDiagram& c : components(d)) {
        const ComponentData cd = component_data(c);
        if (cd.m != 0 && cd.m % q == 0) total += detail::component_sigma(cd, p, q);
    }
    if (!total.is_integer())
        throw InvariantFailure("equivariant_signature: non-integral value " + total.str() + " at " + p.str() + "/" + q.str());
    return total.num();
}

/// Piecewise-constant function on (0, 1).
struct StepFunction {
    std::vector<Rational> breakpoints;  // strictly increasing, inside (0, 1)
    std::vector<Integer> values;        // values[k] on (breakpoints[k-1], breakpoints[k])

    /// At a breakpoint, the mean of the two one-sided limits.
    Rational value_at(const Rational& x) const {
        if (x <= Rational(0) || x >= Rational(1)) throw DomainError("value_at: x must lie in (0, 1)");
        const auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), x);
        const std::size_t k = static_cast<std::size_t>(it - breakpoints.begin());
        if (it != breakpoints.end() && *it == x) return Rational(values[k] + values[k + 1], 2);
        return Rational(values[k]);
    }

    Rational integral() const {
        Rational total;
        Rational left(0);
        for (std::size_t k = 0; k < values.size(); ++k) {
            const Rational right = k < breakpoints.size() ? breakpoints[k] : Rational(1);
            total += Rational(values[k]) * (right - left);
            left = right;
        }
        return total;
    }
};

/// Bounds on the candidate jump set enumerated by signature_function.
struct StepLimits {
    std::int64_t max_total_candidates = 50'000'000;
};

namespace detail {

struct Fraction64 {
    std::int64_t num;
    std::int64_t den;
    friend bool operator<(const Fraction64& a, const Fraction64& b) {
        return static_cast<__int128>(a.num) * b.den < static_cast<__int128>(b.num) * a.den;
    }
};

inline StepFunction step_function_from(const std::vector<ComponentData>& parts, std::size_t nonzero_count,
                                       const StepLimits& limits) {
    std::int64_t budget = 0;
    for (const ComponentData& cd : parts) {
        const auto m = to_int64(cd.m);
        if (!m || *m > limits.max_total_candidates - budget)
            throw DomainError("signature_function: component multiplicities too large to enumerate jump points");
        budget += *m;
    }

    // sigma^- summed over components, keyed by the reduced fraction i/m.
    std::map<Fraction64, Rational> jumps;
    for (const ComponentData& cd : parts) {
        const std::int64_t m = cd.m.convert_to<std::int64_t>();
        if (m < 2) continue;
        std::vector<std::int64_t> s;
        for (const Integer& sj : cd.s) s.push_back(mod(sj, cd.m).convert_to<std::int64_t>());
        for (std::int64_t i = 1; i < m; ++i) {
            // 2((r/m)) = (2r - m)/m for r != 0.
            __int128 acc = 0;
            for (std::int64_t sj : s) {
                const auto r = static_cast<std::int64_t>((static_cast<__int128>(sj) * i) % m);
                if (r != 0) acc += 2 * r - m;
            }
            if (acc == 0) continue;
            const std::int64_t g = std::gcd(i, m);
            jumps[{i / g, m / g}] += Rational(Integer(static_cast<std::int64_t>(acc)), Integer(m));
        }
    }

    StepFunction f;
    Integer value = 1 - static_cast<std::int64_t>(nonzero_count);
    for (const auto& [x, sigma] : jumps) {
        if (!sigma.is_integer())
            throw InvariantFailure("signature_function: non-integral equivariant signature " + sigma.str() + " at " +
                                   std::to_string(x.num) + "/" + std::to_string(x.den));
        value -= sigma.num();
    }
    f.values.push_back(value);
    for (const auto& [x, sigma] : jumps) {
        if (sigma.num() == 0) continue;
        value += 2 * sigma.num();
        f.breakpoints.emplace_back(Integer(x.num), Integer(x.den));
        f.values.push_back(value);
    }
    return f;
}

inline std::vector<ComponentData> component_data_of(const Decomposition& dec) {
    std::vector<ComponentData> out;
    for (const SpliceDiagram& c : dec.components) out.push_back(component_data(c));
    return out;
}

}  // namespace detail

/// x -> sigma_L(e^{2 pi i x}): 1 - #Gamma - sum_{y > x} sigma^-(y) + sum_{y < x} sigma^-(y),
/// where #Gamma counts arrowheads of non-zero multiplicity.
inline StepFunction signature_function(const SpliceDiagram& d, const StepLimits& limits = {}) {
    detail::require_nonzero_arrowhead(d, "signature_function");
    return detail::step_function_from(detail::component_data_of(decompose(d)), detail::nonzero_arrowheads(d), limits);
}

/// Route A: integral of the step function.
inline Rational average_by_integral(const SpliceDiagram& d, const StepLimits& limits = {}) {
    return signature_function(d, limits).integral();
}

namespace detail {

inline Rational average_by_dedekind(const Decomposition& dec) {
    Rational total;
    for (const SpliceDiagram& c : dec.components) {
        const ComponentData cd = component_data(c);
        Rational part = Rational(1) - Rational(static_cast<long long>(nonzero_arrowheads(c)));
        if (cd.m != 0) {
            Rational sum;
            for (const Integer& sj : cd.s) sum += dedekind_sum_fast(sj, cd.m);
            part -= Rational(4) * sum;
        }
        total += part;
    }
    for (const CutRecord& cut : dec.cuts) total += Rational(cut.eta);
    return total;
}

}  // namespace detail

/// Route B: per component 1 - #Gamma_c - 4 sum_j s(s_j, m), plus eta for every cut edge.
inline Rational average_by_dedekind(const SpliceDiagram& d) {
    detail::require_nonzero_arrowhead(d, "average_by_dedekind");
    return detail::average_by_dedekind(decompose(d));
}

/// Both routes, which must agree; a disagreement throws InvariantFailure.
struct AverageSignature {
    Rational by_integral;
    Rational by_dedekind;
    std::size_t breakpoints = 0;
};

inline AverageSignature average_signature_both(const SpliceDiagram& d, const StepLimits& limits = {}) {
    detail::require_nonzero_arrowhead(d, "average_signature");
    const Decomposition dec = decompose(d);
    const StepFunction f =
        detail::step_function_from(detail::component_data_of(dec), detail::nonzero_arrowheads(d), limits);
    AverageSignature out{f.integral(), detail::average_by_dedekind(dec), f.breakpoints.size()};
    if (out.by_integral != out.by_dedekind)
        throw InvariantFailure("average_signature: integral " + out.by_integral.str() + " != Dedekind route " +
                               out.by_dedekind.str());
    return out;
}

inline Rational average_signature(const SpliceDiagram& d, const StepLimits& limits = {}) {
    return average_signature_both(d, limits).by_integral;
}

/// Closed form for the average signature of Gamma(a, b), b >= 1.
inline Rational average_elementary(const Integer& a, const Integer& b) {
    if (a < 1) throw DomainError("average_elementary: a must be positive");
    if (b < 1) throw DomainError("average_elementary: b must be positive (b = 0 degenerates)");
    const Integer m = a * (b + 1);
    return Rational(-1) - (reciprocity_defect(1, m) + reciprocity_defect(b, m) - reciprocity_defect(1, a) -
                           Rational(12) * dedekind_sum_fast(a, b)) /
                              Rational(3);
}

/// Closed form, free of Dedekind sums, for the average signature of the star
/// family star(p, q, mults).
inline Rational family2_average_oracle(const Integer& p, const Integer& q, const std::vector<Integer>& mults) {
    if (p < 1 || q < 1 || gcd(p, q) != 1) throw DomainError("family2_average_oracle: p and q must be coprime and positive");
    if (mults.empty()) throw DomainError("family2_average_oracle: mults must be non-empty");
    Integer sum = 0;
    for (const Integer& mj : mults) {
        if (mj < 1) throw DomainError("family2_average_oracle: mults must be positive");
        sum += mj;
    }
    const Integer M = p * q * sum;
    Rational bracket;
    for (const Integer& mj : mults) {
        const Integer Mj = M - p * q * mj;
        bracket += reciprocity_defect(1, mj * (Mj + 1)) + reciprocity_defect(mj, M) - reciprocity_defect(1, mj);
        // With a single outer node Mj = 0: that outer component is Gamma(mj, 0),
        // an unknot with average 0 and eta = 0, and these two terms drop out.
        if (Mj != 0) bracket += reciprocity_defect(Mj, (Mj + 1) * mj) - reciprocity_defect(mj, Mj);
    }
    const auto k = static_cast<long long>(mults.size());
    return Rational(1 - k) - bracket / Rational(3) + reciprocity_defect(p, q) / Rational(3);
}

}  // namespace splice
