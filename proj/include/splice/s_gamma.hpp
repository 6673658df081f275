#pragma once

// The combinatorial invariant S(Gamma) and the check that the average
// signature equals -S(Gamma)/3.

#include <optional>
#include <string>

#include "splice/diagram.hpp"
#include "splice/error.hpp"
#include "splice/rational.hpp"
#include "splice/signatures.hpp"

namespace splice {

struct SGammaBreakdown {
    Rational linking;     // sum over ordered pairs a != a' of m_a m_a' lk(a, a')
    Rational nodes;       // sum of d_v (nu(v) - 2)
    Rational leaves;      // minus the sum of leaf weights
    Rational edges;       // node--node edge contributions
    Rational arrowheads;  // sum of d_a# / m_a#
    Rational total;
};

namespace detail {

inline Rational edge_term(const SpliceDiagram& d, std::size_t v, std::size_t w, const Integer& d_ve,
                          const Integer& d_we) {
    const Integer mu_v = cut_multiplicity(d, v, w);
    const Integer mu_w = cut_multiplicity(d, w, v);
    const Integer dv = node_weight(d, v);
    const Integer dw = node_weight(d, w);
    if (mu_v != 0 && mu_w != 0) {
        const Integer c = gcd(mu_v, mu_w);
        const Integer mv = multiplicity(d, v);
        const Integer mw = multiplicity(d, w);
        return Rational(c * c) * (Rational(d_ve, mu_v * mv) + Rational(d_we, mu_w * mw) - Rational(1, mu_v * mu_w));
    }
    if (mu_v == 0 && mu_w == 0)
        throw DomainError("s_gamma: both sides of edge '" + d.vertex(v).id + "'--'" + d.vertex(w).id +
                          "' carry zero multiplicity");
    if (mu_w == 0) return Rational(1, dv) - Rational(dw, d_we * d_we);
    return Rational(1, dw) - Rational(dv, d_ve * d_ve);
}

}  // namespace detail

/// Requires a structurally valid diagram with an arrowhead of non-zero
/// multiplicity (node multiplicities appear in denominators).
inline SGammaBreakdown s_gamma(const SpliceDiagram& d) {
    if (d.indices_of(VertexKind::node).empty()) throw DomainError("s_gamma: diagram has no node");
    detail::require_nonzero_arrowhead(d, "s_gamma");
    SGammaBreakdown b;

    const auto arrows = d.indices_of(VertexKind::arrowhead);
    Integer linking = 0;
    for (std::size_t x = 0; x < arrows.size(); ++x) {
        const Integer& mx = d.vertex(arrows[x]).multiplicity;
        if (mx == 0) continue;
        for (std::size_t y = x + 1; y < arrows.size(); ++y) {
            const Integer& my = d.vertex(arrows[y]).multiplicity;
            if (my != 0) linking += 2 * mx * my * detail::linking_number(d, arrows[x], arrows[y]);
        }
    }
    b.linking = Rational(linking);

    for (std::size_t v : d.indices_of(VertexKind::node)) {
        const auto nu = static_cast<long long>(d.valency(v));
        if (nu > 2) b.nodes += Rational(detail::node_weight(d, v) * (nu - 2));
    }

    for (std::size_t l : d.indices_of(VertexKind::leaf)) b.leaves -= vertex_weight(d, d.vertex(l).id);

    for (const Edge& e : d.edges()) {
        const std::size_t v = d.index_of(e.end_a);
        const std::size_t w = d.index_of(e.end_b);
        if (d.vertex(v).kind != VertexKind::node || d.vertex(w).kind != VertexKind::node) continue;
        b.edges += detail::edge_term(d, v, w, e.weight_a, e.weight_b);
    }

    for (std::size_t a : arrows) {
        const Incidence& inc = d.incident(a).front();
        b.arrowheads += Rational(inc.far_weight, detail::multiplicity(d, inc.neighbor));
    }

    b.total = b.linking + b.nodes + b.leaves + b.edges + b.arrowheads;
    return b;
}

enum class SkipReason { none, invalid, not_almost_minimal, multilink, exceptional_shape };

inline std::string_view to_string(SkipReason r) {
    switch (r) {
        case SkipReason::none: return "";
        case SkipReason::invalid: return "invalid diagram";
        case SkipReason::not_almost_minimal: return "not almost minimal";
        case SkipReason::multilink: return "multilink";
        case SkipReason::exceptional_shape: return "exceptional shape";
    }
    return "?";
}

struct TheoremReport {
    SkipReason skipped = SkipReason::none;
    std::optional<SGammaBreakdown> breakdown;
    std::optional<AverageSignature> average;
    bool holds = false;  // meaningful only when not skipped

    bool is_skipped() const noexcept { return skipped != SkipReason::none; }
    /// Not skipped and the identity failed.
    bool failed() const noexcept { return !is_skipped() && !holds; }
};

/// Checks average signature = -S(Gamma)/3 on almost minimal link diagrams of
/// non-exceptional shape; other inputs are reported as skipped.
inline TheoremReport check_main_theorem(const SpliceDiagram& d, const StepLimits& limits = {}) {
    TheoremReport r;
    const ValidationReport v = validate(d);
    if (!v.valid())
        r.skipped = SkipReason::invalid;
    else if (!v.is_almost_minimal)
        r.skipped = SkipReason::not_almost_minimal;
    else if (!v.is_link || v.arrowhead_count_nonzero == 0)
        r.skipped = SkipReason::multilink;
    else if (is_exceptional_shape(d))
        r.skipped = SkipReason::exceptional_shape;
    if (r.is_skipped()) return r;

    r.breakdown = s_gamma(d);
    r.average = average_signature_both(d, limits);
    r.holds = r.average->by_integral == -r.breakdown->total / Rational(3);
    return r;
}

}  // namespace splice
