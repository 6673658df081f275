// Builds a two-node link diagram in code, cuts it into splice components and
// prints its invariants next to the closed forms for torus knots.

#include <iostream>

#include "splice/splice.hpp"

using namespace splice;

int main() {
    const SpliceDiagram d(
        {{"v", VertexKind::node},
         {"w", VertexKind::node},
         {"v.leaf", VertexKind::leaf},
         {"v.arrow", VertexKind::arrowhead, 1},
         {"w.leaf2", VertexKind::leaf},
         {"w.leaf3", VertexKind::leaf},
         {"w.arrow", VertexKind::arrowhead, 1}},
        {{"v", "v.leaf", 2, 1},
         {"v", "w", 13, 1},
         {"v", "v.arrow", 1, 1},
         {"w", "w.leaf3", 3, 1},
         {"w", "w.leaf2", 2, 1},
         {"w", "w.arrow", 1, 1}});

    std::cout << serialize(d);
    std::cout << "m_v = " << vertex_multiplicity(d, "v") << ", m_w = " << vertex_multiplicity(d, "w")
              << ", lk(arrows) = " << linking_number(d, "v.arrow", "w.arrow") << "\n";

    const CutResult cut = cut_edge(d, "v", "w");
    std::cout << "cut v--w: multiplicities " << cut.mult_a << " and " << cut.mult_b << ", eta = " << cut.eta << "\n";
    for (const SpliceDiagram& c : components(d)) {
        const ComponentData cd = component_data(c);
        std::cout << "  component at " << c.ids_of(VertexKind::node).front() << ": m = " << cd.m << ", s =";
        for (const Integer& s : cd.s) std::cout << " " << s;
        std::cout << "\n";
    }

    const SGammaBreakdown b = s_gamma(d);
    std::cout << "S = " << b.linking << " + " << b.nodes << " + (" << b.leaves << ") + " << b.edges << " + "
              << b.arrowheads << " = " << b.total << "\n";
    const TheoremReport r = check_main_theorem(d);
    std::cout << "average signature " << r.average->by_integral << ", -S/3 = " << -b.total / Rational(3) << ": "
              << (r.holds ? "equal" : "DIFFERENT") << "\n\n";

    std::cout << "torus knots: average signature vs -(p - 1/p)(q - 1/q)/3\n";
    for (int p = 2; p <= 4; ++p) {
        for (int q = p + 1; q <= 7; ++q) {
            if (std::gcd(p, q) != 1) continue;
            const Rational closed =
                -(Rational(p) - Rational(1, p)) * (Rational(q) - Rational(1, q)) / Rational(3);
            std::cout << "  T(" << p << "," << q << "): " << average_signature(torus(p, q)) << "  " << closed << "\n";
        }
    }

    const StepFunction f = signature_function(torus(2, 3));
    std::cout << "\ntrefoil signature function:";
    for (std::size_t k = 0; k < f.values.size(); ++k) {
        if (k) std::cout << " | " << f.breakpoints[k - 1] << " |";
        std::cout << " " << f.values[k];
    }
    std::cout << "\n";
}
