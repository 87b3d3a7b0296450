// Prints the stability thresholds for a few radii, then walks one cylinder
// through a period sweep to show the index climbing past each threshold.

#include <cstdio>

#include "cylstab/geometry.hpp"
#include "cylstab/spectra.hpp"

using namespace cylstab;

int main() {
    std::printf("thresholds by radius (r = sinh R)\n");
    std::printf("%8s %12s %12s %12s %12s\n", "r", "strong", "stable", "half-plane",
                "|A|^2-2");
    for (double r : {0.25, 0.5, 1.0, 2.0, 4.0}) {
        const auto g = cylinder_geometry_from_r(r);
        std::printf("%8.2f %12.6f %12.6f %12.6f %12.6f\n", r,
                    critical_length(g, CriticalKind::Strong),
                    critical_length(g, CriticalKind::Stable),
                    critical_length(g, CriticalKind::HalfPlaneStable), g.varpi);
    }

    const auto g = cylinder_geometry_from_r(1.0);
    std::printf("\nfixed ends at r = 1: index along the period\n");
    std::printf("%8s %8s %12s\n", "T", "index", "lambda_min");
    for (double T = 1.0; T <= 13.0; T += 2.0) {
        const auto rep = index_report(SupportScenario::dirichlet(T), g);
        std::printf("%8.1f %8d %12.6f\n", T, rep.counted_index, rep.lambda_min);
    }
    std::printf("\nthe index steps up each time T crosses a multiple of pi r\n");
    return 0;
}
