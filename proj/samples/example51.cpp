// Solve the Example 5.1 set optimization problem under the three ordering
// cones and print one line per iteration.

#include <cstdio>

#include "settr/settr.hpp"

int main() {
  using namespace settr;
  const SetMapProblem P = instantiate("Example5.1");
  const Vector x0 = (Vector(2) << 9.0, 8.0).finished();

  for (const char* name : {"K1", "K2", "K3"}) {
    const PolyhedralCone K = named_cone(name, 2);
    const RunResult res = trust_region_run(P, K, x0);
    std::printf("%s: %s after %d iterations, x = (%.6f, %.6f)\n", name, to_string(res.status), res.iterations,
                res.x_final[0], res.x_final[1]);
    for (const auto& r : res.trace)
      std::printf("  k=%-3d %-15s t=% .3e omega=%.4g |Min F(x)|=%d\n", r.k, to_string(r.status), r.t, r.omega,
                  r.omega_count);
  }
}
