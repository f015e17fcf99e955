// Walkthrough on E = [0, 1] for Brownian motion with generator d²/dx².
#include <cstdio>

#include <sojourn/sojourn.hpp>

int main() {
    using namespace sojourn;
    const auto b = brownian_basis();
    const auto E = IntervalUnion::make({{0.0, 1.0}});
    const LaplaceParams params(1.0, {1.0});

    const auto sol = solve_sojourn(b, E, params);
    std::printf("gamma0 = %.12f\n", sol.coefficients.gamma0.value());
    for (double x : {-1.0, 0.0, 0.5, 1.0, 2.0}) {
        const double closed = phi_single_interval({0.0, 1.0, 1.0, 1.0, x});
        std::printf("phi(%4.1f) = %.12f   closed form %.12f\n", x, sol(x), closed);
    }

    // ψ(x, ·) integrates to φ(x)
    const JointEngine<BrownianBasis> joint(b, E, params);
    std::printf("psi(0.5, 0.25) = %.12f, integral over y = %.12f\n", joint.solve(0.25)(0.5),
                integrate_psi(joint, E, 1.0, 0.5));

    // local time at 0 with multiplier 1
    const auto pts = PointSet::make({0.0});
    std::printf("local time transform at x = 0: %.12f\n", local_time_transform(pts, params, 0.0));

    // back to time t = 1
    const auto e = expectation_at_time(b, E, {1.0}, 0.5, InversionConfig{14, 1.0});
    SimConfig mc;
    mc.paths = 20000;
    mc.dt = 1e-3;
    mc.threads = 0;
    const auto sim = estimate_sojourn_transform(b, E, {1.0}, 0.5, mc);
    std::printf("E_0.5 exp(-T_1): inversion %.6f, Monte Carlo %.6f +- %.6f\n", e.value, sim.mean, sim.std_error);
}
