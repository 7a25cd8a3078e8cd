#include "carpet/moduli.hpp"

#include <cmath>

#include "carpet/errors.hpp"
#include "carpet/trees.hpp"

namespace carpet::moduli {

ModuliSolution solve_moduli(int d0, int d1, int d2, int d3, double C) {
    if (C <= 0.0) throw argument_error("C must be positive");
    const auto tree = trees::builtin_tree(trees::TreeKind::HP, {d0, d1, d2, d3});
    const auto rep = trees::is_unobstructed(tree);
    if (!rep.unobstructed)
        throw domain_error("obstructed tree: leading eigenvalue " +
                           std::to_string(rep.leading_eigenvalue) +
                           " >= 1, the system has no positive solution");

    // V solves (I - M) V = 1, so M V = V - 1 componentwise; scaling by
    // mu = C/d3 + 1 then absorbs the +C/d3 load on the last inequality
    // with a gap of exactly 1.
    const auto& v = rep.perron_vector;
    const double mu = (C / d3 + 1.0) / (v[3] - (v[0] + v[1]) / d3);

    ModuliSolution sol;
    sol.C = C;
    sol.mu = mu;
    for (int i = 0; i < 4; ++i) sol.x[i] = mu * v[i];

    const auto& x = sol.x;
    sol.margins[0] = x[0] - x[1] / d0;
    sol.margins[1] = x[1] - x[2] / d1;
    sol.margins[2] = x[2] - (x[0] + x[3]) / d2;
    sol.margins[3] = x[3] - (x[0] + x[1] + C) / d3;
    for (double m : sol.margins)
        if (!(m > 0.0))
            throw numerical_error("moduli inequality failed post hoc despite "
                                  "unobstructedness");
    return sol;
}

EquipotentialLevels levels_from_moduli(const ModuliSolution& sol, double extra_margin) {
    if (extra_margin <= 1.0) throw argument_error("gap margin must exceed 1");
    EquipotentialLevels out;
    const double two_pi = 2.0 * M_PI;
    const double l0 = std::exp(-two_pi * sol.x[0]);
    const double l3p = l0 * std::exp(-two_pi * extra_margin);
    const double l3m = l3p * std::exp(-two_pi * sol.x[3]);
    out.levels["beta0"] = l0;
    out.levels["beta3+"] = l3p;
    out.levels["beta3-"] = l3m;
    // Derived single-modulus levels for the middle curves.
    out.levels["beta1"] = std::exp(-two_pi * sol.x[1]);
    out.levels["beta2"] = std::exp(-two_pi * sol.x[2]);
    out.gap_modulus = std::log(l0 / l3p) / two_pi;
    return out;
}

AnnulusDiskBound annulus_disk_bound(int n, int nprime) {
    if (n < 1 || nprime < 1) throw argument_error("n and n' must be >= 1");
    AnnulusDiskBound r;
    // 2 |lambda|^{n/(n+n')} = 4 e^{-pi}  =>  |lambda| = (2 e^{-pi})^{(n+n')/n}.
    r.lambda_mod = std::pow(2.0 * std::exp(-M_PI), double(n + nprime) / n);
    r.bound = 0.5 * (1.0 / n + 1.0 / nprime);
    return r;
}

AnnulusCheckReport mcmullen_annulus_check(int n, int nprime) {
    const auto adb = annulus_disk_bound(n, nprime);
    const double lam = adb.lambda_mod; // positive real representative
    const double rho = std::pow(lam, 1.0 / (n + nprime));
    const double R = std::exp(M_PI);

    auto g_abs = [&](Complex z) {
        return std::abs(std::pow(z, n) + lam / std::pow(z, nprime));
    };

    AnnulusCheckReport rep;
    const int samples = 720;

    // (a) the middle circle maps inside the closed disk of radius
    // 2 lam^{n/(n+n')} = 4/e^pi < 1; equality holds on the real axis, so
    // the comparison carries a hair of relative slack.
    const double inner_bound = 2.0 * std::pow(lam, double(n) / (n + nprime));
    double worst_a = 1e300;
    bool ok_a = inner_bound < 1.0;
    for (int k = 0; k < samples; ++k) {
        const double th = 2.0 * M_PI * k / samples;
        const double val = g_abs(std::polar(rho, th));
        worst_a = std::min(worst_a, inner_bound - val);
        if (val > inner_bound * (1.0 + 1e-12)) ok_a = false;
    }
    rep.circle_ok = ok_a;
    rep.circle_margin = worst_a;

    // (b) all n+n' free critical points lie in the unit disk's interior
    // after applying g.
    const double crad = std::pow(double(nprime) / n, 1.0 / (n + nprime)) * rho;
    double worst_b = 1e300;
    for (int k = 0; k < n + nprime; ++k) {
        const double th = 2.0 * M_PI * k / (n + nprime);
        const double val = g_abs(std::polar(crad, th));
        worst_b = std::min(worst_b, 1.0 - val);
    }
    rep.critical_ok = worst_b > 0.0;
    rep.critical_margin = worst_b;

    // (c) the two bounding circles map outside the closed unit disk.
    double worst_c = 1e300;
    for (double radius : {std::pow(R, -1.0 / nprime) * rho, std::pow(R, 1.0 / n) * rho}) {
        for (int k = 0; k < samples; ++k) {
            const double th = 2.0 * M_PI * k / samples;
            const double val = g_abs(std::polar(radius, th));
            worst_c = std::min(worst_c, val - 1.0);
        }
    }
    rep.outside_ok = worst_c > 0.0;
    rep.outside_margin = worst_c;
    return rep;
}

double separating_circle_bound(double eps, double C) {
    if (C <= 0.0) throw argument_error("C must be positive");
    if (eps <= 0.0 || eps >= 1.0 / C)
        throw domain_error("eps must lie in (0, 1/C) for the bound to exist");
    return std::log(1.0 / (1.0 - C * eps)) / (2.0 * std::sqrt(eps));
}

} // namespace carpet::moduli
