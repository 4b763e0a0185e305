#include "contact_optics/checks.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include <omp.h>

#include "contact_optics/contact.hpp"

namespace contact_optics {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

struct CheckSpec {
    const char* name;
    double tolerance;
    bool euclidean_only;
    std::function<double(Geometry, double, std::mt19937_64&, const CheckOptions&)> residual;
};

ContactState random_state(Geometry geom, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> coord(-5.0, 5.0);
    std::uniform_real_distribution<double> height(0.5, 3.0);
    std::uniform_real_distribution<double> turn(0.0, kTwoPi);
    std::uniform_real_distribution<double> polar(0.0, std::numbers::pi);
    switch (geom.kind) {
        case GeometryKind::Euclidean2: return {Vec{coord(rng), coord(rng)}, Vec{turn(rng)}};
        case GeometryKind::Euclidean3: {
            Vec base{coord(rng), coord(rng), coord(rng)};
            const double theta = polar(rng);
            return {base, Vec{theta, turn(rng)}};
        }
        case GeometryKind::HyperbolicHalfPlane: {
            const double x = coord(rng);
            return {Vec{x, height(rng)}, Vec{turn(rng)}};
        }
    }
    return {};
}

double angle_gap(double a, double b) {
    const double d = wrap_angle(a - b);
    return std::min(d, kTwoPi - d);
}

double state_gap(const ContactState& a, const ContactState& b) {
    double gap = norm(a.base - b.base);
    for (std::size_t i = 0; i < a.fiber.size(); ++i) gap = std::max(gap, angle_gap(a.fiber[i], b.fiber[i]));
    return gap;
}

std::vector<CheckSpec> battery() {
    std::vector<CheckSpec> checks;
    checks.push_back({"cosphere", 1e-12, false, [](Geometry g, double n, std::mt19937_64& rng, const CheckOptions&) {
                          const auto s = random_state(g, rng);
                          const Covector p = momentum_of(g, n, s);
                          return std::abs(dot(p, p) / conformal_factor(g, n, s.base) - 1.0);
                      }});
    checks.push_back({"reeb_g_unit_speed", 1e-10, false, [](Geometry g, double n, std::mt19937_64& rng, const CheckOptions&) {
                          const auto s = random_state(g, rng);
                          const Vec v = reeb_field(g, n, s).base_rate;
                          return std::abs(g_inner(g, n, s.base, v, v) - 1.0);
                      }});
    checks.push_back({"reeb_coordinate_speed", 1e-12, true, [](Geometry g, double n, std::mt19937_64& rng, const CheckOptions&) {
                          const auto s = random_state(g, rng);
                          return std::abs(norm(reeb_field(g, n, s).base_rate) - 1.0 / n);
                      }});
    const auto perturbed = [](Geometry g, double n, const ContactState& s, const CheckOptions& o) {
        StateVelocity xi = reeb_field(g, n, s);
        for (double& r : xi.fiber_rate) r += o.reeb_fiber_perturbation;
        return xi;
    };
    checks.push_back({"reeb_lambda_of_xi", 1e-9, false, [perturbed](Geometry g, double n, std::mt19937_64& rng, const CheckOptions& o) {
                          const auto s = random_state(g, rng);
                          return verify_reeb_field(g, n, s, perturbed(g, n, s, o)).contraction;
                      }});
    checks.push_back({"reeb_xi_into_dlambda", 1e-6, false, [perturbed](Geometry g, double n, std::mt19937_64& rng, const CheckOptions& o) {
                          const auto s = random_state(g, rng);
                          return verify_reeb_field(g, n, s, perturbed(g, n, s, o)).curvature;
                      }});
    checks.push_back({"reeb_xi_into_dlambda_half_step", 1e-6, false,
                      [perturbed](Geometry g, double n, std::mt19937_64& rng, const CheckOptions& o) {
                          const auto s = random_state(g, rng);
                          return verify_reeb_field(g, n, s, perturbed(g, n, s, o), 0.5 * kDefaultFdStep).curvature;
                      }});
    checks.push_back({"strict_contact", 1e-6, false, [](Geometry g, double n, std::mt19937_64& rng, const CheckOptions&) {
                          const auto s = random_state(g, rng);
                          const double t = std::uniform_real_distribution<double>(-2.0, 2.0)(rng);
                          return verify_strict_contact(g, n, s, t);
                      }});
    checks.push_back({"flow_group_law", 1e-9, false, [](Geometry g, double n, std::mt19937_64& rng, const CheckOptions&) {
                          const auto s = random_state(g, rng);
                          std::uniform_real_distribution<double> dt(-1.0, 1.0);
                          const double t1 = dt(rng);
                          const double t2 = dt(rng);
                          return state_gap(closed_flow(g, n, s, t1 + t2), closed_flow(g, n, closed_flow(g, n, s, t1), t2));
                      }});
    return checks;
}

}  // namespace

bool VerificationReport::all_pass() const {
    return std::all_of(records.begin(), records.end(), [](const CheckRecord& r) { return r.pass; });
}

std::string VerificationReport::to_text() const {
    std::string out;
    char line[256];
    for (const auto& r : records) {
        std::snprintf(line, sizeof line, "%-32s %-11s n=%-5.3g samples=%-6zu max=%.3e tol=%.1e %s\n", r.name.c_str(),
                      std::string(to_string(r.geometry)).c_str(), r.n, r.samples, r.max_residual, r.tolerance,
                      r.pass ? "PASS" : "FAIL");
        out += line;
    }
    return out;
}

VerificationReport run_checks(std::uint64_t seed, std::size_t samples, const CheckOptions& options) {
    if (samples < 1) throw std::invalid_argument("run_checks: samples must be >= 1");
    const int workers = options.threads > 0 ? options.threads : omp_get_max_threads();
    const auto checks = battery();
    const GeometryKind kinds[] = {GeometryKind::Euclidean2, GeometryKind::Euclidean3, GeometryKind::HyperbolicHalfPlane};
    const double indices[] = {1.0, 1.33, 2.0};

    VerificationReport report;
    std::uint64_t stream = 0;
    for (std::size_t c = 0; c < checks.size(); ++c) {
        for (GeometryKind kind : kinds) {
            const Geometry geom{kind};
            if (checks[c].euclidean_only && geom.hyperbolic()) continue;
            for (double n : indices) {
                ++stream;
                double worst = 0.0;
                const auto count = static_cast<std::ptrdiff_t>(samples);
#pragma omp parallel for reduction(max : worst) num_threads(workers)
                for (std::ptrdiff_t i = 0; i < count; ++i) {
                    // Per-sample stream: results do not depend on scheduling.
                    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                                      static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(i)};
                    std::mt19937_64 rng(seq);
                    double r = checks[c].residual(geom, n, rng, options);
                    if (!(r == r)) r = std::numeric_limits<double>::infinity();
                    worst = std::max(worst, r);
                }
                report.records.push_back({checks[c].name, kind, n, samples, worst, checks[c].tolerance,
                                          worst <= checks[c].tolerance});
            }
        }
    }
    return report;
}

}  // namespace contact_optics
