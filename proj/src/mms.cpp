#include "jjfrac/mms.hpp"

#include "jjfrac/errors.hpp"
#include "jjfrac/observables.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include <fmt/format.h>
#include <json.hpp>

namespace jjfrac {

namespace {

double kink_width(double c) {
    if (!(c >= 0.0 && c < 1.0)) throw DomainError(fmt::format("kink speed must satisfy 0 <= c < 1 (got {})", c));
    return std::sqrt(1.0 - c * c);
}

std::string g17(double x) { return fmt::format("{:.17g}", x); }

}  // namespace

double fabricated_solution(double z, double t, double c) { return initial_phase(z, c) + t * t; }

double fabricated_solution_dz(double z, double c) {
    const double w = kink_width(c);
    const double u = (z - 0.1) / w;
    return 2.0 / (w * std::cosh(u));
}

double kink_second_derivative(double z, double c) {
    const double w = kink_width(c);
    // odd in u; evaluated at -|u| so the exponentials stay bounded
    const double u = (z - 0.1) / w;
    const double v = -std::abs(u);
    const double e = std::exp(v);
    const double e2 = e * e;
    const double q = e2 + 1.0;
    const double value = 4.0 / (w * w) * (e / q - 2.0 * e2 * e / (q * q));
    return u > 0.0 ? -value : value;
}

double artificial_forcing(double z, double t, const DimensionlessParams& p) {
    const double a = p.alpha;
    const double frac = 2.0 * p.gamma1 * std::pow(t, 2.0 - a) / gamma_fn(3.0 - a) +
                        2.0 * p.gamma2 * std::pow(t, 2.0 - 2.0 * a) / gamma_fn(3.0 - 2.0 * a);
    return std::sin(fabricated_solution(z, t, p.c)) - kink_second_derivative(z, p.c) + frac - p.lambda;
}

SolverConfig mms_config(const SolverConfig& base) {
    SolverConfig cfg = base;
    const DimensionlessParams p = base.params;
    cfg.params.Abc = fabricated_solution_dz(domain_left, p.c);
    cfg.params.Bbc = fabricated_solution_dz(domain_right, p.c);
    cfg.forcing = [p](double z, double t) { return artificial_forcing(z, t, p); };
    cfg.initialProfile = {};
    return cfg;
}

LineFit fit_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw PreconditionError("fit_slope: x and y differ in length");
    const std::size_t n = x.size();
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += x[i];
        my += y[i];
    }
    if (n < 2) throw DomainError("fit_slope needs at least two distinct abscissae");
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0;
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double span = *std::max_element(x.begin(), x.end()) - *std::min_element(x.begin(), x.end());
    if (!(span > 0.0)) throw DomainError("fit_slope needs at least two distinct abscissae");
    LineFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss += r * r;
    }
    fit.residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

CouplingRule default_coupling() {
    return [](std::size_t n, double T) {
        return static_cast<std::size_t>(std::ceil(16.0 * static_cast<double>(n) * T - 1e-9));
    };
}

ConvergenceTable convergence_study(const SolverConfig& base, const std::vector<std::size_t>& meshes,
                                   const CouplingRule& coupling, std::size_t workers) {
    struct Outcome {
        std::optional<ConvergenceRow> row;
        std::optional<RunFailure> failure;
    };
    const SolverConfig mms = mms_config(base);
    std::vector<Outcome> outcomes(meshes.size());
    const QuadratureRule quad = gauss_legendre(8);
    const double T = mms.params.T;
    const double c = mms.params.c;

    auto work = [&](std::size_t idx) {
        SolverConfig cfg = mms;
        cfg.n = meshes[idx];
        cfg.m = coupling(cfg.n, T);
        cfg.snapshotStride = 0;
        SolverState state = initialize(cfg);
        RunResult res = run(state);
        if (!res.completed()) {
            outcomes[idx].failure = res.failure;
            return;
        }
        const auto& snap = res.trajectory.snapshots.back();
        ConvergenceRow row;
        row.n = cfg.n;
        row.m = cfg.m;
        row.h = state.mesh.h();
        row.tau = state.grid.tau;
        auto exact = [&](double z) { return fabricated_solution(z, snap.t, c); };
        auto exact_dz = [&](double z) { return fabricated_solution_dz(z, c); };
        row.l2 = l2_error(snap.phase, exact, state.mesh, quad);
        row.h1 = h1_error(snap.phase, exact, exact_dz, state.mesh, quad);
        row.z.assign(state.mesh.coordinates().begin(), state.mesh.coordinates().end());
        row.approx = snap.phase;
        row.exact.resize(row.z.size());
        for (std::size_t i = 0; i < row.z.size(); ++i) {
            row.exact[i] = exact(row.z[i]);
            row.maxDeviation = std::max(row.maxDeviation, std::abs(row.approx[i] - row.exact[i]));
        }
        outcomes[idx].row = std::move(row);
    };

    std::size_t pool = workers == 0 ? std::max(1u, std::thread::hardware_concurrency()) : workers;
    pool = std::min(pool, meshes.size());
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(meshes.size());
    {
        std::vector<std::jthread> threads;
        for (std::size_t w = 0; w < pool; ++w) {
            threads.emplace_back([&] {
                for (std::size_t i = next++; i < meshes.size(); i = next++) {
                    try {
                        work(i);
                    } catch (...) {
                        errors[i] = std::current_exception();
                    }
                }
            });
        }
    }
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }

    ConvergenceTable table;
    for (std::size_t i = 0; i < meshes.size(); ++i) {
        if (outcomes[i].failure) {
            table.failure = outcomes[i].failure;
            table.failedN = meshes[i];
            break;
        }
        table.rows.push_back(std::move(*outcomes[i].row));
    }
    if (table.rows.size() >= 2) {
        std::vector<double> lh;
        std::vector<double> l2;
        std::vector<double> h1;
        for (const auto& r : table.rows) {
            lh.push_back(std::log(r.h));
            l2.push_back(std::log(r.l2));
            h1.push_back(std::log(r.h1));
        }
        table.l2Fit = fit_slope(lh, l2);
        table.h1Fit = fit_slope(lh, h1);
    }
    return table;
}

void write_convergence_csv(std::ostream& os, const ConvergenceTable& table) {
    os << "n,m,h,tau,l2_error,h1_error,max_deviation\n";
    for (const auto& r : table.rows) {
        os << r.n << ',' << r.m << ',' << g17(r.h) << ',' << g17(r.tau) << ',' << g17(r.l2) << ',' << g17(r.h1) << ','
           << g17(r.maxDeviation) << '\n';
    }
}

void write_overlay_csv(std::ostream& os, const ConvergenceRow& row) {
    os << "z,approx,exact,deviation,max_deviation\n";
    for (std::size_t i = 0; i < row.z.size(); ++i) {
        os << g17(row.z[i]) << ',' << g17(row.approx[i]) << ',' << g17(row.exact[i]) << ','
           << g17(std::abs(row.approx[i] - row.exact[i])) << ',' << g17(row.maxDeviation) << '\n';
    }
}

std::string convergence_summary_json(const ConvergenceTable& table) {
    nlohmann::ordered_json j;
    auto fit = [](const std::optional<LineFit>& f) -> nlohmann::ordered_json {
        if (!f) return nullptr;
        return {{"slope", f->slope}, {"intercept", f->intercept}, {"residual", f->residual}};
    };
    j["meshes"] = nlohmann::ordered_json::array();
    for (const auto& r : table.rows) j["meshes"].push_back(r.n);
    j["l2"] = fit(table.l2Fit);
    j["h1"] = fit(table.h1Fit);
    if (!table.l2Fit) j["notice"] = "fewer than two meshes: slope fitting skipped";
    if (table.failure) {
        j["failure"] = {{"n", table.failedN},
                        {"step", table.failure->step},
                        {"iterations", table.failure->iterations},
                        {"residual", table.failure->residual},
                        {"message", table.failure->message}};
    }
    return j.dump(2) + "\n";
}

}  // namespace jjfrac
