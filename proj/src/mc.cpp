#include "dynkin/mc.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>
#include <thread>

namespace dynkin::mc {

double Rng::exponential(double rate) { return -std::log(uniform()) / rate; }

double Rng::normal() {
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = uniform();
    const double u2 = uniform();
    const double radius = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    spare_ = radius * std::sin(angle);
    has_spare_ = true;
    return radius * std::cos(angle);
}

double pairwise_sum(std::span<const double> v) {
    if (v.size() <= 8) {
        double s = 0.0;
        for (double x : v) s += x;
        return s;
    }
    const std::size_t half = v.size() / 2;
    return pairwise_sum(v.first(half)) + pairwise_sum(v.subspan(half));
}

double effective_dt(const SimConfig& cfg, double r) {
    if (cfg.dt > 0.0) return cfg.dt;
    return 1e-4 * std::min(1.0, 1.0 / r);
}

double effective_horizon(const SimConfig& cfg, double r) {
    if (cfg.horizon_cap > 0.0) return cfg.horizon_cap;
    return 30.0 / r;
}

int worker_count() {
    if (const char* env = std::getenv("DYNKIN_THREADS")) {
        const long n = std::strtol(env, nullptr, 10);
        if (n > 0) return static_cast<int>(std::min(n, 256L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

namespace {

void check_sim_config(const SimConfig& cfg) {
    if (cfg.paths < 1)
        throw std::invalid_argument("paths must be at least 1");
    if (cfg.dt < 0.0 || cfg.horizon_cap < 0.0)
        throw std::invalid_argument("dt and horizon_cap must be nonnegative");
}

// Runs fn(path_index, rng) for every path, spreading contiguous index
// ranges over workers. Each path seeds its own stream, so the partition has
// no effect on the values written.
template <typename Fn>
void over_paths(std::int64_t paths, std::uint64_t seed, Fn&& fn) {
    const int workers =
        static_cast<int>(std::min<std::int64_t>(worker_count(), paths));
    if (workers <= 1) {
        for (std::int64_t i = 0; i < paths; ++i) {
            Rng rng(stream_seed(seed, static_cast<std::uint64_t>(i)));
            fn(i, rng);
        }
        return;
    }
    const std::int64_t chunk = (paths + workers - 1) / workers;
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        const std::int64_t begin = w * chunk;
        const std::int64_t end = std::min(paths, begin + chunk);
        if (begin >= end) break;
        pool.emplace_back([&fn, seed, begin, end] {
            for (std::int64_t i = begin; i < end; ++i) {
                Rng rng(stream_seed(seed, static_cast<std::uint64_t>(i)));
                fn(i, rng);
            }
        });
    }
    for (auto& t : pool) t.join();
}

ExtremaSample extrema_brownian(const levy::Model& m, double r, double dt,
                               Rng& rng) {
    const double horizon = rng.exponential(r);
    const double sdt = m.sigma * std::sqrt(dt);
    ExtremaSample out;
    double x = 0.0, t = 0.0;
    while (t + dt <= horizon) {
        x += m.c * dt + sdt * rng.normal();
        t += dt;
        out.inf = std::min(out.inf, x);
        out.sup = std::max(out.sup, x);
    }
    const double rem = horizon - t;
    if (rem > 0.0) {
        x += m.c * rem + m.sigma * std::sqrt(rem) * rng.normal();
        out.inf = std::min(out.inf, x);
        out.sup = std::max(out.sup, x);
    }
    return out;
}

// Exact: between jumps the path climbs at rate c, so the supremum over a
// segment is its right endpoint before the jump lands, and the infimum can
// only move at points just after a jump.
ExtremaSample extrema_cramer_lundberg(const levy::Model& m, double r,
                                      Rng& rng) {
    const double horizon = rng.exponential(r);
    ExtremaSample out;
    double x = 0.0, t = 0.0;
    for (;;) {
        const double gap = rng.exponential(m.lambda1);
        if (t + gap >= horizon) {
            out.sup = std::max(out.sup, x + m.c * (horizon - t));
            return out;
        }
        t += gap;
        const double peak = x + m.c * gap;
        out.sup = std::max(out.sup, peak);
        x = peak - rng.exponential(m.alpha1);
        out.inf = std::min(out.inf, x);
    }
}

// Exact: the path is piecewise constant, so both extrema live on the set of
// post-jump values plus the starting point.
ExtremaSample extrema_compound_poisson(const levy::Model& m, double r,
                                       Rng& rng) {
    const double horizon = rng.exponential(r);
    const double total = m.lambda1 + m.lambda2;
    const double p_down = m.lambda1 / total;
    ExtremaSample out;
    double x = 0.0, t = 0.0;
    for (;;) {
        t += rng.exponential(total);
        if (t >= horizon) return out;
        if (rng.uniform() < p_down)
            x -= rng.exponential(m.alpha1);
        else
            x += rng.exponential(m.alpha2);
        out.inf = std::min(out.inf, x);
        out.sup = std::max(out.sup, x);
    }
}

}  // namespace

std::vector<ExtremaSample> simulate_extrema(const levy::Model& m, double r,
                                            const SimConfig& cfg) {
    check_sim_config(cfg);
    if (!(std::isfinite(r) && r > 0.0))
        throw std::invalid_argument("r must be positive");
    const double dt = effective_dt(cfg, r);
    std::vector<ExtremaSample> out(static_cast<std::size_t>(cfg.paths));
    over_paths(cfg.paths, cfg.seed, [&](std::int64_t i, Rng& rng) {
        switch (m.family) {
            case levy::Family::BrownianMotion:
                out[static_cast<std::size_t>(i)] =
                    extrema_brownian(m, r, dt, rng);
                break;
            case levy::Family::CramerLundberg:
                out[static_cast<std::size_t>(i)] =
                    extrema_cramer_lundberg(m, r, rng);
                break;
            case levy::Family::CompoundPoisson:
                out[static_cast<std::size_t>(i)] =
                    extrema_compound_poisson(m, r, rng);
                break;
        }
    });
    return out;
}

Estimate summarize(std::span<const double> values) {
    Estimate e;
    e.paths = static_cast<std::int64_t>(values.size());
    if (e.paths == 0) return e;
    const double n = static_cast<double>(e.paths);
    e.mean = pairwise_sum(values) / n;
    if (e.paths < 2) return e;
    std::vector<double> sq(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        const double d = values[i] - e.mean;
        sq[i] = d * d;
    }
    const double var = pairwise_sum(sq) / (n - 1.0);
    e.std_error = std::sqrt(var / n);
    return e;
}

namespace {

double payoff_brownian(const game::Spec& g, double x0, double lower,
                       double upper, double dt, double horizon, Rng& rng) {
    const double sdt = g.model.sigma * std::sqrt(dt);
    double x = x0, t = 0.0;
    while (t < horizon) {
        x += g.model.c * dt + sdt * rng.normal();
        t += dt;
        if (x >= upper) return std::exp(-g.r * t) * (x - g.delta);
        if (x <= lower) return std::exp(-g.r * t) * (x + g.delta);
    }
    return 0.0;
}

double payoff_cramer_lundberg(const game::Spec& g, double x0, double lower,
                              double upper, double horizon, Rng& rng) {
    double x = x0, t = 0.0;
    for (;;) {
        // Next upward boundary crossing happens by drift at an exact,
        // analytic time; a jump before then can only trigger the lower rule.
        const double gap = rng.exponential(g.model.lambda1);
        const double to_upper = (upper - x) / g.model.c;
        if (to_upper <= gap) {
            t += to_upper;
            if (t > horizon) return 0.0;
            return std::exp(-g.r * t) * (upper - g.delta);
        }
        t += gap;
        if (t > horizon) return 0.0;
        x += g.model.c * gap - rng.exponential(g.model.alpha1);
        if (x <= lower) return std::exp(-g.r * t) * (x + g.delta);
    }
}

double payoff_compound_poisson(const game::Spec& g, double x0, double lower,
                               double upper, double horizon, Rng& rng) {
    const double total = g.model.lambda1 + g.model.lambda2;
    const double p_down = g.model.lambda1 / total;
    double x = x0, t = 0.0;
    for (;;) {
        t += rng.exponential(total);
        if (t > horizon) return 0.0;
        if (rng.uniform() < p_down)
            x -= rng.exponential(g.model.alpha1);
        else
            x += rng.exponential(g.model.alpha2);
        if (x >= upper) return std::exp(-g.r * t) * (x - g.delta);
        if (x <= lower) return std::exp(-g.r * t) * (x + g.delta);
    }
}

}  // namespace

Estimate estimate_payoff(const game::Spec& g, double x0, double lower,
                         double upper, const SimConfig& cfg) {
    check_sim_config(cfg);
    const double horizon = effective_horizon(cfg, g.r);
    if (g.r * horizon < 20.0)
        throw std::invalid_argument(
            "estimate_payoff: r * horizon_cap must be at least 20");
    // The upper rule wins ties, including an immediate stop at t = 0.
    if (x0 >= upper) {
        return {x0 - g.delta, 0.0, cfg.paths};
    }
    if (x0 <= lower) {
        return {x0 + g.delta, 0.0, cfg.paths};
    }
    const double dt = effective_dt(cfg, g.r);
    std::vector<double> payoff(static_cast<std::size_t>(cfg.paths));
    over_paths(cfg.paths, cfg.seed, [&](std::int64_t i, Rng& rng) {
        double v = 0.0;
        switch (g.model.family) {
            case levy::Family::BrownianMotion:
                v = payoff_brownian(g, x0, lower, upper, dt, horizon, rng);
                break;
            case levy::Family::CramerLundberg:
                v = payoff_cramer_lundberg(g, x0, lower, upper, horizon, rng);
                break;
            case levy::Family::CompoundPoisson:
                v = payoff_compound_poisson(g, x0, lower, upper, horizon, rng);
                break;
        }
        payoff[static_cast<std::size_t>(i)] = v;
    });
    return summarize(payoff);
}

double bias_allowance(const levy::Model& m, double r, const SimConfig& cfg) {
    if (m.family != levy::Family::BrownianMotion) return 0.0;
    return 5.0 * m.sigma * std::sqrt(effective_dt(cfg, r));
}

SaddleReport saddle_check(const game::Solution& s, double x0,
                          std::span<const double> offsets,
                          const SimConfig& cfg) {
    SaddleReport report;
    report.x0 = x0;
    report.allowance = bias_allowance(s.spec.model, s.spec.r, cfg);
    const double v0 = game::value(s, x0);
    report.all_pass = true;
    std::uint64_t salt = 0;
    for (double b : offsets) {
        if (!(s.x_sup + b > s.x_inf) || !(s.x_inf + b < s.x_sup))
            throw std::invalid_argument(
                "saddle_check: offset collapses the continuation interval");
        for (const bool upper_side : {true, false}) {
            SimConfig cell = cfg;
            cell.seed = stream_seed(cfg.seed, 0x5add1e00 + salt++);
            SaddleCell c;
            c.offset = b;
            c.perturbs_upper = upper_side;
            c.bound = v0;
            c.est = upper_side
                        ? estimate_payoff(s.spec, x0, s.x_inf, s.x_sup + b,
                                          cell)
                        : estimate_payoff(s.spec, x0, s.x_inf + b, s.x_sup,
                                          cell);
            c.tolerance = 3.5 * c.est.std_error + report.allowance;
            c.pass = upper_side ? c.est.mean <= c.bound + c.tolerance
                                : c.est.mean >= c.bound - c.tolerance;
            report.all_pass = report.all_pass && c.pass;
            report.cells.push_back(c);
        }
    }
    return report;
}

double ks_statistic(std::vector<double>& magnitudes,
                    const wh::OneSidedLaw& law) {
    if (magnitudes.empty())
        throw std::invalid_argument("ks_statistic: empty sample");
    std::sort(magnitudes.begin(), magnitudes.end());
    const double n = static_cast<double>(magnitudes.size());
    // Walk runs of tied values. On the upper side the law's cdf faces the
    // empirical cdf after the whole run; on the lower side it faces the
    // empirical cdf before the run, against the law's left limit — zero at
    // the origin, where the law carries its atom, and the cdf itself
    // elsewhere, where the law is continuous. Comparing the plain cdf at a
    // run of zeros would report the atom mass itself as the distance.
    double d = 0.0;
    std::size_t i = 0;
    while (i < magnitudes.size()) {
        std::size_t j = i;
        while (j < magnitudes.size() && magnitudes[j] == magnitudes[i]) ++j;
        const double cdf = law.cdf(magnitudes[i]);
        const double cdf_left = magnitudes[i] == 0.0 ? 0.0 : cdf;
        const double lo = static_cast<double>(i) / n;
        const double hi = static_cast<double>(j) / n;
        d = std::max(d, std::max(cdf_left - lo, hi - cdf));
        i = j;
    }
    return d;
}

double ks_critical(std::int64_t n, double alpha) {
    if (n < 1 || !(alpha > 0.0 && alpha < 1.0))
        throw std::invalid_argument("ks_critical: bad arguments");
    return std::sqrt(-0.5 * std::log(alpha / 2.0)) /
           std::sqrt(static_cast<double>(n));
}

AtomCheck check_atom(std::span<const double> magnitudes, double expected) {
    if (magnitudes.empty())
        throw std::invalid_argument("check_atom: empty sample");
    const double n = static_cast<double>(magnitudes.size());
    double zeros = 0.0;
    for (double m : magnitudes)
        if (m == 0.0) zeros += 1.0;
    AtomCheck a;
    a.expected = expected;
    a.estimate = zeros / n;
    // Binomial error under the claimed mass, not the observed one: with a
    // claimed mass of zero this collapses to demanding a sample with no
    // ties at the origin at all, which is exactly right for a continuous law.
    a.std_error = std::sqrt(a.expected * (1.0 - a.expected) / n);
    a.pass = std::abs(a.estimate - a.expected) <= 3.5 * a.std_error;
    return a;
}

}  // namespace dynkin::mc
