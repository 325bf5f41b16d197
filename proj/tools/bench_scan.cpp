// Timing comparison of the parallel scan evaluator against the serial
// reference path, on the model bulk measure.
#include "opkit/measure.hpp"
#include "opkit/orthopoly.hpp"
#include "opkit/potential.hpp"
#include "opkit/universality.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>

using namespace opkit;
using Clock = std::chrono::steady_clock;

static double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
    int nmax = argc > 1 ? std::atoi(argv[1]) : 1024;

    universality::ScanConfig cfg;
    cfg.measure = measure::make_model_bulk(1.0);
    cfg.x0 = 0.0;
    cfg.alpha = 1.0;
    for (double a = -5.0; a <= 5.0; a += 0.25) cfg.a_grid.push_back(a);
    cfg.b_grid = cfg.a_grid;
    for (int n = nmax / 8; n <= nmax; n *= 2) cfg.n_list.push_back(n);
    cfg.mode = universality::ScanMode::bulk_ratio;

    auto table = orthopoly::symmetric_singular_recurrence(1.0, nmax);
    auto eq = potential::equilibrium_density(
        potential::make_system({{-1.0, 1.0}}));

    auto t0 = Clock::now();
    auto par = universality::scan_bulk(cfg, table, eq, false);
    double t_par = seconds_since(t0);

    t0 = Clock::now();
    auto ser = universality::scan_bulk(cfg, table, eq, true);
    double t_ser = seconds_since(t0);

    double max_dev = 0.0;
    for (size_t i = 0; i < par.rows.size(); ++i)
        max_dev = std::max(max_dev,
                           std::abs(par.rows[i].measured - ser.rows[i].measured));

    std::printf("rows          %zu\n", par.rows.size());
    std::printf("parallel      %.3f s\n", t_par);
    std::printf("serial        %.3f s\n", t_ser);
    std::printf("speedup       %.2fx\n", t_ser / t_par);
    std::printf("max |dev|     %.3e  (must be 0)\n", max_dev);
    return max_dev == 0.0 ? 0 : 1;
}
