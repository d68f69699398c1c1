#include <benchmark/benchmark.h>

#include <cmath>
#include <map>
#include <vector>

#include "freight/econometrics.hpp"
#include "freight/geometry.hpp"
#include "freight/inventory.hpp"
#include "freight/network.hpp"
#include "freight/sr_ledger.hpp"

using namespace freight;

namespace {

// Small deterministic generator so benchmark inputs are stable run to run.
struct Rng {
    std::uint64_t state = 0x853c49e6748fea9bULL;
    double uniform() {
        state += 0x9e3779b97f4a7c15ULL;
        std::uint64_t z = state;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
        return (static_cast<double>(z >> 11) + 0.5) * 0x1.0p-53;
    }
};

Polygon star_polygon(Rng& rng, double cx, double cy, int n) {
    Ring ring;
    for (int i = 0; i < n; ++i) {
        const double a = 2.0 * M_PI * (i + 0.8 * rng.uniform()) / n;
        const double r = 5000.0 + 20000.0 * rng.uniform();
        ring.push_back(Point{cx + r * std::cos(a), cy + r * std::sin(a)});
    }
    return Polygon({ring});
}

}  // namespace

static void BM_OverlayWeights(benchmark::State& state) {
    Rng rng;
    const GridSpec grid{{0, 0}, 36000.0, 148, 112};
    std::vector<Polygon> zones;
    for (int i = 0; i < 64; ++i) {
        zones.push_back(star_polygon(rng, 40000.0 + rng.uniform() * 5.2e6,
                                     40000.0 + rng.uniform() * 3.9e6,
                                     static_cast<int>(state.range(0))));
    }
    std::size_t i = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(overlay_weights(zones[i % zones.size()], grid));
        ++i;
    }
}
BENCHMARK(BM_OverlayWeights)->Arg(8)->Arg(32)->Arg(128);

static void BM_AnnualVmt(benchmark::State& state) {
    Rng rng;
    const VmtParams params;
    std::vector<RoadLink> links(state.range(0));
    for (auto& link : links) {
        link.milepost_end = 1.0 + 20.0 * rng.uniform();
        link.adtt_longhaul = 2000.0 * rng.uniform();
        link.adtt_nonlonghaul = 800.0 * rng.uniform();
    }
    for (auto _ : state) {
        double total = 0.0;
        for (const auto& link : links) total += annual_vmt(link, params).total();
        benchmark::DoNotOptimize(total);
    }
    state.SetItemsProcessed(state.iterations() * links.size());
}
BENCHMARK(BM_AnnualVmt)->Arg(1024)->Arg(16384);

static void BM_OlsFit(benchmark::State& state) {
    Rng rng;
    const int n = static_cast<int>(state.range(0));
    const int k = 10;
    Eigen::MatrixXd X(n, k);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        X(i, 0) = 1.0;
        for (int j = 1; j < k; ++j) X(i, j) = rng.uniform();
        y(i) = rng.uniform();
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(ols_fit(X, y));
    }
}
BENCHMARK(BM_OlsFit)->Arg(512)->Arg(4096)->Arg(57766);

static void BM_SrDecompose(benchmark::State& state) {
    Rng rng;
    const int n_zones = static_cast<int>(state.range(0));
    std::vector<std::string> zones;
    for (int i = 0; i < n_zones; ++i) zones.push_back("Z" + std::to_string(i));

    std::map<std::string, PollutantDoubles> tons;
    for (const auto& z : zones) {
        for (Pollutant p : kAirPollutants) tons[z][p] = 10.0 * rng.uniform();
    }
    std::map<Pollutant, std::vector<SRTriplet>> triplets;
    for (Pollutant p : kAirPollutants) {
        for (const auto& s : zones) {
            for (const auto& r : zones) {
                if (rng.uniform() < 0.05) triplets[p].push_back({s, r, 1e4 * rng.uniform()});
            }
        }
    }
    const SRMatrix sr(zones, std::move(triplets));
    const EmissionsLedger ledger(ZoneKind::County, "greet", tons);
    for (auto _ : state) {
        benchmark::DoNotOptimize(decompose(receptor_damages(ledger, sr), sr));
    }
}
BENCHMARK(BM_SrDecompose)->Arg(64)->Arg(256);

BENCHMARK_MAIN();
