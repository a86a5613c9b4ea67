#include <latsec/channel.hpp>
#include <latsec/cvp.hpp>
#include <latsec/quotient.hpp>
#include <latsec/rng.hpp>
#include <latsec/spectrum.hpp>
#include <latsec/theta.hpp>

#include <benchmark/benchmark.h>

using namespace latsec;

namespace {

void BM_EnumerateE8(benchmark::State& state) {
    const Lattice e8 = gosset_lattice();
    const auto radius_sq = static_cast<double>(state.range(0));
    for (auto _ : state) {
        benchmark::DoNotOptimize(enumerate_points(e8, radius_sq));
    }
}
BENCHMARK(BM_EnumerateE8)->Arg(4)->Arg(8)->Arg(16);

void BM_ClosestPointE8(benchmark::State& state) {
    const Lattice e8 = gosset_lattice();
    std::uint64_t trial = 0;
    for (auto _ : state) {
        Vector target(8);
        for (int c = 0; c < 8; c += 2) {
            const auto [g1, g2] = rng::gaussian_pair(
                rng::word(7, trial, 1, static_cast<std::uint64_t>(c)),
                rng::word(7, trial, 1, static_cast<std::uint64_t>(c) + 1));
            target[c] = 2.0 * g1;
            target[c + 1] = 2.0 * g2;
        }
        ++trial;
        benchmark::DoNotOptimize(closest_point(e8, target));
    }
}
BENCHMARK(BM_ClosestPointE8);

void BM_JacobiTheta3(benchmark::State& state) {
    const double q = std::exp(-3.14159265358979 * 0.25);
    for (auto _ : state) {
        benchmark::DoNotOptimize(jacobi_theta(JacobiTheta::theta3, q, 1e-12));
    }
}
BENCHMARK(BM_JacobiTheta3);

void BM_ThetaEnumerated(benchmark::State& state) {
    const Lattice d8 = checkerboard_lattice(8);
    const ThetaArg arg = ThetaArg::from_y(1.0);
    for (auto _ : state) {
        benchmark::DoNotOptimize(theta_enumerated(d8, arg, 1e-10));
    }
}
BENCHMARK(BM_ThetaEnumerated);

void BM_SecrecyGainE8(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(secrecy_gain(gosset_family()));
    }
}
BENCHMARK(BM_SecrecyGainE8);

void BM_SimulateZ2(benchmark::State& state) {
    const QuotientCode q =
        QuotientCode::build(integer_lattice(2), scaled(integer_lattice(2), 2.0));
    SimOptions opts;
    opts.trials = state.range(0);
    opts.seed = 99;
    opts.threads = 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(simulate(q, ChannelParams{0.2, 2.0}, opts));
    }
    state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_SimulateZ2)->Arg(1000)->Arg(10000);

void BM_MinEnergyRepE8(benchmark::State& state) {
    const QuotientCode q = QuotientCode::build(
        gosset_construction_a(), scaled(gosset_construction_a(), 2.0));
    std::int64_t idx = 0;
    for (auto _ : state) {
        std::string bits(8, '0');
        for (int b = 0; b < 8; ++b) {
            if (idx & (1 << b)) {
                bits[static_cast<std::size_t>(b)] = '1';
            }
        }
        idx = (idx + 1) & 0xff;
        benchmark::DoNotOptimize(
            q.min_energy_representative(q.label_from_bits(bits)));
    }
}
BENCHMARK(BM_MinEnergyRepE8);

}  // namespace

BENCHMARK_MAIN();
