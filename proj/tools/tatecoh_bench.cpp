// Wall-clock comparison of the serial reference kernels against their OpenMP versions.

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>

#include "tatecoh/floer.hpp"

using namespace tatecoh;

namespace {

double seconds(const std::function<void()>& f, int reps) {
    f(); // warm caches
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void row(const std::string& name, double serial, double parallel) {
    std::printf("%-34s %10.4f %10.4f %8.2fx\n", name.c_str(), serial, parallel, serial / parallel);
}

} // namespace

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::stoi(argv[1]) : 3;
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<long> coef(-1000, 1000);
    std::printf("threads: %d\n%-34s %10s %10s %9s\n", kernels::max_threads(), "kernel", "serial s", "omp s", "speedup");

    const RingPtr R = make_ring(RingDescriptor::laurent(RingDescriptor::padic(3, 20), "v", 4));
    for (int N : {128, 512}) {
        kernels::Coeffs a(static_cast<std::size_t>(N + 1)), b(static_cast<std::size_t>(N + 1));
        for (int j = 0; j <= N; ++j) {
            a[j] = R->monomial(coef(rng), j % 5);
            b[j] = R->monomial(coef(rng), -(j % 3));
        }
        row("series_mul N=" + std::to_string(N),
            seconds([&] { (void)kernels::series_mul_serial(*R, a, b, N); }, reps),
            seconds([&] { (void)kernels::series_mul_parallel(*R, a, b, N); }, reps));
    }

    for (int nv : {2, 3}) {
        const int N = nv == 2 ? 48 : 18;
        kernels::MultiCoeffs x(nv, N), y(nv, N);
        for (auto& c : x.data)
            c = R->from_int(coef(rng));
        for (auto& c : y.data)
            c = R->from_int(coef(rng));
        row("multi_mul nvars=" + std::to_string(nv) + " N=" + std::to_string(N),
            seconds([&] { (void)kernels::multi_mul_serial(*R, x, y); }, reps),
            seconds([&] { (void)kernels::multi_mul_parallel(*R, x, y); }, reps));
    }

    ManifoldModel m;
    m.dim = 8;
    for (int d = 0; d <= 8; ++d) {
        m.homology[d].free = 2;
        add_torsion(m.homology[d], 3, 1 + d % 3);
    }
    const std::vector<int> ks = {1, 2, 3, 4, 5, 6};
    row("morava tower p=3 k=1..6",
        seconds([&] { (void)morava_tate_tower_serial(m, 3, 2, ks, 32, 24); }, reps),
        seconds([&] { (void)morava_tate_tower(m, 3, 2, ks, 32, 24); }, reps));

    std::vector<OrbitDatum> orbits;
    for (int i = 1; i <= 40; ++i)
        orbits.push_back({mpq_class(i), 2 * (1 + i % 6), i % 3 ? OrbitParity::Good : OrbitParity::Bad, i % 4});
    std::vector<mpq_class> slopes;
    for (int i = 0; i < 16; ++i)
        slopes.push_back(mpq_class(5 * i + 1, 2));
    const SymplecticTower t = build_sh_tower(m, orbits, slopes, fgl_by_name("honda:3:1", 32));
    row("tate_of_tower 16 levels",
        seconds([&] { (void)tate_of_tower_serial(t.realized, 24); }, reps),
        seconds([&] { (void)tate_of_tower(t.realized, 24); }, reps));
    return 0;
}
