// Compares the serial reference kernels against the OpenMP ones on
// representative workloads and prints a small table.  Values are checked to
// agree between the two paths before a row is reported.

#include <chrono>
#include <cstdio>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "dimcert/membership.hpp"
#include "dimcert/quantum.hpp"
#include "dimcert/rng.hpp"
#include "dimcert/witness.hpp"

using namespace dimcert;

namespace {

double now_ms() {
    return std::chrono::duration<double, std::milli>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

template <typename F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int r = 0; r < reps; ++r) {
        const double t0 = now_ms();
        f();
        best = std::min(best, now_ms() - t0);
    }
    return best;
}

void report(const std::string& name, double serial_ms, double parallel_ms, bool agree) {
    std::printf("%-38s %10.2f %10.2f %8.2fx  %s\n", name.c_str(), serial_ms, parallel_ms,
                serial_ms / parallel_ms, agree ? "ok" : "MISMATCH");
}

Witness random_witness(const Scenario& sc, std::uint64_t seed) {
    SplitMix64 rng(seed);
    std::vector<double> coeffs(static_cast<std::size_t>(sc.n_preparations) * sc.n_measurements);
    for (double& c : coeffs) c = rng.gaussian();
    return Witness(sc, std::move(coeffs));
}

} // namespace

int main() {
#ifdef _OPENMP
    std::printf("OpenMP threads: %d\n\n", omp_get_max_threads());
#else
    std::printf("built without OpenMP; both columns run the serial path\n\n");
#endif
    std::printf("%-38s %10s %10s %9s\n", "kernel", "serial ms", "omp ms", "speedup");

    MembershipOptions serial_opts, parallel_opts;
    serial_opts.policy = ExecPolicy::Serial;
    parallel_opts.policy = ExecPolicy::Parallel;
    serial_opts.vertex_cap = parallel_opts.vertex_cap = 2'000'000;

    {
        const Witness w = build_IN(5); // (5,4) at d = 4: 524,416 vertices
        double vs = 0.0, vp = 0.0;
        const double ts = best_of(3, [&] { vs = classical_max(w, 4, serial_opts); });
        const double tp = best_of(3, [&] { vp = classical_max(w, 4, parallel_opts); });
        report("classical_max I_5 (5,4) d=4", ts, tp, vs == vp);
    }
    {
        const Witness w = random_witness(Scenario(5, 4), 17); // dense doubles, BigInt path
        double vs = 0.0, vp = 0.0;
        const double ts = best_of(3, [&] { vs = classical_max(w, 4, serial_opts); });
        const double tp = best_of(3, [&] { vp = classical_max(w, 4, parallel_opts); });
        report("classical_max random (5,4) d=4", ts, tp, vs == vp);
    }
    {
        const Witness w = build_IN(5);
        const auto coeffs = witness_coeffs_exact(w);
        const Rational bound(bound_LN(5, 4));
        WitnessSweepReport rs, rp;
        const double ts =
            best_of(3, [&] { rs = sweep_witness_exact(coeffs, w.scenario, 4, bound, serial_opts); });
        const double tp = best_of(3, [&] {
            rp = sweep_witness_exact(coeffs, w.scenario, 4, bound, parallel_opts);
        });
        report("sweep I_5 <= 12 (5,4) d=4", ts, tp,
               rs.max_value == rp.max_value && rs.n_saturating == rp.n_saturating);
    }
    {
        SeesawOptions so;
        so.restarts = 50;
        so.policy = ExecPolicy::Serial;
        SeesawOptions po = so;
        po.policy = ExecPolicy::Parallel;
        const Witness w = build_IN(4);
        SeesawResult rs, rp;
        const double ts = best_of(3, [&] { rs = seesaw_maximize(w, 3, so); });
        const double tp = best_of(3, [&] { rp = seesaw_maximize(w, 3, po); });
        report("see-saw I_4 d=3, 50 restarts", ts, tp,
               rs.value == rp.value && rs.best_restart == rp.best_restart);
    }
    {
        J3SearchResult rs, rp;
        const double ts = best_of(3, [&] { rs = j3_search(100, 0, {}, ExecPolicy::Serial); });
        const double tp = best_of(3, [&] { rp = j3_search(100, 0, {}, ExecPolicy::Parallel); });
        report("J_3 search, 100 restarts", ts, tp,
               rs.max_found == rp.max_found && rs.best_restart == rp.best_restart);
    }
    return 0;
}
