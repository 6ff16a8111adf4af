#include <chrono>
#include <cstdio>
#include <cstring>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pairbec/assembly.hpp"
#include "pairbec/kernels.hpp"
#include "pairbec/mesh.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

// Times each hot kernel in its serial reference form against the OpenMP
// variant on a realistic assembled operator, and verifies that the two
// produce bitwise identical results (the OpenMP decomposition assigns every
// output entry to one thread with the serial summation order).

namespace {

using Clock = std::chrono::steady_clock;

double time_ms(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    const auto start = Clock::now();
    for (int r = 0; r < reps; ++r) fn();
    const std::chrono::duration<double, std::milli> elapsed = Clock::now() - start;
    return elapsed.count() / reps;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() &&
           std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

void report(const char* name, double serial_ms, double omp_ms, bool identical) {
    std::printf("%-14s %10.3f ms %10.3f ms   x%-6.2f %s\n", name, serial_ms,
                omp_ms, serial_ms / omp_ms, identical ? "bitwise-equal" : "DIFFER");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Kernel benchmark: serial reference vs OpenMP variants"};
    double L = 40.0;
    int m = 16, nb = 32, reps = 20, threads = 0;
    app.add_option("--L", L, "box size");
    app.add_option("--m", m, "mesh subdivisions of d");
    app.add_option("--nb", nb, "block width");
    app.add_option("--reps", reps, "repetitions per kernel");
    app.add_option("--threads", threads, "OpenMP thread count (0 = default)");
    CLI11_PARSE(app, argc, argv);

#ifdef _OPENMP
    if (threads > 0) omp_set_num_threads(threads);
    std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
    std::printf("OpenMP not compiled in; both columns run serially\n");
#endif

    const pairbec::StripMesh mesh = pairbec::build_mesh({1.0, L}, m);
    const pairbec::AssembledOperator op = pairbec::assemble(mesh, 1.0);
    const pairbec::CsrMatrix& A = op.lhs;
    const int n = A.n;
    std::printf("operator: n = %d, nnz = %d, block = %d\n\n", n, A.nnz(), nb);
    std::printf("%-14s %13s %13s   %-7s %s\n", "kernel", "serial", "openmp",
                "speedup", "check");

    std::mt19937_64 rng(7);
    std::normal_distribution<double> dist(0.0, 1.0);
    std::vector<double> X(static_cast<std::size_t>(n) * nb);
    for (double& x : X) x = dist(rng);
    std::vector<double> s(nb);
    for (double& x : s) x = dist(rng);
    std::vector<double> Ys(X.size()), Yp(X.size());
    std::vector<double> Cs(static_cast<std::size_t>(nb) * nb), Cp(Cs.size());
    std::vector<double> ns(nb), np(nb);

    using namespace pairbec::kernels;

    double t_s = time_ms([&] { spmm_serial(A, X.data(), nb, Ys.data()); }, reps);
    double t_p = time_ms([&] { spmm_omp(A, X.data(), nb, Yp.data()); }, reps);
    report("spmm", t_s, t_p, bitwise_equal(Ys, Yp));

    t_s = time_ms([&] { gram_serial(X.data(), nb, Ys.data(), nb, n, Cs.data()); }, reps);
    t_p = time_ms([&] { gram_omp(X.data(), nb, Ys.data(), nb, n, Cp.data()); }, reps);
    report("gram", t_s, t_p, bitwise_equal(Cs, Cp));

    t_s = time_ms([&] { gemm_serial(X.data(), nb, Cs.data(), nb, n, Ys.data()); }, reps);
    t_p = time_ms([&] { gemm_omp(X.data(), nb, Cs.data(), nb, n, Yp.data()); }, reps);
    report("gemm", t_s, t_p, bitwise_equal(Ys, Yp));

    std::vector<double> Rs(X.size()), Rp(X.size());
    t_s = time_ms([&] { residual_serial(Ys.data(), X.data(), s.data(), nb, n, Rs.data()); }, reps);
    t_p = time_ms([&] { residual_omp(Ys.data(), X.data(), s.data(), nb, n, Rp.data()); }, reps);
    report("residual", t_s, t_p, bitwise_equal(Rs, Rp));

    t_s = time_ms([&] { column_norms_serial(X.data(), nb, n, ns.data()); }, reps);
    t_p = time_ms([&] { column_norms_omp(X.data(), nb, n, np.data()); }, reps);
    report("column_norms", t_s, t_p, bitwise_equal(ns, np));

    const SsorPreconditioner prec(A);
    t_s = time_ms([&] { prec.apply_serial(X.data(), nb, Ys.data()); }, reps);
    t_p = time_ms([&] { prec.apply_omp(X.data(), nb, Yp.data()); }, reps);
    report("ssor_apply", t_s, t_p, bitwise_equal(Ys, Yp));

    return 0;
}
