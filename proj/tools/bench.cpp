// Times the OpenMP kernels against their serial reference implementations.
#include <chrono>
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "sl2cert/characters.hpp"
#include "sl2cert/group.hpp"
#include "sl2cert/modular.hpp"
#include "sl2cert/ordinary.hpp"
#include "sl2cert/parallel.hpp"
#include "sl2cert/witt.hpp"

using namespace sl2cert;

namespace {

double seconds(std::chrono::steady_clock::time_point a, std::chrono::steady_clock::time_point b) {
    return std::chrono::duration<double>(b - a).count();
}

template <typename F>
double timed(F&& fn) {
    auto t0 = std::chrono::steady_clock::now();
    fn();
    auto t1 = std::chrono::steady_clock::now();
    return seconds(t0, t1);
}

void row(const std::string& name, double serial, double parallel, bool equal) {
    std::printf("%-28s %10.3fs %10.3fs %7.2fx   %s\n", name.c_str(), serial, parallel,
                parallel > 0 ? serial / parallel : 0.0, equal ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"serial vs OpenMP kernel comparison"};
    int p = 3;
    int threads = 0;
    app.add_option("--p", p, "prime (3 or 5)");
    app.add_option("--threads", threads, "worker threads (0 = default)");
    CLI11_PARSE(app, argc, argv);
    set_threads(threads);

    Fq F(p, 2);
    SL2 G(F);
    std::printf("p = %d, q = %d, |G| = %lld, threads = %d\n\n", p, F.q(), (long long)G.order(),
                max_threads());
    std::printf("%-28s %11s %11s %8s\n", "kernel", "serial", "parallel", "speedup");

    {
        std::vector<ClassLabel> a, b;
        double ts = timed([&] { a = classify_all_serial(G); });
        double tp = timed([&] { b = classify_all(G); });
        row("conjugacy tally", ts, tp, a == b);
    }

    ClassInventory inv = G.class_inventory(true);
    {
        ClassFunction a, b;
        double ts = timed([&] { a = borel_induced_character_serial(G, inv); });
        double tp = timed([&] { b = borel_induced_character(G, inv); });
        row("induced character sums", ts, tp, a.values == b.values);
    }

    WittRing W(F, 12);
    InducedModule ind(G);
    ClassFunction rp = half_induced_character(F, inv, +1);
    GroupAlgebraElem e = central_idempotent(G, inv, W, rp, (F.q() + 1) / 2);
    {
        PadicMatrix a, b;
        double ts = timed([&] { a = algebra_action_matrix(G, ind, W, e, false); });
        double tp = timed([&] { b = algebra_action_matrix(G, ind, W, e, true); });
        row("idempotent application", ts, tp, a == b);
    }
    {
        std::vector<std::int64_t> a, b;
        double ts = timed([&] { a = convolve_serial(G, W, e.scaled, e.scaled); });
        double tp = timed([&] { b = convolve(G, W, e.scaled, e.scaled); });
        row("group-algebra convolution", ts, tp, a == b);
    }
    {
        KGModule L = simple_module(F, G.default_generators(), (F.q() - 1) / 2);
        SimplicityResult a{}, b{};
        if (line_count(F, L.dim) <= 100000) {
            double ts = timed([&] { a = simplicity_spin_serial(F, L); });
            double tp = timed([&] { b = simplicity_check(F, L, 0, 100000, true); });
            row("line spinning", ts, tp, a.simple == b.simple);
        } else {
            std::printf("%-28s skipped (line count beyond exhaustive budget)\n", "line spinning");
        }
    }
    return 0;
}
