// Compares the serial reference implementations against the stratified
// kernels, serial and OpenMP-parallel, on the three hot loops:
// saturation rounds, batch term evaluation and law sweeps.

#include <chrono>
#include <cstdio>

#include "effectfactor/lawcheck.hpp"
#include "effectfactor/presets.hpp"
#include "effectfactor/saturate.hpp"

using namespace efx;

namespace {

template <typename F>
double time_ms(F&& f, int reps = 3) {
  double best = 1e300;
  for (int i = 0; i < reps; ++i) {
    auto t0 = std::chrono::steady_clock::now();
    f();
    auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double, std::milli>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double ref, double ser, double par) {
  std::printf("%-34s %10.2f %10.2f %10.2f %9.2fx\n", name, ref, ser, par,
              par > 0 ? ser / par : 0.0);
}

} // namespace

int main() {
  std::printf("%-34s %10s %10s %10s %10s\n", "kernel", "reference", "serial",
              "parallel", "speedup");
  std::printf("(times in ms, best of 3; %zu threads available)\n\n", max_threads());

  // saturation: full state recovery, growing object sizes
  for (int64_t nx : {12, 24, 36}) {
    Interpretation interp = make_preset("state-read-write");
    SaturatedObject a, b, c;
    double ref = time_ms([&] { a = saturate_object_reference(interp, nx, 400'000'000); });
    double ser =
        time_ms([&] { b = saturate_object(interp, nx, {Exec::serial, 400'000'000}); });
    double par =
        time_ms([&] { c = saturate_object(interp, nx, {Exec::parallel, 400'000'000}); });
    if (a.elements != b.elements || b.elements != c.elements ||
        a.origins.size() != c.origins.size())
      std::printf("MISMATCH at |X|=%lld\n", static_cast<long long>(nx));
    char name[64];
    std::snprintf(name, sizeof name, "saturate state-read-write |X|=%lld",
                  static_cast<long long>(nx));
    row(name, ref, ser, par);
  }

  // saturation: union closure over growing powerset objects
  for (int64_t nx : {10, 12}) {
    Interpretation interp = make_preset("powerset-or");
    SaturatedObject a, b, c;
    double ref = time_ms([&] { a = saturate_object_reference(interp, nx, 400'000'000); });
    double ser =
        time_ms([&] { b = saturate_object(interp, nx, {Exec::serial, 400'000'000}); });
    double par =
        time_ms([&] { c = saturate_object(interp, nx, {Exec::parallel, 400'000'000}); });
    if (a.elements != b.elements || b.elements != c.elements)
      std::printf("MISMATCH at |X|=%lld\n", static_cast<long long>(nx));
    char name[64];
    std::snprintf(name, sizeof name, "saturate powerset-or |X|=%lld",
                  static_cast<long long>(nx));
    row(name, ref, ser, par);
  }

  // batch term evaluation
  {
    Interpretation interp = make_preset("state-read-write");
    TermArena arena = enumerate_terms(interp.sig, 3, 3);
    std::vector<int64_t> a, b, c;
    double ref = time_ms([&] { a = eval_terms_reference(arena, interp, 3); });
    double ser = time_ms([&] { b = eval_terms(arena, interp, 3, Exec::serial); });
    double par = time_ms([&] { c = eval_terms(arena, interp, 3, Exec::parallel); });
    if (a != b || b != c) std::printf("MISMATCH in eval_terms\n");
    char name[64];
    std::snprintf(name, sizeof name, "eval_terms |X|=3 depth 3 (%zu)", arena.size());
    row(name, ref, ser, par);
  }

  // law sweep (sampled associativity)
  {
    Monad monad({MonadKind::state, 2});
    std::vector<int64_t> objects{3};
    double ser = time_ms(
        [&] { check_monad_laws(monad, objects, 400'000, 7, Exec::serial); }, 1);
    double par = time_ms(
        [&] { check_monad_laws(monad, objects, 400'000, 7, Exec::parallel); }, 1);
    row("law sweep state(2) budget 4e5", ser, ser, par);
  }

  return 0;
}
