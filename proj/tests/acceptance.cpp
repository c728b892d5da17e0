// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <omp.h>

#include <algorithm>
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "projcalc/error.hpp"
#include "projcalc/index_calculus.hpp"
#include "projcalc/projection_pair.hpp"
#include "projcalc/random.hpp"
#include "projcalc/rep_builder.hpp"
#include "projcalc/spectral.hpp"
#include "projcalc/words.hpp"
#include "test_support.hpp"

using namespace projcalc;
using namespace projcalc::testing;

namespace {

constexpr std::size_t kCorpusSize = 220;
constexpr std::size_t kRandomPairs = 100;

struct Instance {
  RepSpec spec;
  std::uint64_t seed = 0;
  ProjectionPair pair;
  std::int64_t truth = 0;  // m10 - m01
};

std::vector<Instance> build_corpus() {
  Xoshiro256 rng(20240611);
  std::vector<RepSpec> specs;
  std::vector<std::uint64_t> seeds;
  for (std::size_t i = 0; i < kCorpusSize; ++i) {
    specs.push_back(random_spec(rng, 60, 5, 10, 1e-3));
    seeds.push_back(rng());
  }
  std::vector<Instance> corpus;
  corpus.reserve(kCorpusSize);
  for (std::size_t i = 0; i < kCorpusSize; ++i) {
    corpus.push_back({specs[i], seeds[i], random_pair_from_spec(specs[i], seeds[i]),
                      static_cast<std::int64_t>(specs[i].m10) - static_cast<std::int64_t>(specs[i].m01)});
  }
  return corpus;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

// Per-criterion tally; failures are counted, never thrown.
struct Tally {
  std::size_t cases = 0;
  std::size_t failures = 0;
  double worst = 0.0;
  std::string first_failure;

  void fail(const std::string& why) {
    ++failures;
    if (first_failure.empty()) first_failure = why;
  }
  void merge(const Tally& other) {
    cases += other.cases;
    failures += other.failures;
    worst = std::max(worst, other.worst);
    if (first_failure.empty()) first_failure = other.first_failure;
  }
};

// Runs body(i, tally) for i in [0, n) in parallel and merges the per-thread tallies.
template <class Body>
Tally parallel_tally(std::size_t n, Body body) {
  Tally total;
#pragma omp parallel
  {
    Tally local;
#pragma omp for schedule(dynamic)
    for (std::size_t i = 0; i < n; ++i) {
      try {
        body(i, local);
      } catch (const std::exception& e) {
        local.fail("case " + std::to_string(i) + ": " + e.what());
      }
    }
#pragma omp critical
    total.merge(local);
  }
  return total;
}

int g_failed = 0;

void report(int id, const char* name, bool passed, const std::string& detail) {
  std::printf("%s [%d] %s: %s\n", passed ? "PASS" : "FAIL", id, name, detail.c_str());
  std::fflush(stdout);
  if (!passed) ++g_failed;
}

std::string summary(const Tally& t, const char* residual_name, double seconds = -1.0) {
  char buf[256];
  std::snprintf(buf, sizeof buf, "%zu cases, %zu failures, max %s %.3e", t.cases, t.failures, residual_name,
                t.worst);
  std::string s = buf;
  if (seconds >= 0.0) {
    std::snprintf(buf, sizeof buf, ", %.2f s", seconds);
    s += buf;
  }
  if (!t.first_failure.empty()) s += " (first: " + t.first_failure + ")";
  return s;
}

void index_identity(const std::vector<Instance>& corpus) {
  const Timer timer;
  const Tally t = parallel_tally(corpus.size(), [&](std::size_t i, Tally& tally) {
    const Instance& inst = corpus[i];
    ++tally.cases;
    const std::int64_t index = fredholm_index(inst.pair);
    if (index != inst.truth) tally.fail("rank index " + std::to_string(index) + " at case " + std::to_string(i));
    for (unsigned k = 0; k <= 3; ++k) {
      const IntegerEstimate e = index_via_trace(inst.pair, k);
      tally.worst = std::max(tally.worst, e.residual);
      if (e.rounded != index || !(e.residual < 1e-6)) {
        tally.fail("trace k=" + std::to_string(k) + " at case " + std::to_string(i));
      }
    }
  });
  const double s = timer.seconds();
  report(1, "index identity", t.failures == 0 && t.cases >= 200 && s < 30.0, summary(t, "residual", s));
}

void pairing_identity(const std::vector<Instance>& corpus) {
  const Timer timer;
  const Tally t = parallel_tally(corpus.size(), [&](std::size_t i, Tally& tally) {
    const Instance& inst = corpus[i];
    ++tally.cases;
    const FredholmModuleData module = build_fredholm_module(inst.pair);
    const std::int64_t index = fredholm_index(inst.pair);
    for (unsigned k = 0; k <= 2; ++k) {
      const double pairing = connes_pairing(module, k);
      const double trace_power = trace_odd_power(inst.pair, k + 1);  // tr D^{2k+3}
      const double gap = std::abs(pairing - trace_power);
      tally.worst = std::max(tally.worst, gap);
      if (!(gap <= 1e-6) || std::llround(pairing) != index) {
        tally.fail("k=" + std::to_string(k) + " at case " + std::to_string(i));
      }
    }
  });
  const double s = timer.seconds();
  report(2, "pairing identity", t.failures == 0 && s < 60.0, summary(t, "|pairing - tr D^(2k+3)|", s));
}

void trace_rigidity(const std::vector<Instance>& corpus) {
  const Tally t = parallel_tally(corpus.size(), [&](std::size_t i, Tally& tally) {
    const Instance& inst = corpus[i];
    ++tally.cases;
    const double bound = 1e-6 * static_cast<double>(inst.pair.dim());
    for (unsigned k = 0; k <= 4; ++k) {
      const double tr = trace_odd_power(inst.pair, k);
      const double gap = std::abs(tr - static_cast<double>(inst.truth));
      tally.worst = std::max(tally.worst, gap / static_cast<double>(inst.pair.dim()));
      if (!(gap < bound) || std::llround(tr) != inst.truth) {
        tally.fail("k=" + std::to_string(k) + " at case " + std::to_string(i));
      }
    }
  });
  report(3, "trace rigidity", t.failures == 0, summary(t, "deviation / dim"));
}

void spectrum_symmetry(const std::vector<Instance>& corpus) {
  auto check = [](const ProjectionPair& pair, Tally& tally, std::size_t i) {
    ++tally.cases;
    const SpectrumReport sr = difference_spectrum(pair);
    tally.worst = std::max(tally.worst, sr.residual);
    std::size_t paired = 0;
    for (const auto& p : sr.paired) paired += 2 * p.multiplicity;
    if (!(sr.residual < 1e-7) || sr.plus_ones + sr.minus_ones + sr.zeros + paired != pair.dim()) {
      tally.fail("case " + std::to_string(i));
    }
  };
  Tally t = parallel_tally(corpus.size(), [&](std::size_t i, Tally& tally) { check(corpus[i].pair, tally, i); });

  // Fully random subspaces: no structure beyond two independent Haar-random ranges.
  std::vector<std::array<std::uint64_t, 5>> draws(kRandomPairs);
  Xoshiro256 rng(777);
  for (auto& d : draws) {
    const auto n = static_cast<std::uint64_t>(rng.uniform_int(1, 60));
    d = {n, static_cast<std::uint64_t>(rng.uniform_int(0, static_cast<std::int64_t>(n))),
         static_cast<std::uint64_t>(rng.uniform_int(0, static_cast<std::int64_t>(n))), rng(), rng()};
  }
  t.merge(parallel_tally(draws.size(), [&](std::size_t i, Tally& tally) {
    const auto& d = draws[i];
    const ProjectionPair pair(random_projection(d[0], d[1], d[3]), random_projection(d[0], d[2], d[4]));
    check(pair, tally, kCorpusSize + i);
  }));
  report(4, "spectrum symmetry", t.failures == 0 && t.cases == kCorpusSize + kRandomPairs,
         summary(t, "pairing residual"));
}

void decomposition_round_trip(const std::vector<Instance>& corpus) {
  const std::size_t n = std::min<std::size_t>(200, corpus.size());
  const Tally t = parallel_tally(n, [&](std::size_t i, Tally& tally) {
    const Instance& inst = corpus[i];
    ++tally.cases;
    const HalmosDecomposition dec = halmos_decompose(inst.pair);
    const double residual = verify_decomposition(inst.pair, dec);
    const RepSpec back = spec_of_decomposition(dec);
    bool ok = residual <= 1e-8 && back.m11 == inst.spec.m11 && back.m00 == inst.spec.m00 &&
              back.m10 == inst.spec.m10 && back.m01 == inst.spec.m01 &&
              back.points.size() == inst.spec.points.size();
    double angle_gap = 0.0;
    for (std::size_t j = 0; ok && j < back.points.size(); ++j) {
      angle_gap = std::max(angle_gap, std::abs(back.points[j].theta - inst.spec.points[j].theta));
      ok = back.points[j].mult == inst.spec.points[j].mult;
    }
    ok = ok && angle_gap <= 1e-8;
    tally.worst = std::max({tally.worst, angle_gap, residual});
    if (!ok) tally.fail("case " + std::to_string(i));
  });
  report(5, "decomposition round trip", t.failures == 0 && t.cases == 200,
         summary(t, "angle error / verify residual"));
}

FreeProductWord random_fp(Xoshiro256& rng, std::size_t n) {
  const auto len = static_cast<std::size_t>(rng.uniform_int(0, 20));
  std::vector<int> letters;
  for (std::size_t i = 0; i < len; ++i) letters.push_back(static_cast<int>(rng.uniform_int(1, static_cast<std::int64_t>(n))));
  return FreeProductWord::reduced(n, std::move(letters));
}

CrossedElement random_cp(Xoshiro256& rng, std::size_t m) {
  CrossedElement x = cp_identity(m);
  x.eps = static_cast<int>(rng.uniform_int(0, 1));
  const auto len = static_cast<std::size_t>(rng.uniform_int(0, 20));
  std::vector<Syllable> s;
  for (std::size_t i = 0; i < len; ++i) {
    s.push_back({static_cast<int>(rng.uniform_int(1, static_cast<std::int64_t>(m))),
                 rng.uniform_int(0, 1) == 0 ? 1 : -1});
  }
  x.word = FreeGroupWord::reduced(m, std::move(s));
  return x;
}

void isomorphism_suite() {
  const Timer timer;
  Tally t;
  Xoshiro256 rng(60606);
  for (std::size_t n : {2U, 3U, 5U}) {
    const std::size_t m = n - 1;
    for (int i = 0; i < 1000; ++i) {
      ++t.cases;
      const CrossedElement x = random_cp(rng, m);
      const CrossedElement y = random_cp(rng, m);
      const FreeProductWord a = random_fp(rng, n);
      const FreeProductWord ix = iso_to_free_product(x);
      if (!(iso_from_free_product(ix) == x)) t.fail("crossed round trip, n=" + std::to_string(n));
      if (!(iso_to_free_product(iso_from_free_product(a)) == a)) t.fail("free product round trip");
      if (!(iso_to_free_product(cp_multiply(x, y)) == fp_multiply(ix, iso_to_free_product(y)))) {
        t.fail("homomorphism transport, n=" + std::to_string(n));
      }
    }
    const CrossedElement v{1, FreeGroupWord{m, {}}};
    for (int g = 1; g <= static_cast<int>(m); ++g) {
      const CrossedElement w{0, FreeGroupWord::reduced(m, {{g, 1}})};
      const CrossedElement w_inv{0, FreeGroupWord::reduced(m, {{g, -1}})};
      if (!(iso_to_free_product(cp_multiply(cp_multiply(v, w), v)) == iso_to_free_product(w_inv))) {
        t.fail("relation image, generator " + std::to_string(g));
      }
    }
    // Evaluation against random projection tuples.
    for (int i = 0; i < 100; ++i) {
      const auto dim = static_cast<std::size_t>(rng.uniform_int(1, 8));
      std::vector<DenseMatrix> ps;
      for (std::size_t j = 0; j < n; ++j) {
        ps.push_back(random_projection(dim, static_cast<std::size_t>(rng.uniform_int(0, static_cast<std::int64_t>(dim))), rng()));
      }
      const double bound = 1e-10 * static_cast<double>(dim);
      const FreeProductWord a = random_fp(rng, n);
      const FreeProductWord b = random_fp(rng, n);
      const double gap_fp = operator_norm(evaluate_fp(fp_multiply(a, b), ps) - matmul(evaluate_fp(a, ps), evaluate_fp(b, ps)));
      const CrossedElement x = random_cp(rng, m);
      const CrossedElement y = random_cp(rng, m);
      const double gap_cp = operator_norm(evaluate_cp(cp_multiply(x, y), ps) - matmul(evaluate_cp(x, ps), evaluate_cp(y, ps)));
      const double gap_direct = operator_norm(evaluate_cp(x, ps) - evaluate_cp_direct(x, ps));
      t.worst = std::max({t.worst, gap_fp, gap_cp, gap_direct});
      if (!(gap_fp <= bound && gap_cp <= bound && gap_direct <= bound)) t.fail("functoriality, n=" + std::to_string(n));
    }
  }
  const double s = timer.seconds();
  report(6, "isomorphism suite", t.failures == 0 && s < 10.0, summary(t, "evaluation gap", s));
}

void module_axioms(const std::vector<Instance>& corpus) {
  const Tally t = parallel_tally(corpus.size(), [&](std::size_t i, Tally& tally) {
    const ProjectionPair& pair = corpus[i].pair;
    ++tally.cases;
    const FredholmModuleData mod = build_fredholm_module(pair);
    const DenseMatrix id = DenseMatrix::identity(mod.big_dim);
    const bool exact = matmul(mod.gamma, mod.gamma) == id && matmul(mod.f, mod.f) == id &&
                       matmul(mod.gamma, mod.f) + matmul(mod.f, mod.gamma) == DenseMatrix(mod.big_dim, mod.big_dim);
    const DenseMatrix comm = commutator(mod.f, mod.pi_p1);
    const DenseMatrix d = pair.difference();
    const DenseMatrix d2 = matmul(d, d);
    const double residual = operator_norm(matmul(comm, comm) + direct_sum(d2, d2));
    tally.worst = std::max(tally.worst, residual);
    if (!exact || !(residual <= 1e-12)) tally.fail("case " + std::to_string(i));
  });
  report(7, "Fredholm module axioms", t.failures == 0, summary(t, "commutator residual"));
}

void micro_instances() {
  Tally t;
  t.cases = 2;
  const ProjectionPair cell(diag({1.0, 0.0}), half_ones());
  if (fredholm_index(cell) != 0) t.fail("cell index");
  const HalmosDecomposition dec = halmos_decompose(cell);
  const double angle_gap = dec.angles.size() == 1 ? std::abs(dec.angles[0] - std::numbers::pi / 2) : 1.0;
  t.worst = angle_gap;
  if (dec.angles.size() != 1 || angle_gap > 1e-12 || dec.corner_dim() != 0) t.fail("cell angle");
  for (unsigned k = 0; k <= 4; ++k) {
    const double tr = trace_odd_power(cell, k);
    t.worst = std::max(t.worst, std::abs(tr));
    if (std::llround(tr) != 0 || std::abs(tr) > 1e-12) t.fail("cell trace k=" + std::to_string(k));
  }

  const ProjectionPair corner(diag({1.0, 1.0, 0.0}), diag({1.0, 0.0, 0.0}));
  const IndexCertificate cert = index_theorem_check(corner, 3);
  bool ok = cert.agree && cert.index_by_rank == 1;
  for (const auto& e : cert.index_by_trace) ok = ok && e.rounded == 1 && e.residual == 0.0;
  for (const auto& e : cert.index_by_pairing) ok = ok && e.rounded == 1 && e.residual == 0.0;
  if (!ok) t.fail("corner index");
  report(8, "micro instances", t.failures == 0, summary(t, "deviation"));
}

}  // namespace

int main() {
  std::printf("acceptance: %d OpenMP thread(s)\n", omp_get_max_threads());
  const Timer total;
  std::vector<Instance> corpus;
  try {
    corpus = build_corpus();
  } catch (const std::exception& e) {
    std::printf("FAIL corpus generation: %s\n", e.what());
    return 1;
  }
  std::printf("corpus: %zu pairs generated in %.2f s\n", corpus.size(), total.seconds());

  index_identity(corpus);
  pairing_identity(corpus);
  trace_rigidity(corpus);
  spectrum_symmetry(corpus);
  decomposition_round_trip(corpus);
  isomorphism_suite();
  module_axioms(corpus);
  micro_instances();

  std::printf("%d of 8 criteria failed, %.2f s total\n", g_failed, total.seconds());
  return g_failed == 0 ? 0 : 1;
}
