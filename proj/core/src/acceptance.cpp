#include "hexlimit/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hexlimit/analysis.hpp"
#include "hexlimit/marking.hpp"
#include "hexlimit/patch_io.hpp"
#include "hexlimit/qadic.hpp"
#include "hexlimit/reconstruct.hpp"
#include "hexlimit/render.hpp"
#include "hexlimit/verify.hpp"

namespace hexlimit {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool ok{false};
  std::string detail;
};

// 1. Parity anchors: the (2,-3,1) probe tile and the seven-step vertical
// column over the origin-centered singular parameter.
Outcome crit_parity_anchor() {
  auto t0 = Clock::now();
  TriContext ctx{QadicParam::from_q(QPoint{0, 0}), 8};

  ParityResult pr = parity(ctx, QPoint{3, 2});
  if (!pr.ok()) return {false, "probe tile did not evaluate"};
  if (pr.parity != 0 || pr.shift_bit != 0)
    return {false, "probe tile expected gray with downward shift"};

  const int expected[7] = {0, 0, 0, -1, 1, 1, 1};  // -1: skipped center step
  for (int m = 1; m <= 7; ++m) {
    if (expected[m - 1] < 0) continue;
    ParityResult r = parity(ctx, QPoint{4 - m, 4 - 2 * m});
    if (r.color_bit < 0) return {false, "column step " + std::to_string(m) + " has no color bit"};
    if (r.color_bit != expected[m - 1])
      return {false, "column step " + std::to_string(m) + " color mismatch"};
  }
  double dt = seconds_since(t0);
  if (dt >= 1.0) return {false, "exceeded 1s"};
  std::ostringstream d;
  d << "anchors exact, " << dt << "s";
  return {true, d.str()};
}

// 2. Residue tower of the leftward-third parameter.
Outcome crit_residue_anchor() {
  QadicParam q = parse_qspec("rat:-1/3,0");
  const i64 expected[8] = {1, 1, 5, 5, 21, 21, 85, 85};
  for (int k = 1; k <= 8; ++k) {
    QPoint r = residue(q, k);
    if (r.m != expected[k - 1] || r.n != 0)
      return {false, "depth " + std::to_string(k) + " residue mismatch"};
  }
  return {true, "residues 1,1,5,5,21,21,85,85 exact"};
}

// 3. Exact arithmetic identities of the six special parameters.
Outcome crit_algebraic_identities() {
  for (int k = 1; k <= 30; ++k)
    if (!lemma_s_check(k)) return {false, "level identity failed at k=" + std::to_string(k)};
  if (!torsion_check(64)) return {false, "torsion check failed"};
  return {true, "identities hold to k=30, torsion to depth 64"};
}

// Shared fixture for criteria 4 and 5.
struct GenericRun {
  QadicParam q;
  Patch patch;
};

std::vector<GenericRun>& generic_runs() {
  static std::vector<GenericRun> runs = [] {
    std::vector<GenericRun> r;
    r.reserve(100);
    for (int i = 0; i < 100; ++i) {
      QadicParam q = sample_generic_q(1000 + static_cast<u64>(i), 10, 48);
      r.push_back({q, generate_patch(q, 48, 10, FreeBits{})});
    }
    return r;
  }();
  return runs;
}

// 4. Closed-form parity equals the geometric pipeline on 100 random patches.
Outcome crit_formula_equivalence() {
  auto t0 = Clock::now();
  i64 mismatches = 0, compared = 0, undetermined = 0;
  for (const GenericRun& run : generic_runs()) {
    TriContext ctx{run.q, run.patch.K};
    for (const auto& [x, t] : run.patch.tiles) {
      if (!t.determined()) {
        ++undetermined;
        continue;
      }
      ParityResult pr = parity(ctx, x);
      ++compared;
      if (!pr.ok() || pr.parity != t.parity) ++mismatches;
    }
  }
  double dt = seconds_since(t0);
  std::ostringstream d;
  d << compared << " tiles compared, " << mismatches << " mismatches, "
    << undetermined << " undetermined, " << dt << "s";
  if (mismatches != 0) return {false, d.str()};
  if (dt >= 60.0) return {false, d.str() + " (exceeded 60s)"};
  return {true, d.str()};
}

// 5. The 100 patches satisfy all local rules; single-bit mutations are caught.
Outcome crit_rule_verification() {
  i64 violations = 0;
  for (const GenericRun& run : generic_runs()) {
    violations += static_cast<i64>(check_r2(run.patch).violations.size());
    violations += static_cast<i64>(check_three_color(run.patch).violations.size());
    violations += static_cast<i64>(check_prototile(run.patch).violations.size());
  }
  if (violations != 0)
    return {false, std::to_string(violations) + " violations on clean patches"};

  std::mt19937_64 rng(7);
  int undetected = 0;
  for (int t = 0; t < 50; ++t) {
    const GenericRun& run = generic_runs()[(t * 2) % 100];
    Patch mutated = run.patch;
    std::vector<QPoint> candidates;
    for (const auto& [x, tm] : mutated.tiles)
      if (tm.determined() && hexdist(x) <= mutated.R - 4) candidates.push_back(x);
    QPoint pick = candidates[rng() % candidates.size()];
    TileMark& tm = mutated.tiles.at(pick);
    switch (t % 3) {
      case 0: tm.shift ^= 1; break;
      case 1: tm.split ^= 1; break;
      default: tm.parity ^= 1; break;
    }
    i64 caught = static_cast<i64>(check_r2(mutated).violations.size()) +
                 static_cast<i64>(check_three_color(mutated).violations.size()) +
                 static_cast<i64>(check_prototile(mutated).violations.size());
    if (caught == 0) ++undetected;
  }
  if (undetected != 0)
    return {false, std::to_string(undetected) + "/50 mutations undetected"};
  return {true, "clean patches pass; 50/50 mutations detected"};
}

// 6. Singularity taxonomy fixtures and completion-count experiments.
Outcome crit_taxonomy() {
  struct Fixture {
    const char* spec;
    SingularClass::Kind kind;
    int fiber;
  };
  const Fixture fixtures[] = {
      {"cht:0,0", SingularClass::Kind::CHT, 12},
      {"rat:-1/3,0", SingularClass::Kind::IaL, 2},
      {"rat:2/3,1/3", SingularClass::Kind::ICwL, 6},
      {"rat:1/3,2/3", SingularClass::Kind::ICwL, 6},
  };
  for (const Fixture& f : fixtures) {
    SingularClass c = classify(parse_qspec(f.spec));
    if (c.kind != f.kind || c.fiber != f.fiber)
      return {false, std::string(f.spec) + " misclassified as " + c.to_string()};
  }
  SingularClass lattice = classify(QadicParam::from_q(QPoint{2, -1}));
  if (lattice.kind != SingularClass::Kind::CHT || lattice.fiber != 12)
    return {false, "lattice point not classified as full-hierarchy center"};
  SingularClass up = classify(parse_qspec("rat:2/3,1/3"));
  SingularClass down = classify(parse_qspec("rat:1/3,2/3"));
  if (up.branch != SingularClass::Branch::Up || down.branch != SingularClass::Branch::Down)
    return {false, "concurrent-line branch labels wrong"};
  SingularClass ial = classify(parse_qspec("rat:-1/3,0"));
  if (ial.adir != ADir::A1) return {false, "infinite-line direction wrong"};

  FiberResult cht = fiber_experiment(parse_qspec("cht:0,0"), 4);
  if (cht.count != 12) return {false, "full-hierarchy fiber " + std::to_string(cht.count) + " != 12"};
  FiberResult ialr = fiber_experiment(parse_qspec("rat:-1/3,0"), 4);
  if (ialr.count != 2) return {false, "infinite-line fiber " + std::to_string(ialr.count) + " != 2"};
  FiberResult icwl = fiber_experiment(parse_qspec("rat:2/3,1/3"), 4);
  if (icwl.count != 8 || icwl.symmetric != 2) {
    return {false, "concurrent-line fiber " + std::to_string(icwl.count) + " (" +
                       std::to_string(icwl.symmetric) + " symmetric) != 8 (2 symmetric)"};
  }
  return {true, "taxonomy and completion counts match"};
}

// 7. Exact index series.
Outcome crit_index_series() {
  IndexSeries s = total_index_series(20);
  if (!(s.terms[0] == Rational::make(3, 8))) return {false, "c(V_1) != 3/8"};
  if (!(s.terms[1] == Rational::make(18, 64))) return {false, "c(V_2) != 18/64"};
  Rational one = Rational::make(1, 1);
  for (int k = 1; k <= 20; ++k) {
    Rational sk = s.partial_sums[k - 1];
    Rational rk = s.remainders[k - 1];
    if (!(sk + rk == one)) return {false, "S_k + R_k != 1 at k=" + std::to_string(k)};
    // Closed form of the remainder: (3*2^k - 1) / (2*4^k); it halves (or
    // better) each step, so the symbolic limit of S_k is exactly 1.
    Rational closed = Rational::make(3 * (i64{1} << k) - 1, i64{2} << (2 * k));
    if (!(rk == closed)) return {false, "remainder closed form failed at k=" + std::to_string(k)};
    if (k > 1 && !(rk < s.remainders[k - 2])) return {false, "remainder not decreasing"};
  }
  if (!(s.remainders[19] < Rational::make(1, 100000)))
    return {false, "|S_20 - 1| >= 1e-5"};
  return {true, "c(V_1)=3/8, c(V_2)=18/64, |S_20-1|<1e-5, limit 1 exact"};
}

// 8. Orientation densities approach 1/3 on radius-128 balls.
Outcome crit_orientation_density() {
  for (int i = 0; i < 10; ++i) {
    QadicParam q = sample_generic_q(2000 + static_cast<u64>(i), 12, 128);
    TriContext ctx{q, 12};
    OrientationDensity d = orientation_density(ctx, 128);
    double third = 1.0 / 3.0;
    if (d.up_fraction() < third - 0.02 || d.up_fraction() > third + 0.02 ||
        d.down_fraction() < third - 0.02 || d.down_fraction() > third + 0.02) {
      std::ostringstream msg;
      msg << "seed " << (2000 + i) << ": up " << d.up_fraction() << ", down "
          << d.down_fraction();
      return {false, msg.str()};
    }
  }
  return {true, "up/down fractions within 1/3 +- 0.02 for 10 seeds"};
}

// 9. Residue-class periodicity of marks: prediction verified on every sampled
// interior tile, empirical exponent never exceeding it.
Outcome crit_coset_period() {
  QadicParam q = sample_generic_q(3000, 11, 64);
  TriContext ctx{q, 11};
  Patch patch = generate_patch(q, 64, 11, FreeBits{});
  int sampled = 0;
  for (const auto& [x, t] : patch.tiles) {
    if (!t.determined() || hexdist(x) > patch.R - 2) continue;
    // Only classes with enough members inside the ball can be verified.
    Level l = a_line_level(ctx, x, t.stripe);
    Level k = w_line_level(ctx, x, perp_w(t.stripe));
    if (!l.finite || !k.finite) continue;
    if (std::max(l.k, k.k) + 1 > 5) continue;
    CosetReport rep = coset_period(ctx, x, patch);
    ++sampled;
    if (!rep.verified)
      return {false, "tile (" + std::to_string(x.m) + "," + std::to_string(x.n) +
                         ") not verified: " + rep.note};
    if (rep.period_exponent > rep.predicted_m)
      return {false, "empirical exponent exceeds prediction"};
    if (sampled >= 600) break;
  }
  if (sampled < 500)
    return {false, "only " + std::to_string(sampled) + " tiles sampled (< 500)"};
  return {true, std::to_string(sampled) + " tiles verified, empirical <= predicted"};
}

// 10. Parity-only reconstruction roundtrip at radius 96.
Outcome crit_reconstruction() {
  auto t0 = Clock::now();
  for (int i = 0; i < 20; ++i) {
    QadicParam q = sample_generic_q(4000 + static_cast<u64>(i), 11, 96);
    Patch patch = generate_patch(q, 96, 11, FreeBits{});
    ParityPatch pp = parity_of(patch);
    RecoveredParam rec = recover(pp, 3);
    if (rec.depth < 3)
      return {false, "seed " + std::to_string(4000 + i) + ": recovery stopped (" +
                         rec.stop_reason + ")"};
    for (int k = 1; k <= 3; ++k) {
      if (!(rec.residues[k - 1] == residue(q, k)))
        return {false, "seed " + std::to_string(4000 + i) + ": residue mismatch at k=" +
                           std::to_string(k)};
    }
    MldReport mld = mld_roundtrip(q, 96, 11, FreeBits{});
    if (!mld.ok)
      return {false, "seed " + std::to_string(4000 + i) + ": roundtrip failed (" +
                         mld.reason + ")"};
  }
  double dt = seconds_since(t0);
  std::ostringstream d;
  d << "20 seeds recovered to depth 3, roundtrips ok, " << dt << "s";
  if (dt >= 120.0) return {false, d.str() + " (exceeded 120s)"};
  return {true, d.str()};
}

// 11. No small translation period on radius-64 parity patterns.
Outcome crit_aperiodicity() {
  for (int i = 0; i < 10; ++i) {
    QadicParam q = sample_generic_q(5000 + static_cast<u64>(i), 11, 64);
    Patch patch = generate_patch(q, 64, 11, FreeBits{});
    CheckReport rep = check_aperiodicity(patch, 16);
    if (!rep.violations.empty())
      return {false, "seed " + std::to_string(5000 + i) + ": " +
                         format_violation(rep.violations.front())};
  }
  return {true, "no translation period |t| <= 16 for 10 seeds"};
}

// 12. Byte-determinism of patch files and SVG documents.
Outcome crit_determinism() {
  auto make_artifacts = [] {
    std::vector<std::string> arts;
    QadicParam q1 = sample_generic_q(9000, 10, 16);
    Patch p1 = generate_patch(q1, 16, 10, FreeBits{});
    arts.push_back(format_patch(p1));
    arts.push_back(format_parity_patch(p1));
    RenderStyle full;
    arts.push_back(render_svg(p1, full));
    FreeBits fb = FreeBits::parse("tile:3");
    Patch p2 = generate_patch(parse_qspec("cht:0,0"), 6, default_depth(6), fb);
    arts.push_back(format_patch(p2));
    RenderStyle overlay;
    overlay.mode = RenderMode::TriangulationOverlay;
    arts.push_back(render_svg(p2, overlay));
    RenderStyle par;
    par.mode = RenderMode::ParityOnly;
    arts.push_back(render_svg(p2, par));
    return arts;
  };
  std::vector<std::string> a = make_artifacts();
  std::vector<std::string> b = make_artifacts();
  if (a != b) return {false, "artifact bytes differ between identical runs"};
  return {true, "patch files and SVGs byte-identical across runs"};
}

}  // namespace

int run_acceptance(std::ostream& os) {
  struct Criterion {
    const char* name;
    std::function<Outcome()> fn;
  };
  const Criterion criteria[] = {
      {"parity anchors", crit_parity_anchor},
      {"residue tower", crit_residue_anchor},
      {"algebraic identities", crit_algebraic_identities},
      {"formula/pipeline equivalence", crit_formula_equivalence},
      {"rule checks + mutation sensitivity", crit_rule_verification},
      {"singularity taxonomy", crit_taxonomy},
      {"index series", crit_index_series},
      {"orientation density", crit_orientation_density},
      {"mark periodicity", crit_coset_period},
      {"reconstruction roundtrip", crit_reconstruction},
      {"aperiodicity smoke test", crit_aperiodicity},
      {"byte determinism", crit_determinism},
  };
  int failures = 0;
  int idx = 0;
  for (const Criterion& c : criteria) {
    ++idx;
    Outcome out;
    try {
      out = c.fn();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    os << (out.ok ? "PASS" : "FAIL") << " criterion " << idx << ": " << c.name;
    if (!out.detail.empty()) os << " — " << out.detail;
    os << "\n";
    if (!out.ok) ++failures;
  }
  os << (failures == 0 ? "ALL CRITERIA PASSED" : std::to_string(failures) + " CRITERIA FAILED")
     << "\n";
  return failures;
}

}  // namespace hexlimit
