#include "hexlimit/cli.hpp"

#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hexlimit/acceptance.hpp"
#include "hexlimit/analysis.hpp"
#include "hexlimit/marking.hpp"
#include "hexlimit/patch_io.hpp"
#include "hexlimit/qadic.hpp"
#include "hexlimit/reconstruct.hpp"
#include "hexlimit/render.hpp"
#include "hexlimit/verify.hpp"

namespace hexlimit {

namespace {

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw parse_error("cannot open input file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) throw parse_error("cannot open output file: " + out_path);
  out << text;
}

Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational::make(std::stoll(s), 1);
    return Rational::make(std::stoll(s.substr(0, slash)),
                          std::stoll(s.substr(slash + 1)));
  } catch (const std::logic_error&) {
    throw parse_error("bad rational: " + s);
  }
}

void print_check(const std::string& name, const CheckReport& rep) {
  for (const Violation& v : rep.violations) std::cout << format_violation(v) << "\n";
  std::cout << name << " checked=" << rep.checked << " skipped=" << rep.skipped
            << " flagged=" << rep.flagged.size()
            << " violations=" << rep.violations.size() << "\n";
}

int cmd_generate(const std::string& qspec, i64 R, int K, const std::string& fb,
                 bool parity_only, const std::string& out) {
  QadicParam q = parse_qspec(qspec);
  if (K == 0) K = default_depth(R);
  Patch patch = generate_patch(q, R, K, FreeBits::parse(fb));
  emit(out, parity_only ? format_parity_patch(patch) : format_patch(patch));
  return 0;
}

int cmd_classify(const std::string& qspec) {
  QadicParam q = parse_qspec(qspec);
  SingularClass cls;
  try {
    cls = classify(q);
  } catch (const form_error&) {
    cls.kind = SingularClass::Kind::GenericToDepth;
    cls.generic_depth = q.depth();
    cls.fiber = 1;
  }
  std::cout << cls.to_string() << ", fiber " << cls.fiber << "\n";
  return 0;
}

int cmd_verify(const std::string& in, i64 rmax, i64 min_overlap) {
  Patch patch = parse_patch(slurp(in));
  std::size_t total = 0;
  CheckReport r2 = check_r2(patch);
  print_check("r2", r2);
  total += r2.violations.size();
  CheckReport tc = check_three_color(patch);
  print_check("three-color", tc);
  total += tc.violations.size();
  CheckReport pt = check_prototile(patch);
  print_check("prototile", pt);
  total += pt.violations.size();
  if (rmax > 0) {
    CheckReport ap = check_aperiodicity(patch, rmax, min_overlap);
    print_check("aperiodicity", ap);
    total += ap.violations.size();
  }
  std::cout << "total violations=" << total << "\n";
  return total == 0 ? 0 : 1;
}

int cmd_analyze_index(int kmax) {
  IndexSeries s = total_index_series(kmax);
  for (int k = 1; k <= kmax; ++k) {
    std::cout << "k=" << k << " c=" << s.terms[k - 1].to_string()
              << " S=" << s.partial_sums[k - 1].to_string()
              << " R=" << s.remainders[k - 1].to_string() << "\n";
  }
  return 0;
}

int cmd_analyze_orientation(const QadicParam& q, i64 R, int K) {
  TriContext ctx{q, K};
  OrientationDensity d = orientation_density(ctx, R);
  std::cout << "points=" << d.total << " up=" << d.up << " down=" << d.down
            << " unresolved=" << d.unresolved << "\n";
  std::cout << "up_fraction=" << d.up_fraction()
            << " down_fraction=" << d.down_fraction() << "\n";
  return 0;
}

int cmd_analyze_coset(const QadicParam& q, i64 R, int K, int samples) {
  TriContext ctx{q, K};
  Patch patch = generate_patch(q, R, K, FreeBits{});
  int shown = 0, verified = 0, tested = 0;
  for (const auto& [x, t] : patch.tiles) {
    if (!t.determined() || hexdist(x) > patch.R - 2) continue;
    CosetReport rep = coset_period(ctx, x, patch);
    if (rep.predicted_m < 0) continue;
    ++tested;
    if (rep.verified) ++verified;
    if (shown < samples) {
      ++shown;
      std::cout << "x=(" << x.m << "," << x.n << ") predicted=" << rep.predicted_m
                << " empirical=" << rep.period_exponent
                << " verified=" << (rep.verified ? 1 : 0)
                << " samples=" << rep.sample_count;
      if (!rep.note.empty()) std::cout << " note=" << rep.note;
      std::cout << "\n";
    }
    if (tested >= samples) break;
  }
  std::cout << "verified=" << verified << "/" << tested << "\n";
  return 0;
}

int cmd_analyze_window(const QadicParam& q, i64 R, int K) {
  TriContext ctx{q, K};
  WindowReport rep = window_accounting(ctx, R);
  for (const WindowRow& row : rep.rows) {
    std::cout << "m=" << row.m << " rep=(" << row.rep.m << "," << row.rep.n
              << ") parity=" << row.parity << " members=" << row.members
              << " measure=" << row.measure.to_string() << "\n";
  }
  std::cout << "white=" << rep.white.to_string() << " gray=" << rep.gray.to_string()
            << " unresolved=" << rep.unresolved.to_string() << "\n";
  return 0;
}

int cmd_analyze_fiber(const QadicParam& q, i64 R) {
  FiberResult f = fiber_experiment(q, R);
  std::cout << "count=" << f.count << " symmetric=" << f.symmetric << "\n";
  return 0;
}

int cmd_reconstruct_file(const std::string& in, int dmax, bool lookup) {
  ParityPatch pp = parse_parity_patch(slurp(in));
  if (dmax == 0) dmax = recoverable_depth(pp.R);
  RecoveredParam rec = recover(pp, dmax, lookup);
  for (std::size_t i = 0; i < rec.audit.size(); ++i) {
    const Elimination& e = rec.audit[i];
    std::cout << "level=" << (i + 1) << " status=" << to_string(e.status)
              << " survivors=" << e.survivors.size() << "\n";
  }
  std::cout << "depth=" << rec.depth << "\n";
  for (int k = 1; k <= rec.depth; ++k) {
    std::cout << "c_" << k << "=(" << rec.residues[k - 1].m << ","
              << rec.residues[k - 1].n << ")\n";
  }
  if (!rec.stop_reason.empty()) std::cout << "stopped: " << rec.stop_reason << "\n";
  return rec.depth > 0 ? 0 : 1;
}

int cmd_reconstruct_roundtrip(const std::string& qspec, i64 R, int K,
                              const std::string& fb) {
  QadicParam q = parse_qspec(qspec);
  if (K == 0) K = default_depth(R);
  MldReport rep = mld_roundtrip(q, R, K, FreeBits::parse(fb));
  std::cout << "roundtrip=" << (rep.ok ? "ok" : "failed") << " depth=" << rep.depth;
  if (!rep.reason.empty()) std::cout << " reason=" << rep.reason;
  std::cout << " mismatches=" << rep.mismatches.size() << "\n";
  return rep.ok ? 0 : 1;
}

int cmd_render(const std::string& in, const std::string& mode,
               const std::string& epsilon, const std::string& out) {
  RenderStyle style;
  if (!parse_render_mode(mode, style.mode))
    throw parse_error("unknown render mode: " + mode);
  style.epsilon = parse_rational(epsilon);
  Patch patch = parse_patch(slurp(in));
  emit(out, render_svg(patch, style));
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv) {
  CLI::App app{"hexagonal two-tile parity patches: generate, verify, analyze"};
  app.require_subcommand(1);

  std::function<int()> action;

  // generate
  auto* gen = app.add_subcommand("generate", "compute a patch and write it as text");
  auto gen_q = std::make_shared<std::string>();
  auto gen_R = std::make_shared<i64>(8);
  auto gen_K = std::make_shared<int>(0);
  auto gen_fb = std::make_shared<std::string>("none");
  auto gen_parity = std::make_shared<bool>(false);
  auto gen_out = std::make_shared<std::string>();
  gen->add_option("--q", *gen_q, "parameter spec (rat:/res:/cht:/icwl:)")->required();
  gen->add_option("--R", *gen_R, "patch radius");
  gen->add_option("--K", *gen_K, "working depth (0 = derived from R)");
  gen->add_option("--freebits", *gen_fb, "free-bit completion spec");
  gen->add_flag("--parity-only", *gen_parity, "write only parities");
  gen->add_option("--out", *gen_out, "output path (default stdout)");
  gen->callback([=, &action] {
    action = [=] { return cmd_generate(*gen_q, *gen_R, *gen_K, *gen_fb, *gen_parity, *gen_out); };
  });

  // classify
  auto* cls = app.add_subcommand("classify", "singularity class of a parameter");
  auto cls_q = std::make_shared<std::string>();
  cls->add_option("--q", *cls_q, "parameter spec")->required();
  cls->callback([=, &action] { action = [=] { return cmd_classify(*cls_q); }; });

  // verify
  auto* ver = app.add_subcommand("verify", "check a patch file against the local rules");
  auto ver_in = std::make_shared<std::string>();
  auto ver_rmax = std::make_shared<i64>(0);
  auto ver_overlap = std::make_shared<i64>(32);
  ver->add_option("--in", *ver_in, "patch file")->required();
  ver->add_option("--rmax", *ver_rmax, "also scan for translation periods up to this size");
  ver->add_option("--min-overlap", *ver_overlap, "minimum overlap for the period scan");
  ver->callback([=, &action] {
    action = [=] { return cmd_verify(*ver_in, *ver_rmax, *ver_overlap); };
  });

  // analyze
  auto* ana = app.add_subcommand("analyze", "densities, series, periodicity, fibers");
  auto ana_index = std::make_shared<bool>(false);
  auto ana_kmax = std::make_shared<int>(20);
  auto ana_orient = std::make_shared<bool>(false);
  auto ana_coset = std::make_shared<bool>(false);
  auto ana_samples = std::make_shared<int>(100);
  auto ana_window = std::make_shared<bool>(false);
  auto ana_fiber = std::make_shared<bool>(false);
  auto ana_q = std::make_shared<std::string>();
  auto ana_R = std::make_shared<i64>(32);
  auto ana_K = std::make_shared<int>(0);
  ana->add_flag("--index-series", *ana_index, "exact index series");
  ana->add_option("--kmax", *ana_kmax, "series length");
  ana->add_flag("--orientation", *ana_orient, "centroid orientation density");
  ana->add_flag("--coset-period", *ana_coset, "mark periodicity per residue class");
  ana->add_option("--samples", *ana_samples, "tiles to test/print");
  ana->add_flag("--window", *ana_window, "exact parity mass per resolved class");
  ana->add_flag("--fiber", *ana_fiber, "distinct completions over one parameter");
  ana->add_option("--q", *ana_q, "parameter spec");
  ana->add_option("--R", *ana_R, "ball radius");
  ana->add_option("--K", *ana_K, "working depth (0 = derived from R)");
  ana->callback([=, &action] {
    action = [=]() -> int {
      bool any = *ana_index || *ana_orient || *ana_coset || *ana_window || *ana_fiber;
      if (!any) throw parse_error("analyze: pick at least one of --index-series, --orientation, --coset-period, --window, --fiber");
      int rc = 0;
      if (*ana_index) rc |= cmd_analyze_index(*ana_kmax);
      if (*ana_orient || *ana_coset || *ana_window || *ana_fiber) {
        if (ana_q->empty()) throw parse_error("analyze: --q is required for this mode");
        QadicParam q = parse_qspec(*ana_q);
        int K = *ana_K == 0 ? default_depth(*ana_R) : *ana_K;
        if (*ana_orient) rc |= cmd_analyze_orientation(q, *ana_R, K);
        if (*ana_coset) rc |= cmd_analyze_coset(q, *ana_R, K, *ana_samples);
        if (*ana_window) rc |= cmd_analyze_window(q, *ana_R, K);
        if (*ana_fiber) rc |= cmd_analyze_fiber(q, *ana_R);
      }
      return rc;
    };
  });

  // reconstruct
  auto* rec = app.add_subcommand("reconstruct", "recover parameter residues from parities");
  auto rec_in = std::make_shared<std::string>();
  auto rec_dmax = std::make_shared<int>(0);
  auto rec_lookup = std::make_shared<bool>(false);
  auto rec_round = std::make_shared<bool>(false);
  auto rec_q = std::make_shared<std::string>();
  auto rec_R = std::make_shared<i64>(96);
  auto rec_K = std::make_shared<int>(0);
  auto rec_fb = std::make_shared<std::string>("none");
  rec->add_option("--in", *rec_in, "parity patch file");
  rec->add_option("--dmax", *rec_dmax, "recovery depth (0 = derived from radius)");
  rec->add_flag("--lookup", *rec_lookup, "use the precomputed ring-pattern table");
  rec->add_flag("--roundtrip", *rec_round, "generate, recover, regenerate, compare");
  rec->add_option("--q", *rec_q, "parameter spec (roundtrip mode)");
  rec->add_option("--R", *rec_R, "radius (roundtrip mode)");
  rec->add_option("--K", *rec_K, "working depth (roundtrip mode)");
  rec->add_option("--freebits", *rec_fb, "free-bit completion (roundtrip mode)");
  rec->callback([=, &action] {
    action = [=]() -> int {
      if (*rec_round) {
        if (rec_q->empty()) throw parse_error("reconstruct --roundtrip: --q is required");
        return cmd_reconstruct_roundtrip(*rec_q, *rec_R, *rec_K, *rec_fb);
      }
      if (rec_in->empty()) throw parse_error("reconstruct: --in or --roundtrip is required");
      return cmd_reconstruct_file(*rec_in, *rec_dmax, *rec_lookup);
    };
  });

  // render
  auto* ren = app.add_subcommand("render", "draw a patch file as SVG");
  auto ren_in = std::make_shared<std::string>();
  auto ren_mode = std::make_shared<std::string>("full");
  auto ren_eps = std::make_shared<std::string>("1/8");
  auto ren_out = std::make_shared<std::string>();
  ren->add_option("--in", *ren_in, "patch file")->required();
  ren->add_option("--mode", *ren_mode, "full | parity | overlay");
  ren->add_option("--epsilon", *ren_eps, "stripe displacement in (0,1/4]");
  ren->add_option("--out", *ren_out, "output path (default stdout)");
  ren->callback([=, &action] {
    action = [=] { return cmd_render(*ren_in, *ren_mode, *ren_eps, *ren_out); };
  });

  // selftest
  auto* self = app.add_subcommand("selftest", "run the acceptance suite");
  self->callback([&action] {
    action = [] { return run_acceptance(std::cout) == 0 ? 0 : 1; };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;  // help/version exit cleanly; bad usage is 2
  }

  try {
    return action ? action() : 2;
  } catch (const parse_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const depth_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hexlimit
