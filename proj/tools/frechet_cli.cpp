#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "curve_io.hpp"
#include "frechet/curve.hpp"
#include "frechet/decider.hpp"
#include "frechet/freespace.hpp"
#include "frechet/oracle.hpp"
#include "frechet/smoothing.hpp"
#include "generators.hpp"
#include "run_report.hpp"

using namespace frechet;
using cli::RunReport;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

void describe(RunReport& r, const std::string& role, const std::string& path,
              const Curve& c) {
  r.add(role, path);
  r.add(role + "_vertices", c.num_vertices());
  r.add(role + "_dim", c.dim());
}

void emit(const RunReport& r, bool as_json, std::ostream& os = std::cout) {
  os << (as_json ? r.json() : r.text());
}

std::size_t short_pieces_axis(const Curve& c, std::size_t axis,
                              double threshold) {
  Curve proj = project(c, axis);
  MonotonePieceDecomposition pieces = monotone_pieces(proj);
  std::size_t count = 0;
  for (std::size_t k = 0; k + 1 < pieces.vertices.size(); ++k) {
    double span = std::abs(proj.value(pieces.vertices[k + 1]) -
                           proj.value(pieces.vertices[k]));
    if (span <= threshold) ++count;
  }
  return count;
}

Curve smooth_all_axes(const Curve& c, double eps) {
  if (c.dim() == 1) return truncated_smoothing(c, eps);
  std::vector<double> flat(c.num_vertices() * c.dim());
  for (std::size_t k = 0; k < c.dim(); ++k) {
    Curve s = truncated_smoothing(project(c, k), eps);
    for (std::size_t i = 0; i < c.num_vertices(); ++i)
      flat[i * c.dim() + k] = s.value(i);
  }
  return Curve(c.dim(), std::move(flat));
}

/* Deterministic partner for benchmarks: the same walk nudged by less than
   delta, so the sweep has to traverse the whole diagram. */
Curve jittered_copy(const Curve& c, double radius, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> off(-radius, radius);
  std::vector<double> flat = c.coords();
  for (double& x : flat) x += off(rng);
  return Curve(c.dim(), std::move(flat));
}

std::vector<double> parse_list(const std::string& csv, const char* what) {
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stod(item));
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string(what) + ": bad entry \"" +
                                  item + "\"");
    }
  }
  if (out.empty())
    throw std::invalid_argument(std::string(what) + ": empty list");
  return out;
}

// ---------------------------------------------------------------- decide --

struct DecideArgs {
  std::string pfile, qfile;
  std::string mode = "nd";
  double delta = 0.0;
  double alpha = 1.0;
  bool json = false;
};

int run_decide(const DecideArgs& a) {
  Clock::time_point t0 = Clock::now();
  Curve P = cli::read_curve_file(a.pfile);
  Curve Q = cli::read_curve_file(a.qfile);

  RunReport r;
  r.add("command", "decide");
  describe(r, "curve_p", a.pfile, P);
  describe(r, "curve_q", a.qfile, Q);
  r.add("mode", a.mode);
  r.add("delta", a.delta);

  bool yes = false;
  double bound = 1.0;
  if (a.mode == "exact") {
    yes = exact_decide(P, Q, a.delta);
  } else {
    DecisionOutcome o = (a.mode == "nd")
                            ? approx_decide_nd(P, Q, a.alpha, a.delta)
                            : fast_decide_1d(P, Q, a.alpha, a.delta);
    yes = o.yes;
    bound = o.bound_factor;
    r.add("alpha", a.alpha);
    r.add("blocks_visited", o.blocks_visited);
    if (a.mode == "1d") r.add("entrance_components", o.entrance_components);
  }
  r.add("verdict", yes ? "YES" : "NO");
  r.add("bound_factor", bound);
  if (yes)
    r.add("certified", "d_F <= " + std::to_string(bound * a.delta));
  else
    r.add("certified", "d_F > " + std::to_string(a.delta));
  r.add("elapsed_ms", ms_since(t0));
  emit(r, a.json);
  return yes ? 0 : 1;
}

// ------------------------------------------------------------------ dist --

struct DistArgs {
  std::string pfile, qfile;
  std::string mode = "nd";
  double alpha = 8.0;
  double tol = 1e-6;
  double eps = 0.5;
  bool json = false;
};

int run_dist(const DistArgs& a) {
  Clock::time_point t0 = Clock::now();
  Curve P = cli::read_curve_file(a.pfile);
  Curve Q = cli::read_curve_file(a.qfile);

  RunReport r;
  r.add("command", "dist");
  describe(r, "curve_p", a.pfile, P);
  describe(r, "curve_q", a.qfile, Q);
  r.add("mode", a.mode);

  double value = 0.0;
  double guarantee = 1.0;
  if (a.mode == "exact") {
    value = exact_frechet(P, Q, a.tol);
    r.add("tol", a.tol);
    r.add("route", "exact bisection");
  } else if (a.mode == "nd") {
    r.add("alpha", a.alpha);
    if (a.alpha >= 6.0) {
      // The decider's (2+4a) factor turns into the requested alpha once a
      // is rebound to (alpha-2)/4; the search adds its (1+eps).
      value = approx_frechet(P, Q, (a.alpha - 2.0) / 4.0, a.eps);
      guarantee = a.alpha * (1.0 + a.eps);
      r.add("eps_search", a.eps);
      r.add("route", "simplified block sweep");
    } else {
      value = exact_frechet(P, Q, a.tol);
      r.add("tol", a.tol);
      r.add("route", "exact bisection (alpha < 6)");
    }
  } else {
    r.add("alpha", a.alpha);
    r.add("eps_search", a.eps);
    value = approx_frechet_1d(P, Q, a.alpha, a.eps);
    guarantee = a.alpha * (1.0 + a.eps);
    r.add("route", a.alpha >= 6.0 ? "banded exit-set chain"
                                  : "exact bisection (alpha < 6)");
  }
  r.add("value", value);
  r.add("guarantee_factor", guarantee);
  r.add("elapsed_ms", ms_since(t0));
  emit(r, a.json);
  return 0;
}

// ---------------------------------------------------------------- smooth --

struct SmoothArgs {
  std::string pfile, qfile;
  double epsilon = -1.0;
  bool epsilon_set = false;
  double alpha = 0.0, delta = 0.0;
  bool pair_set = false;
  std::string out, out_p, out_q;
  bool json = false;
};

int run_smooth(const SmoothArgs& a) {
  RunReport r;
  r.add("command", "smooth");

  if (a.epsilon_set) {
    if (a.epsilon < 0.0)
      throw std::invalid_argument("smooth: epsilon must be nonnegative");
    if (a.pair_set || !a.qfile.empty())
      throw std::invalid_argument(
          "smooth: --epsilon takes one curve; --alpha/--delta take two");
    Curve c = cli::read_curve_file(a.pfile);
    Curve s = smooth_all_axes(c, a.epsilon);
    std::string out = a.out.empty() ? a.pfile + ".smooth" : a.out;
    cli::write_curve_file(out, s);
    describe(r, "curve", a.pfile, c);
    r.add("epsilon", a.epsilon);
    for (std::size_t k = 0; k < c.dim(); ++k) {
      std::string axis = "axis" + std::to_string(k);
      r.add(axis + "_pieces_before",
            monotone_pieces(project(c, k)).num_pieces());
      r.add(axis + "_pieces_after",
            monotone_pieces(project(s, k)).num_pieces());
    }
    r.add("out", out);
    emit(r, a.json);
    return 0;
  }

  if (!a.pair_set || a.qfile.empty())
    throw std::invalid_argument(
        "smooth: pass --epsilon with one curve, or --alpha and --delta "
        "with two curves");
  if (!(a.alpha >= 1.0) || !(a.delta >= 0.0))
    throw std::invalid_argument("smooth: need alpha >= 1 and delta >= 0");
  Curve P = cli::read_curve_file(a.pfile);
  Curve Q = cli::read_curve_file(a.qfile);
  if (P.dim() != Q.dim())
    throw std::invalid_argument("smooth: dimension mismatch");
  auto [ps, qs] = simplify_nd(P, Q, a.alpha, a.delta);
  std::string out_p = a.out_p.empty() ? a.pfile + ".smooth" : a.out_p;
  std::string out_q = a.out_q.empty() ? a.qfile + ".smooth" : a.out_q;
  cli::write_curve_file(out_p, ps);
  cli::write_curve_file(out_q, qs);

  describe(r, "curve_p", a.pfile, P);
  describe(r, "curve_q", a.qfile, Q);
  r.add("alpha", a.alpha);
  r.add("delta", a.delta);
  std::size_t n = P.num_vertices() + Q.num_vertices();
  double bound = 2.0 * static_cast<double>(n) / a.alpha;
  for (std::size_t k = 0; k < P.dim(); ++k) {
    std::size_t shorts = short_pieces_axis(ps, k, 2.0 * a.delta) +
                         short_pieces_axis(qs, k, 2.0 * a.delta);
    if (static_cast<double>(shorts) > bound)
      throw std::logic_error("smooth: short-piece bound violated");
    r.add("axis" + std::to_string(k) + "_short_pieces", shorts);
  }
  r.add("short_piece_bound", bound);
  r.add("out_p", out_p);
  r.add("out_q", out_q);
  emit(r, a.json);
  return 0;
}

// ------------------------------------------------------------------- gen --

struct GenArgs {
  cli::GenSpec spec;
  std::string out;
  bool json = false;
};

int run_gen(const GenArgs& a) {
  cli::GenSpec spec = a.spec;
  if (const char* env = std::getenv("FRECHET_SEED")) {
    char* end = nullptr;
    unsigned long long v = std::strtoull(env, &end, 10);
    if (end == env || *end != '\0')
      throw std::invalid_argument("FRECHET_SEED: not an integer");
    spec.seed = v;
  }
  Curve c = cli::generate_curve(spec);

  RunReport r;
  r.add("command", "gen");
  r.add("profile", spec.profile);
  r.add("n", spec.n);
  r.add("dim", spec.dim);
  r.add("seed", static_cast<std::size_t>(spec.seed));
  if (spec.profile == "long-edges") {
    r.add("delta", spec.delta);
    r.add("edge_guarantee",
          "every axis moves more than 2*delta per edge");
  }
  if (spec.profile == "adversarial-grid") {
    r.add("cell_width", spec.cell_width);
    r.add("jitter", spec.jitter);
  }

  if (a.out.empty()) {
    // Bare curve on stdout so the command pipes into files; the report
    // stays on stderr.
    std::cout << cli::serialize_curve(c);
    emit(r, a.json, std::cerr);
  } else {
    cli::write_curve_file(a.out, c);
    r.add("out", a.out);
    emit(r, a.json);
  }
  return 0;
}

// ------------------------------------------------------------------ bench --

struct BenchArgs {
  std::string sizes = "1000,2000,4000";
  std::string alphas = "8,16";
  std::string mode = "nd";
  std::size_t reps = 3;
  std::uint64_t seed = 1;
  double delta = 1.25;
};

int run_bench(const BenchArgs& a) {
  std::vector<double> sizes = parse_list(a.sizes, "--sizes");
  std::vector<double> alphas = parse_list(a.alphas, "--alphas");
  std::cout << "n,alpha,mode,mean_ms,blocks_visited\n";
  for (double nd : sizes) {
    std::size_t n = static_cast<std::size_t>(nd);
    if (n < 2) throw std::invalid_argument("--sizes: need n >= 2");
    cli::GenSpec spec;
    spec.n = n;
    spec.dim = 1;
    spec.seed = a.seed + n;
    spec.profile = "random-walk";
    Curve P = cli::generate_curve(spec);
    Curve Q = jittered_copy(P, 0.9 * a.delta, a.seed + n + 1);
    for (double alpha : alphas) {
      double eff = alpha;
      if (a.mode == "1d")
        eff = std::min(alpha, std::cbrt(static_cast<double>(n)));
      eff = std::min(eff, static_cast<double>(n));
      double total_ms = 0.0;
      std::size_t blocks = 0;
      for (std::size_t rep = 0; rep < a.reps; ++rep) {
        Clock::time_point t0 = Clock::now();
        DecisionOutcome o = (a.mode == "nd")
                                ? approx_decide_nd(P, Q, eff, a.delta)
                                : fast_decide_1d(P, Q, eff, a.delta);
        total_ms += ms_since(t0);
        blocks = o.blocks_visited;
      }
      std::printf("%zu,%g,%s,%.3f,%zu\n", n, eff, a.mode.c_str(),
                  total_ms / static_cast<double>(a.reps), blocks);
    }
  }
  return 0;
}

// ---------------------------------------------------------------- diagram --

struct DiagramArgs {
  std::string pfile, qfile;
  double delta = 0.0;
  std::size_t cap = 4096;
  bool force = false;
  std::string out, svg;
};

void write_interval(std::ostream& os, const Interval& v) {
  if (v.is_empty()) {
    os << ",,";
    return;
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, ",%.17g,%.17g", v.lo, v.hi);
  os << buf;
}

void write_svg(const std::string& path, const Curve& P, const Curve& Q,
               double delta, const std::vector<DiagramCell>& cells) {
  std::size_t nx = P.num_edges(), ny = Q.num_edges();
  double scale = std::clamp(800.0 / static_cast<double>(std::max(nx, ny)),
                            6.0, 60.0);
  double wpx = scale * static_cast<double>(nx);
  double hpx = scale * static_cast<double>(ny);
  std::ofstream os(path);
  if (!os) throw std::runtime_error(path + ": cannot open for writing");
  os << "<svg xmlns='http://www.w3.org/2000/svg' width='" << wpx
     << "' height='" << hpx << "' viewBox='0 0 " << wpx << ' ' << hpx
     << "'>\n<rect width='100%' height='100%' fill='#30343c'/>\n";
  // Sampled free space; y flips so the diagram origin sits bottom-left.
  const int sub = 6;
  double px = scale / sub;
  for (std::size_t i = 0; i < nx; ++i) {
    for (std::size_t j = 0; j < ny; ++j) {
      for (int si = 0; si < sub; ++si) {
        for (int sj = 0; sj < sub; ++sj) {
          double x = static_cast<double>(i) + (si + 0.5) / sub;
          double y = static_cast<double>(j) + (sj + 0.5) / sub;
          Point pp = eval(P, param_at_global(P, x));
          Point qq = eval(Q, param_at_global(Q, y));
          if (linf_dist(pp, qq) <= delta) {
            double cx = x * scale - 0.5 * px;
            double cy = hpx - y * scale - 0.5 * px;
            os << "<rect x='" << cx << "' y='" << cy << "' width='" << px
               << "' height='" << px << "' fill='#e8e4d8'/>\n";
          }
        }
      }
    }
  }
  for (std::size_t g = 0; g <= nx; ++g)
    os << "<line x1='" << g * scale << "' y1='0' x2='" << g * scale
       << "' y2='" << hpx << "' stroke='#555b66' stroke-width='0.5'/>\n";
  for (std::size_t g = 0; g <= ny; ++g)
    os << "<line x1='0' y1='" << hpx - g * scale << "' x2='" << wpx
       << "' y2='" << hpx - g * scale
       << "' stroke='#555b66' stroke-width='0.5'/>\n";
  // Reachable entry intervals in red on the cell borders they enter.
  for (const DiagramCell& c : cells) {
    if (!c.reach_bottom.is_empty()) {
      double y = hpx - static_cast<double>(c.j) * scale;
      os << "<line x1='" << (c.i + c.reach_bottom.lo) * scale << "' y1='" << y
         << "' x2='" << (c.i + c.reach_bottom.hi) * scale << "' y2='" << y
         << "' stroke='#c2483a' stroke-width='2'/>\n";
    }
    if (!c.reach_left.is_empty()) {
      double x = static_cast<double>(c.i) * scale;
      os << "<line x1='" << x << "' y1='"
         << hpx - (c.j + c.reach_left.lo) * scale << "' x2='" << x
         << "' y2='" << hpx - (c.j + c.reach_left.hi) * scale
         << "' stroke='#c2483a' stroke-width='2'/>\n";
    }
  }
  os << "</svg>\n";
}

int run_diagram(const DiagramArgs& a) {
  Curve P = cli::read_curve_file(a.pfile);
  Curve Q = cli::read_curve_file(a.qfile);
  std::size_t cells_total = P.num_edges() * Q.num_edges();
  if (cells_total > a.cap && !a.force)
    throw std::invalid_argument(
        "diagram: " + std::to_string(cells_total) + " cells exceed the cap " +
        std::to_string(a.cap) + "; pass --force to render anyway");

  std::vector<DiagramCell> cells = diagram_cells(P, Q, a.delta);
  std::ostream* os = &std::cout;
  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw std::runtime_error(a.out + ": cannot open for writing");
    os = &file;
  }
  *os << "i,j"
         ",free_bottom_lo,free_bottom_hi,free_top_lo,free_top_hi"
         ",free_left_lo,free_left_hi,free_right_lo,free_right_hi"
         ",reach_bottom_lo,reach_bottom_hi,reach_left_lo,reach_left_hi\n";
  for (const DiagramCell& c : cells) {
    *os << c.i << ',' << c.j;
    write_interval(*os, c.free.bottom);
    write_interval(*os, c.free.top);
    write_interval(*os, c.free.left);
    write_interval(*os, c.free.right);
    write_interval(*os, c.reach_bottom);
    write_interval(*os, c.reach_left);
    *os << '\n';
  }
  if (!a.svg.empty()) write_svg(a.svg, P, Q, a.delta, cells);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Approximate continuous Frechet distances between polygonal curves "
      "under the L-infinity norm"};
  app.require_subcommand(1);

  DecideArgs da;
  CLI::App* decide = app.add_subcommand(
      "decide", "Decide d_F <= bound*delta versus d_F > delta");
  decide->add_option("curve_p", da.pfile, "First curve file")->required();
  decide->add_option("curve_q", da.qfile, "Second curve file")->required();
  decide->add_option("--delta", da.delta, "Decision threshold")->required();
  decide->add_option("--alpha", da.alpha,
                     "Approximation parameter (nd: bound 1+2a, 1d: 3a)");
  decide->add_option("--mode", da.mode, "exact, nd, or 1d")
      ->check(CLI::IsMember({"exact", "nd", "1d"}));
  decide->add_flag("--json", da.json, "Emit the report as JSON");

  DistArgs ia;
  CLI::App* dist = app.add_subcommand(
      "dist", "Approximate or exact Frechet distance value");
  dist->add_option("curve_p", ia.pfile, "First curve file")->required();
  dist->add_option("curve_q", ia.qfile, "Second curve file")->required();
  dist->add_option("--alpha", ia.alpha,
                   "Caller-facing approximation factor (modes nd, 1d)");
  dist->add_option("--mode", ia.mode, "exact, nd, or 1d")
      ->check(CLI::IsMember({"exact", "nd", "1d"}));
  dist->add_option("--tol", ia.tol, "Bisection tolerance for exact routes");
  dist->add_option("--eps", ia.eps, "Search refinement in (0, 1]");
  dist->add_flag("--json", ia.json, "Emit the report as JSON");

  SmoothArgs sa;
  CLI::App* smooth = app.add_subcommand(
      "smooth", "Truncated smoothing / pair simplification");
  smooth->add_option("curve_p", sa.pfile, "Curve file")->required();
  smooth->add_option("curve_q", sa.qfile,
                     "Second curve file (pair simplification)");
  CLI::Option* eps_opt =
      smooth->add_option("--epsilon", sa.epsilon, "Smoothing amount");
  smooth->add_option("--alpha", sa.alpha, "Pair mode: approximation factor");
  CLI::Option* sdelta =
      smooth->add_option("--delta", sa.delta, "Pair mode: target threshold");
  smooth->add_option("--out", sa.out, "Output path (epsilon mode)");
  smooth->add_option("--out-p", sa.out_p, "Output path for curve_p");
  smooth->add_option("--out-q", sa.out_q, "Output path for curve_q");
  smooth->add_flag("--json", sa.json, "Emit the report as JSON");

  GenArgs ga;
  CLI::App* gen = app.add_subcommand("gen", "Generate a seeded test curve");
  gen->add_option("--n", ga.spec.n, "Vertex count (>= 2)");
  gen->add_option("--d", ga.spec.dim, "Dimension");
  gen->add_option("--seed", ga.spec.seed,
                  "RNG seed (FRECHET_SEED overrides)");
  gen->add_option("--profile", ga.spec.profile, "Instance family")
      ->check(CLI::IsMember(cli::kGenProfiles));
  gen->add_option("--delta", ga.spec.delta,
                  "long-edges: edges exceed 2*delta");
  gen->add_option("--cell-width", ga.spec.cell_width,
                  "adversarial-grid: cluster spacing");
  gen->add_option("--jitter", ga.spec.jitter,
                  "adversarial-grid: relative wobble");
  gen->add_option("--out", ga.out, "Output path (default: stdout)");
  gen->add_flag("--json", ga.json, "Emit the report as JSON");

  BenchArgs ba;
  CLI::App* bench = app.add_subcommand(
      "bench", "Decider timing sweep over sizes and alphas (CSV)");
  bench->add_option("--sizes", ba.sizes, "Comma-separated vertex counts");
  bench->add_option("--alphas", ba.alphas, "Comma-separated alpha values");
  bench->add_option("--mode", ba.mode, "nd or 1d")
      ->check(CLI::IsMember({"nd", "1d"}));
  bench->add_option("--reps", ba.reps, "Repetitions per configuration");
  bench->add_option("--seed", ba.seed, "Instance seed");
  bench->add_option("--delta", ba.delta, "Decision threshold");

  DiagramArgs ra;
  CLI::App* diagram = app.add_subcommand(
      "diagram", "Export per-cell free-space geometry (CSV, optional SVG)");
  diagram->add_option("curve_p", ra.pfile, "First curve file")->required();
  diagram->add_option("curve_q", ra.qfile, "Second curve file")->required();
  diagram->add_option("--delta", ra.delta, "Free-space threshold")
      ->required();
  diagram->add_option("--cap", ra.cap, "Cell-count cap");
  diagram->add_flag("--force", ra.force, "Render past the cap");
  diagram->add_option("--out", ra.out, "CSV path (default: stdout)");
  diagram->add_option("--svg", ra.svg, "Also render a sampled SVG");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  sa.epsilon_set = eps_opt->count() > 0;
  sa.pair_set = sdelta->count() > 0;

  try {
    if (decide->parsed()) return run_decide(da);
    if (dist->parsed()) return run_dist(ia);
    if (smooth->parsed()) return run_smooth(sa);
    if (gen->parsed()) return run_gen(ga);
    if (bench->parsed()) return run_bench(ba);
    if (diagram->parsed()) return run_diagram(ra);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
