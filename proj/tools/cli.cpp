#include "cli.hpp"

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "experiments.hpp"
#include "report.hpp"
#include "sl2lab/errors.hpp"
#include "sl2lab/forms.hpp"
#include "sl2lab/geometry.hpp"

namespace sl2lab::cli {

using experiments::BobKind;

long double parse_real(const std::string& raw) {
  std::string s = raw;
  bool neg = false;
  if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
    neg = s[0] == '-';
    s.erase(0, 1);
  }
  long double v;
  auto number = [&](const std::string& t) {
    size_t used = 0;
    long double x = 0;
    try {
      x = std::stold(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != t.size() || !std::isfinite(x)) throw InvalidParameter("cannot parse number '" + raw + "'");
    return x;
  };
  if (s == "phi" || s == "golden") {
    v = (1 + std::sqrt(5.0L)) / 2;
  } else if (s.rfind("sqrt", 0) == 0 || s.rfind("√", 0) == 0) {
    std::string arg = s.substr(s[0] == 's' ? 4 : std::string("√").size());
    if (arg.size() >= 2 && arg.front() == '(' && arg.back() == ')') arg = arg.substr(1, arg.size() - 2);
    long double x = number(arg);
    if (x < 0) throw InvalidParameter("square root of a negative number '" + raw + "'");
    v = std::sqrt(x);
  } else {
    v = number(s);
  }
  return neg ? -v : v;
}

namespace {

struct Common {
  std::string format = "csv";
  std::string out;
};

void add_common(CLI::App* sub, Common& c, const std::string& formats = "csv|json") {
  sub->add_option("--format", c.format, "output format (" + formats + ")")->capture_default_str();
  sub->add_option("--out", c.out, "output file (default: stdout, or $SL2LAB_OUT_DIR/<command>.<ext>)");
}

ojson num(long double x) { return static_cast<double>(x); }

// ---- spectrum / gap / orbit -------------------------------------------------------

struct SpectrumArgs {
  std::string lambda;
  long long N = 0;
  long long limit = 0;
  std::string mode = "values";
  double window = 10.0, tol = 1e-6;
};

Report spectrum(const SpectrumArgs& a) {
  const long double lambda = parse_real(a.lambda);
  if (!(lambda > 0)) throw InvalidParameter("--lambda must be positive");
  if (a.limit < 0) throw InvalidParameter("--limit must be nonnegative");
  Report r;
  r.command = "spectrum";
  r.param("lambda", a.lambda);
  r.param("lambda_value", num(lambda));
  r.param("N", a.N);
  r.param("mode", a.mode);
  if (a.mode == "values") {
    r.param("limit", a.limit);
    auto x = lattice_of_lambda(static_cast<double>(lambda));
    auto sp = value_spectrum(x, a.N);
    r.columns = {"value", "p", "q", "form_value"};
    size_t n = a.limit > 0 ? std::min<size_t>(sp.size(), static_cast<size_t>(a.limit)) : sp.size();
    for (size_t i = 0; i < n; ++i) {
      const auto& e = sp[i];
      r.rows.push_back({e.value, e.coords[0], e.coords[1], num(q_lambda(e.coords[0], e.coords[1], lambda))});
    }
    r.result("entries", sp.size());
    r.result("written", n);
  } else if (a.mode == "accumulation") {
    r.param("window", a.window);
    r.param("tol", a.tol);
    auto pts = accumulation_points(lambda, a.N, a.tol, a.window);
    r.columns = {"point"};
    for (double p : pts) r.rows.push_back({p});
    r.result("clusters", pts.size());
  } else {
    throw InvalidParameter("--mode must be values or accumulation");
  }
  return r;
}

struct GapArgs {
  std::string lambda, a = "0";
  long long N = 0;
};

Report gap(const GapArgs& g) {
  const long double lambda = parse_real(g.lambda);
  const long double a = parse_real(g.a);
  if (!(lambda > 0)) throw InvalidParameter("--lambda must be positive");
  auto x = lattice_of_lambda(static_cast<double>(lambda));
  auto w = gap_witness(x, static_cast<double>(a), g.N);
  Report r;
  r.command = "gap";
  r.param("lambda", g.lambda);
  r.param("lambda_value", num(lambda));
  r.param("a", g.a);
  r.param("a_value", num(a));
  r.param("N", g.N);
  r.columns = {"gap", "value", "p", "q", "form_gap"};
  r.rows.push_back({w.gap, w.value, w.coords[0], w.coords[1], num(2 * lambda * w.gap)});
  r.result("gap", w.gap);
  return r;
}

struct OrbitArgs {
  std::string lambda;
  double tmax = 20, step = 0.01;
  long every = 1;
};

Report orbit(const OrbitArgs& o) {
  const long double lambda = parse_real(o.lambda);
  if (!(lambda > 0)) throw InvalidParameter("--lambda must be positive");
  if (o.every < 1) throw InvalidParameter("--every must be at least 1");
  auto x = lattice_of_lambda(static_cast<double>(lambda));
  auto tr = orbit_systole_trace(x, o.tmax, o.step);
  Report r;
  r.command = "orbit";
  r.param("lambda", o.lambda);
  r.param("lambda_value", num(lambda));
  r.param("tmax", o.tmax);
  r.param("step", o.step);
  r.param("every", o.every);
  r.columns = {"t", "systole"};
  OrbitSample<double> best = tr.front();
  for (size_t i = 0; i < tr.size(); ++i) {
    if (tr[i].systole < best.systole) best = tr[i];
    if (i % static_cast<size_t>(o.every) == 0) r.rows.push_back({tr[i].t, tr[i].systole});
  }
  r.result("samples", tr.size());
  r.result("min_systole", best.systole);
  r.result("argmin_t", best.t);
  return r;
}

// ---- transversality ---------------------------------------------------------------

struct TransArgs {
  double a = 4, tau = 0.1, beta = 0.07, flow_tau = 1;
  int samples = 64;
};

Report transversality(const TransArgs& t) {
  if (t.samples < 8) throw InvalidParameter("--samples must be at least 8");
  if (!(t.tau >= 0)) throw InvalidParameter("--tau must be nonnegative");
  Report r;
  r.command = "transversality";
  r.param("a", t.a);
  r.param("tau", t.tau);
  r.param("beta", t.beta);
  r.param("flow_tau", t.flow_tau);
  r.param("samples", t.samples);
  r.columns = {"quantity", "value"};
  auto row = [&](const std::string& k, ojson v) { r.rows.push_back({k, std::move(v)}); };

  bool ok = true;
  const auto H = AlgebraVector::H(), E = AlgebraVector::E(), F = AlgebraVector::F();
  for (double a : {t.a, -t.a}) {
    auto V = generator<double>(OneParam::stabilizer(a));
    int re = lie_span_rank({H, E, V}), rf = lie_span_rank({H, F, V});
    std::ostringstream k;
    k << "a=" << a;
    row("lie_rank_H_E_V " + k.str(), re);
    row("lie_rank_H_F_V " + k.str(), rf);
    ok = ok && re == 3 && rf == 3;
  }

  auto Z = make_Zv(t.a, 1, t.samples).front();
  int nF = 0, nU = 0, nL = 0, n = 0;
  for (const auto& s : Z.samples()) {
    ++n;
    nF += cond_F(Z, s.u);
    nU += cond_HF(Z, s.u, Horo::upper);
    nL += cond_HF(Z, s.u, Horo::lower);
  }
  row("samples", n);
  row("cond_F", nF);
  row("cond_HF_upper", nU);
  row("cond_HF_lower", nL);
  ok = ok && nF == n && nU == n && nL == n;
  if (Z.period()) row("period", num::to_double(*Z.period()));
  row("c_upper_curve", num::to_double(transversality_constant(Z, Horo::upper)));

  auto T = thicken(Z, Quad(t.tau));
  double th_u = num::to_double(transversality_constant(T, Horo::upper));
  double th_l = num::to_double(transversality_constant(T, Horo::lower));
  row("theta_min_upper", th_u);
  row("theta_min_lower", th_l);
  ok = ok && th_u > 0 && th_l > 0;

  auto k = strategy::derive_constants(T, t.beta, t.flow_tau, 1.0);
  row("m", k.m);
  row("n", k.n);
  row("c", k.c);
  row("sigma1", k.sigma1);
  row("sigma2_b", k.sigma2_b);
  row("b", k.b);
  row("sigma", k.sigma);
  row("delta", k.delta);
  row("epsilon", k.epsilon);
  row("r0_natural", strategy::natural_r0(k));

  r.result("transversal", ok);
  return r;
}

// ---- play -------------------------------------------------------------------------

struct PlayArgs {
  std::string variant = "hpw", alice = "dummy", bob = "random", target;
  double beta = 0.1, alpha = 0.5, tau = 1, a = 4, radius = 1, floor = 1e-12;
  int dim = 1, rounds = 0, stages = 6;
  std::uint64_t seed = 0;
};

game::Point parse_point(const std::string& s, int dim) {
  game::Point p{0, 0, 0};
  if (s.empty()) return p;
  std::stringstream in(s);
  std::string tok;
  int i = 0;
  while (std::getline(in, tok, ',')) {
    if (i >= dim) throw InvalidParameter("--target has more than " + std::to_string(dim) + " coordinates");
    p[i++] = static_cast<double>(parse_real(tok));
  }
  return p;
}

void transcript_records(Report& r, const game::Transcript& T) {
  std::istringstream in(T.serialize());
  for (std::string line; std::getline(in, line);) r.records.push_back(line);
  r.columns = {"round", "radius", "x0", "x1", "x2"};
  for (size_t i = 0; i < T.balls.size(); ++i) {
    const auto& b = T.balls[i];
    r.rows.push_back({static_cast<long>(i + 1), b.radius, b.center[0], b.center[1], b.center[2]});
  }
  r.result("outcome", game::to_string(T.outcome.kind));
  r.result("rounds", T.outcome.round);
}

Report play(const PlayArgs& p) {
  Report r;
  r.command = "play";
  auto variant = game::parse_variant(p.variant);
  BobKind bob = experiments::parse_bob(p.bob);
  r.param("variant", p.variant);
  r.param("alice", p.alice);
  r.param("bob", p.bob);
  r.param("beta", p.beta);
  r.param("seed", p.seed);

  if (p.alice == "avoid") {
    if (variant != game::Variant::hpw) throw InvalidParameter("--alice avoid plays the hpw variant");
    auto kind = experiments::parse_avoid_target(p.target.empty() ? "point" : p.target);
    r.param("tau", p.tau);
    r.param("a", p.a);
    r.param("target", experiments::to_string(kind));
    r.param("stages", p.stages);
    auto base = strategy::make_avoid_base(kind, p.a, p.beta, p.tau, p.stages);
    r.param("rounds", p.rounds > 0 ? p.rounds : base.config.max_rounds);
    auto res = experiments::run_avoid(base, p.seed, bob, p.rounds);
    transcript_records(r, res.transcript);
    r.result("k0", res.k0);
    r.result("stages_completed", res.stages_done);
    r.result("slabs", res.stats.slabs.size());
    r.result("relevant", res.stats.relevant);
    r.result("need_violations", res.stats.need_violations);
    r.result("orbit_checked", res.check.checked);
    r.result("orbit_min_dist_over_epsilon", res.check.min_ratio);
    r.result("orbit_worst_k", res.check.worst_k);
    r.result("pass", res.pass);
    if (!res.pass) r.result("failure", res.why);
    return r;
  }
  if (p.alice == "bounded") {
    if (variant != game::Variant::haw) throw InvalidParameter("--alice bounded plays the haw variant");
    if (bob != BobKind::random) throw InvalidParameter("--alice bounded is played against --bob random");
    int rounds = p.rounds > 0 ? p.rounds : 300;
    r.param("dim", p.dim);
    r.param("rounds", rounds);
    auto res = experiments::run_bounded(p.seed, p.dim, p.beta, rounds);
    transcript_records(r, res.transcript);
    r.result("min_systole", res.min_systole);
    r.result("min_systole_t", res.min_systole_t);
    r.result("cf_depth", res.cf_depth);
    r.result("cf_max_quotient", res.max_quotient);
    r.result("pass", res.pass);
    if (!res.pass) r.result("failure", res.why);
    return r;
  }

  game::GameConfig cfg;
  cfg.variant = variant;
  cfg.beta = p.beta;
  cfg.alpha = p.alpha;
  cfg.dimension = p.dim;
  cfg.domain = {{0, 0, 0}, p.radius};
  cfg.max_rounds = p.rounds > 0 ? p.rounds : 100;
  cfg.radius_floor = p.floor;
  cfg.seed = p.seed;
  cfg.validate();
  const game::Point target = parse_point(p.target, p.dim);
  r.param("alpha", p.alpha);
  r.param("dim", p.dim);
  r.param("radius", p.radius);
  r.param("floor", p.floor);
  r.param("rounds", cfg.max_rounds);
  if (bob == BobKind::target) r.param("target", ojson::array({target[0], target[1], target[2]}));

  std::unique_ptr<game::AlicePolicy> alice;
  if (p.alice == "dummy")
    alice = strategy::alice_dummy(p.radius);
  else if (p.alice == "random")
    alice = game::alice_random(p.seed);
  else
    throw InvalidParameter("unknown alice policy '" + p.alice + "' (dummy|random|avoid|bounded)");
  auto b = bob == BobKind::target ? game::bob_target_seeking(target, p.seed) : game::bob_random(p.seed);
  auto T = game::play(*alice, *b, cfg);
  transcript_records(r, T);
  bool pass = T.outcome.kind == game::OutcomeKind::point || T.outcome.kind == game::OutcomeKind::region;
  r.result("pass", pass);
  return r;
}

// ---- suite ------------------------------------------------------------------------

struct SuiteArgs {
  int games = 0, stages = 6, rounds = 300, dim = 3;
  double beta = 0, tau = 1, a = 4;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

unsigned thread_count(unsigned requested) {
  if (requested) return requested;
  return std::max(1u, std::thread::hardware_concurrency());
}

Report suite_avoid(const SuiteArgs& s) {
  const int games = s.games > 0 ? s.games : 40;
  const double beta = s.beta > 0 ? s.beta : 0.07;
  Report r;
  r.command = "suite avoid-z";
  r.param("games", games);
  r.param("stages", s.stages);
  r.param("beta", beta);
  r.param("tau", s.tau);
  r.param("a", s.a);
  r.param("seed", s.seed);
  // Games are split over the four (target, bob) cells; seed = base + index within the cell.
  struct Cell {
    strategy::AvoidTarget target;
    BobKind bob;
  };
  const Cell cells[] = {{strategy::AvoidTarget::point, BobKind::random},
                        {strategy::AvoidTarget::point, BobKind::target},
                        {strategy::AvoidTarget::zv_arc, BobKind::random},
                        {strategy::AvoidTarget::zv_arc, BobKind::target}};
  auto point = strategy::make_avoid_base(strategy::AvoidTarget::point, s.a, beta, s.tau, s.stages);
  auto arc = strategy::make_avoid_base(strategy::AvoidTarget::zv_arc, s.a, beta, s.tau, s.stages);
  std::vector<experiments::AvoidResult> res(static_cast<size_t>(games));
  experiments::parallel_for(res.size(), thread_count(s.threads), [&](size_t i) {
    const Cell& c = cells[i % 4];
    std::uint64_t seed = s.seed + i / 4;
    res[i] = experiments::run_avoid(c.target == strategy::AvoidTarget::point ? point : arc, seed, c.bob);
    res[i].target = c.target;
    res[i].transcript = {};  // keep memory flat on long suites
  });
  r.columns = {"target", "bob", "seed", "k0", "stages", "slabs", "relevant", "min_dist_over_epsilon", "worst_k", "pass",
               "failure"};
  int failures = 0;
  for (const auto& g : res) {
    failures += !g.pass;
    r.rows.push_back({experiments::to_string(g.target), experiments::to_string(g.bob), g.seed, g.k0, g.stages_done,
                      g.stats.slabs.size(), g.stats.relevant, g.check.min_ratio, g.check.worst_k, g.pass, g.why});
  }
  r.result("games", games);
  r.result("failures", failures);
  r.result("pass", failures == 0);
  return r;
}

Report suite_bounded(const SuiteArgs& s) {
  const int games = s.games > 0 ? s.games : 50;
  const double beta = s.beta > 0 ? s.beta : 0.2;
  Report r;
  r.command = "suite bounded";
  r.param("games", games);
  r.param("rounds", s.rounds);
  r.param("beta", beta);
  r.param("dim", s.dim);
  r.param("seed", s.seed);
  std::vector<experiments::BoundedResult> res(static_cast<size_t>(games));
  experiments::parallel_for(res.size(), thread_count(s.threads), [&](size_t i) {
    res[i] = experiments::run_bounded(s.seed + i, s.dim, beta, s.rounds);
  });
  r.columns = {"seed", "rounds", "outcome", "x0", "min_systole", "min_systole_t", "cf_max_quotient", "cf_depth",
               "pass", "failure"};
  int failures = 0;
  for (const auto& g : res) {
    failures += !g.pass;
    const auto& o = g.transcript.outcome;
    r.rows.push_back({g.seed, o.round, game::to_string(o.kind), o.ball.center[0], g.min_systole, g.min_systole_t,
                      g.max_quotient, g.cf_depth, g.pass, g.why});
  }
  r.result("games", games);
  r.result("failures", failures);
  r.result("pass", failures == 0);
  return r;
}

// ---- dispatch ---------------------------------------------------------------------

bool passed(const Report& r) {
  for (const auto& [k, v] : r.summary)
    if ((k == "pass" || k == "transversal") && v.is_boolean() && !v.get<bool>()) return false;
  return true;
}

void emit(const Report& r, const Common& c, std::ostream& out, std::ostream& err) {
  Format f = parse_format(c.format);
  std::string text = render(r, f);
  std::filesystem::path path = c.out;
  if (path.empty()) {
    if (const char* dir = std::getenv("SL2LAB_OUT_DIR"); dir && *dir) {
      std::string stem = r.command;
      std::replace(stem.begin(), stem.end(), ' ', '-');
      path = std::filesystem::path(dir) / (stem + "." + extension(f));
    }
  }
  if (path.empty()) {
    out << text;
    return;
  }
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream file(path, std::ios::binary);
  if (!file) throw ResourceLimit("cannot write " + path.string());
  file << text;
  err << "wrote " << path.string() << "\n";
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"sl2lab: lattice orbits, quadratic form values and winning games", "sl2lab"};
  app.require_subcommand(1);
  Common common;

  SpectrumArgs sa;
  auto* sp = app.add_subcommand("spectrum", "sorted values of Q0 on the lattice of p^2 - lambda^2 q^2");
  sp->add_option("--lambda", sa.lambda, "lambda (number, sqrtK, phi)")->required();
  sp->add_option("--N", sa.N, "height bound")->required();
  sp->add_option("--limit", sa.limit, "write only the first entries (0: all)")->capture_default_str();
  sp->add_option("--mode", sa.mode, "values | accumulation")->capture_default_str();
  sp->add_option("--window", sa.window, "accumulation: |value| window")->capture_default_str();
  sp->add_option("--tol", sa.tol, "accumulation: cluster tolerance")->capture_default_str();
  add_common(sp, common);

  GapArgs ga;
  auto* gp = app.add_subcommand("gap", "gap of the value set around a, with a witnessing point");
  gp->add_option("--lambda", ga.lambda, "lambda")->required();
  gp->add_option("--a", ga.a, "target value")->capture_default_str();
  gp->add_option("--N", ga.N, "height bound")->required();
  add_common(gp, common);

  OrbitArgs oa;
  auto* op = app.add_subcommand("orbit", "systole along the diagonal-flow orbit of the lambda lattice");
  op->add_option("--lambda", oa.lambda, "lambda")->required();
  op->add_option("--tmax", oa.tmax, "last time")->capture_default_str();
  op->add_option("--step", oa.step, "time step")->capture_default_str();
  op->add_option("--every", oa.every, "write every k-th sample")->capture_default_str();
  add_common(op, common);

  TransArgs ta;
  auto* tp = app.add_subcommand("transversality", "Lie spans, transversality conditions and constants for Z_v(a)");
  tp->add_option("--a", ta.a, "nonzero a")->capture_default_str();
  tp->add_option("--tau", ta.tau, "thickening width")->capture_default_str();
  tp->add_option("--beta", ta.beta, "game beta for the constants")->capture_default_str();
  tp->add_option("--flow-tau", ta.flow_tau, "flow step for the constants")->capture_default_str();
  tp->add_option("--samples", ta.samples, "curve samples")->capture_default_str();
  add_common(tp, common);

  PlayArgs pa;
  auto* pp = app.add_subcommand("play", "play one seeded game and verify its outcome");
  pp->add_option("--variant", pa.variant, "classic | haw | hpw")->capture_default_str();
  pp->add_option("--alice", pa.alice, "dummy | random | avoid | bounded")->capture_default_str();
  pp->add_option("--bob", pa.bob, "random | target")->capture_default_str();
  pp->add_option("--beta", pa.beta, "beta")->capture_default_str();
  pp->add_option("--alpha", pa.alpha, "alpha (classic)")->capture_default_str();
  pp->add_option("--tau", pa.tau, "flow step (avoid)")->capture_default_str();
  pp->add_option("--a", pa.a, "Z_v parameter (avoid, arc target)")->capture_default_str();
  pp->add_option("--target", pa.target, "avoid: point | arc; otherwise Bob's target x,y,z");
  pp->add_option("--stages", pa.stages, "avoid: stages to complete")->capture_default_str();
  pp->add_option("--dim", pa.dim, "dimension")->capture_default_str();
  pp->add_option("--radius", pa.radius, "domain radius")->capture_default_str();
  pp->add_option("--floor", pa.floor, "radius at which the outcome is a point")->capture_default_str();
  pp->add_option("--seed", pa.seed, "seed")->capture_default_str();
  pp->add_option("--rounds", pa.rounds, "round limit (0: policy default)")->capture_default_str();
  common.format = "text";
  add_common(pp, common, "text|csv|json");

  SuiteArgs su;
  auto* st = app.add_subcommand("suite", "batch runs with a pass/fail summary");
  st->require_subcommand(1);
  auto* sz = st->add_subcommand("avoid-z", "avoidance games over point and arc targets, both Bobs");
  auto* sb = st->add_subcommand("bounded", "lifted bounded-orbit games");
  for (auto* s : {sz, sb}) {
    s->add_option("--games", su.games, "number of games (0: default)")->capture_default_str();
    s->add_option("--beta", su.beta, "beta (0: default)")->capture_default_str();
    s->add_option("--seed", su.seed, "first seed")->capture_default_str();
    s->add_option("--threads", su.threads, "worker threads (0: all cores)")->capture_default_str();
    add_common(s, common);
  }
  sz->add_option("--stages", su.stages, "stages per game")->capture_default_str();
  sz->add_option("--tau", su.tau, "flow step")->capture_default_str();
  sz->add_option("--a", su.a, "Z_v parameter")->capture_default_str();
  sb->add_option("--rounds", su.rounds, "round limit")->capture_default_str();
  sb->add_option("--dim", su.dim, "dimension")->capture_default_str();

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp& e) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  }
  // play defaults to line records; every other command to CSV.
  if (!pp->parsed() && common.format == "text" && !pp->get_option("--format")->count()) common.format = "csv";

  try {
    Report r;
    if (sp->parsed())
      r = spectrum(sa);
    else if (gp->parsed())
      r = gap(ga);
    else if (op->parsed())
      r = orbit(oa);
    else if (tp->parsed())
      r = transversality(ta);
    else if (pp->parsed())
      r = play(pa);
    else if (sz->parsed())
      r = suite_avoid(su);
    else
      r = suite_bounded(su);
    emit(r, common, out, err);
    if (!passed(r)) {
      err << "error: " << r.command << " failed\n";
      return kFailed;
    }
    return kOk;
  } catch (const InvalidParameter& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ConfigurationError& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const ResourceLimit& e) {
    err << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kFailed;
  }
}

}  // namespace sl2lab::cli
