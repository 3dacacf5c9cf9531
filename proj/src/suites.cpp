#include "nullfoliate/suites.hpp"

#include <algorithm>
#include <array>
#include <chrono>
#include <functional>
#include <memory>
#include <sstream>

#include "nullfoliate/charts.hpp"
#include "nullfoliate/foliation.hpp"
#include "nullfoliate/incidence.hpp"
#include "nullfoliate/tractor.hpp"

namespace nf {

namespace {

struct CaseResult {
  bool ok = true;
  std::vector<std::string> inputs;
  std::string expected, got;
};

using CaseFn = std::function<CaseResult(long)>;

struct Plan {
  long count = 0;
  CaseFn run;
};

void put(std::vector<std::string>& out, const Vec<Scalar>& v) {
  for (const auto& s : v) out.push_back(s.str());
}

std::string flags(std::initializer_list<std::pair<const char*, bool>> items) {
  std::string s;
  for (const auto& [name, v] : items) {
    if (!s.empty()) s += " ";
    s += std::string(name) + "=" + (v ? "1" : "0");
  }
  return s;
}

CaseResult verdict(bool ok, std::vector<std::string> inputs, std::string expected, std::string got) {
  CaseResult r;
  r.ok = ok;
  if (!ok) {
    r.inputs = std::move(inputs);
    r.expected = std::move(expected);
    r.got = std::move(got);
  }
  return r;
}

Plan clifford_plan(const RunConfig& cfg) {
  auto models = std::make_shared<std::vector<CliffordModel>>();
  models->push_back(build_v0_model(cfg.m));
  models->push_back(build_tractor_model(cfg.m));
  auto pairs = std::make_shared<std::vector<std::array<int, 3>>>();
  for (int k = 0; k < 2; ++k)
    for (int a = 0; a < (*models)[k].N; ++a)
      for (int b = a; b < (*models)[k].N; ++b) pairs->push_back({k, a, b});
  const bool fl = cfg.backend == Backend::floating;
  const double tol = cfg.tolerance;
  return {static_cast<long>(pairs->size()), [=](long id) {
            const auto [k, a, b] = (*pairs)[id];
            const CliffordModel& md = (*models)[k];
            const Scalar h = md.gram(a, b);
            double dev;
            if (fl) {
              const auto& g = md.generators<cplx>();
              Mat<cplx> s = g[a] * g[b] + g[b] * g[a];
              s += (2.0 * to_float(h)) * Mat<cplx>::identity(md.spinor_dim);
              dev = max_abs(s);
            } else {
              Mat<Scalar> s = md.gens[a] * md.gens[b] + md.gens[b] * md.gens[a];
              s += Scalar(2) * h * Mat<Scalar>::identity(md.spinor_dim);
              dev = is_zero(s) ? 0.0 : max_abs(s);
            }
            const bool ok = fl ? dev <= tol : dev == 0.0;
            return verdict(ok, {Scalar(k).str(), Scalar(a).str(), Scalar(b).str(), h.str()},
                           "sym(G_A G_B) = -h_AB Id", "deviation " + std::to_string(dev));
          }};
}

Plan purity_plan(const RunConfig& cfg) {
  auto md = std::make_shared<CliffordModel>(build_v0_model(cfg.m));
  auto vac = std::make_shared<FockFrame>(v0_vacuum_frame(*md));
  const bool fl = cfg.backend == Backend::floating;
  const double tol = cfg.tolerance;
  const std::uint64_t seed = cfg.seed;
  const int m = cfg.m;
  return {cfg.cases, [=](long id) {
            Rng rng = Rng::for_case(seed, id);
            const bool constructed = id % 2 == 1;
            Vec<Scalar> z = constructed ? random_pure_spinor(*md, *vac, rng) : random_spinor(*md, rng);
            const bool oracle = is_pure_rank(*md, z);
            bool r, q, s;
            if (fl) {
              const Vec<cplx> zf = to_float(z);
              r = is_pure_rank(*md, zf, tol);
              q = is_pure_quadratic(*md, zf, tol);
              s = is_pure_succinct(*md, zf, tol);
            } else {
              r = oracle;
              q = is_pure_quadratic(*md, z);
              s = is_pure_succinct(*md, z);
            }
            const bool must_pure = constructed || m == 1;
            const bool ok = r == oracle && q == oracle && s == oracle && (!must_pure || oracle);
            std::vector<std::string> in;
            put(in, z);
            return verdict(ok, in, must_pure ? "rank=1 quad=1 succinct=1" : "rank = quad = succinct",
                           flags({{"oracle", oracle}, {"rank", r}, {"quad", q}, {"succinct", s}}));
          }};
}

Plan incidence_plan(const RunConfig& cfg) {
  auto t = std::make_shared<CliffordModel>(build_tractor_model(cfg.m));
  auto vac = std::make_shared<FockFrame>(tractor_vacuum_frame(*t));
  const bool fl = cfg.backend == Backend::floating;
  const double tol = cfg.tolerance;
  const std::uint64_t seed = cfg.seed;
  const int m = cfg.m;
  return {cfg.cases, [=](long id) {
            Rng rng = Rng::for_case(seed, id);
            if (id % 4 == 3) {
              // distinguished curve through a pure spinor
              const Vec<Scalar> xi = random_pure_spinor(*t, *vac, rng);
              const Vec<Scalar> a = rng.integer_vec(t->N, 3);
              const Scalar s1 = rng.gaussian(3), s2 = rng.gaussian(3);
              const Vec<Scalar> z1 = distinguished_curve(*t, xi, a, s1), z2 = distinguished_curve(*t, xi, a, s2);
              const bool pure = is_pure_rank(*t, z1) && is_pure_rank(*t, z2);
              const int d = pure ? intersection_dim(*t, z1, z2) : -2;
              const bool tangent = pure && is_zero(contact_form_eval(*t, z1, distinguished_tangent(*t, xi, a)));
              std::vector<std::string> in;
              put(in, xi);
              put(in, a);
              in.push_back(s1.str());
              in.push_back(s2.str());
              return verdict(pure && d >= m - 1 && tangent, in, "pure, dim >= " + std::to_string(m - 1) + ", alpha(T) = 0",
                             flags({{"pure", pure}, {"tangent", tangent}}) + " dim=" + std::to_string(d));
            }
            const auto [z, w] = random_pure_pair(*t, *vac, rng);
            const int oracle = intersection_dim_oracle(*t, z, w);
            const int d = fl ? intersection_dim(*t, to_float(z), to_float(w), tol) : intersection_dim(*t, z, w);
            std::vector<std::string> in;
            put(in, z);
            put(in, w);
            return verdict(d == oracle, in, std::to_string(oracle), std::to_string(d));
          }};
}

Plan tractor_plan(const RunConfig& cfg) {
  auto fr = std::make_shared<ConformalFrame>(conformal_frame(cfg.m));
  auto inj = std::make_shared<InjectorFields>(injector_fields(*fr));
  const bool fl = cfg.backend == Backend::floating;
  const std::uint64_t seed = cfg.seed;
  return {cfg.cases, [=](long id) {
            Rng rng = Rng::for_case(seed, id);
            const int d = fr->v0.spinor_dim, n = fr->n();
            TractorSpinorPair p{rng.gaussian_vec(d, 2), rng.gaussian_vec(d, 2)};
            const CksFields f = cks_field(*fr, p);
            const bool cks = verify_cks(*fr, f);
            const PolyVec T = assemble_tractor_spinor(*fr, *inj, f);
            bool parallel = true;
            for (int a = 0; a < n; ++a) parallel = parallel && is_zero(derivative(T, a));
            double fd = 0;
            if (fl) {
              Vec<double> x(n);
              for (auto& e : x) e = rng.normal_ish();
              fd = cks_fd_residual(*fr, f, x);
            }
            const CKYQuadruple q = random_cky_quadruple(*fr, rng);
            const CkyFields k = cky_field(*fr, q);
            const bool cky = verify_cky(*fr, k);
            const bool sigma = sigma_parallel(assemble_sigma(*fr, k), n);
            const bool ok = cks && parallel && cky && sigma && fd < 1e-8;
            std::vector<std::string> in;
            put(in, p.xi0);
            put(in, p.zeta0);
            return verdict(ok, in, "cks=1 parallel=1 cky=1 sigma=1 fd<1e-8",
                           flags({{"cks", cks}, {"parallel", parallel}, {"cky", cky}, {"sigma", sigma}}) +
                               " fd=" + std::to_string(fd));
          }};
}

Plan charts_plan(const RunConfig& cfg) {
  auto fr = std::make_shared<ConformalFrame>(conformal_frame(cfg.m));
  auto L = std::make_shared<ChartLayout>(cfg.m);
  const std::uint64_t seed = cfg.seed;
  const bool fl = cfg.backend == Backend::floating;
  const double tol = cfg.tolerance;
  const int m = cfg.m;
  return {cfg.cases, [=](long id) {
            Rng rng = Rng::for_case(seed, id);
            if (id % 2 == 1) {
              // spectrum of V.gamma
              const bool null = id % 4 == 1;
              const Vec<Scalar> v = null ? random_null_vector(fr->v0, rng) : random_nonnull_vector(fr->v0, rng);
              const Scalar vv = bilinear(v, fr->v0.gram, v);
              const EigenReport e = spin_endo_eigen(fr->v0, v);
              bool ok;
              if (null) {
                ok = e.branches.size() == 1 && std::abs(e.branches[0].value) <= tol &&
                     e.branches[0].algebraic == (1 << m);
              } else {
                ok = e.branches.size() == 2;
                const cplx target = -to_float(vv);
                for (const auto& b : e.branches) {
                  ok = ok && b.algebraic == (1 << (m - 1));
                  if (e.exact && b.exact)
                    ok = ok && (*b.exact * *b.exact == -vv);
                  else
                    ok = ok && std::abs(b.value * b.value - target) <= 1e-9 * std::max(1.0, std::abs(target));
                }
              }
              std::ostringstream got;
              got << (e.exact ? "exact" : "float");
              for (const auto& b : e.branches) got << " " << b.value << "x" << b.algebraic;
              std::vector<std::string> in;
              put(in, v);
              return verdict(ok, in,
                             null ? "0 x" + std::to_string(1 << m)
                                  : "+-i sqrt(V.V) x" + std::to_string(1 << (m - 1)),
                             got.str());
            }
            const ChartPointF p = random_chart_point(*L, rng);
            const Vec<Scalar> pi = pi_spinor_from_chart(fr->v0, p.pi_A, p.pi_AB);
            const bool exp_ok = is_zero(pi - pi_spinor_exp(fr->v0, p.pi_A, p.pi_AB));
            const bool pure = fl ? is_pure_rank(fr->v0, to_float(pi), tol) : is_pure_rank(fr->v0, pi);
            const ChartPointPT q = mu_project(*L, p);
            const Vec<Scalar> Z = lift_twistor(*fr, q);
            const bool inc = incident(*fr, chart_x(p), Z) && is_pure_rank(fr->tractor, Z);
            const ChartPointPT q2 = read_chart(*fr, Scalar::gaussian(2, 1) * Z);
            const bool read = q2.omega_0 == q.omega_0 && q2.omega_A == q.omega_A && q2.pi_A == q.pi_A &&
                              q2.pi_AB == q.pi_AB;
            const Scalar t = rng.rational(3);
            const bool flow = tau_project(y_flow(q, t)).omega_bar_A == tau_project(q).omega_bar_A;
            std::vector<std::string> in;
            put(in, chart_x(p));
            put(in, p.pi_A);
            put(in, p.pi_AB);
            in.push_back(t.str());
            return verdict(exp_ok && pure && inc && read && flow, in, "exp=1 pure=1 incident=1 read=1 flow=1",
                           flags({{"exp", exp_ok}, {"pure", pure}, {"incident", inc}, {"read", read}, {"flow", flow}}));
          }};
}

Plan foliation_plan(const RunConfig& cfg) {
  auto fr = std::make_shared<ConformalFrame>(conformal_frame(cfg.m));
  std::shared_ptr<ConformalFrame> fe;
  if (cfg.m >= 2) fe = std::make_shared<ConformalFrame>(conformal_frame(cfg.m, Parity::even));
  const std::uint64_t seed = cfg.seed;
  const int m = cfg.m;
  return {cfg.cases, [=](long id) {
            Rng rng = Rng::for_case(seed, id);
            if (fe && id % 2 == 1) {
              const TractorSpinorPair p = random_even_pair(*fe, rng);
              const NullSection s = even_section(*fe, p);
              const bool pure = section_pure(s), kerr = check_even_kerr(s);
              std::vector<std::string> in;
              put(in, p.xi0);
              put(in, p.zeta0);
              return verdict(pure && kerr, in, "pure=1 even_kerr=1", flags({{"pure", pure}, {"even_kerr", kerr}}));
            }
            Vec<Scalar> pa(m), pab(m * (m - 1) / 2);
            for (auto& e : pa) e = rng.gaussian(2);
            for (auto& e : pab) e = rng.gaussian(2);
            const NullSection s = constant_section(m, Parity::odd, pa, pab);
            const bool pure = section_pure(s), geo = check_geodetic(s), coint = check_cointegrable(s),
                       cogeo = check_cogeodetic(s), orth = frame_orthogonality_holds(s, fr->gram_v0);
            std::vector<std::string> in;
            put(in, pa);
            put(in, pab);
            return verdict(pure && geo && coint && cogeo && orth, in, "pure=1 geo=1 coint=1 cogeo=1 orth=1",
                           flags({{"pure", pure}, {"geo", geo}, {"coint", coint}, {"cogeo", cogeo}, {"orth", orth}}));
          }};
}

Plan robinson_plan(const RunConfig& cfg) {
  auto fr = std::make_shared<ConformalFrame>(conformal_frame(cfg.m));
  const std::uint64_t seed = cfg.seed;
  return {cfg.cases, [=](long id) {
            Rng rng = Rng::for_case(seed, id);
            const TractorSpinorPair p = random_robinson_pair(*fr, rng);
            const NullSection s = robinson_section(*fr, p);
            const bool pure = section_pure(s), geo = check_geodetic(s), coint = check_cointegrable(s);
            std::vector<Vec<Scalar>> pts;
            for (int k = 0; k < 5; ++k) pts.push_back(rng.integer_vec(fr->n(), 3));
            const RobinsonReport r = verify_robinson_twistor_variety(*fr, p, pts, rng);
            std::vector<std::string> in;
            put(in, p.xi0);
            put(in, p.zeta0);
            return verdict(pure && geo && coint && r.all(), in, "pure=1 geo=1 coint=1 variety=all",
                           flags({{"pure", pure}, {"geo", geo}, {"coint", coint}}) + " variety=" +
                               std::to_string(r.passed) + "/" + std::to_string(r.samples) + " leaf=" +
                               std::to_string(r.leaf_passed) + "/" + std::to_string(r.leaf_checked));
          }};
}

Plan kerr_plan(const RunConfig& cfg) {
  auto fr = std::make_shared<ConformalFrame>(conformal_frame(cfg.m));
  const std::uint64_t seed = cfg.seed;
  const double tol = std::max(cfg.tolerance, 1e-8);
  const int m = cfg.m;
  return {cfg.cases, [=](long id) {
            Rng rng = Rng::for_case(seed, id);
            const CKYQuadruple q = random_closed_cky(*fr, rng);
            const auto pts = generic_kerr_points(*fr, q, rng, 5);
            int good = 0;
            double worst = 0;
            for (int b = 0; b < (1 << m); ++b) {
              const KerrReport kr = kerr_section(*fr, q, b, pts, tol);
              good += kr.all();
              for (const auto& s : kr.samples) worst = std::max(worst, s.residual);
            }
            std::vector<std::string> in;
            put(in, q.sigma0);
            put(in, q.phi0);
            return verdict(good == (1 << m) && pts.size() == 5, in,
                           std::to_string(1 << m) + " branches on 5 points",
                           std::to_string(good) + " branches on " + std::to_string(pts.size()) +
                               " points, worst " + std::to_string(worst));
          }};
}

Plan make_plan(const std::string& name, const RunConfig& cfg) {
  if (name == "clifford") return clifford_plan(cfg);
  if (name == "purity") return purity_plan(cfg);
  if (name == "incidence") return incidence_plan(cfg);
  if (name == "tractor") return tractor_plan(cfg);
  if (name == "charts") return charts_plan(cfg);
  if (name == "foliation") return foliation_plan(cfg);
  if (name == "robinson") return robinson_plan(cfg);
  if (name == "kerr") return kerr_plan(cfg);
  throw ConfigError("unknown suite: " + name);
}

std::vector<CaseResult> execute(const Plan& plan, bool parallel) {
  std::vector<CaseResult> out(static_cast<std::size_t>(plan.count));
  auto one = [&](long id) {
    try {
      out[id] = plan.run(id);
    } catch (const std::exception& e) {
      out[id] = verdict(false, {}, "no exception", std::string("exception: ") + e.what());
    }
  };
  if (parallel) {
#pragma omp parallel for schedule(dynamic, 1)
    for (long id = 0; id < plan.count; ++id) one(id);
  } else {
    for (long id = 0; id < plan.count; ++id) one(id);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"clifford", "purity",    "incidence", "tractor", "charts",
                                              "foliation", "robinson", "kerr",      "all"};
  return names;
}

std::string backend_name(Backend b) { return b == Backend::exact ? "exact" : "float"; }

Backend parse_backend(const std::string& s) {
  if (s == "exact") return Backend::exact;
  if (s == "float") return Backend::floating;
  throw ConfigError("unknown backend: " + s);
}

void validate(const RunConfig& cfg) {
  const auto& names = suite_names();
  if (std::find(names.begin(), names.end(), cfg.suite) == names.end())
    throw ConfigError("unknown suite: " + cfg.suite);
  if (cfg.m < 1 || cfg.m > 3) throw ConfigError("m must lie in 1..3");
  if (!(cfg.tolerance > 0)) throw ConfigError("tolerance must be positive");
  if (cfg.cases < 1) throw ConfigError("cases must be at least 1");
}

Report run_suite(const RunConfig& cfg, bool parallel) {
  validate(cfg);
  const auto t0 = std::chrono::steady_clock::now();
  Report rep;
  rep.suite = cfg.suite;
  rep.config = cfg;
  std::vector<std::string> names{cfg.suite};
  if (cfg.suite == "all") names.assign(suite_names().begin(), suite_names().end() - 1);
  long offset = 0;
  for (const auto& name : names) {
    const Plan plan = make_plan(name, cfg);
    const std::vector<CaseResult> res = execute(plan, parallel);
    for (long id = 0; id < plan.count; ++id) {
      if (res[id].ok) {
        ++rep.passed;
        continue;
      }
      ++rep.failed;
      rep.failures.push_back({offset + id, res[id].inputs, res[id].expected, res[id].got});
    }
    offset += plan.count;
  }
  std::sort(rep.failures.begin(), rep.failures.end(),
            [](const Failure& a, const Failure& b) { return a.case_id < b.case_id; });
  rep.wall_time_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

}  // namespace nf
