// Command line front end: scalar bound functions, table and figure data,
// exact RIC/ROC computation, bound certification, recovery solvers and
// phase-transition sweeps. All tabular output is CSV with a header line.
//
// Exit codes: 0 success, 1 usage error, 2 domain error, 3 budget refusal.

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lqcs/lqcs.hpp"

namespace {

std::string fmt8(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.8g", v);
  return buf;
}

std::string fmt4(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4f", v);
  return buf;
}

double parse_real(const std::string& s) {
  const auto slash = s.find('/');
  try {
    if (slash != std::string::npos)
      return std::stod(s.substr(0, slash)) / std::stod(s.substr(slash + 1));
    return std::stod(s);
  } catch (const std::exception&) {
    throw lqcs::DomainError("cannot parse number: " + s);
  }
}

// Accepts decimals and fractions, with a trailing '+' or '-' selecting a
// one-sided limit: "0+", "1/2+", "0.5+", "1-".
lqcs::QValue parse_q(std::string s) {
  if (s.empty()) throw lqcs::DomainError("empty q");
  char side = 0;
  if (s.back() == '+' || s.back() == '-') {
    side = s.back();
    s.pop_back();
  }
  const double v = parse_real(s);
  if (side == '+') {
    if (v == 0.0) return lqcs::QValue::zero_plus();
    if (v == 0.5) return lqcs::QValue::half_plus();
    throw lqcs::DomainError("one-sided limits are defined at q=0+ and q=1/2+ only");
  }
  if (side == '-') {
    if (v == 1.0) return lqcs::QValue::one_minus();
    throw lqcs::DomainError("one-sided limits are defined at q=1- only");
  }
  return lqcs::QValue::exact(v);
}

std::string join_indices(const std::vector<int>& idx) {
  std::string s;
  for (size_t i = 0; i < idx.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(idx[i]);
  }
  return s;
}

// Table/figure rows go to stdout with display rounding where noted; the
// optional --out file always keeps full precision.
struct RowSink {
  std::ofstream file;
  bool has_file = false;
  explicit RowSink(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw lqcs::DomainError("cannot open for writing: " + path);
      has_file = true;
    }
  }
  void line(const std::string& display, const std::string& full) {
    std::cout << display << '\n';
    if (has_file) file << full << '\n';
  }
  void line(const std::string& same) { line(same, same); }
};

long long budget_default() {
  if (const char* env = std::getenv("RIC_BUDGET")) {
    try {
      return std::stoll(env);
    } catch (const std::exception&) {
      throw lqcs::DomainError("RIC_BUDGET is not an integer");
    }
  }
  return lqcs::kDefaultSupportBudget;
}

lqcs::Matrix load_matrix(const std::string& path, bool normalize) {
  lqcs::Matrix A = lqcs::csv::read_matrix(path);
  return normalize ? lqcs::normalize_columns(A) : A;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"restricted-isometry bounds and sparse recovery toolkit"};
  app.require_subcommand(1);

  std::string q_str = "0.5", out_path, matrix_path, y_path, xtrue_path, v_path;
  double t = 2.0, tau = 2.0, theta = 1.0, rho = 0.0, alpha = 1.0;
  long k = 1, k1 = 1, k2 = 1, kmax = 4, kcap = 4, s_size = 1;
  long long budget = budget_default();
  bool normalize = false, k_uniform = false, as_json = false;
  int samples = 200, mdim = 8, ndim = 16, kmin_i = 1, kmax_i = 4, trials = 50;
  uint64_t seed = 1;
  std::string method = "l1", strategy = "exhaustive", which = "corollary1";

  // ---- fn ----
  auto* fn = app.add_subcommand("fn", "evaluate a scalar function");
  fn->require_subcommand(1);
  auto* fn_pq = fn->add_subcommand("pq", "p_q = q^{q/(1-q)} - q^{1/(1-q)}");
  fn_pq->add_option("--q", q_str)->required();
  auto* fn_cq = fn->add_subcommand("cq", "c_q = q^{q/(q-1)}");
  fn_cq->add_option("--q", q_str)->required();
  auto* fn_g = fn->add_subcommand("g", "g(q,k)");
  fn_g->add_option("--q", q_str)->required();
  fn_g->add_option("--k", k)->required();
  auto* fn_mu = fn->add_subcommand("mu", "mu(t,theta)");
  fn_mu->add_option("--t", t)->required();
  fn_mu->add_option("--theta", theta)->required();
  auto* fn_gamma = fn->add_subcommand("gamma", "gamma(rho,theta,t)");
  fn_gamma->add_option("--rho", rho)->required();
  fn_gamma->add_option("--theta", theta)->required();
  fn_gamma->add_option("--t", t)->required();

  // ---- bounds ----
  auto* bounds = app.add_subcommand("bounds", "evaluate a sufficient RIC bound");
  bounds->require_subcommand(1);
  auto* b_t1 = bounds->add_subcommand("t1", "order g(q,k)(t-1)+k bound");
  b_t1->add_option("--q", q_str)->required();
  b_t1->add_option("--k", k)->required();
  b_t1->add_option("--t", t);
  auto* b_tau = bounds->add_subcommand("tau", "order tau*k bound");
  b_tau->add_option("--q", q_str)->required();
  b_tau->add_option("--k", k)->required();
  b_tau->add_option("--tau", tau);
  b_tau->add_flag("--k-uniform", k_uniform, "use g(q,1) so the bound covers all k >= 1");
  auto* b_t2 = bounds->add_subcommand("t2", "order k bound");
  b_t2->add_option("--q", q_str)->required();
  b_t2->add_option("--k", k)->required();
  auto* b_sharp = bounds->add_subcommand("sharp", "sqrt((t-1)/t)");
  b_sharp->add_option("--t", t)->required();

  // ---- tables and figures ----
  auto* tb2 = app.add_subcommand("table2", "order tau*k limit bounds, tau in {2,3,4}");
  tb2->add_option("--kmax", kmax);
  tb2->add_option("--out", out_path, "write full-precision CSV here");
  auto* tb3 = app.add_subcommand("table3", "order k bounds across q regimes");
  tb3->add_option("--kmax", kmax);
  tb3->add_option("--out", out_path);
  auto* fig = app.add_subcommand("figdata", "sampled curve data");
  int fig_id = 1;
  fig->add_option("figure", fig_id, "1=p_q 2=c_q 3=g(q,1) 4=order-2k bound")
      ->required()
      ->check(CLI::Range(1, 4));
  fig->add_option("--samples", samples);
  fig->add_option("--out", out_path);

  // ---- matrix constants ----
  auto* ric_cmd = app.add_subcommand("ric", "exact restricted isometry constant");
  ric_cmd->add_option("--matrix", matrix_path)->required();
  ric_cmd->add_option("--k", k)->required();
  ric_cmd->add_option("--budget", budget);
  ric_cmd->add_flag("--normalize-columns", normalize);
  auto* roc_cmd = app.add_subcommand("roc", "exact restricted orthogonality constant");
  roc_cmd->add_option("--matrix", matrix_path)->required();
  roc_cmd->add_option("--k1", k1)->required();
  roc_cmd->add_option("--k2", k2)->required();
  roc_cmd->add_option("--budget", budget);
  roc_cmd->add_flag("--normalize-columns", normalize);
  auto* cert = app.add_subcommand("certify", "compare a bound with the measured RIC");
  cert->add_option("--matrix", matrix_path)->required();
  cert->add_option("--which", which)
      ->check(CLI::IsMember({"theorem1", "corollary1", "theorem2", "tau"}));
  cert->add_option("--q", q_str);
  cert->add_option("--k", k)->required();
  cert->add_option("--t", t);
  cert->add_option("--tau", tau);
  cert->add_option("--budget", budget);
  cert->add_flag("--normalize-columns", normalize);
  cert->add_flag("--json", as_json, "emit a JSON-lines record instead of CSV");

  // ---- nsp ----
  auto* nsp_cmd = app.add_subcommand("nsp", "null space property check");
  nsp_cmd->add_option("--matrix", matrix_path)->required();
  nsp_cmd->add_option("--k", k)->required();
  nsp_cmd->add_option("--q", q_str);
  nsp_cmd->add_option("--strategy", strategy)
      ->check(CLI::IsMember({"exhaustive", "heuristic"}));
  nsp_cmd->add_option("--budget", budget);
  nsp_cmd->add_flag("--normalize-columns", normalize);
  nsp_cmd->add_option("--out", out_path, "write the counterexample vector here");

  // ---- recover ----
  auto* rec = app.add_subcommand("recover", "solve one recovery instance");
  rec->add_option("--matrix", matrix_path);
  rec->add_option("--y", y_path);
  rec->add_option("--xtrue", xtrue_path);
  rec->add_option("--seed", seed);
  rec->add_option("--m", mdim);
  rec->add_option("--n", ndim);
  rec->add_option("--k", k);
  rec->add_option("--method", method)->check(CLI::IsMember({"l0", "l1", "lq"}));
  rec->add_option("--q", q_str);
  rec->add_option("--k-cap", kcap);
  rec->add_option("--budget", budget);
  rec->add_option("--out", out_path, "write the recovered vector here");

  // ---- phase ----
  auto* ph = app.add_subcommand("phase", "success-rate sweep over sparsity");
  ph->add_option("--seed", seed);
  ph->add_option("--m", mdim);
  ph->add_option("--n", ndim);
  ph->add_option("--kmin", kmin_i);
  ph->add_option("--kmax", kmax_i);
  ph->add_option("--trials", trials);
  ph->add_option("--method", method)->check(CLI::IsMember({"l0", "l1", "lq"}));
  ph->add_option("--q", q_str);
  ph->add_option("--budget", budget);
  ph->add_option("--out", out_path);

  // ---- decompose ----
  auto* dec = app.add_subcommand("decompose", "convex split into sparse vertices");
  dec->add_option("--v", v_path, "vector CSV")->required();
  dec->add_option("--alpha", alpha)->required();
  dec->add_option("--s", s_size)->required();
  dec->add_option("--out", out_path);

  // ---- check ----
  auto* chk = app.add_subcommand("check", "randomized inequality suites");
  chk->require_subcommand(1);
  auto* chk_l2 = chk->add_subcommand("lemma2", "n-based l1/lq comparison");
  chk_l2->add_option("--q", q_str);
  chk_l2->add_option("--trials", trials);
  chk_l2->add_option("--seed", seed);
  auto* chk_p1 = chk->add_subcommand("prop1", "two-sided l1/lq comparison");
  chk_p1->add_option("--q", q_str);
  chk_p1->add_option("--trials", trials);
  chk_p1->add_option("--seed", seed);
  auto* chk_mono = chk->add_subcommand("monotone", "delta_k nondecreasing in k");
  chk_mono->add_option("--matrix", matrix_path)->required();
  chk_mono->add_option("--kmax", kmax)->required();
  chk_mono->add_option("--budget", budget);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n\n" << app.help() << '\n';
    return 1;
  }

  using namespace lqcs;
  try {
    if (fn_pq->parsed()) {
      std::cout << fmt8(p_q(parse_q(q_str))) << '\n';
    } else if (fn_cq->parsed()) {
      std::cout << fmt8(c_q(parse_q(q_str))) << '\n';
    } else if (fn_g->parsed()) {
      std::cout << fmt8(g_func(parse_q(q_str), k)) << '\n';
    } else if (fn_mu->parsed()) {
      std::cout << fmt8(mu(t, theta)) << '\n';
    } else if (fn_gamma->parsed()) {
      std::cout << fmt8(gamma_bound(rho, theta, t)) << '\n';
    } else if (b_sharp->parsed()) {
      std::cout << fmt8(sharp_bound(t)) << '\n';
    } else if (b_t1->parsed() || b_tau->parsed() || b_t2->parsed()) {
      const QValue q = parse_q(q_str);
      BoundResult r;
      std::string param_head, param_cell;
      if (b_t1->parsed()) {
        r = theorem1_bound({q, k, t, tau});
        param_head = "t,";
        param_cell = csv::fmt(t) + ",";
      } else if (b_tau->parsed()) {
        r = tau_bound(q, k, tau, k_uniform);
        param_head = "tau,";
        param_cell = csv::fmt(tau) + ",";
      } else {
        r = theorem2_bound(q, k);
      }
      std::cout << "formula,q,k," << param_head << "ric_order,bound\n"
                << r.formula_tag << ',' << q.label() << ',' << k << ','
                << param_cell << r.ric_order << ',' << csv::fmt(r.bound) << '\n';
    } else if (tb2->parsed()) {
      RowSink sink(out_path);
      sink.line("tau,k0,q,ric_order,bound");
      for (const Table2Row& row : table2(kmax)) {
        const std::string head = csv::fmt(row.tau) + "," + std::to_string(row.k0) +
                                 "," + row.regime.label() + "," +
                                 std::to_string(row.ric_order) + ",";
        sink.line(head + fmt4(row.bound), head + csv::fmt(row.bound));
      }
    } else if (tb3->parsed()) {
      RowSink sink(out_path);
      sink.line("k,q,bound");
      for (const Table3Row& row : table3(kmax)) {
        const std::string head =
            std::to_string(row.k) + "," + row.regime.label() + ",";
        sink.line(head + fmt4(row.bound), head + csv::fmt(row.bound));
      }
    } else if (fig->parsed()) {
      RowSink sink(out_path);
      sink.line("q,value");
      for (const CurveSample& p : fig_data(static_cast<Figure>(fig_id), samples))
        sink.line(csv::fmt(p.q.value()) + "," + csv::fmt(p.value));
    } else if (ric_cmd->parsed()) {
      const RicResult r = ric(load_matrix(matrix_path, normalize), k, budget);
      std::cout << "k,delta,witness\n"
                << r.k << ',' << csv::fmt(r.delta) << ','
                << join_indices(r.witness_support) << '\n';
    } else if (roc_cmd->parsed()) {
      const RocResult r = roc(load_matrix(matrix_path, normalize), k1, k2, budget);
      std::cout << "k1,k2,theta,witness1,witness2\n"
                << r.k1 << ',' << r.k2 << ',' << csv::fmt(r.theta) << ','
                << join_indices(r.witness1) << ',' << join_indices(r.witness2)
                << '\n';
    } else if (cert->parsed()) {
      BoundKind kind = BoundKind::corollary1;
      if (which == "theorem1") kind = BoundKind::theorem1;
      else if (which == "theorem2") kind = BoundKind::theorem2;
      else if (which == "tau") kind = BoundKind::tau;
      const QValue q = parse_q(q_str);
      const BoundCertificate c =
          certify(load_matrix(matrix_path, normalize), {q, k, t, tau}, kind, budget);
      const char* verdict =
          c.verdict == Verdict::satisfied ? "satisfied" : "violated";
      if (as_json) {
        nlohmann::json j{{"which", to_string(kind)},
                         {"q", q.label()},
                         {"k", k},
                         {"t", t},
                         {"tau", tau},
                         {"ric_order", c.bound.ric_order},
                         {"bound", c.bound.bound},
                         {"measured_delta", c.measured_delta},
                         {"verdict", verdict}};
        std::cout << j.dump() << '\n';
      } else {
        std::cout << "which,q,k,t,tau,ric_order,bound,measured_delta,verdict\n"
                  << to_string(kind) << ',' << q.label() << ',' << k << ','
                  << csv::fmt(t) << ',' << csv::fmt(tau) << ','
                  << c.bound.ric_order << ',' << csv::fmt(c.bound.bound) << ','
                  << csv::fmt(c.measured_delta) << ',' << verdict << '\n';
      }
    } else if (nsp_cmd->parsed()) {
      const NspVerdict v = nsp_check(
          load_matrix(matrix_path, normalize), k, parse_q(q_str),
          strategy == "exhaustive" ? NspStrategy::exhaustive_l1
                                   : NspStrategy::heuristic,
          {}, budget);
      std::cout << "k,q,strategy,status,margin\n"
                << k << ',' << parse_q(q_str).label() << ',' << strategy << ','
                << to_string(v.status) << ',' << csv::fmt(v.margin) << '\n';
      if (!out_path.empty() && v.counterexample)
        csv::write_vector(out_path, *v.counterexample);
    } else if (rec->parsed()) {
      RecoveryProblem prob;
      Vector xtrue;
      bool have_truth = false;
      if (!matrix_path.empty()) {
        prob.Phi = csv::read_matrix(matrix_path);
        if (y_path.empty())
          throw DomainError("recover: --y is required with --matrix");
        prob.y = csv::read_vector(y_path);
        if (!xtrue_path.empty()) {
          xtrue = csv::read_vector(xtrue_path);
          have_truth = true;
        }
      } else {
        prob.Phi = gen_matrix(seed, mdim, ndim);
        xtrue = gen_sparse_signal(rng::derive(seed, 1), ndim, static_cast<int>(k));
        prob.y = matvec(prob.Phi, xtrue);
        have_truth = true;
      }
      SolverResult sol;
      double qv = 1.0;
      if (method == "l0") {
        sol = l0_solve(prob, kcap, budget);
        qv = 0.0;
      } else if (method == "l1") {
        sol = l1_solve(prob);
      } else {
        const QValue q = parse_q(q_str);
        qv = q.value();
        sol = lq_solve(prob, q);
      }
      if (have_truth) {
        const RecoveryRecord g = detail::grade(sol, xtrue, method, qv);
        std::cout << "method,q,converged,iterations,residual,objective,exact,"
                     "support_match\n"
                  << g.method << ',' << csv::fmt(g.q) << ',' << g.converged << ','
                  << g.iterations << ',' << csv::fmt(g.residual) << ','
                  << csv::fmt(g.objective) << ',' << g.exact << ','
                  << g.support_match << '\n';
      } else {
        std::cout << "method,q,converged,iterations,residual,objective\n"
                  << method << ',' << csv::fmt(qv) << ',' << sol.converged << ','
                  << sol.iterations << ',' << csv::fmt(sol.residual) << ','
                  << csv::fmt(sol.objective) << '\n';
      }
      if (!out_path.empty()) csv::write_vector(out_path, sol.x_hat);
    } else if (ph->parsed()) {
      ExperimentConfig cfg;
      cfg.seed = seed;
      cfg.m = mdim;
      cfg.n = ndim;
      cfg.k_min = kmin_i;
      cfg.k_max = kmax_i;
      cfg.trials = trials;
      cfg.method = method == "l0" ? Method::l0
                   : method == "lq" ? Method::lq
                                    : Method::l1;
      cfg.q = parse_q(q_str);
      cfg.budget = budget;
      const std::vector<PhaseCell> cells = run_phase(cfg);
      if (out_path.empty()) {
        write_phase_csv(std::cout, cfg, cells);
      } else {
        std::ofstream f(out_path);
        if (!f) throw DomainError("cannot open for writing: " + out_path);
        write_phase_csv(f, cfg, cells);
        write_phase_csv(std::cout, cfg, cells);
      }
    } else if (dec->parsed()) {
      const Vector v = csv::read_vector(v_path);
      const Decomposition d = decompose(v, {alpha, s_size});
      RowSink sink(out_path);
      sink.line("n_terms," + std::to_string(d.terms.size()));
      for (const DecompositionTerm& term : d.terms) {
        std::string row = csv::fmt(term.lambda);
        for (double x : term.u) row += "," + csv::fmt(x);
        sink.line(row);
      }
    } else if (chk_l2->parsed() || chk_p1->parsed()) {
      const bool support_form = chk_p1->parsed();
      const QValue q = parse_q(q_str);
      double min_resid = 1e300;
      long violations = 0;
      for (int i = 0; i < trials; ++i) {
        const int n = 1 + static_cast<int>(
                              rng::uniform01(seed, rng::kGenericStream, 2 * i) * 16);
        Vector x(n);
        for (int j = 0; j < n; ++j)
          x[j] = rng::normal(seed, rng::kGenericStream + 1 + i, j);
        if (support_form) {
          const Prop1Slack sl = prop1_check(x, q);
          min_resid = std::min({min_resid, sl.lower, sl.upper});
          if (sl.lower < -1e-10 || sl.upper < -1e-10) ++violations;
        } else {
          const double r = lemma2_residual(x, q);
          min_resid = std::min(min_resid, r);
          if (r < -1e-10) ++violations;
        }
      }
      std::cout << "trials,min_residual,violations\n"
                << trials << ',' << csv::fmt(min_resid) << ',' << violations
                << '\n';
      return violations == 0 ? 0 : 2;
    } else if (chk_mono->parsed()) {
      const bool ok = check_monotonicity(csv::read_matrix(matrix_path), kmax, budget);
      std::cout << "kmax,monotone\n" << kmax << ',' << (ok ? 1 : 0) << '\n';
      return ok ? 0 : 2;
    }
  } catch (const BudgetError& e) {
    std::cerr << "budget refused: " << e.what() << '\n';
    return 3;
  } catch (const DomainError& e) {
    std::cerr << "domain error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
