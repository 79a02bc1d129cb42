// Acceptance suite: runs every acceptance criterion at its stated
// tolerance and prints one pass/fail line per criterion. The CLI binary
// under test is argv[1]; criteria phrased against the command line are
// exercised through it, the heavy numerical suites call the library
// directly (the CLI wraps the same entry points).

#include <sys/wait.h>
#include <unistd.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <sstream>

#include "lqcs/lqcs.hpp"

namespace {

std::string g_cli;
std::filesystem::path g_tmp;
int g_failures = 0;

struct CliRun {
  int exit_code;
  std::string out;
};

CliRun run_cli(const std::string& args) {
  const std::string cmd = g_cli + " " + args;
  FILE* pipe = popen(cmd.c_str(), "r");
  if (!pipe) throw std::runtime_error("popen failed: " + cmd);
  std::string out;
  char buf[4096];
  size_t got;
  while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
  const int status = pclose(pipe);
  return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream is(text);
  std::string line;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::vector<std::string> row;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) row.push_back(cell);
    rows.push_back(std::move(row));
  }
  return rows;
}

double first_scalar(const std::string& text) { return std::stod(text); }

void criterion(int id, const std::string& name,
               const std::function<bool(std::string&)>& body,
               double runtime_limit_s) {
  const auto start = std::chrono::steady_clock::now();
  std::string detail;
  bool ok = false;
  try {
    ok = body(detail);
  } catch (const std::exception& e) {
    detail = std::string("exception: ") + e.what();
  }
  const double elapsed =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  if (elapsed > runtime_limit_s) {
    ok = false;
    detail += " [runtime " + std::to_string(elapsed) + "s exceeds " +
              std::to_string(runtime_limit_s) + "s]";
  }
  std::printf("criterion %d %-34s %s  (%.2fs)%s%s\n", id, name.c_str(),
              ok ? "PASS" : "FAIL", elapsed, detail.empty() ? "" : "  -- ",
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

bool close(double a, double b, double tol) { return std::abs(a - b) <= tol; }

// Four-digit table anchors follow the source tables' display convention,
// which truncates: sqrt(2/3) = 0.8164966 appears as 0.8164, a gap of
// 9.7e-5 that no rounding tolerance below 1e-4 can absorb. A value also
// matches its anchor when it truncates to it.
bool matches_display(double v, double anchor4, double tol) {
  if (close(v, anchor4, tol)) return true;
  return close(std::floor(v * 1e4) / 1e4, anchor4, 1e-12);
}

// ---------------------------------------------------------------- 1
bool bound_reproduction(std::string& detail) {
  const std::array<std::pair<std::string, double>, 3> sharp = {
      std::pair{std::string("2"), 0.7071},
      std::pair{std::string("3"), 0.8164},
      std::pair{std::string("4"), 0.8660}};
  for (const auto& [t, want] : sharp) {
    const CliRun r = run_cli("bounds sharp --t " + t);
    if (r.exit_code != 0) { detail = "bounds sharp exit " + std::to_string(r.exit_code); return false; }
    if (!matches_display(first_scalar(r.out), want, 5e-5)) {
      detail = "sharp t=" + t + " got " + r.out;
      return false;
    }
  }

  const std::string t2 = (g_tmp / "table2.csv").string();
  if (run_cli("table2 --kmax 4 --out " + t2).exit_code != 0) { detail = "table2 failed"; return false; }
  double cell_0p = -1.0, cell_hp = -1.0;
  for (const auto& row : parse_csv([&] {
         std::ifstream f(t2);
         std::stringstream ss;
         ss << f.rdbuf();
         return ss.str();
       }())) {
    if (row.size() != 5 || row[0] == "tau") continue;
    if (row[0] == "2" && row[1] == "2" && row[2] == "0+") cell_0p = std::stod(row[4]);
    if (row[0] == "2" && row[1] == "1" && row[2] == "1/2+") cell_hp = std::stod(row[4]);
  }
  if (!close(cell_0p, 0.5547, 5e-4)) { detail = "table2 0+ cell " + std::to_string(cell_0p); return false; }
  if (!close(cell_hp, 0.6782, 5e-4)) { detail = "table2 1/2+ cell " + std::to_string(cell_hp); return false; }

  const std::string t3 = (g_tmp / "table3.csv").string();
  if (run_cli("table3 --kmax 8 --out " + t3).exit_code != 0) { detail = "table3 failed"; return false; }
  bool found_odd = false;
  for (const auto& row : parse_csv([&] {
         std::ifstream f(t3);
         std::stringstream ss;
         ss << f.rdbuf();
         return ss.str();
       }())) {
    if (row.size() != 3 || row[0] == "k") continue;
    const long k = std::stol(row[0]);
    const double bound = std::stod(row[2]);
    const bool half_or_one = row[1] == "0.5" || row[1] == "1";
    if (half_or_one && k % 2 == 0 && !close(bound, 1.0 / 3.0, 1e-9)) {
      detail = "table3 even cell k=" + row[0] + " q=" + row[1] + " -> " + row[2];
      return false;
    }
    if (row[1] == "0.5" && k == 3) {
      found_odd = true;
      if (!close(bound, 0.3203, 5e-4)) { detail = "table3 (1/2,3) -> " + row[2]; return false; }
    }
  }
  if (!found_odd) { detail = "table3 (1/2,3) cell missing"; return false; }
  return true;
}

// ---------------------------------------------------------------- 2
bool function_identities(std::string& detail) {
  using namespace lqcs;
  if (!close(p_q(QValue::exact(0.5)), 0.25, 1e-12)) { detail = "p(1/2)"; return false; }
  for (long k = 1; k <= 100; ++k)
    if (!close(g_func(QValue::exact(0.5), k), static_cast<double>(k), 1e-9)) {
      detail = "g(1/2," + std::to_string(k) + ")";
      return false;
    }
  if (!close(g_func(QValue::exact(2.0 / 3.0), 4), 4.0, 1e-9)) { detail = "g(2/3,4)"; return false; }
  for (int i = 1; i <= 1000; ++i) {
    const double t = 1.0 + 9.0 * i / 1000.0;
    if (std::abs(gamma_bound(mu(t, 1.0), 1.0, t) - sharp_bound(t)) > 1e-10) {
      detail = "corollary identity at t=" + std::to_string(t);
      return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------- 3
bool inequality_suites(std::string& detail) {
  using namespace lqcs;
  const uint64_t seed = 0xACCE55;
  for (int trial = 0; trial < 100000; ++trial) {
    const uint64_t stream = 3 * trial;
    const int n = 1 + static_cast<int>(rng::uniform01(seed, stream, 0) * 63);
    const double qv = 0.02 + 0.98 * rng::uniform01(seed, stream, 1);
    const QValue q = QValue::exact(qv);
    Vector x(n);
    const bool heavy = trial % 2 == 1;
    for (int i = 0; i < n; ++i) {
      double v = rng::normal(seed, stream + 1, i);
      if (heavy) {
        const double g1 = rng::normal(seed, stream + 2, 2 * i);
        const double g2 = rng::normal(seed, stream + 2, 2 * i + 1);
        v /= std::sqrt((g1 * g1 + g2 * g2) / 2.0);
      }
      x[i] = v;
    }
    if (lemma2_residual(x, q) < -1e-10) { detail = "eq7 violation"; return false; }
    if (norm_stats(x).l0 > 0) {
      if (lemma2_support_residual(x, q) < -1e-10) { detail = "eq9 violation"; return false; }
      const Prop1Slack s = prop1_check(x, q);
      if (s.lower < -1e-10 || s.upper < -1e-10) { detail = "eq10 violation"; return false; }
    }
  }

  // exhaustive lattice vectors, n <= 4, entries in {0, 1/4, 1/2, 3/4, 1}
  const double levels[5] = {0.0, 0.25, 0.5, 0.75, 1.0};
  for (int n = 1; n <= 4; ++n) {
    std::vector<int> digit(n, 0);
    for (;;) {
      Vector x(n);
      for (int i = 0; i < n; ++i) x[i] = levels[digit[i]];
      for (int qi = 1; qi <= 10; ++qi) {
        const QValue q = QValue::exact(qi / 10.0);
        if (lemma2_residual(x, q) < -1e-10) { detail = "lattice eq7"; return false; }
        if (norm_stats(x).l0 > 0) {
          if (lemma2_support_residual(x, q) < -1e-10) { detail = "lattice eq9"; return false; }
          const Prop1Slack s = prop1_check(x, q);
          if (s.lower < -1e-10 || s.upper < -1e-10) { detail = "lattice eq10"; return false; }
        }
      }
      int pos = 0;
      while (pos < n && ++digit[pos] == 5) digit[pos++] = 0;
      if (pos == n) break;
    }
  }

  // gamma(mu(t,theta),theta,t) monotone on the (t, theta] grid
  for (int i = 1; i <= 60; ++i) {
    const double t = 1.0 + 9.0 * i / 60.0;
    double prev = 2.0;
    for (int j = 1; j <= 60; ++j) {
      const double theta = 10.0 * j / 60.0;
      const double v = lqcs::gamma_bound(lqcs::mu(t, theta), theta, t);
      if (v > prev + 1e-12) { detail = "lemma4 theta direction"; return false; }
      prev = v;
    }
  }
  for (int j = 1; j <= 60; ++j) {
    const double theta = 10.0 * j / 60.0;
    double prev = -1.0;
    for (int i = 1; i <= 60; ++i) {
      const double t = 1.0 + 9.0 * i / 60.0;
      const double v = lqcs::gamma_bound(lqcs::mu(t, theta), theta, t);
      if (v < prev - 1e-12) { detail = "lemma4 t direction"; return false; }
      prev = v;
    }
  }

  // measured delta_k monotone on 20 random matrices
  for (int i = 0; i < 10; ++i) {
    if (!check_monotonicity(gen_matrix(9100 + i, 4, 8), 4)) { detail = "monotone 4x8"; return false; }
    if (!check_monotonicity(gen_matrix(9200 + i, 6, 12), 6)) { detail = "monotone 6x12"; return false; }
  }
  return true;
}

// ---------------------------------------------------------------- 4
bool polytope_decomposition(std::string& detail) {
  using namespace lqcs;
  const uint64_t seed = 0x704;
  for (int trial = 0; trial < 10000; ++trial) {
    const int n = 1 + static_cast<int>(rng::uniform01(seed, trial, 100) * 15);
    const double alpha = 0.05 + 4.0 * rng::uniform01(seed, trial, 101);
    const long s = 1 + static_cast<long>(rng::uniform01(seed, trial, 102) * 6);
    const PolytopeSpec spec{alpha, s};
    Vector v(n);
    for (int i = 0; i < n; ++i) {
      v[i] = alpha * (2.0 * rng::uniform01(seed, 31 * trial + 1, i) - 1.0);
      if (rng::uniform01(seed, 31 * trial + 2, i) < 0.2) v[i] = 0.0;
    }
    const double cap = static_cast<double>(s) * alpha;
    if (norm1(v) > cap) {
      const double shrink =
          cap / norm1(v) * (0.3 + 0.7 * rng::uniform01(seed, 31 * trial + 3, 0));
      for (double& x : v) x *= shrink;
    }

    const Decomposition dec = decompose(v, spec);
    const NormStats vs = norm_stats(v);
    if (vs.l0 <= s) {
      if (dec.terms.size() != 1 || dec.terms[0].lambda != 1.0 ||
          dec.terms[0].u != v) {
        detail = "sparse input did not return the identity decomposition";
        return false;
      }
    }
    if (static_cast<double>(dec.terms.size()) > std::max(1.0, 2.0 * vs.l0)) {
      detail = "term count exceeds 2 ||v||_0";
      return false;
    }
    double lam_sum = 0.0;
    Vector recon(v.size(), 0.0);
    for (const DecompositionTerm& term : dec.terms) {
      if (!(term.lambda >= 0.0 && term.lambda <= 1.0 + 1e-12)) { detail = "lambda range"; return false; }
      if (!in_U(term.u, spec, v)) { detail = "a term fails in_U"; return false; }
      lam_sum += term.lambda;
      for (size_t i = 0; i < v.size(); ++i) recon[i] += term.lambda * term.u[i];
    }
    if (std::abs(lam_sum - 1.0) > 1e-9) { detail = "lambda sum"; return false; }
    for (size_t i = 0; i < v.size(); ++i)
      if (std::abs(recon[i] - v[i]) > 1e-9) { detail = "reconstruction"; return false; }
  }
  return true;
}

// ---------------------------------------------------------------- 5
bool exact_constant_oracles(std::string& detail) {
  using namespace lqcs;
  for (int ci = 1; ci <= 9; ++ci) {
    const double c = ci / 10.0;
    Matrix Phi(2, 2);
    Phi(0, 0) = 1.0;
    Phi(0, 1) = c;
    Phi(1, 1) = std::sqrt(1.0 - c * c);
    if (std::abs(ric(Phi, 2).delta - c) > 1e-10) {
      detail = "two-column construction at c=" + std::to_string(c);
      return false;
    }
  }

  // orthonormal columns ==> delta = 0
  for (uint64_t seed : {1ull, 2ull, 3ull}) {
    Matrix Q(8, 5);
    for (int j = 0; j < 5; ++j) {
      Vector v(8);
      for (int i = 0; i < 8; ++i) v[i] = lqcs::rng::normal(seed, j, i);
      for (int pass = 0; pass < 2; ++pass)
        for (int p = 0; p < j; ++p) {
          double dot = 0.0;
          for (int i = 0; i < 8; ++i) dot += v[i] * Q(i, p);
          for (int i = 0; i < 8; ++i) v[i] -= dot * Q(i, p);
        }
      const double nv = norm2(v);
      for (int i = 0; i < 8; ++i) Q(i, j) = v[i] / nv;
    }
    if (ric(Q, 3).delta > 1e-12) { detail = "orthonormal delta"; return false; }
  }

  const Matrix Phi = gen_matrix(505, 4, 8);
  const double t12 = roc(Phi, 1, 2).theta;
  const double t21 = roc(Phi, 2, 1).theta;
  if (std::abs(t12 - t21) > 1e-10) { detail = "roc symmetry"; return false; }
  double scan = 0.0;
  for (int i = 0; i < 8; ++i)
    for (int j = i + 1; j < 8; ++j) {
      double dot = 0.0;
      for (int r = 0; r < 4; ++r) dot += Phi(r, i) * Phi(r, j);
      scan = std::max(scan, std::abs(dot));
    }
  if (std::abs(roc(Phi, 1, 1).theta - scan) > 1e-10) { detail = "theta11 scan"; return false; }
  return true;
}

// ---------------------------------------------------------------- 6
bool recovery_soundness(std::string& detail) {
  using namespace lqcs;
  // Column-normalized Gaussian instances: the raw 8x16 ensemble never
  // satisfies the sharp order-2k condition (column-norm spread alone puts
  // delta_2 near 0.9), which would leave the 100%-of-certified clause
  // vacuous. Normalization is the ensemble the certify CLI flag exposes.
  const uint64_t master = 7;
  int instances = 0, certified = 0, l1_fail = 0, lq_fail = 0, l0_fail = 0;

  for (int k = 1; k <= 2; ++k) {
    const int count = k == 1 ? 400 : 100;
    for (int trial = 0; trial < count; ++trial) {
      ++instances;
      const uint64_t ts = rng::derive(master, k, trial);
      RecoveryProblem prob;
      prob.Phi = normalize_columns(gen_matrix(ts, 8, 16));
      const Vector x0 = gen_sparse_signal(rng::derive(ts, 1), 16, k);
      prob.y = matvec(prob.Phi, x0);

      const BoundCertificate cert = certify(
          prob.Phi, {QValue::exact(0.5), k, 2.0, 2.0}, BoundKind::corollary1);
      if (cert.verdict != Verdict::satisfied) continue;
      ++certified;

      const SolverResult l1 = l1_solve(prob);
      if (!(l1.converged &&
            norm2(sub(l1.x_hat, x0)) <= 1e-6 * (1.0 + norm2(x0))))
        ++l1_fail;

      const SolverResult lq = lq_solve(prob, QValue::exact(0.5));
      if (norm2(sub(lq.x_hat, x0)) > 1e-6 * (1.0 + norm2(x0))) ++lq_fail;

      // the exhaustive oracle confirms x0 is the unique sparsest solution
      const SolverResult l0 = l0_solve(prob, k);
      if (!(l0.converged &&
            norm2(sub(l0.x_hat, x0)) <= 1e-6 * (1.0 + norm2(x0))))
        ++l0_fail;
    }
  }

  detail = "instances=" + std::to_string(instances) +
           " certified=" + std::to_string(certified) +
           " l1_fail=" + std::to_string(l1_fail) +
           " lq_fail=" + std::to_string(lq_fail) +
           " l0_fail=" + std::to_string(l0_fail);
  if (certified == 0) return false;  // the 100% clause must not be vacuous
  if (l1_fail + lq_fail + l0_fail > 0) return false;

  // the same chain through the CLI on the first certified instance
  for (int trial = 0; trial < 400; ++trial) {
    const uint64_t ts = rng::derive(master, 1, trial);
    const Matrix Phi = normalize_columns(gen_matrix(ts, 8, 16));
    if (certify(Phi, {QValue::exact(0.5), 1, 2.0, 2.0}, BoundKind::corollary1)
            .verdict != Verdict::satisfied)
      continue;
    const Vector x0 = gen_sparse_signal(rng::derive(ts, 1), 16, 1);
    const std::string mp = (g_tmp / "phi.csv").string();
    const std::string yp = (g_tmp / "y.csv").string();
    const std::string xp = (g_tmp / "x0.csv").string();
    csv::write_matrix(mp, Phi);
    csv::write_vector(yp, matvec(Phi, x0));
    csv::write_vector(xp, x0);

    const CliRun cert_run = run_cli("certify --matrix " + mp +
                                    " --which corollary1 --q 0.5 --k 1 --t 2");
    if (cert_run.exit_code != 0 ||
        cert_run.out.find("satisfied") == std::string::npos) {
      detail += " [cli certify mismatch]";
      return false;
    }
    for (const std::string method : {"l1", "lq"}) {
      const CliRun rec = run_cli("recover --matrix " + mp + " --y " + yp +
                                 " --xtrue " + xp + " --method " + method +
                                 " --q 0.5");
      const auto rows = parse_csv(rec.out);
      if (rec.exit_code != 0 || rows.size() != 2 || rows[1][6] != "1") {
        detail += " [cli recover " + method + " failed]";
        return false;
      }
    }
    break;
  }
  return true;
}

// ---------------------------------------------------------------- 7
bool nsp_equivalence(std::string& detail) {
  using namespace lqcs;
  int verified_count = 0;
  for (int i = 0; i < 20; ++i) {
    const Matrix Phi = gen_matrix(0x75B + i, 5, 8);
    const NspVerdict v =
        nsp_check(Phi, 1, QValue::exact(1.0), NspStrategy::exhaustive_l1);

    bool all = true;
    for (int support = 0; support < 8; ++support)
      for (int draw = 0; draw < 50; ++draw) {
        Vector x0(8, 0.0);
        x0[support] = rng::normal(0x75B + i, 900 + support, draw);
        if (x0[support] == 0.0) x0[support] = 1.0;
        const RecoveryProblem prob{Phi, matvec(Phi, x0)};
        const SolverResult r = l1_solve(prob);
        if (!(r.converged &&
              norm2(sub(r.x_hat, x0)) <= 1e-6 * (1.0 + norm2(x0)))) {
          all = false;
          support = 8;
          break;
        }
      }
    if ((v.status == NspStatus::verified) != all) {
      detail = "disagreement on matrix " + std::to_string(i);
      return false;
    }
    if (v.status == NspStatus::verified) ++verified_count;
  }
  detail = "verified on " + std::to_string(verified_count) + "/20 matrices";
  return true;
}

// ---------------------------------------------------------------- 8
bool figure_endpoints(std::string& detail) {
  const CliRun f1 = run_cli("figdata 1 --samples 100");
  const CliRun f2 = run_cli("figdata 2 --samples 100");
  const CliRun f3 = run_cli("figdata 3 --samples 100");
  const CliRun f4 = run_cli("figdata 4 --samples 100");
  if (f1.exit_code || f2.exit_code || f3.exit_code || f4.exit_code) {
    detail = "figdata exit codes";
    return false;
  }
  const auto r1 = parse_csv(f1.out), r2 = parse_csv(f2.out),
             r3 = parse_csv(f3.out), r4 = parse_csv(f4.out);
  const auto value = [](const std::vector<std::string>& row) {
    return std::stod(row[1]);
  };
  if (!close(value(r1[1]), 1.0, 1e-9) || !close(value(r1.back()), 0.0, 1e-9)) {
    detail = "p endpoints";
    return false;
  }
  if (!close(value(r2[1]), 1.0, 1e-9) ||
      !close(value(r2.back()), std::numbers::e, 1e-9)) {
    detail = "c endpoints";
    return false;
  }
  if (!close(value(r3[1]), 2.0, 1e-9) || !close(value(r3.back()), 1.0, 1e-9)) {
    detail = "g endpoints";
    return false;
  }
  for (const auto& row : r4) {
    if (row[0] == "q") continue;
    if (std::stod(row[0]) == 0.5 && !close(value(row), 0.707107, 1e-6)) {
      detail = "fig4 at q=1/2: " + row[1];
      return false;
    }
  }
  return true;
}

// CLI interface contract: exit codes 1/2/3 (not an acceptance criterion
// by number, but part of the command line contract)
bool cli_exit_codes(std::string& detail) {
  if (run_cli("fn pq --q 2 2>/dev/null").exit_code != 2) { detail = "domain error code"; return false; }
  if (run_cli("--definitely-not-a-flag 2>/dev/null").exit_code != 1) { detail = "usage error code"; return false; }
  const std::string mp = (g_tmp / "budget.csv").string();
  lqcs::csv::write_matrix(mp, lqcs::gen_matrix(1, 4, 20));
  if (run_cli("ric --matrix " + mp + " --k 10 --budget 100 2>/dev/null").exit_code != 3) {
    detail = "budget refusal code";
    return false;
  }
  // the environment variable overrides the default budget
  {
    const std::string saved = g_cli;
    g_cli = "RIC_BUDGET=100 " + saved;
    const int code = run_cli("ric --matrix " + mp + " --k 10 2>/dev/null").exit_code;
    g_cli = saved;
    if (code != 3) { detail = "RIC_BUDGET override"; return false; }
  }
  if (run_cli("fn pq --q 0.5").out.substr(0, 4) != "0.25") { detail = "fn pq output"; return false; }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << "usage: acceptance <path-to-lqcs-cli>\n";
    return 64;
  }
  g_cli = argv[1];
  g_tmp = std::filesystem::temp_directory_path() /
          ("lqcs_acceptance_" + std::to_string(getpid()));
  std::filesystem::create_directories(g_tmp);

  criterion(1, "bound reproduction", bound_reproduction, 1.0);
  criterion(2, "function identities", function_identities, 1.0);
  criterion(3, "inequality suites", inequality_suites, 60.0);
  criterion(4, "polytope decomposition", polytope_decomposition, 30.0);
  criterion(5, "exact-constant oracles", exact_constant_oracles, 10.0);
  criterion(6, "recovery soundness", recovery_soundness, 300.0);
  criterion(7, "nsp equivalence", nsp_equivalence, 120.0);
  criterion(8, "figure data", figure_endpoints, 10.0);
  criterion(9, "cli exit codes (interface)", cli_exit_codes, 10.0);

  std::filesystem::remove_all(g_tmp);
  if (g_failures == 0) std::printf("all acceptance criteria passed\n");
  return g_failures;
}
