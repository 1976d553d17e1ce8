// SPDX-License-Identifier: Apache-2.0
// Acceptance run: one PASS/FAIL line per criterion. Tolerances are pinned below.
#include <array>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli/commands.hpp"
#include "unidiv/unidiv.hpp"

namespace {

using namespace unidiv;

constexpr double golden_rel_tol = 1e-9;
constexpr double identity_rel_tol = 1e-12;
constexpr double special_rel_tol = 1e-12;
constexpr double consistency_rel_tol = 1e-12;
constexpr double slack_tol = 1e-10;
constexpr double tightness_tol = 1e-12;
constexpr double derivative_rel_tol = 1e-6;
constexpr double fd_step = 1e-5;
constexpr double continuity_tol = 1e-6;

constexpr std::array<double, 6> s_grid{-1.0, -0.5, 0.0, 0.5, 1.0, 2.0};

struct Outcome {
  bool pass = true;
  std::string detail;
  // Failures explained entirely by a documented false inequality.
  bool only_known_defect = false;
};

struct Tally {
  std::size_t checks = 0;
  std::size_t failures = 0;
  std::string first;

  void check(bool ok, const std::string& what) {
    ++checks;
    if (!ok && failures++ == 0) first = what;
  }
  Outcome outcome() const {
    Outcome o{failures == 0, std::to_string(checks) + " checks"};
    if (failures) o.detail += ", " + std::to_string(failures) + " failed; first: " + first;
    return o;
  }
};

bool rel_close(double a, double b, double tol) { return std::abs(a - b) <= tol * std::abs(b); }

std::string fmt(double x) {
  std::ostringstream s;
  s << std::setprecision(17) << x;
  return s.str();
}

DistributionPair random_case(std::uint64_t index, std::uint64_t stream) {
  const int n = 2 + static_cast<int>(index % 63);
  return random_pair(n, stream * 1'000'003 + index);
}

Outcome golden_vectors() {
  const auto pair = make_pair({0.5, 0.5}, {0.25, 0.75});
  const auto rb = ratio_bounds(pair);
  // Expected values come from the long-double direct-summation oracle.
  const std::vector<std::pair<const char*, std::pair<double, double>>> rows{
      {"chi2(P||Q)", {chi_squared(pair), 1.0 / 3.0}},
      {"chi2(Q||P)", {chi_squared(pair.swapped()), 0.25}},
      {"K(P||Q)", {relative_information(pair), 0.14384103622589046373}},
      {"Delta", {triangular_discrimination(pair), 2.0 / 15.0}},
      {"F", {relative_js_divergence(pair), 0.03226926056878558586}},
      {"G", {relative_ag_divergence(pair), 0.031583942401963249566}},
      {"B", {bhattacharyya(pair), 0.96592582628906828673}},
      {"V", {variational_distance(pair), 0.5}},
      {"|chi|^3", {vajda_abs_chi(pair, 3.0), 25.0 / 90.0}},
      {"Omega_-1", {omega_s(pair, -1.0), 1.0 / 30.0}},
      {"Omega_1/2", {omega_s(pair, 0.5), 0.031881214931333010012}},
      {"Omega_2", {omega_s(pair, 2.0), 1.0 / 32.0}},
      {"Phi_2", {phi_s(pair, 2.0), 1.0 / 6.0}},
      {"E_Omega1", {e_omega(pair, 1.0), 0.061146797029251164601}},
      {"E*_Omega1", {e_star_omega(pair, 1.0), 0.031962699591881730884}},
      {"A_Omega1", {a_omega(rb, 1.0), 0.081529062705668219466}},
      {"B_Omega1", {b_omega(rb, 1.0), 0.031583942401963249577}},
      {"delta_Omega1", {delta_omega(rb, 1.0), 19.0 / 30.0}},
      {"sup|psi1'''| closed", {psi3_sup(rb, 1.0), 2.43}},
      {"sup|psi1'''| search", {third_derivative_sup(psi_generator(1.0), rb), 2.43}},
  };
  Tally t;
  for (const auto& [name, v] : rows) {
    t.check(rel_close(v.first, v.second, golden_rel_tol),
            std::string(name) + " = " + fmt(v.first) + " vs " + fmt(v.second));
  }
  return t.outcome();
}

Outcome identity_suite() {
  Tally t;
  for (std::uint64_t k = 0; k < 10'000; ++k) {
    const auto pair = random_case(k, 2);
    const double j = symmetric_divergence(pair, SymmetricMeasure::j);
    const double via_d = relative_j_divergence(pair) + relative_j_divergence(pair.swapped());
    const double via_it = 4.0 * (symmetric_divergence(pair, SymmetricMeasure::i) +
                                 symmetric_divergence(pair, SymmetricMeasure::t));
    t.check(rel_close(via_d, j, identity_rel_tol), "J = D+D, pair " + std::to_string(k));
    t.check(rel_close(via_it, j, identity_rel_tol), "J = 4(I+T), pair " + std::to_string(k));
  }
  return t.outcome();
}

Outcome special_case_suite() {
  Tally t;
  for (std::uint64_t k = 0; k < 1'000; ++k) {
    const auto pair = random_case(k, 3);
    for (const auto& cases : {phi_special_cases(pair), omega_special_cases(pair)}) {
      for (const auto& c : cases) {
        t.check(rel_close(c.family_value, c.base_value, special_rel_tol),
                std::string(c.label) + ", pair " + std::to_string(k));
      }
    }
  }
  return t.outcome();
}

Outcome consistency_suite() {
  Tally t;
  for (std::uint64_t k = 0; k < 1'000; ++k) {
    const auto pair = random_case(k, 4);
    const auto rb = ratio_bounds(pair);
    const bool proper = rb.upper - rb.lower >= degenerate_width;
    for (double s : {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0, 3.0}) {
      const auto gen = psi_generator(s);
      const std::string where = ", s=" + fmt(s) + ", pair " + std::to_string(k);
      t.check(rel_close(omega_s(pair, s), csiszar_divergence(pair, gen), consistency_rel_tol),
              "omega" + where);
      if (!proper) continue;
      t.check(rel_close(a_omega(rb, s), bound_a(rb, gen), consistency_rel_tol), "A" + where);
      t.check(rel_close(b_omega(rb, s), bound_b(rb, gen), consistency_rel_tol), "B" + where);
    }
  }
  return t.outcome();
}

Outcome inequality_suite() {
  Tally all;
  Tally without_defect;
  std::size_t defect_violations = 0;
  double worst_defect = 0.0;
  std::string defect_example;
  for (std::uint64_t k = 0; k < 10'000; ++k) {
    const auto pair = random_case(k, 5);
    const auto report = verify_all(pair, s_grid, {"pair-" + std::to_string(k), slack_tol});
    for (const auto& e : report.entries) {
      if (e.verdict == Verdict::skipped) continue;
      // Strict reading: every evaluated inequality must hold, including the
      // one the report classifies as a known defect.
      const bool ok = e.slack >= -slack_tol;
      const std::string what = e.inequality_id + " s=" + fmt(e.context.s.value_or(NAN)) +
                               " m=" + fmt(e.context.m.value_or(NAN)) + " slack=" + fmt(e.slack) +
                               " pair " + std::to_string(k);
      all.check(ok, what);
      if (e.known_erratum) {
        if (!ok) {
          ++defect_violations;
          if (e.slack < worst_defect) {
            worst_defect = e.slack;
            defect_example = what;
          }
        }
      } else {
        without_defect.check(ok, what);
      }
    }
  }

  std::ostringstream gen_out, gen_err, sink, verify_err;
  cli::GlobalOptions opts;
  opts.seed = 2024;
  const int gen_code = cli::cmd_gen(opts, 6, 50, gen_out, gen_err);
  const std::string path = "acceptance_inequality_pairs.csv";
  {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (f) {
      std::fputs(gen_out.str().c_str(), f);
      std::fclose(f);
    }
  }
  opts.input = path;
  const int verify_code = cli::cmd_verify(opts, {s_grid.begin(), s_grid.end()}, false, sink, verify_err);
  std::remove(path.c_str());
  const bool cli_ok = gen_code == 0 && verify_code == 0;

  Outcome o = all.outcome();
  o.pass = o.pass && cli_ok;
  o.detail += "; cmd_verify exit " + std::to_string(verify_code);
  if (defect_violations) {
    o.detail += "; " + std::to_string(defect_violations) +
                " violations of the lower Vajda bound (1-r^m)/(1-r) V <= |chi|^m, worst " +
                defect_example + "; every other inequality: " +
                (without_defect.failures ? without_defect.outcome().detail : "all hold");
  }
  o.only_known_defect = !o.pass && cli_ok && without_defect.failures == 0;
  return o;
}

Outcome tightness_suite() {
  Tally t;
  for (std::uint64_t k = 0; k < 100; ++k) {
    const auto pair = random_pair(2, 6'000'000 + k);
    const auto rb = ratio_bounds(pair);
    const std::string where = ", pair " + std::to_string(k);
    for (double s : s_grid) {
      const double omega = omega_s(pair, s);
      t.check(std::abs(omega - b_omega(rb, s)) <= tightness_tol,
              "Omega = B at s=" + fmt(s) + where);
    }
    const double spread = (rb.upper - 1.0) * (1.0 - rb.lower);
    const double width = rb.upper - rb.lower;
    const double a = 1.0 - rb.lower;
    const double b = rb.upper - 1.0;
    t.check(std::abs(chi_squared(pair) - spread) <= tightness_tol, "chi2 tight" + where);
    t.check(std::abs(vajda_abs_chi(pair, 3.0) - spread / width * (a * a + b * b)) <= tightness_tol,
            "|chi|^3 tight" + where);
    t.check(std::abs(variational_distance(pair) - 2.0 * spread / width) <= tightness_tol,
            "V tight" + where);
  }
  return t.outcome();
}

Outcome derivative_suite() {
  Tally t;
  const auto fd = [](const std::function<double(double)>& f, double x) {
    const double h = fd_step * x;
    return (f(x + h) - f(x - h)) / (2.0 * h);
  };
  for (double s : s_grid) {
    for (double x : {0.3, 0.6, 1.5, 3.0, 7.0}) {
      const std::string where = " s=" + fmt(s) + " x=" + fmt(x);
      const double d1 = psi_s_d1(x, s);
      const double d2 = psi_s_d2(x, s);
      const double d3 = psi_s_d3(x, s);
      t.check(rel_close(fd([s](double u) { return psi_s(u, s); }, x), d1, derivative_rel_tol),
              "psi'" + where);
      t.check(rel_close(fd([s](double u) { return psi_s_d1(u, s); }, x), d2, derivative_rel_tol),
              "psi''" + where);
      t.check(rel_close(fd([s](double u) { return psi_s_d2(u, s); }, x), d3, derivative_rel_tol),
              "psi'''" + where);
      t.check(d2 > 0.0, "psi'' > 0" + where);
      if (s >= -1.0) t.check(d3 <= 0.0, "psi''' <= 0" + where);
    }
  }
  return t.outcome();
}

Outcome continuity_suite() {
  Tally t;
  for (std::uint64_t k = 0; k < 200; ++k) {
    const auto pair = random_case(k, 8);
    for (double centre : {0.0, 1.0}) {
      const double at = omega_s(pair, centre);
      for (double eps : {1e-6, -1e-6}) {
        t.check(std::abs(omega_s(pair, centre + eps) - at) <= continuity_tol * (1.0 + at),
                "Omega near s=" + fmt(centre) + ", pair " + std::to_string(k));
      }
    }
  }
  for (auto [a, b] : {std::pair{1.0, 2.0}, std::pair{0.3, 7.0}, std::pair{2.0 / 3.0, 2.0}}) {
    for (double p : {-1.0, 0.0}) {
      const double at = lp_power(p, a, b);
      for (double eps : {1e-9, -1e-9, 1e-8, -1e-8, 2e-8, -2e-8}) {
        t.check(std::abs(lp_power(p + eps, a, b) - at) <= continuity_tol,
                "lp_power near p=" + fmt(p));
      }
    }
  }
  return t.outcome();
}

Outcome cli_round_trip() {
  const auto generate = [](std::uint64_t seed) {
    cli::GlobalOptions opts;
    opts.seed = seed;
    std::ostringstream out, err;
    const int code = cli::cmd_gen(opts, 8, 40, out, err);
    return std::pair{code, out.str()};
  };
  const auto [code_a, gen_a] = generate(99);
  const auto [code_b, gen_b] = generate(99);

  const std::string path = "acceptance_round_trip.csv";
  if (std::FILE* f = std::fopen(path.c_str(), "wb")) {
    std::fputs(gen_a.c_str(), f);
    std::fclose(f);
  }
  const auto verify = [&] {
    cli::GlobalOptions opts;
    opts.input = path;
    std::ostringstream out, err;
    const int code = cli::cmd_verify(opts, {s_grid.begin(), s_grid.end()}, false, out, err);
    return std::pair{code, out.str()};
  };
  const auto [verify_a, report_a] = verify();
  const auto [verify_b, report_b] = verify();

  // Same check through the built executable.
  std::string exe_runs[2];
  int exe_status = 0;
  for (auto& text : exe_runs) {
    const std::string cmd = std::string(UNIDIV_EXE) + " --seed 99 gen --n 8 --count 40";
    std::FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
      exe_status = -1;
      break;
    }
    char buf[4096];
    for (std::size_t n; (n = std::fread(buf, 1, sizeof buf, pipe)) > 0;) text.append(buf, n);
    exe_status |= pclose(pipe);
  }
  const std::string verify_cmd =
      std::string(UNIDIV_EXE) + " --input " + path + " verify > /dev/null 2>&1";
  const int exe_verify = std::system(verify_cmd.c_str());
  std::remove(path.c_str());

  Tally t;
  t.check(code_a == 0 && code_b == 0, "gen exit code");
  t.check(gen_a == gen_b, "gen output differs between runs");
  t.check(verify_a == 0 && verify_b == 0, "verify exit " + std::to_string(verify_a));
  t.check(report_a == report_b, "verify output differs between runs");
  t.check(exe_status == 0 && exe_runs[0] == exe_runs[1] && exe_runs[0] == gen_a,
          "executable gen output not byte-identical");
  t.check(exe_verify == 0, "executable verify exit status " + std::to_string(exe_verify));
  return t.outcome();
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    double budget_seconds;
    Outcome (*run)();
  };
  const Criterion criteria[] = {
      {1, "golden vectors", 1.0, golden_vectors},
      {2, "identities J = D+D = 4(I+T)", 10.0, identity_suite},
      {3, "type-s special cases", 0.0, special_case_suite},
      {4, "Csiszar consistency", 0.0, consistency_suite},
      {5, "inequality suite", 60.0, inequality_suite},
      {6, "binary tightness", 0.0, tightness_suite},
      {7, "psi_s derivatives", 0.0, derivative_suite},
      {8, "continuity at branch switches", 0.0, continuity_suite},
      {9, "CLI round trip", 0.0, cli_round_trip},
  };

  int unexpected = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.budget_seconds > 0.0 && seconds > c.budget_seconds) {
      o.pass = false;
      o.only_known_defect = false;
      o.detail += "; over time budget " + fmt(c.budget_seconds) + " s";
    }
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << c.id << "  " << c.name << "  ("
              << std::fixed << std::setprecision(2) << seconds << " s)  " << o.detail << '\n';
    std::cout.unsetf(std::ios::fixed);
    if (!o.pass && !o.only_known_defect) ++unexpected;
    if (!o.pass && o.only_known_defect) {
      std::cout << "      known defect: the failing inequality is false as stated; "
                   "see README \"erratum verdict\"\n";
    }
  }
  return unexpected == 0 ? 0 : 1;
}
