// SPDX-License-Identifier: Apache-2.0
#include "cli/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <ostream>
#include <sstream>
#include <tuple>

#include "CLI11.hpp"
#include "unidiv/bounds.hpp"
#include "unidiv/registry.hpp"

namespace unidiv::cli {

namespace {

std::vector<LoadedPair> load_input(const GlobalOptions& opts) {
  if (!opts.input || *opts.input == "-") {
    const std::string text((std::istreambuf_iterator<char>(std::cin)), std::istreambuf_iterator<char>());
    return load_pairs(text, opts.renormalize);
  }
  return load_pairs(read_text(*opts.input), opts.renormalize);
}

// Runs `body` against --output (or `fallback`), mapping input failures to exit 1.
int with_output(const GlobalOptions& opts, std::ostream& fallback, std::ostream& err,
                const std::function<int(std::ostream&)>& body) {
  try {
    if (!opts.output || *opts.output == "-") return body(fallback);
    // Render fully before touching the file so a failed run leaves no partial output.
    std::ostringstream buffer;
    const int code = body(buffer);
    std::ofstream file(*opts.output, std::ios::binary | std::ios::trunc);
    if (!file || !(file << buffer.str()) || !file.flush()) {
      err << "error: cannot write '" << *opts.output << "'\n";
      return exit_usage;
    }
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
  }
  return exit_usage;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

int cmd_compute(const GlobalOptions& opts, const std::vector<std::string>& measures,
                const std::vector<double>& s_list, std::ostream& out, std::ostream& err) {
  std::vector<MeasureSpec> specs;
  try {
    for (const auto& name : measures) {
      auto spec = parse_measure(name);
      const bool needs_s = spec.base == "phi" || spec.base == "omega";
      if (!spec.parameter && needs_s) {
        if (s_list.empty()) {
          err << "error: measure '" << name << "' needs a parameter (" << name
              << ":s) or --s values\n";
          return exit_usage;
        }
        for (double s : s_list) specs.push_back({spec.base, s});
      } else if (!spec.parameter && spec.base == "vajda") {
        err << "error: measure 'vajda' needs an order, e.g. vajda:3\n";
        return exit_usage;
      } else {
        specs.push_back(std::move(spec));
      }
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  if (specs.empty()) {
    err << "error: no measures requested\n";
    return exit_usage;
  }

  return with_output(opts, out, err, [&](std::ostream& sink) {
    const auto pairs = load_input(opts);
    struct Row {
      std::string pair_id;
      std::optional<double> s;
      DivergenceValue value;
    };
    std::vector<Row> rows;
    for (const auto& lp : pairs) {
      for (const auto& spec : specs) {
        std::optional<double> s;
        if (spec.base == "phi" || spec.base == "omega") s = spec.parameter;
        try {
          rows.push_back({lp.id, s, evaluate_measure(lp.pair, spec)});
        } catch (const Error& e) {
          throw InputError(lp.id, e.what());
        }
      }
    }
    const auto key = [](const Row& r) {
      return std::make_tuple(std::cref(r.pair_id), r.s.has_value(), r.s.value_or(0.0),
                             std::cref(r.value.measure_id));
    };
    std::stable_sort(rows.begin(), rows.end(),
                     [&](const Row& a, const Row& b) { return key(a) < key(b); });
    RecordWriter writer(sink, opts.format);
    for (const auto& r : rows) {
      writer.write(Record{}
                       .add("pair_id", r.pair_id)
                       .add("measure", r.value.measure_id)
                       .add("s", optional_number(r.s))
                       .add("value", r.value.value));
    }
    return static_cast<int>(exit_ok);
  });
}

int cmd_sweep(const GlobalOptions& opts, double s_min, double s_max, double s_step,
              std::ostream& out, std::ostream& err) {
  if (!(s_min < s_max) || !(s_step > 0.0) || !std::isfinite(s_min) || !std::isfinite(s_max)) {
    err << "error: need s_min < s_max and s_step > 0\n";
    return exit_usage;
  }
  std::vector<double> grid;
  for (long k = 0;; ++k) {
    const double s = s_min + static_cast<double>(k) * s_step;
    if (s > s_max + 1e-9 * s_step) break;
    grid.push_back(s);
    if (grid.size() > 1000000) {
      err << "error: grid has more than 10^6 points\n";
      return exit_usage;
    }
  }

  return with_output(opts, out, err, [&](std::ostream& sink) {
    const auto pairs = load_input(opts);
    RecordWriter writer(sink, opts.format);
    for (const auto& lp : pairs) {
      const auto rb = ratio_bounds(lp.pair);
      const bool proper = rb.upper - rb.lower >= degenerate_width && rb.straddles_one();
      for (double s_raw : grid) {
        const SParameter s(s_raw);
        std::optional<double> a, b, gap_half, gap_star;
        if (proper) {
          a = a_omega(rb, s);
          b = b_omega(rb, s);
          if (s_raw >= -1.0) {
            gap_half = theorem42_bounds(lp.pair, rb, s, GapTarget::half_e).minimum;
            gap_star = theorem42_bounds(lp.pair, rb, s, GapTarget::e_star).minimum;
          }
        }
        writer.write(Record{}
                         .add("pair_id", lp.id)
                         .add("s", s_raw)
                         .add("regime", std::string(to_string(s.regime())))
                         .add("omega", omega_s(lp.pair, s))
                         .add("e", e_omega(lp.pair, s))
                         .add("e_star", e_star_omega(lp.pair, s))
                         .add("a", optional_number(a))
                         .add("b", optional_number(b))
                         .add("gap_bound_half_e", optional_number(gap_half))
                         .add("gap_bound_e_star", optional_number(gap_star)));
      }
    }
    return static_cast<int>(exit_ok);
  });
}

int cmd_verify(const GlobalOptions& opts, const std::vector<double>& s_list,
               bool corrupt_first_entry, std::ostream& out, std::ostream& err) {
  if (!(opts.tolerance >= 0.0)) {
    err << "error: --tolerance must be non-negative\n";
    return exit_usage;
  }
  return with_output(opts, out, err, [&](std::ostream& sink) {
    const auto pairs = load_input(opts);
    RecordWriter writer(sink, opts.format);
    std::size_t counts[4] = {0, 0, 0, 0};
    bool corrupted = !corrupt_first_entry;
    for (const auto& lp : pairs) {
      auto report = verify_all(lp.pair, s_list, {lp.id, opts.tolerance});
      if (!corrupted) {
        for (auto& e : report.entries) {
          if (e.verdict == Verdict::skipped) continue;
          e.lhs += 1.0;
          e.note = detail::join_notes(e.note, "self-test: lhs inflated by 1");
          judge(e, opts.tolerance);
          corrupted = true;
          break;
        }
      }
      for (const auto& e : report.entries) {
        ++counts[static_cast<int>(e.verdict)];
        writer.write(Record{}
                         .add("pair_id", e.context.pair_id)
                         .add("inequality", e.inequality_id)
                         .add("s", optional_number(e.context.s))
                         .add("m", optional_number(e.context.m))
                         .add("r", e.context.r)
                         .add("R", e.context.big_r)
                         .add("lhs", e.lhs)
                         .add("middle", optional_number(e.middle))
                         .add("rhs", e.rhs)
                         .add("slack", e.slack)
                         .add("verdict", std::string(to_string(e.verdict)))
                         .add("note", e.note));
      }
    }
    err << "verified " << pairs.size() << " pair(s): " << counts[0] << " pass, " << counts[1]
        << " fail, " << counts[2] << " skipped, " << counts[3] << " erratum\n";
    return static_cast<int>(counts[static_cast<int>(Verdict::fail)] ? exit_violation : exit_ok);
  });
}

int cmd_gen(const GlobalOptions& opts, int n, int count, std::ostream& out, std::ostream& err) {
  if (n < 2) {
    err << "error: n must be >= 2\n";
    return exit_usage;
  }
  if (count < 1) {
    err << "error: count must be >= 1\n";
    return exit_usage;
  }
  return with_output(opts, out, err, [&](std::ostream& sink) {
    const int width = static_cast<int>(std::to_string(count - 1).size());
    sink << "pair_id,role";
    for (int i = 1; i <= n; ++i) sink << ",v" << i;
    sink << '\n';
    for (int k = 0; k < count; ++k) {
      std::string id = std::to_string(k);
      id = "pair-" + std::string(static_cast<std::size_t>(width) - id.size(), '0') + id;
      const auto pair = random_pair(n, splitmix64(opts.seed + static_cast<std::uint64_t>(k)));
      for (const auto& [role, dist] : {std::pair{'P', &pair.p()}, std::pair{'Q', &pair.q()}}) {
        sink << id << ',' << role;
        for (double v : dist->values()) sink << ',' << format_double(v);
        sink << '\n';
      }
    }
    return static_cast<int>(exit_ok);
  });
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Divergence measures, type-s families and inequality verification"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opts;
  std::string format = "jsonl";
  app.add_option("--input", opts.input, "Pair file (CSV or JSON); standard input if omitted");
  app.add_option("--output", opts.output, "Output file; standard output if omitted");
  app.add_flag("--renormalize", opts.renormalize, "Divide components by their sum before validation");
  app.add_option("--tolerance", opts.tolerance, "Violation tolerance for verify (absolute)");
  app.add_option("--seed", opts.seed, "Seed for gen");
  app.add_option("--format", format, "Output format")->check(CLI::IsMember({"jsonl", "csv"}));

  auto* compute = app.add_subcommand("compute", "Evaluate measures for every pair");
  std::vector<std::string> measures;
  std::vector<double> compute_s;
  compute->add_option("--measures,-m", measures, "Measure names, e.g. kl,omega:1,vajda:3")
      ->delimiter(',')
      ->required();
  compute->add_option("--s", compute_s, "s values for bare phi/omega")->delimiter(',');

  auto* sweep = app.add_subcommand("sweep", "Tabulate Omega_s and its bounds over an s grid");
  double s_min = 0.0, s_max = 0.0, s_step = 0.0;
  sweep->add_option("--s-min", s_min)->required();
  sweep->add_option("--s-max", s_max)->required();
  sweep->add_option("--s-step", s_step)->required();

  auto* verify = app.add_subcommand("verify", "Check every inequality and report slack");
  std::vector<double> verify_s{-1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
  bool corrupt = false;
  verify->add_option("--s", verify_s, "s values")->delimiter(',');
  verify->add_flag("--self-test-corrupt", corrupt, "Inflate one lhs by 1 to exercise exit code 2");

  auto* gen = app.add_subcommand("gen", "Write seeded random pairs as CSV");
  int n = 0, count = 0;
  gen->add_option("--n", n, "Dimension")->required();
  gen->add_option("--count", count, "Number of pairs")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  }
  opts.format = format == "csv" ? Format::csv : Format::jsonl;

  if (compute->parsed()) return cmd_compute(opts, measures, compute_s, out, err);
  if (sweep->parsed()) return cmd_sweep(opts, s_min, s_max, s_step, out, err);
  if (verify->parsed()) return cmd_verify(opts, verify_s, corrupt, out, err);
  return cmd_gen(opts, n, count, out, err);
}

}  // namespace unidiv::cli
