// Command-line front end: verification suites and parameter scans.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "sqflab/report.hpp"

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, sep)) out.push_back(item);
  return out;
}

int usage_error(const std::string& msg) {
  std::cerr << "sqflab: " << msg << '\n';
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Squarefree numbers in arithmetic progressions: checks and scans"};
  app.require_subcommand(1);

  std::string precision_text = "1e-12";
  app.add_option("--precision", precision_text, "target accuracy of real constants");

  auto* verify = app.add_subcommand("verify", "run a verification suite");
  std::string suite_name = "all";
  std::uint64_t seed = 1;
  std::string format = "csv";
  std::string out_path;
  verify->add_option("--suite", suite_name, "identities, expsums, asymptotics or all");
  verify->add_option("--seed", seed, "seed for sampled parameters");
  verify->add_option("--format", format, "csv or json");
  verify->add_option("--out", out_path, "output file (default stdout)");

  auto* scan = app.add_subcommand("scan", "tabulate a statistic over moduli");
  std::string kind_name = "variance";
  std::uint64_t X = 0;
  std::string q_text, q_exp_text;
  long long m = 1;
  unsigned threads = 0;
  scan->add_option("--kind", kind_name, "variance, correlation, croft or hooley");
  scan->add_option("--x", X, "upper bound X")->required();
  scan->add_option("--q", q_text, "comma separated moduli");
  scan->add_option("--q-exp", q_exp_text, "lo:hi:n, moduli round(X^theta)");
  scan->add_option("--m", m, "multiplier for correlation scans");
  scan->add_option("--threads", threads, "worker threads");
  scan->add_option("--format", format, "csv or json");
  scan->add_option("--out", out_path, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);
    app.exit(e);
    return 2;
  }

  sqflab::Real eps = 0;
  try {
    eps = std::stold(precision_text);
  } catch (...) {
    return usage_error("bad --precision");
  }
  if (!(eps > 0)) return usage_error("--precision must be positive");
  if (format != "csv" && format != "json") return usage_error("unknown format " + format);

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path);
    if (!file) return usage_error("cannot open " + out_path);
  }
  std::ostream& os = out_path.empty() ? std::cout : file;

  try {
    if (verify->parsed()) {
      const auto suite = sqflab::parse_suite(suite_name);
      if (!suite) return usage_error("unknown suite " + suite_name);
      const auto records = sqflab::run_verify(*suite, seed, eps);
      if (format == "csv")
        sqflab::write_csv(os, records);
      else
        sqflab::write_json(os, records);
      std::size_t failed = 0;
      for (const auto& r : records)
        if (!r.pass) {
          ++failed;
          std::cerr << "FAIL " << r.check_id << ' ' << sqflab::format_params(r.params) << '\n';
        }
      std::cerr << records.size() << " records, " << failed << " failed\n";
      return failed == 0 ? 0 : 1;
    }

    const auto kind = sqflab::parse_scan_kind(kind_name);
    if (!kind) return usage_error("unknown scan kind " + kind_name);
    sqflab::ScanRequest req;
    req.kind = *kind;
    req.X = X;
    req.m = m;
    req.eps = eps;
    req.threads = threads;
    if (!q_text.empty())
      for (const auto& t : split(q_text, ',')) req.q_values.push_back(std::stoull(t));
    if (!q_exp_text.empty()) {
      const auto parts = split(q_exp_text, ':');
      if (parts.size() != 3) return usage_error("--q-exp expects lo:hi:n");
      const auto qs = sqflab::q_exponent_range(X, std::stold(parts[0]), std::stold(parts[1]),
                                               static_cast<unsigned>(std::stoul(parts[2])));
      req.q_values.insert(req.q_values.end(), qs.begin(), qs.end());
    }
    if (req.q_values.empty()) return usage_error("scan needs --q or --q-exp");
    const auto table = sqflab::run_scan(req);
    for (const auto& w : table.warnings) std::cerr << "warning: " << w << '\n';
    if (format == "csv")
      sqflab::write_csv(os, table);
    else
      sqflab::write_json(os, table);
    return 0;
  } catch (const std::invalid_argument& e) {
    return usage_error(e.what());
  } catch (const std::exception& e) {
    std::cerr << "sqflab: " << e.what() << '\n';
    return 1;
  }
}
