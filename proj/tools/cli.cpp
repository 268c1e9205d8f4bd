#include "cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>

#include <CLI11.hpp>

#include "lucaskit/census.hpp"
#include "lucaskit/harmonic.hpp"
#include "lucaskit/lucas.hpp"
#include "lucaskit/modarith.hpp"
#include "lucaskit/render.hpp"

namespace lucaskit::cli {

namespace {

constexpr std::uint64_t kMinOracleLimit = 1000;

struct CliConfig {
  std::uint64_t oracle_limit = kDefaultOracleLimit;
  unsigned workers = 1;
  std::string census_out;
};

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

std::uint64_t parse_u64(const std::string& text, const std::string& what) {
  try {
    std::size_t used = 0;
    const std::uint64_t v = std::stoull(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(what + ": not a nonnegative integer: " + text);
  }
}

void load_config(const std::string& path, CliConfig& cfg) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (trim(line).empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) +
                                  ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "oracle_limit")
      cfg.oracle_limit = parse_u64(value, "config: oracle_limit");
    else if (key == "workers")
      cfg.workers = static_cast<unsigned>(parse_u64(value, "config: workers"));
    else if (key == "census_out")
      cfg.census_out = value;
    else
      throw std::invalid_argument("config: unknown key: " + key);
  }
}

// flags > environment > config file > built-in default
void apply_environment(CliConfig& cfg) {
  if (const char* env = std::getenv("LUCASKIT_ORACLE_LIMIT"))
    cfg.oracle_limit = parse_u64(env, "LUCASKIT_ORACLE_LIMIT");
}

int with_output(const std::string& path, std::ostream& out, std::ostream& err,
                const std::function<int(std::ostream&)>& body) {
  if (path.empty()) return body(out);
  std::ofstream file(path);
  if (!file) {
    err << "error: cannot open for writing: " << path << "\n";
    return 1;
  }
  return body(file);
}

void print_pairs(std::ostream& out, const std::vector<DigitPair>& pairs) {
  for (const auto& q : pairs) out << q.r << " " << q.s << "\n";
}

std::string pair_list(const std::vector<DigitPair>& pairs) {
  std::string text;
  for (const auto& q : pairs) {
    if (!text.empty()) text += " ";
    text += "(" + std::to_string(q.r) + "," + std::to_string(q.s) + ")";
  }
  return text.empty() ? "(none)" : text;
}

DSet compute_dset(std::uint64_t p, DsetMethod method, std::uint64_t oracle_limit) {
  switch (method) {
    case DsetMethod::harmonic: return dset_harmonic(p);
    case DsetMethod::rotation: return dset_rotation(p);
    case DsetMethod::bruteforce: return dset_bruteforce(p, 2, 2, oracle_limit);
  }
  throw std::logic_error("unreachable");
}

int run_dset(std::uint64_t p, const std::string& method, bool verify, const CliConfig& cfg,
             std::ostream& out, std::ostream& err) {
  const DsetMethod chosen = dset_method_from_string(method);
  if (verify) {
    const DSet h = dset_harmonic(p);
    const DSet r = dset_rotation(p);
    const DSet b = dset_bruteforce(p, 2, 2, cfg.oracle_limit);
    if (h.pairs != r.pairs || h.pairs != b.pairs) {
      err << "methods disagree at p = " << p << ":\n"
          << "  harmonic:   " << pair_list(h.pairs) << "\n"
          << "  rotation:   " << pair_list(r.pairs) << "\n"
          << "  bruteforce: " << pair_list(b.pairs) << "\n";
      return 2;
    }
  }
  print_pairs(out, compute_dset(p, chosen, cfg.oracle_limit).pairs);
  return 0;
}

int run_census_cmd(const CensusOptions& base, const std::string& out_path, bool resume,
                   const std::string& csv_path, std::ostream& out, std::ostream& err) {
  CensusOptions opts = base;
  if (resume) {
    if (out_path.empty()) {
      err << "error: --resume requires --out\n";
      return 1;
    }
    if (std::filesystem::exists(out_path))
      for (const auto& rec : read_records(out_path)) opts.skip_primes.push_back(rec.p);
  }

  std::vector<CensusRecord> collected;
  const bool want_csv = !csv_path.empty();
  const auto scan = [&](std::ostream& sink_stream) {
    run_census(opts, [&](const CensusRecord& rec) {
      write_record_line(sink_stream, rec);
      if (want_csv) collected.push_back(rec);
    });
    return 0;
  };

  int rc;
  if (out_path.empty()) {
    rc = scan(out);
  } else {
    std::ofstream file(out_path, resume ? std::ios::app : std::ios::trunc);
    if (!file) {
      err << "error: cannot open for writing: " << out_path << "\n";
      return 1;
    }
    rc = scan(file);
  }
  if (rc == 0 && want_csv) write_summary_csv(collected, csv_path);
  return rc;
}

int run_wieferich(std::uint64_t max, std::ostream& out, std::ostream& err) {
  bool disagree = false;
  for (std::uint64_t p : sieve_primes(max)) {
    if (p < 3) continue;
    const bool by_power = is_wieferich(p);
    const bool by_harmonic = wieferich_via_harmonic(p);
    if (by_power != by_harmonic) {
      err << "wieferich criteria disagree at p = " << p << "\n";
      disagree = true;
    }
    if (by_power) out << p << "\n";
  }
  return disagree ? 2 : 0;
}

int run_verify(std::uint64_t p, int alpha, std::uint64_t a_max, std::uint64_t b_max,
               const CliConfig& cfg, std::ostream& out, std::ostream& err) {
  out << "p = " << p << "\n";
  bool all_ok = true;

  if (alpha == 3) {
    const auto pairs = dset_mod_p3(p, a_max, b_max, cfg.oracle_limit);
    out << "mod p^3 scan (a,b <= " << a_max << "): " << pair_list(pairs) << "\n";
    const std::vector<DigitPair> corners{{0, 0}, {p - 1, 0}, {p - 1, p - 1}};
    if (pairs == corners) {
      out << "corner set: pass\n";
    } else {
      all_ok = false;
      for (const auto& q : pairs)
        if (std::find(corners.begin(), corners.end(), q) == corners.end())
          out << "corner set: FINDING: unexpected pair (" << q.r << "," << q.s << ")\n";
      for (const auto& q : corners)
        if (std::find(pairs.begin(), pairs.end(), q) == pairs.end())
          out << "corner set: FAIL: missing pair (" << q.r << "," << q.s << ")\n";
    }
  } else {
    std::size_t checks = 0;
    bool general_ok = true;
    for (std::uint64_t a = 0; a <= a_max; ++a)
      for (std::uint64_t b = 0; b <= b_max; ++b)
        for (std::uint64_t r = 0; r < p; ++r)
          for (std::uint64_t s = 0; s <= r; ++s) {
            ++checks;
            if (!check_general_congruence(p, a, b, r, s, cfg.oracle_limit)) {
              general_ok = false;
              out << "general congruence FAIL at (a,b,r,s) = (" << a << "," << b << "," << r
                  << "," << s << ")\n";
            }
          }
    out << "general congruence (a,b <= " << a_max << "): " << (general_ok ? "pass" : "FAIL")
        << " [" << checks << " checks]\n";

    bool rot2_ok = true, rot1_ok = true;
    std::size_t pair_count = 0;
    for (std::uint64_t r = 0; r < p; ++r)
      for (std::uint64_t s = 0; s <= r; ++s) {
        ++pair_count;
        rot2_ok = check_rotation_identity(p, r, s) && rot2_ok;
        rot1_ok = check_rotation_mod_p(p, r, s) && rot1_ok;
      }
    out << "rotation identity mod p^2: " << (rot2_ok ? "pass" : "FAIL") << " [" << pair_count
        << " pairs]\n";
    out << "rotation congruence mod p: " << (rot1_ok ? "pass" : "FAIL") << " [" << pair_count
        << " pairs]\n";
    all_ok = all_ok && general_ok && rot2_ok && rot1_ok;
  }

  const ClassicalReport report = classical_report(p, cfg.oracle_limit);
  const auto line = [&](const char* name, const std::optional<bool>& field,
                        std::uint64_t min_p) {
    out << name << ": "
        << (field.has_value() ? std::string(*field ? "pass" : "FAIL")
                              : "skip (requires p >= " + std::to_string(min_p) + ")")
        << "\n";
  };
  line("babbage", report.babbage, 3);
  line("wolstenholme", report.wolstenholme, 5);
  line("glaisher", report.glaisher, 5);
  line("jacobsthal", report.jacobsthal, 2);
  line("morley", report.morley, 5);
  all_ok = all_ok && report.all_pass();

  out << (all_ok ? "all checks passed" : "verification failed") << "\n";
  if (!all_ok) err << "verify: some checks failed for p = " << p << "\n";
  return all_ok ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"digit-pair sets D(p) of the Lucas congruence modulo p^2"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key = value configuration file");

  auto* binom_cmd = app.add_subcommand("binom", "binomial coefficient modulo p^alpha");
  std::uint64_t binom_n = 0, binom_k = 0, binom_p = 0;
  int binom_alpha = 1;
  std::string binom_method = "factored";
  binom_cmd->add_option("N", binom_n, "row index")->required();
  binom_cmd->add_option("K", binom_k, "column index")->required();
  binom_cmd->add_option("--prime", binom_p, "prime base")->required();
  binom_cmd->add_option("--alpha", binom_alpha, "modulus exponent")->check(CLI::Range(1, 3));
  binom_cmd->add_option("--method", binom_method, "pascal | factored")
      ->check(CLI::IsMember({"pascal", "factored"}));

  auto* harmonic_cmd = app.add_subcommand("harmonic", "harmonic numbers mod p");
  std::uint64_t harmonic_p = 0;
  std::int64_t harmonic_n = -1;
  harmonic_cmd->add_option("P", harmonic_p, "prime")->required();
  harmonic_cmd->add_option("N", harmonic_n, "index (omit for the full table)");

  auto* dset_cmd = app.add_subcommand("dset", "digit pairs of D(p)");
  std::uint64_t dset_p = 0;
  std::string dset_method = "harmonic";
  bool dset_verify = false;
  dset_cmd->add_option("P", dset_p, "prime")->required();
  dset_cmd->add_option("--method", dset_method, "harmonic | rotation | bruteforce")
      ->check(CLI::IsMember({"harmonic", "rotation", "bruteforce"}));
  dset_cmd->add_flag("--verify", dset_verify, "compare all three methods");

  auto* census_cmd = app.add_subcommand("census", "scan a prime range");
  std::uint64_t census_min = 0, census_max = 0;
  std::string census_out, census_csv, census_method = "harmonic";
  unsigned census_workers = 0;
  bool census_cross = false, census_resume = false;
  census_cmd->add_option("--min", census_min, "first prime bound")->required();
  census_cmd->add_option("--max", census_max, "last prime bound")->required();
  census_cmd->add_option("--out", census_out, "JSON-lines output file");
  census_cmd->add_option("--workers", census_workers, "parallel workers");
  census_cmd->add_flag("--cross-validate", census_cross, "run all three methods per prime");
  census_cmd->add_flag("--resume", census_resume, "skip primes already in the output file");
  census_cmd->add_option("--csv", census_csv, "also write a p,size,wieferich summary");
  census_cmd->add_option("--method", census_method, "harmonic | rotation | bruteforce")
      ->check(CLI::IsMember({"harmonic", "rotation", "bruteforce"}));

  auto* wieferich_cmd = app.add_subcommand("wieferich", "Wieferich primes up to a bound");
  std::uint64_t wieferich_max = 0;
  wieferich_cmd->add_option("--max", wieferich_max, "scan bound")->required();

  auto* verify_cmd = app.add_subcommand("verify", "congruence sweeps and classical checks");
  std::uint64_t verify_p = 0, verify_amax = 0, verify_bmax = 0;
  int verify_alpha = 2;
  verify_cmd->add_option("P", verify_p, "prime")->required();
  verify_cmd->add_option("--alpha", verify_alpha, "2 | 3")->check(CLI::Range(2, 3));
  verify_cmd->add_option("--amax", verify_amax, "outer digit bound a");
  verify_cmd->add_option("--bmax", verify_bmax, "outer digit bound b");

  auto* render_cmd = app.add_subcommand("render", "triangle figure with D(p) highlighted");
  std::uint64_t render_p = 0;
  std::string render_format, render_out;
  bool render_values = false;
  render_cmd->add_option("P", render_p, "prime")->required();
  render_cmd->add_option("--format", render_format, "ascii | svg")
      ->required()
      ->check(CLI::IsMember({"ascii", "svg"}));
  render_cmd->add_option("--out", render_out, "output file");
  render_cmd->add_flag("--values", render_values, "show exact entries (p <= 67)");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  argv.push_back("lucaskit");
  for (const auto& arg : args) argv.push_back(arg.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e, out, err);
    return rc == 0 ? 0 : 1;
  }

  try {
    CliConfig cfg;
    if (!config_path.empty()) load_config(config_path, cfg);
    apply_environment(cfg);
    if (cfg.oracle_limit < kMinOracleLimit) {
      err << "error: oracle_limit must be at least " << kMinOracleLimit << "\n";
      return 1;
    }

    if (binom_cmd->parsed()) {
      const Modulus m(binom_p, binom_alpha);
      const Residue value = binom_method == "pascal"
                                ? binom_pascal(binom_n, binom_k, m, cfg.oracle_limit)
                                : binom_factored(binom_n, binom_k, m);
      out << value.value() << "\n";
      return 0;
    }
    if (harmonic_cmd->parsed()) {
      if (harmonic_n >= 0) {
        out << harmonic(harmonic_p, static_cast<std::uint64_t>(harmonic_n)) << "\n";
      } else {
        for (std::uint64_t v : harmonic_table(harmonic_p)->values) out << v << "\n";
      }
      return 0;
    }
    if (dset_cmd->parsed())
      return run_dset(dset_p, dset_method, dset_verify, cfg, out, err);
    if (census_cmd->parsed()) {
      CensusOptions opts;
      opts.p_min = census_min;
      opts.p_max = census_max;
      opts.method = dset_method_from_string(census_method);
      opts.cross_validate = census_cross;
      opts.workers = census_workers ? census_workers : cfg.workers;
      opts.oracle_limit = cfg.oracle_limit;
      const std::string out_path = census_out.empty() ? cfg.census_out : census_out;
      return run_census_cmd(opts, out_path, census_resume, census_csv, out, err);
    }
    if (wieferich_cmd->parsed()) return run_wieferich(wieferich_max, out, err);
    if (verify_cmd->parsed()) {
      const std::uint64_t default_bound = verify_alpha == 3 ? 3 : 6;
      const std::uint64_t a_max = verify_cmd->count("--amax") ? verify_amax : default_bound;
      const std::uint64_t b_max = verify_cmd->count("--bmax") ? verify_bmax : default_bound;
      return run_verify(verify_p, verify_alpha, a_max, b_max, cfg, out, err);
    }
    if (render_cmd->parsed()) {
      RenderOptions ropts;
      ropts.format = render_format == "svg" ? RenderFormat::svg : RenderFormat::ascii;
      ropts.show_values = render_values;
      const std::string text = render_triangle(render_p, dset_harmonic(render_p), ropts);
      return with_output(render_out, out, err, [&](std::ostream& sink) {
        sink << text;
        return 0;
      });
    }
  } catch (const cross_validation_error& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace lucaskit::cli
