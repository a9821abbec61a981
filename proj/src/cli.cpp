#include "eprlab/cli.hpp"

#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "eprlab/adversary.hpp"
#include "eprlab/analytics.hpp"
#include "eprlab/bell.hpp"
#include "eprlab/harness.hpp"
#include "eprlab/json_io.hpp"
#include "eprlab/protocols.hpp"
#include "eprlab/report.hpp"
#include "eprlab/verify.hpp"

namespace eprlab {

namespace {

namespace fs = std::filesystem;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct CampaignFlags {
  std::string config_path;
  std::string protocol;
  std::size_t blocks = 0;
  double f = 0.0;
  double compare_fraction = 0.0;
  std::size_t n_qubits = 0;
  std::uint64_t seed = 0;
  bool entropy = false;
  std::string out_dir = "out";
  std::string format = "text";
  CLI::Option* protocol_opt = nullptr;
  CLI::Option* blocks_opt = nullptr;
  CLI::Option* f_opt = nullptr;
  CLI::Option* compare_opt = nullptr;
  CLI::Option* n_qubits_opt = nullptr;
  CLI::Option* seed_opt = nullptr;
};

void add_campaign_flags(CLI::App* cmd, CampaignFlags& flags) {
  cmd->add_option("--config", flags.config_path, "JSON campaign file")->check(CLI::ExistingFile);
  flags.protocol_opt = cmd->add_option("--protocol", flags.protocol, "p1 | p2 | bb84 | pop")
                           ->check(CLI::IsMember({"p1", "p2", "bb84", "pop"}));
  flags.blocks_opt = cmd->add_option("--blocks", flags.blocks, "blocks, pairs or sequences");
  flags.f_opt = cmd->add_option("--f", flags.f, "attack fraction in [0,1]");
  flags.compare_opt =
      cmd->add_option("--compare-fraction", flags.compare_fraction, "share compared publicly");
  flags.n_qubits_opt = cmd->add_option("--n-qubits", flags.n_qubits, "pop sequence length N");
  flags.seed_opt = cmd->add_option("--seed", flags.seed, "master seed");
  cmd->add_flag("--entropy", flags.entropy, "seed from the system entropy source");
  cmd->add_option("--out", flags.out_dir, "output directory")->capture_default_str();
}

nlohmann::json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError(path + ": " + e.what());
  }
}

CampaignConfig resolve_campaign(const CampaignFlags& flags) {
  nlohmann::json base = nlohmann::json::object();
  if (!flags.config_path.empty()) base = read_json_file(flags.config_path);
  if (*flags.protocol_opt) base["protocol"] = flags.protocol;
  if (*flags.blocks_opt) base["n_blocks"] = flags.blocks;
  if (*flags.f_opt) base["f"] = flags.f;
  if (*flags.compare_opt) base["compare_fraction"] = flags.compare_fraction;
  if (*flags.n_qubits_opt) base["n_qubits"] = flags.n_qubits;
  if (*flags.seed_opt) {
    base["seed"] = flags.seed;
  } else if (flags.entropy) {
    std::random_device rd;
    base["seed"] = (std::uint64_t{rd()} << 32) | rd();
  } else if (!base.contains("seed")) {
    throw UsageError("randomized commands need --seed (or --entropy)");
  }
  try {
    return CampaignConfig::from_json(base);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
}

void write_file(const fs::path& path, const std::string& content) {
  fs::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write " + path.string());
  out << content;
}

// --- decompose --------------------------------------------------------------

int cmd_decompose(std::ostream& out, const std::string& first, const std::string& second,
                  const std::string& from, const std::string& to, bool all,
                  const std::string& format) {
  std::vector<std::pair<LabelPair, std::pair<Pairing, Pairing>>> jobs;
  if (all) {
    for (unsigned i = 0; i < 16; ++i) {
      jobs.push_back({LabelPair::from_index(i), {Pairing::Sequential, Pairing::Crossed}});
    }
  } else {
    const auto a = parse_label(first);
    const auto b = parse_label(second);
    const auto p = parse_pairing(from);
    const auto q = parse_pairing(to);
    if (!a || !b || !p || !q) throw UsageError("decompose: need valid --first/--second/--from/--to");
    jobs.push_back({LabelPair{*a, *b}, {*p, *q}});
  }
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& [labels, layouts] : jobs) {
      arr.push_back(to_json(labels, layouts.first,
                            swap_decompose(labels, layouts.first, layouts.second)));
    }
    out << (all ? arr : arr.front()).dump(2) << '\n';
    return kOk;
  }
  for (const auto& [labels, layouts] : jobs) {
    const Decomposition d = swap_decompose(labels, layouts.first, layouts.second);
    out << to_string(labels, layouts.first) << " =\n";
    for (const auto& t : d.terms) {
      out << "    " << (t.coefficient > Exact(0) ? "+" : "") << to_string(t.coefficient) << "  "
          << to_string(t.labels, d.pairing) << '\n';
    }
  }
  return kOk;
}

// --- verify -----------------------------------------------------------------

int cmd_verify(std::ostream& out, const std::string& format) {
  const auto results = run_verification();
  bool ok = true;
  for (const auto& r : results) ok &= r.passed;
  if (format == "json") {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& r : results) {
      arr.push_back({{"name", r.name}, {"passed", r.passed}, {"detail", r.detail}});
    }
    out << nlohmann::ordered_json{{"passed", ok}, {"checks", arr}}.dump(2) << '\n';
  } else {
    print_verification(out, results);
  }
  return ok ? kOk : kCheckFailed;
}

// --- simulate ---------------------------------------------------------------

std::string summarize(const AttackReport& r) {
  std::ostringstream os;
  os << "protocol " << protocol_name(r.config.protocol) << ", " << r.blocks << " blocks, f = "
     << r.config.f << ", seed " << r.config.seed << '\n';
  os << "attacked " << r.attacked << ", compared " << r.compared << ", detections "
     << r.detection_events << ", key " << r.key_bits << " bits with " << r.key_mismatches
     << " mismatches\n";
  const auto line = [&](const char* name, const Estimate& e) {
    os << name << ": " << e.value << " [" << e.ci_lo << ", " << e.ci_hi << "] n=" << e.trials;
    if (e.analytic) os << " analytic " << *e.analytic << " " << e.verdict();
    os << '\n';
  };
  line("detection_rate", r.detection_rate);
  line("eve_accuracy", r.eve_accuracy);
  line("qber", r.qber);
  if (r.config.protocol == ProtocolKind::P2) {
    os << "I(A:E) plug-in " << r.i_ae_empirical.raw_bits_per_block << " bits/block, "
       << r.i_ae_empirical.per_bit << " per bit; 5f/8 = " << r.i_ae_analytic.value_or(0.0) << '\n';
  }
  os << "claimed 15/16: " << (r.claimed_refuted() ? "REFUTED" : "NOT_REFUTED") << '\n';
  return os.str();
}

int cmd_simulate(std::ostream& out, const CampaignFlags& flags, bool transcripts) {
  const CampaignConfig cfg = resolve_campaign(flags);
  const AttackReport report = run_campaign(cfg);
  const std::string json = to_json(report).dump(2) + "\n";
  const fs::path dir(flags.out_dir);
  write_file(dir / "report.json", json);
  if (transcripts) {
    if (cfg.protocol != ProtocolKind::P2) {
      throw UsageError("--transcripts is available for protocol p2");
    }
    Rng key_rng(derive_seed(cfg.seed, "key"));
    const Key key = random_key(4 * cfg.n_blocks, key_rng);
    const MeasureResendAttack eve(
        AttackConfig{cfg.f, GuessPolicy::Uniform, derive_seed(cfg.seed, "eve")}, cfg.n_blocks);
    const auto run = protocol2_run(
        key, Protocol2Options{derive_seed(cfg.seed, "protocol"), cfg.compare_fraction}, &eve);
    std::ostringstream lines;
    write_jsonl(lines, run.transcripts);
    write_file(dir / "transcripts.jsonl", lines.str());
  }
  out << (flags.format == "json" ? json : summarize(report));
  return kOk;
}

// --- sweep ------------------------------------------------------------------

int cmd_sweep(std::ostream& out, const CampaignFlags& flags, const std::vector<double>& f_grid,
              const std::vector<double>& n_grid) {
  CampaignConfig cfg = resolve_campaign(flags);
  if (!f_grid.empty() && !n_grid.empty()) throw UsageError("sweep: give one of --f-grid, --n-grid");
  if (!f_grid.empty()) cfg.sweep = SweepSpec{SweepSpec::Param::F, f_grid};
  if (!n_grid.empty()) cfg.sweep = SweepSpec{SweepSpec::Param::N, n_grid};
  if (!cfg.sweep || cfg.sweep->values.empty()) throw UsageError("sweep: empty grid");
  std::vector<SweepRow> rows;
  try {
    rows = sweep(cfg);
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  }
  const std::string csv = sweep_csv(rows);
  write_file(fs::path(flags.out_dir) / "sweep.csv", csv);
  out << csv;
  return kOk;
}

// --- analyze ----------------------------------------------------------------

int cmd_analyze(std::ostream& out, std::size_t points, const std::string& out_dir,
                const std::string& format) {
  namespace an = analytics;
  std::ostringstream csv;
  csv << "f,i_ab,i_ae,margin\n";
  char buf[128];
  for (const auto& p : an::security_curve(points)) {
    std::snprintf(buf, sizeof buf, "%.6f,%.9f,%.9f,%.9f\n", p.f, p.i_ab, p.i_ae, p.margin);
    csv << buf;
  }
  const auto t = an::security_threshold();
  nlohmann::ordered_json constants = nlohmann::ordered_json::object();
  for (const auto& row : an::reference_constants()) constants[row.key] = row.e_max;
  nlohmann::ordered_json summary{{"f_star", t.f_star},
                                 {"e_max", t.e_max},
                                 {"eve_ignorance_bits", an::eve_ignorance_bits()},
                                 {"eve_success_probability", 5.0 / 8.0},
                                 {"detection_probability", 3.0 / 8.0},
                                 {"reference_constants", constants}};
  const fs::path dir(out_dir);
  write_file(dir / "curve.csv", csv.str());
  write_file(dir / "threshold.json", summary.dump(2) + "\n");
  if (format == "csv") {
    out << csv.str();
  } else if (format == "json") {
    out << summary.dump(2) << '\n';
  } else {
    out << "f* = " << t.f_star << ", e_max = " << t.e_max << " (" << 100.0 * t.e_max << "%)\n"
        << "Eve's residual entropy = " << an::eve_ignorance_bits() << " bits\n";
  }
  return kOk;
}

// --- report -----------------------------------------------------------------

int cmd_report(std::ostream& out, const std::string& campaign_path, const std::string& out_dir) {
  if (!fs::exists(campaign_path)) {
    throw UsageError("campaign file not found: " + campaign_path + " (run `simulate` first)");
  }
  const std::string md = render_markdown_report(read_json_file(campaign_path));
  write_file(fs::path(out_dir) / "report.md", md);
  out << md;
  return kOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Simulation and analysis of EPR-pair key distribution under measure-resend attack",
               "eprlab"};
  app.require_subcommand(1);

  std::string first, second, from = "seq", to = "crossed", dformat = "text";
  bool all = false;
  auto* decompose = app.add_subcommand("decompose", "regroup two Bell pairs into the other layout");
  const std::vector<std::string> labels{"phi+", "phi-", "psi+", "psi-"};
  decompose->add_option("--first", first, "label of the first pair")->check(CLI::IsMember(labels));
  decompose->add_option("--second", second, "label of the second pair")->check(CLI::IsMember(labels));
  decompose->add_option("--from", from, "seq | crossed")->check(CLI::IsMember({"seq", "crossed"}));
  decompose->add_option("--to", to, "seq | crossed")->check(CLI::IsMember({"seq", "crossed"}));
  decompose->add_flag("--all", all, "all 16 sequential -> crossed regroupings");
  decompose->add_option("--format", dformat)->check(CLI::IsMember({"text", "json"}));

  std::string vformat = "text";
  auto* verify = app.add_subcommand("verify", "check the regrouping table against the state-vector oracle");
  verify->add_option("--format", vformat)->check(CLI::IsMember({"text", "json"}));

  CampaignFlags sim_flags;
  bool transcripts = false;
  auto* simulate = app.add_subcommand("simulate", "run one Monte Carlo campaign");
  add_campaign_flags(simulate, sim_flags);
  simulate->add_flag("--transcripts", transcripts, "also write transcripts.jsonl (p2)");
  simulate->add_option("--format", sim_flags.format)->check(CLI::IsMember({"text", "json"}));

  CampaignFlags sweep_flags;
  std::vector<double> f_grid, n_grid;
  auto* sweep_cmd = app.add_subcommand("sweep", "run a campaign per grid point, write sweep.csv");
  add_campaign_flags(sweep_cmd, sweep_flags);
  sweep_cmd->add_option("--f-grid", f_grid, "comma separated f values")->delimiter(',');
  sweep_cmd->add_option("--n-grid", n_grid, "comma separated N values (pop)")->delimiter(',');

  std::size_t points = 101;
  std::string analyze_out = "out", aformat = "text";
  auto* analyze = app.add_subcommand("analyze", "security curve, threshold and reference constants");
  analyze->add_option("--points", points, "curve samples over [0,1]")->check(CLI::Range(2, 1000000));
  analyze->add_option("--out", analyze_out, "output directory")->capture_default_str();
  analyze->add_option("--format", aformat)->check(CLI::IsMember({"text", "csv", "json"}));

  std::string campaign_path = "out/report.json", report_out = "out";
  auto* report = app.add_subcommand("report", "markdown comparison from a campaign report");
  report->add_option("--campaign", campaign_path, "report.json written by simulate")->capture_default_str();
  report->add_option("--out", report_out, "output directory")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*decompose) {
      if (!all && (first.empty() || second.empty())) {
        throw UsageError("decompose: give --first and --second, or --all");
      }
      return cmd_decompose(out, first, second, from, to, all, dformat);
    }
    if (*verify) return cmd_verify(out, vformat);
    if (*simulate) return cmd_simulate(out, sim_flags, transcripts);
    if (*sweep_cmd) return cmd_sweep(out, sweep_flags, f_grid, n_grid);
    if (*analyze) return cmd_analyze(out, points, analyze_out, aformat);
    if (*report) return cmd_report(out, campaign_path, report_out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}

}  // namespace eprlab
