#include "divlab/commands.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <map>

#include "CLI11.hpp"

#include "divlab/channels.hpp"
#include "divlab/config.hpp"
#include "divlab/report.hpp"

namespace divlab::cli {

using inequalities::ConfigError;
using inequalities::SweepConfig;

namespace {

struct FlagKey {
  const char* flag;
  const char* key;
  const char* help;
};

constexpr FlagKey kModelFlags[] = {
    {"--gamma0", "gamma0", "Coupling strength of the target dynamics"},
    {"--lambda", "lambda", "Spectral width of the reservoir"},
    {"--tau", "tau", "Interval length"},
};

constexpr FlagKey kGridFlags[] = {
    {"--t-min", "t_min", "First grid time"},
    {"--t-max", "t_max", "Last grid time"},
    {"--dt", "dt", "Grid spacing"},
};

constexpr FlagKey kOptFlags[] = {
    {"--family-min", "family_min", "Smallest free gamma0"},
    {"--family-max", "family_max", "Largest free gamma0"},
    {"--family-n", "family_n", "Free family size"},
    {"--grid-theta", "grid_theta", "Polar grid nodes"},
    {"--grid-phi", "grid_phi", "Azimuthal grid nodes"},
    {"--grid-r", "grid_r", "Radial grid nodes"},
    {"--tol", "tol", "Optimizer tolerance"},
    {"--seed", "seed", "Restart seed"},
};

// Flag values kept as strings and applied after the config file.
struct Overrides {
  std::string config_path;
  std::string family;
  std::map<std::string, std::string> values;
  std::map<std::string, CLI::Option*> options;
  CLI::Option* family_option = nullptr;

  void add(CLI::App& app, std::span<const FlagKey> flags) {
    for (const FlagKey& f : flags) options[f.key] = app.add_option(f.flag, values[f.key], f.help);
  }

  void add_common(CLI::App& app) {
    app.add_option("--config", config_path, "key=value configuration file");
    add(app, kModelFlags);
    add(app, kOptFlags);
    family_option = app.add_option("--family", family, "Free family as min:max:n");
  }

  SweepConfig resolve() const {
    SweepConfig cfg;
    if (!config_path.empty()) cli::apply(read_key_values_file(config_path), cfg);
    KeyValues flags;
    for (const auto& [key, opt] : options) {
      if (opt->count() > 0) flags[key] = values.at(key);
    }
    if (family_option && family_option->count() > 0) {
      if (flags.contains("family_min") || flags.contains("family_max") ||
          flags.contains("family_n")) {
        throw ConfigError("--family conflicts with --family-min/--family-max/--family-n");
      }
      cfg.family = parse_family(family);
    }
    cli::apply(flags, cfg);
    return cfg;
  }
};

void require_positive_scalar(double x, const char* name) {
  if (!(x > 0.0) || !std::isfinite(x)) throw ConfigError(std::string(name) + " must be > 0");
}

nlohmann::json config_json(const SweepConfig& cfg) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [key, value] : to_key_values(cfg)) j[key] = value;
  j["threads"] = cfg.threads;
  return j;
}

int cmd_sweep(SweepConfig cfg, std::ostream& out) {
  cfg.validate();
  const auto start = std::chrono::steady_clock::now();
  const std::vector<inequalities::VerdictRecord> records = inequalities::sweep(cfg);
  const inequalities::Summary summary = inequalities::verify(records);

  namespace fs = std::filesystem;
  const fs::path dir(cfg.out_dir);
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create output directory " + dir.string() + ": " + ec.message());

  const fs::path csv = dir / "sweep.csv";
  const fs::path summary_path = dir / "summary.json";
  write_file(csv, render_csv(records));
  write_file(summary_path, summary_json(summary).dump(2) + "\n");

  RunManifest manifest;
  manifest.config = config_json(cfg);
  manifest.version = kVersion;
  manifest.duration_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  manifest.records = records.size();
  manifest.singular = static_cast<std::size_t>(std::count_if(
      records.begin(), records.end(), [](const auto& r) { return r.m.singular; }));
  for (const fs::path& p : {csv, summary_path}) {
    manifest.digests.emplace_back(p.filename().string(), sha256_hex(read_file(p)));
  }
  write_file(dir / "manifest.json", manifest.to_json().dump(2) + "\n");

  auto line = [&](const char* name, const inequalities::Tally& t) {
    out << name << ": pass=" << t.pass << " fail=" << t.fail << " singular=" << t.singular;
    if (t.worst_margin) {
      out << " worst_margin=" << format_number(*t.worst_margin)
          << " at t=" << format_number(*t.worst_t);
    }
    out << '\n';
  };
  out << "records: " << summary.records << '\n';
  line("ok_p", summary.p);
  line("ok_p_strict", summary.p_strict);
  line("ok_cp", summary.cp);
  out << "wrote " << csv.string() << '\n';
  return summary.all_pass() ? kExitOk : kExitInequalityFailure;
}

int cmd_probe(const SweepConfig& cfg, double t, std::ostream& out) {
  cfg.validate();
  if (!(t >= 0.0) || !std::isfinite(t)) throw ConfigError("t must be >= 0");
  const measures::MeasureRecord m =
      measures::evaluate(cfg.params(), cfg.make_family(), t, cfg.tau, cfg.opt);
  out << record_json(inequalities::judge(m)).dump(2) << '\n';
  return kExitOk;
}

int cmd_gamma(const SweepConfig& cfg, std::ostream& out) {
  require_positive_scalar(cfg.gamma0, "gamma0");
  require_positive_scalar(cfg.lambda, "lambda");
  require_positive_scalar(cfg.dt, "dt");
  if (!(cfg.t_min >= 0.0) || !(cfg.t_max >= cfg.t_min) || !std::isfinite(cfg.t_max)) {
    throw ConfigError("need 0 <= t_min <= t_max");
  }
  const channels::JCParams p = cfg.params();
  out << "t,gamma,G\n";
  for (double t : cfg.grid()) {
    const double G = channels::decay_amplitude(t, p);
    std::string gamma;
    if (std::abs(G) >= channels::kSingularityFloor) {
      try {
        gamma = format_number(channels::decay_rate(t, p));
      } catch (const channels::SingularityError&) {
      }
    }
    out << format_number(t) << ',' << gamma << ',' << format_number(G) << '\n';
  }
  return kExitOk;
}

std::string one_line(std::string s) {
  std::replace(s.begin(), s.end(), '\n', ' ');
  return s;
}

}  // namespace

std::optional<int> threads_from_env(const char* value) {
  if (value == nullptr) return std::nullopt;
  const long long n = parse_integer("DIVLAB_THREADS", value);
  if (n < 1 || n > 4096) throw ConfigError("DIVLAB_THREADS must be a positive integer");
  return static_cast<int>(n);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Indivisibility and channel-resource measures for qubit dynamics", "divlab"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  Overrides sweep_flags;
  CLI::App* sweep = app.add_subcommand("sweep", "Evaluate every metric on a time grid");
  sweep_flags.add_common(*sweep);
  sweep_flags.add(*sweep, kGridFlags);
  sweep->add_option("--out-dir", sweep_flags.values["out_dir"], "Output directory");
  sweep_flags.options["out_dir"] = sweep->get_option("--out-dir");

  Overrides probe_flags;
  double probe_t = 0.0;
  CLI::App* probe = app.add_subcommand("probe", "Evaluate every metric at one time");
  probe_flags.add_common(*probe);
  probe->add_option("--t", probe_t, "Interval start")->required();

  Overrides gamma_flags;
  CLI::App* gamma = app.add_subcommand("gamma", "Tabulate the decay rate and amplitude");
  gamma_flags.add(*gamma, kModelFlags);
  gamma_flags.add(*gamma, kGridFlags);
  gamma->add_option("--config", gamma_flags.config_path, "key=value configuration file");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
      return kExitOk;
    }
    err << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  }

  try {
    const std::optional<int> threads = threads_from_env(std::getenv("DIVLAB_THREADS"));
    if (sweep->parsed()) {
      SweepConfig cfg = sweep_flags.resolve();
      if (threads) cfg.threads = *threads;
      return cmd_sweep(cfg, out);
    }
    if (probe->parsed()) return cmd_probe(probe_flags.resolve(), probe_t, out);
    return cmd_gamma(gamma_flags.resolve(), out);
  } catch (const IoError& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << one_line(e.what()) << '\n';
    return kExitIo;
  }
}

}  // namespace divlab::cli
