// isi: worst-case ISI channel search, distance oracle, MLSE simulation and
// verification suite.
//
// Exit codes: 0 success, 2 invalid input, 3 verification failure.

#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"

#include "isi/distance.hpp"
#include "isi/error.hpp"
#include "isi/mlse.hpp"
#include "isi/verify.hpp"
#include "isi/worstcase.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitInput = 2;
constexpr int kExitVerify = 3;

std::string manifest_timestamp() {
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    char* end = nullptr;
    const long long secs = std::strtoll(epoch, &end, 10);
    if (end && *end == '\0') {
      const std::time_t t = static_cast<std::time_t>(secs);
      std::tm tm{};
      gmtime_r(&t, &tm);
      char buf[32];
      std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
      return buf;
    }
  }
  return ISI_BUILD_TIMESTAMP;
}

json manifest(const std::string& command, json parameters) {
  return json{{"command", command},
              {"parameters", std::move(parameters)},
              {"tool_version", ISI_VERSION},
              {"timestamp", manifest_timestamp()}};
}

void write_output(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text << std::flush;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw isi::InputError("cannot open output file " + path);
  out << text;
}

std::vector<double> parse_channel(const std::string& text, bool strict_energy) {
  std::vector<double> taps;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw isi::InputError("bad channel coefficient '" + item + "'");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw isi::InputError("bad channel coefficient '" + item + "'");
    taps.push_back(v);
  }
  if (taps.empty()) throw isi::InputError("channel needs at least one coefficient");
  const double e = isi::energy(taps);
  if (std::abs(e - 1.0) > 1e-6) {
    if (strict_energy)
      throw isi::InputError("channel energy " + std::to_string(e) + " is not 1 (--strict-energy)");
    std::cerr << "warning: channel energy " << e << " renormalized to 1\n";
  }
  return isi::ChannelTaps::normalized(taps).vector();
}

std::vector<double> parse_snr(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  try {
    while (std::getline(ss, item, ':')) parts.push_back(std::stod(item));
  } catch (const std::exception&) {
    throw isi::InputError("bad --snr '" + text + "', expected a:b:step");
  }
  if (parts.size() == 1) return parts;
  if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0])
    throw isi::InputError("bad --snr '" + text + "', expected a:b:step with step > 0, b >= a");
  std::vector<double> out;
  for (int i = 0;; ++i) {
    const double v = parts[0] + i * parts[2];
    if (v > parts[1] + 1e-9) break;
    out.push_back(v);
  }
  return out;
}

json events_json(const std::vector<isi::ErrorEvent>& events) {
  json arr = json::array();
  for (const auto& e : events) arr.push_back(e.symbols());
  return arr;
}

json report_json(const isi::WorstCaseReport& r) {
  const isi::UniquenessVerdict u = isi::uniqueness_probe(r);
  json roots = json::array();
  for (const auto& z : r.roots.roots) roots.push_back({z.real(), z.imag()});
  json j{{"L", r.L},
         {"levels", r.spec.levels},
         {"max_event_len", r.spec.max_event_len},
         {"max_zero_run", r.spec.max_zero_run},
         {"lambda_min", r.lambda_min},
         {"channel", r.channel},
         {"achieving_events", events_json(r.achieving_events)},
         {"multiplicity", r.multiplicity},
         {"relative_gap", r.relative_gap},
         {"ties", r.ties},
         {"unique", u.unique},
         {"roots", roots},
         {"root_moduli", r.roots.moduli},
         {"root_check_pass", r.roots.pass},
         {"events_scanned", r.events_scanned},
         {"prune_count", r.prune_count},
         {"eigen_solves", r.eigen_solves}};
  if (!r.warning.empty()) j["warning"] = r.warning;
  return j;
}

int default_threads() {
  if (const char* env = std::getenv("ISI_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
}

struct SearchFlags {
  int levels = 2;
  int max_event_len = 0;  // 0: default
  int max_zero_run = -1;  // -1: default
  bool no_prune = false;

  void add(CLI::App* app) {
    app->add_option("--levels", levels, "PAM levels M (error alphabet -(M-1)..M-1)")
        ->check(CLI::Range(2, 64));
    app->add_option("--max-event-len", max_event_len, "event length cap (default max(2L, 12))")
        ->check(CLI::PositiveNumber);
    app->add_option("--max-zero-run", max_zero_run, "internal zero-run cap (default max(L-2, 0))")
        ->check(CLI::NonNegativeNumber);
    app->add_flag("--no-prune", no_prune, "disable the Gershgorin prune");
  }

  isi::SweepConfig config(int threads) const {
    isi::SweepConfig c;
    c.levels = levels;
    if (max_event_len > 0) c.max_event_len = max_event_len;
    if (max_zero_run >= 0) c.max_zero_run = max_zero_run;
    c.search = {!no_prune, threads};
    return c;
  }

  json parameters() const {
    json p{{"levels", levels}};
    p["max_event_len"] = max_event_len > 0 ? json(max_event_len) : json("default");
    p["max_zero_run"] = max_zero_run >= 0 ? json(max_zero_run) : json("default");
    p["prune"] = !no_prune;
    return p;
  }
};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Worst-case minimum-distance ISI channels and MLSE validation.\n"
               "SNR is 10 log10(1/sigma^2) for unit-energy channels and unit-power binary symbols."};
  app.require_subcommand(1);
  app.fallthrough();
  int threads = default_threads();
  app.add_option("--threads", threads, "worker threads (env ISI_THREADS)")->check(CLI::PositiveNumber);
  app.set_version_flag("--version", ISI_VERSION);

  // worst
  auto* worst = app.add_subcommand("worst", "worst-case channel of length L (JSON)");
  int worst_len = 0;
  bool worst_json = false;
  SearchFlags worst_flags;
  worst->add_option("--len", worst_len, "channel length L")->required();
  worst->add_flag("--json", worst_json, "JSON output (default)");
  worst_flags.add(worst);

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "worst-case lambda_min for L = 1..L_max (CSV)");
  int len_max = 0;
  std::string sweep_csv;
  bool sweep_json = false;
  SearchFlags sweep_flags;
  sweep_cmd->add_option("--len-max", len_max, "largest L")->required();
  sweep_cmd->add_option("--csv", sweep_csv, "CSV output path ('-' for stdout, the default)");
  sweep_cmd->add_flag("--json", sweep_json, "JSON output instead of CSV");
  sweep_flags.add(sweep_cmd);

  // probe
  auto* probe = app.add_subcommand("probe", "one-tap augmentation probe of the worst length-L channel (JSON)");
  int probe_len = 0;
  double probe_grid = 0.01;
  SearchFlags probe_flags;
  probe->add_option("--len", probe_len, "channel length L")->required();
  probe->add_option("--grid", probe_grid, "scan step for the added tap, in (0, 0.5]");
  probe_flags.add(probe);

  // dmin
  auto* dmin = app.add_subcommand("dmin", "minimum distance of a given channel (JSON)");
  std::string dmin_channel;
  int dmin_levels = 2;
  int dmin_cap = 0;
  double dmin_ceiling = isi::kDefaultDistanceCeiling;
  bool strict_energy = false;
  dmin->add_option("--channel", dmin_channel, "comma-separated taps f0,f1,...")->required();
  dmin->add_option("--levels", dmin_levels, "PAM levels M")->check(CLI::Range(2, 64));
  dmin->add_option("--max-event-len", dmin_cap, "path length cap (default max(2L, 12))")
      ->check(CLI::PositiveNumber);
  dmin->add_option("--ceiling", dmin_ceiling, "search ceiling on d^2")->check(CLI::PositiveNumber);
  dmin->add_flag("--strict-energy", strict_energy, "reject channels whose energy is not 1");

  // simulate
  auto* sim = app.add_subcommand("simulate", "Viterbi MLSE bit error rate vs SNR (CSV)");
  std::string sim_channel, sim_snr, sim_csv;
  std::int64_t sim_symbols = 100000;
  std::uint64_t sim_seed = 1;
  int sim_levels = 2;
  sim->add_option("--channel", sim_channel, "comma-separated taps f0,f1,...")->required();
  sim->add_option("--snr", sim_snr, "SNR grid in dB, a:b:step (or a single value)")->required();
  sim->add_option("--symbols", sim_symbols, "symbols per SNR point")->check(CLI::PositiveNumber);
  sim->add_option("--seed", sim_seed, "base seed; point i uses seed + i");
  sim->add_option("--levels", sim_levels, "PAM levels M")->check(CLI::Range(2, 64));
  sim->add_option("--csv", sim_csv, "CSV output path ('-' for stdout, the default)");

  // verify
  auto* verify = app.add_subcommand("verify", "run the invariant suites");
  bool quick = false, full = false;
  auto* q = verify->add_flag("--quick", quick, "L <= 3 suites (default)");
  verify->add_flag("--full", full, "L <= 6 plus Monte Carlo checks")->excludes(q);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitInput;
  }

  try {
    if (*worst) {
      const auto cfg = worst_flags.config(threads);
      const auto rep = isi::worst_channel(worst_len, cfg.spec_for(worst_len), cfg.search);
      if (!rep.warning.empty()) std::cerr << "warning: " << rep.warning << '\n';
      json params = worst_flags.parameters();
      params["len"] = worst_len;
      json out{{"manifest", manifest("worst", params)}};
      out.update(report_json(rep));
      write_output("-", out.dump(2) + "\n");
      return 0;
    }

    if (*sweep_cmd) {
      const auto res = isi::sweep(len_max, sweep_flags.config(threads));
      if (sweep_json) {
        json rows = json::array();
        for (const auto& r : res.rows)
          rows.push_back({{"L", r.L},
                          {"lambda_min", r.lambda_min},
                          {"delta", r.delta_from_previous ? json(*r.delta_from_previous) : json()},
                          {"strict", r.strict ? json(*r.strict) : json()}});
        json params = sweep_flags.parameters();
        params["len_max"] = len_max;
        json out{{"manifest", manifest("sweep", params)},
                 {"non_increasing", res.non_increasing},
                 {"rows", rows}};
        write_output(sweep_csv, out.dump(2) + "\n");
      } else {
        std::string csv = "L,lambda_min,delta,strict\n";
        char line[128];
        for (const auto& r : res.rows) {
          std::snprintf(line, sizeof line, "%d,%.15g,", r.L, r.lambda_min);
          csv += line;
          if (r.delta_from_previous) {
            std::snprintf(line, sizeof line, "%.15g", *r.delta_from_previous);
            csv += line;
          }
          csv += ',';
          if (r.strict) csv += *r.strict ? "true" : "false";
          csv += '\n';
        }
        write_output(sweep_csv, csv);
      }
      if (!res.non_increasing) {
        std::cerr << "error: lambda_min increased with L\n";
        return kExitVerify;
      }
      return 0;
    }

    if (*probe) {
      const auto cfg = probe_flags.config(threads);
      const auto rep = isi::worst_channel(probe_len, cfg.spec_for(probe_len), cfg.search);
      const auto pr = isi::augmentation_probe(rep, probe_grid);
      json entries = json::array();
      for (const auto& e : pr.entries)
        entries.push_back({{"event", e.event.symbols()},
                           {"base_channel", e.base_channel},
                           {"lambda_L", e.lambda_L},
                           {"cross_term", e.cross_term},
                           {"grid_min", e.grid_min},
                           {"grid_best_tap", e.grid_best_tap},
                           {"quadratic_tap", e.quadratic_tap},
                           {"quadratic_min", e.quadratic_min},
                           {"exact_tap", e.exact_tap},
                           {"exact_min", e.exact_min},
                           {"scan_min", e.scan_min},
                           {"improves", e.improves}});
      json params = probe_flags.parameters();
      params["len"] = probe_len;
      params["grid"] = probe_grid;
      json out{{"manifest", manifest("probe", params)},
               {"L", pr.L},
               {"lambda_L", pr.lambda_L},
               {"cross_term", pr.cross_term},
               {"min_d2", pr.min_d2},
               {"improves", pr.improves},
               {"entries", entries}};
      write_output("-", out.dump(2) + "\n");
      return 0;
    }

    if (*dmin) {
      const auto taps = parse_channel(dmin_channel, strict_energy);
      const int L = static_cast<int>(taps.size());
      isi::AlphabetSpec spec = isi::AlphabetSpec::for_channel_length(L, dmin_levels);
      if (dmin_cap > 0) spec.max_event_len = dmin_cap;
      const auto res = isi::min_distance(taps, spec, dmin_ceiling);
      json params{{"channel", dmin_channel},
                  {"levels", dmin_levels},
                  {"max_event_len", spec.max_event_len},
                  {"ceiling", dmin_ceiling},
                  {"strict_energy", strict_energy}};
      json out{{"manifest", manifest("dmin", params)},
               {"channel", taps},
               {"d2_min", res.cap_hit ? json() : json(res.d2_min)},
               {"achieving_event",
                res.achieving_event ? json(res.achieving_event->symbols()) : json()},
               {"nodes_expanded", res.nodes_expanded},
               {"cap_hit", res.cap_hit}};
      write_output("-", out.dump(2) + "\n");
      return 0;
    }

    if (*sim) {
      const auto taps = isi::ChannelTaps::normalized(parse_channel(sim_channel, false));
      const auto snr = parse_snr(sim_snr);
      const auto points = isi::ber_curve(taps, snr, sim_symbols, sim_seed, sim_levels, threads);
      write_output(sim_csv, isi::ber_csv(points));
      return 0;
    }

    if (*verify) {
      const auto results = isi::run_verification(full, threads);
      std::vector<std::string> failed;
      for (const auto& r : results) {
        std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
        if (!r.pass) failed.push_back(r.name);
      }
      if (!failed.empty()) {
        std::fprintf(stderr, "failed invariants:");
        for (const auto& n : failed) std::fprintf(stderr, " %s", n.c_str());
        std::fprintf(stderr, "\n");
        return kExitVerify;
      }
      std::printf("all %zu checks passed\n", results.size());
      return 0;
    }
  } catch (const isi::InputError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const isi::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return 0;
}
