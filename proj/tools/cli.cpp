#include "cli.hpp"

#include "entswap/closedform.hpp"
#include "entswap/crosscheck.hpp"
#include "entswap/entmeasures.hpp"
#include "entswap/errors.hpp"
#include "entswap/sampling.hpp"
#include "entswap/sweep_io.hpp"
#include "entswap/sweeplab.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <ostream>

namespace entswap::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Thrown for bad flag values; maps to exit code 2 like the library's domain errors.
struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string::size_type start = 0;
  while (true) {
    const auto pos = s.find(sep, start);
    parts.push_back(trim(s.substr(start, pos - start)));
    if (pos == std::string::npos) return parts;
    start = pos + 1;
  }
}

double parse_number(const std::string& text, const std::string& flag) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double v = std::strtod(begin, &end);
  if (text.empty() || end != begin + text.size() || !std::isfinite(v)) {
    throw UsageError(flag + ": '" + text + "' is not a number");
  }
  return v;
}

std::vector<double> parse_list(const std::string& text, const std::string& flag) {
  std::vector<double> out;
  for (const std::string& part : split(text, ',')) out.push_back(parse_number(part, flag));
  return out;
}

// "(a,b,c);(d,e,f)" -> {{a,b,c},{d,e,f}}
std::vector<std::vector<double>> parse_tuples(const std::string& text, const std::string& flag, std::size_t width) {
  std::vector<std::vector<double>> out;
  for (const std::string& group : split(text, ';')) {
    if (group.size() < 2 || group.front() != '(' || group.back() != ')') {
      throw UsageError(flag + ": expected '(...)' groups separated by ';', got '" + group + "'");
    }
    std::vector<double> values = parse_list(group.substr(1, group.size() - 2), flag);
    if (values.size() != width) {
      throw UsageError(flag + ": each group needs " + std::to_string(width) + " numbers, got " +
                       std::to_string(values.size()));
    }
    out.push_back(std::move(values));
  }
  return out;
}

struct LinkFlags {
  std::string family = "werner";
  std::string p;
  std::string t;
  std::string bloch;
};

void add_link_flags(CLI::App* cmd, LinkFlags& flags) {
  cmd->add_option("--family", flags.family, "werner, bds or general")
      ->check(CLI::IsMember({"werner", "bds", "general"}));
  cmd->add_option("--p", flags.p, "Werner visibilities, comma separated");
  cmd->add_option("--t", flags.t, "Bell-diagonal triples \"(t1,t2,t3);(...)\"");
  cmd->add_option("--bloch", flags.bloch, "general links \"(r1,r2,r3,s1,s2,s3,T11,...,T33);(...)\"");
}

std::vector<LinkParams> parse_links(const LinkFlags& flags) {
  const Family family = *parse_family(flags.family);
  const std::string* given[] = {&flags.p, &flags.t, &flags.bloch};
  const char* names[] = {"--p", "--t", "--bloch"};
  const auto wanted = static_cast<std::size_t>(family);
  for (std::size_t i = 0; i < 3; ++i) {
    if (i != wanted && !given[i]->empty()) {
      throw UsageError(std::string(names[i]) + " does not apply to family " + flags.family);
    }
  }
  if (given[wanted]->empty()) {
    throw UsageError("family " + flags.family + " needs " + names[wanted]);
  }

  std::vector<LinkParams> links;
  switch (family) {
    case Family::werner:
      for (double p : parse_list(flags.p, "--p")) links.emplace_back(WernerParams{p});
      break;
    case Family::bds:
      for (const auto& v : parse_tuples(flags.t, "--t", 3)) links.emplace_back(BdsParams{v[0], v[1], v[2]});
      break;
    case Family::general:
      for (const auto& v : parse_tuples(flags.bloch, "--bloch", 15)) {
        BlochForm b;
        b.r << v[0], v[1], v[2];
        b.s << v[3], v[4], v[5];
        for (int i = 0; i < 3; ++i) {
          for (int j = 0; j < 3; ++j) b.T(i, j) = v[6 + 3 * i + j];
        }
        links.emplace_back(b);
      }
      break;
  }
  return links;
}

TwoQubitState state_of(const LinkParams& params) {
  if (const auto* w = std::get_if<WernerParams>(&params)) return make_werner(*w);
  if (const auto* b = std::get_if<BdsParams>(&params)) return make_bell_diagonal(*b);
  return make_general(std::get<BlochForm>(params));
}

ordered_json vec_json(const Vector3& v) {
  return ordered_json::array({v(0), v(1), v(2)});
}

ordered_json bloch_json(const BlochForm& b) {
  ordered_json T = ordered_json::array();
  for (int i = 0; i < 3; ++i) T.push_back(vec_json(b.T.row(i).transpose()));
  return ordered_json{{"r", vec_json(b.r)}, {"s", vec_json(b.s)}, {"T", T}};
}

SwapMode parse_swap_mode(const std::string& s) { return s == "povm" ? SwapMode::povm : SwapMode::paper; }

CorrectionFrame parse_frame(const std::string& s) {
  return s == "phi_plus" ? CorrectionFrame::phi_plus : CorrectionFrame::singlet;
}

void emit(std::ostream& out, const ordered_json& doc) { out << to_json_text(doc); }

struct SwapFlags {
  LinkFlags links;
  double eta = 1.0;
  std::string etas;
  std::string mode = "paper";
  std::string frame = "singlet";
  std::string engine = "closedform";
};

int cmd_swap(const SwapFlags& f, std::ostream& out) {
  const std::vector<LinkParams> links = parse_links(f.links);
  if (links.size() != 2) {
    throw UsageError("swap takes exactly two links, got " + std::to_string(links.size()));
  }
  ordered_json c_in = ordered_json::array();
  std::vector<TwoQubitState> states;
  for (const LinkParams& l : links) {
    states.push_back(state_of(l));
    c_in.push_back(concurrence(states.back()));
  }
  const TwoQubitState result =
      swap_with_mode(states[0], states[1], f.eta, parse_swap_mode(f.mode), parse_frame(f.frame));
  const MeasureReport r = report(result);
  ordered_json doc;
  doc["c_in"] = c_in;
  doc["c_out"] = r.concurrence;
  doc["f_out"] = r.fidelity;
  doc["final_state_bloch"] = bloch_json(pauli_decompose(result));
  emit(out, doc);
  return kOk;
}

int cmd_chain(const SwapFlags& f, std::ostream& out) {
  const std::vector<LinkParams> links = parse_links(f.links);
  if (f.etas.empty()) throw UsageError("chain needs --etas with one value per repeater");
  const NoiseModel noise{parse_list(f.etas, "--etas")};
  if (links.size() != noise.etas.size() + 1) {
    throw UsageError(std::to_string(noise.etas.size()) + " repeaters need " + std::to_string(noise.etas.size() + 1) +
                     " links, got " + std::to_string(links.size()));
  }
  const bool closed = f.engine == "closedform";
  const SwapMode mode = parse_swap_mode(f.mode);
  const CorrectionFrame frame = parse_frame(f.frame);
  if (closed && f.links.family == "general") {
    throw UsageError("engine closedform has no formulas for the general family; use --engine oracle");
  }
  if (closed && mode == SwapMode::povm) {
    throw UsageError("engine closedform implements --mode paper only; use --engine oracle");
  }

  ordered_json c_in = ordered_json::array();
  double c_out = 0.0;
  double f_out = 0.5;
  BlochForm bloch;
  if (closed && f.links.family == "werner") {
    WernerChainQuery q{{}, noise};
    for (const LinkParams& l : links) {
      q.ps.push_back(std::get<WernerParams>(l).p);
      c_in.push_back(concurrence_werner(q.ps.back()));
    }
    c_out = werner_chain_concurrence(q);
    f_out = werner_chain_fidelity(q);
    bloch.T = -werner_final_visibility(q) * Matrix3::Identity();
  } else if (closed) {
    BdsChainQuery q{{}, noise};
    for (const LinkParams& l : links) {
      q.ts.push_back(std::get<BdsParams>(l));
      c_in.push_back(concurrence_bds(q.ts.back()));
    }
    c_out = bds_chain_concurrence(q);
    f_out = bds_chain_fidelity(q);
    const BdsParams t = bds_final_correlations(q, frame);
    bloch.T.diagonal() << t.t1, t.t2, t.t3;
  } else {
    ChainSpec spec{{}, noise};
    for (const LinkParams& l : links) {
      spec.links.push_back(state_of(l));
      c_in.push_back(concurrence(spec.links.back()));
    }
    const TwoQubitState result = chain_swap(spec, mode, frame);
    const MeasureReport r = report(result);
    c_out = r.concurrence;
    f_out = r.fidelity;
    bloch = pauli_decompose(result);
  }
  ordered_json doc;
  doc["c_in"] = c_in;
  doc["c_out"] = c_out;
  doc["f_out"] = f_out;
  doc["final_state_bloch"] = bloch_json(bloch);
  emit(out, doc);
  return kOk;
}

struct ThresholdFlags {
  bool eta_star = false;
  std::optional<double> eta;
  std::optional<double> max_swaps;
  double p = 1.0;
};

int cmd_threshold(const ThresholdFlags& f, std::ostream& out, CLI::App* cmd) {
  const int chosen = int(f.eta_star) + int(f.eta.has_value()) + int(f.max_swaps.has_value());
  if (chosen != 1) throw UsageError("threshold takes exactly one of --eta-star, --eta or --max-swaps");
  if (cmd->count("--p") && !f.max_swaps) throw UsageError("--p only applies to --max-swaps");

  ordered_json doc;
  if (f.eta_star) {
    doc["eta_star"] = eta_threshold();
  } else if (f.eta) {
    const double eta = *f.eta;
    if (!(eta > 0.0 && eta <= 1.0)) throw DomainError("--eta must lie in (0, 1]");
    // One swap of Werner links stays entangled iff eta p1 p2 / (4 - 3 eta) > 1/3.
    const double needed = (4.0 - 3.0 * eta) / (3.0 * eta);
    doc["eta"] = eta;
    doc["eta_star"] = eta_threshold();
    doc["entangling"] = eta > eta_threshold();
    doc["min_visibility_product"] = needed;
  } else {
    const SwapLimit limit = max_entangled_swaps(*f.max_swaps, f.p);
    doc["eta"] = *f.max_swaps;
    doc["p"] = f.p;
    doc["unbounded"] = limit.unbounded;
    doc["n_max"] = limit.unbounded ? ordered_json(nullptr) : ordered_json(limit.n_max);
  }
  emit(out, doc);
  return kOk;
}

struct SweepFlags {
  std::string config;
  std::string csv;
  std::string summary;
};

int cmd_sweep(const SweepFlags& f, std::ostream& out, std::ostream& err) {
  const SweepConfig config = load_config(f.config);
  const SweepResult result = run_sweep(config);
  write_csv(result.records, f.csv);
  if (!f.summary.empty()) write_summary_json(result.summary, config, f.summary);
  emit(out, ordered_json{{"records", result.records.size()},
                         {"samples", result.summary.samples},
                         {"entangled", result.summary.entangled},
                         {"useful", result.summary.useful}});
  err << "wrote " << result.records.size() << " records to " << f.csv << '\n';
  return kOk;
}

struct ValidateFlags {
  std::size_t samples = 1000;
  std::uint64_t seed = 0;
  double tol = 1e-9;
};

int cmd_validate(const ValidateFlags& f, std::ostream& out, std::ostream& err) {
  if (f.samples == 0) throw UsageError("--samples must be at least 1");
  if (!(f.tol >= 0.0)) throw UsageError("--tol must be non-negative");
  const CrosscheckReport report = run_crosschecks(f.samples, f.seed, f.tol);
  ordered_json suites = ordered_json::array();
  for (const SuiteResult& s : report.suites) {
    suites.push_back(ordered_json{{"name", s.name},
                                  {"checks", s.checks},
                                  {"max_deviation", s.max_deviation},
                                  {"passed", s.passed}});
    if (!s.passed) {
      err << "suite " << s.name << " failed: max deviation " << format_number(s.max_deviation) << " > tolerance "
          << format_number(f.tol) << '\n';
    }
  }
  emit(out, ordered_json{{"passed", report.passed},
                         {"samples", f.samples},
                         {"seed", f.seed},
                         {"tolerance", f.tol},
                         {"suites", suites}});
  return report.passed ? kOk : kValidationFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Entanglement swapping along noisy repeater chains"};
  app.name("entswap");
  app.require_subcommand(1);

  SwapFlags swap_flags;
  auto* swap = app.add_subcommand("swap", "single swap of two links (density-matrix oracle)");
  add_link_flags(swap, swap_flags.links);
  swap->add_option("--eta", swap_flags.eta, "measurement success probability")->capture_default_str();
  swap->add_option("--mode", swap_flags.mode, "paper or povm")->check(CLI::IsMember({"paper", "povm"}));
  swap->add_option("--frame", swap_flags.frame, "singlet or phi_plus")
      ->check(CLI::IsMember({"singlet", "phi_plus"}));

  SwapFlags chain_flags;
  auto* chain = app.add_subcommand("chain", "n repeaters, n + 1 links");
  add_link_flags(chain, chain_flags.links);
  chain->add_option("--etas", chain_flags.etas, "one eta per repeater, comma separated");
  chain->add_option("--mode", chain_flags.mode, "paper or povm")->check(CLI::IsMember({"paper", "povm"}));
  chain->add_option("--frame", chain_flags.frame, "singlet or phi_plus")
      ->check(CLI::IsMember({"singlet", "phi_plus"}));
  chain->add_option("--engine", chain_flags.engine, "closedform or oracle")
      ->check(CLI::IsMember({"closedform", "oracle"}));

  ThresholdFlags threshold_flags;
  auto* threshold = app.add_subcommand("threshold", "noise thresholds and swap limits");
  threshold->add_flag("--eta-star", threshold_flags.eta_star, "single-swap eta threshold");
  threshold->add_option("--eta", threshold_flags.eta, "minimum visibility product for one swap at this eta");
  threshold->add_option("--max-swaps", threshold_flags.max_swaps, "largest entangled chain length at this eta");
  threshold->add_option("--p", threshold_flags.p, "link visibility for --max-swaps")->capture_default_str();

  SweepFlags sweep_flags;
  auto* sweep = app.add_subcommand("sweep", "batch sweep from a JSON config");
  sweep->add_option("--config", sweep_flags.config, "config JSON")->required();
  sweep->add_option("--out", sweep_flags.csv, "CSV output path")->required();
  sweep->add_option("--summary", sweep_flags.summary, "summary JSON output path");

  ValidateFlags validate_flags;
  auto* validate = app.add_subcommand("validate", "closed forms against the oracle");
  validate->add_option("--samples", validate_flags.samples)->capture_default_str();
  validate->add_option("--seed", validate_flags.seed)->capture_default_str();
  validate->add_option("--tol", validate_flags.tol)->capture_default_str();

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "entswap: " << e.what() << '\n';
    return kUsage;
  }

  try {
    if (*swap) return cmd_swap(swap_flags, out);
    if (*chain) return cmd_chain(chain_flags, out);
    if (*threshold) return cmd_threshold(threshold_flags, out, threshold);
    if (*sweep) return cmd_sweep(sweep_flags, out, err);
    return cmd_validate(validate_flags, out, err);
  } catch (const IoError& e) {
    err << "entswap: " << e.what() << '\n';
    return kIo;
  } catch (const InvalidParametersError& e) {
    err << "entswap: " << e.what() << " (eigenvalue " << format_number(e.eigenvalue()) << ")\n";
    return kUsage;
  } catch (const std::logic_error& e) {
    // DomainError, LengthMismatchError, ConfigError, UsageError
    err << "entswap: " << e.what() << '\n';
    return kUsage;
  } catch (const ChainSwapError& e) {
    err << "entswap: " << e.what() << '\n';
    return kUsage;
  }
}

}  // namespace entswap::cli
