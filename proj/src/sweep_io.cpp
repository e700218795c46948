#include "entswap/sweep_io.hpp"

#include "entswap/errors.hpp"

#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <sstream>

namespace entswap {

namespace {

using json = nlohmann::json;
using ordered_json = nlohmann::ordered_json;

std::string csv_field(const std::string& raw) {
  if (raw.find_first_of(",\"\n") == std::string::npos) return raw;
  std::string quoted = "\"";
  for (char ch : raw) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string join_numbers(const std::vector<double>& values, char sep) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += sep;
    out += format_number(values[i]);
  }
  return out;
}

std::string link_to_string(const LinkParams& params) {
  if (const auto* w = std::get_if<WernerParams>(&params)) return format_number(w->p);
  if (const auto* b = std::get_if<BdsParams>(&params)) {
    return "(" + join_numbers({b->t1, b->t2, b->t3}, ',') + ")";
  }
  const auto& g = std::get<BlochForm>(params);
  std::vector<double> values{g.r(0), g.r(1), g.r(2), g.s(0), g.s(1), g.s(2)};
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) values.push_back(g.T(i, j));
  }
  return "(" + join_numbers(values, ',') + ")";
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError(path, std::string("cannot open for writing: ") + std::strerror(errno));
  }
  out << contents;
  out.flush();
  if (!out) {
    throw IoError(path, "write failed");
  }
}

const char* to_string(SampleMode mode) { return mode == SampleMode::grid ? "grid" : "random"; }
const char* to_string(Engine engine) { return engine == Engine::closedform ? "closedform" : "oracle"; }
const char* to_string(SwapMode mode) { return mode == SwapMode::paper ? "paper" : "povm"; }

std::string expect_string(const json& value, const char* key) {
  if (!value.is_string()) throw ConfigError(std::string("'") + key + "' must be a string");
  return value.get<std::string>();
}

double expect_number(const json& value, const char* key) {
  if (!value.is_number()) throw ConfigError(std::string("'") + key + "' must be a number");
  return value.get<double>();
}

std::size_t expect_count(const json& value, const char* key) {
  if (!value.is_number_integer() || value.get<long long>() < 0) {
    throw ConfigError(std::string("'") + key + "' must be a non-negative integer");
  }
  return value.get<std::size_t>();
}

std::vector<double> expect_number_list(const json& value, const char* key) {
  if (!value.is_array()) throw ConfigError(std::string("'") + key + "' must be an array of numbers");
  std::vector<double> out;
  for (const json& v : value) out.push_back(expect_number(v, key));
  return out;
}

EtaSpec parse_eta(const json& value) {
  if (value.is_number()) return EtaSpec::single(value.get<double>());
  if (value.is_array()) return EtaSpec::list(expect_number_list(value, "eta"));
  if (value.is_object()) {
    if (value.size() != 1) throw ConfigError("'eta' object takes exactly one of 'per_node' or 'grid'");
    if (value.contains("per_node")) return EtaSpec::per_node(expect_number_list(value["per_node"], "eta.per_node"));
    if (value.contains("grid")) {
      const json& g = value["grid"];
      if (!g.is_object()) throw ConfigError("'eta.grid' must be an object");
      double start = 0.0, stop = 1.0, step = 0.1;
      for (const auto& [k, v] : g.items()) {
        if (k == "start") start = expect_number(v, "eta.grid.start");
        else if (k == "stop") stop = expect_number(v, "eta.grid.stop");
        else if (k == "step") step = expect_number(v, "eta.grid.step");
        else throw ConfigError("unknown key 'eta.grid." + k + "'");
      }
      return EtaSpec::grid(start, stop, step);
    }
  }
  throw ConfigError("'eta' must be a number, an array, {\"per_node\": [...]} or {\"grid\": {...}}");
}

std::vector<std::size_t> parse_repeaters(const json& value) {
  if (value.is_number_integer()) return {expect_count(value, "n_repeaters")};
  if (value.is_array()) {
    std::vector<std::size_t> out;
    for (const json& v : value) out.push_back(expect_count(v, "n_repeaters"));
    return out;
  }
  if (value.is_object()) {
    if (!value.contains("min") || !value.contains("max") || value.size() != 2) {
      throw ConfigError("'n_repeaters' range needs exactly 'min' and 'max'");
    }
    const std::size_t lo = expect_count(value["min"], "n_repeaters.min");
    const std::size_t hi = expect_count(value["max"], "n_repeaters.max");
    if (hi < lo) throw ConfigError("'n_repeaters' range has max < min");
    std::vector<std::size_t> out;
    for (std::size_t n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  throw ConfigError("'n_repeaters' must be an integer, an array or {\"min\", \"max\"}");
}

}  // namespace

std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  // %.12g can print -0 for tiny negative round-off.
  if (std::strcmp(buf, "-0") == 0) return "0";
  return buf;
}

namespace {

void write_json(const ordered_json& j, int depth, std::string& out) {
  const std::string pad(2 * static_cast<std::size_t>(depth + 1), ' ');
  const std::string close_pad(2 * static_cast<std::size_t>(depth), ' ');
  if (j.is_object() && !j.empty()) {
    out += "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) out += ",\n";
      first = false;
      out += pad + ordered_json(key).dump() + ": ";
      write_json(value, depth + 1, out);
    }
    out += "\n" + close_pad + "}";
  } else if (j.is_array() && !j.empty()) {
    out += "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) out += ",\n";
      out += pad;
      write_json(j[i], depth + 1, out);
    }
    out += "\n" + close_pad + "]";
  } else if (j.is_number_float()) {
    const double v = j.get<double>();
    // JSON has no inf/nan.
    out += std::isfinite(v) ? format_number(v) : "null";
  } else {
    out += j.dump();
  }
}

}  // namespace

std::string to_json_text(const ordered_json& doc) {
  std::string out;
  write_json(doc, 0, out);
  return out + "\n";
}

std::string records_to_csv(const std::vector<SweepRecord>& records) {
  std::string out = "index,family,n,link_params,etas,c_in_min,c_in_prod,c_out,f_out,entangled,useful\n";
  for (const SweepRecord& r : records) {
    std::string links;
    for (std::size_t i = 0; i < r.links.size(); ++i) {
      if (i) links += ';';
      links += link_to_string(r.links[i]);
    }
    out += std::to_string(r.index);
    out += ',';
    out += std::string(to_string(r.family));
    out += ',';
    out += std::to_string(r.n);
    out += ',';
    out += csv_field(links);
    out += ',';
    out += csv_field(join_numbers(r.etas, ';'));
    for (double v : {r.c_in_min, r.c_in_prod, r.c_out, r.f_out}) {
      out += ',';
      out += format_number(v);
    }
    out += r.entangled ? ",true" : ",false";
    out += r.useful ? ",true" : ",false";
    out += '\n';
  }
  return out;
}

void write_csv(const std::vector<SweepRecord>& records, const std::string& path) {
  write_file(path, records_to_csv(records));
}

ordered_json config_to_json(const SweepConfig& config) {
  ordered_json doc;
  doc["family"] = std::string(to_string(config.family));
  doc["mode"] = to_string(config.mode);
  doc["sample_count"] = config.sample_count;
  doc["grid_steps"] = config.grid_steps;
  doc["n_repeaters"] = config.n_repeaters;
  ordered_json etas = ordered_json::array();
  for (double e : config.eta.values) etas.push_back(e);
  switch (config.eta.kind) {
    case EtaSpec::Kind::single:
      doc["eta"] = etas.front();
      break;
    case EtaSpec::Kind::list:
      doc["eta"] = etas;
      break;
    case EtaSpec::Kind::per_node:
      doc["eta"] = ordered_json{{"per_node", etas}};
      break;
  }
  doc["seed"] = config.seed;
  doc["entangled_inputs_only"] = config.entangled_inputs_only;
  doc["identical_links"] = config.identical_links;
  doc["swap_mode"] = to_string(config.swap_mode);
  doc["engine"] = to_string(config.engine);
  return doc;
}

SweepConfig config_from_json(const json& doc) {
  if (!doc.is_object()) throw ConfigError("config must be a JSON object");
  if (!doc.contains("family")) throw ConfigError("config is missing 'family'");
  SweepConfig config;
  for (const auto& [key, value] : doc.items()) {
    if (key == "family") {
      const auto family = parse_family(expect_string(value, "family"));
      if (!family) throw ConfigError("'family' must be werner, bds or general");
      config.family = *family;
    } else if (key == "mode") {
      const std::string m = expect_string(value, "mode");
      if (m == "grid") config.mode = SampleMode::grid;
      else if (m == "random") config.mode = SampleMode::random;
      else throw ConfigError("'mode' must be grid or random");
    } else if (key == "sample_count") {
      config.sample_count = expect_count(value, "sample_count");
    } else if (key == "grid_steps") {
      config.grid_steps = expect_count(value, "grid_steps");
    } else if (key == "n_repeaters") {
      config.n_repeaters = parse_repeaters(value);
    } else if (key == "eta") {
      config.eta = parse_eta(value);
    } else if (key == "seed") {
      if (!value.is_number_unsigned() && !(value.is_number_integer() && value.get<long long>() >= 0)) {
        throw ConfigError("'seed' must be a non-negative 64-bit integer");
      }
      config.seed = value.get<std::uint64_t>();
    } else if (key == "entangled_inputs_only" || key == "identical_links") {
      if (!value.is_boolean()) throw ConfigError("'" + key + "' must be true or false");
      (key == "identical_links" ? config.identical_links : config.entangled_inputs_only) = value.get<bool>();
    } else if (key == "swap_mode") {
      const std::string m = expect_string(value, "swap_mode");
      if (m == "paper") config.swap_mode = SwapMode::paper;
      else if (m == "povm") config.swap_mode = SwapMode::povm;
      else throw ConfigError("'swap_mode' must be paper or povm");
    } else if (key == "engine") {
      const std::string e = expect_string(value, "engine");
      if (e == "closedform") config.engine = Engine::closedform;
      else if (e == "oracle") config.engine = Engine::oracle;
      else throw ConfigError("'engine' must be closedform or oracle");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  config.validate();
  return config;
}

SweepConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError(path, std::string("cannot open config: ") + std::strerror(errno));
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  json doc;
  try {
    doc = json::parse(buf.str());
  } catch (const json::parse_error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  return config_from_json(doc);
}

std::string summary_to_json(const SweepSummary& summary, const SweepConfig& config) {
  ordered_json doc;
  doc["config_echo"] = config_to_json(config);
  doc["totals"] = ordered_json{
      {"samples", summary.samples}, {"entangled", summary.entangled}, {"useful", summary.useful}};
  ordered_json cells = ordered_json::array();
  for (const SweepCell& cell : summary.cells) {
    ordered_json c;
    c["n"] = cell.n;
    if (cell.uniform_eta) {
      c["eta"] = cell.etas.front();
    } else {
      ordered_json etas = ordered_json::array();
      for (double e : cell.etas) etas.push_back(e);
      c["eta"] = etas;
    }
    c["samples"] = cell.samples;
    c["entangled"] = cell.entangled;
    c["useful"] = cell.useful;
    cells.push_back(std::move(c));
  }
  doc["cells"] = std::move(cells);
  return to_json_text(doc);
}

void write_summary_json(const SweepSummary& summary, const SweepConfig& config, const std::string& path) {
  write_file(path, summary_to_json(summary, config));
}

}  // namespace entswap
