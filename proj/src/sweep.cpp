#include "entswap/sweeplab.hpp"

#include "entswap/closedform.hpp"
#include "entswap/entmeasures.hpp"
#include "entswap/errors.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <mutex>
#include <thread>

namespace entswap {

namespace {

constexpr std::size_t kMaxRepeaters = 64;
constexpr double kMaxGridSamples = 1e7;

double round12(double x) {
  if (x == 0.0) return 0.0;
  const double scale = std::pow(10.0, 11 - static_cast<int>(std::floor(std::log10(std::abs(x)))));
  return std::round(x * scale) / scale;
}

std::size_t max_repeaters(const SweepConfig& config) {
  return *std::max_element(config.n_repeaters.begin(), config.n_repeaters.end());
}

std::size_t links_per_sample(const SweepConfig& config) {
  return config.identical_links ? 1 : max_repeaters(config) + 1;
}

// Grid points for a single link, in enumeration order.
std::vector<LinkParams> grid_axis(const SweepConfig& config) {
  std::vector<LinkParams> points;
  const auto steps = static_cast<double>(config.grid_steps);
  if (config.family == Family::werner) {
    for (std::size_t k = 1; k <= config.grid_steps; ++k) {
      const double p = static_cast<double>(k) / steps;
      if (config.entangled_inputs_only && !(p > 1.0 / 3.0)) continue;
      points.emplace_back(WernerParams{p});
    }
  } else if (config.family == Family::bds) {
    std::vector<double> axis;
    for (std::size_t k = 0; k <= config.grid_steps; ++k) {
      axis.push_back((2.0 * static_cast<double>(k) - steps) / steps);
    }
    for (double t1 : axis) {
      for (double t2 : axis) {
        for (double t3 : axis) {
          const BdsParams t{t1, t2, t3};
          if (!t.in_tetrahedron()) continue;
          if (config.entangled_inputs_only && octahedron_separable(t)) continue;
          points.emplace_back(t);
        }
      }
    }
  }
  return points;
}

TwoQubitState state_of(const LinkParams& params) {
  if (const auto* w = std::get_if<WernerParams>(&params)) return make_werner(*w);
  if (const auto* b = std::get_if<BdsParams>(&params)) return make_bell_diagonal(*b);
  return make_general(std::get<BlochForm>(params));
}

double link_concurrence(const SampledLink& link, Engine engine) {
  if (engine == Engine::closedform) {
    if (const auto* w = std::get_if<WernerParams>(&link.params)) return concurrence_werner(w->p);
    if (const auto* b = std::get_if<BdsParams>(&link.params)) return concurrence_bds(*b);
  }
  return concurrence(link.state);
}

SweepRecord evaluate(const SweepConfig& config, std::size_t index, const std::vector<SampledLink>& drawn,
                     const SweepCell& cell) {
  SweepRecord rec;
  rec.index = index;
  rec.family = config.family;
  rec.n = cell.n;
  rec.etas = cell.etas;

  std::vector<const SampledLink*> chain;
  for (std::size_t i = 0; i <= cell.n; ++i) {
    chain.push_back(config.identical_links ? &drawn.front() : &drawn[i]);
  }

  rec.c_in_min = 1.0;
  rec.c_in_prod = 1.0;
  for (const SampledLink* link : chain) {
    rec.links.push_back(link->params);
    const double c = link_concurrence(*link, config.engine);
    rec.c_in_min = std::min(rec.c_in_min, c);
    rec.c_in_prod *= c;
  }

  if (config.engine == Engine::closedform && config.family == Family::werner) {
    WernerChainQuery q{{}, {cell.etas}};
    for (const SampledLink* link : chain) q.ps.push_back(std::get<WernerParams>(link->params).p);
    rec.c_out = werner_chain_concurrence(q);
    rec.f_out = werner_chain_fidelity(q);
  } else if (config.engine == Engine::closedform && config.family == Family::bds) {
    BdsChainQuery q{{}, {cell.etas}};
    for (const SampledLink* link : chain) q.ts.push_back(std::get<BdsParams>(link->params));
    rec.c_out = bds_chain_concurrence(q);
    rec.f_out = bds_chain_fidelity(q);
  } else {
    ChainSpec spec{{}, {cell.etas}};
    for (const SampledLink* link : chain) spec.links.push_back(link->state);
    const MeasureReport r = report(chain_swap(spec, config.swap_mode));
    rec.c_out = r.concurrence;
    rec.f_out = r.fidelity;
  }
  rec.entangled = is_entangled(rec.c_out);
  rec.useful = is_useful_for_teleportation(rec.f_out);
  return rec;
}

}  // namespace

EtaSpec EtaSpec::grid(double start, double stop, double step) {
  if (!(step > 0.0) || !(stop >= start)) {
    throw ConfigError("eta grid needs step > 0 and stop >= start");
  }
  std::vector<double> values;
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9));
  for (std::size_t k = 0; k <= count; ++k) {
    values.push_back(round12(start + static_cast<double>(k) * step));
  }
  return list(std::move(values));
}

void SweepConfig::validate() const {
  if (engine == Engine::closedform && family == Family::general) {
    throw ConfigError("engine 'closedform' has no formulas for the general family; use engine 'oracle'");
  }
  if (engine == Engine::closedform && swap_mode == SwapMode::povm) {
    throw ConfigError("engine 'closedform' implements swap_mode 'paper' only; use engine 'oracle' for 'povm'");
  }
  if (mode == SampleMode::grid && family == Family::general) {
    throw ConfigError("grid mode is defined for the werner and bds families only");
  }
  if (mode == SampleMode::random && sample_count == 0) {
    throw ConfigError("sample_count must be at least 1");
  }
  if (mode == SampleMode::grid && grid_steps == 0) {
    throw ConfigError("grid_steps must be at least 1");
  }
  if (n_repeaters.empty()) {
    throw ConfigError("n_repeaters must name at least one chain length");
  }
  for (std::size_t n : n_repeaters) {
    if (n < 1 || n > kMaxRepeaters) {
      throw ConfigError("n_repeaters entries must lie in [1, " + std::to_string(kMaxRepeaters) + "], got " +
                        std::to_string(n));
    }
  }
  if (eta.values.empty()) {
    throw ConfigError("eta must provide at least one value");
  }
  if (eta.kind == EtaSpec::Kind::single && eta.values.size() != 1) {
    throw ConfigError("a single eta takes exactly one value");
  }
  for (double e : eta.values) {
    if (!(e >= 0.0 && e <= 1.0)) {
      throw ConfigError("eta values must lie in [0, 1], got " + std::to_string(e));
    }
  }
  if (eta.kind == EtaSpec::Kind::per_node && eta.values.size() < max_repeaters(*this)) {
    throw ConfigError("per-node eta list has " + std::to_string(eta.values.size()) + " entries but chains need " +
                      std::to_string(max_repeaters(*this)));
  }
  if (mode == SampleMode::grid) {
    const double axis = static_cast<double>(grid_axis(*this).size());
    const double total = std::pow(axis, static_cast<double>(links_per_sample(*this)));
    if (axis == 0.0) {
      throw ConfigError("grid contains no admissible link states");
    }
    if (total > kMaxGridSamples) {
      throw ConfigError("grid would produce " + std::to_string(total) +
                        " samples; reduce grid_steps, n_repeaters or set identical_links");
    }
  }
}

std::vector<SweepCell> sweep_cells(const SweepConfig& config) {
  std::vector<SweepCell> cells;
  for (std::size_t n : config.n_repeaters) {
    if (config.eta.kind == EtaSpec::Kind::per_node) {
      SweepCell cell;
      cell.n = n;
      cell.etas.assign(config.eta.values.begin(), config.eta.values.begin() + static_cast<std::ptrdiff_t>(n));
      cell.uniform_eta = false;
      cells.push_back(std::move(cell));
    } else {
      for (double e : config.eta.values) {
        SweepCell cell;
        cell.n = n;
        cell.etas.assign(n, e);
        cells.push_back(std::move(cell));
      }
    }
  }
  return cells;
}

std::size_t sweep_sample_count(const SweepConfig& config) {
  if (config.mode == SampleMode::random) return config.sample_count;
  const std::size_t axis = grid_axis(config).size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < links_per_sample(config); ++i) total *= axis;
  return total;
}

std::size_t thread_count_from_env() {
  std::size_t threads = std::max(1U, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("ENTSWAP_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0) {
      threads = std::min(threads, static_cast<std::size_t>(cap));
    }
  }
  return threads;
}

SweepResult run_sweep(const SweepConfig& config, std::size_t threads) {
  config.validate();
  const std::vector<SweepCell> cells = sweep_cells(config);
  const std::size_t link_count = links_per_sample(config);
  const std::vector<LinkParams> axis = config.mode == SampleMode::grid ? grid_axis(config) : std::vector<LinkParams>{};
  const std::size_t samples = sweep_sample_count(config);

  auto draw = [&](std::size_t index) {
    std::vector<SampledLink> links;
    links.reserve(link_count);
    if (config.mode == SampleMode::random) {
      SampleStream stream(config.seed, index);
      for (std::size_t i = 0; i < link_count; ++i) {
        links.push_back(sample_state(config.family, stream, config.entangled_inputs_only));
      }
    } else {
      // Mixed radix, last link varying fastest.
      std::vector<std::size_t> digits(link_count);
      std::size_t rest = index;
      for (std::size_t i = link_count; i-- > 0;) {
        digits[i] = rest % axis.size();
        rest /= axis.size();
      }
      for (std::size_t d : digits) {
        links.push_back(SampledLink{state_of(axis[d]), axis[d], 1});
      }
    }
    return links;
  };

  SweepResult result;
  result.records.resize(samples * cells.size());

  if (threads == 0) threads = thread_count_from_env();
  threads = std::max<std::size_t>(1, std::min(threads, samples));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&] {
    constexpr std::size_t kChunk = 64;
    while (true) {
      const std::size_t begin = next.fetch_add(kChunk);
      if (begin >= samples) return;
      const std::size_t end = std::min(samples, begin + kChunk);
      try {
        for (std::size_t i = begin; i < end; ++i) {
          const std::vector<SampledLink> links = draw(i);
          for (std::size_t c = 0; c < cells.size(); ++c) {
            result.records[i * cells.size() + c] = evaluate(config, i, links, cells[c]);
          }
        }
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = samples;
        return;
      }
    }
  };

  if (threads == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  }
  if (failure) std::rethrow_exception(failure);

  result.summary.cells = cells;
  for (std::size_t i = 0; i < result.records.size(); ++i) {
    const SweepRecord& rec = result.records[i];
    SweepCell& cell = result.summary.cells[i % cells.size()];
    ++cell.samples;
    cell.entangled += rec.entangled ? 1 : 0;
    cell.useful += rec.useful ? 1 : 0;
  }
  for (const SweepCell& cell : result.summary.cells) {
    result.summary.samples += cell.samples;
    result.summary.entangled += cell.entangled;
    result.summary.useful += cell.useful;
  }
  return result;
}

}  // namespace entswap
