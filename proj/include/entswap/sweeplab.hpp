// Batch evaluation of repeater chains over sampled or gridded link states.
//
// A sweep crosses a set of samples with a set of cells. A cell fixes the
// number of repeaters n and the eta of every repeater; each sample provides
// enough links for the longest chain and a cell uses the first n + 1 of them
// (all of them identical when identical_links is set). Records come out sorted
// by sample index, then by cell.

#pragma once

#include "entswap/sampling.hpp"
#include "entswap/swapcore.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace entswap {

enum class SampleMode { grid, random };
enum class Engine { closedform, oracle };

struct EtaSpec {
  enum class Kind {
    single,    // one cell, every repeater uses values[0]
    list,      // one cell per value, every repeater uses that value
    per_node,  // one cell, repeater i uses values[i]
  };
  Kind kind = Kind::single;
  std::vector<double> values{1.0};

  static EtaSpec single(double eta) { return {Kind::single, {eta}}; }
  static EtaSpec list(std::vector<double> etas) { return {Kind::list, std::move(etas)}; }
  static EtaSpec per_node(std::vector<double> etas) { return {Kind::per_node, std::move(etas)}; }
  // start, start + step, ... up to stop inclusive, rounded to 12 digits.
  static EtaSpec grid(double start, double stop, double step);
};

struct SweepConfig {
  Family family = Family::werner;
  SampleMode mode = SampleMode::random;
  std::size_t sample_count = 1000;  // random mode
  std::size_t grid_steps = 100;     // grid mode: points per parameter axis
  std::vector<std::size_t> n_repeaters{1};
  EtaSpec eta;
  std::uint64_t seed = 0;
  bool entangled_inputs_only = false;
  bool identical_links = false;
  SwapMode swap_mode = SwapMode::paper;
  Engine engine = Engine::closedform;

  // Throws ConfigError describing the first problem found.
  void validate() const;
};

struct SweepRecord {
  std::size_t index = 0;
  Family family = Family::werner;
  std::size_t n = 0;
  std::vector<LinkParams> links;
  std::vector<double> etas;
  double c_in_min = 0.0;
  double c_in_prod = 0.0;
  double c_out = 0.0;
  double f_out = 0.5;
  bool entangled = false;
  bool useful = false;
};

struct SweepCell {
  std::size_t n = 0;
  std::vector<double> etas;  // one per repeater
  bool uniform_eta = true;   // all entries equal and reported as a scalar
  std::size_t samples = 0;
  std::size_t entangled = 0;
  std::size_t useful = 0;

  double entangled_fraction() const { return samples ? static_cast<double>(entangled) / samples : 0.0; }
};

struct SweepSummary {
  std::size_t samples = 0;  // evaluated records
  std::size_t entangled = 0;
  std::size_t useful = 0;
  std::vector<SweepCell> cells;
};

struct SweepResult {
  std::vector<SweepRecord> records;
  SweepSummary summary;
};

// Cells in evaluation order: n outer, eta inner.
std::vector<SweepCell> sweep_cells(const SweepConfig& config);

// Number of samples the config produces (grid points or sample_count).
std::size_t sweep_sample_count(const SweepConfig& config);

// threads == 0 picks thread_count_from_env().
SweepResult run_sweep(const SweepConfig& config, std::size_t threads = 0);

// Hardware concurrency, capped by ENTSWAP_THREADS when set to a positive integer.
std::size_t thread_count_from_env();

}  // namespace entswap
