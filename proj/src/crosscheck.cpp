#include "entswap/crosscheck.hpp"

#include "entswap/closedform.hpp"
#include "entswap/entmeasures.hpp"
#include "entswap/errors.hpp"
#include "entswap/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace entswap {

namespace {

// Distinct stream families per suite so suites stay independent of each other.
constexpr std::uint64_t kSuiteStride = 1ULL << 40;

struct Tracker {
  SuiteResult result;
  void record(double deviation) {
    ++result.checks;
    // NaN must never read as agreement.
    if (std::isnan(deviation)) deviation = INFINITY;
    result.max_deviation = std::max(result.max_deviation, deviation);
  }
};

std::size_t pick(SampleStream& stream, std::size_t lo, std::size_t hi) {
  const auto span = static_cast<double>(hi - lo + 1);
  return lo + std::min(hi - lo, static_cast<std::size_t>(stream.uniform() * span));
}

BdsParams draw_bds(SampleStream& stream) {
  return std::get<BdsParams>(sample_state(Family::bds, stream).params);
}

void werner_single(Tracker& t, SampleStream& s) {
  const double p1 = s.uniform();
  const double p2 = s.uniform();
  const double eta = s.uniform();
  const WernerChainQuery q{{p1, p2}, {{eta}}};
  const MeasureReport r = report(swap_once(make_werner({p1}), make_werner({p2}), eta));
  t.record(std::abs(r.concurrence - werner_chain_concurrence(q)));
  t.record(std::abs(r.fidelity - werner_chain_fidelity(q)));
}

void werner_chain(Tracker& t, SampleStream& s) {
  const std::size_t n = pick(s, 1, 4);
  WernerChainQuery q;
  ChainSpec spec;
  for (std::size_t i = 0; i <= n; ++i) {
    // Keep visibilities high enough that long chains are not trivially separable.
    q.ps.push_back(s.uniform(0.5, 1.0));
    spec.links.push_back(make_werner({q.ps.back()}));
  }
  for (std::size_t i = 0; i < n; ++i) q.etas.etas.push_back(s.uniform(0.6, 1.0));
  spec.noise = q.etas;
  const MeasureReport r = report(chain_swap(spec));
  t.record(std::abs(r.concurrence - werner_chain_concurrence(q)));
  t.record(std::abs(r.fidelity - werner_chain_fidelity(q)));
}

void bds_chain(Tracker& t, SampleStream& s) {
  const std::size_t n = pick(s, 1, 3);
  BdsChainQuery q;
  ChainSpec spec;
  for (std::size_t i = 0; i <= n; ++i) {
    q.ts.push_back(draw_bds(s));
    spec.links.push_back(make_bell_diagonal(q.ts.back()));
  }
  for (std::size_t i = 0; i < n; ++i) q.etas.etas.push_back(s.uniform(0.6, 1.0));
  spec.noise = q.etas;
  const TwoQubitState out = chain_swap(spec, SwapMode::paper, CorrectionFrame::phi_plus);
  const MeasureReport r = report(out);
  t.record(std::abs(r.concurrence - bds_chain_concurrence(q)));
  t.record(std::abs(r.fidelity - bds_chain_fidelity(q)));

  const BdsParams expect = bds_final_correlations(q);
  const BlochForm b = pauli_decompose(out);
  Matrix3 target = Matrix3::Zero();
  target.diagonal() << expect.t1, expect.t2, expect.t3;
  t.record((b.T - target).cwiseAbs().maxCoeff());
  t.record(std::max(b.r.cwiseAbs().maxCoeff(), b.s.cwiseAbs().maxCoeff()));
}

void normalization(Tracker& t, SampleStream& s) {
  const std::size_t n = pick(s, 1, 8);
  std::vector<double> etas;
  for (std::size_t i = 0; i < n; ++i) etas.push_back(1.0 - s.uniform());
  const double product = product_normalization(etas);
  t.record(std::abs(subset_sum_normalization(etas) - product) / std::max(1.0, product));

  const double eta = etas.front();
  const double uniform = std::pow(4.0 - 3.0 * eta, static_cast<double>(n));
  t.record(std::abs(uniform_eta_normalization(eta, n) - uniform) / std::max(1.0, uniform));
}

}  // namespace

CrosscheckReport run_crosschecks(std::size_t samples, std::uint64_t seed, double tolerance) {
  if (samples == 0) throw DomainError("crosschecks need at least one sample");
  if (!(tolerance >= 0.0)) throw DomainError("tolerance must be non-negative");

  using Suite = std::pair<const char*, std::function<void(Tracker&, SampleStream&)>>;
  const std::vector<Suite> suites{
      {"werner_single_swap", werner_single},
      {"werner_chain", werner_chain},
      {"bds_chain", bds_chain},
      {"normalization_identity", normalization},
  };

  CrosscheckReport out;
  out.passed = true;
  for (std::size_t k = 0; k < suites.size(); ++k) {
    Tracker tracker;
    tracker.result.name = suites[k].first;
    for (std::size_t i = 0; i < samples; ++i) {
      SampleStream stream(seed, k * kSuiteStride + i);
      suites[k].second(tracker, stream);
    }
    tracker.result.passed = tracker.result.max_deviation <= tolerance;
    out.passed = out.passed && tracker.result.passed;
    out.suites.push_back(tracker.result);
  }
  return out;
}

}  // namespace entswap
