#include "divlab/inequalities.hpp"

#include <cmath>
#include <exception>
#include <sstream>

#include <omp.h>

namespace divlab::inequalities {

namespace {

bool finite(double x) { return std::isfinite(x); }

std::vector<VerdictRecord> run(const SweepConfig& cfg, bool parallel) {
  cfg.validate();
  const std::vector<double> ts = cfg.grid();
  const channels::JCParams params = cfg.params();
  const channels::FreeFamily family = cfg.make_family();
  std::vector<VerdictRecord> out(ts.size());

  auto one = [&](std::size_t k) {
    out[k] = judge(measures::evaluate(params, family, ts[k], cfg.tau, cfg.opt));
  };

  if (!parallel) {
    for (std::size_t k = 0; k < ts.size(); ++k) one(k);
    return out;
  }

  const int threads = cfg.threads > 0 ? cfg.threads : omp_get_max_threads();
  std::exception_ptr failure;
  const auto n = static_cast<long>(ts.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(threads)
  for (long k = 0; k < n; ++k) {
    try {
      one(static_cast<std::size_t>(k));
    } catch (...) {
#pragma omp critical(divlab_sweep_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

// Verdicts are recomputed from lhs and rhs.
void record(Tally& tally, const std::optional<double>& lhs, const std::optional<double>& rhs,
            double t) {
  if (!lhs || !rhs) {
    ++tally.singular;
    return;
  }
  if (*lhs <= *rhs + kVerdictSlack) {
    ++tally.pass;
  } else {
    ++tally.fail;
    tally.failures.push_back(t);
  }
  const double margin = *rhs - *lhs;
  if (!tally.worst_margin || margin < *tally.worst_margin) {
    tally.worst_margin = margin;
    tally.worst_t = t;
  }
}

}  // namespace

void SweepConfig::validate() const {
  std::ostringstream msg;
  if (!(gamma0 > 0.0) || !finite(gamma0)) msg << "gamma0 must be > 0 (got " << gamma0 << ")";
  else if (!(lambda > 0.0) || !finite(lambda)) msg << "lambda must be > 0 (got " << lambda << ")";
  else if (!(tau > 0.0) || !finite(tau)) msg << "tau must be > 0 (got " << tau << ")";
  else if (!(t_min >= 0.0) || !finite(t_min)) msg << "t_min must be >= 0 (got " << t_min << ")";
  else if (!(dt > 0.0) || !finite(dt)) msg << "dt must be > 0 (got " << dt << ")";
  else if (!(t_max >= t_min) || !finite(t_max)) msg << "t_max must be >= t_min (got " << t_max << ")";
  else if (threads < 0) msg << "threads must be >= 0";
  if (!msg.str().empty()) throw ConfigError(msg.str());
  try {
    make_family();
    opt.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(e.what());
  }
}

std::vector<double> SweepConfig::grid() const {
  const auto steps = static_cast<long>(std::floor((t_max - t_min) / dt + 1e-9));
  std::vector<double> ts;
  ts.reserve(steps + 1);
  for (long k = 0; k <= steps; ++k) ts.push_back(t_min + dt * static_cast<double>(k));
  return ts;
}

channels::JCParams SweepConfig::params() const { return {gamma0, lambda}; }

channels::FreeFamily SweepConfig::make_family() const {
  return channels::free_family(lambda, family.gamma0_min, family.gamma0_max, family.n);
}

VerdictRecord judge(const measures::MeasureRecord& m) {
  VerdictRecord v;
  v.m = m;
  if (m.p_i && m.nm1 && m.d) {
    v.lhs_p = *m.p_i;
    v.rhs_p = 2.0 * *m.nm1 + *m.d;
    v.ok_p = *v.lhs_p <= *v.rhs_p + kVerdictSlack;
    v.ok_p_strict = *m.p_i <= 2.0 * *m.nm1 + kVerdictSlack;
  }
  if (m.nm2 && m.cp_i) {
    v.lhs_cp = *m.nm2;
    v.rhs_cp = 0.5 * *m.cp_i + 1.0;
    v.ok_cp = *v.lhs_cp <= *v.rhs_cp + kVerdictSlack;
  }
  return v;
}

std::vector<VerdictRecord> sweep(const SweepConfig& cfg) { return run(cfg, true); }

std::vector<VerdictRecord> sweep_serial(const SweepConfig& cfg) { return run(cfg, false); }

Summary verify(std::span<const VerdictRecord> records) {
  if (records.empty()) throw std::invalid_argument("verify: no records");
  Summary s;
  s.records = records.size();
  for (const VerdictRecord& r : records) {
    record(s.p, r.lhs_p, r.rhs_p, r.m.t);
    std::optional<double> rhs_strict;
    if (r.m.nm1) rhs_strict = 2.0 * *r.m.nm1;
    record(s.p_strict, r.lhs_p, rhs_strict, r.m.t);
    record(s.cp, r.lhs_cp, r.rhs_cp, r.m.t);
  }
  return s;
}

}  // namespace divlab::inequalities
