#include "scenarios.hpp"

#include <atomic>
#include <cstdio>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <optional>
#include <ostream>
#include <thread>

#include "nonkp/bourgain.hpp"
#include "nonkp/diagnostics.hpp"
#include "nonkp/dirichlet_neumann.hpp"
#include "nonkp/integrate.hpp"
#include "output.hpp"

namespace nonkp::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

std::string fmt(double x) { return format_real(x); }
std::string fmt(int x) { return std::to_string(x); }

double profile_l2(const std::vector<double>& m, double ly) {
  double sum = 0.0;
  for (double x : m) sum += x * x;
  return std::sqrt(sum * ly / static_cast<double>(m.size()));
}

Outcome simulate(const Scenario& scn, const fs::path& out) {
  const Grid2D g = scn.grid->make();
  const Trajectory tr = run(scn.run, initial_state(g, scn.initial));
  const fs::path snaps = out / "snapshots";
  for (std::size_t i = 0; i < tr.snapshots.size(); ++i) {
    char stem[32];
    std::snprintf(stem, sizeof stem, "snapshot_%06zu", i);
    write_snapshot(snaps, stem, tr.snapshots[i], tr.scheme);
  }
  CsvTable csv({"t", "H", "l2_u", "l2_v", "mass_l2"});
  for (const auto& d : tr.diagnostics)
    csv.row({fmt(d.t), fmt(d.H), fmt(d.l2_u), fmt(d.l2_v), fmt(profile_l2(d.mass, g.ly()))});
  csv.write(out / "diagnostics.csv");
  const DriftReport drift = hamiltonian_drift(tr);
  Outcome o;
  o.summary = {{"scheme", to_string(tr.scheme)},
               {"dt", tr.dt},
               {"t_end", tr.snapshots.back().t},
               {"snapshots", tr.snapshots.size()},
               {"hamiltonian_drift", drift.value},
               {"drift_is_absolute", drift.absolute}};
  return o;
}

Outcome dispersion_table(const Scenario& scn, const fs::path& out) {
  const Grid2D g = scn.grid->make();
  const SymbolTable tab(g);
  RunConfig cfg = scn.run;
  cfg.scheme = Scheme::LinearExact;
  const Trajectory tr = run(cfg, initial_state(g, scn.initial));
  const auto history = diagonal_history(tr, tab);

  const int m = scn.dispersion.max_index;
  const int rows = 2 * m + 1;
  std::vector<std::vector<std::vector<std::string>>> cells(rows);
  std::vector<double> worst(rows, 0.0);
  parallel_for(rows, scn.threads, [&](int r) {
    const int k = r - m;
    for (int j = -m; j <= m; ++j) {
      const ModeSymbols& s = tab.mode(j, k);
      const double xi = g.xi(g.column_of(j)), mu = g.mu(g.row_of(k));
      for (Branch br : {Branch::One, Branch::Two}) {
        const double measured = fit_plane_wave_frequency(history, j, k, br);
        const double err = std::abs(measured - s.omega_of(br));
        worst[r] = std::max(worst[r], err);
        cells[r].push_back({fmt(j), fmt(k), fmt(xi), fmt(mu), fmt(s.omega1), fmt(s.omega2),
                            fmt(static_cast<int>(br)), fmt(measured), fmt(err)});
      }
    }
  });
  CsvTable csv({"j", "k", "xi", "mu", "omega1", "omega2", "branch", "measured", "error"});
  double max_err = 0.0;
  for (int r = 0; r < rows; ++r) {
    for (auto& c : cells[r]) csv.row(std::move(c));
    max_err = std::max(max_err, worst[r]);
  }
  csv.write(out / "dispersion.csv");
  Outcome o;
  o.passed = max_err <= scn.dispersion.tolerance;
  o.summary = {{"max_error", max_err}, {"tolerance", scn.dispersion.tolerance}, {"modes", rows * rows}};
  o.detail = "max dispersion error " + fmt(max_err) + " vs tolerance " + fmt(scn.dispersion.tolerance);
  return o;
}

Outcome mass_wave(const Scenario& scn, const fs::path& out) {
  if (scn.run.scheme == Scheme::LinearExact)
    throw ConfigError("run.scheme", "run.scheme must be a nonlinear scheme for the mass-wave epsilon sweep");
  const Grid2D g = scn.grid->make();
  InitialSettings in = scn.initial;
  in.kind = InitialKind::MassProfile;

  RunConfig lin_cfg = scn.run;
  lin_cfg.scheme = Scheme::LinearExact;
  const MassResidual lin = mass_wave_residual(run(lin_cfg, initial_state(g, in)));

  const auto& eps = scn.mass.epsilons;
  std::vector<MassResidual> res(eps.size());
  parallel_for(static_cast<int>(eps.size()), scn.threads, [&](int i) {
    InitialSettings e = in;
    e.amplitude = eps[i];
    res[i] = mass_wave_residual(run(scn.run, initial_state(g, e)));
  });
  std::vector<double> abs_res;
  for (const auto& r : res) abs_res.push_back(r.absolute);
  const double slope = fit_loglog_slope(eps, abs_res);

  CsvTable csv({"epsilon", "scheme", "relative", "absolute"});
  csv.row({fmt(in.amplitude), to_string(Scheme::LinearExact), fmt(lin.relative), fmt(lin.absolute)});
  for (std::size_t i = 0; i < eps.size(); ++i)
    csv.row({fmt(eps[i]), to_string(scn.run.scheme), fmt(res[i].relative), fmt(res[i].absolute)});
  csv.write(out / "mass_wave.csv");

  Outcome o;
  const bool lin_ok = lin.relative <= scn.mass.tolerance;
  const bool slope_ok = std::abs(slope - 2.0) <= scn.mass.slope_tolerance;
  o.passed = lin_ok && slope_ok;
  o.summary = {{"linear_relative_residual", lin.relative},
               {"tolerance", scn.mass.tolerance},
               {"nonlinear_slope", slope},
               {"slope_tolerance", scn.mass.slope_tolerance}};
  o.detail = "linear residual " + fmt(lin.relative) + " (tol " + fmt(scn.mass.tolerance) + "), epsilon slope " +
             fmt(slope) + " (want 2 +- " + fmt(scn.mass.slope_tolerance) + ")";
  return o;
}

Outcome bourgain_psi(const Scenario& scn, const fs::path& out) {
  const auto& b = scn.bourgain;
  const auto Ts = log_space(b.t_min, b.t_max, b.points);
  std::vector<double> norms(Ts.size());
  parallel_for(static_cast<int>(Ts.size()), scn.threads, [&](int i) { norms[i] = psi_T_norm(Ts[i], b.b, b.nt); });
  const double slope = fit_loglog_slope(Ts, norms);
  const double expected = 0.5 - b.b;
  CsvTable csv({"T", "norm", "ratio", "slope"});
  for (std::size_t i = 0; i < Ts.size(); ++i)
    csv.row({fmt(Ts[i]), fmt(norms[i]), fmt(norms[i] / std::pow(Ts[i], expected)), fmt(slope)});
  csv.write(out / "bourgain_psi.csv");
  Outcome o;
  o.passed = std::abs(slope - expected) <= b.tolerance;
  o.summary = {{"kind", "psi"}, {"slope", slope}, {"expected_slope", expected}, {"tolerance", b.tolerance}};
  o.detail = "fitted slope " + fmt(slope) + " vs expected " + fmt(expected) + " +- " + fmt(b.tolerance);
  return o;
}

Outcome bourgain_duhamel(const Scenario& scn, const fs::path& out) {
  const auto& b = scn.bourgain;
  const Grid2D g = scn.grid->make();
  const SymbolTable tab(g);
  const Forcing forcing{"config", b.branch, {{b.j, b.k, 1.0, b.center, b.width, b.detuning}}};
  const double bb = 0.5 + b.eps, bp = 0.5 - 2 * b.eps;
  const auto Ts = log_space(b.t_min, b.t_max, b.points);
  std::vector<double> lhs(Ts.size()), rhs(Ts.size());
  parallel_for(static_cast<int>(Ts.size()), scn.threads, [&](int i) {
    const TimeGrid tg = TimeGrid::make(b.nt, time_window(Ts[i]));
    const SpaceTimeField F = build_forcing(forcing, tab, tg);
    rhs[i] = norm_Xibs(b.branch, F, -bp, b.s, tab);
    lhs[i] = norm_Xibs(b.branch, truncated_duhamel(F, b.branch, tab, Ts[i]), bb, b.s, tab);
  });
  const double slope = fit_loglog_slope(Ts, lhs);
  double lo = INFINITY, hi = 0.0;
  CsvTable csv({"T", "lhs", "rhs", "ratio", "slope"});
  for (std::size_t i = 0; i < Ts.size(); ++i) {
    if (rhs[i] == 0.0) throw std::invalid_argument("forcing has zero norm");
    const double ratio = lhs[i] / (std::pow(Ts[i], b.eps) * rhs[i]);
    lo = std::min(lo, ratio);
    hi = std::max(hi, ratio);
    csv.row({fmt(Ts[i]), fmt(lhs[i]), fmt(rhs[i]), fmt(ratio), fmt(slope)});
  }
  csv.write(out / "bourgain_duhamel.csv");
  Outcome o;
  const double spread = hi / lo;
  o.passed = slope >= b.eps - 0.1 && spread <= 10.0;
  o.summary = {{"kind", "duhamel"}, {"slope", slope}, {"ratio_spread", spread}, {"eps", b.eps}};
  o.detail = "ratio spread " + fmt(spread) + " (limit 10), slope " + fmt(slope) + " (want >= " + fmt(b.eps - 0.1) + ")";
  return o;
}

Outcome dn_verify(const Scenario& scn, const fs::path& out) {
  const auto& d = scn.dn;
  const dn::Grid1D g = dn::Grid1D::make(d.n, d.length);
  const auto& amps = d.amplitudes;
  std::vector<std::vector<double>> errs(d.orders.size(), std::vector<double>(amps.size()));
  std::vector<double> slopes(d.orders.size());
  parallel_for(static_cast<int>(d.orders.size()), scn.threads, [&](int i) {
    for (std::size_t a = 0; a < amps.size(); ++a) {
      std::vector<double> eta(g.n());
      for (int p = 0; p < g.n(); ++p) eta[p] = amps[a] * d.h0 * std::cos(2 * std::numbers::pi * d.k * g.x(p) / d.length);
      const dn::TraceOracle o = dn::exact_trace_oracle(g, eta, d.k, d.h0);
      errs[i][a] = dn::l2_norm(dn::dn_apply(dn::make_expansion(g, d.h0, d.orders[i], eta), o.phi) - o.normal_velocity);
    }
    slopes[i] = fit_loglog_slope(amps, errs[i]);
  });
  CsvTable csv({"amplitude", "order", "error", "slope"});
  Outcome o;
  json per_order = json::array();
  for (std::size_t i = 0; i < d.orders.size(); ++i) {
    for (std::size_t a = 0; a < amps.size(); ++a)
      csv.row({fmt(amps[a]), fmt(d.orders[i]), fmt(errs[i][a]), fmt(slopes[i])});
    const bool ok = std::abs(slopes[i] - (d.orders[i] + 1)) <= d.tolerance;
    o.passed = o.passed && ok;
    per_order.push_back({{"order", d.orders[i]}, {"slope", slopes[i]}, {"passed", ok}});
    o.detail += "order " + fmt(d.orders[i]) + " slope " + fmt(slopes[i]) + (ok ? " ok; " : " out of tolerance; ");
  }
  csv.write(out / "dn_verify.csv");
  o.summary = {{"orders", per_order}, {"tolerance", d.tolerance}};
  return o;
}

Outcome conservation(const Scenario& scn, const fs::path& out) {
  const Grid2D g = scn.grid->make();
  const Trajectory tr = run(scn.run, initial_state(g, scn.initial));
  const DriftReport drift = hamiltonian_drift(tr);
  const double h0 = tr.diagnostics.front().H;
  CsvTable csv({"t", "H", "drift"});
  for (const auto& d : tr.diagnostics) {
    const double dh = std::abs(d.H - h0);
    csv.row({fmt(d.t), fmt(d.H), fmt(drift.absolute ? dh : dh / std::abs(h0))});
  }
  csv.write(out / "conservation.csv");
  Outcome o;
  o.passed = drift.value <= scn.conservation.tolerance;
  o.summary = {{"scheme", to_string(tr.scheme)},
               {"dt", tr.dt},
               {"drift", drift.value},
               {"drift_is_absolute", drift.absolute},
               {"tolerance", scn.conservation.tolerance}};
  o.detail = "Hamiltonian drift " + fmt(drift.value) + " vs tolerance " + fmt(scn.conservation.tolerance);
  return o;
}

}  // namespace

void parallel_for(int n, int threads, const std::function<void(int)>& fn) {
  const int workers = std::max(1, std::min(threads, n));
  if (workers == 1) {
    for (int i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next++; i < n; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(error_mutex);
          if (!error) error = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
}

StateUV initial_state(const Grid2D& g, const InitialSettings& in) {
  switch (in.kind) {
    case InitialKind::Random:
      return {random_smooth_field(g, in.amplitude, in.max_mode, in.seed),
              random_smooth_field(g, in.amplitude, in.max_mode, in.seed + 7919), 0.0};
    case InitialKind::PlaneWave: {
      PhysicalField u(g);
      for (int q = 0; q < g.ny(); ++q)
        for (int p = 0; p < g.nx(); ++p)
          u.at(p, q) = in.amplitude * std::cos(2 * std::numbers::pi * (in.j * g.x(p) / g.lx() + in.k * g.y(q) / g.ly()));
      return {transform(u), SpectralField(g), 0.0};
    }
    case InitialKind::MassProfile: {
      PhysicalField u(g);
      for (int q = 0; q < g.ny(); ++q)
        for (int p = 0; p < g.nx(); ++p)
          u.at(p, q) = in.amplitude * std::cos(2 * std::numbers::pi * g.y(q) / g.ly()) *
                       (1 + std::cos(2 * std::numbers::pi * g.x(p) / g.lx())) / g.lx();
      return {transform(u), SpectralField(g), 0.0};
    }
  }
  throw std::logic_error("unhandled initial kind");
}

Outcome run_scenario(const Scenario& scn, const fs::path& out) {
  switch (scn.kind) {
    case ScenarioKind::Simulate:
      return simulate(scn, out);
    case ScenarioKind::DispersionTable:
      return dispersion_table(scn, out);
    case ScenarioKind::MassWave:
      return mass_wave(scn, out);
    case ScenarioKind::BourgainScaling:
      return scn.bourgain.kind == BourgainKind::Psi ? bourgain_psi(scn, out) : bourgain_duhamel(scn, out);
    case ScenarioKind::DnVerify:
      return dn_verify(scn, out);
    case ScenarioKind::Conservation:
      return conservation(scn, out);
  }
  throw std::logic_error("unhandled scenario");
}

json failure_json(const std::string& scenario, const std::string& reason, const json& t, const std::string& detail) {
  return {{"scenario", scenario}, {"reason", reason}, {"t", t}, {"detail", detail}};
}

int execute(const Scenario& scn, const fs::path& out, std::ostream& report) {
  const std::string name = to_string(scn.kind);
  std::optional<json> failure;
  try {
    fs::create_directories(out);
    Outcome o = run_scenario(scn, out);
    json summary = {{"scenario", name}, {"passed", o.passed}, {"results", o.summary}};
    write_json(out / "summary.json", summary);
    if (o.passed) {
      report << summary.dump() << '\n';
      return 0;
    }
    failure = failure_json(name, "tolerance", nullptr, o.detail);
  } catch (const BlowUpError& e) {
    failure = failure_json(name, "blow-up", e.time(), e.what());
  } catch (const ConfigError& e) {
    failure = failure_json(name, "config", nullptr, e.what());
  } catch (const std::exception& e) {
    failure = failure_json(name, "error", nullptr, e.what());
  }
  try {
    write_json(out / "failure.json", *failure);
  } catch (const std::exception&) {
  }
  report << failure->dump() << '\n';
  return 1;
}

}  // namespace nonkp::cli
