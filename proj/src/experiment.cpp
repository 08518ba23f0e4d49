#include "oada/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

namespace oada {

namespace {

constexpr const char* kMethods[] = {"adapt",           "overlap-adapt-fci",
                                    "overlap-adapt-cipsi", "overlap-adapt-ansatz",
                                    "cipsi",           "fci"};

void write_file(const std::string& path, const std::string& text) {
  if (path.empty()) return;
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path + " for writing");
  out << text;
}

std::string fmt(double v, const char* spec = "%.12e") {
  char buf[48];
  std::snprintf(buf, sizeof buf, spec, v);
  return buf;
}

std::string cipsi_csv(const std::vector<CipsiState>& history, std::optional<double> e_fci) {
  std::ostringstream out;
  out << "iter,ndets,e_var,e_pt2,e_cipsi,error_vs_fci\n";
  for (const auto& s : history)
    out << s.iteration << ',' << s.reference.size() << ',' << fmt(s.e_var) << ','
        << fmt(s.e_pt2) << ',' << fmt(s.e_cipsi()) << ','
        << fmt(e_fci ? s.e_var - *e_fci : std::numeric_limits<double>::quiet_NaN()) << '\n';
  return out.str();
}

}  // namespace

void ExperimentConfig::validate() const {
  bool known = false;
  for (const char* m : kMethods) known |= method == m;
  if (!known) throw ConfigError("unknown method '" + method + "'");
  if (fcidump.empty()) throw ConfigError("missing fcidump path");
  if (p_total <= 0) throw ConfigError("p_total must be positive");
  if (method.starts_with("overlap-adapt")) {
    if (p_overlap <= 0) throw ConfigError("p_overlap must be positive");
    if (p_overlap > p_total) throw ConfigError("p_overlap exceeds p_total");
    if (rounds <= 0) throw ConfigError("rounds must be positive");
  }
  if (method == "overlap-adapt-ansatz" && p_target <= 0)
    throw ConfigError("p_target must be positive");
  if (method == "overlap-adapt-cipsi" && cipsi_max_dets == 0 && cipsi_target_e2 <= 0.0)
    throw ConfigError("overlap-adapt-cipsi needs cipsi_max_dets or cipsi_target_e2");
  if (method == "cipsi" && cipsi_max_dets == 0 && cipsi_target_e2 <= 0.0)
    throw ConfigError("cipsi needs cipsi_max_dets or cipsi_target_e2");
  if (gtol <= 0.0 || eps <= 0.0 || gtol_overlap <= 0.0)
    throw ConfigError("tolerances must be positive");
  if (restarts < 0) throw ConfigError("restarts must be non-negative");
}

std::string dump_state(const Statevector& s, double cutoff) {
  std::ostringstream out;
  for (std::size_t i = 0; i < s.dim(); ++i)
    if (std::abs(s[i]) > cutoff)
      out << i << ' ' << fmt(s[i].real(), "%.17g") << ' ' << fmt(s[i].imag(), "%.17g") << '\n';
  return out.str();
}

std::string gnuplot_script(const std::string& csv_path, const std::string& title) {
  std::ostringstream out;
  out << "set datafile separator ','\n"
      << "set logscale y\n"
      << "set xlabel 'parameters'\n"
      << "set ylabel '|E - E_FCI| (Ha)'\n"
      << "set title '" << title << "'\n"
      << "set arrow from graph 0, first 1e-3 to graph 1, first 1e-3 nohead dashtype 2\n"
      << "plot '" << csv_path << "' using 7:(abs($6)) every ::1 with linespoints title '"
      << title << "'\n";
  return out.str();
}

ExperimentOutcome run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const FcidumpData data = read_fcidump(cfg.fcidump);
  const MolecularHamiltonian mol = to_spin_orbital(data);
  const int nq = mol.n_spin_orbitals;

  ExperimentOutcome out;
  std::optional<FciResult> fci;
  try {
    fci = fci_ground_state(mol);
    out.e_fci = fci->energy;
  } catch (const std::length_error&) {
    if (cfg.method == "fci" || cfg.method == "overlap-adapt-fci") throw;
    out.e_fci = data.ref_fci;
  }
  auto error_text = [&](double e) {
    return out.e_fci ? fmt(e - *out.e_fci, "%.3e") : std::string("nan");
  };

  if (cfg.method == "fci") {
    out.energy = fci->energy;
    out.state = export_statevector(fci->wavefunction, nq);
    out.summary = "method=fci energy=" + fmt(out.energy, "%.12f") +
                  " dimension=" + std::to_string(fci->dimension);
    if (data.ref_fci) out.summary += " ref_fci=" + fmt(*data.ref_fci, "%.12f");
    write_file(cfg.state_path, dump_state(out.state));
    return out;
  }

  CipsiOptions cipsi_opt;
  cipsi_opt.target_e2 = cfg.cipsi_target_e2;
  if (cfg.cipsi_max_dets > 0) cipsi_opt.max_dets = cfg.cipsi_max_dets;

  if (cfg.method == "cipsi") {
    std::vector<CipsiState> history;
    const CipsiState final_state = run_cipsi(mol, cipsi_opt, &history);
    out.energy = final_state.e_var;
    out.trace_csv = cipsi_csv(history, out.e_fci);
    out.state = export_statevector(final_state.wavefunction(), nq);
    out.summary = "method=cipsi e_var=" + fmt(final_state.e_var, "%.12f") +
                  " e_pt2=" + fmt(final_state.e_pt2, "%.6e") +
                  " ndets=" + std::to_string(final_state.reference.size()) +
                  " error_vs_fci=" + error_text(out.energy);
    write_file(cfg.trace_path, out.trace_csv);
    write_file(cfg.state_path, dump_state(out.state));
    return out;
  }

  const QubitOperator hq = jw_hamiltonian(mol);
  const OperatorKernel h(hq);
  const auto pool = build_pool(nq, mol.n_electrons);
  write_file(cfg.pool_path, dump_pool(pool));

  MinimizeOptions minimize;
  minimize.gtol = cfg.gtol;
  minimize.restarts = cfg.restarts;
  minimize.seed = cfg.seed;

  AdaptOptions adapt;
  adapt.eps = cfg.eps;
  adapt.max_ops = cfg.p_total;
  adapt.minimize = minimize;
  adapt.e_fci = out.e_fci;

  AdaptResult final_result;
  if (cfg.method == "adapt") {
    final_result = run_adapt(h, pool, Ansatz{nq, mol.n_electrons, {}}, adapt);
  } else {
    PipelineOptions po;
    po.source = cfg.method == "overlap-adapt-fci"     ? TargetSource::Fci
                : cfg.method == "overlap-adapt-cipsi" ? TargetSource::Cipsi
                                                      : TargetSource::AdaptAnsatz;
    po.p_overlap = cfg.p_overlap;
    po.p_total = cfg.p_total;
    po.p_target = cfg.p_target;
    po.rounds = cfg.rounds;
    po.adapt = adapt;
    po.overlap.gtol_overlap = cfg.gtol_overlap;
    po.overlap.minimize = minimize;
    po.cipsi = cipsi_opt;
    PipelineResult pr = po.source == TargetSource::Fci
                            ? pipeline(mol, h, pool, export_statevector(fci->wavefunction, nq), po)
                            : pipeline(mol, h, pool, po);
    for (const auto& round : pr.overlap_rounds) out.overlap_csv += round.trace.to_csv();
    final_result = pr.last();
  }

  out.trace_csv = final_result.trace.to_csv();
  out.energy = final_result.energy;
  out.state = apply_ansatz(final_result.ansatz);
  out.resources = count_resources(final_result.ansatz);
  out.params = static_cast<int>(final_result.ansatz.size());
  out.summary = "method=" + cfg.method + " energy=" + fmt(out.energy, "%.12f") +
                " error_vs_fci=" + error_text(out.energy) +
                " params=" + std::to_string(out.params) +
                " SQ=" + std::to_string(out.resources.singles) +
                " DQ=" + std::to_string(out.resources.doubles) +
                " CNOT=" + std::to_string(out.resources.cnots());

  write_file(cfg.trace_path, out.trace_csv);
  write_file(cfg.overlap_trace_path, out.overlap_csv);
  write_file(cfg.state_path, dump_state(out.state));
  if (!cfg.gnuplot_path.empty())
    write_file(cfg.gnuplot_path,
               gnuplot_script(cfg.trace_path.empty() ? "trace.csv" : cfg.trace_path, cfg.method));
  return out;
}

}  // namespace oada
