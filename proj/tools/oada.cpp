#include <cstdio>
#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "oada/experiment.hpp"
#include "oada/parallel.hpp"
#include "verify.hpp"

using namespace oada;

namespace {

enum Exit { kOk = 0, kFailure = 1, kConfig = 2, kParse = 3, kDimension = 4, kNumeric = 5 };

// Fills every `run` option the command line left unset from a key=value file.
void apply_config(CLI::App& run, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path);
  for (const auto& item : CLI::ConfigINI().from_config(in)) {
    if (item.name == "++" || item.name == "--") continue;
    CLI::Option* opt = run.get_option_no_throw("--" + item.name);
    if (opt == nullptr || item.name == "config")
      throw ConfigError("unknown config key '" + item.fullname() + "'");
    if (opt->count() > 0) continue;
    opt->add_result(item.inputs);
    opt->run_callback();
  }
}

int fail(int code, const char* cls, const std::string& what) {
  std::cerr << "oada: " << cls << ": " << what << '\n';
  return code;
}

template <class F>
int guarded(F&& body) {
  try {
    return body();
  } catch (const ConfigError& e) {
    return fail(kConfig, "config error", e.what());
  } catch (const FcidumpError& e) {
    return fail(kParse, "parse error", e.what());
  } catch (const std::length_error& e) {
    return fail(kDimension, "dimension cap", e.what());
  } catch (const std::domain_error& e) {
    return fail(kNumeric, "numerical error", e.what());
  } catch (const std::exception& e) {
    return fail(kFailure, "error", e.what());
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Adaptive VQE and selected-CI experiments on FCIDUMP Hamiltonians"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: OADA_THREADS or all cores)");

  ExperimentConfig cfg;
  auto* run = app.add_subcommand("run", "run an experiment and write its traces");
  std::string config_path;
  run->add_option("--config", config_path, "key=value configuration file; flags override it");
  run->add_option("--fcidump", cfg.fcidump, "Hamiltonian in FCIDUMP format");
  run->add_option("--method", cfg.method,
                  "adapt | overlap-adapt-fci | overlap-adapt-cipsi | overlap-adapt-ansatz | cipsi | fci");
  run->add_option("--p-total,--max-ops", cfg.p_total, "operator budget of the final ansatz");
  run->add_option("--p-overlap", cfg.p_overlap, "operators grown by overlap maximization");
  run->add_option("--p-target", cfg.p_target, "size of the ADAPT ansatz used as target");
  run->add_option("--rounds", cfg.rounds, "repeated compression rounds");
  run->add_option("--gtol", cfg.gtol, "BFGS gradient tolerance");
  run->add_option("--eps", cfg.eps, "ADAPT gradient threshold");
  run->add_option("--gtol-overlap", cfg.gtol_overlap, "Overlap-ADAPT gradient threshold");
  run->add_option("--cipsi-max-dets", cfg.cipsi_max_dets, "CIPSI reference size cap");
  run->add_option("--cipsi-target-e2", cfg.cipsi_target_e2, "CIPSI |E2| stop");
  run->add_option("--restarts", cfg.restarts, "perturbed optimizer restarts");
  run->add_option("--seed", cfg.seed, "seed for restart perturbations");
  run->add_option("--trace", cfg.trace_path, "trace CSV output");
  run->add_option("--overlap-trace", cfg.overlap_trace_path, "overlap phase CSV output");
  run->add_option("--dump-state", cfg.state_path, "final state as 'index re im' lines");
  run->add_option("--dump-pool", cfg.pool_path, "operator pool listing");
  run->add_option("--gnuplot", cfg.gnuplot_path, "gnuplot script for the trace");

  std::string fcidump;
  auto* fci = app.add_subcommand("fci", "exact ground energy in the FCIDUMP sector");
  fci->add_option("--fcidump", fcidump)->required();

  std::size_t max_dets = 0;
  double target_e2 = 0.0;
  std::string dets_out;
  auto* cipsi = app.add_subcommand("run-cipsi", "CIPSI with determinant export");
  cipsi->add_option("--fcidump", fcidump)->required();
  cipsi->add_option("--max-dets", max_dets, "reference size cap");
  cipsi->add_option("--target-e2", target_e2, "|E2| stop");
  cipsi->add_option("--out", dets_out, "determinant file");

  auto* pool_cmd = app.add_subcommand("dump-pool", "list the qubit-excitation pool");
  pool_cmd->add_option("--fcidump", fcidump)->required();

  auto* ham_cmd = app.add_subcommand("dump-hamiltonian", "print the Jordan-Wigner Hamiltonian");
  ham_cmd->add_option("--fcidump", fcidump)->required();

  unsigned seed = 7;
  auto* verify = app.add_subcommand("verify", "check invariants on a fixture");
  verify->add_option("--fcidump", fcidump)->required();
  verify->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);
  if (threads > 0) set_num_threads(threads);

  if (*run) {
    return guarded([&] {
      if (!config_path.empty()) apply_config(*run, config_path);
      const auto out = run_experiment(cfg);
      if (cfg.trace_path.empty() && !out.trace_csv.empty()) std::cout << out.trace_csv;
      std::cout << out.summary << '\n';
      return kOk;
    });
  }
  if (*fci) {
    return guarded([&] {
      const auto data = read_fcidump(fcidump);
      const auto res = fci_ground_state(to_spin_orbital(data));
      std::printf("E_FCI = %.12f  dimension = %zu\n", res.energy, res.dimension);
      if (data.ref_fci) std::printf("REF_FCI = %.12f  diff = %.3e\n", *data.ref_fci,
                                    res.energy - *data.ref_fci);
      return kOk;
    });
  }
  if (*cipsi) {
    return guarded([&] {
      if (max_dets == 0 && target_e2 <= 0.0)
        throw ConfigError("run-cipsi needs --max-dets or --target-e2");
      const auto data = read_fcidump(fcidump);
      const auto mol = to_spin_orbital(data);
      CipsiOptions opt;
      opt.target_e2 = target_e2;
      if (max_dets > 0) opt.max_dets = max_dets;
      std::vector<CipsiState> history;
      const auto final_state = run_cipsi(mol, opt, &history);
      for (const auto& s : history)
        std::printf("iter %d  ndets %zu  E_var %.12f  E2 %.6e  E_CIPSI %.12f\n", s.iteration,
                    s.reference.size(), s.e_var, s.e_pt2, s.e_cipsi());
      if (!dets_out.empty()) {
        std::ofstream f(dets_out);
        if (!f) throw std::runtime_error("cannot open " + dets_out);
        f << write_determinants(final_state.wavefunction(), data.norb, data.nelec);
      }
      return kOk;
    });
  }
  if (*pool_cmd) {
    return guarded([&] {
      const auto mol = to_spin_orbital(read_fcidump(fcidump));
      std::cout << dump_pool(build_pool(mol.n_spin_orbitals, mol.n_electrons));
      return kOk;
    });
  }
  if (*ham_cmd) {
    return guarded([&] {
      std::cout << jw_hamiltonian(to_spin_orbital(read_fcidump(fcidump))).dump();
      return kOk;
    });
  }
  if (*verify) {
    return guarded([&] { return verify_fixture(fcidump, seed) == 0 ? kOk : kFailure; });
  }
  return kOk;
}
