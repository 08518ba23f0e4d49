#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "oada/excitation.hpp"
#include "oada/pauli.hpp"

namespace oada {

/// Dense amplitude vector over 2^N basis states; bit k of a basis index is
/// the occupation of spin orbital k.
class Statevector {
 public:
  static constexpr int kMaxQubits = 24;

  /// Zero vector.
  explicit Statevector(int n_qubits = 0);
  static Statevector basis_state(int n_qubits, std::uint64_t index);

  int n_qubits() const { return n_qubits_; }
  std::size_t dim() const { return amps_.size(); }
  Complex& operator[](std::size_t i) { return amps_[i]; }
  const Complex& operator[](std::size_t i) const { return amps_[i]; }
  std::span<Complex> amplitudes() { return amps_; }
  std::span<const Complex> amplitudes() const { return amps_; }

  double norm() const;
  void normalize();

 private:
  int n_qubits_;
  std::vector<Complex> amps_;
};

/// Closed-shell reference: the lowest n_electrons bits occupied.
std::uint64_t hf_occupation(int n_electrons);
Statevector prepare_hf(int n_qubits, int n_electrons);

/// In-place exp(theta T) for the qubit-excitation generator T: a Givens
/// rotation between each source-pattern amplitude a and its destination
/// partner b, (a, b) -> (cos a - sin b, cos b + sin a).
void apply_excitation(Statevector& s, const Excitation& e, double theta);

/// T|psi>.
Statevector apply_generator(const Statevector& s, const Excitation& e);

/// <bra|T|ket> without materializing T|ket>.
Complex generator_element(const Statevector& bra, const Excitation& e, const Statevector& ket);

struct AnsatzEntry {
  int op_id = -1;
  Excitation excitation;
  double theta = 0.0;
};

/// Ordered product of excitation evolutions on the Hartree-Fock state;
/// entries[0] acts first.
struct Ansatz {
  int n_qubits = 0;
  int n_electrons = 0;
  std::vector<AnsatzEntry> entries;

  std::size_t size() const { return entries.size(); }
  std::uint64_t reference() const { return hf_occupation(n_electrons); }
  std::vector<double> thetas() const;
  void set_thetas(std::span<const double> thetas);
};

Statevector apply_ansatz(const Ansatz& a);
/// Same ansatz with the angles replaced by `thetas`.
Statevector apply_ansatz(const Ansatz& a, std::span<const double> thetas);

/// A QubitOperator grouped by X-mask for repeated application to states.
class OperatorKernel {
 public:
  explicit OperatorKernel(const QubitOperator& op);

  int n_qubits() const { return n_qubits_; }
  /// op|s>. Only basis states with nonzero amplitude are visited.
  Statevector apply(const Statevector& s) const;

 private:
  struct Term {
    std::uint64_t z;
    Complex coeff;  // includes the i^{#Y} factor
  };
  struct Group {
    std::uint64_t x;
    std::vector<Term> terms;
  };
  int n_qubits_;
  std::vector<Group> groups_;
};

Statevector apply_operator(const QubitOperator& op, const Statevector& s);

/// <s|H|s>. Throws if the imaginary residue exceeds 1e-10 (non-hermitian H).
double expectation(const Statevector& s, const OperatorKernel& h);
double expectation(const Statevector& s, const QubitOperator& h);

/// <a|b>.
Complex overlap(const Statevector& a, const Statevector& b);

struct ValueAndGradient {
  double value = 0.0;
  std::vector<double> gradient;
};

/// E(theta) = <psi|H|psi> and dE/dtheta_k by a reverse sweep:
/// dE/dtheta_k = 2 Re <lambda_k| T_k |psi_k>.
ValueAndGradient energy_and_gradient(const Ansatz& a, std::span<const double> thetas,
                                     const OperatorKernel& h);
ValueAndGradient energy_and_gradient(const Ansatz& a, const OperatorKernel& h);

/// F(theta) = |<target|psi>|^2 and its gradient by the same reverse sweep.
ValueAndGradient overlap_and_gradient(const Ansatz& a, std::span<const double> thetas,
                                      const Statevector& target);
ValueAndGradient overlap_and_gradient(const Ansatz& a, const Statevector& target);

}  // namespace oada
