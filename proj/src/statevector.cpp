#include "oada/statevector.hpp"

#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>

namespace oada {

namespace {

constexpr Complex kIPowers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};

void check_excitation(const Statevector& s, const Excitation& e) {
  if (e.max_index() >= s.n_qubits())
    throw std::out_of_range("excitation index " + std::to_string(e.max_index()) +
                            " exceeds register of " + std::to_string(s.n_qubits()) + " qubits");
}

// Calls f(i_source, j_dest) for every basis pair coupled by the excitation.
template <typename F>
void for_each_pair(int n_qubits, const Excitation& e, F&& f) {
  const std::uint64_t src = e.source_mask();
  const std::uint64_t dst = e.dest_mask();
  const std::uint64_t all = (std::uint64_t{1} << n_qubits) - 1;
  const std::uint64_t free = all & ~(src | dst);
  std::uint64_t sub = 0;
  do {
    f(sub | src, sub | dst);
    sub = (sub - free) & free;
  } while (sub != 0);
}

void check_same_size(const Statevector& a, const Statevector& b) {
  if (a.n_qubits() != b.n_qubits()) throw std::invalid_argument("statevector size mismatch");
}

}  // namespace

Statevector::Statevector(int n_qubits) : n_qubits_(n_qubits) {
  if (n_qubits < 0 || n_qubits > kMaxQubits)
    throw std::invalid_argument("statevector supports 0.." + std::to_string(kMaxQubits) +
                                " qubits, requested " + std::to_string(n_qubits));
  amps_.assign(std::size_t{1} << n_qubits, Complex{});
}

Statevector Statevector::basis_state(int n_qubits, std::uint64_t index) {
  Statevector s(n_qubits);
  if (index >= s.dim()) throw std::out_of_range("basis index exceeds register");
  s[index] = 1.0;
  return s;
}

double Statevector::norm() const {
  double acc = 0.0;
  for (const auto& a : amps_) acc += std::norm(a);
  return std::sqrt(acc);
}

void Statevector::normalize() {
  const double n = norm();
  if (n == 0.0) throw std::domain_error("cannot normalize the zero vector");
  for (auto& a : amps_) a /= n;
}

std::uint64_t hf_occupation(int n_electrons) {
  return n_electrons >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_electrons) - 1;
}

Statevector prepare_hf(int n_qubits, int n_electrons) {
  if (n_electrons < 0 || n_electrons > n_qubits)
    throw std::invalid_argument("electron count exceeds qubit count");
  return Statevector::basis_state(n_qubits, hf_occupation(n_electrons));
}

void apply_excitation(Statevector& s, const Excitation& e, double theta) {
  check_excitation(s, e);
  if (theta == 0.0) return;
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  for_each_pair(s.n_qubits(), e, [&](std::uint64_t i, std::uint64_t j) {
    const Complex a = s[i];
    const Complex b = s[j];
    s[i] = c * a - sn * b;
    s[j] = c * b + sn * a;
  });
}

Statevector apply_generator(const Statevector& s, const Excitation& e) {
  check_excitation(s, e);
  Statevector out(s.n_qubits());
  for_each_pair(s.n_qubits(), e, [&](std::uint64_t i, std::uint64_t j) {
    out[j] = s[i];
    out[i] = -s[j];
  });
  return out;
}

Complex generator_element(const Statevector& bra, const Excitation& e, const Statevector& ket) {
  check_same_size(bra, ket);
  check_excitation(ket, e);
  Complex acc{};
  for_each_pair(ket.n_qubits(), e, [&](std::uint64_t i, std::uint64_t j) {
    acc += std::conj(bra[j]) * ket[i] - std::conj(bra[i]) * ket[j];
  });
  return acc;
}

std::vector<double> Ansatz::thetas() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.theta);
  return out;
}

void Ansatz::set_thetas(std::span<const double> thetas) {
  if (thetas.size() != entries.size()) throw std::invalid_argument("angle count mismatch");
  for (std::size_t k = 0; k < entries.size(); ++k) entries[k].theta = thetas[k];
}

Statevector apply_ansatz(const Ansatz& a, std::span<const double> thetas) {
  if (thetas.size() != a.entries.size()) throw std::invalid_argument("angle count mismatch");
  Statevector s = prepare_hf(a.n_qubits, a.n_electrons);
  for (std::size_t k = 0; k < a.entries.size(); ++k)
    apply_excitation(s, a.entries[k].excitation, thetas[k]);
  return s;
}

Statevector apply_ansatz(const Ansatz& a) { return apply_ansatz(a, a.thetas()); }

OperatorKernel::OperatorKernel(const QubitOperator& op) : n_qubits_(op.n_qubits()) {
  if (n_qubits_ > Statevector::kMaxQubits)
    throw std::invalid_argument("operator exceeds statevector qubit cap");
  std::map<std::uint64_t, std::vector<Term>> by_x;
  for (const auto& [s, c] : op.terms())
    by_x[s.x].push_back({s.z, c * kIPowers[s.y_count() % 4]});
  for (auto& [x, terms] : by_x) groups_.push_back({x, std::move(terms)});
}

Statevector OperatorKernel::apply(const Statevector& s) const {
  if (s.n_qubits() != n_qubits_) throw std::invalid_argument("qubit-count mismatch");
  std::vector<std::uint64_t> support;
  for (std::uint64_t i = 0; i < s.dim(); ++i)
    if (s[i] != Complex{}) support.push_back(i);
  Statevector out(n_qubits_);
  for (const auto& g : groups_) {
    for (const std::uint64_t i : support) {
      Complex d{};
      for (const auto& t : g.terms)
        d += (std::popcount(i & t.z) & 1) ? -t.coeff : t.coeff;
      out[i ^ g.x] += d * s[i];
    }
  }
  return out;
}

Statevector apply_operator(const QubitOperator& op, const Statevector& s) {
  return OperatorKernel(op).apply(s);
}

Complex overlap(const Statevector& a, const Statevector& b) {
  check_same_size(a, b);
  Complex acc{};
  for (std::size_t i = 0; i < a.dim(); ++i) acc += std::conj(a[i]) * b[i];
  return acc;
}

double expectation(const Statevector& s, const OperatorKernel& h) {
  const Complex e = overlap(s, h.apply(s));
  if (std::abs(e.imag()) > 1e-10)
    throw std::domain_error("expectation has imaginary part " + std::to_string(e.imag()) +
                            "; operator is not hermitian");
  return e.real();
}

double expectation(const Statevector& s, const QubitOperator& h) {
  return expectation(s, OperatorKernel(h));
}

ValueAndGradient energy_and_gradient(const Ansatz& a, std::span<const double> thetas,
                                     const OperatorKernel& h) {
  Statevector phi = apply_ansatz(a, thetas);
  Statevector lambda = h.apply(phi);
  ValueAndGradient out;
  const Complex e = overlap(phi, lambda);
  if (std::abs(e.imag()) > 1e-10) throw std::domain_error("non-hermitian Hamiltonian");
  out.value = e.real();
  out.gradient.assign(a.size(), 0.0);
  for (std::size_t k = a.size(); k-- > 0;) {
    const Excitation& ex = a.entries[k].excitation;
    out.gradient[k] = 2.0 * generator_element(lambda, ex, phi).real();
    if (k == 0) break;
    apply_excitation(phi, ex, -thetas[k]);
    apply_excitation(lambda, ex, -thetas[k]);
  }
  return out;
}

ValueAndGradient energy_and_gradient(const Ansatz& a, const OperatorKernel& h) {
  const auto t = a.thetas();
  return energy_and_gradient(a, t, h);
}

ValueAndGradient overlap_and_gradient(const Ansatz& a, std::span<const double> thetas,
                                      const Statevector& target) {
  Statevector phi = apply_ansatz(a, thetas);
  check_same_size(phi, target);
  Statevector lambda = target;
  const Complex c = overlap(target, phi);
  ValueAndGradient out;
  out.value = std::norm(c);
  out.gradient.assign(a.size(), 0.0);
  for (std::size_t k = a.size(); k-- > 0;) {
    const Excitation& ex = a.entries[k].excitation;
    out.gradient[k] = 2.0 * (std::conj(c) * generator_element(lambda, ex, phi)).real();
    if (k == 0) break;
    apply_excitation(phi, ex, -thetas[k]);
    apply_excitation(lambda, ex, -thetas[k]);
  }
  return out;
}

ValueAndGradient overlap_and_gradient(const Ansatz& a, const Statevector& target) {
  const auto t = a.thetas();
  return overlap_and_gradient(a, t, target);
}

}  // namespace oada
