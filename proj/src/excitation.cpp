#include "oada/excitation.hpp"

#include <algorithm>
#include <stdexcept>

namespace oada {

Excitation Excitation::single(int p, int q) {
  if (p == q) throw std::invalid_argument("single excitation needs distinct indices");
  if (p < 0 || q < 0) throw std::out_of_range("negative excitation index");
  return {ExcitationKind::Single, {p, q, -1, -1}};
}

Excitation Excitation::double_(int p, int q, int r, int s) {
  std::array<int, 4> v{p, q, r, s};
  for (int a = 0; a < 4; ++a) {
    if (v[a] < 0) throw std::out_of_range("negative excitation index");
    for (int b = a + 1; b < 4; ++b)
      if (v[a] == v[b]) throw std::invalid_argument("double excitation needs distinct indices");
  }
  return {ExcitationKind::Double, v};
}

std::uint64_t Excitation::source_mask() const {
  if (is_single()) return std::uint64_t{1} << q();
  return (std::uint64_t{1} << r()) | (std::uint64_t{1} << s());
}

std::uint64_t Excitation::dest_mask() const {
  if (is_single()) return std::uint64_t{1} << p();
  return (std::uint64_t{1} << p()) | (std::uint64_t{1} << q());
}

int Excitation::max_index() const { return *std::max_element(idx.begin(), idx.end()); }

std::string Excitation::kind_name() const { return is_single() ? "single" : "double"; }

}  // namespace oada
