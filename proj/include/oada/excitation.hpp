#pragma once

#include <array>
#include <cstdint>
#include <string>

namespace oada {

enum class ExcitationKind { Single, Double };

/// A qubit excitation. Single{p, q} moves occupation q -> p; Double{p, q, r, s}
/// moves the pair (r, s) -> (p, q). The "source" pattern is the one with the
/// annihilated indices occupied, the "destination" the one with the created
/// indices occupied.
struct Excitation {
  ExcitationKind kind = ExcitationKind::Single;
  std::array<int, 4> idx{-1, -1, -1, -1};

  static Excitation single(int p, int q);
  static Excitation double_(int p, int q, int r, int s);

  bool is_single() const { return kind == ExcitationKind::Single; }
  int p() const { return idx[0]; }
  int q() const { return idx[1]; }
  int r() const { return idx[2]; }
  int s() const { return idx[3]; }

  /// Bits occupied in the source (resp. destination) pattern.
  std::uint64_t source_mask() const;
  std::uint64_t dest_mask() const;
  int max_index() const;

  /// "single" or "double".
  std::string kind_name() const;
  friend bool operator==(const Excitation&, const Excitation&) = default;
};

}  // namespace oada
