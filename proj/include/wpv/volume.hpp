#pragma once

// Normalized Weil-Petersson volume polynomials
//   v_{g,n}(L) = Vol_{g,n}(2 pi L) / (2^d pi^{2d}),   d = 3g - 3 + n,
// computed by the kernel recursion with boundary 1 distinguished.

#include <atomic>
#include <map>
#include <shared_mutex>
#include <vector>

#include "wpv/even_poly.hpp"

namespace wpv::volume {

struct VolKey {
  int g = 0;
  int n = 1;

  VolKey() = default;
  /// Throws std::invalid_argument unless g >= 0, n >= 1 and 2g - 2 + n > 0.
  VolKey(int g_, int n_);

  int dim() const { return 3 * g - 3 + n; }
  friend auto operator<=>(const VolKey&, const VolKey&) = default;
};

class VolumeEngine {
 public:
  /// v_{g,n} in q_1..q_n (no P).
  EvenPoly v_poly(const VolKey& key);
  /// Vol_{g,n} in q_1..q_n and P = pi^2.
  EvenPoly vol_poly(const VolKey& key);

  /// Number of (g, n) cells evaluated by the recursion so far (seeds excluded).
  std::size_t computed() const { return computed_.load(); }

 private:
  EvenPoly compute(const VolKey& key);

  std::shared_mutex mutex_;
  std::map<VolKey, EvenPoly> memo_;
  std::atomic<std::size_t> computed_{0};
};

/// monomial c q^e of v maps to 2^d c / 4^{|e|} q^e P^{d - |e|}.
EvenPoly to_vol(const EvenPoly& v, int d);

struct VolumeRow {
  VolKey key;
  EvenPoly v;
  EvenPoly vol;
};

/// All stable (g, n), n >= 1, with 3g - 3 + n <= d_max, ordered by d then g.
std::vector<VolumeRow> volume_table(VolumeEngine& engine, int d_max);

}  // namespace wpv::volume
