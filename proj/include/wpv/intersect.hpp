#pragma once

// Mixed intersection numbers <kappa_1^{k0} tau_{d_1} ... tau_{d_n}>_g.

#include <atomic>
#include <filesystem>
#include <map>
#include <shared_mutex>
#include <vector>

#include "wpv/rational.hpp"

namespace wpv::intersect {

struct BracketKey {
  int g = 0;
  int kappa = 0;
  std::vector<int> psi;  // sorted descending, nonempty

  /// Sorts psi and validates. Throws std::invalid_argument on negative
  /// entries, an empty psi list or an unstable (g, n).
  static BracketKey make(int g, int kappa, std::vector<int> psi);

  int n() const { return static_cast<int>(psi.size()); }
  int dim() const { return 3 * g - 3 + n(); }
  /// kappa + sum psi == 3g - 3 + n
  bool gate() const;

  /// Throws std::invalid_argument unless canonical and stable.
  void validate() const;

  friend auto operator<=>(const BracketKey&, const BracketKey&) = default;
};

std::string to_string(const BracketKey& key);

class IntersectionEngine {
 public:
  /// Zero off the dimension gate; seeded at (0,3) and (1,1); otherwise the
  /// recursion with the largest psi index distinguished. Throws
  /// std::invalid_argument for non-canonical or unstable keys.
  Rational bracket(const BracketKey& key);

  /// The same recursion evaluated once with psi[idx] as the distinguished
  /// insertion (sub-brackets use the default choice). Seeds are returned as is.
  Rational bracket_with_distinguished(const BracketKey& key, std::size_t idx);

  /// Brackets evaluated by the recursion since construction (cache hits,
  /// seeds and gate zeros are not counted).
  std::size_t computed() const { return computed_.load(); }
  std::size_t cached() const;

  /// JSON lines: one header line, then {"g","kappa","psi","value"} per entry.
  void save_cache(const std::filesystem::path& path) const;
  /// Returns the number of entries loaded. Throws std::runtime_error when the
  /// header is missing, its checksum is wrong or the convention differs.
  std::size_t load_cache(const std::filesystem::path& path);

 private:
  Rational evaluate(const BracketKey& key, std::size_t idx);

  mutable std::shared_mutex mutex_;
  std::map<BracketKey, Rational> memo_;
  std::atomic<std::size_t> computed_{0};
};

/// Convention tag written into cache headers.
extern const char* const kCacheConvention;

/// Genus-0 pure psi bracket from the string equation alone. Throws
/// std::invalid_argument when psi fails the genus-0 gate or has n < 3.
Rational genus0_string_oracle(std::vector<int> psi);

/// m! sum over {r_j}, sum r_j (j-1) = m, of prod c_j^{r_j}/r_j! times the pure
/// psi bracket <prod tau_{d_i} prod tau_j^{r_j}>_g. Zero off the gate.
Rational kappa_from_psi(IntersectionEngine& engine, int m, const std::vector<int>& psi, int g);

}  // namespace wpv::intersect
