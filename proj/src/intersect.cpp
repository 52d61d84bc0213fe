#include "wpv/intersect.hpp"

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <functional>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "wpv/numkit.hpp"

namespace wpv::intersect {

const char* const kCacheConvention = "kappa1-psi;double-factorial-recursion;beta-sqrt2s-over-sin;v1";

namespace {

constexpr const char* kCacheFormat = "wpv-bracket-cache";

bool stable(int g, int n) { return g >= 0 && n >= 1 && 2 * g - 2 + n > 0; }

std::string fnv1a_hex(const std::string& text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

std::string header_checksum(const std::string& format, const std::string& convention) {
  return fnv1a_hex(format + "|" + convention);
}

Rational dfact(int n) { return Rational(numkit::double_factorial(n)); }

// k0! / (a! b!)
Rational kappa_multinomial(int k0, int a, int b = 0) {
  return Rational(factorial(k0)) / Rational(factorial(a) * factorial(b));
}

BigInt binomial(int n, int k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return r;
}

std::vector<int> counts_of(const std::vector<int>& psi) {
  std::vector<int> cnt;
  for (int d : psi) {
    if (d >= static_cast<int>(cnt.size())) cnt.resize(static_cast<std::size_t>(d) + 1, 0);
    ++cnt[static_cast<std::size_t>(d)];
  }
  return cnt;
}

std::vector<int> expand(const std::vector<int>& cnt) {
  std::vector<int> psi;
  for (int i = static_cast<int>(cnt.size()) - 1; i >= 0; --i)
    psi.insert(psi.end(), static_cast<std::size_t>(cnt[static_cast<std::size_t>(i)]), i);
  return psi;
}

}  // namespace

BracketKey BracketKey::make(int g, int kappa, std::vector<int> psi) {
  std::sort(psi.begin(), psi.end(), std::greater<>());
  BracketKey key{g, kappa, std::move(psi)};
  key.validate();
  return key;
}

bool BracketKey::gate() const {
  return kappa + std::accumulate(psi.begin(), psi.end(), 0) == dim();
}

void BracketKey::validate() const {
  if (g < 0) throw std::invalid_argument("genus must be nonnegative");
  if (kappa < 0) throw std::invalid_argument("kappa power must be nonnegative");
  if (psi.empty()) throw std::invalid_argument("psi list must be nonempty (n >= 1)");
  if (psi.back() < 0) throw std::invalid_argument("psi exponents must be nonnegative");
  if (!std::is_sorted(psi.begin(), psi.end(), std::greater<>()))
    throw std::invalid_argument("psi list is not canonical (sorted descending)");
  if (!stable(g, n()))
    throw std::invalid_argument("unstable (g, n) = (" + std::to_string(g) + ", " + std::to_string(n()) +
                                "): need 2g - 2 + n > 0");
}

std::string to_string(const BracketKey& key) {
  std::string out = "<";
  if (key.kappa > 0) out += "k1^" + std::to_string(key.kappa) + " ";
  for (std::size_t i = 0; i < key.psi.size(); ++i) {
    if (i) out += " ";
    out += "t" + std::to_string(key.psi[i]);
  }
  return out + ">_" + std::to_string(key.g);
}

Rational IntersectionEngine::bracket(const BracketKey& key) {
  key.validate();
  if (!key.gate()) return 0;
  if (key.g == 0 && key.n() == 3) return 1;
  if (key.g == 1 && key.n() == 1) return make_rational(1, 24);
  {
    std::shared_lock lock(mutex_);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  }
  Rational value = evaluate(key, 0);
  computed_.fetch_add(1);
  std::unique_lock lock(mutex_);
  return memo_.try_emplace(key, std::move(value)).first->second;
}

Rational IntersectionEngine::bracket_with_distinguished(const BracketKey& key, std::size_t idx) {
  key.validate();
  if (idx >= key.psi.size()) throw std::out_of_range("distinguished index out of range");
  if (!key.gate()) return 0;
  if ((key.g == 0 && key.n() == 3) || (key.g == 1 && key.n() == 1)) return bracket(key);
  return evaluate(key, idx);
}

Rational IntersectionEngine::evaluate(const BracketKey& key, std::size_t idx) {
  const int g = key.g, k0 = key.kappa;
  const int k = key.psi[idx];
  std::vector<int> rest = key.psi;
  rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(idx));
  const std::vector<int> cnt = counts_of(rest);

  auto sub = [this](int sg, int skappa, std::vector<int> psi) -> Rational {
    if (!stable(sg, static_cast<int>(psi.size()))) return 0;
    return bracket(BracketKey::make(sg, skappa, std::move(psi)));
  };

  Rational total = 0;
  const Rational half = make_rational(1, 2);

  // Non-separating: a node splits tau_k into two insertions one genus lower.
  if (g >= 1) {
    for (int d0 = 0; d0 <= k0; ++d0) {
      const int rem = k0 + k - 2 - d0;
      for (int d1 = 0; d1 <= rem; ++d1) {
        const int d2 = rem - d1;
        auto psi = rest;
        psi.push_back(d1);
        psi.push_back(d2);
        Rational b = sub(g - 1, d0, std::move(psi));
        if (b == 0) continue;
        total += half * kappa_multinomial(k0, d0) * numkit::beta_coeff(k0 - d0) * dfact(2 * d1 + 1) *
                 dfact(2 * d2 + 1) * b;
      }
    }
  }

  // Separating: ordered splits of the remaining insertions and of the genus.
  std::vector<int> l(cnt.size(), 0);
  std::function<void(std::size_t)> walk = [&](std::size_t i) {
    if (i < cnt.size()) {
      for (l[i] = 0; l[i] <= cnt[i]; ++l[i]) walk(i + 1);
      return;
    }
    std::vector<int> m(cnt.size());
    BigInt mult = 1;
    int size_l = 0, sum_l = 0, size_m = 0, sum_m = 0;
    for (std::size_t a = 0; a < cnt.size(); ++a) {
      m[a] = cnt[a] - l[a];
      mult *= binomial(cnt[a], l[a]);
      size_l += l[a];
      size_m += m[a];
      sum_l += static_cast<int>(a) * l[a];
      sum_m += static_cast<int>(a) * m[a];
    }
    const auto left = expand(l), right = expand(m);
    for (int g1 = 0; g1 <= g; ++g1) {
      const int g2 = g - g1, n1 = size_l + 1, n2 = size_m + 1;
      if (!stable(g1, n1) || !stable(g2, n2)) continue;
      const int D1 = 3 * g1 - 3 + n1, D2 = 3 * g2 - 3 + n2;
      for (int d0 = 0; d0 <= k0; ++d0)
        for (int e0 = 0; d0 + e0 <= k0; ++e0) {
          const int d1 = D1 - d0 - sum_l, e1 = D2 - e0 - sum_m;
          if (d1 < 0 || e1 < 0) continue;
          auto pl = left;
          pl.push_back(d1);
          Rational b1 = sub(g1, d0, std::move(pl));
          if (b1 == 0) continue;
          auto pr = right;
          pr.push_back(e1);
          Rational b2 = sub(g2, e0, std::move(pr));
          if (b2 == 0) continue;
          total += half * kappa_multinomial(k0, d0, e0) * numkit::beta_coeff(k0 - d0 - e0) *
                   dfact(2 * d1 + 1) * dfact(2 * e1 + 1) * Rational(mult) * b1 * b2;
        }
    }
  };
  walk(0);

  // Joining tau_k with one of the other insertions tau_j.
  for (std::size_t j = 0; j < cnt.size(); ++j) {
    if (cnt[j] == 0) continue;
    const int jj = static_cast<int>(j);
    for (int d0 = 0; d0 <= k0; ++d0) {
      const int d1 = k0 + k + jj - 1 - d0;
      if (d1 < 0) continue;
      auto c = cnt;
      --c[j];
      auto psi = expand(c);
      psi.push_back(d1);
      Rational b = sub(g, d0, std::move(psi));
      if (b == 0) continue;
      total += kappa_multinomial(k0, d0) * numkit::beta_coeff(k0 - d0) * dfact(2 * d1 + 1) / dfact(2 * jj - 1) *
               cnt[j] * b;
    }
  }

  return total / dfact(2 * k + 1);
}

std::size_t IntersectionEngine::cached() const {
  std::shared_lock lock(mutex_);
  return memo_.size();
}

void IntersectionEngine::save_cache(const std::filesystem::path& path) const {
  using nlohmann::ordered_json;
  std::shared_lock lock(mutex_);
  const auto tmp = std::filesystem::path(path.string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write cache file " + tmp.string());
    ordered_json header{{"format", kCacheFormat},
                        {"convention", kCacheConvention},
                        {"checksum", header_checksum(kCacheFormat, kCacheConvention)}};
    out << header.dump() << "\n";
    for (const auto& [key, value] : memo_) {
      ordered_json row{{"g", key.g}, {"kappa", key.kappa}, {"psi", key.psi}, {"value", wpv::to_string(value)}};
      out << row.dump() << "\n";
    }
    if (!out) throw std::runtime_error("failed writing cache file " + tmp.string());
  }
  std::filesystem::rename(tmp, path);
}

std::size_t IntersectionEngine::load_cache(const std::filesystem::path& path) {
  using nlohmann::json;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read cache file " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("cache file has no header");
  json header = json::parse(line, nullptr, false);
  if (header.is_discarded() || !header.is_object() || !header.contains("format") ||
      !header.contains("convention") || !header.contains("checksum"))
    throw std::runtime_error("cache header is malformed");
  const auto format = header["format"].get<std::string>();
  const auto convention = header["convention"].get<std::string>();
  if (header["checksum"].get<std::string>() != header_checksum(format, convention))
    throw std::runtime_error("cache header checksum mismatch");
  if (format != kCacheFormat || convention != kCacheConvention)
    throw std::runtime_error("cache was written under a different convention: " + convention);

  std::map<BracketKey, Rational> loaded;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    json row = json::parse(line, nullptr, false);
    if (row.is_discarded()) throw std::runtime_error("cache line " + std::to_string(lineno) + " is not JSON");
    try {
      auto key = BracketKey::make(row.at("g").get<int>(), row.at("kappa").get<int>(),
                                  row.at("psi").get<std::vector<int>>());
      loaded[key] = parse_rational(row.at("value").get<std::string>());
    } catch (const std::exception& e) {
      throw std::runtime_error("cache line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  std::unique_lock lock(mutex_);
  for (auto& [key, value] : loaded) memo_.insert_or_assign(key, value);
  return loaded.size();
}

Rational genus0_string_oracle(std::vector<int> psi) {
  const int n = static_cast<int>(psi.size());
  if (n < 3) throw std::invalid_argument("genus-0 bracket needs n >= 3");
  for (int d : psi)
    if (d < 0) throw std::invalid_argument("psi exponents must be nonnegative");
  if (std::accumulate(psi.begin(), psi.end(), 0) != n - 3)
    throw std::invalid_argument("psi list fails the genus-0 dimension gate sum d_i = n - 3");

  std::map<std::vector<int>, Rational> memo;
  std::function<Rational(std::vector<int>)> go = [&](std::vector<int> p) -> Rational {
    std::sort(p.begin(), p.end(), std::greater<>());
    if (p.size() == 3) return 1;
    if (auto it = memo.find(p); it != memo.end()) return it->second;
    // sum d_i = n - 3 < n forces a tau_0, which sits last after sorting.
    std::vector<int> rest(p.begin(), p.end() - 1);
    Rational total = 0;
    for (std::size_t i = 0; i < rest.size(); ++i) {
      if (rest[i] == 0) continue;
      auto q = rest;
      --q[i];
      total += go(q);
    }
    memo[p] = total;
    return total;
  };
  return go(std::move(psi));
}

Rational kappa_from_psi(IntersectionEngine& engine, int m, const std::vector<int>& psi, int g) {
  if (m < 0) throw std::invalid_argument("kappa power must be nonnegative");
  const int n = static_cast<int>(psi.size());
  if (n == 0 || !stable(g, n)) return 0;
  if (m + std::accumulate(psi.begin(), psi.end(), 0) != 3 * g - 3 + n) return 0;

  // r[p] = number of inserted tau_{p+1}; parts p >= 1 partition m.
  Rational total = 0;
  std::vector<int> r(static_cast<std::size_t>(m) + 1, 0);
  std::function<void(int, int)> walk = [&](int part, int left) {
    if (left == 0) {
      Rational w = 1;
      auto full = psi;
      for (int p = 1; p <= m; ++p) {
        const int rp = r[static_cast<std::size_t>(p)];
        if (rp == 0) continue;
        Rational c = numkit::gamma_shift_coeff(p + 1);
        Rational cp = 1;
        for (int e = 0; e < rp; ++e) cp *= c;
        w *= cp / Rational(factorial(rp));
        full.insert(full.end(), static_cast<std::size_t>(rp), p + 1);
      }
      total += w * engine.bracket(BracketKey::make(g, 0, std::move(full)));
      return;
    }
    if (part > left) return;
    for (int c = 0; c * part <= left; ++c) {
      r[static_cast<std::size_t>(part)] = c;
      walk(part + 1, left - c * part);
    }
    r[static_cast<std::size_t>(part)] = 0;
  };
  walk(1, m);
  return total * Rational(factorial(m));
}

}  // namespace wpv::intersect
