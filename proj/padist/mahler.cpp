#include "padist/mahler.hpp"

#include <algorithm>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <numeric>
#include <thread>

#include "padist/errors.hpp"

namespace padist {

int degree(const Exp& a) { return std::accumulate(a.begin(), a.end(), 0); }

bool graded_lex_less(const Exp& a, const Exp& b) {
  int da = degree(a), db = degree(b);
  if (da != db) return da < db;
  return a > b;
}

MonomialBasis::MonomialBasis(int d, int N) : d_(d), N_(N) {
  if (d < 1 || N < 0) throw DegreeOverflow("bad monomial basis parameters");
  // Enumerate the box and keep degree <= N.
  Exp cur(d, 0);
  for (;;) {
    if (padist::degree(cur) <= N) exps_.push_back(cur);
    int i = 0;
    while (i < d && ++cur[i] > N) cur[i++] = 0;
    if (i == d) break;
  }
  std::sort(exps_.begin(), exps_.end(), graded_lex_less);
  start_.assign(N + 1, 0);
  for (int k = 0; k <= N; ++k)
    start_[k] = static_cast<int>(std::find_if(exps_.begin(), exps_.end(),
                                              [&](const Exp& e) { return padist::degree(e) >= k; }) -
                                 exps_.begin());
  for (int i = 0; i < size(); ++i) {
    deg_.push_back(padist::degree(exps_[i]));
    index_[exps_[i]] = i;
  }
}

int MonomialBasis::find(const Exp& a) const {
  auto it = index_.find(a);
  return it == index_.end() ? -1 : it->second;
}

const Rat& MahlerTable::at(const Exp& a) const {
  std::size_t idx = 0, mul = 1;
  for (int i = 0; i < d; ++i) {
    idx += a[i] * mul;
    mul *= N + 1;
  }
  return c.at(idx);
}

Rat MahlerTable::evaluate(const std::vector<Rat>& x) const {
  Rat s = 0;
  Exp a(d, 0);
  for (std::size_t idx = 0; idx < c.size(); ++idx) {
    std::size_t r = idx;
    for (int i = 0; i < d; ++i) {
      a[i] = static_cast<int>(r % (N + 1));
      r /= N + 1;
    }
    if (c[idx] == 0) continue;
    Rat t = c[idx];
    for (int i = 0; i < d; ++i) t *= binom(x[i], a[i]);
    s += t;
  }
  return s;
}

MahlerTable mahler_coeffs(int d, int N, const std::vector<Rat>& values) {
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= N + 1;
  if (values.size() != total) throw DimensionMismatch("grid has the wrong number of values");
  MahlerTable t;
  t.d = d;
  t.N = N;
  t.c = values;
  std::size_t stride = 1;
  for (int axis = 0; axis < d; ++axis) {
    for (std::size_t idx = 0; idx < total; ++idx) {
      if ((idx / stride) % (N + 1) != 0) continue;
      // Newton forward differences along this line.
      for (int k = 1; k <= N; ++k)
        for (int s = N; s >= k; --s) t.c[idx + s * stride] -= t.c[idx + (s - 1) * stride];
    }
    stride *= N + 1;
  }
  return t;
}

// ---------------------------------------------------------------------------

StructureConstants::StructureConstants(GroupPtr G, int N, bool)
    : G_(std::move(G)), basis_(G_->d(), N) {
  table_.assign(static_cast<std::size_t>(basis_.size()) * basis_.size(), {});
}

StructureConstants::StructureConstants(GroupPtr G, int N, int threads)
    : StructureConstants(std::move(G), N, true) {
  build(threads);
}

void StructureConstants::build(int threads) {
  const MonomialBasis& B = basis_;
  const int S = B.size(), d = B.d(), N = B.N();
  if (G_->abelian()) {
    // commuting b_i: ordered monomials multiply by adding exponents
    for (int a = 0; a < S; ++a)
      for (int b = 0; b < S; ++b) {
        Exp e = B.exp(a);
        for (int i = 0; i < d; ++i) e[i] += B.exp(b)[i];
        int g = B.find(e);
        if (g >= 0) table_[static_cast<std::size_t>(a) * S + b].push_back({g, Rat(1)});
      }
    return;
  }
  // F on the simplex grid.
  std::vector<Vec> F(static_cast<std::size_t>(S) * S);
  for (int a = 0; a < S; ++a) {
    Vec x(d);
    for (int i = 0; i < d; ++i) x[i] = B.exp(a)[i];
    for (int b = 0; b < S; ++b) {
      Vec y(d);
      for (int i = 0; i < d; ++i) y[i] = B.exp(b)[i];
      F[static_cast<std::size_t>(a) * S + b] = G_->mul(x, y);
    }
  }
  // Neighbour tables: step[axis][idx] = index with exponent lowered by one
  // along axis (in the 2d-dimensional grid, x-axes then y-axes).
  std::vector<std::vector<int>> down(d, std::vector<int>(S, -1));
  for (int i = 0; i < S; ++i)
    for (int ax = 0; ax < d; ++ax) {
      if (B.exp(i)[ax] == 0) continue;
      Exp e = B.exp(i);
      --e[ax];
      down[ax][i] = B.find(e);
    }
  // Binomials binom(F_k, j) for j <= N, per grid point.
  std::vector<std::vector<std::vector<Rat>>> bin(F.size());
  for (std::size_t g = 0; g < F.size(); ++g) {
    bin[g].assign(d, std::vector<Rat>(N + 1));
    for (int k = 0; k < d; ++k) {
      bin[g][k][0] = 1;
      for (int j = 1; j <= N; ++j) bin[g][k][j] = bin[g][k][j - 1] * (F[g][k] - (j - 1)) / j;
    }
  }
  std::vector<std::vector<std::pair<std::size_t, Rat>>> found(S);
  auto work = [&](int gamma) {
    const Exp& ge = B.exp(gamma);
    std::vector<Rat> v(F.size());
    for (std::size_t g = 0; g < F.size(); ++g) {
      Rat t = 1;
      for (int k = 0; k < d && t != 0; ++k)
        if (ge[k]) t *= bin[g][k][ge[k]];
      v[g] = t;
    }
    // Differences along each x-axis then each y-axis.  Lines are walked
    // from the top so that every subtraction uses a not-yet-updated value.
    for (int side = 0; side < 2; ++side)
      for (int ax = 0; ax < d; ++ax)
        for (int k = 1; k <= N; ++k)
          for (int a = S - 1; a >= 0; --a) {
            int ea = B.exp(a)[ax];
            if (ea < k) continue;
            int lo = down[ax][a];
            for (int o = 0; o < S; ++o) {
              std::size_t hi_i = side == 0 ? static_cast<std::size_t>(a) * S + o
                                           : static_cast<std::size_t>(o) * S + a;
              std::size_t lo_i = side == 0 ? static_cast<std::size_t>(lo) * S + o
                                           : static_cast<std::size_t>(o) * S + lo;
              v[hi_i] -= v[lo_i];
            }
          }
    for (std::size_t g = 0; g < v.size(); ++g)
      if (v[g] != 0) found[gamma].push_back({g, v[g]});
  };
  threads = std::max(1, threads);
  if (threads == 1) {
    for (int g = 0; g < S; ++g) work(g);
  } else {
    std::vector<std::thread> pool;
    for (int t = 0; t < threads; ++t)
      pool.emplace_back([&, t] {
        for (int g = t; g < S; g += threads) work(g);
      });
    for (auto& th : pool) th.join();
  }
  for (int gamma = 0; gamma < S; ++gamma)
    for (auto& [g, c] : found[gamma]) table_[g].push_back({gamma, std::move(c)});
}

Rat StructureConstants::get(int alpha, int beta, int gamma) const {
  for (const auto& [g, c] : at(alpha, beta))
    if (g == gamma) return c;
  return 0;
}

std::size_t StructureConstants::nonzero() const {
  std::size_t n = 0;
  for (const auto& v : table_) n += v.size();
  return n;
}

std::vector<StructureConstants::BoundViolation> StructureConstants::filtration_violations() const {
  std::vector<BoundViolation> out;
  const int S = basis_.size();
  const int kappa = G_->kappa();
  for (int a = 0; a < S; ++a)
    for (int b = 0; b < S; ++b)
      for (const auto& [g, c] : at(a, b)) {
        std::int64_t need = static_cast<std::int64_t>(kappa) * (basis_.degree(a) + basis_.degree(b) - basis_.degree(g));
        if (vp(c, G_->p()) < need) out.push_back({a, b, g});
      }
  return out;
}

// ---------------------------------------------------------------------------
// Cache format, little-endian throughout:
//   "PDSC" u32 version u64 group-hash u32 N u32 M u32 S
//   per (alpha, beta): u32 count, then count x (u32 gamma, str num, str den)
//   where str = u32 length + decimal digits.

namespace {

constexpr std::uint32_t kCacheVersion = 1;

void put_u32(std::ostream& os, std::uint32_t v) {
  for (int i = 0; i < 4; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_u64(std::ostream& os, std::uint64_t v) {
  for (int i = 0; i < 8; ++i) os.put(static_cast<char>((v >> (8 * i)) & 0xff));
}
void put_str(std::ostream& os, const std::string& s) {
  put_u32(os, static_cast<std::uint32_t>(s.size()));
  os.write(s.data(), static_cast<std::streamsize>(s.size()));
}
std::uint32_t get_u32(std::istream& is) {
  std::uint32_t v = 0;
  for (int i = 0; i < 4; ++i) {
    int c = is.get();
    if (c == EOF) throw CacheError("truncated cache file");
    v |= static_cast<std::uint32_t>(c) << (8 * i);
  }
  return v;
}
std::uint64_t get_u64(std::istream& is) {
  std::uint64_t v = 0;
  for (int i = 0; i < 8; ++i) {
    int c = is.get();
    if (c == EOF) throw CacheError("truncated cache file");
    v |= static_cast<std::uint64_t>(c) << (8 * i);
  }
  return v;
}
std::string get_str(std::istream& is) {
  std::uint32_t n = get_u32(is);
  if (n > (1u << 24)) throw CacheError("corrupt cache entry");
  std::string s(n, '\0');
  is.read(s.data(), n);
  if (!is) throw CacheError("truncated cache file");
  return s;
}

}  // namespace

void StructureConstants::save(const std::string& path) const {
  std::string tmp = path + ".tmp";
  {
    std::ofstream os(tmp, std::ios::binary);
    if (!os) throw CacheError("cannot write " + tmp);
    os.write("PDSC", 4);
    put_u32(os, kCacheVersion);
    put_u64(os, G_->hash());
    put_u32(os, static_cast<std::uint32_t>(N()));
    put_u32(os, static_cast<std::uint32_t>(G_->M()));
    put_u32(os, static_cast<std::uint32_t>(basis_.size()));
    for (const auto& v : table_) {
      put_u32(os, static_cast<std::uint32_t>(v.size()));
      for (const auto& [g, c] : v) {
        put_u32(os, static_cast<std::uint32_t>(g));
        put_str(os, c.get_num().get_str());
        put_str(os, c.get_den().get_str());
      }
    }
    if (!os) throw CacheError("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, path);
}

std::shared_ptr<StructureConstants> StructureConstants::load(const std::string& path, GroupPtr G,
                                                             int N) {
  std::ifstream is(path, std::ios::binary);
  if (!is) return nullptr;
  char magic[4];
  is.read(magic, 4);
  if (!is || std::memcmp(magic, "PDSC", 4) != 0) throw CacheError(path + ": bad magic");
  if (get_u32(is) != kCacheVersion) throw CacheError(path + ": unsupported version");
  if (get_u64(is) != G->hash()) throw CacheError(path + ": group hash mismatch");
  if (get_u32(is) != static_cast<std::uint32_t>(N)) throw CacheError(path + ": degree mismatch");
  if (get_u32(is) != static_cast<std::uint32_t>(G->M())) throw CacheError(path + ": precision mismatch");
  std::shared_ptr<StructureConstants> sc(new StructureConstants(G, N, true));
  if (get_u32(is) != static_cast<std::uint32_t>(sc->basis_.size())) throw CacheError(path + ": size mismatch");
  for (auto& v : sc->table_) {
    std::uint32_t n = get_u32(is);
    for (std::uint32_t t = 0; t < n; ++t) {
      std::uint32_t g = get_u32(is);
      if (g >= static_cast<std::uint32_t>(sc->basis_.size())) throw CacheError(path + ": bad index");
      Int num(get_str(is)), den(get_str(is));
      if (den == 0) throw CacheError(path + ": zero denominator");
      Rat c(num, den);
      c.canonicalize();
      v.push_back({static_cast<int>(g), c});
    }
  }
  return sc;
}

std::string StructureConstants::cache_name(const Group& G, int N) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "sc-%016llx-N%d-M%d.bin", static_cast<unsigned long long>(G.hash()), N, G.M());
  return buf;
}

StructurePtr structure_constants(GroupPtr G, int N, const std::string& cache_dir) {
  static std::mutex mu;
  static std::map<std::tuple<std::uint64_t, int, int>, StructurePtr> memo;
  auto key = std::make_tuple(G->hash(), N, G->M());
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
  }
  StructurePtr sc;
  std::string path;
  if (!cache_dir.empty()) {
    std::filesystem::create_directories(cache_dir);
    path = (std::filesystem::path(cache_dir) / StructureConstants::cache_name(*G, N)).string();
    sc = StructureConstants::load(path, G, N);
  }
  if (!sc) {
    auto built = std::make_shared<StructureConstants>(G, N, static_cast<int>(std::max(1u, std::thread::hardware_concurrency())));
    if (!path.empty()) built->save(path);
    sc = built;
  }
  std::lock_guard<std::mutex> lock(mu);
  memo[key] = sc;
  return sc;
}

}  // namespace padist
