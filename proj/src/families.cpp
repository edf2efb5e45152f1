#include "plat/families.hpp"

#include <algorithm>
#include <charconv>
#include <functional>

#include "plat/error.hpp"

namespace plat {

namespace {

// Regular representations beyond this many points are refused outright.
constexpr long long kMaxRegularDegree = 1 << 16;

long long ipow(long long base, long long exp) {
  long long r = 1;
  for (long long i = 0; i < exp; ++i) {
    r *= base;
    if (r > (1LL << 40)) throw Error(Errc::BadParams, "group order too large");
  }
  return r;
}

void need(bool ok, const std::string& msg) {
  if (!ok) throw Error(Errc::BadParams, msg);
}

void need_count(std::span<const long long> params, std::size_t n, std::string_view kind) {
  need(params.size() == n, std::string(kind) + " expects " + std::to_string(n) + " parameter(s)");
}

GroupSpec trivial_spec() {
  GroupSpec s;
  s.name = "1";
  s.degree = 1;
  s.generators.push_back(Permutation::identity(1));
  return s;
}

GroupSpec cyclic(long long p, long long k) {
  need(is_prime(p), "p must be prime");
  need(k >= 0, "k must be nonnegative");
  if (k == 0) return trivial_spec();
  const long long n = ipow(p, k);
  need(n <= kMaxRegularDegree, "cyclic group too large");
  GroupSpec s;
  s.name = "C" + std::to_string(n);
  s.degree = static_cast<std::size_t>(n);
  std::vector<std::uint32_t> cyc(static_cast<std::size_t>(n));
  for (std::size_t i = 0; i < cyc.size(); ++i) cyc[i] = static_cast<std::uint32_t>(i);
  s.generators.push_back(from_cycles(s.degree, {cyc}));
  return s;
}

// a^i b^j with a^N = 1, b^Q = a^s, b a b^-1 = a^r; index i + N*j.
GroupSpec metacyclic(std::string name, long long N, long long Q, long long r, long long s) {
  need(N * Q <= kMaxRegularDegree, "group too large");
  std::vector<long long> rpow(static_cast<std::size_t>(Q));
  rpow[0] = 1;
  for (long long j = 1; j < Q; ++j) rpow[j] = (rpow[j - 1] * r) % N;
  const auto mul = [&](std::uint32_t x, std::uint32_t y) {
    const long long i = x % N, j = x / N, k = y % N, l = y / N;
    long long a = i + k * rpow[j];
    long long b = j + l;
    if (b >= Q) {
      b -= Q;
      a += s;
    }
    return static_cast<std::uint32_t>(((a % N) + N) % N + N * b);
  };
  const std::uint32_t gens[] = {1u, static_cast<std::uint32_t>(N)};
  return regular_spec(std::move(name), static_cast<std::size_t>(N * Q), gens, mul);
}

GroupSpec heisenberg(long long p) {
  // (a, b, c)(a', b', c') = (a + a', b + b', c + c' + a b'), index a + p b + p^2 c.
  const auto mul = [p](std::uint32_t x, std::uint32_t y) {
    const long long a = x % p, b = (x / p) % p, c = x / (p * p);
    const long long a2 = y % p, b2 = (y / p) % p, c2 = y / (p * p);
    const long long ra = (a + a2) % p, rb = (b + b2) % p, rc = (c + c2 + a * b2) % p;
    return static_cast<std::uint32_t>(ra + p * rb + p * p * rc);
  };
  const std::uint32_t gens[] = {1u, static_cast<std::uint32_t>(p)};
  return regular_spec("E" + std::to_string(p * p * p) + "+", static_cast<std::size_t>(p * p * p), gens, mul);
}

GroupSpec wreath(long long p) {
  need(is_prime(p), "p must be prime");
  need(ipow(p, p + 1) <= kMaxRegularDegree, "wreath product too large");
  const std::size_t deg = static_cast<std::size_t>(p * p);
  std::vector<std::uint32_t> base(static_cast<std::size_t>(p));
  for (std::size_t j = 0; j < base.size(); ++j) base[j] = static_cast<std::uint32_t>(j);
  std::vector<std::vector<std::uint32_t>> top;
  for (long long j = 0; j < p; ++j) {
    std::vector<std::uint32_t> cyc;
    for (long long i = 0; i < p; ++i) cyc.push_back(static_cast<std::uint32_t>(i * p + j));
    top.push_back(std::move(cyc));
  }
  GroupSpec s;
  s.name = "C" + std::to_string(p) + "wrC" + std::to_string(p);
  s.degree = deg;
  s.generators.push_back(from_cycles(deg, {base}));
  s.generators.push_back(from_cycles(deg, top));
  return s;
}

std::string join_names(std::span<const GroupSpec> factors) {
  std::string name;
  for (const auto& f : factors) {
    if (!name.empty()) name += "x";
    name += f.name;
  }
  return name.empty() ? "1" : name;
}

}  // namespace

bool is_prime(long long n) {
  if (n < 2) return false;
  for (long long q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

Family family_from_name(std::string_view name) {
  static const std::pair<std::string_view, Family> table[] = {
      {"cyclic", Family::Cyclic},
      {"abelian", Family::Abelian},
      {"elementary_abelian", Family::ElementaryAbelian},
      {"elementary-abelian", Family::ElementaryAbelian},
      {"dihedral", Family::Dihedral},
      {"quaternion", Family::Quaternion},
      {"semidihedral", Family::Semidihedral},
      {"modular", Family::Modular},
      {"extraspecial", Family::Extraspecial},
      {"wreath", Family::Wreath},
  };
  for (const auto& [n, f] : table)
    if (n == name) return f;
  throw Error(Errc::UnknownFamily, std::string(name));
}

std::string_view family_name(Family f) {
  switch (f) {
    case Family::Cyclic: return "cyclic";
    case Family::Abelian: return "abelian";
    case Family::ElementaryAbelian: return "elementary_abelian";
    case Family::Dihedral: return "dihedral";
    case Family::Quaternion: return "quaternion";
    case Family::Semidihedral: return "semidihedral";
    case Family::Modular: return "modular";
    case Family::Extraspecial: return "extraspecial";
    case Family::Wreath: return "wreath";
  }
  return "?";
}

GroupSpec direct_product(std::span<const GroupSpec> factors) {
  if (factors.empty()) return trivial_spec();
  if (factors.size() == 1) return factors[0];
  GroupSpec out;
  out.name = join_names(factors);
  for (const auto& f : factors) out.degree += f.degree;
  std::size_t offset = 0;
  for (const auto& f : factors) {
    for (const auto& gen : f.generators) {
      Permutation p = Permutation::identity(out.degree);
      for (std::size_t i = 0; i < f.degree; ++i)
        p.images[offset + i] = static_cast<std::uint32_t>(offset + gen.images[i]);
      out.generators.push_back(std::move(p));
    }
    offset += f.degree;
  }
  return out;
}

GroupSpec family(Family kind, std::span<const long long> params) {
  const std::string_view kname = family_name(kind);
  switch (kind) {
    case Family::Cyclic:
      need_count(params, 2, kname);
      return cyclic(params[0], params[1]);
    case Family::Abelian: {
      need(params.size() >= 2, "abelian expects p followed by at least one part");
      const long long p = params[0];
      need(is_prime(p), "p must be prime");
      std::vector<long long> parts(params.begin() + 1, params.end());
      for (auto k : parts) need(k >= 1, "abelian parts must be positive");
      std::sort(parts.begin(), parts.end(), std::greater<>());
      std::vector<GroupSpec> factors;
      for (auto k : parts) factors.push_back(cyclic(p, k));
      return direct_product(factors);
    }
    case Family::ElementaryAbelian: {
      need_count(params, 2, kname);
      const long long p = params[0], r = params[1];
      need(is_prime(p), "p must be prime");
      need(r >= 0, "rank must be nonnegative");
      if (r == 0) return trivial_spec();
      std::vector<GroupSpec> factors(static_cast<std::size_t>(r), cyclic(p, 1));
      GroupSpec s = direct_product(factors);
      if (r > 1) s.name = "C" + std::to_string(p) + "^" + std::to_string(r);
      return s;
    }
    case Family::Dihedral: {
      need_count(params, 1, kname);
      const long long m = params[0];
      need(m >= 3, "dihedral needs m >= 3");
      const long long N = ipow(2, m - 1);
      // Natural action on N points: rotation and a reflection.
      GroupSpec s;
      s.name = "D" + std::to_string(2 * N);
      s.degree = static_cast<std::size_t>(N);
      need(N <= kMaxRegularDegree, "dihedral group too large");
      std::vector<std::uint32_t> rot(s.degree);
      for (std::size_t i = 0; i < s.degree; ++i) rot[i] = static_cast<std::uint32_t>(i);
      Permutation refl;
      refl.images.resize(s.degree);
      for (std::size_t i = 0; i < s.degree; ++i) refl.images[i] = static_cast<std::uint32_t>((s.degree - i) % s.degree);
      s.generators.push_back(from_cycles(s.degree, {rot}));
      s.generators.push_back(std::move(refl));
      return s;
    }
    case Family::Quaternion: {
      need_count(params, 1, kname);
      const long long m = params[0];
      need(m >= 3, "quaternion needs m >= 3");
      const long long N = ipow(2, m - 1);
      return metacyclic("Q" + std::to_string(2 * N), N, 2, N - 1, N / 2);
    }
    case Family::Semidihedral: {
      need_count(params, 1, kname);
      const long long m = params[0];
      need(m >= 4, "semidihedral needs m >= 4");
      const long long N = ipow(2, m - 1);
      return metacyclic("SD" + std::to_string(2 * N), N, 2, N / 2 - 1, 0);
    }
    case Family::Modular: {
      need_count(params, 2, kname);
      const long long p = params[0], m = params[1];
      need(is_prime(p), "p must be prime");
      need(m >= (p == 2 ? 4 : 3), "modular needs m >= 3 (m >= 4 for p = 2)");
      const long long N = ipow(p, m - 1);
      return metacyclic("M" + std::to_string(N * p), N, p, 1 + N / p, 0);
    }
    case Family::Extraspecial: {
      need_count(params, 2, kname);
      const long long p = params[0], t = params[1];
      need(is_prime(p), "p must be prime");
      need(t == 1 || t == 2, "extraspecial type must be 1 or 2");
      if (p == 2) {
        const long long m = 3;
        return t == 1 ? family(Family::Dihedral, std::span<const long long>(&m, 1))
                      : family(Family::Quaternion, std::span<const long long>(&m, 1));
      }
      if (t == 1) return heisenberg(p);
      GroupSpec s = metacyclic("", p * p, p, 1 + p, 0);
      s.name = "E" + std::to_string(p * p * p) + "-";
      return s;
    }
    case Family::Wreath:
      need_count(params, 1, kname);
      return wreath(params[0]);
  }
  throw Error(Errc::UnknownFamily, "unhandled family");
}

GroupSpec family(std::string_view kind, std::span<const long long> params) {
  return family(family_from_name(kind), params);
}

GroupSpec parse_family(std::string_view text) {
  std::vector<GroupSpec> factors;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t stop = text.find('*', start);
    if (stop == std::string_view::npos) stop = text.size();
    const std::string_view item = text.substr(start, stop - start);
    const std::size_t colon = item.find(':');
    const std::string_view kind = item.substr(0, colon);
    std::vector<long long> params;
    if (colon != std::string_view::npos) {
      std::string_view rest = item.substr(colon + 1);
      while (!rest.empty()) {
        const std::size_t comma = rest.find(',');
        const std::string_view tok = rest.substr(0, comma);
        long long v = 0;
        auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
        if (ec != std::errc() || ptr != tok.data() + tok.size())
          throw Error(Errc::BadParams, "bad family parameter '" + std::string(tok) + "'");
        params.push_back(v);
        if (comma == std::string_view::npos) break;
        rest = rest.substr(comma + 1);
      }
    }
    factors.push_back(family(kind, params));
    start = stop + 1;
  }
  return direct_product(factors);
}

}  // namespace plat
