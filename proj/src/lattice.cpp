#include "voa/lattice.hpp"

#include <algorithm>
#include <functional>

namespace voa {

namespace {

using Parts = std::vector<std::uint16_t>;

Parts merge(const Parts& a, const Parts& b) {
  Parts r;
  r.reserve(a.size() + b.size());
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(r), std::greater<>());
  return r;
}

Scalar factorial(long n) {
  mpz_class f = 1;
  for (long i = 2; i <= n; ++i) f *= i;
  return Scalar(Rational(f));
}

long total(const Parts& p) {
  long t = 0;
  for (auto x : p) t += x;
  return t;
}

// partitions of n into parts >= 1 written with multiplicities: (part, count)
void partitions(long n, long max_part, std::vector<std::pair<long, long>>& cur,
                const std::function<void(const std::vector<std::pair<long, long>>&)>& f) {
  if (n == 0) {
    f(cur);
    return;
  }
  for (long j = std::min(n, max_part); j >= 1; --j)
    for (long k = 1; k * j <= n; ++k) {
      cur.emplace_back(j, k);
      partitions(n - k * j, j - 1, cur, f);
      cur.pop_back();
    }
}

}  // namespace

Lattice::Lattice(std::string field, int signature, Cocycle cocycle)
    : field_(std::move(field)), q_(signature), cocycle_(cocycle) {
  if (q_ != 1 && q_ != -1) throw std::invalid_argument("lattice signature must be 1 or -1");
}

LatState Lattice::phi(unsigned j) const { return LatState(LatKey{0, {static_cast<std::uint16_t>(j)}}, Scalar(1)); }

Rational Lattice::weight(const LatKey& k) const {
  Rational r(q_ * k.m * k.m, 2);
  r.canonicalize();
  return r + Rational(total(k.parts));
}

int Lattice::epsilon(long m, long n) const {
  if (cocycle_ == Cocycle::Trivial) return 1;
  long e = q_ * m * (n * (n - 1) / 2);
  return (e % 2 == 0) ? 1 : -1;
}

LatState Lattice::mode(long j, const LatState& s) const {
  LatState out;
  for (auto& [k, c] : s.terms()) {
    if (j == 0) {
      out.add(k, c * Scalar(q_ * k.m));
    } else if (j < 0) {
      out.add(LatKey{k.m, merge(k.parts, {static_cast<std::uint16_t>(-j)})}, c);
    } else {
      // q j ∂/∂φ(-j)
      auto first = std::find(k.parts.begin(), k.parts.end(), j);
      if (first == k.parts.end()) continue;
      long mult = std::count(k.parts.begin(), k.parts.end(), j);
      Parts rest = k.parts;
      rest.erase(rest.begin() + (first - k.parts.begin()));
      out.add(LatKey{k.m, rest}, c * Scalar(q_ * j * mult));
    }
  }
  return out;
}

long Lattice::max_pole(const LatKey& a, const LatKey& b) const {
  Rational sq(q_ * (a.m + b.m) * (a.m + b.m), 2);
  sq.canonicalize();
  Rational bound = weight(a) + weight(b) - 1 - sq;
  mpz_class f = bound.get_num() / bound.get_den();
  if (bound < 0 && f * bound.get_den() != bound.get_num()) f -= 1;
  return f.get_si();
}

LatState Lattice::nth(const LatState& a, const LatState& b, long n) const {
  LatState out;
  for (auto& [ka, ca] : a.terms())
    for (auto& [kb, cb] : b.terms()) out.add(nth(ka, kb, n), ca * cb);
  return out;
}

LatState Lattice::nth(const LatKey& a, const LatKey& b, long n) const {
  if (n > max_pole(a, b)) return LatState();
  auto key = std::make_tuple(a, b, n);
  {
    std::lock_guard lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  LatState r = compute(a, b, n);
  std::lock_guard lock(mutex_);
  cache_.emplace(key, r);
  return r;
}

LatState Lattice::compute(const LatKey& a, const LatKey& b, long n) const {
  if (a.is_vacuum()) return n == -1 ? LatState(b, Scalar(1)) : LatState();
  if (a.parts.empty()) return exp_action(a.m, b, n);

  // a = u_(-1) a' with u = ∂^(j-1) φ; u_(p) = (-1)^{j-1} C(p, j-1) φ(p-j+1)
  long j = a.parts.front();
  LatKey rest{a.m, Parts(a.parts.begin() + 1, a.parts.end())};
  LatState B(b, Scalar(1));
  LatState out;

  long top = max_pole(rest, b);
  for (long i = 0; n + i <= top; ++i) {
    LatState x = nth(rest, b, n + i);
    if (x.is_zero()) continue;
    out.add(mode(-i - j, x), binomial(i + j - 1, j - 1));
  }
  long maxpart = b.parts.empty() ? 0 : b.parts.front();
  for (long i = 0; i - j + 1 <= maxpart; ++i) {
    long p = i - j + 1;
    Scalar coef = binomial(i, j - 1);
    if (coef.is_zero()) continue;
    if ((j - 1) % 2) coef = -coef;
    LatState ub = mode(p, B);
    if (ub.is_zero()) continue;
    out.add(nth(LatState(rest, Scalar(1)), ub, n - 1 - i), coef);
  }
  return out;
}

LatState Lattice::exp_action(long m, const LatKey& b, long n) const {
  // Y(e^{mφ},z) P e^{m'φ} = ε z^{q m m'} E^-(z) E^+(z) P e^{(m+m')φ}
  LatState out;
  long shift = q_ * m * b.m;
  Scalar eps(epsilon(m, b.m));

  // multiplicities of b
  std::vector<std::pair<long, long>> mult;
  for (auto p : b.parts) {
    if (!mult.empty() && mult.back().first == p)
      ++mult.back().second;
    else
      mult.emplace_back(p, 1);
  }

  // E^+: φ(-j) -> φ(-j) - m q z^{-j}
  std::vector<long> t(mult.size(), 0);
  std::function<void(std::size_t, long, Scalar, Parts)> plus = [&](std::size_t i, long r, Scalar c, Parts kept) {
    if (i == mult.size()) {
      long s = r - n - 1 - shift;  // power of z needed from E^-
      if (s < 0) return;
      std::sort(kept.begin(), kept.end(), std::greater<>());
      std::vector<std::pair<long, long>> cur;
      partitions(s, s, cur, [&](const std::vector<std::pair<long, long>>& mu) {
        Scalar cm = c * eps;
        Parts added;
        for (auto [jj, kk] : mu) {
          Rational ratio(m, jj);
          ratio.canonicalize();
          cm *= Scalar(ratio).pow(static_cast<int>(kk)) / factorial(kk);
          for (long x = 0; x < kk; ++x) added.push_back(static_cast<std::uint16_t>(jj));
        }
        out.add(LatKey{m + b.m, merge(kept, added)}, cm);
      });
      return;
    }
    auto [jj, cc] = mult[i];
    for (long tt = 0; tt <= cc; ++tt) {
      Scalar coef = c * binomial(cc, tt) * Scalar(-m * q_).pow(static_cast<int>(tt));
      Parts k2 = kept;
      for (long x = 0; x < cc - tt; ++x) k2.push_back(static_cast<std::uint16_t>(jj));
      plus(i + 1, r + jj * tt, coef, k2);
    }
  };
  plus(0, 0, Scalar(1), {});
  return out;
}

LatState Lattice::deriv(const LatState& a, unsigned times) const {
  LatState cur = a;
  for (unsigned t = 0; t < times; ++t) {
    LatState next;
    for (auto& [k, c] : cur.terms()) {
      if (k.m != 0) next.add(LatKey{k.m, merge(k.parts, {1})}, c * Scalar(k.m));
      for (std::size_t i = 0; i < k.parts.size(); ++i) {
        if (i > 0 && k.parts[i] == k.parts[i - 1]) continue;
        long j = k.parts[i];
        long mult = std::count(k.parts.begin(), k.parts.end(), k.parts[i]);
        Parts p = k.parts;
        p.erase(p.begin() + static_cast<long>(i));
        p = merge(p, {static_cast<std::uint16_t>(j + 1)});
        next.add(LatKey{k.m, p}, c * Scalar(j * mult));
      }
    }
    cur = std::move(next);
  }
  return cur;
}

std::string Lattice::str(const LatKey& k) const {
  if (k.is_vacuum()) return "|0>";
  std::vector<std::string> f;
  for (auto p : k.parts) f.push_back(p == 1 ? field_ : p == 2 ? "d(" + field_ + ")" : "d^" + std::to_string(p - 1) + "(" + field_ + ")");
  if (k.m != 0) f.push_back(k.m == 1 ? "e^{" + field_ + "}" : k.m == -1 ? "e^{-" + field_ + "}" : "e^{" + std::to_string(k.m) + " " + field_ + "}");
  if (f.size() == 1) return f[0];
  std::string s = ":(";
  for (std::size_t i = 0; i < f.size(); ++i) s += (i ? " " : "") + f[i];
  return s + ")";
}

std::string Lattice::str(const LatState& s) const {
  if (s.is_zero()) return "0";
  std::string out;
  bool first = true;
  for (auto it = s.terms().rbegin(); it != s.terms().rend(); ++it) {
    Scalar c = it->second;
    for (auto p : it->first.parts) c /= factorial(p - 1);
    out += coeff_prefix(c, first) + str(it->first);
    first = false;
  }
  return out;
}

}  // namespace voa
