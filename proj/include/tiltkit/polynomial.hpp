#pragma once

#include <algorithm>
#include <random>
#include <vector>

#include "tiltkit/linalg.hpp"

namespace tiltkit {

/// Dense univariate polynomial, coefficients from low to high degree.
using Poly = std::vector<Scalar>;

inline void poly_trim(Poly& p) {
  while (!p.empty() && p.back().is_zero()) p.pop_back();
}

inline Scalar poly_eval(const Poly& p, const Scalar& x) {
  Scalar acc(0);
  for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
  return acc;
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly c(a.size() + b.size() - 1, Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  }
  poly_trim(c);
  return c;
}

inline Poly poly_sub(const Poly& a, const Poly& b) {
  Poly c(std::max(a.size(), b.size()), Scalar(0));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  poly_trim(c);
  return c;
}

/// Remainder of a modulo b (b nonzero).
inline Poly poly_mod(Poly a, const Poly& b) {
  poly_trim(a);
  const Scalar lead_inv = b.back().inverse();
  while (a.size() >= b.size()) {
    const Scalar f = a.back() * lead_inv;
    const std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[shift + i] -= f * b[i];
    poly_trim(a);
  }
  return a;
}

inline Poly poly_monic(Poly a) {
  poly_trim(a);
  if (a.empty()) return a;
  const Scalar inv = a.back().inverse();
  for (auto& c : a) c *= inv;
  return a;
}

inline Poly poly_gcd(Poly a, Poly b) {
  poly_trim(a);
  poly_trim(b);
  while (!b.empty()) {
    Poly r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a);
}

inline Poly poly_powmod(Poly base, mpz_class e, const Poly& m) {
  Poly result{Scalar(1)};
  base = poly_mod(base, m);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = poly_mod(poly_mul(result, base), m);
    base = poly_mod(poly_mul(base, base), m);
    e >>= 1;
  }
  return result;
}

/// Minimal polynomial (monic) of the square matrix m.
inline Poly minimal_polynomial(const Matrix& m) {
  const std::size_t n = m.rows();
  auto flat = [n](const Matrix& x) {
    Matrix r(1, n * n);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) r(0, i * n + j) = x(i, j);
    }
    return r;
  };
  Matrix power = Matrix::identity(n);
  Matrix powers(0, n * n);
  for (std::size_t d = 0; d <= n; ++d) {
    Matrix f = flat(power);
    if (powers.rows() > 0) {
      auto c = coordinates(powers, f);
      if (c) {
        Poly p(d + 1, Scalar(0));
        for (std::size_t i = 0; i < d; ++i) p[i] = -(*c)(0, i);
        p[d] = Scalar(1);
        return p;
      }
    } else if (f.is_zero()) {
      return {Scalar(1)};
    }
    powers = Matrix::vstack(powers, f);
    power = power * m;
  }
  throw InternalError("minimal polynomial degree exceeds matrix size");
}

namespace detail {

inline std::vector<mpz_class> divisors(mpz_class n) {
  if (n < 0) n = -n;
  std::vector<std::pair<mpz_class, unsigned>> fac;
  for (mpz_class d = 2; d * d <= n; ++d) {
    if (d > 1000000) return {};
    unsigned k = 0;
    while (n % d == 0) {
      n /= d;
      ++k;
    }
    if (k) fac.push_back({d, k});
  }
  if (n > 1) fac.push_back({n, 1});
  std::vector<mpz_class> out{1};
  for (const auto& [p, k] : fac) {
    const std::size_t sz = out.size();
    mpz_class pk = 1;
    for (unsigned e = 1; e <= k; ++e) {
      pk *= p;
      for (std::size_t i = 0; i < sz; ++i) out.push_back(out[i] * pk);
    }
  }
  return out;
}

}  // namespace detail

/// Roots of p lying in the base field (without multiplicity). Over Q this
/// uses the rational root test; over GF(p) the split part gcd(p, x^q - x)
/// is factored by equal-degree splitting. Returns what it can find when
/// integer factorization of the Q coefficients would be too large.
inline std::vector<Scalar> poly_roots(Poly p, const FieldSpec& f, std::uint64_t seed = 1) {
  poly_trim(p);
  std::vector<Scalar> roots;
  if (p.size() <= 1) return roots;
  if (f.is_rational()) {
    mpz_class den = 1;
    for (const auto& c : p) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.as_rational().get_den_mpz_t());
    std::vector<mpz_class> z;
    for (const auto& c : p) z.push_back(mpz_class(c.as_rational() * den));
    std::size_t low = 0;
    while (z[low] == 0) ++low;
    if (low > 0) roots.push_back(Scalar(0));
    auto dp = detail::divisors(z[low]);
    auto dq = detail::divisors(z.back());
    for (const auto& a : dp) {
      for (const auto& b : dq) {
        for (int sign : {1, -1}) {
          Scalar cand = Scalar::rational(mpq_class(a * sign, b));
          if (poly_eval(p, cand).is_zero() &&
              std::none_of(roots.begin(), roots.end(), [&](const Scalar& r) { return r == cand; })) {
            roots.push_back(cand);
          }
        }
      }
    }
    return roots;
  }

  const std::uint32_t q = f.characteristic;
  Poly monic = poly_monic(p);
  for (auto& c : monic) c = c.in_field(f);
  Poly x{Scalar::zero(f), Scalar::one(f)};
  Poly split = poly_gcd(monic, poly_sub(poly_powmod(x, mpz_class(q), monic), x));
  std::mt19937_64 rng(seed);
  std::vector<Poly> work{split};
  while (!work.empty()) {
    Poly g = work.back();
    work.pop_back();
    if (g.size() <= 1) continue;
    if (g.size() == 2) {
      roots.push_back(-(g[0] / g[1]));
      continue;
    }
    if (q == 2) {
      for (std::uint32_t v = 0; v < 2; ++v) {
        Scalar s = Scalar::residue(v, 2);
        if (poly_eval(g, s).is_zero()) roots.push_back(s);
      }
      continue;
    }
    for (int attempt = 0; attempt < 64; ++attempt) {
      Poly h{Scalar::residue(rng() % q, q), Scalar::one(f)};
      Poly t = poly_sub(poly_powmod(h, mpz_class((q - 1) / 2), g), Poly{Scalar::one(f)});
      Poly d = poly_gcd(g, t);
      if (d.size() > 1 && d.size() < g.size()) {
        // Exact division g / d.
        Poly quo(g.size() - d.size() + 1, Scalar::zero(f));
        Poly rem = g;
        for (std::size_t i = quo.size(); i-- > 0;) {
          quo[i] = rem[i + d.size() - 1] / d.back();
          for (std::size_t j = 0; j < d.size(); ++j) rem[i + j] -= quo[i] * d[j];
        }
        work.push_back(d);
        work.push_back(poly_monic(quo));
        break;
      }
    }
  }
  return roots;
}

}  // namespace tiltkit
