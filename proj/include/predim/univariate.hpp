// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Univariate helpers over Q used to certify isolating intervals of
// generators whose minimal polynomial has rational coefficients.

#pragma once

#include <cstdlib>
#include <vector>

#include "predim/polynomial.hpp"

namespace predim::univariate {

using Coeffs = std::vector<Rational>;  // ascending powers

inline void strip(Coeffs& p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Rational eval(const Coeffs& p, const Rational& x) {
  Rational r(0);
  for (std::size_t k = p.size(); k-- > 0;) r = r * x + p[k];
  return r;
}

inline Coeffs derivative(const Coeffs& p) {
  Coeffs d;
  for (std::size_t k = 1; k < p.size(); ++k) d.push_back(p[k] * static_cast<long>(k));
  strip(d);
  return d;
}

inline Coeffs remainder(Coeffs a, const Coeffs& b) {
  strip(a);
  while (a.size() >= b.size() && !a.empty()) {
    Rational f = a.back() / b.back();
    std::size_t shift = a.size() - b.size();
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] -= f * b[i];
    a.pop_back();
    strip(a);
  }
  return a;
}

inline Coeffs gcd(Coeffs a, Coeffs b) {
  strip(a);
  strip(b);
  while (!b.empty()) {
    Coeffs r = remainder(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

inline int sign_changes(const std::vector<Coeffs>& chain, const Rational& x) {
  int changes = 0;
  int last = 0;
  for (const auto& p : chain) {
    int s = sgn(eval(p, x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

/// Number of distinct real roots in (a, b].
inline int count_roots(const Coeffs& p, const Rational& a, const Rational& b) {
  std::vector<Coeffs> chain{p, derivative(p)};
  strip(chain[0]);
  while (!chain.back().empty()) {
    Coeffs r = remainder(chain[chain.size() - 2], chain.back());
    for (auto& c : r) c = -c;
    chain.push_back(std::move(r));
  }
  chain.pop_back();
  return sign_changes(chain, a) - sign_changes(chain, b);
}

/// True when p has a rational root. Candidates come from the rational root
/// theorem; large constant/leading terms are skipped (returns false).
inline bool has_rational_root(const Coeffs& p_in) {
  Coeffs p = p_in;
  strip(p);
  if (p.size() <= 1) return false;
  if (p[0] == 0) return true;
  Integer den_lcm = 1;
  for (const auto& c : p) mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den_mpz_t());
  std::vector<Integer> ip;
  for (const auto& c : p) ip.push_back(Integer(c * den_lcm));
  Integer a0 = abs(ip.front());
  Integer an = abs(ip.back());
  const Integer limit = 1000000;
  if (a0 > limit || an > limit) return false;
  auto divisors = [](long n) {
    std::vector<long> d;
    for (long i = 1; i * i <= n; ++i) {
      if (n % i == 0) {
        d.push_back(i);
        if (i != n / i) d.push_back(n / i);
      }
    }
    return d;
  };
  for (long num : divisors(a0.get_si())) {
    for (long den : divisors(an.get_si())) {
      for (int s : {1, -1}) {
        if (eval(p, Rational(s * num, den)) == 0) return true;
      }
    }
  }
  return false;
}

}  // namespace predim::univariate
