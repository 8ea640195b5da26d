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

#pragma once

#include <gmpxx.h>

#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "predim/error.hpp"

namespace predim {

using Integer = mpz_class;
using Rational = mpq_class;

inline int sgn(const Rational& q) { return ::sgn(q); }

inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "12", "-3/4" or "3.1415" exactly. Returns nullopt on malformed text.
inline std::optional<Rational> parse_rational(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::size_t i = 0;
  bool negative = false;
  if (text[i] == '-' || text[i] == '+') {
    negative = text[i] == '-';
    ++i;
  }
  auto digits = [&](std::size_t from) {
    std::size_t j = from;
    while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
    return j;
  };
  std::size_t int_end = digits(i);
  if (int_end == i) return std::nullopt;
  Integer whole(std::string(text.substr(i, int_end - i)));
  Rational value(whole);
  std::size_t pos = int_end;
  if (pos < text.size() && text[pos] == '.') {
    std::size_t frac_end = digits(pos + 1);
    if (frac_end == pos + 1) return std::nullopt;
    std::string frac(text.substr(pos + 1, frac_end - pos - 1));
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    value += Rational(Integer(frac), scale);
    pos = frac_end;
  } else if (pos < text.size() && text[pos] == '/') {
    std::size_t den_end = digits(pos + 1);
    if (den_end == pos + 1) return std::nullopt;
    Integer den(std::string(text.substr(pos + 1, den_end - pos - 1)));
    if (den == 0) return std::nullopt;
    value = Rational(whole, den);
    pos = den_end;
  }
  if (pos != text.size()) return std::nullopt;
  value.canonicalize();
  if (negative) value = -value;
  return value;
}

inline Rational floor_dyadic(const Rational& q, unsigned bits) {
  Integer scaled = q.get_num() << bits;
  Integer quotient;
  mpz_fdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  Rational r(quotient, Integer(1) << bits);
  r.canonicalize();
  return r;
}

inline Rational ceil_dyadic(const Rational& q, unsigned bits) {
  Integer scaled = q.get_num() << bits;
  Integer quotient;
  mpz_cdiv_q(quotient.get_mpz_t(), scaled.get_mpz_t(), q.get_den_mpz_t());
  Rational r(quotient, Integer(1) << bits);
  r.canonicalize();
  return r;
}

/// Stable 64-bit hash (FNV-1a) used to derive witness streams from names.
inline std::uint64_t stable_hash(std::string_view text) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace predim
