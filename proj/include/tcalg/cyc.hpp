#pragma once
// Exact arithmetic in the cyclotomic closure of Q.
#include <gmpxx.h>

#include <complex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

namespace tcalg {

// Element of Q(zeta_N) in the power basis zeta_N^0 .. zeta_N^{phi(N)-1}.
// Always stored at its minimal conductor N (never N = 2 mod 4).
class CycNum {
 public:
  CycNum();
  CycNum(long v);  // NOLINT: implicit on purpose, integers embed
  CycNum(const mpq_class& q);  // NOLINT
  static CycNum make(long order, std::vector<mpq_class> coeffs);
  static CycNum zeta(long n, long k = 1);
  static CycNum frac(long p, long q);

  long order() const { return n_; }
  const std::vector<mpq_class>& coeffs() const { return c_; }
  bool is_zero() const { return n_ == 1 && sgn(c_[0]) == 0; }
  bool is_one() const { return n_ == 1 && c_[0] == 1; }
  bool is_rational() const { return n_ == 1; }
  const mpq_class& rational() const { return c_[0]; }

  CycNum operator-() const;
  CycNum inv() const;
  CycNum conj() const;
  CycNum pow(long e) const;
  friend CycNum operator+(const CycNum& a, const CycNum& b);
  friend CycNum operator-(const CycNum& a, const CycNum& b);
  friend CycNum operator*(const CycNum& a, const CycNum& b);
  friend CycNum operator/(const CycNum& a, const CycNum& b);
  CycNum& operator+=(const CycNum& b) { return *this = *this + b; }
  CycNum& operator-=(const CycNum& b) { return *this = *this - b; }
  CycNum& operator*=(const CycNum& b) { return *this = *this * b; }
  CycNum& operator/=(const CycNum& b) { return *this = *this / b; }
  friend bool operator==(const CycNum& a, const CycNum& b) {
    return a.n_ == b.n_ && a.c_ == b.c_;
  }
  friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }
  // Total order on canonical forms; only used for sorting / map keys.
  friend bool operator<(const CycNum& a, const CycNum& b);

  // (k, n) with *this == zeta_n^k, n minimal, 0 <= k < n.
  std::optional<std::pair<long, long>> root_of_unity() const;
  std::complex<double> approx() const;
  std::string str() const;
  nlohmann::json to_json() const;
  static CycNum from_json(const nlohmann::json& j);

 private:
  CycNum(long n, std::vector<mpq_class> c, bool canon);
  void canonicalize();
  long n_;
  std::vector<mpq_class> c_;
};

std::ostream& operator<<(std::ostream& os, const CycNum& x);

long euler_phi(long n);

// Square root inside the cyclotomic closure when it can be recognized:
// rational times a root of unity, or found by numeric recognition in a
// small cyclotomic field and verified exactly. nullopt otherwise.
std::optional<CycNum> cyc_sqrt(const CycNum& x);
// All n-th roots of x in the cyclotomic closure, when x = q * root of unity
// with q an exact n-th power; nullopt when not recognized.
std::optional<std::vector<CycNum>> cyc_roots(const CycNum& x, long n);

}  // namespace tcalg
