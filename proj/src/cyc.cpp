#include "tcalg/cyc.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <sstream>

#include "tcalg/errors.hpp"

namespace tcalg {
namespace {

using Poly = std::vector<long>;  // low degree first

struct FieldData {
  long n = 1, phi = 1;
  std::vector<std::vector<long>> pw;  // pw[j] = zeta^j in the power basis, j < n
};

struct Embedding {
  long phiN = 1, phiM = 1;
  std::vector<std::vector<long>> E;  // phiN x phiM
  std::vector<long> piv;             // phiM pivot rows of E
  std::vector<std::vector<mpq_class>> Einv;
};

std::mutex g_mu;
std::map<long, Poly> g_cyclo;
std::map<long, std::shared_ptr<const FieldData>> g_fields;
std::map<std::pair<long, long>, std::shared_ptr<const Embedding>> g_emb;

std::vector<long> divisors(long n) {
  std::vector<long> d;
  for (long i = 1; i <= n; ++i)
    if (n % i == 0) d.push_back(i);
  return d;
}

std::vector<long> prime_factors(long n) {
  std::vector<long> p;
  for (long q = 2; q * q <= n; ++q) {
    if (n % q == 0) {
      p.push_back(q);
      while (n % q == 0) n /= q;
    }
  }
  if (n > 1) p.push_back(n);
  return p;
}

// caller holds g_mu
const Poly& cyclotomic_locked(long n) {
  auto it = g_cyclo.find(n);
  if (it != g_cyclo.end()) return it->second;
  Poly num(n + 1, 0);
  num[0] = -1;
  num[n] = 1;
  for (long d : divisors(n)) {
    if (d == n) continue;
    const Poly den = cyclotomic_locked(d);
    // exact division by a monic polynomial
    long dn = (long)num.size() - 1, dd = (long)den.size() - 1;
    Poly q(dn - dd + 1, 0);
    for (long i = dn; i >= dd; --i) {
      long c = num[i];
      q[i - dd] = c;
      if (c != 0)
        for (long j = 0; j <= dd; ++j) num[i - dd + j] -= c * den[j];
    }
    num = q;
  }
  return g_cyclo.emplace(n, num).first->second;
}

std::shared_ptr<const FieldData> field(long n) {
  std::lock_guard<std::mutex> lk(g_mu);
  auto it = g_fields.find(n);
  if (it != g_fields.end()) return it->second;
  auto fd = std::make_shared<FieldData>();
  const Poly& phi_poly = cyclotomic_locked(n);
  fd->n = n;
  fd->phi = (long)phi_poly.size() - 1;
  long phi = fd->phi;
  fd->pw.assign(n, std::vector<long>(phi, 0));
  std::vector<long> cur(phi, 0);
  cur[0] = 1;
  if (phi == 0) throw InternalInconsistency("degenerate cyclotomic field");
  for (long j = 0; j < n; ++j) {
    fd->pw[j] = cur;
    // multiply by x and reduce with x^phi = -sum phi_i x^i
    long top = cur[phi - 1];
    for (long i = phi - 1; i > 0; --i) cur[i] = cur[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (long i = 0; i < phi; ++i) cur[i] -= top * phi_poly[i];
  }
  g_fields.emplace(n, fd);
  return fd;
}

std::vector<mpq_class> reduce(const FieldData& fd, const std::vector<mpq_class>& acc) {
  std::vector<mpq_class> r(fd.phi);
  for (long j = 0; j < fd.n; ++j) {
    if (sgn(acc[j]) == 0) continue;
    if (j < fd.phi) {
      r[j] += acc[j];
      continue;
    }
    const auto& p = fd.pw[j];
    for (long i = 0; i < fd.phi; ++i)
      if (p[i] != 0) r[i] += acc[j] * p[i];
  }
  return r;
}

std::shared_ptr<const Embedding> embedding(long N, long M) {
  {
    std::lock_guard<std::mutex> lk(g_mu);
    auto it = g_emb.find({N, M});
    if (it != g_emb.end()) return it->second;
  }
  auto fN = field(N);
  auto fM = field(M);
  auto e = std::make_shared<Embedding>();
  e->phiN = fN->phi;
  e->phiM = fM->phi;
  e->E.assign(e->phiN, std::vector<long>(e->phiM, 0));
  long step = N / M;
  for (long j = 0; j < e->phiM; ++j) {
    const auto& col = fN->pw[(j * step) % N];
    for (long i = 0; i < e->phiN; ++i) e->E[i][j] = col[i];
  }
  // choose pivot rows: eliminate on E^T
  std::vector<std::vector<mpq_class>> T(e->phiM, std::vector<mpq_class>(e->phiN));
  for (long i = 0; i < e->phiN; ++i)
    for (long j = 0; j < e->phiM; ++j) T[j][i] = e->E[i][j];
  long r = 0;
  for (long c = 0; c < e->phiN && r < e->phiM; ++c) {
    long p = -1;
    for (long i = r; i < e->phiM; ++i)
      if (sgn(T[i][c]) != 0) {
        p = i;
        break;
      }
    if (p < 0) continue;
    std::swap(T[p], T[r]);
    for (long i = 0; i < e->phiM; ++i) {
      if (i == r || sgn(T[i][c]) == 0) continue;
      mpq_class f = T[i][c] / T[r][c];
      for (long k = 0; k < e->phiN; ++k) T[i][k] -= f * T[r][k];
    }
    e->piv.push_back(c);
    ++r;
  }
  // invert E[piv, :]
  long m = e->phiM;
  std::vector<std::vector<mpq_class>> A(m, std::vector<mpq_class>(2 * m));
  for (long i = 0; i < m; ++i) {
    for (long j = 0; j < m; ++j) A[i][j] = e->E[e->piv[i]][j];
    A[i][m + i] = 1;
  }
  for (long c = 0; c < m; ++c) {
    long p = c;
    while (sgn(A[p][c]) == 0) ++p;
    std::swap(A[p], A[c]);
    mpq_class d = A[c][c];
    for (long k = 0; k < 2 * m; ++k) A[c][k] /= d;
    for (long i = 0; i < m; ++i) {
      if (i == c || sgn(A[i][c]) == 0) continue;
      mpq_class f = A[i][c];
      for (long k = 0; k < 2 * m; ++k) A[i][k] -= f * A[c][k];
    }
  }
  e->Einv.assign(m, std::vector<mpq_class>(m));
  for (long i = 0; i < m; ++i)
    for (long j = 0; j < m; ++j) e->Einv[i][j] = A[i][m + j];
  std::lock_guard<std::mutex> lk(g_mu);
  g_emb.emplace(std::make_pair(N, M), e);
  return e;
}

std::vector<mpq_class> lift(long n, const std::vector<mpq_class>& c, long L) {
  if (n == L) return c;
  auto fd = field(L);
  std::vector<mpq_class> acc(L);
  long step = L / n;
  for (size_t j = 0; j < c.size(); ++j)
    if (sgn(c[j]) != 0) acc[(j * step) % L] += c[j];
  return reduce(*fd, acc);
}

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw MalformedScalar("empty coefficient");
  for (char ch : s)
    if (!(std::isdigit((unsigned char)ch) || ch == '-' || ch == '/' || ch == '+'))
      throw MalformedScalar("bad coefficient '" + s + "'");
  std::string t = s[0] == '+' ? s.substr(1) : s;
  mpq_class q;
  if (q.set_str(t, 10) != 0) throw MalformedScalar("bad coefficient '" + s + "'");
  if (q.get_den() == 0) throw MalformedScalar("zero denominator in '" + s + "'");
  q.canonicalize();
  return q;
}

}  // namespace

long euler_phi(long n) {
  long r = n;
  for (long p : prime_factors(n)) r = r / p * (p - 1);
  return r;
}

CycNum::CycNum() : n_(1), c_(1) {}
CycNum::CycNum(long v) : n_(1), c_{mpq_class(v)} {}
CycNum::CycNum(const mpq_class& q) : n_(1), c_{q} {}
CycNum::CycNum(long n, std::vector<mpq_class> c, bool canon) : n_(n), c_(std::move(c)) {
  if (canon) canonicalize();
}

CycNum CycNum::frac(long p, long q) {
  if (q == 0) throw DivByZero("frac with zero denominator");
  mpq_class r(p, q);
  r.canonicalize();
  return CycNum(r);
}

CycNum CycNum::make(long order, std::vector<mpq_class> coeffs) {
  if (order < 1) throw MalformedScalar("order must be positive");
  if ((long)coeffs.size() != euler_phi(order))
    throw MalformedScalar("expected " + std::to_string(euler_phi(order)) +
                          " coefficients for order " + std::to_string(order));
  for (auto& q : coeffs) q.canonicalize();
  return CycNum(order, std::move(coeffs), true);
}

CycNum CycNum::zeta(long n, long k) {
  if (n < 1) throw MalformedScalar("root of unity order must be positive");
  k %= n;
  if (k < 0) k += n;
  if (n == 1) return CycNum(1);
  auto fd = field(n);
  std::vector<mpq_class> acc(n);
  acc[k] = 1;
  return CycNum(n, reduce(*fd, acc), true);
}

void CycNum::canonicalize() {
  auto rational_tail = [&]() {
    for (size_t j = 1; j < c_.size(); ++j)
      if (sgn(c_[j]) != 0) return false;
    return true;
  };
  if (n_ == 1 || rational_tail()) {
    mpq_class q = c_.empty() ? mpq_class(0) : c_[0];
    n_ = 1;
    c_.assign(1, q);
    return;
  }
  if (n_ % 4 == 2) {
    long m = n_ / 2;
    std::vector<mpq_class> acc(m);
    long e = (m + 1) / 2;
    for (size_t j = 0; j < c_.size(); ++j) {
      if (sgn(c_[j]) == 0) continue;
      long idx = (long)((j * e) % m);
      if (j % 2) acc[idx] -= c_[j];
      else acc[idx] += c_[j];
    }
    c_ = reduce(*field(m), acc);
    n_ = m;
    if (n_ == 1 || rational_tail()) {
      canonicalize();
      return;
    }
  }
  bool changed = true;
  while (changed && n_ > 1) {
    changed = false;
    for (long p : prime_factors(n_)) {
      long M = n_ / p;
      if (M % 4 == 2) M /= 2;
      auto e = embedding(n_, M);
      std::vector<mpq_class> y(e->phiM);
      for (long i = 0; i < e->phiM; ++i)
        for (long j = 0; j < e->phiM; ++j)
          if (sgn(e->Einv[i][j]) != 0) y[i] += e->Einv[i][j] * c_[e->piv[j]];
      bool ok = true;
      for (long i = 0; i < e->phiN && ok; ++i) {
        mpq_class s = 0;
        for (long j = 0; j < e->phiM; ++j)
          if (e->E[i][j] != 0) s += y[j] * e->E[i][j];
        if (s != c_[i]) ok = false;
      }
      if (ok) {
        n_ = M;
        c_ = std::move(y);
        changed = true;
        break;
      }
    }
  }
  if (rational_tail()) {
    mpq_class q = c_[0];
    n_ = 1;
    c_.assign(1, q);
  }
}

CycNum CycNum::operator-() const {
  CycNum r = *this;
  for (auto& q : r.c_) q = -q;
  return r;
}

CycNum operator+(const CycNum& a, const CycNum& b) {
  if (b.n_ == 1) {
    CycNum r = a;
    r.c_[0] += b.c_[0];
    return r;
  }
  if (a.n_ == 1) return b + a;
  long L = std::lcm(a.n_, b.n_);
  auto x = lift(a.n_, a.c_, L);
  auto y = lift(b.n_, b.c_, L);
  for (size_t i = 0; i < x.size(); ++i) x[i] += y[i];
  return CycNum(L, std::move(x), true);
}

CycNum operator-(const CycNum& a, const CycNum& b) { return a + (-b); }

CycNum operator*(const CycNum& a, const CycNum& b) {
  if (a.n_ == 1 || b.n_ == 1) {
    const CycNum& s = a.n_ == 1 ? a : b;
    const CycNum& o = a.n_ == 1 ? b : a;
    if (sgn(s.c_[0]) == 0) return CycNum();
    CycNum r = o;
    for (auto& q : r.c_) q *= s.c_[0];
    return r;
  }
  long L = std::lcm(a.n_, b.n_);
  auto x = lift(a.n_, a.c_, L);
  auto y = lift(b.n_, b.c_, L);
  auto fd = field(L);
  std::vector<mpq_class> acc(L);
  for (size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (size_t j = 0; j < y.size(); ++j)
      if (sgn(y[j]) != 0) acc[(i + j) % L] += x[i] * y[j];
  }
  return CycNum(L, reduce(*fd, acc), true);
}

CycNum CycNum::inv() const {
  if (is_zero()) throw DivByZero("inverse of zero");
  if (n_ == 1) return CycNum(mpq_class(1) / c_[0]);
  auto fd = field(n_);
  long phi = fd->phi;
  // columns: x * zeta^j
  std::vector<std::vector<mpq_class>> A(phi, std::vector<mpq_class>(phi + 1));
  for (long j = 0; j < phi; ++j) {
    std::vector<mpq_class> acc(n_);
    for (long i = 0; i < phi; ++i)
      if (sgn(c_[i]) != 0) acc[(i + j) % n_] += c_[i];
    auto col = reduce(*fd, acc);
    for (long i = 0; i < phi; ++i) A[i][j] = col[i];
  }
  A[0][phi] = 1;
  for (long c = 0; c < phi; ++c) {
    long p = c;
    while (p < phi && sgn(A[p][c]) == 0) ++p;
    if (p == phi) throw InternalInconsistency("singular multiplication matrix");
    std::swap(A[p], A[c]);
    mpq_class d = A[c][c];
    for (long k = c; k <= phi; ++k) A[c][k] /= d;
    for (long i = 0; i < phi; ++i) {
      if (i == c || sgn(A[i][c]) == 0) continue;
      mpq_class f = A[i][c];
      for (long k = c; k <= phi; ++k) A[i][k] -= f * A[c][k];
    }
  }
  std::vector<mpq_class> y(phi);
  for (long i = 0; i < phi; ++i) y[i] = A[i][phi];
  return CycNum(n_, std::move(y), false);
}

CycNum operator/(const CycNum& a, const CycNum& b) {
  if (b.is_zero()) throw DivByZero("division by zero");
  return a * b.inv();
}

CycNum CycNum::conj() const {
  if (n_ == 1) return *this;
  auto fd = field(n_);
  std::vector<mpq_class> acc(n_);
  for (size_t j = 0; j < c_.size(); ++j)
    if (sgn(c_[j]) != 0) acc[(n_ - (long)j) % n_] += c_[j];
  return CycNum(n_, reduce(*fd, acc), false);
}

CycNum CycNum::pow(long e) const {
  if (e < 0) return inv().pow(-e);
  CycNum r(1), b = *this;
  while (e) {
    if (e & 1) r *= b;
    e >>= 1;
    if (e) b *= b;
  }
  return r;
}

bool operator<(const CycNum& a, const CycNum& b) {
  if (a.n_ != b.n_) return a.n_ < b.n_;
  for (size_t i = 0; i < a.c_.size(); ++i)
    if (a.c_[i] != b.c_[i]) return a.c_[i] < b.c_[i];
  return false;
}

std::optional<std::pair<long, long>> CycNum::root_of_unity() const {
  if (is_zero()) return std::nullopt;
  long N = n_ % 2 ? 2 * n_ : n_;
  for (long k = 0; k < N; ++k) {
    if (CycNum::zeta(N, k) == *this) {
      long g = std::gcd(k, N);
      return std::make_pair(k / g, N / g);
    }
  }
  return std::nullopt;
}

std::complex<double> CycNum::approx() const {
  std::complex<double> s = 0;
  for (size_t j = 0; j < c_.size(); ++j) {
    if (sgn(c_[j]) == 0) continue;
    double ang = 2.0 * M_PI * (double)j / (double)n_;
    s += c_[j].get_d() * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  return s;
}

std::string CycNum::str() const {
  if (n_ == 1) return c_[0].get_str();
  std::ostringstream os;
  bool first = true;
  for (size_t j = 0; j < c_.size(); ++j) {
    const mpq_class& q = c_[j];
    if (sgn(q) == 0) continue;
    std::string mon = j == 0 ? "" : ("z" + std::to_string(n_) + (j == 1 ? "" : "^" + std::to_string(j)));
    mpq_class aq = abs(q);
    if (!first) os << (sgn(q) < 0 ? " - " : " + ");
    else if (sgn(q) < 0) os << "-";
    if (mon.empty()) os << aq.get_str();
    else if (aq == 1) os << mon;
    else if (aq.get_den() == 1) os << aq.get_str() << "*" << mon;
    else os << "(" << aq.get_str() << ")*" << mon;
    first = false;
  }
  return os.str();
}

std::ostream& operator<<(std::ostream& os, const CycNum& x) { return os << x.str(); }

nlohmann::json CycNum::to_json() const {
  nlohmann::json c = nlohmann::json::array();
  for (const auto& q : c_) c.push_back(q.get_str());
  return {{"order", n_}, {"coeffs", c}};
}

CycNum CycNum::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("order") || !j.contains("coeffs"))
    throw MalformedScalar("expected {order, coeffs}");
  if (!j["order"].is_number_integer()) throw MalformedScalar("order must be an integer");
  if (!j["coeffs"].is_array()) throw MalformedScalar("coeffs must be an array");
  std::vector<mpq_class> c;
  for (const auto& e : j["coeffs"]) {
    if (e.is_string()) c.push_back(parse_rational(e.get<std::string>()));
    else if (e.is_number_integer()) c.push_back(mpq_class(e.get<long>()));
    else throw MalformedScalar("coefficient must be a fraction string");
  }
  return make(j["order"].get<long>(), std::move(c));
}

namespace {

std::optional<CycNum> sqrt_prime(long p) {
  if (p == 2) return CycNum::zeta(8, 1) + CycNum::zeta(8, 7);
  if (p > 2000) return std::nullopt;
  CycNum g;
  for (long k = 1; k < p; ++k) {
    // Legendre symbol via Euler's criterion
    long e = (p - 1) / 2, b = k % p, r = 1;
    while (e) {
      if (e & 1) r = r * b % p;
      b = b * b % p;
      e >>= 1;
    }
    g += (r == 1 ? CycNum(1) : CycNum(-1)) * CycNum::zeta(p, k);
  }
  if (p % 4 == 1) return g;
  return -CycNum::zeta(4, 1) * g;
}

// sqrt of a nonnegative integer
std::optional<CycNum> sqrt_integer(mpz_class t) {
  if (t == 0) return CycNum(0);
  mpz_class sq = 1, sf = 1;
  for (long p = 2; p < 100000 && p * p <= t; ++p) {
    while (t % (p * p) == 0) {
      t /= p * p;
      sq *= p;
    }
    if (t % p == 0) {
      t /= p;
      sf *= p;
    }
  }
  if (t > 1) {
    mpz_class r;
    if (mpz_perfect_square_p(t.get_mpz_t())) {
      mpz_sqrt(r.get_mpz_t(), t.get_mpz_t());
      sq *= r;
    } else if (mpz_probab_prime_p(t.get_mpz_t(), 30) != 0) {
      sf *= t;
    } else {
      return std::nullopt;
    }
  }
  CycNum res{mpq_class(sq)};
  mpz_class rem = sf;
  for (long p = 2; rem > 1; ++p) {
    if (p > 2000) return std::nullopt;
    if (rem % p == 0) {
      rem /= p;
      auto s = sqrt_prime(p);
      if (!s) return std::nullopt;
      res *= *s;
    }
  }
  return res;
}

std::optional<CycNum> sqrt_rational(const mpq_class& q) {
  if (sgn(q) < 0) {
    auto s = sqrt_rational(-q);
    if (!s) return std::nullopt;
    return CycNum::zeta(4, 1) * *s;
  }
  mpz_class num = q.get_num(), den = q.get_den();
  auto s = sqrt_integer(num * den);
  if (!s) return std::nullopt;
  return *s / CycNum(mpq_class(den));
}

// x = q * zeta_N^k with q rational; returns (q, k, N)
std::optional<std::tuple<mpq_class, long, long>> split_unit(const CycNum& x) {
  if (x.is_rational()) return std::make_tuple(x.rational(), 0L, 1L);
  long N = x.order() % 2 ? 2 * x.order() : x.order();
  for (long k = 1; k < N; ++k) {
    CycNum y = x * CycNum::zeta(N, -k);
    if (y.is_rational()) return std::make_tuple(y.rational(), k, N);
  }
  return std::nullopt;
}

}  // namespace

namespace {

// Best rational approximation with bounded denominator, by continued fractions.
std::optional<mpq_class> rationalize(double v, long maxden) {
  if (!std::isfinite(v)) return std::nullopt;
  long p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double x = v;
  for (int it = 0; it < 40; ++it) {
    double a = std::floor(x);
    if (std::fabs(a) > 1e12) break;
    long ai = (long)a;
    long p2 = ai * p1 + p0, q2 = ai * q1 + q0;
    if (q2 > maxden) break;
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    if (std::fabs(v - (double)p1 / (double)q1) < 1e-9) return mpq_class(p1, q1);
    double f = x - a;
    if (f < 1e-14) break;
    x = 1.0 / f;
  }
  if (q1 != 0 && std::fabs(v - (double)p1 / (double)q1) < 1e-9) return mpq_class(p1, q1);
  return std::nullopt;
}

// Square root recognized numerically in Q(zeta_M) for a few conductors M
// divisible by that of x, then verified exactly.
std::optional<CycNum> sqrt_by_embeddings(const CycNum& x) {
  long N = x.order();
  std::vector<long> Ms;
  for (long extra : {1L, 4L, 8L, 12L, 20L, 3L, 5L}) {
    long M = std::lcm(N, extra);
    if (M % 4 == 2) M /= 2;
    if (euler_phi(M) <= 12 && std::find(Ms.begin(), Ms.end(), M) == Ms.end()) Ms.push_back(M);
  }
  const double tau = 2 * std::acos(-1.0);
  for (long M : Ms) {
    std::vector<long> units;
    for (long j = 1; j <= M; ++j)
      if (std::gcd(j, M) == 1) units.push_back(j % M);
    int f = (int)units.size();
    // V[j][k] = zeta_M^(units[j] k), solve V c = y
    std::vector<std::vector<std::complex<double>>> V(f, std::vector<std::complex<double>>(f));
    std::vector<std::complex<double>> root(f);
    for (int j = 0; j < f; ++j) {
      for (int k = 0; k < f; ++k) V[j][k] = std::polar(1.0, tau * (double)((units[j] * k) % M) / (double)M);
      std::complex<double> xv = 0;
      long jn = units[j] % N;
      for (size_t k = 0; k < x.coeffs().size(); ++k)
        xv += x.coeffs()[k].get_d() * std::polar(1.0, tau * (double)((jn * (long)k) % N) / (double)N);
      root[j] = std::sqrt(xv);
    }
    // LU-free: invert V once by Gauss-Jordan
    std::vector<std::vector<std::complex<double>>> inv(f, std::vector<std::complex<double>>(f));
    auto W = V;
    for (int i = 0; i < f; ++i) inv[i][i] = 1;
    bool singular = false;
    for (int c = 0; c < f && !singular; ++c) {
      int piv = c;
      for (int r = c + 1; r < f; ++r)
        if (std::abs(W[r][c]) > std::abs(W[piv][c])) piv = r;
      if (std::abs(W[piv][c]) < 1e-12) singular = true;
      std::swap(W[c], W[piv]);
      std::swap(inv[c], inv[piv]);
      auto d = W[c][c];
      for (int k = 0; k < f; ++k) {
        W[c][k] /= d;
        inv[c][k] /= d;
      }
      for (int r = 0; r < f; ++r) {
        if (r == c) continue;
        auto m = W[r][c];
        if (m == 0.0) continue;
        for (int k = 0; k < f; ++k) {
          W[r][k] -= m * W[c][k];
          inv[r][k] -= m * inv[c][k];
        }
      }
    }
    if (singular) continue;
    for (long pat = 0; pat < (1L << (f - 1)); ++pat) {
      std::vector<std::complex<double>> y(f);
      for (int j = 0; j < f; ++j) y[j] = (j > 0 && (pat >> (j - 1) & 1)) ? -root[j] : root[j];
      CycNum cand(0);
      bool ok = true;
      for (int k = 0; k < f && ok; ++k) {
        std::complex<double> ck = 0;
        for (int j = 0; j < f; ++j) ck += inv[k][j] * y[j];
        if (std::fabs(ck.imag()) > 1e-7) {
          ok = false;
          break;
        }
        auto q = rationalize(ck.real(), 100000);
        if (!q) {
          ok = false;
          break;
        }
        if (*q != 0) cand += CycNum(*q) * CycNum::zeta(M, k);
      }
      if (ok && cand * cand == x) return cand;
    }
  }
  return std::nullopt;
}
}  // namespace

std::optional<CycNum> cyc_sqrt(const CycNum& x) {
  if (x.is_zero()) return CycNum(0);
  auto su = split_unit(x);
  if (!su) return sqrt_by_embeddings(x);
  auto [q, k, N] = *su;
  auto s = sqrt_rational(q);
  if (!s) return sqrt_by_embeddings(x);
  CycNum r = *s * CycNum::zeta(2 * N, k);
  if (r * r != x) throw InternalInconsistency("square root check failed");
  return r;
}

std::optional<std::vector<CycNum>> cyc_roots(const CycNum& x, long n) {
  if (n < 1) throw MalformedScalar("root degree must be positive");
  if (x.is_zero()) return std::vector<CycNum>{CycNum(0)};
  if (n == 1) return std::vector<CycNum>{x};
  auto su = split_unit(x);
  if (!su) {
    if (n != 2) return std::nullopt;
    auto s = cyc_sqrt(x);
    if (!s) return std::nullopt;
    return std::vector<CycNum>{*s, -*s};
  }
  auto [q, k, N] = *su;
  if (sgn(q) < 0) {
    q = -q;
    // -zeta_N^k = zeta_{2N}^{2k+N}
    k = 2 * k + N;
    N = 2 * N;
  }
  CycNum base;
  mpz_class rn, rd;
  bool exact_num = mpz_root(rn.get_mpz_t(), q.get_num().get_mpz_t(), n) != 0;
  bool exact_den = mpz_root(rd.get_mpz_t(), q.get_den().get_mpz_t(), n) != 0;
  if (exact_num && exact_den) {
    base = CycNum(mpq_class(rn, rd));
  } else if (n == 2) {
    auto s = sqrt_rational(q);
    if (!s) return std::nullopt;
    base = *s;
  } else {
    return std::nullopt;
  }
  base *= CycNum::zeta(N * n, k);
  std::vector<CycNum> out;
  for (long j = 0; j < n; ++j) out.push_back(base * CycNum::zeta(n, j));
  for (const auto& r : out)
    if (r.pow(n) != x) throw InternalInconsistency("root check failed");
  return out;
}

}  // namespace tcalg
