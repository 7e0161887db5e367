#pragma once

#include <gmp.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace landau {

// Thin RAII wrappers over the GMP C API, only the surface the combinatorics
// module needs. Arbitrary precision, always exact.

class BigInt {
 public:
  BigInt() { mpz_init(z_); }
  explicit BigInt(long v) { mpz_init_set_si(z_, v); }
  explicit BigInt(unsigned long v) { mpz_init_set_ui(z_, v); }
  BigInt(const BigInt& o) { mpz_init_set(z_, o.z_); }
  BigInt(BigInt&& o) noexcept {
    mpz_init(z_);
    mpz_swap(z_, o.z_);
  }
  BigInt& operator=(BigInt o) noexcept {
    mpz_swap(z_, o.z_);
    return *this;
  }
  ~BigInt() { mpz_clear(z_); }

  BigInt& operator+=(const BigInt& o) { mpz_add(z_, z_, o.z_); return *this; }
  BigInt& operator-=(const BigInt& o) { mpz_sub(z_, z_, o.z_); return *this; }
  BigInt& operator*=(const BigInt& o) { mpz_mul(z_, z_, o.z_); return *this; }
  BigInt& operator*=(unsigned long v) { mpz_mul_ui(z_, z_, v); return *this; }
  BigInt& operator*=(long v) { mpz_mul_si(z_, z_, v); return *this; }
  // exact division only; caller guarantees divisibility
  BigInt& operator/=(const BigInt& o) { mpz_divexact(z_, z_, o.z_); return *this; }
  BigInt& operator/=(unsigned long v) { mpz_divexact_ui(z_, z_, v); return *this; }

  friend BigInt operator+(BigInt a, const BigInt& b) { a += b; return a; }
  friend BigInt operator-(BigInt a, const BigInt& b) { a -= b; return a; }
  friend BigInt operator*(BigInt a, const BigInt& b) { a *= b; return a; }
  friend BigInt operator*(BigInt a, unsigned long b) { a *= b; return a; }

  void add_mul(const BigInt& a, unsigned long b) { mpz_addmul_ui(z_, a.z_, b); }
  void add_mul(const BigInt& a, const BigInt& b) { mpz_addmul(z_, a.z_, b.z_); }

  static BigInt pow(unsigned long base, unsigned long exp) {
    BigInt r;
    mpz_ui_pow_ui(r.z_, base, exp);
    return r;
  }
  static BigInt gcd(const BigInt& a, const BigInt& b) {
    BigInt r;
    mpz_gcd(r.z_, a.z_, b.z_);
    return r;
  }
  unsigned long gcd_ui(unsigned long v) const { return mpz_gcd_ui(nullptr, z_, v); }

  friend bool operator==(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) == 0; }
  friend auto operator<=>(const BigInt& a, const BigInt& b) { return mpz_cmp(a.z_, b.z_) <=> 0; }
  bool operator==(long v) const { return mpz_cmp_si(z_, v) == 0; }

  int sign() const { return mpz_sgn(z_); }
  double to_double() const { return mpz_get_d(z_); }
  std::string str() const {
    char* s = mpz_get_str(nullptr, 10, z_);
    std::string r(s);
    void (*freefunc)(void*, size_t);
    mp_get_memory_functions(nullptr, nullptr, &freefunc);
    freefunc(s, r.size() + 1);
    return r;
  }

  mpz_t& raw() { return z_; }
  const mpz_t& raw() const { return z_; }

 private:
  mpz_t z_;
};

// Exact rational; kept canonical (reduced, positive denominator).
class BigRational {
 public:
  BigRational() { mpq_init(q_); }
  BigRational(long num, unsigned long den) {
    mpq_init(q_);
    mpq_set_si(q_, num, den);
    mpq_canonicalize(q_);
  }
  BigRational(const BigInt& num, const BigInt& den) {
    mpq_init(q_);
    mpz_set(mpq_numref(q_), num.raw());
    mpz_set(mpq_denref(q_), den.raw());
    if (mpz_sgn(mpq_denref(q_)) == 0) throw std::invalid_argument("BigRational: zero denominator");
    mpq_canonicalize(q_);
  }
  BigRational(const BigRational& o) {
    mpq_init(q_);
    mpq_set(q_, o.q_);
  }
  BigRational(BigRational&& o) noexcept {
    mpq_init(q_);
    mpq_swap(q_, o.q_);
  }
  BigRational& operator=(BigRational o) noexcept {
    mpq_swap(q_, o.q_);
    return *this;
  }
  ~BigRational() { mpq_clear(q_); }

  BigRational& operator+=(const BigRational& o) { mpq_add(q_, q_, o.q_); return *this; }
  BigRational& operator-=(const BigRational& o) { mpq_sub(q_, q_, o.q_); return *this; }
  BigRational& operator*=(const BigRational& o) { mpq_mul(q_, q_, o.q_); return *this; }

  friend BigRational operator+(BigRational a, const BigRational& b) { a += b; return a; }
  friend BigRational operator-(BigRational a, const BigRational& b) { a -= b; return a; }
  friend BigRational operator*(BigRational a, const BigRational& b) { a *= b; return a; }

  friend bool operator==(const BigRational& a, const BigRational& b) {
    return mpq_equal(a.q_, b.q_) != 0;
  }
  friend auto operator<=>(const BigRational& a, const BigRational& b) {
    return mpq_cmp(a.q_, b.q_) <=> 0;
  }
  bool leq_ui(unsigned long num, unsigned long den = 1) const {
    return mpq_cmp_ui(q_, num, den) <= 0;
  }

  BigInt numerator() const {
    BigInt r;
    mpz_set(r.raw(), mpq_numref(q_));
    return r;
  }
  BigInt denominator() const {
    BigInt r;
    mpz_set(r.raw(), mpq_denref(q_));
    return r;
  }
  double to_double() const { return mpq_get_d(q_); }
  std::string str() const {
    BigInt n = numerator(), d = denominator();
    return d == 1L ? n.str() : n.str() + "/" + d.str();
  }

 private:
  mpq_t q_;
};

}  // namespace landau
