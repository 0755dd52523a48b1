// Copyright 2026 the dlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <gmpxx.h>
#include <mpfr.h>

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dlab/errors.hpp"

namespace dlab {

// Exact arbitrary-precision integers and rationals. mpq_class keeps values
// canonical: lowest terms, positive denominator.
using BigInt = mpz_class;
using BigRat = mpq_class;

using Precision = mpfr_prec_t;

inline constexpr Precision kMinPrecision = 8;
inline constexpr Precision kDefaultPrecision = 256;
inline constexpr Precision kDefaultPrecisionCap = 1L << 20;

BigInt binomial(unsigned long n, unsigned long k);
BigInt factorial(unsigned long n);
BigInt lcm_upto(unsigned long n);
// base^e for integer e; negative e inverts (base must be nonzero then).
BigRat pow_rat(const BigRat& base, long e);
// Canonical "p/q" or "p" rendering; parse accepts the same plus sign.
std::string rat_string(const BigRat& v);
BigRat parse_rat(const std::string& s);  // throws MalformedInput
// Round up to the nearest integer.
BigInt ceil_rat(const BigRat& v);

enum class Sign { Negative, Zero, Positive };
enum class Verdict { Holds, Fails, Indeterminate };

const char* verdict_name(Verdict v);
const char* sign_name(Sign s);

// A closed interval with dyadic-rational endpoints (MPFR numbers are dyadic).
// Every operation rounds outward, so the result interval encloses the exact
// result for any inputs drawn from the operand intervals.
class RealInterval {
 public:
  RealInterval();  // [0, 0] at kMinPrecision
  RealInterval(const RealInterval& o);
  RealInterval(RealInterval&& o) noexcept;
  RealInterval& operator=(const RealInterval& o);
  RealInterval& operator=(RealInterval&& o) noexcept;
  ~RealInterval();

  // Outward-rounded enclosure of an exact rational at the given precision.
  static RealInterval from_rat(const BigRat& v, Precision p);
  static RealInterval from_rats(const BigRat& lo, const BigRat& hi, Precision p);
  static RealInterval exact_zero();

  Precision precision_bits() const;
  BigRat lower() const;  // exact endpoint value
  BigRat upper() const;
  BigRat width() const;  // exact upper - lower
  double lower_double() const;
  double upper_double() const;
  double mid_double() const;

  bool is_point() const;  // lower == upper
  bool contains(const BigRat& v) const;
  bool contains_interval(const RealInterval& inner) const;
  std::optional<Sign> decided_sign() const;

  // Raw endpoint access for the arithmetic kernels.
  const mpfr_t& lo() const { return lo_; }
  const mpfr_t& hi() const { return hi_; }
  mpfr_t& lo() { return lo_; }
  mpfr_t& hi() { return hi_; }

 private:
  explicit RealInterval(Precision p);
  friend RealInterval make_interval(Precision p);
  mpfr_t lo_;
  mpfr_t hi_;
};

RealInterval make_interval(Precision p);

RealInterval iv_add(const RealInterval& a, const RealInterval& b, Precision p);
RealInterval iv_sub(const RealInterval& a, const RealInterval& b, Precision p);
RealInterval iv_mul(const RealInterval& a, const RealInterval& b, Precision p);
RealInterval iv_neg(const RealInterval& a, Precision p);
RealInterval iv_abs(const RealInterval& a, Precision p);
// Denominator interval must exclude zero; throws IndeterminateSign otherwise.
RealInterval iv_div(const RealInterval& a, const RealInterval& b, Precision p);
RealInterval iv_pow_ui(const RealInterval& a, unsigned long e, Precision p);
// a must be nonnegative (lower endpoint >= 0).
RealInterval iv_rootn(const RealInterval& a, unsigned long r, Precision p);
// a must be certified positive; throws IndeterminateSign otherwise.
RealInterval iv_log(const RealInterval& a, Precision p);
RealInterval iv_exp(const RealInterval& a, Precision p);

// Symbolic name for a real constant. Bundled ids: one, sqrt2, log2, zeta2,
// zeta3, e, pi. A name that parses as "p" or "p/q" denotes that exact
// rational. Further rational ids can be registered at runtime.
struct ConstantId {
  std::string name;
};

class ConstantRegistry {
 public:
  static ConstantRegistry& global();

  // Registering the same name twice requires an identical value.
  void register_rational(const std::string& name, const BigRat& value);
  bool known(const std::string& name) const;
  std::optional<BigRat> exact_value(const std::string& name) const;
  RealInterval enclose(const std::string& name, Precision p) const;

 private:
  ConstantRegistry();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

// Enclosure of the named constant with width <= 2^-(p-4).
// Throws UnknownConstant for unregistered ids.
RealInterval enclose_constant(const ConstantId& id, Precision p);

// A certified real number: re-evaluable enclosure at any precision, plus an
// exact rational value when one is structurally known. Immutable and
// shareable. Even powers of sqrt2 reduce to exact rationals, which is what
// makes exact zero detection work for lifted algebraic relations.
class CertReal {
 public:
  CertReal();  // exact 0
  static CertReal from_rat(const BigRat& v);
  static CertReal from_int(long v);
  static CertReal constant(const ConstantId& id);
  // Enclosure provider with no exact value (used by data-driven estimators).
  static CertReal from_fn(std::function<RealInterval(Precision)> fn);

  RealInterval enclose(Precision p) const;
  std::optional<BigRat> exact() const;

  friend CertReal operator+(const CertReal& a, const CertReal& b);
  friend CertReal operator-(const CertReal& a, const CertReal& b);
  friend CertReal operator*(const CertReal& a, const CertReal& b);
  friend CertReal operator-(const CertReal& a);

  struct Expr;
  explicit CertReal(std::shared_ptr<const Expr> e) : expr_(std::move(e)) {}
  const std::shared_ptr<const Expr>& expr() const { return expr_; }

 private:
  std::shared_ptr<const Expr> expr_;
};

CertReal cert_abs(const CertReal& a);
CertReal cert_pow_ui(const CertReal& a, unsigned long e);
CertReal cert_rootn(const CertReal& a, unsigned long r);
CertReal cert_log(const CertReal& a);
CertReal cert_exp(const CertReal& a);
CertReal cert_recip(const CertReal& a);

// Decides the sign with precision escalation (doubling) from `start` up to
// `cap`. Exact rationals decide immediately. Throws IndeterminateSign when
// the cap is reached with zero still inside the enclosure.
Sign certified_sign(const CertReal& x, Precision start, Precision cap);

// Certified comparisons derived from certified_sign; Indeterminate instead
// of throwing.
Verdict certified_le(const CertReal& a, const CertReal& b, Precision start,
                     Precision cap);
Verdict certified_lt(const CertReal& a, const CertReal& b, Precision start,
                     Precision cap);
Verdict certified_ge(const CertReal& a, const CertReal& b, Precision start,
                     Precision cap);
Verdict certified_gt(const CertReal& a, const CertReal& b, Precision start,
                     Precision cap);

}  // namespace dlab
