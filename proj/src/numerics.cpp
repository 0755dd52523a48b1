// Copyright 2026 the dlab authors
// SPDX-License-Identifier: Apache-2.0

#include "dlab/numerics.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <mutex>
#include <utility>

namespace dlab {

BigInt binomial(unsigned long n, unsigned long k) {
  BigInt r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return r;
}

BigInt factorial(unsigned long n) {
  BigInt r;
  mpz_fac_ui(r.get_mpz_t(), n);
  return r;
}

BigInt lcm_upto(unsigned long n) {
  BigInt r = 1;
  for (unsigned long k = 2; k <= n; ++k) {
    mpz_lcm_ui(r.get_mpz_t(), r.get_mpz_t(), k);
  }
  return r;
}

BigRat pow_rat(const BigRat& base, long e) {
  if (e == 0) return BigRat(1);
  if (base == 0 && e < 0) throw InvalidSpec("0 cannot be raised to a negative power");
  BigRat b = base;
  unsigned long a = static_cast<unsigned long>(e < 0 ? -e : e);
  BigRat r;
  mpz_pow_ui(r.get_num_mpz_t(), b.get_num_mpz_t(), a);
  mpz_pow_ui(r.get_den_mpz_t(), b.get_den_mpz_t(), a);
  r.canonicalize();
  if (e < 0) r = 1 / r;
  return r;
}

std::string rat_string(const BigRat& v) {
  if (v.get_den() == 1) return v.get_num().get_str();
  return v.get_num().get_str() + "/" + v.get_den().get_str();
}

BigRat parse_rat(const std::string& s) {
  if (s.empty()) throw MalformedInput("empty rational literal");
  size_t i = 0;
  if (s[i] == '+' || s[i] == '-') ++i;
  if (i == s.size()) throw MalformedInput("bad rational literal: " + s);
  bool seen_slash = false;
  for (size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/') {
      if (seen_slash || j == i || j + 1 == s.size())
        throw MalformedInput("bad rational literal: " + s);
      seen_slash = true;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[j])))
      throw MalformedInput("bad rational literal: " + s);
  }
  BigRat v;
  if (mpq_set_str(v.get_mpq_t(), s.c_str(), 10) != 0)
    throw MalformedInput("bad rational literal: " + s);
  if (v.get_den() == 0) throw MalformedInput("zero denominator: " + s);
  v.canonicalize();
  return v;
}

BigInt ceil_rat(const BigRat& v) {
  BigInt q;
  mpz_cdiv_q(q.get_mpz_t(), v.get_num().get_mpz_t(), v.get_den().get_mpz_t());
  return q;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "HOLDS";
    case Verdict::Fails: return "FAILS";
    case Verdict::Indeterminate: return "INDETERMINATE";
  }
  return "?";
}

const char* sign_name(Sign s) {
  switch (s) {
    case Sign::Negative: return "negative";
    case Sign::Zero: return "zero";
    case Sign::Positive: return "positive";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// RealInterval

RealInterval::RealInterval(Precision p) {
  mpfr_init2(lo_, std::max<Precision>(p, kMinPrecision));
  mpfr_init2(hi_, std::max<Precision>(p, kMinPrecision));
}

RealInterval::RealInterval() : RealInterval(kMinPrecision) {
  mpfr_set_zero(lo_, 1);
  mpfr_set_zero(hi_, 1);
}

RealInterval::RealInterval(const RealInterval& o) {
  mpfr_init2(lo_, mpfr_get_prec(o.lo_));
  mpfr_init2(hi_, mpfr_get_prec(o.hi_));
  mpfr_set(lo_, o.lo_, MPFR_RNDD);
  mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

RealInterval::RealInterval(RealInterval&& o) noexcept {
  mpfr_init2(lo_, kMinPrecision);
  mpfr_init2(hi_, kMinPrecision);
  mpfr_swap(lo_, o.lo_);
  mpfr_swap(hi_, o.hi_);
}

RealInterval& RealInterval::operator=(const RealInterval& o) {
  if (this != &o) {
    mpfr_set_prec(lo_, mpfr_get_prec(o.lo_));
    mpfr_set_prec(hi_, mpfr_get_prec(o.hi_));
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
  }
  return *this;
}

RealInterval& RealInterval::operator=(RealInterval&& o) noexcept {
  if (this != &o) {
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
  }
  return *this;
}

RealInterval::~RealInterval() {
  mpfr_clear(lo_);
  mpfr_clear(hi_);
}

RealInterval make_interval(Precision p) { return RealInterval(p); }

RealInterval RealInterval::from_rat(const BigRat& v, Precision p) {
  RealInterval r(p);
  mpfr_set_q(r.lo_, v.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, v.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::from_rats(const BigRat& lo, const BigRat& hi,
                                     Precision p) {
  if (lo > hi) throw InvalidSpec("interval endpoints out of order");
  RealInterval r(p);
  mpfr_set_q(r.lo_, lo.get_mpq_t(), MPFR_RNDD);
  mpfr_set_q(r.hi_, hi.get_mpq_t(), MPFR_RNDU);
  return r;
}

RealInterval RealInterval::exact_zero() { return RealInterval(); }

Precision RealInterval::precision_bits() const { return mpfr_get_prec(lo_); }

static BigRat mpfr_to_rat(const mpfr_t& x) {
  if (mpfr_zero_p(x)) return BigRat(0);
  BigRat q;
  mpfr_get_q(q.get_mpq_t(), x);
  return q;
}

BigRat RealInterval::lower() const { return mpfr_to_rat(lo_); }
BigRat RealInterval::upper() const { return mpfr_to_rat(hi_); }
BigRat RealInterval::width() const { return upper() - lower(); }
double RealInterval::lower_double() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double RealInterval::upper_double() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double RealInterval::mid_double() const {
  mpfr_t m;
  mpfr_init2(m, 64);
  mpfr_add(m, lo_, hi_, MPFR_RNDN);
  mpfr_div_2ui(m, m, 1, MPFR_RNDN);
  double d = mpfr_get_d(m, MPFR_RNDN);
  mpfr_clear(m);
  return d;
}

bool RealInterval::is_point() const { return mpfr_equal_p(lo_, hi_) != 0; }

bool RealInterval::contains(const BigRat& v) const {
  return mpfr_cmp_q(lo_, v.get_mpq_t()) <= 0 &&
         mpfr_cmp_q(hi_, v.get_mpq_t()) >= 0;
}

bool RealInterval::contains_interval(const RealInterval& inner) const {
  return mpfr_cmp(lo_, inner.lo_) <= 0 && mpfr_cmp(hi_, inner.hi_) >= 0;
}

std::optional<Sign> RealInterval::decided_sign() const {
  if (mpfr_sgn(lo_) > 0) return Sign::Positive;
  if (mpfr_sgn(hi_) < 0) return Sign::Negative;
  if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return Sign::Zero;
  return std::nullopt;
}

RealInterval iv_add(const RealInterval& a, const RealInterval& b, Precision p) {
  RealInterval r(p);
  mpfr_add(r.lo(), a.lo(), b.lo(), MPFR_RNDD);
  mpfr_add(r.hi(), a.hi(), b.hi(), MPFR_RNDU);
  return r;
}

RealInterval iv_sub(const RealInterval& a, const RealInterval& b, Precision p) {
  RealInterval r(p);
  mpfr_sub(r.lo(), a.lo(), b.hi(), MPFR_RNDD);
  mpfr_sub(r.hi(), a.hi(), b.lo(), MPFR_RNDU);
  return r;
}

RealInterval iv_mul(const RealInterval& a, const RealInterval& b, Precision p) {
  // Endpoint products with directed rounding: minimum of the four products
  // rounded down, maximum rounded up.
  RealInterval r(p);
  mpfr_t t;
  mpfr_init2(t, std::max<Precision>(p, kMinPrecision));
  const mpfr_t* as[2] = {&a.lo(), &a.hi()};
  const mpfr_t* bs[2] = {&b.lo(), &b.hi()};
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_mul(t, *as[i], *bs[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo()) < 0) mpfr_set(r.lo(), t, MPFR_RNDD);
      mpfr_mul(t, *as[i], *bs[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi()) > 0) mpfr_set(r.hi(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

RealInterval iv_neg(const RealInterval& a, Precision p) {
  RealInterval r(p);
  mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
  mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
  return r;
}

RealInterval iv_abs(const RealInterval& a, Precision p) {
  RealInterval r(p);
  if (mpfr_sgn(a.lo()) >= 0) {
    mpfr_set(r.lo(), a.lo(), MPFR_RNDD);
    mpfr_set(r.hi(), a.hi(), MPFR_RNDU);
  } else if (mpfr_sgn(a.hi()) <= 0) {
    mpfr_neg(r.lo(), a.hi(), MPFR_RNDD);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
  } else {
    mpfr_set_zero(r.lo(), 1);
    mpfr_neg(r.hi(), a.lo(), MPFR_RNDU);
    if (mpfr_cmp(a.hi(), r.hi()) > 0) mpfr_set(r.hi(), a.hi(), MPFR_RNDU);
  }
  return r;
}

RealInterval iv_div(const RealInterval& a, const RealInterval& b, Precision p) {
  if (mpfr_sgn(b.lo()) <= 0 && mpfr_sgn(b.hi()) >= 0)
    throw IndeterminateSign("division by an interval containing zero");
  RealInterval r(p);
  mpfr_t t;
  mpfr_init2(t, std::max<Precision>(p, kMinPrecision));
  const mpfr_t* as[2] = {&a.lo(), &a.hi()};
  const mpfr_t* bs[2] = {&b.lo(), &b.hi()};
  bool first = true;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      mpfr_div(t, *as[i], *bs[j], MPFR_RNDD);
      if (first || mpfr_cmp(t, r.lo()) < 0) mpfr_set(r.lo(), t, MPFR_RNDD);
      mpfr_div(t, *as[i], *bs[j], MPFR_RNDU);
      if (first || mpfr_cmp(t, r.hi()) > 0) mpfr_set(r.hi(), t, MPFR_RNDU);
      first = false;
    }
  mpfr_clear(t);
  return r;
}

RealInterval iv_pow_ui(const RealInterval& a, unsigned long e, Precision p) {
  RealInterval r(p);
  if (e == 0) {
    mpfr_set_ui(r.lo(), 1, MPFR_RNDD);
    mpfr_set_ui(r.hi(), 1, MPFR_RNDU);
    return r;
  }
  bool even = (e % 2 == 0);
  if (!even || mpfr_sgn(a.lo()) >= 0) {
    // Monotone on the whole line (odd) or on nonnegatives.
    mpfr_pow_ui(r.lo(), a.lo(), e, MPFR_RNDD);
    mpfr_pow_ui(r.hi(), a.hi(), e, MPFR_RNDU);
  } else if (mpfr_sgn(a.hi()) <= 0) {
    mpfr_pow_ui(r.lo(), a.hi(), e, MPFR_RNDD);
    mpfr_pow_ui(r.hi(), a.lo(), e, MPFR_RNDU);
  } else {
    // Straddles zero, even power: [0, max(|lo|,|hi|)^e].
    mpfr_set_zero(r.lo(), 1);
    mpfr_t m;
    mpfr_init2(m, mpfr_get_prec(a.lo()));
    mpfr_neg(m, a.lo(), MPFR_RNDU);
    if (mpfr_cmp(a.hi(), m) > 0) mpfr_set(m, a.hi(), MPFR_RNDU);
    mpfr_pow_ui(r.hi(), m, e, MPFR_RNDU);
    mpfr_clear(m);
  }
  return r;
}

RealInterval iv_rootn(const RealInterval& a, unsigned long r_, Precision p) {
  if (r_ == 0) throw InvalidSpec("0th root");
  if (mpfr_sgn(a.lo()) < 0)
    throw InvalidSpec("rootn of an interval with negative lower endpoint");
  RealInterval r(p);
  mpfr_rootn_ui(r.lo(), a.lo(), r_, MPFR_RNDD);
  mpfr_rootn_ui(r.hi(), a.hi(), r_, MPFR_RNDU);
  return r;
}

RealInterval iv_log(const RealInterval& a, Precision p) {
  if (mpfr_sgn(a.lo()) <= 0)
    throw IndeterminateSign("log of an interval not certified positive");
  RealInterval r(p);
  mpfr_log(r.lo(), a.lo(), MPFR_RNDD);
  mpfr_log(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

RealInterval iv_exp(const RealInterval& a, Precision p) {
  RealInterval r(p);
  mpfr_exp(r.lo(), a.lo(), MPFR_RNDD);
  mpfr_exp(r.hi(), a.hi(), MPFR_RNDU);
  return r;
}

// ---------------------------------------------------------------------------
// Constants

namespace {

bool is_rational_literal(const std::string& s) {
  if (s.empty()) return false;
  size_t i = (s[0] == '+' || s[0] == '-') ? 1 : 0;
  if (i == s.size()) return false;
  bool slash = false, digits = false;
  for (size_t j = i; j < s.size(); ++j) {
    if (s[j] == '/') {
      if (slash || !digits || j + 1 == s.size()) return false;
      slash = true;
      digits = false;
      continue;
    }
    if (!std::isdigit(static_cast<unsigned char>(s[j]))) return false;
    digits = true;
  }
  return digits;
}

// Computes both directed roundings of a bundled transcendental constant at
// working precision q. MPFR rounds correctly, so each endpoint is the exact
// value rounded once in the stated direction.
void compute_builtin(const std::string& name, RealInterval& out) {
  mpfr_t& lo = out.lo();
  mpfr_t& hi = out.hi();
  if (name == "sqrt2") {
    mpfr_sqrt_ui(lo, 2, MPFR_RNDD);
    mpfr_sqrt_ui(hi, 2, MPFR_RNDU);
  } else if (name == "log2") {
    mpfr_log_ui(lo, 2, MPFR_RNDD);
    mpfr_log_ui(hi, 2, MPFR_RNDU);
  } else if (name == "zeta2") {
    mpfr_zeta_ui(lo, 2, MPFR_RNDD);
    mpfr_zeta_ui(hi, 2, MPFR_RNDU);
  } else if (name == "zeta3") {
    mpfr_zeta_ui(lo, 3, MPFR_RNDD);
    mpfr_zeta_ui(hi, 3, MPFR_RNDU);
  } else if (name == "e") {
    mpfr_set_ui(lo, 1, MPFR_RNDN);
    mpfr_exp(lo, lo, MPFR_RNDD);
    mpfr_set_ui(hi, 1, MPFR_RNDN);
    mpfr_exp(hi, hi, MPFR_RNDU);
  } else if (name == "pi") {
    mpfr_const_pi(lo, MPFR_RNDD);
    mpfr_const_pi(hi, MPFR_RNDU);
  } else {
    throw UnknownConstant("no such constant: " + name);
  }
}

}  // namespace

struct ConstantRegistry::Impl {
  mutable std::mutex mu;
  std::map<std::string, BigRat> rationals;
  mutable std::map<std::pair<std::string, Precision>, RealInterval> cache;
};

ConstantRegistry::ConstantRegistry() : impl_(new Impl) {}

ConstantRegistry& ConstantRegistry::global() {
  static ConstantRegistry* reg = new ConstantRegistry();
  return *reg;
}

static const char* kBuiltins[] = {"one", "sqrt2", "log2", "zeta2",
                                  "zeta3", "e", "pi"};

void ConstantRegistry::register_rational(const std::string& name,
                                         const BigRat& value) {
  for (const char* b : kBuiltins)
    if (name == b) throw InvalidSpec("cannot redefine builtin constant " + name);
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->rationals.find(name);
  if (it != impl_->rationals.end()) {
    if (it->second != value)
      throw InvalidSpec("constant " + name + " already registered with a different value");
    return;
  }
  impl_->rationals.emplace(name, value);
}

bool ConstantRegistry::known(const std::string& name) const {
  for (const char* b : kBuiltins)
    if (name == b) return true;
  if (is_rational_literal(name)) return true;
  std::lock_guard<std::mutex> lock(impl_->mu);
  return impl_->rationals.count(name) > 0;
}

std::optional<BigRat> ConstantRegistry::exact_value(
    const std::string& name) const {
  if (name == "one") return BigRat(1);
  if (is_rational_literal(name)) return parse_rat(name);
  std::lock_guard<std::mutex> lock(impl_->mu);
  auto it = impl_->rationals.find(name);
  if (it != impl_->rationals.end()) return it->second;
  return std::nullopt;
}

RealInterval ConstantRegistry::enclose(const std::string& name,
                                       Precision p) const {
  p = std::max(p, kMinPrecision);
  {
    std::lock_guard<std::mutex> lock(impl_->mu);
    auto it = impl_->cache.find({name, p});
    if (it != impl_->cache.end()) return it->second;
  }
  std::optional<BigRat> exact = exact_value(name);
  if (!exact) {
    bool builtin = false;
    for (const char* b : kBuiltins)
      if (name == b) builtin = true;
    if (!builtin) throw UnknownConstant("no such constant: " + name);
  }

  // Escalate the working precision until the width contract is met.
  BigRat bound = pow_rat(BigRat(2), -static_cast<long>(p - 4));
  Precision q = p;
  RealInterval result;
  for (;;) {
    RealInterval r = make_interval(q);
    if (exact) {
      mpfr_set_q(r.lo(), exact->get_mpq_t(), MPFR_RNDD);
      mpfr_set_q(r.hi(), exact->get_mpq_t(), MPFR_RNDU);
    } else {
      compute_builtin(name, r);
    }
    if (r.width() <= bound) {
      result = std::move(r);
      break;
    }
    q *= 2;
  }
  std::lock_guard<std::mutex> lock(impl_->mu);
  impl_->cache.emplace(std::make_pair(name, p), result);
  return result;
}

RealInterval enclose_constant(const ConstantId& id, Precision p) {
  if (p < kMinPrecision)
    throw InvalidSpec("precision below minimum for enclose_constant");
  return ConstantRegistry::global().enclose(id.name, p);
}

// ---------------------------------------------------------------------------
// CertReal

struct CertReal::Expr {
  virtual ~Expr() = default;
  virtual RealInterval enclose(Precision p) const = 0;
  virtual std::optional<BigRat> exact() const = 0;
  // True for the constant node named `name`; lets even powers of sqrt2
  // collapse to exact rationals.
  virtual bool is_named_constant(const std::string& name) const {
    (void)name;
    return false;
  }
};

namespace {

using ExprPtr = std::shared_ptr<const CertReal::Expr>;

struct RatExpr final : CertReal::Expr {
  BigRat v;
  explicit RatExpr(BigRat x) : v(std::move(x)) {}
  RealInterval enclose(Precision p) const override {
    return RealInterval::from_rat(v, p);
  }
  std::optional<BigRat> exact() const override { return v; }
};

struct ConstExpr final : CertReal::Expr {
  ConstantId id;
  explicit ConstExpr(ConstantId i) : id(std::move(i)) {}
  RealInterval enclose(Precision p) const override {
    return enclose_constant(id, p);
  }
  std::optional<BigRat> exact() const override {
    return ConstantRegistry::global().exact_value(id.name);
  }
  bool is_named_constant(const std::string& name) const override {
    return id.name == name;
  }
};

struct FnExpr final : CertReal::Expr {
  std::function<RealInterval(Precision)> fn;
  explicit FnExpr(std::function<RealInterval(Precision)> f) : fn(std::move(f)) {}
  RealInterval enclose(Precision p) const override { return fn(p); }
  std::optional<BigRat> exact() const override { return std::nullopt; }
};

enum class BinOp { Add, Sub, Mul };

struct BinExpr final : CertReal::Expr {
  BinOp op;
  ExprPtr a, b;
  BinExpr(BinOp o, ExprPtr x, ExprPtr y)
      : op(o), a(std::move(x)), b(std::move(y)) {}
  RealInterval enclose(Precision p) const override {
    RealInterval ia = a->enclose(p), ib = b->enclose(p);
    switch (op) {
      case BinOp::Add: return iv_add(ia, ib, p);
      case BinOp::Sub: return iv_sub(ia, ib, p);
      case BinOp::Mul: return iv_mul(ia, ib, p);
    }
    throw InvalidSpec("unreachable");
  }
  std::optional<BigRat> exact() const override {
    auto ea = a->exact();
    if (!ea) return std::nullopt;
    auto eb = b->exact();
    if (!eb) return std::nullopt;
    switch (op) {
      case BinOp::Add: return *ea + *eb;
      case BinOp::Sub: return *ea - *eb;
      case BinOp::Mul: return *ea * *eb;
    }
    return std::nullopt;
  }
};

struct NegExpr final : CertReal::Expr {
  ExprPtr a;
  explicit NegExpr(ExprPtr x) : a(std::move(x)) {}
  RealInterval enclose(Precision p) const override {
    return iv_neg(a->enclose(p), p);
  }
  std::optional<BigRat> exact() const override {
    auto e = a->exact();
    if (!e) return std::nullopt;
    return -*e;
  }
};

struct AbsExpr final : CertReal::Expr {
  ExprPtr a;
  explicit AbsExpr(ExprPtr x) : a(std::move(x)) {}
  RealInterval enclose(Precision p) const override {
    return iv_abs(a->enclose(p), p);
  }
  std::optional<BigRat> exact() const override {
    auto e = a->exact();
    if (!e) return std::nullopt;
    return abs(*e);
  }
};

struct PowExpr final : CertReal::Expr {
  ExprPtr a;
  unsigned long e;
  PowExpr(ExprPtr x, unsigned long k) : a(std::move(x)), e(k) {}
  RealInterval enclose(Precision p) const override {
    return iv_pow_ui(a->enclose(p), e, p);
  }
  std::optional<BigRat> exact() const override {
    auto ea = a->exact();
    if (ea) return pow_rat(*ea, static_cast<long>(e));
    // sqrt2^(2k) = 2^k exactly.
    if (a->is_named_constant("sqrt2") && e % 2 == 0)
      return pow_rat(BigRat(2), static_cast<long>(e / 2));
    return std::nullopt;
  }
};

struct RootExpr final : CertReal::Expr {
  ExprPtr a;
  unsigned long r;
  RootExpr(ExprPtr x, unsigned long k) : a(std::move(x)), r(k) {}
  RealInterval enclose(Precision p) const override {
    return iv_rootn(a->enclose(p), r, p);
  }
  std::optional<BigRat> exact() const override {
    if (r == 1) return a->exact();
    auto ea = a->exact();
    if (!ea || *ea < 0) return std::nullopt;
    BigInt num, den;
    int num_exact = mpz_root(num.get_mpz_t(), ea->get_num().get_mpz_t(), r);
    int den_exact = mpz_root(den.get_mpz_t(), ea->get_den().get_mpz_t(), r);
    if (!num_exact || !den_exact) return std::nullopt;
    BigRat q(num, den);
    q.canonicalize();
    return q;
  }
};

struct LogExpr final : CertReal::Expr {
  ExprPtr a;
  explicit LogExpr(ExprPtr x) : a(std::move(x)) {}
  RealInterval enclose(Precision p) const override {
    return iv_log(a->enclose(p), p);
  }
  std::optional<BigRat> exact() const override {
    auto e = a->exact();
    if (e && *e == 1) return BigRat(0);
    return std::nullopt;
  }
};

struct ExpExpr final : CertReal::Expr {
  ExprPtr a;
  explicit ExpExpr(ExprPtr x) : a(std::move(x)) {}
  RealInterval enclose(Precision p) const override {
    return iv_exp(a->enclose(p), p);
  }
  std::optional<BigRat> exact() const override {
    auto e = a->exact();
    if (e && *e == 0) return BigRat(1);
    return std::nullopt;
  }
};

struct RecipExpr final : CertReal::Expr {
  ExprPtr a;
  explicit RecipExpr(ExprPtr x) : a(std::move(x)) {}
  RealInterval enclose(Precision p) const override {
    RealInterval one = RealInterval::from_rat(BigRat(1), p);
    return iv_div(one, a->enclose(p), p);
  }
  std::optional<BigRat> exact() const override {
    auto e = a->exact();
    if (!e || *e == 0) return std::nullopt;
    return 1 / *e;
  }
};

}  // namespace

CertReal::CertReal() : expr_(std::make_shared<RatExpr>(BigRat(0))) {}

CertReal CertReal::from_rat(const BigRat& v) {
  return CertReal(std::make_shared<RatExpr>(v));
}

CertReal CertReal::from_int(long v) { return from_rat(BigRat(v)); }

CertReal CertReal::constant(const ConstantId& id) {
  if (!ConstantRegistry::global().known(id.name))
    throw UnknownConstant("no such constant: " + id.name);
  return CertReal(std::make_shared<ConstExpr>(id));
}

CertReal CertReal::from_fn(std::function<RealInterval(Precision)> fn) {
  return CertReal(std::make_shared<FnExpr>(std::move(fn)));
}

RealInterval CertReal::enclose(Precision p) const { return expr_->enclose(p); }

std::optional<BigRat> CertReal::exact() const { return expr_->exact(); }

CertReal operator+(const CertReal& a, const CertReal& b) {
  return CertReal(std::make_shared<BinExpr>(BinOp::Add, a.expr(), b.expr()));
}
CertReal operator-(const CertReal& a, const CertReal& b) {
  return CertReal(std::make_shared<BinExpr>(BinOp::Sub, a.expr(), b.expr()));
}
CertReal operator*(const CertReal& a, const CertReal& b) {
  return CertReal(std::make_shared<BinExpr>(BinOp::Mul, a.expr(), b.expr()));
}
CertReal operator-(const CertReal& a) {
  return CertReal(std::make_shared<NegExpr>(a.expr()));
}

CertReal cert_abs(const CertReal& a) {
  return CertReal(std::make_shared<AbsExpr>(a.expr()));
}
CertReal cert_pow_ui(const CertReal& a, unsigned long e) {
  return CertReal(std::make_shared<PowExpr>(a.expr(), e));
}
CertReal cert_rootn(const CertReal& a, unsigned long r) {
  return CertReal(std::make_shared<RootExpr>(a.expr(), r));
}
CertReal cert_log(const CertReal& a) {
  return CertReal(std::make_shared<LogExpr>(a.expr()));
}
CertReal cert_exp(const CertReal& a) {
  return CertReal(std::make_shared<ExpExpr>(a.expr()));
}
CertReal cert_recip(const CertReal& a) {
  return CertReal(std::make_shared<RecipExpr>(a.expr()));
}

Sign certified_sign(const CertReal& x, Precision start, Precision cap) {
  if (auto e = x.exact()) {
    int s = sgn(*e);
    return s < 0 ? Sign::Negative : (s > 0 ? Sign::Positive : Sign::Zero);
  }
  Precision p = std::max(start, kMinPrecision);
  cap = std::max(cap, p);
  for (;;) {
    try {
      RealInterval iv = x.enclose(p);
      if (auto s = iv.decided_sign()) return *s;
    } catch (const IndeterminateSign&) {
      // Sub-expression needs more precision; keep escalating.
    }
    if (p >= cap) break;
    p = std::min(p * 2, cap);
  }
  throw IndeterminateSign("sign undecided at precision cap");
}

namespace {

Verdict le_from_sign(const CertReal& a, const CertReal& b, Precision start,
                     Precision cap, bool strict) {
  try {
    Sign s = certified_sign(b - a, start, cap);
    if (s == Sign::Positive) return Verdict::Holds;
    if (s == Sign::Zero) return strict ? Verdict::Fails : Verdict::Holds;
    return Verdict::Fails;
  } catch (const IndeterminateSign&) {
    return Verdict::Indeterminate;
  }
}

}  // namespace

Verdict certified_le(const CertReal& a, const CertReal& b, Precision start,
                     Precision cap) {
  return le_from_sign(a, b, start, cap, false);
}
Verdict certified_lt(const CertReal& a, const CertReal& b, Precision start,
                     Precision cap) {
  return le_from_sign(a, b, start, cap, true);
}
Verdict certified_ge(const CertReal& a, const CertReal& b, Precision start,
                     Precision cap) {
  return certified_le(b, a, start, cap);
}
Verdict certified_gt(const CertReal& a, const CertReal& b, Precision start,
                     Precision cap) {
  return certified_lt(b, a, start, cap);
}

}  // namespace dlab
