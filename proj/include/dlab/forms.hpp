// Copyright 2026 the dlab authors
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dlab/numerics.hpp"

namespace dlab {

// Integer linear form l_0 X_0 + ... + l_r X_r attached to a sequence index.
struct LinearForm {
  long n = 0;
  std::vector<BigInt> coeffs;

  long r() const { return static_cast<long>(coeffs.size()) - 1; }
  bool all_zero() const;
};

// Sum of absolute coefficient values (the length of the form).
BigInt form_length(const LinearForm& form);

// Certified real vector (xi_0, ..., xi_R) with xi_0 = 1 exactly.
class EvaluationPoint {
 public:
  EvaluationPoint(std::vector<CertReal> coords, std::vector<std::string> ids);
  static EvaluationPoint from_ids(const std::vector<std::string>& ids);

  size_t dim() const { return coords_.size(); }
  const CertReal& coord(size_t i) const { return coords_.at(i); }
  // Constant ids when the point was built from ids; empty otherwise.
  const std::vector<std::string>& ids() const { return ids_; }

 private:
  std::vector<CertReal> coords_;
  std::vector<std::string> ids_;
};

// Certified enclosure of sum l_i * xi_i at the given precision.
RealInterval evaluate_form(const LinearForm& form, const EvaluationPoint& point,
                           Precision precision_bits);
// Same value as a re-evaluable certified real. Zero coefficients are skipped,
// so exact rational recombination works coordinate-wise.
CertReal form_value(const LinearForm& form, const EvaluationPoint& point);

// How one bound sequence is defined: a closed-form expression in n, an
// explicit table, or a quantity measured from the forms themselves.
struct BoundSpec {
  enum class Kind {
    Absent,
    Expr,
    Table,
    MeasuredLength,   // Q_n = sum |l_in| exactly
    MeasuredInvAbsL,  // A_n = certified dyadic lower bound of 1/|L_n|
    MeasuredRatio,    // B_n = certified dyadic upper bound of |L_{n-1}|/|L_n|
    MeasuredLogQ      // sigma(n) = log Q_n
  };
  Kind kind = Kind::Absent;
  std::string expr;
  long table_first = 0;
  std::vector<BigRat> table;

  static BoundSpec absent();
  static BoundSpec make_expr(std::string e);
  static BoundSpec make_table(long first, std::vector<BigRat> values);
  static BoundSpec measured(Kind k);
};

struct BoundsSpec {
  BoundSpec Q, A, B, sigma;
};

// Evaluates the bound expression mini-language at index n. Grammar:
// rational literals, n, + - * / ^ and parentheses; exponents must be
// integer-valued. Throws InvalidSpec on syntax or domain errors.
BigRat eval_bound_expr(const std::string& expr, long n);

// Indexed producer of forms plus the data needed to check hypotheses.
class FormSequence {
 public:
  virtual ~FormSequence() = default;
  virtual long first_index() const = 0;
  virtual std::optional<long> last_index() const = 0;
  virtual LinearForm form(long n) const = 0;
  virtual long r_of(long n) const = 0;
  virtual const EvaluationPoint& point() const = 0;
  virtual const BoundsSpec& bounds_spec() const = 0;
  virtual std::string kind() const = 0;

  void check_index(long n) const;  // throws InvalidSpec outside the range
};

// Explicit table-backed sequence (deserialized input, test fixtures).
class TableSequence : public FormSequence {
 public:
  TableSequence(long first_n, std::vector<std::vector<BigInt>> rows,
                EvaluationPoint point, BoundsSpec bounds, std::string kind);

  long first_index() const override { return first_n_; }
  std::optional<long> last_index() const override {
    return first_n_ + static_cast<long>(rows_.size()) - 1;
  }
  LinearForm form(long n) const override;
  long r_of(long n) const override;
  const EvaluationPoint& point() const override { return point_; }
  const BoundsSpec& bounds_spec() const override { return bounds_; }
  std::string kind() const override { return kind_; }

 private:
  long first_n_;
  std::vector<std::vector<BigInt>> rows_;
  EvaluationPoint point_;
  BoundsSpec bounds_;
  std::string kind_;
};

// Materialized per-n bound values. Measured kinds evaluate the forms at
// `measure_precision` once per index and cache the result; the measured
// A_n and B_n are exact dyadic point values, so hypothesis comparisons
// stay decidable.
struct SequenceBounds {
  std::function<CertReal(long)> Q;      // null when absent
  std::function<CertReal(long)> A;      // null when absent
  std::function<CertReal(long)> B;      // null when absent
  std::function<CertReal(long)> sigma;  // null when absent
  std::function<long(long)> r;
};

SequenceBounds materialize_bounds(std::shared_ptr<const FormSequence> seq,
                                  Precision measure_precision, Precision cap);

struct HypothesisRow {
  long n = 0;
  Verdict length = Verdict::Indeterminate;
  Verdict magnitude = Verdict::Indeterminate;
  std::optional<Verdict> ratio;        // absent at the first checked index
  std::optional<Verdict> qb_monotone;  // Q_{n-1}B_{n-1} <= Q_n B_n
};

struct GrowthDiagnostic {
  // (n, approximate A_n^{1/r_n}); finite-range trend only, not conclusive.
  std::vector<std::pair<long, double>> values;
  bool nondecreasing = true;
  std::optional<long> first_decrease;
};

struct HypothesisReport {
  long checked_lo = 0, checked_hi = 0;
  long n_min = 0;  // failures below this index are warnings only
  std::vector<HypothesisRow> rows;
  std::map<std::string, long> first_fail;  // hypothesis name -> index >= n_min
  std::vector<std::string> warnings;
  GrowthDiagnostic growth;
  Verdict overall = Verdict::Indeterminate;
  std::optional<long> first_fail_index;
  std::string first_fail_hypothesis;
};

// Checks every hypothesis per n over [check_lo, check_hi] with certified
// comparisons. Failures at n < n_min are recorded as warnings.
HypothesisReport verify_hypotheses_main(
    std::shared_ptr<const FormSequence> seq, const SequenceBounds& bounds,
    long check_lo, long check_hi, long n_min, Precision precision_bits,
    Precision precision_cap);

}  // namespace dlab
