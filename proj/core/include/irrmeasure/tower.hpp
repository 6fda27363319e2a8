#ifndef IRRMEASURE_TOWER_HPP
#define IRRMEASURE_TOWER_HPP

// Exact arithmetic in a quadratic tower Q ⊆ K ⊆ L = K(√τ), where K is Q or
// an imaginary quadratic field Q(√-D).
//
// Embeddings into C use the principal square root: for a negative rational
// a, √a = i√|a|; for complex τ, √τ = |τ|^{1/2} e^{i arg(τ)/2} with
// arg ∈ (-π, π].

#include <memory>
#include <optional>
#include <string>

#include "irrmeasure/ball.hpp"
#include "irrmeasure/integer.hpp"

namespace irrmeasure {

class BaseField {
public:
  /// K = Q.
  BaseField() = default;
  /// disc = 0 for Q, otherwise a negative squarefree integer -D.
  explicit BaseField(Integer disc);

  static BaseField rationals() { return BaseField(); }
  static BaseField imaginary(const Integer& D) { return BaseField(Integer(-D)); }

  const Integer& disc() const { return disc_; }
  bool is_rational() const { return disc_ == 0; }

  friend bool operator==(const BaseField& a, const BaseField& b) { return a.disc_ == b.disc_; }

private:
  Integer disc_{0};
};

/// a + b√disc in K. For K = Q, b is always zero.
class BaseElem {
public:
  explicit BaseElem(BaseField field = {}, Rational a = 0, Rational b = 0);
  static BaseElem rational(const BaseField& field, const Rational& a) { return BaseElem(field, a, 0); }

  const BaseField& field() const { return field_; }
  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }

  bool is_zero() const { return a_ == 0 && b_ == 0; }
  bool is_rational() const { return b_ == 0; }

  BaseElem operator-() const;
  BaseElem& operator+=(const BaseElem& o);
  BaseElem& operator-=(const BaseElem& o);
  BaseElem& operator*=(const BaseElem& o);
  BaseElem& operator/=(const BaseElem& o);
  BaseElem& operator*=(const Rational& s);

  friend BaseElem operator+(BaseElem x, const BaseElem& y) { return x += y; }
  friend BaseElem operator-(BaseElem x, const BaseElem& y) { return x -= y; }
  friend BaseElem operator*(BaseElem x, const BaseElem& y) { return x *= y; }
  friend BaseElem operator/(BaseElem x, const BaseElem& y) { return x /= y; }
  friend BaseElem operator*(BaseElem x, const Rational& s) { return x *= s; }
  friend bool operator==(const BaseElem& x, const BaseElem& y);

  /// Complex conjugation (the nontrivial automorphism of K over Q).
  BaseElem conj() const;
  Rational norm() const;   // a^2 - disc b^2
  Rational trace() const;  // 2a
  bool is_alg_integer() const;
  BaseElem inverse() const;

  Ball embed(Precision prec) const;
  std::string to_string() const;

private:
  BaseField field_;
  Rational a_;
  Rational b_;
};

/// Square root of x inside K, if one exists.
std::optional<BaseElem> sqrt_in_base(const BaseElem& x);

class TowerElem;

/// L = K(√τ). τ ∈ K is stored normalised: when τ is rational it is
/// replaced by its squarefree kernel.
class TowerField {
public:
  struct Normalised;

  /// Throws DomainError when τ is zero or already a square in K.
  static std::shared_ptr<const TowerField> make(const BaseField& base, const BaseElem& tau);
  /// Returns the field together with s such that √(tau as given) = s·√(radicand).
  static Normalised make_with_scale(const BaseField& base, const BaseElem& tau);

  const BaseField& base() const { return base_; }
  const BaseElem& radicand() const { return radicand_; }
  bool radicand_is_rational() const { return radicand_.is_rational(); }

  /// Value of √radicand under the principal convention.
  Ball sqrt_radicand(Precision prec) const;

  friend bool operator==(const TowerField& a, const TowerField& b) {
    return a.base_ == b.base_ && a.radicand_ == b.radicand_;
  }

private:
  TowerField(BaseField base, BaseElem radicand) : base_(std::move(base)), radicand_(std::move(radicand)) {}
  BaseField base_;
  BaseElem radicand_;
};

using FieldPtr = std::shared_ptr<const TowerField>;

struct TowerField::Normalised {
  FieldPtr field;
  BaseElem scale;
};

/// x + y√τ with x, y ∈ K.
class TowerElem {
public:
  explicit TowerElem(FieldPtr field);
  TowerElem(FieldPtr field, BaseElem x, BaseElem y);
  static TowerElem from_base(FieldPtr field, const BaseElem& x);
  static TowerElem from_rational(FieldPtr field, const Rational& x);
  /// The generator √τ.
  static TowerElem root(FieldPtr field);

  const FieldPtr& field() const { return field_; }
  const BaseElem& x() const { return x_; }
  const BaseElem& y() const { return y_; }

  bool is_zero() const { return x_.is_zero() && y_.is_zero(); }
  bool in_base() const { return y_.is_zero(); }
  bool is_rational() const { return y_.is_zero() && x_.is_rational(); }

  TowerElem operator-() const;
  TowerElem& operator+=(const TowerElem& o);
  TowerElem& operator-=(const TowerElem& o);
  TowerElem& operator*=(const TowerElem& o);
  TowerElem& operator/=(const TowerElem& o);
  TowerElem& operator*=(const BaseElem& s);
  TowerElem& operator*=(const Rational& s);

  friend TowerElem operator+(TowerElem a, const TowerElem& b) { return a += b; }
  friend TowerElem operator-(TowerElem a, const TowerElem& b) { return a -= b; }
  friend TowerElem operator*(TowerElem a, const TowerElem& b) { return a *= b; }
  friend TowerElem operator/(TowerElem a, const TowerElem& b) { return a /= b; }
  friend TowerElem operator*(TowerElem a, const BaseElem& s) { return a *= s; }
  friend TowerElem operator*(TowerElem a, const Rational& s) { return a *= s; }
  friend TowerElem operator*(const Rational& s, TowerElem a) { return a *= s; }
  friend bool operator==(const TowerElem& a, const TowerElem& b);

  TowerElem inverse() const;
  /// Relative norm x^2 - τ y^2 and trace 2x down to K.
  BaseElem norm() const;
  BaseElem trace() const;
  /// Norm all the way down to Q.
  Rational absolute_norm() const;

  std::string to_string() const;

private:
  void require_same_field(const TowerElem& o) const;
  FieldPtr field_;
  BaseElem x_;
  BaseElem y_;
};

/// σ: x + y√τ ↦ x - y√τ.
TowerElem conj(const TowerElem& e);
TowerElem pow(const TowerElem& e, unsigned long k);

/// Whether the minimal polynomial of e over Q has integer coefficients.
bool is_alg_integer(const TowerElem& e);

/// Rigorous complex enclosure of e. Radius ≤ 2^(4-prec)(1+|e|).
Ball embed(const TowerElem& e, Precision prec);

/// √a for a ∈ K, as an element of L if it lies there.
std::optional<TowerElem> sqrt_in_tower(const FieldPtr& field, const BaseElem& a);

/// coeff·√radicand with coeff ∈ L and radicand a positive squarefree integer.
/// Used for g and h_r, which need not lie in L.
class ScaledRoot {
public:
  explicit ScaledRoot(TowerElem coeff, const Rational& radicand = 1);
  static ScaledRoot one(FieldPtr field);

  const TowerElem& coeff() const { return coeff_; }
  const Integer& radicand() const { return radicand_; }

  ScaledRoot& operator*=(const ScaledRoot& o);
  ScaledRoot& operator/=(const ScaledRoot& o);
  ScaledRoot& operator*=(const TowerElem& o);
  friend ScaledRoot operator*(ScaledRoot a, const ScaledRoot& b) { return a *= b; }
  friend ScaledRoot operator/(ScaledRoot a, const ScaledRoot& b) { return a /= b; }
  friend bool operator==(const ScaledRoot& a, const ScaledRoot& b) {
    return a.radicand_ == b.radicand_ && a.coeff_ == b.coeff_;
  }

  ScaledRoot pow(unsigned long k) const;
  /// The value as an element of L, if it lies in L.
  std::optional<TowerElem> to_tower() const;
  /// coeff^2 · radicand.
  TowerElem square() const;
  Interval abs(Precision prec) const;
  Ball embed(Precision prec) const;
  std::string to_string() const;

private:
  TowerElem coeff_;
  Integer radicand_{1};
};

/// Whether e / s is an algebraic integer (tested on the square, which lies in L).
bool is_alg_integer_quotient(const TowerElem& e, const ScaledRoot& s);

}  // namespace irrmeasure

#endif  // IRRMEASURE_TOWER_HPP
