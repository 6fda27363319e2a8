#include "irrmeasure/tower.hpp"

#include <cmath>

namespace irrmeasure {

BaseField::BaseField(Integer disc) : disc_(std::move(disc)) {
  if (disc_ > 0 || (disc_ < 0 && !is_squarefree(disc_)))
    throw DomainError("BaseField: discriminant must be 0 or a negative squarefree integer, got " +
                      disc_.get_str());
}

BaseElem::BaseElem(BaseField field, Rational a, Rational b)
    : field_(std::move(field)), a_(std::move(a)), b_(std::move(b)) {
  a_.canonicalize();
  b_.canonicalize();
  if (field_.is_rational() && b_ != 0) throw DomainError("BaseElem: irrational part over Q");
}

namespace {

void require_same(const BaseField& a, const BaseField& b) {
  if (!(a == b)) throw DomainError("BaseElem: operands live in different fields");
}

std::string rational_paren(const Rational& q) {
  std::string s = to_string(q);
  return q.get_den() == 1 && q >= 0 ? s : "(" + s + ")";
}

}  // namespace

BaseElem BaseElem::operator-() const { return BaseElem(field_, -a_, -b_); }

BaseElem& BaseElem::operator+=(const BaseElem& o) {
  require_same(field_, o.field_);
  a_ += o.a_;
  b_ += o.b_;
  return *this;
}

BaseElem& BaseElem::operator-=(const BaseElem& o) {
  require_same(field_, o.field_);
  a_ -= o.a_;
  b_ -= o.b_;
  return *this;
}

BaseElem& BaseElem::operator*=(const BaseElem& o) {
  require_same(field_, o.field_);
  Rational d(field_.disc());
  Rational a = a_ * o.a_ + d * b_ * o.b_;
  Rational b = a_ * o.b_ + b_ * o.a_;
  a_ = a;
  b_ = b;
  return *this;
}

BaseElem& BaseElem::operator*=(const Rational& s) {
  a_ *= s;
  b_ *= s;
  return *this;
}

BaseElem& BaseElem::operator/=(const BaseElem& o) { return *this *= o.inverse(); }

bool operator==(const BaseElem& x, const BaseElem& y) {
  return x.field_ == y.field_ && x.a_ == y.a_ && x.b_ == y.b_;
}

BaseElem BaseElem::conj() const { return BaseElem(field_, a_, -b_); }

Rational BaseElem::norm() const { return a_ * a_ - Rational(field_.disc()) * b_ * b_; }

Rational BaseElem::trace() const { return 2 * a_; }

bool BaseElem::is_alg_integer() const { return is_integer(trace()) && is_integer(norm()); }

BaseElem BaseElem::inverse() const {
  if (is_zero()) throw DomainError("BaseElem: inverse of zero");
  BaseElem c = conj();
  c *= Rational(1) / norm();
  return c;
}

Ball BaseElem::embed(Precision prec) const {
  Interval re(a_, prec);
  if (b_ == 0) return Ball(re, Interval(prec));
  Interval im = Interval(b_, prec) * sqrt(Interval(Integer(-field_.disc()), prec));
  return Ball(re, im);
}

std::string BaseElem::to_string() const {
  if (b_ == 0) return irrmeasure::to_string(a_);
  std::string root = "sqrt(" + field_.disc().get_str() + ")";
  std::string bpart = b_ == 1 ? root : rational_paren(b_) + "*" + root;
  if (a_ == 0) return bpart;
  return irrmeasure::to_string(a_) + " + " + bpart;
}

std::optional<BaseElem> sqrt_in_base(const BaseElem& x) {
  const BaseField& f = x.field();
  if (x.is_zero()) return x;
  if (f.is_rational()) {
    if (auto r = exact_sqrt(x.a())) return BaseElem(f, *r, 0);
    return std::nullopt;
  }
  const Rational delta(f.disc());
  auto check = [&](const BaseElem& s) -> std::optional<BaseElem> {
    if (s * s == x) return s;
    return std::nullopt;
  };
  if (x.b() == 0) {
    if (auto r = exact_sqrt(x.a())) return BaseElem(f, *r, 0);
    if (auto r = exact_sqrt(Rational(x.a() / delta))) return BaseElem(f, 0, *r);
    return std::nullopt;
  }
  auto n = exact_sqrt(x.norm());
  if (!n) return std::nullopt;
  auto u = exact_sqrt(Rational((x.a() + *n) / 2));
  if (!u || *u == 0) return std::nullopt;
  Rational v = x.b() / (2 * *u);
  return check(BaseElem(f, *u, v));
}

TowerField::Normalised TowerField::make_with_scale(const BaseField& base, const BaseElem& tau) {
  if (!(tau.field() == base)) throw DomainError("TowerField: radicand is not in the base field");
  if (tau.is_zero()) throw DomainError("TowerField: radicand must be nonzero");
  BaseElem radicand = tau;
  BaseElem scale = BaseElem::rational(base, 1);
  if (tau.is_rational()) {
    const Rational& q = tau.a();
    Integer nd = Integer(q.get_num()) * Integer(q.get_den());
    Integer c = core(nd);
    Integer s = *exact_sqrt(Integer(nd / c));
    radicand = BaseElem::rational(base, Rational(c));
    scale = BaseElem::rational(base, ratio(s, Integer(q.get_den())));
  }
  if (sqrt_in_base(radicand))
    throw DomainError("TowerField: radicand " + tau.to_string() + " is a square in the base field");
  return {std::shared_ptr<const TowerField>(new TowerField(base, radicand)), scale};
}

FieldPtr TowerField::make(const BaseField& base, const BaseElem& tau) {
  return make_with_scale(base, tau).field;
}

Ball TowerField::sqrt_radicand(Precision prec) const {
  if (radicand_.is_rational()) {
    Interval m = sqrt(abs(Interval(radicand_.a(), prec)));
    if (radicand_.a() > 0) return Ball(m, Interval(prec));
    return Ball(Interval(prec), m);
  }
  return principal_power(radicand_.embed(prec), 1, 2);
}

TowerElem::TowerElem(FieldPtr field)
    : field_(std::move(field)), x_(field_->base()), y_(field_->base()) {}

TowerElem::TowerElem(FieldPtr field, BaseElem x, BaseElem y)
    : field_(std::move(field)), x_(std::move(x)), y_(std::move(y)) {
  if (!(x_.field() == field_->base()) || !(y_.field() == field_->base()))
    throw DomainError("TowerElem: coordinates are not in the base field");
}

TowerElem TowerElem::from_base(FieldPtr field, const BaseElem& x) {
  BaseElem zero(field->base());
  return TowerElem(std::move(field), x, zero);
}

TowerElem TowerElem::from_rational(FieldPtr field, const Rational& x) {
  BaseElem bx = BaseElem::rational(field->base(), x);
  return from_base(std::move(field), bx);
}

TowerElem TowerElem::root(FieldPtr field) {
  BaseElem zero(field->base());
  BaseElem one = BaseElem::rational(field->base(), 1);
  return TowerElem(std::move(field), zero, one);
}

void TowerElem::require_same_field(const TowerElem& o) const {
  if (field_ != o.field_ && !(*field_ == *o.field_))
    throw DomainError("TowerElem: operands live in different fields");
}

TowerElem TowerElem::operator-() const { return TowerElem(field_, -x_, -y_); }

TowerElem& TowerElem::operator+=(const TowerElem& o) {
  require_same_field(o);
  x_ += o.x_;
  y_ += o.y_;
  return *this;
}

TowerElem& TowerElem::operator-=(const TowerElem& o) {
  require_same_field(o);
  x_ -= o.x_;
  y_ -= o.y_;
  return *this;
}

TowerElem& TowerElem::operator*=(const TowerElem& o) {
  require_same_field(o);
  const BaseElem& tau = field_->radicand();
  BaseElem x = x_ * o.x_;
  if (!y_.is_zero() && !o.y_.is_zero()) x += tau * y_ * o.y_;
  BaseElem y = x_ * o.y_ + y_ * o.x_;
  x_ = std::move(x);
  y_ = std::move(y);
  return *this;
}

TowerElem& TowerElem::operator*=(const BaseElem& s) {
  x_ *= s;
  y_ *= s;
  return *this;
}

TowerElem& TowerElem::operator*=(const Rational& s) {
  x_ *= s;
  y_ *= s;
  return *this;
}

TowerElem& TowerElem::operator/=(const TowerElem& o) { return *this *= o.inverse(); }

bool operator==(const TowerElem& a, const TowerElem& b) {
  if (a.field_ != b.field_ && !(*a.field_ == *b.field_)) return false;
  return a.x_ == b.x_ && a.y_ == b.y_;
}

BaseElem TowerElem::norm() const { return x_ * x_ - field_->radicand() * y_ * y_; }

BaseElem TowerElem::trace() const { return x_ * Rational(2); }

Rational TowerElem::absolute_norm() const {
  BaseElem n = norm();
  if (field_->base().is_rational()) return n.a();
  return n.norm();
}

TowerElem TowerElem::inverse() const {
  if (is_zero()) throw DomainError("TowerElem: inverse of zero");
  TowerElem c = conj(*this);
  c *= norm().inverse();
  return c;
}

std::string TowerElem::to_string() const {
  if (y_.is_zero()) return x_.to_string();
  std::string root = "sqrt(" + field_->radicand().to_string() + ")";
  std::string ypart = (y_.is_rational() && y_.a() == 1) ? root : "(" + y_.to_string() + ")*" + root;
  if (x_.is_zero()) return ypart;
  return x_.to_string() + " + " + ypart;
}

TowerElem conj(const TowerElem& e) { return TowerElem(e.field(), e.x(), -e.y()); }

TowerElem pow(const TowerElem& e, unsigned long k) {
  TowerElem result = TowerElem::from_rational(e.field(), 1);
  TowerElem base = e;
  while (k > 0) {
    if (k & 1UL) result *= base;
    k >>= 1;
    if (k > 0) base *= base;
  }
  return result;
}

bool is_alg_integer(const TowerElem& e) {
  return e.trace().is_alg_integer() && e.norm().is_alg_integer();
}

namespace {

double approx_magnitude(const BaseElem& x) {
  return std::fabs(x.a().get_d()) + std::fabs(x.b().get_d()) * std::sqrt(std::fabs(x.field().disc().get_d()));
}

}  // namespace

Ball embed(const TowerElem& e, Precision prec) {
  if (e.is_zero()) return Ball(prec);
  // Guard bits absorb cancellation between the two coordinates.
  const BaseElem& tau = e.field()->radicand();
  double size = 1.0 + approx_magnitude(e.x()) + approx_magnitude(e.y()) * std::sqrt(approx_magnitude(tau));
  Precision guard = 16 + static_cast<Precision>(std::max(0.0, std::log2(size)));
  Precision work = prec + guard;
  Ball value = e.x().embed(work);
  if (!e.y().is_zero()) value += e.y().embed(work) * e.field()->sqrt_radicand(work);
  return with_precision(value, prec);
}

std::optional<TowerElem> sqrt_in_tower(const FieldPtr& field, const BaseElem& a) {
  if (auto s = sqrt_in_base(a)) return TowerElem::from_base(field, *s);
  if (auto s = sqrt_in_base(a / field->radicand())) return TowerElem::root(field) * *s;
  return std::nullopt;
}

ScaledRoot::ScaledRoot(TowerElem coeff, const Rational& radicand) : coeff_(std::move(coeff)) {
  if (radicand <= 0) throw DomainError("ScaledRoot: radicand must be positive");
  Integer nd = Integer(radicand.get_num()) * Integer(radicand.get_den());
  Integer c = core(nd);
  Integer s = *exact_sqrt(Integer(nd / c));
  coeff_ *= ratio(s, Integer(radicand.get_den()));
  radicand_ = c;
}

ScaledRoot ScaledRoot::one(FieldPtr field) { return ScaledRoot(TowerElem::from_rational(std::move(field), 1)); }

ScaledRoot& ScaledRoot::operator*=(const ScaledRoot& o) {
  *this = ScaledRoot(coeff_ * o.coeff_, Rational(radicand_ * o.radicand_));
  return *this;
}

ScaledRoot& ScaledRoot::operator/=(const ScaledRoot& o) {
  *this = ScaledRoot(coeff_ / o.coeff_, ratio(radicand_, o.radicand_));
  return *this;
}

ScaledRoot& ScaledRoot::operator*=(const TowerElem& o) {
  coeff_ *= o;
  return *this;
}

ScaledRoot ScaledRoot::pow(unsigned long k) const {
  TowerElem c = irrmeasure::pow(coeff_, k) * Rational(irrmeasure::pow(radicand_, k / 2));
  return ScaledRoot(c, k % 2 == 1 ? Rational(radicand_) : Rational(1));
}

std::optional<TowerElem> ScaledRoot::to_tower() const {
  if (radicand_ == 1) return coeff_;
  auto r = sqrt_in_tower(coeff_.field(), BaseElem::rational(coeff_.field()->base(), Rational(radicand_)));
  if (!r) return std::nullopt;
  return coeff_ * *r;
}

TowerElem ScaledRoot::square() const { return coeff_ * coeff_ * Rational(radicand_); }

Interval ScaledRoot::abs(Precision prec) const {
  Interval c = irrmeasure::abs(irrmeasure::embed(coeff_, prec));
  if (radicand_ == 1) return c;
  return c * sqrt(Interval(radicand_, prec));
}

Ball ScaledRoot::embed(Precision prec) const {
  Ball c = irrmeasure::embed(coeff_, prec);
  if (radicand_ == 1) return c;
  return c * sqrt(Interval(radicand_, prec));
}

std::string ScaledRoot::to_string() const {
  if (radicand_ == 1) return coeff_.to_string();
  return "(" + coeff_.to_string() + ")*sqrt(" + radicand_.get_str() + ")";
}

bool is_alg_integer_quotient(const TowerElem& e, const ScaledRoot& s) {
  TowerElem q = e * e / s.square();
  return is_alg_integer(q);
}

}  // namespace irrmeasure
