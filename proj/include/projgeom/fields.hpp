#pragma once

#include <functional>
#include <optional>
#include <string>
#include <tuple>
#include <utility>

#include "projgeom/errors.hpp"
#include "projgeom/jet.hpp"
#include "projgeom/tensors.hpp"

namespace projgeom {

using ScalarFn = std::function<double(Point)>;
using DomainFn = std::function<bool(Point)>;

inline bool everywhere(Point) { return true; }

// Evaluate a generic expression f(x, y) with jet-valued coordinates seeded at p.
template <int N, class Expr>
auto seed_and_eval(const Expr& expr, Point p)
{
  return expr(Jet<N>::variable(p.x, 0), Jet<N>::variable(p.y, 1));
}

// 4th-order central finite-difference jet of a scalar field, step h = step_scale * (1 + |coord|)
// per axis. Throws DomainError if any stencil node leaves `domain`.
ScalarJet3 fd_jet_adaptor(const ScalarFn& field, Point p, double step_scale = 1e-3,
                          const DomainFn& domain = everywhere);

//--------------------------------------------------------------------------------------------------
// Torsion-free connection given by its Christoffel symbols, with jets to order 0..2. Derived
// connections may not carry the full order (see max_order()).
class ConnectionField
{
public:
  template <int N>
  using JetEval = std::function<Christoffel<N>(Point)>;
  template <int N>
  using RicciEval = std::function<Mat2<Jet<N>>(Point)>;

  ConnectionField() = default;

  ConnectionField(std::string name, DomainFn domain, JetEval<0> c0, JetEval<1> c1, JetEval<2> c2)
      : name_(std::move(name)), domain_(std::move(domain)), evals_(std::move(c0), std::move(c1), std::move(c2))
  {
  }

  // `expr(x, y)` returns std::array<T, 6> of Gamma_ab^c in Christoffel slot order (3c + a + b).
  template <class Expr>
  static ConnectionField from_expression(std::string name, Expr expr, DomainFn domain = everywhere)
  {
    auto wrap = [expr]<int N>(Point p) {
      Christoffel<N> c;
      c.g = seed_and_eval<N>(expr, p);
      return c;
    };
    return ConnectionField(
        std::move(name), std::move(domain), [wrap](Point p) { return wrap.template operator()<0>(p); },
        [wrap](Point p) { return wrap.template operator()<1>(p); },
        [wrap](Point p) { return wrap.template operator()<2>(p); });
  }

  static ConnectionField flat();

  const std::string& name() const { return name_; }
  bool contains(Point p) const { return domain_(p); }
  const DomainFn& domain() const { return domain_; }

  bool has_order(int n) const
  {
    switch (n)
    {
      case 0: return static_cast<bool>(std::get<0>(evals_));
      case 1: return static_cast<bool>(std::get<1>(evals_));
      case 2: return static_cast<bool>(std::get<2>(evals_));
      default: return false;
    }
  }

  int max_order() const { return has_order(2) ? 2 : (has_order(1) ? 1 : 0); }

  // Copy that evaluates the Ricci tensor with the given functions instead of from the symbols.
  ConnectionField with_ricci(RicciEval<0> r0, RicciEval<1> r1) const
  {
    ConnectionField c = *this;
    c.ricci_ = std::make_tuple(std::move(r0), std::move(r1));
    return c;
  }

  bool has_ricci() const { return static_cast<bool>(std::get<0>(ricci_)); }

  template <int N>
  Mat2<Jet<N>> ricci_override(Point p) const
  {
    static_assert(N == 0 || N == 1, "Ricci jets are provided to orders 0..1");
    if (!domain_(p))
      throw DomainError("connection '" + name_ + "' evaluated outside its domain", p);
    return std::get<N>(ricci_)(p);
  }

  template <int N>
  Christoffel<N> at(Point p) const
  {
    static_assert(N >= 0 && N <= 2, "connection jets are provided to orders 0..2");
    if (!domain_(p))
      throw DomainError("connection '" + name_ + "' evaluated outside its domain", p);
    const auto& f = std::get<N>(evals_);
    if (!f)
      throw PreconditionError("connection '" + name_ + "' does not carry jets of order " + std::to_string(N));
    return f(p);
  }

private:
  std::string name_;
  DomainFn domain_ = everywhere;
  std::tuple<JetEval<0>, JetEval<1>, JetEval<2>> evals_;
  std::tuple<RicciEval<0>, RicciEval<1>> ricci_;
};

//--------------------------------------------------------------------------------------------------
// Riemannian metric g_ab on a chart domain, evaluable as jets of order 1..3 or as plain values.
class MetricField
{
public:
  template <int N>
  using JetEval = std::function<Sym2<Jet<N>>(Point)>;

  MetricField() = default;

  // `expr(x, y)` must be generic over double and Jet<N>, returning Sym2<T>.
  template <class Expr>
  static MetricField from_expression(std::string name, Expr expr, DomainFn domain = everywhere)
  {
    MetricField m;
    m.name_ = std::move(name);
    m.domain_ = std::move(domain);
    m.value_ = [expr](Point p) { return expr(p.x, p.y); };
    m.evals_ = std::make_tuple(JetEval<1>([expr](Point p) { return seed_and_eval<1>(expr, p); }),
                               JetEval<2>([expr](Point p) { return seed_and_eval<2>(expr, p); }),
                               JetEval<3>([expr](Point p) { return seed_and_eval<3>(expr, p); }));
    return m;
  }

  // User-supplied component functions; jets come from fd_jet_adaptor.
  static MetricField from_components(std::string name, ScalarFn g00, ScalarFn g01, ScalarFn g11,
                                     DomainFn domain = everywhere, double step_scale = 1e-3);

  // Copy whose Levi-Civita connection is the given one instead of the one derived from the jets.
  MetricField with_levi_civita(ConnectionField connection) const
  {
    MetricField m = *this;
    m.levi_civita_ = std::move(connection);
    return m;
  }

  const std::optional<ConnectionField>& levi_civita_override() const { return levi_civita_; }

  const std::string& name() const { return name_; }
  bool contains(Point p) const { return domain_(p); }
  const DomainFn& domain() const { return domain_; }

  Sym2<double> value(Point p) const
  {
    require_domain(p);
    return value_(p);
  }

  template <int N>
  Sym2<Jet<N>> jet(Point p) const
  {
    static_assert(N >= 1 && N <= 3, "metric jets are provided to orders 1..3");
    require_domain(p);
    return std::get<N - 1>(evals_)(p);
  }

private:
  void require_domain(Point p) const
  {
    if (!domain_(p))
      throw DomainError("metric '" + name_ + "' evaluated outside its domain", p);
  }

  std::string name_;
  DomainFn domain_ = everywhere;
  std::function<Sym2<double>(Point)> value_;
  std::tuple<JetEval<1>, JetEval<2>, JetEval<3>> evals_;
  std::optional<ConnectionField> levi_civita_;
};

//--------------------------------------------------------------------------------------------------
// One-form Upsilon_a with jets to order 0..2 (higher orders may be absent).
class CovectorField
{
public:
  template <int N>
  using Components = std::array<Jet<N>, 2>;
  template <int N>
  using JetEval = std::function<Components<N>(Point)>;

  CovectorField() = default;

  CovectorField(std::string name, DomainFn domain, JetEval<0> c0, JetEval<1> c1, JetEval<2> c2)
      : name_(std::move(name)), domain_(std::move(domain)), evals_(std::move(c0), std::move(c1), std::move(c2))
  {
  }

  // `expr(x, y)` returns std::array<T, 2>.
  template <class Expr>
  static CovectorField from_expression(std::string name, Expr expr, DomainFn domain = everywhere)
  {
    return CovectorField(
        std::move(name), std::move(domain), [expr](Point p) { return seed_and_eval<0>(expr, p); },
        [expr](Point p) { return seed_and_eval<1>(expr, p); },
        [expr](Point p) { return seed_and_eval<2>(expr, p); });
  }

  static CovectorField zero();

  const std::string& name() const { return name_; }
  const DomainFn& domain() const { return domain_; }

  bool has_order(int n) const
  {
    switch (n)
    {
      case 0: return static_cast<bool>(std::get<0>(evals_));
      case 1: return static_cast<bool>(std::get<1>(evals_));
      case 2: return static_cast<bool>(std::get<2>(evals_));
      default: return false;
    }
  }

  template <int N>
  Components<N> at(Point p) const
  {
    if (!domain_(p))
      throw DomainError("covector '" + name_ + "' evaluated outside its domain", p);
    const auto& f = std::get<N>(evals_);
    if (!f)
      throw PreconditionError("covector '" + name_ + "' does not carry jets of order " + std::to_string(N));
    return f(p);
  }

private:
  std::string name_;
  DomainFn domain_ = everywhere;
  std::tuple<JetEval<0>, JetEval<1>, JetEval<2>> evals_;
};

}  // namespace projgeom
