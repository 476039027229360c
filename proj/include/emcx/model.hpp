/* Copyright 2026 The emcx Authors.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#ifndef EMCX_MODEL_HPP
#define EMCX_MODEL_HPP

#include <functional>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "emcx/rational.hpp"
#include "emcx/term.hpp"
#include "emcx/typecheck.hpp"

// Default model dimension; edge values are vectors of this many exact
// rationals. Overridable at configure time for extra confidence, and per
// ModelEnv at runtime for tests.
#ifndef EMCX_MODEL_DIM
#define EMCX_MODEL_DIM 1
#endif

namespace emcx {

// Denotation in the affine dilation model of Section 2:
//   x circ_a y = (1-a)x + ay,   x bullet_a y = (1-1/a)x + (1/a)y
// extended with the exact a -> 0 limits of the approximate-operation
// combinators. Everything is an exact rational; edge values live in Q^d.
class ModelValue {
 public:
  enum class Kind { Edge, Node, Func };

  static ModelValue edge(std::vector<Rational> v) {
    ModelValue m;
    m.kind_ = Kind::Edge;
    m.vec_ = std::move(v);
    return m;
  }
  static ModelValue node(Rational r) {
    ModelValue m;
    m.kind_ = Kind::Node;
    m.vec_ = {r};
    return m;
  }
  static ModelValue func(std::function<ModelValue(const ModelValue&)> f) {
    ModelValue m;
    m.kind_ = Kind::Func;
    m.fun_ = std::make_shared<std::function<ModelValue(const ModelValue&)>>(std::move(f));
    return m;
  }

  Kind kind() const { return kind_; }
  const std::vector<Rational>& vec() const { return vec_; }
  Rational scalar() const {
    if (kind_ != Kind::Node) fail(Err::TypeMismatch, "model value is not a node scalar");
    return vec_[0];
  }
  ModelValue apply(const ModelValue& arg) const {
    if (kind_ != Kind::Func) fail(Err::TypeMismatch, "model value is not a function");
    return (*fun_)(arg);
  }

  bool atomic_equal(const ModelValue& o) const {
    if (kind_ == Kind::Func || o.kind_ == Kind::Func)
      fail(Err::TypeMismatch, "cannot compare function values directly");
    if (vec_.size() != o.vec_.size()) return false;
    for (size_t i = 0; i < vec_.size(); ++i)
      if (vec_[i] != o.vec_[i]) return false;
    return true;
  }

  std::string str() const {
    if (kind_ == Kind::Func) return "<fun>";
    if (vec_.size() == 1) return vec_[0].str();
    std::string s = "(";
    for (size_t i = 0; i < vec_.size(); ++i) {
      if (i) s += ", ";
      s += vec_[i].str();
    }
    return s + ")";
  }

 private:
  Kind kind_ = Kind::Node;
  std::vector<Rational> vec_;
  std::shared_ptr<std::function<ModelValue(const ModelValue&)>> fun_;
};

struct ModelEnv {
  std::map<std::string, ModelValue> bindings;
  uint64_t seed = 0;
  int trials = 100;
  int dim = EMCX_MODEL_DIM;

  ModelEnv& set(const std::string& name, ModelValue v) {
    bindings.insert_or_assign(name, std::move(v));
    return *this;
  }
  ModelEnv& set(const std::string& name, Rational r) { return set(name, ModelValue::node(r)); }
};

namespace modeldetail {

inline std::vector<Rational> vzip(const std::vector<Rational>& a, const std::vector<Rational>& b,
                                  const std::function<Rational(Rational, Rational)>& f) {
  if (a.size() != b.size()) fail(Err::TypeMismatch, "model dimension mismatch");
  std::vector<Rational> out;
  out.reserve(a.size());
  for (size_t i = 0; i < a.size(); ++i) out.push_back(f(a[i], b[i]));
  return out;
}

// e + a*(x - e), componentwise when e,x are edges.
inline ModelValue dilate(const Rational& a, const ModelValue& e, const ModelValue& x) {
  if (e.kind() == ModelValue::Kind::Node && x.kind() == ModelValue::Kind::Node)
    return ModelValue::node(e.scalar() + a * (x.scalar() - e.scalar()));
  return ModelValue::edge(
      vzip(e.vec(), x.vec(), [&a](Rational u, Rational v) { return u + a * (v - u); }));
}

inline ModelValue affine3(const ModelValue& e, const ModelValue& x, const ModelValue& y,
                          long ce, long cx, long cy) {
  Rational re(ce), rx(cx), ry(cy);
  if (e.kind() == ModelValue::Kind::Node)
    return ModelValue::node(re * e.scalar() + rx * x.scalar() + ry * y.scalar());
  std::vector<Rational> out;
  for (size_t i = 0; i < e.vec().size(); ++i)
    out.push_back(re * e.vec()[i] + rx * x.vec()[i] + ry * y.vec()[i]);
  return ModelValue::edge(out);
}

inline ModelValue const_value(ConstName c) {
  using MV = ModelValue;
  switch (c) {
    case ConstName::One: return MV::node(Rational(1));
    case ConstName::Zero: return MV::node(Rational(0));
    case ConstName::Dil:
    case ConstName::Cvx:
      return MV::func([](const MV& a) {
        Rational s = a.scalar();
        return MV::func([s](const MV& e) {
          return MV::func([s, e](const MV& x) { return dilate(s, e, x); });
        });
      });
    case ConstName::Idil:
    case ConstName::Icvx:
      return MV::func([](const MV& a) {
        Rational s = a.scalar().reciprocal();
        return MV::func([s](const MV& e) {
          return MV::func([s, e](const MV& x) { return dilate(s, e, x); });
        });
      });
    case ConstName::Mul:
      return MV::func([](const MV& a) {
        return MV::func([a](const MV& b) { return MV::node(a.scalar() * b.scalar()); });
      });
    case ConstName::Inv:
      return MV::func([](const MV& a) { return MV::node(a.scalar().reciprocal()); });
    // Limits at a -> 0 of the combinators; each is affine in a and was
    // checked against two-point extrapolation (see the model tests).
    case ConstName::SigBar:
    case ConstName::SigbBar:  // x + y - e
      return MV::func([](const MV& e) {
        return MV::func([e](const MV& x) {
          return MV::func([e, x](const MV& y) { return affine3(e, x, y, -1, 1, 1); });
        });
      });
    case ConstName::DelBar:
    case ConstName::DelbBar:  // e - x + y
      return MV::func([](const MV& e) {
        return MV::func([e](const MV& x) {
          return MV::func([e, x](const MV& y) { return affine3(e, x, y, 1, -1, 1); });
        });
      });
    case ConstName::IotBar:
    case ConstName::JBar:  // 2e - x
      return MV::func([](const MV& e) {
        return MV::func([e](const MV& x) { return affine3(e, x, x, 2, -1, 0); });
      });
  }
  fail(Err::TypeMismatch, "constant without denotation");
}

inline ModelValue eval_rec(const Term& t, const std::shared_ptr<const ModelEnv>& env,
                           std::map<std::string, ModelValue> locals);

inline ModelValue eval_in(const Term& t, const std::shared_ptr<const ModelEnv>& env,
                          std::map<std::string, ModelValue>& locals) {
  switch (t.kind()) {
    case Term::Kind::Var: {
      auto it = locals.find(t.name());
      if (it != locals.end()) return it->second;
      auto g = env->bindings.find(t.name());
      if (g != env->bindings.end()) return g->second;
      fail(Err::UnboundVariable, "model env does not bind " + t.name());
    }
    case Term::Kind::Const: return const_value(t.const_name());
    case Term::Kind::App: {
      ModelValue f = eval_in(t.fun(), env, locals);
      ModelValue a = eval_in(t.arg(), env, locals);
      return f.apply(a);
    }
    case Term::Kind::Lam: {
      Term body = t.body();
      std::string name = t.name();
      auto captured = locals;
      return ModelValue::func([body, name, env, captured](const ModelValue& v) {
        auto inner = captured;
        inner.insert_or_assign(name, v);
        return eval_rec(body, env, std::move(inner));
      });
    }
  }
  fail(Err::TypeMismatch, "malformed term");
}

inline ModelValue eval_rec(const Term& t, const std::shared_ptr<const ModelEnv>& env,
                           std::map<std::string, ModelValue> locals) {
  return eval_in(t, env, locals);
}

}  // namespace modeldetail

inline ModelValue eval(const Term& t, const ModelEnv& env) {
  auto shared = std::make_shared<const ModelEnv>(env);
  std::map<std::string, ModelValue> locals;
  return modeldetail::eval_in(t, shared, locals);
}

// ---------------------------------------------------------------------------
// Randomized equality oracle

// splitmix64; fixed across platforms so reports are reproducible bit for bit.
struct Rng {
  uint64_t state;
  explicit Rng(uint64_t seed) : state(seed) {}
  uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // uniform in [lo, hi]
  long long range(long long lo, long long hi) {
    return lo + static_cast<long long>(next() % static_cast<uint64_t>(hi - lo + 1));
  }
};

namespace modeldetail {

// Numerators and denominators uniform in [-20, 20] with zero denominators
// rejected; node samples reject zero values.
inline Rational sample_rational(Rng& rng, bool nonzero) {
  for (;;) {
    long long num = rng.range(-20, 20);
    long long den = rng.range(-20, 20);
    if (den == 0) continue;
    if (nonzero && num == 0) continue;
    return Rational(num, den);
  }
}

inline ModelValue sample_value(const Type& ty, Rng& rng, int dim);

// Random affine map: scalar coefficients over the arguments plus an offset in
// the codomain space.
inline ModelValue sample_affine(const std::vector<Type>& doms, const Type& cod, Rng& rng,
                                int dim) {
  bool edge_cod = cod.kind() == Type::Kind::E;
  for (const Type& d : doms)
    if (d.is_arrow()) fail(Err::TypeMismatch, "cannot sample higher-order value of this shape");
  std::vector<Rational> coeffs;
  for (size_t i = 0; i < doms.size(); ++i) coeffs.push_back(sample_rational(rng, false));
  std::vector<Rational> offset;
  for (int i = 0; i < (edge_cod ? dim : 1); ++i) offset.push_back(sample_rational(rng, false));

  // Curry: collect arguments, then combine.
  struct Builder {
    static ModelValue make(std::vector<ModelValue> got, std::vector<Type> doms, Type cod,
                           std::vector<Rational> coeffs, std::vector<Rational> offset, int dim) {
      if (got.size() == doms.size()) {
        bool edge_cod = cod.kind() == Type::Kind::E;
        std::vector<Rational> acc = offset;
        for (size_t i = 0; i < got.size(); ++i) {
          const ModelValue& v = got[i];
          if (v.kind() == ModelValue::Kind::Func)
            fail(Err::TypeMismatch, "sampled map applied to function value");
          for (size_t k = 0; k < acc.size(); ++k) {
            Rational comp = v.kind() == ModelValue::Kind::Node
                                ? v.scalar()
                                : v.vec()[k % v.vec().size()];
            acc[k] = acc[k] + coeffs[i] * comp;
          }
        }
        if (edge_cod) return ModelValue::edge(acc);
        return ModelValue::node(acc[0]);
      }
      return ModelValue::func([=](const ModelValue& v) {
        auto g = got;
        g.push_back(v);
        return make(std::move(g), doms, cod, coeffs, offset, dim);
      });
    }
  };
  return Builder::make({}, doms, cod, coeffs, offset, dim);
}

inline ModelValue sample_value(const Type& ty, Rng& rng, int dim) {
  switch (ty.kind()) {
    case Type::Kind::N: return ModelValue::node(sample_rational(rng, true));
    case Type::Kind::Nb: return ModelValue::node(sample_rational(rng, false));
    case Type::Kind::E: {
      std::vector<Rational> v;
      for (int i = 0; i < dim; ++i) v.push_back(sample_rational(rng, false));
      return ModelValue::edge(v);
    }
    case Type::Kind::Arrow: {
      std::vector<Type> doms;
      Type cur = ty;
      while (cur.is_arrow()) {
        doms.push_back(cur.domain());
        cur = cur.codomain();
      }
      return sample_affine(doms, cur, rng, dim);
    }
  }
  fail(Err::TypeMismatch, "unsampleable type");
}

}  // namespace modeldetail

// True iff the two terms evaluate identically on `trials` sampled
// environments. Arrow-typed terms are compared by applying both sides to the
// same sampled arguments. Deterministic given the seed; per-trial generators
// are derived independently so trials could run in any order.
inline bool oracle_equal(const Term& t1, const Term& t2, int trials = 100, uint64_t seed = 0,
                         int dim = EMCX_MODEL_DIM) {
  Type ty1 = infer_type(t1);
  Type ty2 = infer_type(t2);
  std::map<std::string, Type> frees = free_vars(t1);
  for (const auto& [n, ty] : free_vars(t2)) {
    auto it = frees.find(n);
    if (it == frees.end())
      frees.emplace(n, ty);
    else if (it->second != ty)
      fail(Err::TypeMismatch, "free variable " + n + " typed differently on the two sides");
  }
  for (int trial = 0; trial < trials; ++trial) {
    Rng rng(seed * 0x9e3779b97f4a7c15ULL + static_cast<uint64_t>(trial) + 1);
    ModelEnv env;
    env.dim = dim;
    for (const auto& [name, ty] : frees)
      env.set(name, modeldetail::sample_value(ty, rng, dim));
    ModelValue v1 = eval(t1, env);
    ModelValue v2 = eval(t2, env);
    // Saturate arrow types with shared sampled arguments.
    Type cur = ty1;
    Type cur2 = ty2;
    while (cur.is_arrow()) {
      Type d = cur.domain();
      Type d2 = cur2.is_arrow() ? cur2.domain() : d;
      // Feed the less permissive side's domain so node positions stay valid.
      bool need_nonzero = d.kind() == Type::Kind::N || d2.kind() == Type::Kind::N;
      Type sample_ty = need_nonzero ? Type::n() : d;
      ModelValue a = modeldetail::sample_value(sample_ty, rng, dim);
      v1 = v1.apply(a);
      v2 = v2.apply(a);
      cur = cur.codomain();
      cur2 = cur2.is_arrow() ? cur2.codomain() : cur2;
    }
    if (!v1.atomic_equal(v2)) return false;
  }
  return true;
}

}  // namespace emcx

#endif  // EMCX_MODEL_HPP
