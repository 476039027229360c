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

#ifndef EMCX_TYPE_HPP
#define EMCX_TYPE_HPP

#include <memory>
#include <string>
#include <vector>

#include "emcx/error.hpp"

namespace emcx {

// Types of the calculus: E (edge), N (node), Nb (extended node, written N̄ in
// math commentary) and right-associated arrows. Values are immutable and
// shared; structural equality.
class Type {
 public:
  enum class Kind { E, N, Nb, Arrow };

  static Type e() { return atom(Kind::E); }
  static Type n() { return atom(Kind::N); }
  static Type nb() { return atom(Kind::Nb); }
  static Type arrow(Type dom, Type cod) {
    Type t;
    t.node_ = std::make_shared<const Node>(Node{Kind::Arrow, dom.node_, cod.node_});
    return t;
  }
  // dom1 -> dom2 -> ... -> cod
  static Type arrows(const std::vector<Type>& doms, Type cod) {
    Type t = cod;
    for (auto it = doms.rbegin(); it != doms.rend(); ++it) t = arrow(*it, t);
    return t;
  }

  Kind kind() const { return node_->kind; }
  bool is_arrow() const { return kind() == Kind::Arrow; }
  bool is_atomic() const { return !is_arrow(); }

  Type domain() const {
    if (!is_arrow()) fail(Err::NotAFunction, "domain of non-arrow type " + str());
    return Type(node_->dom);
  }
  Type codomain() const {
    if (!is_arrow()) fail(Err::NotAFunction, "codomain of non-arrow type " + str());
    return Type(node_->cod);
  }

  bool operator==(const Type& o) const { return equal(node_.get(), o.node_.get()); }
  bool operator!=(const Type& o) const { return !(*this == o); }

  std::string str() const { return print(node_.get(), false); }

 private:
  struct Node {
    Kind kind;
    std::shared_ptr<const Node> dom;  // Arrow only
    std::shared_ptr<const Node> cod;  // Arrow only
  };

  std::shared_ptr<const Node> node_;

  Type() = default;
  explicit Type(std::shared_ptr<const Node> n) : node_(std::move(n)) {}

  static Type atom(Kind k) {
    Type t;
    t.node_ = std::make_shared<const Node>(Node{k, nullptr, nullptr});
    return t;
  }

  static bool equal(const Node* a, const Node* b) {
    if (a == b) return true;
    if (a->kind != b->kind) return false;
    if (a->kind != Kind::Arrow) return true;
    return equal(a->dom.get(), b->dom.get()) && equal(a->cod.get(), b->cod.get());
  }

  static std::string print(const Node* n, bool parens) {
    switch (n->kind) {
      case Kind::E: return "E";
      case Kind::N: return "N";
      case Kind::Nb: return "Nb";
      case Kind::Arrow: {
        std::string s = print(n->dom.get(), true) + " -> " + print(n->cod.get(), false);
        return parens ? "(" + s + ")" : s;
      }
    }
    return "?";
  }

  friend int type_order(const Type& a, const Type& b);
};

// N is usable wherever Nb is expected (Def 5.2 treats node terms as extended
// node terms directly). Arrows are compared contravariantly in the domain.
inline bool subtype_le(const Type& a, const Type& b) {
  if (a == b) return true;
  if (a.kind() == Type::Kind::N && b.kind() == Type::Kind::Nb) return true;
  if (a.is_arrow() && b.is_arrow())
    return subtype_le(b.domain(), a.domain()) && subtype_le(a.codomain(), b.codomain());
  return false;
}

// Total order used for deterministic tie-breaking.
inline int type_order(const Type& a, const Type& b) {
  auto rank = [](Type::Kind k) {
    switch (k) {
      case Type::Kind::E: return 0;
      case Type::Kind::N: return 1;
      case Type::Kind::Nb: return 2;
      case Type::Kind::Arrow: return 3;
    }
    return 4;
  };
  if (rank(a.kind()) != rank(b.kind())) return rank(a.kind()) < rank(b.kind()) ? -1 : 1;
  if (!a.is_arrow()) return 0;
  int c = type_order(a.domain(), b.domain());
  if (c != 0) return c;
  return type_order(a.codomain(), b.codomain());
}

}  // namespace emcx

#endif  // EMCX_TYPE_HPP
