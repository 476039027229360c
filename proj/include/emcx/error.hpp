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

#ifndef EMCX_ERROR_HPP
#define EMCX_ERROR_HPP

#include <stdexcept>
#include <string>

namespace emcx {

enum class Err {
  UnboundVariable,
  ApplicationMismatch,
  NotAFunction,
  TypeMismatch,
  ArityMismatch,
  NotFinite,
  BadProof,
  NoMatch,
  PathInvalid,
  SideConditionFailed,
  DirectionUnavailable,
  UnknownCalculus,
  DivisionByZero,
  ArithmeticOverflow,
  ParseError,
  StepFailed,
  MissingDependency,
  CyclicDependency,
};

inline const char* err_name(Err e) {
  switch (e) {
    case Err::UnboundVariable: return "UnboundVariable";
    case Err::ApplicationMismatch: return "ApplicationMismatch";
    case Err::NotAFunction: return "NotAFunction";
    case Err::TypeMismatch: return "TypeMismatch";
    case Err::ArityMismatch: return "ArityMismatch";
    case Err::NotFinite: return "NotFinite";
    case Err::BadProof: return "BadProof";
    case Err::NoMatch: return "NoMatch";
    case Err::PathInvalid: return "PathInvalid";
    case Err::SideConditionFailed: return "SideConditionFailed";
    case Err::DirectionUnavailable: return "DirectionUnavailable";
    case Err::UnknownCalculus: return "UnknownCalculus";
    case Err::DivisionByZero: return "DivisionByZero";
    case Err::ArithmeticOverflow: return "ArithmeticOverflow";
    case Err::ParseError: return "ParseError";
    case Err::StepFailed: return "StepFailed";
    case Err::MissingDependency: return "MissingDependency";
    case Err::CyclicDependency: return "CyclicDependency";
  }
  return "UnknownError";
}

class Error : public std::runtime_error {
 public:
  Error(Err kind, const std::string& msg)
      : std::runtime_error(std::string(err_name(kind)) + ": " + msg), kind_(kind) {}

  Err kind() const { return kind_; }

 private:
  Err kind_;
};

[[noreturn]] inline void fail(Err kind, const std::string& msg) { throw Error(kind, msg); }

}  // namespace emcx

#endif  // EMCX_ERROR_HPP
