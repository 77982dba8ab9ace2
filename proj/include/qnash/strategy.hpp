// Copyright 2026 The qnash Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <json.hpp>

#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "qnash/errors.hpp"
#include "qnash/matrix.hpp"
#include "qnash/scalar.hpp"

namespace qnash {

/// Probability vector over row or column indices. The support is kept
/// explicitly and is always { i : weight_i != 0 } under the scalar policy.
template <class T>
class MixedStrategy {
 public:
  MixedStrategy() = default;

  /// Throws UsageError unless the weights are nonnegative and sum to one.
  static MixedStrategy from_weights(std::vector<T> weights) {
    using Ops = ScalarOps<T>;
    if (weights.empty()) throw UsageError("strategy has dimension zero");
    T total(0);
    for (const auto& w : weights) {
      if (Ops::is_negative(w)) throw UsageError("strategy has a negative weight");
      total += w;
    }
    if (!Ops::eq(total, T(1)))
      throw UsageError("strategy weights sum to " + Ops::format(total) + ", not 1");
    MixedStrategy s;
    s.weights_ = std::move(weights);
    for (Index i = 0; i < s.weights_.size(); ++i)
      if (!Ops::is_zero(s.weights_[i])) s.support_.push_back(i);
    return s;
  }

  static MixedStrategy pure(std::size_t dimension, Index i) {
    if (i >= dimension) throw UsageError("pure strategy index out of range");
    std::vector<T> w(dimension, T(0));
    w[i] = T(1);
    return from_weights(std::move(w));
  }

  /// Places `local` weights at positions `ids` of a `dimension`-long vector.
  static MixedStrategy embed(std::size_t dimension, std::span<const Index> ids,
                             std::span<const T> local) {
    if (ids.size() != local.size()) throw UsageError("embed: size mismatch");
    std::vector<T> w(dimension, T(0));
    for (std::size_t a = 0; a < ids.size(); ++a) {
      if (ids[a] >= dimension) throw UsageError("embed: index out of range");
      w[ids[a]] = local[a];
    }
    return from_weights(std::move(w));
  }

  std::size_t dimension() const { return weights_.size(); }
  const std::vector<T>& weights() const { return weights_; }
  const T& weight(Index i) const { return weights_[i]; }
  const std::vector<Index>& support() const { return support_; }

  friend bool operator==(const MixedStrategy& a, const MixedStrategy& b) {
    if (a.weights_.size() != b.weights_.size()) return false;
    for (std::size_t i = 0; i < a.weights_.size(); ++i)
      if (!ScalarOps<T>::eq(a.weights_[i], b.weights_[i])) return false;
    return true;
  }

 private:
  std::vector<T> weights_;
  std::vector<Index> support_;
};

template <class T>
struct EquilibriumCertificate {
  MixedStrategy<T> row_strategy;
  MixedStrategy<T> col_strategy;
  T value{0};
  bool verified = false;
  bool unique_claimed = false;
  std::optional<std::size_t> queries_used;
};

namespace detail {

template <class T>
nlohmann::json scalar_json(const T& v) {
  if constexpr (ScalarOps<T>::kMode == ArithmeticMode::kExact) {
    return ScalarOps<T>::format(v);
  } else {
    return v;
  }
}

template <class T>
nlohmann::json strategy_json(const MixedStrategy<T>& s) {
  nlohmann::json weights = nlohmann::json::array();
  for (const auto& w : s.weights()) weights.push_back(scalar_json(w));
  return weights;
}

inline nlohmann::json support_json(const std::vector<Index>& support) {
  nlohmann::json out = nlohmann::json::array();
  for (Index i : support) out.push_back(to_external(i));
  return out;
}

}  // namespace detail

/// JSON document for a certificate. Exact mode writes rationals as "p/q"
/// strings; supports are 1-based.
template <class T>
nlohmann::json certificate_json(const EquilibriumCertificate<T>& c) {
  nlohmann::json doc;
  doc["mode"] = std::string(to_string(ScalarOps<T>::kMode));
  doc["value"] = detail::scalar_json(c.value);
  doc["row_strategy"] = detail::strategy_json(c.row_strategy);
  doc["col_strategy"] = detail::strategy_json(c.col_strategy);
  doc["row_support"] = detail::support_json(c.row_strategy.support());
  doc["col_support"] = detail::support_json(c.col_strategy.support());
  doc["verified"] = c.verified;
  doc["unique_claimed"] = c.unique_claimed;
  if (c.queries_used) {
    doc["queries_used"] = *c.queries_used;
  } else {
    doc["queries_used"] = nullptr;
  }
  return doc;
}

/// Inverse of certificate_json for exact documents.
inline EquilibriumCertificate<Rational> certificate_from_json(const nlohmann::json& doc) {
  auto strategy = [](const nlohmann::json& arr) {
    std::vector<Rational> w;
    for (const auto& e : arr) w.push_back(parse_rational(e.get<std::string>()));
    return MixedStrategy<Rational>::from_weights(std::move(w));
  };
  EquilibriumCertificate<Rational> c;
  c.row_strategy = strategy(doc.at("row_strategy"));
  c.col_strategy = strategy(doc.at("col_strategy"));
  c.value = parse_rational(doc.at("value").get<std::string>());
  c.verified = doc.value("verified", false);
  c.unique_claimed = doc.value("unique_claimed", false);
  if (doc.contains("queries_used") && !doc["queries_used"].is_null())
    c.queries_used = doc["queries_used"].get<std::size_t>();
  return c;
}

}  // namespace qnash
