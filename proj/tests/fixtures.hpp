// Copyright 2026 The satphase Authors
// SPDX-License-Identifier: Apache-2.0
//
// Hand-built instances shared by the unit and acceptance tests.

#pragma once

#include <cstdlib>
#include <cstdint>
#include <utility>
#include <vector>

#include "satphase/instance.hpp"

namespace fixture {

using namespace satphase;

// Signed 1-based literals; each clause gets its own CLAUSE template.
inline Instance clauses(int n, const std::vector<std::vector<int>>& cs) {
  Cnf f;
  f.n = n;
  for (const auto& c : cs) {
    Clause cl;
    for (int l : c) cl.literals.push_back({std::abs(l) - 1, l < 0});
    f.clauses.push_back(cl);
  }
  return instance_from_cnf(f);
}

inline const std::vector<std::vector<int>> kFourClause2Cnf = {{1, 2}, {-1, 2}, {1, -2}, {-1, -2}};

// 1-in-k over signed 1-based literals.
inline void add_one_in_k(Instance& inst, const std::vector<int>& ls) {
  const int k = static_cast<int>(ls.size());
  auto t = ConstraintTemplate::from_predicate(k, [&](std::uint32_t a) {
    int count = 0;
    for (int i = 0; i < k; ++i) count += (((a >> i) & 1u) != 0) != (ls[i] < 0);
    return count == 1;
  });
  std::vector<int> vars;
  for (int l : ls) vars.push_back(std::abs(l) - 1);
  inst.templates.push_back(t);
  inst.constraints.push_back({inst.templates.size() - 1, vars});
}

// Four 1-in-k constraints sharing x1 and xk, one per sign pattern of the pair,
// each with k-2 fresh middle variables.
inline Instance one_in_k_gadget(int k) {
  Instance inst;
  inst.n = 4 * k - 6;
  int next = 3;
  const int xk = 2;
  for (auto [a, b] : {std::pair{1, xk}, {1, -xk}, {-1, xk}, {-1, -xk}}) {
    std::vector<int> ls{a};
    for (int i = 0; i < k - 2; ++i) ls.push_back(next++);
    ls.push_back(b);
    add_one_in_k(inst, ls);
  }
  return inst;
}

// Sign patterns (x1,xk), (~xk,x1), (~x1,~xk), (xk,x1) with k-2 middle slots each; satisfiable.
inline Instance literal_gadget(int k) {
  Instance inst;
  inst.n = 4 * k - 4;
  auto build = [&](int a, int first_mid, int b) {
    std::vector<int> ls{a};
    for (int i = 0; i < k - 2; ++i) ls.push_back(first_mid + i);
    ls.push_back(b);
    add_one_in_k(inst, ls);
  };
  build(1, 2, k);
  build(-k, k + 1, 1);
  build(-1, 2 * k - 1, -k);
  build(k, 3 * k - 2, 1);
  return inst;
}

}  // namespace fixture
