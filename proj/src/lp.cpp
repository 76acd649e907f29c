// Copyright 2026 The contract-menus Authors.
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

#include "cmenu/lp.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace cmenu {

const char* ToString(LPStatus status) {
  switch (status) {
    case LPStatus::kOptimal: return "optimal";
    case LPStatus::kInfeasible: return "infeasible";
    case LPStatus::kUnbounded: return "unbounded";
  }
  return "?";
}

const char* ToString(Backend backend) {
  return backend == Backend::kRational ? "rational" : "float";
}

int LinearProgram::AddVariable(bool is_free, std::optional<Rational> upper_bound) {
  free_var.push_back(is_free);
  upper.push_back(std::move(upper_bound));
  return static_cast<int>(free_var.size()) - 1;
}

int LinearProgram::AddRow(SparseRow coeffs, Relation rel, Rational rhs) {
  rows.push_back({std::move(coeffs), rel, std::move(rhs)});
  return static_cast<int>(rows.size()) - 1;
}

void LinearProgram::Check() const {
  const int n = static_cast<int>(num_vars());
  if (upper.size() != free_var.size()) throw InvalidInput("LP bound arrays disagree");
  auto check_row = [n](const SparseRow& row) {
    for (const auto& [j, v] : row) {
      if (j < 0 || j >= n) throw InvalidInput("LP variable index out of range");
    }
  };
  check_row(objective);
  for (const auto& r : rows) check_row(r.coeffs);
}

namespace {

// Comparison policy: exact for rationals, absolute tolerance for doubles.
template <class T>
struct Num;

template <>
struct Num<Rational> {
  static bool Pos(const Rational& v) { return sgn(v) > 0; }
  static bool Neg(const Rational& v) { return sgn(v) < 0; }
  static bool Zero(const Rational& v) { return sgn(v) == 0; }
  static Rational From(const Rational& q) { return q; }
  static Rational ToQ(const Rational& v) { return v; }
};

template <>
struct Num<double> {
  static constexpr double kEps = 1e-11;
  static bool Pos(double v) { return v > kEps; }
  static bool Neg(double v) { return v < -kEps; }
  static bool Zero(double v) { return std::fabs(v) <= kEps; }
  static double From(const Rational& q) { return q.get_d(); }
  static Rational ToQ(double v) { return FromDouble(v); }
};

// The LP rewritten as max c.x, Ax (=) b with b >= 0, x >= 0, one unit column
// per row (slack or artificial) forming the starting basis.
struct StandardForm {
  std::size_t num_struct = 0;
  std::vector<int> pos_col, neg_col;  // per original variable
  std::vector<bool> flipped;          // per standardized row
  std::vector<int> unit_col;          // per standardized row
  std::vector<bool> artificial;       // per column
  std::size_t num_cols = 0;
  std::size_t num_orig_rows = 0;
};

class SimplexFailure : public std::exception {};

template <class T>
class Tableau {
 public:
  Tableau(const LinearProgram& lp, std::size_t max_pivots) : max_pivots_(max_pivots) { Build(lp); }

  LPSolution Run(const LinearProgram& lp) {
    LPSolution sol;
    // Phase 1: maximize -(sum of artificials).
    std::vector<T> c1(sf_.num_cols, T(0));
    for (std::size_t j = 0; j < sf_.num_cols; ++j) {
      if (sf_.artificial[j]) c1[j] = T(-1);
    }
    SetObjective(c1);
    if (!Optimize(/*allow_artificial=*/true)) throw SimplexFailure();  // phase 1 is bounded
    if (Num<T>::Neg(value_)) {
      sol.status = LPStatus::kInfeasible;
      sol.pivots = pivots_;
      return sol;
    }
    DriveOutArtificials();
    SetObjective(c2_);
    if (!Optimize(/*allow_artificial=*/false)) {
      sol.status = LPStatus::kUnbounded;
      sol.pivots = pivots_;
      return sol;
    }
    sol.status = LPStatus::kOptimal;
    sol.pivots = pivots_;
    sol.is_vertex = true;
    std::vector<T> xs(sf_.num_cols, T(0));
    for (std::size_t i = 0; i < rows_; ++i) xs[basis_[i]] = b_[i];
    const std::size_t n = lp.num_vars();
    sol.primal.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
      T v = xs[sf_.pos_col[j]];
      if (sf_.neg_col[j] >= 0) v -= xs[sf_.neg_col[j]];
      sol.primal[j] = Num<T>::ToQ(v);
    }
    sol.dual.resize(sf_.num_orig_rows);
    for (std::size_t i = 0; i < sf_.num_orig_rows; ++i) {
      T y = -d_[sf_.unit_col[i]];
      if (sf_.flipped[i]) y = -y;
      if (lp.sense == Sense::kMinimize) y = -y;
      sol.dual[i] = Num<T>::ToQ(y);
    }
    sol.value = 0;
    for (const auto& [j, v] : lp.objective) sol.value += v * sol.primal[j];
    return sol;
  }

 private:
  void Build(const LinearProgram& lp) {
    const std::size_t n = lp.num_vars();
    sf_.pos_col.assign(n, -1);
    sf_.neg_col.assign(n, -1);
    std::size_t col = 0;
    for (std::size_t j = 0; j < n; ++j) {
      sf_.pos_col[j] = static_cast<int>(col++);
      if (lp.free_var[j]) sf_.neg_col[j] = static_cast<int>(col++);
    }
    sf_.num_struct = col;

    struct RawRow {
      std::vector<std::pair<int, T>> coeffs;
      Relation rel;
      T rhs;
      bool flipped;
    };
    std::vector<RawRow> raw;
    auto expand = [&](const SparseRow& row, bool flip) {
      std::vector<std::pair<int, T>> out;
      for (const auto& [j, v] : row) {
        T t = Num<T>::From(v);
        if (flip) t = -t;
        out.emplace_back(sf_.pos_col[j], t);
        if (sf_.neg_col[j] >= 0) out.emplace_back(sf_.neg_col[j], -t);
      }
      return out;
    };
    auto add = [&](const SparseRow& row, Relation rel, const Rational& rhs) {
      const bool flip = sgn(rhs) < 0;
      if (flip) {
        if (rel == Relation::kLessEqual) {
          rel = Relation::kGreaterEqual;
        } else if (rel == Relation::kGreaterEqual) {
          rel = Relation::kLessEqual;
        }
      }
      raw.push_back({expand(row, flip), rel, Num<T>::From(flip ? Rational(-rhs) : rhs), flip});
    };
    for (const auto& r : lp.rows) add(r.coeffs, r.rel, r.rhs);
    sf_.num_orig_rows = lp.rows.size();
    for (std::size_t j = 0; j < n; ++j) {
      if (lp.upper[j]) add({{static_cast<int>(j), Rational(1)}}, Relation::kLessEqual, *lp.upper[j]);
    }

    rows_ = raw.size();
    // Column layout: structural, then one or two auxiliary columns per row.
    sf_.unit_col.assign(rows_, -1);
    std::vector<int> surplus_col(rows_, -1);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (raw[i].rel == Relation::kGreaterEqual) surplus_col[i] = static_cast<int>(col++);
      sf_.unit_col[i] = static_cast<int>(col++);
    }
    sf_.num_cols = col;
    sf_.artificial.assign(col, false);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (raw[i].rel != Relation::kLessEqual) sf_.artificial[sf_.unit_col[i]] = true;
    }
    sf_.flipped.resize(rows_);

    a_.assign(rows_, std::vector<T>(col, T(0)));
    b_.resize(rows_);
    basis_.resize(rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (auto& [j, v] : raw[i].coeffs) a_[i][j] += v;
      if (surplus_col[i] >= 0) a_[i][surplus_col[i]] = T(-1);
      a_[i][sf_.unit_col[i]] = T(1);
      b_[i] = raw[i].rhs;
      basis_[i] = sf_.unit_col[i];
      sf_.flipped[i] = raw[i].flipped;
    }

    c2_.assign(col, T(0));
    const bool minimize = lp.sense == Sense::kMinimize;
    for (const auto& [j, v] : lp.objective) {
      T t = Num<T>::From(v);
      if (minimize) t = -t;
      c2_[sf_.pos_col[j]] += t;
      if (sf_.neg_col[j] >= 0) c2_[sf_.neg_col[j]] -= t;
    }
  }

  void SetObjective(const std::vector<T>& c) {
    d_ = c;
    value_ = T(0);
    for (std::size_t i = 0; i < rows_; ++i) {
      const T& cb = c[basis_[i]];
      if (Num<T>::Zero(cb)) continue;
      for (std::size_t j = 0; j < sf_.num_cols; ++j) {
        if (!Num<T>::Zero(a_[i][j])) d_[j] -= cb * a_[i][j];
      }
      value_ += cb * b_[i];
    }
  }

  // Bland's rule: lowest-index improving column, lowest-index leaving
  // variable among ratio ties. Returns false when unbounded.
  bool Optimize(bool allow_artificial) {
    for (;;) {
      int enter = -1;
      for (std::size_t j = 0; j < sf_.num_cols; ++j) {
        if (!allow_artificial && sf_.artificial[j]) continue;
        if (Num<T>::Pos(d_[j])) {
          enter = static_cast<int>(j);
          break;
        }
      }
      if (enter < 0) return true;
      int leave = -1;
      T best_ratio(0);
      for (std::size_t i = 0; i < rows_; ++i) {
        if (!Num<T>::Pos(a_[i][enter])) continue;
        T ratio = b_[i] / a_[i][enter];
        bool take = leave < 0;
        if (!take) {
          const bool tie = Num<T>::Zero(ratio - best_ratio);
          take = tie ? basis_[i] < basis_[leave] : ratio < best_ratio;
        }
        if (take) {
          leave = static_cast<int>(i);
          best_ratio = ratio;
        }
      }
      if (leave < 0) return false;
      Pivot(static_cast<std::size_t>(leave), static_cast<std::size_t>(enter));
    }
  }

  void Pivot(std::size_t r, std::size_t s) {
    if (++pivots_ > max_pivots_) throw SimplexFailure();
    std::vector<T>& pr = a_[r];
    const T piv = pr[s];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j < sf_.num_cols; ++j) {
      if (!Num<T>::Zero(pr[j])) {
        pr[j] /= piv;
        nz.push_back(j);
      } else {
        pr[j] = T(0);
      }
    }
    b_[r] /= piv;
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r || Num<T>::Zero(a_[i][s])) continue;
      const T f = a_[i][s];
      for (std::size_t j : nz) a_[i][j] -= f * pr[j];
      a_[i][s] = T(0);
      b_[i] -= f * b_[r];
      if constexpr (std::is_same_v<T, double>) {
        if (b_[i] < 0 && b_[i] > -1e-9) b_[i] = 0;
      }
    }
    if (!Num<T>::Zero(d_[s])) {
      const T f = d_[s];
      for (std::size_t j : nz) d_[j] -= f * pr[j];
      d_[s] = T(0);
      value_ += f * b_[r];
    }
    basis_[r] = static_cast<int>(s);
  }

  // After phase 1, pivot zero-level artificials out of the basis where a
  // nonzero structural entry exists; rows with none are redundant.
  void DriveOutArtificials() {
    for (std::size_t i = 0; i < rows_; ++i) {
      if (!sf_.artificial[basis_[i]]) continue;
      for (std::size_t j = 0; j < sf_.num_cols; ++j) {
        if (sf_.artificial[j] || Num<T>::Zero(a_[i][j])) continue;
        Pivot(i, j);
        break;
      }
    }
  }

  StandardForm sf_;
  std::size_t rows_ = 0;
  std::vector<std::vector<T>> a_;
  std::vector<T> b_, d_, c2_;
  std::vector<int> basis_;
  T value_ = T(0);
  std::size_t pivots_ = 0;
  std::size_t max_pivots_;
};

LPSolution SolveRational(const LinearProgram& lp) {
  try {
    Tableau<Rational> t(lp, static_cast<std::size_t>(-1));
    LPSolution sol = t.Run(lp);
    sol.backend = Backend::kRational;
    return sol;
  } catch (const SimplexFailure&) {
    throw SolverError("exact simplex failed");
  }
}

// Residual check for float answers: primal feasibility against the exact
// data and agreement of primal and dual objectives.
bool FloatAnswerChecks(const LinearProgram& lp, const LPSolution& sol) {
  if (sol.status != LPStatus::kOptimal) return true;
  const std::size_t n = lp.num_vars();
  std::vector<double> x(n);
  double scale = 1;
  for (std::size_t j = 0; j < n; ++j) {
    x[j] = sol.primal[j].get_d();
    scale = std::max(scale, std::fabs(x[j]));
    if (!lp.free_var[j] && x[j] < -1e-8 * scale) return false;
    if (lp.upper[j] && x[j] > lp.upper[j]->get_d() + 1e-8 * scale) return false;
  }
  double dual_obj = 0;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& r = lp.rows[i];
    double lhs = 0, mag = std::fabs(r.rhs.get_d());
    for (const auto& [j, v] : r.coeffs) {
      double t = v.get_d() * x[j];
      lhs += t;
      mag = std::max(mag, std::fabs(t));
    }
    const double rhs = r.rhs.get_d(), tol = 1e-8 * (1 + mag);
    if (r.rel == Relation::kLessEqual && lhs > rhs + tol) return false;
    if (r.rel == Relation::kGreaterEqual && lhs < rhs - tol) return false;
    if (r.rel == Relation::kEqual && std::fabs(lhs - rhs) > tol) return false;
    dual_obj += sol.dual[i].get_d() * rhs;
  }
  // Upper bounds carry duals too, so the gap check only applies when there
  // are none.
  bool has_upper = false;
  for (const auto& u : lp.upper) has_upper |= u.has_value();
  if (!has_upper) {
    const double v = sol.value.get_d();
    if (std::fabs(v - dual_obj) > 1e-7 * (1 + std::fabs(v))) return false;
  }
  return true;
}

}  // namespace

LPSolution Solve(const LinearProgram& lp, Backend backend) {
  lp.Check();
  if (backend == Backend::kRational) return SolveRational(lp);
  try {
    const std::size_t cap = 50 * (lp.rows.size() + lp.num_vars() + 10) * (lp.rows.size() + 10);
    Tableau<double> t(lp, cap);
    LPSolution sol = t.Run(lp);
    sol.backend = Backend::kFloat;
    if (FloatAnswerChecks(lp, sol)) return sol;
  } catch (const SimplexFailure&) {
  }
  LPSolution sol = SolveRational(lp);
  sol.fell_back = true;
  return sol;
}

const std::vector<Rational>& Duals(const LPSolution& solution) {
  if (solution.status != LPStatus::kOptimal) {
    throw SolverError(std::string("duals unavailable: LP is ") + ToString(solution.status));
  }
  return solution.dual;
}

LPSolution RestrictAndResolve(const LinearProgram& lp, const std::vector<int>& fixed_rows,
                              Backend backend) {
  LinearProgram restricted = lp;
  for (int i : fixed_rows) {
    if (i < 0 || static_cast<std::size_t>(i) >= lp.rows.size()) {
      throw InvalidInput("restricted row index out of range");
    }
    restricted.rows[i].rel = Relation::kEqual;
  }
  LPSolution sol = Solve(restricted, backend);
  if (sol.status == LPStatus::kInfeasible) throw SolverError("restriction is infeasible");
  return sol;
}

std::size_t MatrixRank(std::vector<std::vector<Rational>> rows) {
  if (rows.empty()) return 0;
  const std::size_t cols = rows[0].size();
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows.size(); ++c) {
    std::size_t piv = rank;
    while (piv < rows.size() && rows[piv][c] == 0) ++piv;
    if (piv == rows.size()) continue;
    std::swap(rows[piv], rows[rank]);
    for (std::size_t i = rank + 1; i < rows.size(); ++i) {
      if (rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t k = c; k < cols; ++k) rows[i][k] -= f * rows[rank][k];
    }
    ++rank;
  }
  return rank;
}

std::size_t ActiveRank(const LinearProgram& lp, const std::vector<Rational>& x) {
  const std::size_t n = lp.num_vars();
  std::vector<std::vector<Rational>> active;
  for (const auto& r : lp.rows) {
    Rational lhs = 0;
    std::vector<Rational> dense(n, Rational(0));
    for (const auto& [j, v] : r.coeffs) {
      lhs += v * x[j];
      dense[j] += v;
    }
    if (lhs == r.rhs) active.push_back(std::move(dense));
  }
  for (std::size_t j = 0; j < n; ++j) {
    const bool at_lower = !lp.free_var[j] && x[j] == 0;
    const bool at_upper = lp.upper[j] && x[j] == *lp.upper[j];
    if (at_lower || at_upper) {
      std::vector<Rational> e(n, Rational(0));
      e[j] = 1;
      active.push_back(std::move(e));
    }
  }
  return MatrixRank(std::move(active));
}

std::string ToLpFormat(const LinearProgram& lp) {
  std::ostringstream out;
  auto term_list = [&out](const SparseRow& row) {
    bool first = true;
    for (const auto& [j, v] : row) {
      if (v == 0) continue;
      out << (sgn(v) < 0 ? " - " : (first ? " " : " + ")) << ToString(Rational(abs(v))) << " x"
          << j;
      first = false;
    }
    if (first) out << " 0 x0";
  };
  out << (lp.sense == Sense::kMaximize ? "Maximize" : "Minimize") << "\n obj:";
  term_list(lp.objective);
  out << "\nSubject To\n";
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    const auto& r = lp.rows[i];
    out << " c" << i << ":";
    term_list(r.coeffs);
    out << (r.rel == Relation::kLessEqual ? " <= " : r.rel == Relation::kEqual ? " = " : " >= ")
        << ToString(r.rhs) << "\n";
  }
  out << "Bounds\n";
  for (std::size_t j = 0; j < lp.num_vars(); ++j) {
    if (lp.free_var[j]) {
      if (lp.upper[j]) {
        out << " -inf <= x" << j << " <= " << ToString(*lp.upper[j]) << "\n";
      } else {
        out << " x" << j << " free\n";
      }
    } else if (lp.upper[j]) {
      out << " 0 <= x" << j << " <= " << ToString(*lp.upper[j]) << "\n";
    }
  }
  out << "End\n";
  return out.str();
}

}  // namespace cmenu
