// Copyright 2026 The crewrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "crewrec/lp.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <ostream>
#include <stdexcept>

namespace crewrec {

const char* to_string(LpStatus status) {
  switch (status) {
    case LpStatus::kOptimal: return "optimal";
    case LpStatus::kInfeasible: return "infeasible";
    case LpStatus::kUnbounded: return "unbounded";
    case LpStatus::kIterationLimit: return "iteration-limit";
  }
  return "unknown";
}

int LpProblem::add_row(RowSense sense, double rhs_value, std::string name) {
  senses.push_back(sense);
  rhs.push_back(rhs_value);
  row_names.push_back(std::move(name));
  return num_rows() - 1;
}

int LpProblem::add_column(double cost, std::vector<LpEntry> entries,
                          std::string name) {
  std::map<int, double> merged;
  for (const LpEntry& e : entries) {
    if (e.row < 0 || e.row >= num_rows()) {
      throw std::out_of_range("column entry references a missing row");
    }
    merged[e.row] += e.value;
  }
  std::vector<LpEntry> column;
  for (const auto& [row, value] : merged) {
    if (value != 0.0) column.push_back({row, value});
  }
  costs.push_back(cost);
  columns.push_back(std::move(column));
  column_names.push_back(std::move(name));
  return num_columns() - 1;
}

namespace {

class SingularBasis : public std::runtime_error {
 public:
  SingularBasis() : std::runtime_error("singular basis") {}
};

// Working state of one solve. Rows are normalised to nonnegative right-hand
// sides; variable ids are structural [0, n), slack [n, n+m), artificial
// [n+m, n+2m).
class Simplex {
 public:
  Simplex(const LpProblem& problem, const SimplexOptions& options)
      : p_(problem),
        opt_(options),
        m_(problem.num_rows()),
        n_(problem.num_columns()),
        sign_(m_, 1.0),
        sense_(problem.senses),
        b_(m_),
        binv_(static_cast<std::size_t>(m_) * m_),
        x_b_(m_),
        basis_(m_),
        is_basic_(n_ + 2 * m_, -1) {
    for (int i = 0; i < m_; ++i) {
      if (p_.rhs[i] < 0.0) {
        sign_[i] = -1.0;
        if (sense_[i] == RowSense::kLessEqual) {
          sense_[i] = RowSense::kGreaterEqual;
        } else if (sense_[i] == RowSense::kGreaterEqual) {
          sense_[i] = RowSense::kLessEqual;
        }
      }
      b_[i] = sign_[i] * p_.rhs[i];
    }
  }

  LpSolution run(const std::vector<BasisEntry>& warm) {
    LpSolution sol;
    bool warm_ok = !warm.empty() && try_warm(warm);
    if (!warm_ok) cold_basis();

    if (has_basic_artificial_with_value() || !warm_ok) {
      phase_ = 1;
      const LpStatus s = iterate(sol.iterations);
      if (s == LpStatus::kIterationLimit) {
        sol.status = s;
        return sol;
      }
      double infeas = 0.0;
      for (int i = 0; i < m_; ++i) {
        if (is_artificial(basis_[i])) infeas += x_b_[i];
      }
      double scale = 1.0;
      for (double v : b_) scale = std::max(scale, std::abs(v));
      if (infeas > opt_.feasibility_tolerance * scale * 10.0) {
        sol.status = LpStatus::kInfeasible;
        return sol;
      }
      drive_out_artificials();
    }
    phase_ = 2;
    sol.status = iterate(sol.iterations);
    if (sol.status != LpStatus::kOptimal) return sol;
    extract(sol);
    return sol;
  }

 private:
  bool is_artificial(int v) const { return v >= n_ + m_; }
  bool is_slack(int v) const { return v >= n_ && v < n_ + m_; }

  double slack_coef(int row) const {
    return sense_[row] == RowSense::kLessEqual ? 1.0 : -1.0;
  }

  template <typename F>
  void for_column(int v, F&& f) const {
    if (v < n_) {
      for (const LpEntry& e : p_.columns[v]) f(e.row, sign_[e.row] * e.value);
    } else if (v < n_ + m_) {
      f(v - n_, slack_coef(v - n_));
    } else {
      f(v - n_ - m_, 1.0);
    }
  }

  double cost(int v) const {
    if (phase_ == 1) return is_artificial(v) ? 1.0 : 0.0;
    return v < n_ ? p_.costs[v] : 0.0;
  }

  bool eligible(int v) const {
    if (is_basic_[v] >= 0 || is_artificial(v)) return false;
    if (is_slack(v) && sense_[v - n_] == RowSense::kEqual) return false;
    return true;
  }

  void set_basis(const std::vector<int>& vars) {
    std::fill(is_basic_.begin(), is_basic_.end(), -1);
    for (int i = 0; i < m_; ++i) {
      basis_[i] = vars[i];
      is_basic_[vars[i]] = i;
    }
  }

  void cold_basis() {
    std::vector<int> vars(m_);
    for (int i = 0; i < m_; ++i) {
      vars[i] = sense_[i] == RowSense::kLessEqual ? n_ + i : n_ + m_ + i;
    }
    set_basis(vars);
    refactor();
  }

  bool try_warm(const std::vector<BasisEntry>& warm) {
    if (static_cast<int>(warm.size()) > m_) return false;
    std::vector<int> vars;
    std::vector<char> seen(n_ + 2 * m_, 0);
    for (const BasisEntry& e : warm) {
      int v = -1;
      switch (e.kind) {
        case BasisEntry::Kind::kColumn:
          if (e.index < 0 || e.index >= n_) return false;
          v = e.index;
          break;
        case BasisEntry::Kind::kSlack:
          if (e.index < 0 || e.index >= m_) return false;
          if (sense_[e.index] == RowSense::kEqual) return false;
          v = n_ + e.index;
          break;
        case BasisEntry::Kind::kArtificial:
          if (e.index < 0 || e.index >= m_) return false;
          v = n_ + m_ + e.index;
          break;
      }
      if (seen[v]) return false;
      seen[v] = 1;
      vars.push_back(v);
    }
    // Rows appended since the basis was saved start with their own slack or
    // artificial.
    for (int i = static_cast<int>(warm.size()); i < m_; ++i) {
      vars.push_back(sense_[i] == RowSense::kEqual ? n_ + m_ + i : n_ + i);
    }
    set_basis(vars);
    try {
      refactor();
    } catch (const SingularBasis&) {
      return false;
    }
    for (int i = 0; i < m_; ++i) {
      if (x_b_[i] < -opt_.feasibility_tolerance) return false;
    }
    return true;
  }

  bool has_basic_artificial_with_value() const {
    for (int i = 0; i < m_; ++i) {
      if (is_artificial(basis_[i]) && x_b_[i] > opt_.feasibility_tolerance) {
        return true;
      }
    }
    return false;
  }

  // Gauss-Jordan inversion of the current basis with partial pivoting.
  void refactor() {
    std::vector<double> a(static_cast<std::size_t>(m_) * m_, 0.0);
    for (int j = 0; j < m_; ++j) {
      for_column(basis_[j], [&](int row, double v) { a[row * m_ + j] = v; });
    }
    std::fill(binv_.begin(), binv_.end(), 0.0);
    for (int i = 0; i < m_; ++i) binv_[i * m_ + i] = 1.0;
    for (int col = 0; col < m_; ++col) {
      int piv = col;
      for (int r = col + 1; r < m_; ++r) {
        if (std::abs(a[r * m_ + col]) > std::abs(a[piv * m_ + col])) piv = r;
      }
      if (std::abs(a[piv * m_ + col]) < 1e-11) throw SingularBasis();
      if (piv != col) {
        for (int k = 0; k < m_; ++k) {
          std::swap(a[piv * m_ + k], a[col * m_ + k]);
          std::swap(binv_[piv * m_ + k], binv_[col * m_ + k]);
        }
      }
      const double d = a[col * m_ + col];
      for (int k = 0; k < m_; ++k) {
        a[col * m_ + k] /= d;
        binv_[col * m_ + k] /= d;
      }
      for (int r = 0; r < m_; ++r) {
        if (r == col) continue;
        const double f = a[r * m_ + col];
        if (f == 0.0) continue;
        for (int k = 0; k < m_; ++k) {
          a[r * m_ + k] -= f * a[col * m_ + k];
          binv_[r * m_ + k] -= f * binv_[col * m_ + k];
        }
      }
    }
    for (int i = 0; i < m_; ++i) {
      double s = 0.0;
      for (int k = 0; k < m_; ++k) s += binv_[i * m_ + k] * b_[k];
      x_b_[i] = std::abs(s) < 1e-12 ? 0.0 : s;
    }
    since_refactor_ = 0;
  }

  std::vector<double> duals_std() const {
    std::vector<double> y(m_, 0.0);
    for (int i = 0; i < m_; ++i) {
      const double c = cost(basis_[i]);
      if (c == 0.0) continue;
      for (int k = 0; k < m_; ++k) y[k] += c * binv_[i * m_ + k];
    }
    return y;
  }

  double reduced_cost(int v, const std::vector<double>& y) const {
    double d = cost(v);
    for_column(v, [&](int row, double a) { d -= y[row] * a; });
    return d;
  }

  std::vector<double> ftran(int v) const {
    std::vector<double> alpha(m_, 0.0);
    for_column(v, [&](int row, double a) {
      for (int i = 0; i < m_; ++i) alpha[i] += binv_[i * m_ + row] * a;
    });
    return alpha;
  }

  void pivot(int r, int q, const std::vector<double>& alpha, double theta) {
    for (int i = 0; i < m_; ++i) x_b_[i] -= theta * alpha[i];
    x_b_[r] = theta;
    for (int i = 0; i < m_; ++i) {
      if (x_b_[i] < 0.0 && x_b_[i] > -opt_.feasibility_tolerance) x_b_[i] = 0.0;
    }
    const double d = alpha[r];
    double* row_r = &binv_[static_cast<std::size_t>(r) * m_];
    for (int k = 0; k < m_; ++k) row_r[k] /= d;
    for (int i = 0; i < m_; ++i) {
      if (i == r || alpha[i] == 0.0) continue;
      const double f = alpha[i];
      double* row_i = &binv_[static_cast<std::size_t>(i) * m_];
      for (int k = 0; k < m_; ++k) row_i[k] -= f * row_r[k];
    }
    is_basic_[basis_[r]] = -1;
    basis_[r] = q;
    is_basic_[q] = r;
    if (++since_refactor_ >= opt_.refactor_interval) refactor();
  }

  LpStatus iterate(int& iterations) {
    int degenerate = 0;
    bool verified = false;
    const int total = n_ + 2 * m_;
    while (true) {
      if (iterations >= opt_.max_iterations) return LpStatus::kIterationLimit;
      const std::vector<double> y = duals_std();
      const bool bland = degenerate >= opt_.degenerate_streak;
      int q = -1;
      double best = -opt_.optimality_tolerance;
      for (int v = 0; v < total; ++v) {
        if (!eligible(v)) continue;
        const double d = reduced_cost(v, y);
        if (d < best) {
          q = v;
          best = d;
          if (bland) break;
        }
      }
      if (q < 0) {
        // Confirm optimality against a fresh inverse before returning.
        if (verified || since_refactor_ == 0) return LpStatus::kOptimal;
        refactor();
        verified = true;
        continue;
      }
      verified = false;

      const std::vector<double> alpha = ftran(q);
      int r = -1;
      double theta = std::numeric_limits<double>::infinity();
      for (int i = 0; i < m_; ++i) {
        double a = alpha[i];
        double ratio;
        if (phase_ == 2 && is_artificial(basis_[i]) &&
            std::abs(a) > opt_.pivot_tolerance) {
          // A leftover artificial must stay at zero.
          ratio = 0.0;
        } else if (a > opt_.pivot_tolerance) {
          ratio = std::max(0.0, x_b_[i]) / a;
        } else {
          continue;
        }
        bool take = false;
        if (r < 0 || ratio < theta - 1e-12) {
          take = true;
        } else if (ratio <= theta + 1e-12) {
          take = bland ? basis_[i] < basis_[r]
                       : std::abs(a) > std::abs(alpha[r]);
        }
        if (take) {
          r = i;
          theta = ratio;
        }
      }
      if (r < 0) return LpStatus::kUnbounded;
      degenerate = theta < 1e-12 ? degenerate + 1 : 0;
      pivot(r, q, alpha, theta);
      ++iterations;
    }
  }

  void drive_out_artificials() {
    for (int r = 0; r < m_; ++r) {
      if (!is_artificial(basis_[r])) continue;
      x_b_[r] = 0.0;
      const double* row_r = &binv_[static_cast<std::size_t>(r) * m_];
      int best = -1;
      double best_abs = 1e-7;
      for (int v = 0; v < n_ + m_; ++v) {
        if (!eligible(v)) continue;
        double a = 0.0;
        for_column(v, [&](int row, double c) { a += row_r[row] * c; });
        if (std::abs(a) > best_abs) {
          best = v;
          best_abs = std::abs(a);
        }
      }
      // No candidate: the row is redundant and the artificial stays at zero.
      if (best >= 0) pivot(r, best, ftran(best), 0.0);
    }
  }

  void extract(LpSolution& sol) const {
    sol.primal.assign(n_, 0.0);
    for (int i = 0; i < m_; ++i) {
      if (basis_[i] < n_) sol.primal[basis_[i]] = std::max(0.0, x_b_[i]);
    }
    sol.objective = 0.0;
    for (int j = 0; j < n_; ++j) sol.objective += p_.costs[j] * sol.primal[j];
    const std::vector<double> y = duals_std();
    sol.duals.resize(m_);
    for (int i = 0; i < m_; ++i) sol.duals[i] = sign_[i] * y[i];
    sol.reduced_costs.resize(n_);
    for (int j = 0; j < n_; ++j) sol.reduced_costs[j] = reduced_cost(j, y);
    sol.basis.clear();
    for (int i = 0; i < m_; ++i) {
      const int v = basis_[i];
      if (v < n_) {
        sol.basis.push_back({BasisEntry::Kind::kColumn, v});
      } else if (v < n_ + m_) {
        sol.basis.push_back({BasisEntry::Kind::kSlack, v - n_});
      } else {
        sol.basis.push_back({BasisEntry::Kind::kArtificial, v - n_ - m_});
      }
    }
  }

  const LpProblem& p_;
  const SimplexOptions& opt_;
  int m_;
  int n_;
  std::vector<double> sign_;
  std::vector<RowSense> sense_;
  std::vector<double> b_;
  std::vector<double> binv_;
  std::vector<double> x_b_;
  std::vector<int> basis_;
  std::vector<int> is_basic_;
  int phase_ = 2;
  int since_refactor_ = 0;
};

}  // namespace

LpSolution DenseSimplex::solve(const LpProblem& problem,
                               const std::vector<BasisEntry>& warm) {
  if (problem.senses.size() != problem.rhs.size() ||
      problem.costs.size() != problem.columns.size()) {
    throw std::invalid_argument("inconsistent LP dimensions");
  }
  if (problem.num_rows() == 0) {
    LpSolution sol;
    sol.primal.assign(problem.num_columns(), 0.0);
    sol.reduced_costs = problem.costs;
    for (double c : problem.costs) {
      if (c < 0.0) {
        sol.status = LpStatus::kUnbounded;
        return sol;
      }
    }
    sol.status = LpStatus::kOptimal;
    return sol;
  }
  Simplex simplex(problem, options_);
  return simplex.run(warm);
}

void write_lp_format(const LpProblem& problem, std::ostream& out) {
  auto col_name = [&](int j) {
    return problem.column_names[j].empty() ? "x" + std::to_string(j)
                                           : problem.column_names[j];
  };
  auto row_name = [&](int i) {
    return problem.row_names[i].empty() ? "r" + std::to_string(i)
                                        : problem.row_names[i];
  };
  auto term = [&](double v, const std::string& name, bool first) {
    if (v < 0) {
      out << " - " << -v << ' ' << name;
    } else {
      out << (first ? " " : " + ") << v << ' ' << name;
    }
  };
  out.precision(17);
  out << "Minimize\n obj:";
  bool first = true;
  for (int j = 0; j < problem.num_columns(); ++j) {
    if (problem.costs[j] == 0.0) continue;
    term(problem.costs[j], col_name(j), first);
    first = false;
  }
  if (first) out << " 0 " << (problem.num_columns() ? col_name(0) : "x0");
  out << "\nSubject To\n";
  std::vector<std::vector<std::pair<int, double>>> rows(problem.num_rows());
  for (int j = 0; j < problem.num_columns(); ++j) {
    for (const LpEntry& e : problem.columns[j]) rows[e.row].emplace_back(j, e.value);
  }
  for (int i = 0; i < problem.num_rows(); ++i) {
    out << ' ' << row_name(i) << ':';
    first = true;
    for (const auto& [j, v] : rows[i]) {
      term(v, col_name(j), first);
      first = false;
    }
    if (first) out << " 0 " << (problem.num_columns() ? col_name(0) : "x0");
    switch (problem.senses[i]) {
      case RowSense::kLessEqual: out << " <= "; break;
      case RowSense::kGreaterEqual: out << " >= "; break;
      case RowSense::kEqual: out << " = "; break;
    }
    out << problem.rhs[i] << '\n';
  }
  out << "End\n";
}

}  // namespace crewrec
