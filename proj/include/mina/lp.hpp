#pragma once

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace mina::lp {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense { less_equal, greater_equal, equal };

struct Term {
  int var;
  double coef;
};

struct Constraint {
  std::vector<Term> terms;
  Sense sense;
  double rhs;
};

class LpError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// minimize c.x  subject to  rows (<=, >=, =)  and  lo <= x <= hi.
/// Variable bounds must be finite.
class LinearProgram {
 public:
  int add_variable(double lo, double hi, double cost = 0.0, std::string name = {}) {
    lower_.push_back(lo);
    upper_.push_back(hi);
    cost_.push_back(cost);
    names_.push_back(name.empty() ? "v" + std::to_string(lower_.size() - 1) : std::move(name));
    return static_cast<int>(lower_.size()) - 1;
  }

  int add_constraint(std::vector<Term> terms, Sense sense, double rhs) {
    rows_.push_back({std::move(terms), sense, rhs});
    return static_cast<int>(rows_.size()) - 1;
  }

  void set_cost(int var, double c) { cost_[var] = c; }

  int num_variables() const { return static_cast<int>(lower_.size()); }
  int num_constraints() const { return static_cast<int>(rows_.size()); }
  double lower(int j) const { return lower_[j]; }
  double upper(int j) const { return upper_[j]; }
  double cost(int j) const { return cost_[j]; }
  const std::string& name(int j) const { return names_[j]; }
  const std::vector<Constraint>& constraints() const { return rows_; }

  void validate() const {
    for (int j = 0; j < num_variables(); ++j) {
      if (!std::isfinite(lower_[j]) || !std::isfinite(upper_[j])) {
        throw LpError("variable " + names_[j] + " has an infinite bound");
      }
      if (lower_[j] > upper_[j]) throw LpError("variable " + names_[j] + " has lo > hi");
      if (!std::isfinite(cost_[j])) throw LpError("non-finite objective coefficient");
    }
    for (const auto& r : rows_) {
      if (!std::isfinite(r.rhs)) throw LpError("non-finite right-hand side");
      for (const auto& t : r.terms) {
        if (t.var < 0 || t.var >= num_variables()) throw LpError("constraint references unknown variable");
        if (!std::isfinite(t.coef)) throw LpError("non-finite coefficient");
      }
    }
  }

  static double activity(const Constraint& row, const std::vector<double>& x) {
    double a = 0.0;
    for (const auto& t : row.terms) a += t.coef * x[t.var];
    return a;
  }

  /// Plain-text form, one item per line:
  ///   lp <num_vars> <num_rows>
  ///   var <index> <name> <lo> <hi>
  ///   obj <var>:<coef> ...            (minimize)
  ///   row <index> <le|ge|eq> <rhs> <var>:<coef> ...
  std::string dump() const {
    std::ostringstream out;
    out.precision(17);
    out << "lp " << num_variables() << ' ' << num_constraints() << '\n';
    for (int j = 0; j < num_variables(); ++j) {
      out << "var " << j << ' ' << names_[j] << ' ' << lower_[j] << ' ' << upper_[j] << '\n';
    }
    out << "obj";
    for (int j = 0; j < num_variables(); ++j) {
      if (cost_[j] != 0.0) out << ' ' << j << ':' << cost_[j];
    }
    out << '\n';
    for (int i = 0; i < num_constraints(); ++i) {
      const auto& r = rows_[i];
      const char* s = r.sense == Sense::less_equal ? "le" : r.sense == Sense::greater_equal ? "ge" : "eq";
      out << "row " << i << ' ' << s << ' ' << r.rhs;
      for (const auto& t : r.terms) out << ' ' << t.var << ':' << t.coef;
      out << '\n';
    }
    return out.str();
  }

 private:
  std::vector<double> lower_, upper_, cost_;
  std::vector<std::string> names_;
  std::vector<Constraint> rows_;
};

enum class Status { optimal, infeasible, unbounded };

inline const char* to_string(Status s) {
  switch (s) {
    case Status::optimal: return "optimal";
    case Status::infeasible: return "infeasible";
    case Status::unbounded: return "unbounded";
  }
  return "?";
}

struct Options {
  double feas_tol = 1e-7;
  double opt_tol = 1e-7;
  double pivot_tol = 1e-9;
  /// Consecutive degenerate pivots before switching to Bland's rule.
  int bland_after = 50;
  /// 0 = automatic (proportional to tableau size).
  int max_iterations = 0;
};

namespace detail {

/// Dense simplex tableau T = B^-1 [A | I | art] over columns
/// [structural | one slack per row | artificials].
class Tableau {
 public:
  Tableau(const LinearProgram& lp, const Options& opt) : opt_(opt) {
    n_struct_ = lp.num_variables();
    for (int j = 0; j < n_struct_; ++j) add_column(lp.lower(j), lp.upper(j), lp.cost(j));
    const auto& rows = lp.constraints();
    rows_ = static_cast<int>(rows.size());
    for (const auto& r : rows) {
      auto [lo, hi] = slack_bounds(r.sense);
      row_slack_.push_back(add_column(lo, hi, 0.0));
    }
    // Structural variables start at their lower bound.
    for (int j = 0; j < n_struct_; ++j) at_upper_[j] = false;

    std::vector<double> residual(rows_);
    row_art_.assign(rows_, -1);
    for (int i = 0; i < rows_; ++i) {
      double act = 0.0;
      for (const auto& t : rows[i].terms) act += t.coef * lo_[t.var];
      residual[i] = rows[i].rhs - act;
      int s = row_slack_[i];
      if (residual[i] >= lo_[s] - opt_.feas_tol && residual[i] <= hi_[s] + opt_.feas_tol) continue;
      // Slack stays nonbasic at its finite bound; an artificial absorbs the residual.
      at_upper_[s] = !std::isfinite(lo_[s]) || (rows[i].sense == Sense::greater_equal);
      row_art_[i] = add_column(0.0, kInf, 0.0);
      art_sign_.resize(rows_, 1.0);
    }
    art_sign_.resize(rows_, 1.0);

    stride_ = cols_ + 16;
    a_.assign(static_cast<std::size_t>(rows_) * stride_, 0.0);
    rhs_.assign(rows_, 0.0);
    basis_.assign(rows_, -1);
    pos_.assign(cols_, -1);
    original_.reserve(rows_);
    for (int i = 0; i < rows_; ++i) {
      original_.push_back(rows[i]);
      double slack_value = at_upper_[row_slack_[i]] ? hi_[row_slack_[i]] : lo_[row_slack_[i]];
      if (row_art_[i] >= 0) {
        art_sign_[i] = (residual[i] - slack_value) >= 0 ? 1.0 : -1.0;
      }
    }
    load_rows_identity_basis();
  }

  int rows() const { return rows_; }
  int iterations() const { return iterations_; }

  /// Two-phase primal simplex from the initial basis.
  Status solve() {
    bool need_phase1 = false;
    for (int i = 0; i < rows_; ++i) need_phase1 |= row_art_[i] >= 0;
    if (need_phase1) {
      std::vector<double> phase1(cols_, 0.0);
      for (int i = 0; i < rows_; ++i) {
        if (row_art_[i] >= 0) phase1[row_art_[i]] = 1.0;
      }
      compute_reduced_costs(phase1);
      Status s = primal(phase1);
      if (s != Status::optimal) throw LpError("phase 1 did not terminate optimally");
      recompute_beta();
      double infeas = 0.0;
      for (int i = 0; i < rows_; ++i) {
        if (row_art_[i] >= 0) infeas += value(row_art_[i]);
      }
      if (infeas > opt_.feas_tol * 10) return Status::infeasible;
      for (int i = 0; i < rows_; ++i) {
        if (row_art_[i] >= 0) hi_[row_art_[i]] = 0.0;
      }
      drive_out_artificials();
    }
    compute_reduced_costs(cost_);
    return primal(cost_);
  }

  /// Appends a constraint over the structural variables and restores
  /// optimality with the dual simplex. Returns std::nullopt when the warm
  /// path gives up and the caller should solve from scratch.
  std::optional<Status> add_row(const Constraint& row) {
    auto [lo, hi] = slack_bounds(row.sense);
    int s = add_column(lo, hi, 0.0);
    at_upper_[s] = !std::isfinite(lo);
    ensure_stride(cols_);
    std::vector<double> fresh(stride_, 0.0);
    for (const auto& t : row.terms) fresh[t.var] += t.coef;
    fresh[s] = 1.0;
    double fresh_rhs = row.rhs;
    for (int i = 0; i < rows_; ++i) {
      double f = fresh[basis_[i]];
      if (f == 0.0) continue;
      const double* ri = row_ptr(i);
      for (int j = 0; j < cols_; ++j) {
        if (ri[j] != 0.0) fresh[j] -= f * ri[j];
      }
      fresh[basis_[i]] = 0.0;
      fresh_rhs -= f * rhs_[i];
    }
    a_.resize(static_cast<std::size_t>(rows_ + 1) * stride_, 0.0);
    std::copy(fresh.begin(), fresh.end(), a_.begin() + static_cast<std::ptrdiff_t>(rows_) * stride_);
    rhs_.push_back(fresh_rhs);
    basis_.push_back(s);
    pos_[s] = rows_;
    row_slack_.push_back(s);
    row_art_.push_back(-1);
    art_sign_.push_back(1.0);
    original_.push_back(row);
    ++rows_;
    d_[s] = 0.0;
    recompute_beta();

    auto dual = dual_simplex();
    if (!dual) return std::nullopt;
    if (*dual != Status::optimal) return dual;
    return primal(cost_);
  }

  /// Values of the structural variables, clamped to their bounds.
  std::vector<double> structural_values() {
    recompute_beta();
    std::vector<double> x(n_struct_);
    for (int j = 0; j < n_struct_; ++j) x[j] = std::clamp(value(j), lo_[j], hi_[j]);
    return x;
  }

  /// Rebuilds T from the original rows for the current basis.
  void refactor() {
    const int m = rows_;
    std::vector<double> b(static_cast<std::size_t>(m) * m, 0.0);
    auto col_into = [&](int j, int k) {
      // column j of [A | I | art] written into column k of b
      if (j < n_struct_) {
        for (int i = 0; i < m; ++i) {
          for (const auto& t : original_[i].terms) {
            if (t.var == j) b[static_cast<std::size_t>(i) * m + k] += t.coef;
          }
        }
        return;
      }
      for (int i = 0; i < m; ++i) {
        if (row_slack_[i] == j) b[static_cast<std::size_t>(i) * m + k] = 1.0;
        if (row_art_[i] == j) b[static_cast<std::size_t>(i) * m + k] = art_sign_[i];
      }
    };
    for (int k = 0; k < m; ++k) col_into(basis_[k], k);

    // Gauss-Jordan inverse with partial pivoting.
    std::vector<double> inv(static_cast<std::size_t>(m) * m, 0.0);
    for (int i = 0; i < m; ++i) inv[static_cast<std::size_t>(i) * m + i] = 1.0;
    for (int c = 0; c < m; ++c) {
      int p = c;
      for (int r = c + 1; r < m; ++r) {
        if (std::abs(b[static_cast<std::size_t>(r) * m + c]) > std::abs(b[static_cast<std::size_t>(p) * m + c])) p = r;
      }
      double pv = b[static_cast<std::size_t>(p) * m + c];
      if (std::abs(pv) < 1e-12) throw LpError("numerical breakdown: singular basis");
      if (p != c) {
        for (int k = 0; k < m; ++k) {
          std::swap(b[static_cast<std::size_t>(p) * m + k], b[static_cast<std::size_t>(c) * m + k]);
          std::swap(inv[static_cast<std::size_t>(p) * m + k], inv[static_cast<std::size_t>(c) * m + k]);
        }
      }
      for (int k = 0; k < m; ++k) {
        b[static_cast<std::size_t>(c) * m + k] /= pv;
        inv[static_cast<std::size_t>(c) * m + k] /= pv;
      }
      for (int r = 0; r < m; ++r) {
        if (r == c) continue;
        double f = b[static_cast<std::size_t>(r) * m + c];
        if (f == 0.0) continue;
        for (int k = 0; k < m; ++k) {
          b[static_cast<std::size_t>(r) * m + k] -= f * b[static_cast<std::size_t>(c) * m + k];
          inv[static_cast<std::size_t>(r) * m + k] -= f * inv[static_cast<std::size_t>(c) * m + k];
        }
      }
    }
    // Row k of the basis inverse corresponds to basic column basis_[k].
    std::fill(a_.begin(), a_.end(), 0.0);
    std::fill(rhs_.begin(), rhs_.end(), 0.0);
    for (int i = 0; i < m; ++i) {
      for (int k = 0; k < m; ++k) {
        double w = inv[static_cast<std::size_t>(k) * m + i];
        if (w == 0.0) continue;
        double* rk = row_ptr(k);
        for (const auto& t : original_[i].terms) rk[t.var] += w * t.coef;
        rk[row_slack_[i]] += w;
        if (row_art_[i] >= 0) rk[row_art_[i]] += w * art_sign_[i];
        rhs_[k] += w * original_[i].rhs;
      }
    }
    for (int k = 0; k < m; ++k) {
      double* rk = row_ptr(k);
      for (int kk = 0; kk < m; ++kk) rk[basis_[kk]] = kk == k ? 1.0 : 0.0;
    }
    recompute_beta();
    compute_reduced_costs(cost_);
  }

  Status reoptimize() { return primal(cost_); }

 private:
  std::pair<double, double> slack_bounds(Sense s) const {
    switch (s) {
      case Sense::less_equal: return {0.0, kInf};
      case Sense::greater_equal: return {-kInf, 0.0};
      case Sense::equal: return {0.0, 0.0};
    }
    return {0.0, 0.0};
  }

  int add_column(double lo, double hi, double c) {
    lo_.push_back(lo);
    hi_.push_back(hi);
    cost_.push_back(c);
    at_upper_.push_back(!std::isfinite(lo));
    pos_.push_back(-1);
    d_.push_back(0.0);
    return cols_++;
  }

  void ensure_stride(int needed) {
    if (needed <= stride_) return;
    int fresh = std::max(needed, stride_ * 2);
    std::vector<double> b(static_cast<std::size_t>(rows_) * fresh, 0.0);
    for (int i = 0; i < rows_; ++i) {
      std::copy(a_.begin() + static_cast<std::ptrdiff_t>(i) * stride_,
                a_.begin() + static_cast<std::ptrdiff_t>(i) * stride_ + stride_,
                b.begin() + static_cast<std::ptrdiff_t>(i) * fresh);
    }
    a_.swap(b);
    stride_ = fresh;
  }

  double* row_ptr(int i) { return a_.data() + static_cast<std::size_t>(i) * stride_; }
  const double* row_ptr(int i) const { return a_.data() + static_cast<std::size_t>(i) * stride_; }

  void load_rows_identity_basis() {
    for (int i = 0; i < rows_; ++i) {
      double* r = row_ptr(i);
      for (const auto& t : original_[i].terms) r[t.var] += t.coef;
      r[row_slack_[i]] = 1.0;
      rhs_[i] = original_[i].rhs;
      int basic = row_slack_[i];
      if (row_art_[i] >= 0) {
        r[row_art_[i]] = art_sign_[i];
        basic = row_art_[i];
        double inv = 1.0 / art_sign_[i];
        for (int j = 0; j < cols_; ++j) r[j] *= inv;
        rhs_[i] *= inv;
      }
      basis_[i] = basic;
      pos_[basic] = i;
    }
    recompute_beta();
  }

  double nonbasic_value(int j) const { return at_upper_[j] ? hi_[j] : lo_[j]; }
  double value(int j) const { return pos_[j] >= 0 ? beta_[pos_[j]] : nonbasic_value(j); }

  void recompute_beta() {
    beta_.assign(rows_, 0.0);
    std::vector<std::pair<int, double>> nb;
    for (int j = 0; j < cols_; ++j) {
      if (pos_[j] >= 0) continue;
      double v = nonbasic_value(j);
      if (v != 0.0) nb.emplace_back(j, v);
    }
    for (int i = 0; i < rows_; ++i) {
      const double* r = row_ptr(i);
      double b = rhs_[i];
      for (const auto& [j, v] : nb) b -= r[j] * v;
      beta_[i] = b;
    }
  }

  void compute_reduced_costs(const std::vector<double>& c) {
    d_.assign(cols_, 0.0);
    for (int j = 0; j < cols_; ++j) d_[j] = c[j];
    for (int i = 0; i < rows_; ++i) {
      double cb = c[basis_[i]];
      if (cb == 0.0) continue;
      const double* r = row_ptr(i);
      for (int j = 0; j < cols_; ++j) d_[j] -= cb * r[j];
    }
    for (int i = 0; i < rows_; ++i) d_[basis_[i]] = 0.0;
  }

  void pivot(int r, int j) {
    double* pr = row_ptr(r);
    const double inv = 1.0 / pr[j];
    std::vector<int> nz;
    nz.reserve(64);
    for (int k = 0; k < cols_; ++k) {
      if (pr[k] != 0.0) {
        pr[k] *= inv;
        nz.push_back(k);
      }
    }
    pr[j] = 1.0;
    rhs_[r] *= inv;
    for (int i = 0; i < rows_; ++i) {
      if (i == r) continue;
      double* ri = row_ptr(i);
      double f = ri[j];
      if (f == 0.0) continue;
      for (int k : nz) ri[k] -= f * pr[k];
      ri[j] = 0.0;
      rhs_[i] -= f * rhs_[r];
    }
    double dj = d_[j];
    if (dj != 0.0) {
      for (int k : nz) d_[k] -= dj * pr[k];
    }
    d_[j] = 0.0;
    pos_[basis_[r]] = -1;
    basis_[r] = j;
    pos_[j] = r;
  }

  int iteration_cap() const {
    if (opt_.max_iterations > 0) return opt_.max_iterations;
    return 50 * (rows_ + cols_) + 1000;
  }

  bool fixed(int j) const { return hi_[j] - lo_[j] <= 0.0; }

  Status primal(const std::vector<double>& c) {
    int degenerate = 0;
    bool bland = false;
    int since_refresh = 0;
    for (;;) {
      if (++iterations_ > iteration_cap()) throw LpError("cycling guard exceeded");
      if (++since_refresh >= 100) {
        recompute_beta();
        compute_reduced_costs(c);
        since_refresh = 0;
      }
      int enter = -1;
      double best = 0.0;
      for (int j = 0; j < cols_; ++j) {
        if (pos_[j] >= 0 || fixed(j)) continue;
        double dj = d_[j];
        bool improving = at_upper_[j] ? dj > opt_.opt_tol : dj < -opt_.opt_tol;
        if (!improving) continue;
        if (bland) {
          enter = j;
          break;
        }
        if (std::abs(dj) > best) {
          best = std::abs(dj);
          enter = j;
        }
      }
      if (enter < 0) return Status::optimal;

      const double dir = at_upper_[enter] ? -1.0 : 1.0;
      double theta = hi_[enter] - lo_[enter];
      int leave = -1;
      double leave_alpha = 0.0;
      for (int i = 0; i < rows_; ++i) {
        double alpha = row_ptr(i)[enter];
        if (std::abs(alpha) <= opt_.pivot_tol) continue;
        int bv = basis_[i];
        double rate = -dir * alpha;
        double lim;
        if (rate < 0) {
          if (!std::isfinite(lo_[bv])) continue;
          lim = (beta_[i] - lo_[bv]) / -rate;
        } else {
          if (!std::isfinite(hi_[bv])) continue;
          lim = (hi_[bv] - beta_[i]) / rate;
        }
        lim = std::max(lim, 0.0);
        bool take = false;
        if (lim < theta - 1e-12) {
          take = true;
        } else if (lim <= theta + 1e-12 && leave >= 0) {
          take = bland ? bv < basis_[leave] : std::abs(alpha) > std::abs(leave_alpha);
        } else if (lim <= theta + 1e-12 && leave < 0 && !std::isfinite(theta)) {
          take = true;
        }
        if (take) {
          theta = lim;
          leave = i;
          leave_alpha = alpha;
        }
      }
      if (!std::isfinite(theta)) return Status::unbounded;

      for (int i = 0; i < rows_; ++i) {
        double alpha = row_ptr(i)[enter];
        if (alpha != 0.0) beta_[i] -= dir * alpha * theta;
      }
      if (theta <= 1e-12) {
        if (++degenerate >= opt_.bland_after) bland = true;
      } else {
        degenerate = 0;
        bland = false;
      }
      if (leave < 0) {
        at_upper_[enter] = !at_upper_[enter];
        continue;
      }
      double entering_value = nonbasic_value(enter) + dir * theta;
      int bv = basis_[leave];
      at_upper_[bv] = (-dir * leave_alpha) > 0;
      pivot(leave, enter);
      beta_[leave] = entering_value;
    }
  }

  /// Bounded dual simplex; assumes the reduced costs are dual feasible.
  std::optional<Status> dual_simplex() {
    const int cap = iteration_cap();
    int local = 0;
    for (;;) {
      if (++local > cap) return std::nullopt;
      ++iterations_;
      int r = -1;
      double worst = opt_.feas_tol;
      for (int i = 0; i < rows_; ++i) {
        int bv = basis_[i];
        double viol = std::max(lo_[bv] - beta_[i], beta_[i] - hi_[bv]);
        if (viol > worst) {
          worst = viol;
          r = i;
        }
      }
      if (r < 0) return Status::optimal;
      const int bv = basis_[r];
      const bool below = beta_[r] < lo_[bv];
      const double target = below ? lo_[bv] : hi_[bv];
      const double* pr = row_ptr(r);
      int enter = -1;
      double best_ratio = kInf;
      double best_alpha = 0.0;
      for (int j = 0; j < cols_; ++j) {
        if (pos_[j] >= 0 || fixed(j)) continue;
        double alpha = pr[j];
        if (std::abs(alpha) <= opt_.pivot_tol) continue;
        bool up = !at_upper_[j];
        bool eligible = below ? (up ? alpha < 0 : alpha > 0) : (up ? alpha > 0 : alpha < 0);
        if (!eligible) continue;
        double ratio = std::abs(d_[j]) / std::abs(alpha);
        if (ratio < best_ratio - 1e-12 || (ratio <= best_ratio + 1e-12 && std::abs(alpha) > std::abs(best_alpha))) {
          best_ratio = ratio;
          enter = j;
          best_alpha = alpha;
        }
      }
      if (enter < 0) return Status::infeasible;
      double delta = (beta_[r] - target) / best_alpha;
      double entering_value = nonbasic_value(enter) + delta;
      for (int i = 0; i < rows_; ++i) {
        double alpha = row_ptr(i)[enter];
        if (alpha != 0.0) beta_[i] -= alpha * delta;
      }
      at_upper_[bv] = !below;
      pivot(r, enter);
      beta_[r] = entering_value;
    }
  }

  void drive_out_artificials() {
    for (int i = 0; i < rows_; ++i) {
      int bv = basis_[i];
      bool art = false;
      for (int k = 0; k < rows_; ++k) art |= row_art_[k] == bv;
      if (!art) continue;
      const double* r = row_ptr(i);
      int enter = -1;
      double best = opt_.pivot_tol * 1e3;
      for (int j = 0; j < cols_; ++j) {
        if (pos_[j] >= 0 || fixed(j)) continue;
        if (std::abs(r[j]) > best) {
          best = std::abs(r[j]);
          enter = j;
        }
      }
      if (enter < 0) continue;
      double v = nonbasic_value(enter);
      at_upper_[bv] = false;
      pivot(i, enter);
      beta_[i] = v;
    }
    recompute_beta();
  }

  Options opt_;
  int n_struct_ = 0;
  int rows_ = 0;
  int cols_ = 0;
  int stride_ = 0;
  int iterations_ = 0;
  std::vector<double> a_, rhs_, beta_, d_;
  std::vector<double> lo_, hi_, cost_;
  std::vector<char> at_upper_;
  std::vector<int> basis_, pos_;
  std::vector<int> row_slack_, row_art_;
  std::vector<double> art_sign_;
  std::vector<Constraint> original_;
};

}  // namespace detail

struct Solution {
  Status status = Status::infeasible;
  std::vector<double> values;
  double objective = 0.0;
  int iterations = 0;
  /// Final tableau, used to warm-start add_constraint_and_resolve.
  std::shared_ptr<const detail::Tableau> warm;
};

namespace detail {

inline double objective_of(const LinearProgram& lp, const std::vector<double>& x) {
  double z = 0.0;
  for (int j = 0; j < lp.num_variables(); ++j) z += lp.cost(j) * x[j];
  return z;
}

inline bool satisfies(const LinearProgram& lp, const std::vector<double>& x, double tol) {
  for (const auto& row : lp.constraints()) {
    double act = LinearProgram::activity(row, x);
    double slack = tol * (1.0 + std::abs(row.rhs));
    if (row.sense != Sense::greater_equal && act > row.rhs + slack) return false;
    if (row.sense != Sense::less_equal && act < row.rhs - slack) return false;
  }
  return true;
}

inline Solution finish(const LinearProgram& lp, std::shared_ptr<Tableau> t, Status status, const Options& opt) {
  Solution sol;
  sol.status = status;
  if (status == Status::optimal) {
    sol.values = t->structural_values();
    if (!satisfies(lp, sol.values, opt.feas_tol)) {
      t->refactor();
      status = t->reoptimize();
      sol.status = status;
      if (status == Status::optimal) sol.values = t->structural_values();
      if (status != Status::optimal || !satisfies(lp, sol.values, opt.feas_tol)) {
        throw LpError("numerical breakdown: solution violates constraints after refactorization");
      }
    }
    sol.objective = objective_of(lp, sol.values);
  }
  sol.iterations = t->iterations();
  sol.warm = std::move(t);
  return sol;
}

}  // namespace detail

/// Solves `lp` from scratch. Deterministic for identical input.
inline Solution solve(const LinearProgram& lp, const Options& opt = {}) {
  lp.validate();
  auto t = std::make_shared<detail::Tableau>(lp, opt);
  Status s = t->solve();
  return detail::finish(lp, std::move(t), s, opt);
}

/// Appends `row sense rhs` to `lp` and re-optimizes from `previous` with the
/// dual simplex. Falls back to a cold solve whenever the warm path cannot
/// finish cleanly; the result matches solve(lp) within tolerance either way.
inline Solution add_constraint_and_resolve(LinearProgram& lp, const Solution& previous, std::vector<Term> row,
                                           Sense sense, double rhs, const Options& opt = {}) {
  lp.add_constraint(row, sense, rhs);
  lp.validate();
  if (previous.status != Status::optimal || !previous.warm) return solve(lp, opt);
  auto t = std::make_shared<detail::Tableau>(*previous.warm);
  std::optional<Status> s;
  try {
    s = t->add_row(lp.constraints().back());
  } catch (const LpError&) {
    s.reset();
  }
  if (!s) return solve(lp, opt);
  try {
    return detail::finish(lp, std::move(t), *s, opt);
  } catch (const LpError&) {
    return solve(lp, opt);
  }
}

}  // namespace mina::lp
