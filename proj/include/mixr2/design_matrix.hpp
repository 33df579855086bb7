#pragma once

// Builds the fixed-effects design matrix, group index, and offset vector
// for a bound ModelSpec. Categorical terms are treatment-coded against the
// lexicographically first level; no centering or scaling is applied.

#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "mixr2/dataset.hpp"
#include "mixr2/formula.hpp"

namespace mixr2 {

struct DesignData {
  Eigen::VectorXd y;
  Eigen::MatrixXd X;  // intercept column first
  std::vector<int> group_index;  // values in [0, m)
  Eigen::VectorXd offset;
  int m = 0;
  std::vector<int> group_sizes;
  std::vector<std::string> colnames;
  std::vector<std::string> group_levels;

  int n() const { return static_cast<int>(X.rows()); }
  int p() const { return static_cast<int>(X.cols()); }
};

namespace detail {

// Coded columns of one variable: a numeric column is itself; a k-level
// factor becomes k-1 indicators against the first level.
struct CodedVariable {
  std::vector<Eigen::VectorXd> cols;
  std::vector<std::string> labels;
};

inline CodedVariable code_variable(const Dataset& ds, const std::string& name) {
  const Column& col = ds.at(name);
  CodedVariable cv;
  const auto n = static_cast<Eigen::Index>(ds.n_rows);
  if (!col.is_categorical) {
    Eigen::VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v[i] = col.values[i];
    cv.cols.push_back(std::move(v));
    cv.labels.push_back(name);
    return cv;
  }
  const int k = static_cast<int>(col.levels.size());
  for (int lvl = 1; lvl < k; ++lvl) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      if (col.codes[i] == lvl) v[i] = 1.0;
    }
    cv.cols.push_back(std::move(v));
    cv.labels.push_back(name + "=" + col.levels[lvl]);
  }
  return cv;
}

inline std::vector<std::string> group_levels_of(const Column& col) {
  if (col.is_categorical) return col.levels;
  // Numeric grouping columns are coerced to categorical levels.
  std::vector<std::string> levels;
  for (double v : col.values) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    levels.emplace_back(buf);
  }
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  return levels;
}

}  // namespace detail

inline DesignData build_design(const Dataset& ds, const ModelSpec& spec) {
  if (ds.n_rows == 0) throw std::invalid_argument("dataset has no rows");
  const auto n = static_cast<Eigen::Index>(ds.n_rows);
  DesignData dd;

  // Response.
  const Column& ycol = ds.at(spec.response);
  if (ycol.is_categorical) {
    throw std::invalid_argument("response column '" + spec.response +
                                "' must be numeric");
  }
  dd.y.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) dd.y[i] = ycol.values[i];

  // Fixed-effect columns, intercept first.
  std::vector<Eigen::VectorXd> cols;
  std::vector<std::string> labels;
  std::vector<std::string> term_of_col;
  cols.push_back(Eigen::VectorXd::Ones(n));
  labels.emplace_back("(Intercept)");
  term_of_col.emplace_back("(Intercept)");

  for (const Term& t : spec.fixed_terms) {
    switch (t.kind) {
      case TermKind::main: {
        auto cv = detail::code_variable(ds, t.a);
        for (size_t j = 0; j < cv.cols.size(); ++j) {
          cols.push_back(std::move(cv.cols[j]));
          labels.push_back(cv.labels[j]);
          term_of_col.push_back(t.label());
        }
        break;
      }
      case TermKind::square: {
        const Column& c = ds.at(t.a);
        if (c.is_categorical) {
          throw std::invalid_argument("cannot square categorical column '" +
                                      t.a + "'");
        }
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) {
          v[i] = c.values[i] * c.values[i];
        }
        cols.push_back(std::move(v));
        labels.push_back(t.label());
        term_of_col.push_back(t.label());
        break;
      }
      case TermKind::interaction: {
        auto ca = detail::code_variable(ds, t.a);
        auto cb = detail::code_variable(ds, t.b);
        for (size_t ja = 0; ja < ca.cols.size(); ++ja) {
          for (size_t jb = 0; jb < cb.cols.size(); ++jb) {
            cols.push_back(ca.cols[ja].cwiseProduct(cb.cols[jb]));
            labels.push_back(ca.labels[ja] + ":" + cb.labels[jb]);
            term_of_col.push_back(t.label());
          }
        }
        break;
      }
    }
  }

  const auto p = static_cast<Eigen::Index>(cols.size());
  dd.X.resize(n, p);
  for (Eigen::Index j = 0; j < p; ++j) dd.X.col(j) = cols[j];
  dd.colnames = labels;

  // Full-column-rank check via pivoted QR.
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(dd.X);
  if (qr.rank() < p) {
    const auto perm = qr.colsPermutation().indices();
    Eigen::Index worst = -1;
    for (Eigen::Index k = qr.rank(); k < p; ++k) {
      worst = std::max(worst, static_cast<Eigen::Index>(perm[k]));
    }
    throw std::invalid_argument(
        "design matrix is rank deficient; column '" + labels[worst] +
        "' (term '" + term_of_col[worst] + "') is collinear with the others");
  }

  // Grouping factor. A spec without one (benchmark fixed-effects refits)
  // yields m = 0 and an empty group index.
  if (!spec.group.empty()) {
    const Column& gcol = ds.at(spec.group);
    dd.group_levels = detail::group_levels_of(gcol);
    dd.m = static_cast<int>(dd.group_levels.size());
    dd.group_sizes.assign(dd.m, 0);
    dd.group_index.resize(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      int code;
      if (gcol.is_categorical) {
        code = gcol.codes[i];
      } else {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "%g", gcol.values[i]);
        const auto it =
            std::lower_bound(dd.group_levels.begin(), dd.group_levels.end(),
                             std::string(buf));
        code = static_cast<int>(it - dd.group_levels.begin());
      }
      dd.group_index[i] = code;
      ++dd.group_sizes[code];
    }
  }

  // Offset.
  dd.offset = Eigen::VectorXd::Zero(n);
  if (spec.offset_log_column) {
    const Column& ocol = ds.at(*spec.offset_log_column);
    if (ocol.is_categorical) {
      throw std::invalid_argument("offset column '" + *spec.offset_log_column +
                                  "' must be numeric");
    }
    for (Eigen::Index i = 0; i < n; ++i) {
      if (!(ocol.values[i] > 0.0)) {
        throw std::domain_error("offset(log(" + *spec.offset_log_column +
                                ")) requires positive values; row " +
                                std::to_string(i + 1) + " has " +
                                std::to_string(ocol.values[i]));
      }
      dd.offset[i] = std::log(ocol.values[i]);
    }
  }
  return dd;
}

// Same fixed terms with the random intercept dropped; used for the
// fixed-effects-only GLM of Eq.-(10)-style R^2 computations.
inline DesignData build_fixed_design(const Dataset& ds, ModelSpec spec) {
  spec.group.clear();
  return build_design(ds, spec);
}

// Fixed terms plus the former grouping factor treatment-coded as a fixed
// effect; the benchmark refit used for R_V^2 / R_KL^2 comparisons.
inline DesignData build_group_as_fixed_design(const Dataset& ds,
                                              ModelSpec spec) {
  Term g{TermKind::main, spec.group, ""};
  spec.group.clear();
  for (const auto& t : spec.fixed_terms) {
    if (t == g) throw std::invalid_argument("grouping column already a fixed term");
  }
  spec.fixed_terms.push_back(g);

  const Column& gcol = ds.at(g.a);
  if (gcol.is_categorical) return build_design(ds, spec);

  // Numeric grouping columns must enter as factors, not slopes.
  Dataset copy = ds;
  for (auto& c : copy.columns) {
    if (c.name != g.a) continue;
    Column factor;
    factor.name = c.name;
    factor.is_categorical = true;
    factor.levels = detail::group_levels_of(c);
    factor.codes.reserve(c.values.size());
    for (double v : c.values) {
      char buf[32];
      std::snprintf(buf, sizeof(buf), "%g", v);
      const auto it = std::lower_bound(factor.levels.begin(),
                                       factor.levels.end(), std::string(buf));
      factor.codes.push_back(static_cast<int>(it - factor.levels.begin()));
    }
    c = std::move(factor);
  }
  return build_design(copy, spec);
}

}  // namespace mixr2
