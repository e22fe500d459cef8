// Copyright 2026 The qdctl Authors
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

#include "qdc/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>

#include "qdc/errors.hpp"

namespace qdc {
namespace {

double max_abs(std::initializer_list<double> values) {
  double m = 0.0;
  for (double v : values) m = std::max(m, std::abs(v));
  return m;
}

bool nonzero(double x, double scale) { return std::abs(x) > kConditionMargin * scale; }

bool distinct(double a, double b, double scale) { return std::abs(a - b) > kConditionMargin * scale; }

bool distinct(double a, double b) { return distinct(a, b, max_abs({a, b})); }

ConditionReport inapplicable(ConditionId id, std::string why) {
  ConditionReport r;
  r.id = id;
  r.applicable = false;
  r.pass = false;
  r.notes.push_back(std::move(why));
  return r;
}

// Coupling vector of block i in the G_i ordering.
Eigen::VectorXd block_couplings(const CouplingTable& d, int i) {
  if (i == 1) return Eigen::Vector2d(d(1, 1, 1), d(1, 1, 2));
  return Eigen::Vector4d(d(i, 1, 1), d(i, 1, 2), d(i, 2, 1), d(i, 2, 2));
}

}  // namespace

std::string to_string(ConditionId id) {
  switch (id) {
    case ConditionId::lemma1: return "lemma1";
    case ConditionId::theorem1: return "theorem1";
    case ConditionId::theorem2: return "theorem2";
    case ConditionId::elim_no_crossing: return "elim_no_crossing";
    case ConditionId::elim_gap_distinct: return "elim_gap_distinct";
    case ConditionId::elimination: return "elimination";
  }
  return "unknown";
}

nlohmann::json to_json(const ConditionReport& report) {
  nlohmann::json w = nlohmann::json::object();
  for (const auto& [name, value] : report.witnesses) {
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, Eigen::MatrixXd>) {
            nlohmann::json rows = nlohmann::json::array();
            for (Eigen::Index r = 0; r < v.rows(); ++r) {
              nlohmann::json row = nlohmann::json::array();
              for (Eigen::Index c = 0; c < v.cols(); ++c) row.push_back(v(r, c));
              rows.push_back(std::move(row));
            }
            w[name] = std::move(rows);
          } else {
            w[name] = v;
          }
        },
        value);
  }
  return {{"condition_id", to_string(report.id)},
          {"applicable", report.applicable},
          {"pass", report.pass},
          {"witnesses", std::move(w)},
          {"notes", report.notes}};
}

bool has_equal_gaps(const SystemSpec& spec) {
  const auto gaps = energy_gaps(spec);
  for (double mu : gaps) {
    if (distinct(mu, gaps.front())) return false;
  }
  return true;
}

ConditionReport check_lemma1(const SystemSpec& spec) {
  spec.validate();
  if (spec.levels < 3) {
    return inapplicable(ConditionId::lemma1, "coupling determinant condition needs N >= 3");
  }
  const auto& d = spec.dipoles;
  ConditionReport r;
  r.id = ConditionId::lemma1;
  r.pass = true;
  std::vector<double> dets;
  for (int n = 2; n <= spec.levels - 1; ++n) {
    const double a = d(n, 1, 1) * d(n, 2, 2);
    const double b = d(n, 1, 2) * d(n, 2, 1);
    dets.push_back(a - b);
    if (!nonzero(a - b, max_abs({a, b}))) {
      r.pass = false;
      r.notes.push_back("coupling determinant vanishes at level " + std::to_string(n));
    }
  }
  r.witnesses["determinants"] = dets;
  return r;
}

ConditionReport check_theorem1(const SystemSpec& spec) {
  spec.validate();
  if (spec.levels < 3) {
    return inapplicable(ConditionId::theorem1, "N = 2 systems are never completely controllable");
  }
  const auto& d = spec.dipoles;
  const auto gaps = energy_gaps(spec);

  ConditionReport r;
  r.id = ConditionId::theorem1;
  r.witnesses["gaps"] = gaps;

  bool gap_ok = true;
  for (std::size_t n = 1; n < gaps.size(); ++n) {
    if (!distinct(gaps[0], gaps[n])) {
      gap_ok = false;
      r.notes.push_back("mu_1 equals mu_" + std::to_string(n + 1));
    }
  }

  const double d1 = d(1, 1, 1), d2 = d(1, 1, 2);
  const double d2131 = d(2, 1, 1), d2132 = d(2, 1, 2), d2231 = d(2, 2, 1), d2232 = d(2, 2, 2);
  const double p = d1 * d2131 + d2 * d2231;
  const double q = d1 * d2132 + d2 * d2232;
  const double lhs = d1 * (p * d2231 + q * d2232);
  const double rhs = d2 * (p * d2131 + q * d2132);
  const double scale =
      max_abs({lhs, rhs, d1 * p * d2231, d1 * q * d2232, d2 * p * d2131, d2 * q * d2132});
  const bool inequality_ok = nonzero(lhs - rhs, scale);
  if (!inequality_ok) r.notes.push_back("coupling inequality fails: both sides equal");

  const ConditionReport lemma = check_lemma1(spec);
  r.witnesses["p"] = p;
  r.witnesses["q"] = q;
  r.witnesses["lhs"] = lhs;
  r.witnesses["rhs"] = rhs;
  r.witnesses["determinants"] = lemma.witness("determinants");
  if (!lemma.pass) r.notes.push_back("Lemma 1 condition fails");

  r.pass = gap_ok && inequality_ok && lemma.pass;
  return r;
}

EqualGapParameters equal_gap_parameters(const SystemSpec& spec) {
  spec.validate();
  if (spec.levels < 3) throw ContractError("equal-gap parameters need N >= 3");
  if (!has_equal_gaps(spec)) throw ContractError("equal-gap parameters need equally spaced levels");

  const int levels = spec.levels;
  const auto& d = spec.dipoles;
  EqualGapParameters out;
  out.levels = levels;

  // K^2_{ij,ij}: squared couplings leaving (i, j) upward minus those arriving
  // from below. The ground level has no incoming term, the top level no
  // outgoing one.
  out.k2.assign(static_cast<std::size_t>(spec.dimension()), 0.0);
  for (int pos = 0; pos < spec.dimension(); ++pos) {
    const LevelIndex ij = unflatten(pos, levels);
    double k2 = 0.0;
    if (ij.n < levels) {
      for (int a = 1; a <= 2; ++a) k2 += d(ij.n, ij.k, a) * d(ij.n, ij.k, a);
    }
    if (ij.n > 1) {
      for (int g = 1; g <= degeneracy(ij.n - 1); ++g) k2 -= d(ij.n - 1, g, ij.k) * d(ij.n - 1, g, ij.k);
    }
    out.k2[static_cast<std::size_t>(pos)] = k2;
  }

  out.nu = CouplingTable(levels);
  for (int i = 1; i < levels; ++i) {
    for (int j = 1; j <= degeneracy(i); ++j) {
      for (int k = 1; k <= 2; ++k) out.nu(i, j, k) = out.k2_at({i + 1, k}) - out.k2_at({i, j});
    }
  }

  // b_i: intra-level mixing of level i+1 through level i minus that through
  // level i+2 (absent for i = N-1).
  out.b.assign(static_cast<std::size_t>(levels), 0.0);
  for (int i = 1; i < levels; ++i) {
    double b = 0.0;
    for (int j = 1; j <= degeneracy(i); ++j) b += d(i, j, 1) * d(i, j, 2);
    if (i + 2 <= levels) {
      for (int k = 1; k <= 2; ++k) b -= d(i + 1, 1, k) * d(i + 1, 2, k);
    }
    out.b[static_cast<std::size_t>(i)] = b;
  }

  for (int i = 1; i < levels; ++i) {
    const double bi = out.b[static_cast<std::size_t>(i)];
    Eigen::MatrixXd g;
    if (i == 1) {
      g.resize(2, 2);
      g << out.nu(1, 1, 1), -bi,
           -bi, out.nu(1, 1, 2);
    } else {
      const double bp = out.b[static_cast<std::size_t>(i - 1)];
      g.resize(4, 4);
      g << out.nu(i, 1, 1), -bi, bp, 0.0,
           -bi, out.nu(i, 1, 2), 0.0, bp,
           bp, 0.0, out.nu(i, 2, 1), -bi,
           0.0, bp, -bi, out.nu(i, 2, 2);
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(g);
    if (eig.info() != Eigen::Success) throw NumericError("eigen-decomposition of G block failed");
    Eigen::MatrixXd v = eig.eigenvectors();
    for (Eigen::Index col = 0; col < v.cols(); ++col) {
      Eigen::Index arg = 0;
      v.col(col).cwiseAbs().maxCoeff(&arg);
      if (v(arg, col) < 0) v.col(col) = -v.col(col);
    }
    Eigen::MatrixXd u = v.transpose();
    out.c.push_back(u * block_couplings(d, i));
    out.lambdas.push_back(eig.eigenvalues());
    out.u.push_back(std::move(u));
    out.g.push_back(std::move(g));
  }
  return out;
}

ConditionReport check_theorem2(const SystemSpec& spec) {
  spec.validate();
  if (spec.levels < 3) {
    return inapplicable(ConditionId::theorem2, "N = 2 systems are never completely controllable");
  }
  const EqualGapParameters params = equal_gap_parameters(spec);
  const ConditionReport lemma = check_lemma1(spec);

  ConditionReport r;
  r.id = ConditionId::theorem2;

  std::vector<double> all;
  for (const auto& block : params.lambdas) {
    for (Eigen::Index i = 0; i < block.size(); ++i) all.push_back(block(i));
  }
  double lambda_scale = 0.0;
  for (double l : all) lambda_scale = std::max(lambda_scale, std::abs(l));

  const double l11 = params.lambdas[0](0), l12 = params.lambdas[0](1);
  const double c1 = params.c[0](0), c2 = params.c[0](1);
  const double c_scale = max_abs({spec.dipoles(1, 1, 1), spec.dipoles(1, 1, 2)});

  bool first_block = true;
  if (!nonzero(l11, lambda_scale) || !nonzero(l12, lambda_scale)) {
    first_block = false;
    r.notes.push_back("a first-block eigenvalue vanishes");
  }
  if (!distinct(l11, l12, lambda_scale)) {
    first_block = false;
    r.notes.push_back("first-block eigenvalues coincide");
  }
  if (!nonzero(c1, c_scale) || !nonzero(c2, c_scale)) {
    first_block = false;
    r.notes.push_back("a first-block transformed coupling C vanishes");
  }

  std::vector<double> nonzero_lambdas;
  for (double l : all) {
    if (nonzero(l, lambda_scale)) nonzero_lambdas.push_back(l);
  }
  bool vandermonde = true;
  for (std::size_t a = 0; a < nonzero_lambdas.size(); ++a) {
    for (std::size_t b = a + 1; b < nonzero_lambdas.size(); ++b) {
      if (!distinct(nonzero_lambdas[a], nonzero_lambdas[b], lambda_scale)) vandermonde = false;
    }
  }
  if (!vandermonde) r.notes.push_back("nonzero eigenvalues are not pairwise distinct");

  for (std::size_t blk = 1; blk < params.c.size(); ++blk) {
    const double scale = block_couplings(spec.dipoles, static_cast<int>(blk) + 1).cwiseAbs().maxCoeff();
    for (Eigen::Index i = 0; i < params.c[blk].size(); ++i) {
      if (!nonzero(params.c[blk](i), scale)) {
        r.notes.push_back("transformed coupling C in block G_" + std::to_string(blk + 1) +
                          " vanishes (component " + std::to_string(i + 1) + ")");
      }
    }
  }
  if (!lemma.pass) r.notes.push_back("Lemma 1 condition fails");
  if (spec.levels > 3) {
    r.notes.push_back("first-block conditions applied to N > 3 as for N = 3");
  }

  r.witnesses["lambdas"] = all;
  r.witnesses["lambda_11"] = l11;
  r.witnesses["lambda_12"] = l12;
  r.witnesses["C_11_21"] = c1;
  r.witnesses["C_11_22"] = c2;
  r.witnesses["b"] = params.b;
  r.witnesses["G_1"] = params.g[0];
  r.witnesses["determinants"] = lemma.witness("determinants");
  r.pass = lemma.pass && first_block && vandermonde;
  return r;
}

std::vector<double> split_energies(const SystemSpec& spec) {
  spec.validate();
  std::vector<double> out{spec.energies[0]};
  for (int n = 2; n <= spec.levels; ++n) {
    const double e = spec.energies[static_cast<std::size_t>(n - 1)];
    const double gamma = std::abs(spec.intra(n));
    out.push_back(e - gamma);
    out.push_back(e + gamma);
  }
  return out;
}

ConditionReport check_no_crossing(const SystemSpec& spec) {
  const auto split = split_energies(spec);
  ConditionReport r;
  r.id = ConditionId::elim_no_crossing;
  r.pass = true;
  r.witnesses["split_energies"] = split;
  // Lower member of level n+1 must stay above the upper member of level n
  // (the ground level is its own upper member).
  std::vector<std::string> offending;
  for (int n = 1; n < spec.levels; ++n) {
    const double upper = n == 1 ? split[0] : split[static_cast<std::size_t>(2 * n - 2)];
    const double lower_next = split[static_cast<std::size_t>(2 * n - 1)];
    if (!(lower_next - upper > kConditionMargin * max_abs({upper, lower_next}))) {
      r.pass = false;
      const std::string pair = "E_" + std::to_string(n + 1) + ",1 <= E_" + std::to_string(n) +
                               (n == 1 ? "" : ",2");
      offending.push_back(pair);
      r.notes.push_back("level crossing: " + pair);
    }
  }
  std::string joined;
  for (const auto& s : offending) joined += (joined.empty() ? "" : "; ") + s;
  r.witnesses["offending"] = joined;
  return r;
}

ConditionReport check_gap_distinct(const SystemSpec& spec) {
  spec.validate();
  const auto& e = spec.energies;
  ConditionReport r;
  r.id = ConditionId::elim_gap_distinct;
  r.pass = true;

  std::vector<double> gammas;
  for (int n = 2; n <= spec.levels; ++n) gammas.push_back(std::abs(spec.intra(n)));
  const auto gamma = [&](int n) { return n == 1 ? 0.0 : gammas[static_cast<std::size_t>(n - 2)]; };
  const auto energy = [&](int n) { return e[static_cast<std::size_t>(n - 1)]; };

  const double first = (energy(2) - gamma(2)) - energy(1);
  r.witnesses["first_gap"] = first;
  r.witnesses["gamma"] = gammas;
  r.notes.push_back("gap comparisons range over levels n = 2..N");

  std::vector<std::string> offending;
  for (int n = 2; n <= spec.levels; ++n) {
    if (gamma(n) == 0.0) {
      r.pass = false;
      r.notes.push_back("splitting is zero at level " + std::to_string(n));
    }
    if (!distinct(first, 2.0 * gamma(n))) {
      r.pass = false;
      offending.push_back("first gap = 2*Gamma_" + std::to_string(n));
    }
    if (n >= 3) {
      const double gap = (energy(n) - gamma(n)) - (energy(n - 1) + gamma(n - 1));
      if (!distinct(first, gap)) {
        r.pass = false;
        offending.push_back("first gap = (E_" + std::to_string(n) + "-Gamma_" + std::to_string(n) +
                            ")-(E_" + std::to_string(n - 1) + "+Gamma_" + std::to_string(n - 1) + ")");
      }
    }
  }
  bool all_zero = true;
  for (double g : gammas) all_zero = all_zero && g == 0.0;
  if (all_zero) r.notes.push_back("splitting is zero");

  std::string joined;
  for (const auto& s : offending) joined += (joined.empty() ? "" : "; ") + s;
  r.witnesses["offending"] = joined;
  return r;
}

ConditionReport check_elimination(const SystemSpec& spec) {
  const ConditionReport crossing = check_no_crossing(spec);
  const ConditionReport distinctness = check_gap_distinct(spec);
  ConditionReport r;
  r.id = ConditionId::elimination;
  r.pass = crossing.pass && distinctness.pass;
  r.witnesses = crossing.witnesses;
  r.witnesses["offending_crossings"] = crossing.witness("offending");
  r.witnesses["offending_gaps"] = distinctness.witness("offending");
  r.witnesses.erase("offending");
  r.witnesses["first_gap"] = distinctness.witness("first_gap");
  r.witnesses["gamma"] = distinctness.witness("gamma");
  r.witnesses["no_crossing"] = crossing.pass ? 1.0 : 0.0;
  r.witnesses["gap_distinct"] = distinctness.pass ? 1.0 : 0.0;
  r.notes = crossing.notes;
  r.notes.insert(r.notes.end(), distinctness.notes.begin(), distinctness.notes.end());
  return r;
}

}  // namespace qdc
