/*
 * Copyright 2026 The CLWE Reductions Authors.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     https://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "clwe/sparse_lwe.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <fmt/format.h>

#include "clwe/samplers.h"

namespace clwe {

namespace {

void set_col(IntMatrix* m, std::size_t col, std::size_t row, std::int64_t value) {
  (*m)(row, col) = value;
}

}  // namespace

GadgetSet build_gadgets(int n, int k) {
  if (!(k > 1 && k < n)) {
    throw std::invalid_argument(fmt::format("build_gadgets: need 1 < k < n (n={}, k={})", n, k));
  }
  const std::size_t un = n;
  const std::size_t kk = k - 1;  // 0-based index of e_k
  GadgetSet g;
  g.n = n;
  g.k = k;

  // Q = [e₁, X, -eₙ, Y, eₙ, e₁, e₁, e_k, e_k].
  g.Q = IntMatrix(un, 2 * un + 5);
  set_col(&g.Q, 0, 0, 1);
  for (std::size_t j = 0; j + 1 < un; ++j) {
    // X and Y: ∓1 on the diagonal (0 in row k), +1 just below it.
    g.Q(j, 1 + j) = j == kk ? 0 : -1;
    g.Q(j + 1, 1 + j) = 1;
    g.Q(j, un + 1 + j) = j == kk ? 0 : 1;
    g.Q(j + 1, un + 1 + j) = 1;
  }
  set_col(&g.Q, un, un - 1, -1);
  set_col(&g.Q, 2 * un, un - 1, 1);
  set_col(&g.Q, 2 * un + 1, 0, 1);
  set_col(&g.Q, 2 * un + 2, 0, 1);
  set_col(&g.Q, 2 * un + 3, kk, 1);
  set_col(&g.Q, 2 * un + 4, kk, 1);

  g.u.assign(un, 0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(k); ++i) g.u[i] = 1;
  g.v = g.q_tail().transpose().apply(g.u);
  g.T = g.Q.col_range(1, 2 * un + 5);

  // V: (2n+4)×(n+4). Rows follow T's columns: [X, -eₙ] (n rows),
  // [Y, eₙ] (n rows), e₁, e₁, e_k, e_k.
  const std::size_t rows = 2 * un + 4;
  g.V = IntMatrix(rows, un + 4);
  for (std::size_t j = 0; j < un; ++j) {
    g.V(j, j) = 1;
    if (j + 1 < un) g.V(j + 1, j) = 1;
    g.V(un + j, j) = 1;
    if (j + 1 < un) g.V(un + j + 1, j) = -1;
  }
  g.V(2 * un + 2, kk - 1) = -1;
  g.V(2 * un + 3, kk - 1) = -1;
  g.V(0, un) = 1;
  g.V(un, un) = -1;
  g.V(2 * un, un) = 1;
  g.V(2 * un + 1, un) = 1;
  g.V(2 * un, un + 1) = 1;
  g.V(2 * un + 1, un + 1) = -1;
  g.V(kk - 1, un + 2) = -1;
  g.V(un + kk - 1, un + 2) = -1;
  g.V(2 * un + 2, un + 2) = 1;
  g.V(2 * un + 3, un + 2) = 1;
  g.V(2 * un + 2, un + 3) = 1;
  g.V(2 * un + 3, un + 3) = -1;

  // W: (n+4)×(2n+4) with WV = 2I.
  g.W = IntMatrix(un + 4, rows);
  for (std::size_t i = 0; i < un; ++i) {
    if (i == kk - 1) {
      g.W(i, kk) = 1;
      g.W(i, un + kk) = -1;
    } else {
      g.W(i, i) = 1;
      g.W(i, un + i) = 1;
    }
  }
  g.W(un, 2 * un) = 1;
  g.W(un, 2 * un + 1) = 1;
  g.W(un + 1, 2 * un) = 1;
  g.W(un + 1, 2 * un + 1) = -1;
  g.W(un + 2, kk) = 1;
  g.W(un + 2, un + kk) = -1;
  g.W(un + 2, 2 * un + 2) = 1;
  g.W(un + 2, 2 * un + 3) = 1;
  g.W(un + 3, 2 * un + 2) = 1;
  g.W(un + 3, 2 * un + 3) = -1;
  return g;
}

void check_sparse(const std::vector<std::int64_t>& z, int k) {
  int nonzero = 0;
  for (std::int64_t x : z) {
    if (x < -1 || x > 1) throw std::invalid_argument("z has an entry outside {-1,0,1}");
    if (x != 0) ++nonzero;
  }
  if (nonzero != k) {
    throw std::invalid_argument(
        fmt::format("z has {} nonzero entries, expected k = {}", nonzero, k));
  }
}

IntMatrix build_Z(const std::vector<std::int64_t>& z, int k) {
  const std::size_t n = z.size();
  if (k < 1 || static_cast<std::size_t>(k) > n) {
    throw std::invalid_argument("build_Z: need 1 <= k <= n");
  }
  check_sparse(z, k);
  const auto kk = static_cast<std::size_t>(k);
  std::vector<std::size_t> outside_nonzero;  // T_{>k}
  std::vector<std::size_t> inside_zero;      // T*_{≤k}
  IntMatrix Z(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    if (i < kk) {
      if (z[i] != 0) {
        Z(i, i) = z[i];
      } else {
        inside_zero.push_back(i);
      }
    } else if (z[i] != 0) {
      outside_nonzero.push_back(i);
    } else {
      Z(i, i) = 1;
    }
  }
  for (std::size_t r = 0; r < outside_nonzero.size(); ++r) {
    const std::size_t i = outside_nonzero[r];
    const std::size_t f = inside_zero[r];
    Z(f, i) = z[i];
    Z(i, f) = z[i];
  }
  return Z;
}

GadgetIdentities check_gadget_identities(const GadgetSet& g) {
  const auto n = static_cast<std::size_t>(g.n);
  GadgetIdentities out;
  const std::vector<std::int64_t> head = g.q_head().transpose().apply(g.u);
  std::vector<std::int64_t> e1(n, 0);
  e1[0] = 1;
  out.u_selects_e1 = head == e1;
  std::int64_t sq = 0;
  std::int64_t inf = 0;
  for (std::int64_t x : g.v) {
    sq += x * x;
    inf = std::max<std::int64_t>(inf, x < 0 ? -x : x);
  }
  out.v_norms = sq == 4 * static_cast<std::int64_t>(g.k) && inf == 2;
  out.t_gram = g.T * g.T.transpose() == IntMatrix::identity(n).scaled(4);
  out.v_in_kernel = (g.T * g.V).is_zero();
  out.w_inverts_v = g.W * g.V == IntMatrix::identity(g.V.cols()).scaled(2);
  return out;
}

bool check_Z_identities(const std::vector<std::int64_t>& z, int k) {
  const IntMatrix Z = build_Z(z, k);
  std::vector<std::int64_t> u(z.size(), 0);
  for (int i = 0; i < k; ++i) u[i] = 1;
  return Z == Z.transpose() && Z * Z == IntMatrix::identity(z.size()) && Z.apply(z) == u;
}

PhiRandomness sample_phi_randomness(int n, int k, int m, std::int64_t q,
                                    double sigma, RngStream& rng) {
  if (m < 1) throw std::invalid_argument("phi: m must be >= 1");
  if (!(sigma > 0.0)) throw std::invalid_argument("phi: sigma must be > 0");
  PhiRandomness r;
  const SecretVector z = sample_sparse_secret(n, k, rng);
  for (double x : z.entries) r.z.push_back(static_cast<std::int64_t>(x));
  r.s = sample_uniform_modq(q, m, rng);
  r.a = sample_uniform_modq(q, n - 1, rng);
  const DiscreteGaussianSampler wide(2.0 * sigma, 0.0);
  const DiscreteGaussianSampler narrow(sigma, 0.0);
  r.e.resize(m);
  for (auto& x : r.e) x = std::llround(wide.sample(rng));
  r.G = IntMatrix(m, n + 5);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n + 5; ++j) r.G(i, j) = std::llround(narrow.sample(rng));
  }
  return r;
}

namespace {

void check_phi_shapes(const IntMatrix& B, const GadgetSet& g, const PhiRandomness& r) {
  const std::size_t n = g.n;
  const std::size_t m = r.s.size();
  if (B.rows() != m || B.cols() != n - 1) {
    throw std::invalid_argument(fmt::format(
        "phi: B must be {}x{}, got {}x{}", m, n - 1, B.rows(), B.cols()));
  }
  if (r.z.size() != n || r.a.size() != n - 1 || r.e.size() != m ||
      r.G.rows() != m || r.G.cols() != n + 5) {
    throw std::invalid_argument("phi: randomness dimensions do not match (n, m)");
  }
}

// [s, s·aᵀ + B] mod q.
IntMatrix y_block(const IntMatrix& B, std::int64_t q, const std::vector<std::int64_t>& s,
                  const std::vector<std::int64_t>& a) {
  IntMatrix y(B.rows(), B.cols() + 1);
  for (std::size_t i = 0; i < B.rows(); ++i) {
    y(i, 0) = mod_q(s[i], q);
    for (std::size_t j = 0; j < B.cols(); ++j) {
      y(i, j + 1) = mod_q(mod_q(s[i], q) * mod_q(a[j], q) + B(i, j), q);
    }
  }
  return y;
}

}  // namespace

PhiOutput phi(const IntMatrix& B, std::int64_t q, const GadgetSet& gadgets,
              const PhiRandomness& r) {
  if (q < 2 || q > (std::int64_t{1} << 31)) {
    throw std::invalid_argument("phi: need 2 <= q <= 2^31");
  }
  check_phi_shapes(B, gadgets, r);
  const IntMatrix Z = build_Z(r.z, gadgets.k);
  const IntMatrix M = y_block(B, q, r.s, r.a).hcat(r.G);
  PhiOutput out;
  out.X = M.mul_mod(gadgets.Q.transpose() * Z, q);
  out.x.resize(r.s.size());
  for (std::size_t i = 0; i < r.s.size(); ++i) out.x[i] = mod_q(r.s[i] + r.e[i], q);
  return out;
}

std::vector<std::int64_t> phi_noise(const GadgetSet& gadgets, const PhiRandomness& r) {
  const std::vector<std::int64_t> gv = r.G.apply(gadgets.v);
  std::vector<std::int64_t> out(r.e.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = r.e[i] - gv[i];
  return out;
}

std::vector<std::int64_t> phi_witness(const PhiOutput& out,
                                      const std::vector<std::int64_t>& z,
                                      std::int64_t q) {
  const std::vector<std::int64_t> xz = out.X.apply_mod(z, q);
  std::vector<std::int64_t> w(xz.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = centered_mod_q(out.x[i] - xz[i], q);
  return w;
}

MatrixLweInstance sample_matrix_lwe(int m, int ell, int n, std::int64_t q,
                                    double sigma, RngStream& rng) {
  if (m < 1 || ell < 1 || n < 2) throw std::invalid_argument("matrix lwe: bad dimensions");
  MatrixLweInstance inst;
  inst.S = uniform_matrix_mod(m, ell, q, rng);
  inst.A = uniform_matrix_mod(ell, n - 1, q, rng);
  const DiscreteGaussianSampler noise(sigma, 0.0);
  inst.E = IntMatrix(m, n - 1);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n - 1; ++j) inst.E(i, j) = std::llround(noise.sample(rng));
  }
  inst.B = (inst.S.mul_mod(inst.A, q) + inst.E).mod(q);
  return inst;
}

IntMatrix sample_invertible_mod_prime(int dim, std::int64_t q, RngStream& rng) {
  if (!is_prime(q)) {
    throw std::invalid_argument("sample_invertible_mod_prime: q must be prime");
  }
  for (;;) {
    IntMatrix w = uniform_matrix_mod(dim, dim, q, rng);
    if (inverse_mod_prime(w, q).has_value()) return w;
  }
}

MatrixLweWitness check_matrix_lwe_witness(const MatrixLweInstance& inst,
                                          std::int64_t q, const GadgetSet& g,
                                          const PhiRandomness& r,
                                          const IntMatrix& w_mix) {
  const std::size_t n = g.n;
  const std::size_t m = r.s.size();
  const std::size_t ell = inst.S.cols();
  if (w_mix.rows() != ell + 1 || w_mix.cols() != ell + 1) {
    throw std::invalid_argument("matrix witness: W must be (l+1)x(l+1)");
  }
  const auto w_inv = inverse_mod_prime(w_mix, q);
  if (!w_inv) throw std::invalid_argument("matrix witness: W is singular mod q");
  const IntMatrix Z = build_Z(r.z, g.k);
  MatrixLweWitness out;

  // φ(B) = [X_s, s] + [X_e, e].
  const PhiOutput phi_b = phi(inst.B, q, g, r);
  const IntMatrix y_s = y_block(inst.S.mul_mod(inst.A, q), q, r.s, r.a);
  const IntMatrix x_s = y_s.mul_mod(g.q_head().transpose() * Z, q);
  const IntMatrix x_e = inst.E.hcat(r.G).mul_mod(g.T.transpose() * Z, q);
  bool ok = true;
  for (std::size_t i = 0; i < m && ok; ++i) {
    for (std::size_t j = 0; j < n && ok; ++j) {
      ok = phi_b.X(i, j) == mod_q(x_s(i, j) + x_e(i, j), q);
    }
    ok = ok && phi_b.x[i] == mod_q(r.s[i] + r.e[i], q);
  }
  out.decomposition_holds = ok;

  // Ŝ = [s, S]W⁻¹ and Â = W·H·Q_{[n]}ᵀ·Zᵀ·[I, z].
  const IntMatrix s_full = IntMatrix::column(r.s).hcat(inst.S);
  out.S_hat = s_full.mul_mod(*w_inv, q);
  IntMatrix H(ell + 1, n);
  H(0, 0) = 1;
  for (std::size_t j = 0; j + 1 < n; ++j) H(0, j + 1) = mod_q(r.a[j], q);
  for (std::size_t i = 0; i < ell; ++i) {
    for (std::size_t j = 0; j + 1 < n; ++j) H(i + 1, j + 1) = inst.A(i, j);
  }
  const IntMatrix lift = IntMatrix::identity(n).hcat(IntMatrix::column(r.z));
  out.A_hat = w_mix.mul_mod(H, q)
                  .mul_mod(g.q_head().transpose(), q)
                  .mul_mod(Z.transpose(), q)
                  .mul_mod(lift, q);
  const IntMatrix lhs = out.S_hat.mul_mod(out.A_hat, q);
  const IntMatrix rhs = x_s.hcat(IntMatrix::column(r.s)).mod(q);
  out.product_identity_holds = lhs == rhs;

  out.E_hat = x_e.hcat(IntMatrix::column(r.e));
  for (std::size_t i = 0; i < out.E_hat.rows(); ++i) {
    for (std::size_t j = 0; j < out.E_hat.cols(); ++j) {
      out.E_hat(i, j) = centered_mod_q(out.E_hat(i, j), q);
    }
  }
  return out;
}

void SparseReductionParams::validate() const {
  if (!(k > 1 && k < n)) throw std::invalid_argument("sparse params: need 1 < k < n");
  if (m < 1 || ell < 1) throw std::invalid_argument("sparse params: need m, l >= 1");
  if (q < 2 || q > (std::int64_t{1} << 31)) {
    throw std::invalid_argument("sparse params: need 2 <= q <= 2^31");
  }
  if (!(sigma > 0.0)) throw std::invalid_argument("sparse params: sigma must be > 0");
}

double SparseReductionParams::output_sigma() const {
  return 2.0 * sigma * std::sqrt(k + 1.0);
}

std::vector<std::string> SparseReductionParams::hypothesis_warnings() const {
  std::vector<std::string> out;
  const double entropy = k * std::log2(static_cast<double>(n) / k);
  const double need = (ell + 1) * std::log2(static_cast<double>(q)) + c_slack;
  if (entropy < need) {
    out.push_back(fmt::format(
        "k log2(n/k) >= (l+1) log2(q) + c_slack fails: {:.4g} < {:.4g}", entropy, need));
  }
  const double sigma_need =
      4.0 * std::sqrt(std::log(static_cast<double>(m)) + std::log(static_cast<double>(n)) +
                      c_slack);
  if (sigma < sigma_need) {
    out.push_back(fmt::format(
        "sigma >= 4 sqrt(ln m + ln n + c_slack) fails: {:.4g} < {:.4g}", sigma, sigma_need));
  }
  return out;
}

SparseReductionResult sparse_reduction_driver(const IntMatrix& B,
                                              const SparseReductionParams& params,
                                              RngStream& rng) {
  params.validate();
  if (B.rows() < static_cast<std::size_t>(params.m)) {
    throw std::runtime_error(fmt::format(
        "sparse reduction: oracle exhausted ({} rows available, {} needed)", B.rows(),
        params.m));
  }
  if (B.cols() != static_cast<std::size_t>(params.n - 1)) {
    throw std::invalid_argument("sparse reduction: B must have n-1 columns");
  }
  IntMatrix head(params.m, B.cols());
  for (int i = 0; i < params.m; ++i) {
    for (std::size_t j = 0; j < B.cols(); ++j) head(i, j) = mod_q(B(i, j), params.q);
  }
  const GadgetSet gadgets = build_gadgets(params.n, params.k);
  SparseReductionResult result;
  result.warnings = params.hypothesis_warnings();
  result.randomness =
      sample_phi_randomness(params.n, params.k, params.m, params.q, params.sigma, rng);
  const PhiOutput out = phi(head, params.q, gadgets, result.randomness);

  result.samples.modulus = static_cast<double>(params.q);
  result.samples.dim = params.n;
  result.samples.samples.reserve(params.m);
  for (int i = 0; i < params.m; ++i) {
    Sample s;
    for (std::int64_t x : out.X.row(i)) s.a.push_back(static_cast<double>(x));
    s.b = static_cast<double>(out.x[i]);
    result.samples.samples.push_back(std::move(s));
  }

  std::vector<std::int64_t> g_flat;
  for (std::size_t i = 0; i < result.randomness.G.rows(); ++i) {
    for (std::int64_t x : result.randomness.G.row(i)) g_flat.push_back(x);
  }
  std::vector<double> z_real(result.randomness.z.begin(), result.randomness.z.end());
  result.transcript = Json{
      {"secret", secret_to_json(make_secret(z_real, SecretKind::kSparse))},
      {"z", result.randomness.z},
      {"n", params.n},
      {"k", params.k},
      {"m", params.m},
      {"q", params.q},
      {"sigma", params.sigma},
      {"output_sigma", params.output_sigma()},
      {"digests",
       {{"s", digest_ints(result.randomness.s)},
        {"a", digest_ints(result.randomness.a)},
        {"e", digest_ints(result.randomness.e)},
        {"G", digest_ints(g_flat)}}},
      {"warnings", result.warnings}};
  return result;
}

LhlReport lhl_check(int ell, int n, int k, std::int64_t q, int trials,
                    RngStream& rng, LhlSecretSource source) {
  if (ell < 1 || n < 1 || k < 1 || k > n || q < 2) {
    throw std::invalid_argument("lhl_check: need l >= 1, 1 <= k <= n, q >= 2");
  }
  if (trials < 10) throw std::invalid_argument("lhl_check: need at least 10 trials");
  const double cells_d = std::pow(static_cast<double>(q), ell);
  if (cells_d > static_cast<double>(1 << 22)) {
    throw std::invalid_argument("lhl_check: q^l too large for the exact pmf");
  }
  const auto cells = static_cast<std::size_t>(cells_d);

  LhlReport report;
  report.trials = trials;
  report.min_entropy = source == LhlSecretSource::kSparse ? min_entropy_sparse(n, k) : 0.0;
  report.bound = std::min(
      1.0, std::exp2(-(report.min_entropy - ell * std::log2(static_cast<double>(q))) / 2.0));

  std::vector<std::int64_t> fixed_secret;
  if (source == LhlSecretSource::kFixed) {
    for (double x : sample_sparse_secret(n, k, rng).entries) {
      fixed_secret.push_back(static_cast<std::int64_t>(x));
    }
  }
  // Encodes a residue vector in ℤ_q^ℓ as an integer in [0, q^ℓ).
  auto shift = [&](std::size_t code, const std::vector<std::int64_t>& col, int sign) {
    std::size_t out = 0;
    std::size_t place = 1;
    for (int i = 0; i < ell; ++i) {
      const auto digit = static_cast<std::int64_t>(code % q);
      code /= q;
      out += static_cast<std::size_t>(mod_q(digit + sign * col[i], q)) * place;
      place *= q;
    }
    return out;
  };

  double sum = 0.0;
  double sum_sq = 0.0;
  std::vector<double> pmf(cells);
  for (int t = 0; t < trials; ++t) {
    const IntMatrix A = uniform_matrix_mod(ell, n, q, rng);
    std::fill(pmf.begin(), pmf.end(), 0.0);
    if (source == LhlSecretSource::kFixed) {
      pmf[shift(0, A.apply_mod(fixed_secret, q), 1)] = 1.0;
    } else {
      // dp[c][r]: number of signed partial supports of size c with sum r.
      std::vector<std::vector<double>> dp(k + 1, std::vector<double>(cells, 0.0));
      dp[0][0] = 1.0;
      for (int j = 0; j < n; ++j) {
        const std::vector<std::int64_t> col = A.col(j);
        for (int c = std::min(j, k - 1); c >= 0; --c) {
          for (std::size_t r = 0; r < cells; ++r) {
            const double w = dp[c][r];
            if (w == 0.0) continue;
            dp[c + 1][shift(r, col, 1)] += w;
            dp[c + 1][shift(r, col, -1)] += w;
          }
        }
      }
      double total = 0.0;
      for (double w : dp[k]) total += w;
      for (std::size_t r = 0; r < cells; ++r) pmf[r] = dp[k][r] / total;
    }
    double tv = 0.0;
    for (double p : pmf) tv += std::abs(p - 1.0 / cells_d);
    tv *= 0.5;
    sum += tv;
    sum_sq += tv * tv;
  }
  report.tv_estimate = sum / trials;
  const double var = std::max(0.0, sum_sq / trials - report.tv_estimate * report.tv_estimate);
  report.std_error = std::sqrt(var / trials);
  report.within_bound = report.tv_estimate <= report.bound + 3.0 * report.std_error;
  return report;
}

}  // namespace clwe
