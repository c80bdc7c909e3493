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

#ifndef CLWE_SPARSE_LWE_H_
#define CLWE_SPARSE_LWE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "clwe/distributions.h"
#include "clwe/int_matrix.h"
#include "clwe/numerics.h"
#include "clwe/rng.h"
#include "clwe/serialization.h"

namespace clwe {

// Gadget matrices of the k-sparse reduction. Q is n×(2n+5) with
//   Q = [e₁, X, -eₙ, Y, eₙ, e₁, e₁, e_k, e_k],
// u = Σ_{i≤k} eᵢ, v = uᵀQ_{]n[} (the last n+5 columns), T = Q without its
// first column, and V, W integer witnesses with TV = 0 and WV = 2I.
struct GadgetSet {
  int n = 0;
  int k = 0;
  IntMatrix Q;
  IntMatrix T;
  IntMatrix V;
  IntMatrix W;
  std::vector<std::int64_t> u;
  std::vector<std::int64_t> v;

  IntMatrix q_head() const { return Q.col_range(0, n); }           // Q_{[n]}
  IntMatrix q_tail() const { return Q.col_range(n, 2 * n + 5); }   // Q_{]n[}
};

// Requires 1 < k < n.
GadgetSet build_gadgets(int n, int k);

// Signed permutation with Z = Zᵀ = Z⁻¹ and Zz = u, for z ∈ S_{n,k}. The free
// bijection between off-prefix nonzeros and in-prefix zeros pairs them in
// increasing index order.
IntMatrix build_Z(const std::vector<std::int64_t>& z, int k);

// Throws unless z ∈ {-1,0,1}ⁿ has exactly k nonzeros.
void check_sparse(const std::vector<std::int64_t>& z, int k);

// Exact integer checks of the identities the reduction relies on.
struct GadgetIdentities {
  bool u_selects_e1 = false;  // uᵀQ_{[n]} = e₁ᵀ
  bool v_norms = false;       // ‖v‖₂² = 4k, ‖v‖_∞ = 2
  bool t_gram = false;        // TTᵀ = 4I
  bool v_in_kernel = false;   // TV = 0
  bool w_inverts_v = false;   // WV = 2I

  bool all() const {
    return u_selects_e1 && v_norms && t_gram && v_in_kernel && w_inverts_v;
  }
};

GadgetIdentities check_gadget_identities(const GadgetSet& gadgets);

// Z = Zᵀ, Z² = I and Zz = u for Z = build_Z(z, k).
bool check_Z_identities(const std::vector<std::int64_t>& z, int k);

// Everything φ draws besides its input B.
struct PhiRandomness {
  std::vector<std::int64_t> z;  // S_{n,k}
  std::vector<std::int64_t> s;  // ℤ_q^m
  std::vector<std::int64_t> a;  // ℤ_q^{n-1}
  std::vector<std::int64_t> e;  // D_{ℤ,2σ}^m
  IntMatrix G;                  // D_{ℤ,σ}^{m×(n+5)}
};

PhiRandomness sample_phi_randomness(int n, int k, int m, std::int64_t q,
                                    double sigma, RngStream& rng);

struct PhiOutput {
  IntMatrix X;                  // m×n over ℤ_q
  std::vector<std::int64_t> x;  // ℤ_q^m
};

// φ(B; z, s, a, e, G) = [[s, s·aᵀ + B, G]·QᵀZ, s + e] mod q.
PhiOutput phi(const IntMatrix& B, std::int64_t q, const GadgetSet& gadgets,
              const PhiRandomness& randomness);

// e - Gv over ℤ; equals x - Xz mod q for every row.
std::vector<std::int64_t> phi_noise(const GadgetSet& gadgets,
                                    const PhiRandomness& randomness);
// x - Xz mod q, centered.
std::vector<std::int64_t> phi_witness(const PhiOutput& out,
                                      const std::vector<std::int64_t>& z,
                                      std::int64_t q);

// Matrix-secret LWE: B = SA + E mod q.
struct MatrixLweInstance {
  IntMatrix S;  // m×ℓ
  IntMatrix A;  // ℓ×(n-1)
  IntMatrix E;  // m×(n-1)
  IntMatrix B;  // m×(n-1)
};

MatrixLweInstance sample_matrix_lwe(int m, int ell, int n, std::int64_t q,
                                    double sigma, RngStream& rng);

// Uniform invertible matrix over ℤ_q for prime q, by rejection.
IntMatrix sample_invertible_mod_prime(int dim, std::int64_t q, RngStream& rng);

// The algebra behind φ(D₁) ≈ D₂: φ(B) = [X_s, s] + [X_e, e], and with
// Ŝ = [s, S]W⁻¹, Â = W·H·Q_{[n]}ᵀ·Zᵀ·[I, z], H = [[1, aᵀ], [0, A]],
// Ŝ·Â = [X_s, s].
struct MatrixLweWitness {
  bool decomposition_holds = false;
  bool product_identity_holds = false;
  IntMatrix S_hat;  // m×(ℓ+1)
  IntMatrix A_hat;  // (ℓ+1)×(n+1)
  IntMatrix E_hat;  // [X_e, e], m×(n+1), centered
};

MatrixLweWitness check_matrix_lwe_witness(const MatrixLweInstance& inst,
                                          std::int64_t q, const GadgetSet& gadgets,
                                          const PhiRandomness& randomness,
                                          const IntMatrix& w_mix);

struct SparseReductionParams {
  int n = 6;
  int k = 2;
  int m = 100;
  int ell = 1;
  std::int64_t q = 17;
  double sigma = 10.0;
  double c_slack = kDefaultSlack;

  void validate() const;
  // Noise width of the emitted k-sparse LWE stream: 2σ√(k+1).
  double output_sigma() const;
  // Concrete versions of the asymptotic hypotheses that fail, as text.
  std::vector<std::string> hypothesis_warnings() const;
};

struct SparseReductionResult {
  DiscreteLweBatch samples;
  PhiRandomness randomness;
  // Secret z and digests of the injected randomness.
  Json transcript;
  std::vector<std::string> warnings;
};

// Applies φ to the first m rows of the oracle's B-part (the A-part is never
// needed). Throws if B has fewer than m rows.
SparseReductionResult sparse_reduction_driver(const IntMatrix& B,
                                              const SparseReductionParams& params,
                                              RngStream& rng);

enum class LhlSecretSource { kSparse, kFixed };

struct LhlReport {
  double tv_estimate = 0.0;   // mean over A of TV(As mod q, U(ℤ_q^ℓ))
  double std_error = 0.0;
  double bound = 1.0;         // 2^{-(H∞ - ℓ log₂ q)/2}, capped at 1
  double min_entropy = 0.0;
  int trials = 0;
  bool within_bound = false;  // tv_estimate ≤ bound + 3·std_error
};

// TV between (A, As mod q) and (A, U) for A ∼ ℤ_q^{ℓ×n}: the conditional law
// of As given A is computed exactly (dynamic programming over the support
// size and partial sums) and averaged over `trials` draws of A.
LhlReport lhl_check(int ell, int n, int k, std::int64_t q, int trials,
                    RngStream& rng, LhlSecretSource source = LhlSecretSource::kSparse);

}  // namespace clwe

#endif  // CLWE_SPARSE_LWE_H_
