// Copyright 2025-2026 The qrlc developers
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

#pragma once

#include <complex>
#include <initializer_list>
#include <vector>

namespace qrlc {

using cplx = std::complex<double>;

// Construction-time unitarity tolerance.
inline constexpr double kUnitaryTol = 1e-10;
// Smallest entry modulus accepted as a phase pivot. Safely between floating
// noise (~1e-15) and the smallest nonzero entry any supported gate set
// produces (~1e-2 for pi/128 rotations).
inline constexpr double kPhaseTol = 1e-9;

// Dense square complex matrix, row-major. Everything compiled here is at most
// 8x8, so the representation is a plain flat vector with value semantics and
// no attempt at blocking or sparsity.
class CMat {
 public:
  CMat() = default;
  explicit CMat(int dim) : dim_(dim), a_(static_cast<size_t>(dim) * dim) {}

  static CMat identity(int dim);
  // Row-wise literal, used for gate definitions and test fixtures.
  static CMat from_rows(std::initializer_list<std::initializer_list<cplx>> rows);

  int dim() const { return dim_; }
  bool empty() const { return dim_ == 0; }

  cplx& at(int r, int c) { return a_[static_cast<size_t>(r) * dim_ + c]; }
  const cplx& at(int r, int c) const { return a_[static_cast<size_t>(r) * dim_ + c]; }
  cplx operator()(int r, int c) const { return at(r, c); }

  const std::vector<cplx>& data() const { return a_; }
  std::vector<cplx>& data() { return a_; }

  CMat dagger() const;

  CMat& operator*=(cplx s);
  CMat& operator+=(const CMat& o);
  friend CMat operator*(const CMat& a, const CMat& b);
  friend CMat operator*(cplx s, CMat m) { m *= s; return m; }

  // Max entry-wise deviation from `o`.
  double max_abs_diff(const CMat& o) const;
  bool approx_equal(const CMat& o, double tol) const { return max_abs_diff(o) <= tol; }

 private:
  int dim_ = 0;
  std::vector<cplx> a_;
};

// Normalized state vector over the computational basis. Qubit 1 is the most
// significant bit of the basis index, matching the tensor-product order below.
struct StateVec {
  std::vector<cplx> amps;

  int dim() const { return static_cast<int>(amps.size()); }
  static StateVec basis(int dim, int index);
  double norm() const;
};

cplx trace(const CMat& u);

// Determinant via partially pivoted elimination; fine for the tiny sizes here.
cplx determinant(const CMat& u);

// Kronecker product; the left factor owns the most significant qubit(s).
CMat tensor(const CMat& a, const CMat& b);

// |Tr(u^dag v)| / dim, clamped to [0, 1]. Symmetric and global-phase
// invariant. Throws on dimension mismatch.
double fidelity_f1(const CMat& u, const CMat& v);

// 1 - fidelity against the identity, without materializing it.
double identity_infidelity(const CMat& u);

// Rescale by the phase of the first entry (row-major) whose modulus exceeds
// kPhaseTol, making that entry real and positive. Idempotent. Throws if all
// entries vanish.
CMat canonical_phase(const CMat& u);

// True iff max deviation of u^dag u from the identity is within tol.
bool is_unitary(const CMat& u, double tol);

// Validated construction: returns m unchanged or throws if not unitary.
CMat make_unitary(CMat m, double tol = kUnitaryTol);

// Matrix-vector product. Throws on dimension mismatch.
StateVec apply(const CMat& u, const StateVec& s);

}  // namespace qrlc
