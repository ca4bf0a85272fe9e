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

#include "core/linalg.hpp"

#include <algorithm>
#include <cmath>

#include "core/errors.hpp"

namespace qrlc {

CMat CMat::identity(int dim) {
  CMat m(dim);
  for (int i = 0; i < dim; ++i) m.at(i, i) = 1.0;
  return m;
}

CMat CMat::from_rows(std::initializer_list<std::initializer_list<cplx>> rows) {
  int n = static_cast<int>(rows.size());
  CMat m(n);
  int r = 0;
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n)
      fail(ErrCode::generic, "from_rows: ragged matrix literal");
    int c = 0;
    for (const cplx& v : row) m.at(r, c++) = v;
    ++r;
  }
  return m;
}

CMat CMat::dagger() const {
  CMat m(dim_);
  for (int r = 0; r < dim_; ++r)
    for (int c = 0; c < dim_; ++c) m.at(c, r) = std::conj(at(r, c));
  return m;
}

CMat& CMat::operator*=(cplx s) {
  for (cplx& v : a_) v *= s;
  return *this;
}

CMat& CMat::operator+=(const CMat& o) {
  if (o.dim_ != dim_) fail(ErrCode::generic, "matrix add: dimension mismatch");
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
  return *this;
}

CMat operator*(const CMat& a, const CMat& b) {
  if (a.dim_ != b.dim_) fail(ErrCode::generic, "matrix multiply: dimension mismatch");
  int n = a.dim_;
  CMat c(n);
  for (int i = 0; i < n; ++i) {
    for (int k = 0; k < n; ++k) {
      cplx aik = a.at(i, k);
      if (aik == cplx(0.0, 0.0)) continue;
      const cplx* brow = &b.a_[static_cast<size_t>(k) * n];
      cplx* crow = &c.a_[static_cast<size_t>(i) * n];
      for (int j = 0; j < n; ++j) crow[j] += aik * brow[j];
    }
  }
  return c;
}

double CMat::max_abs_diff(const CMat& o) const {
  if (o.dim_ != dim_) fail(ErrCode::generic, "matrix compare: dimension mismatch");
  double worst = 0.0;
  for (size_t i = 0; i < a_.size(); ++i)
    worst = std::max(worst, std::abs(a_[i] - o.a_[i]));
  return worst;
}

StateVec StateVec::basis(int dim, int index) {
  StateVec s;
  s.amps.assign(dim, cplx(0.0, 0.0));
  s.amps[index] = 1.0;
  return s;
}

double StateVec::norm() const {
  double n2 = 0.0;
  for (const cplx& a : amps) n2 += std::norm(a);
  return std::sqrt(n2);
}

cplx trace(const CMat& u) {
  cplx t = 0.0;
  for (int i = 0; i < u.dim(); ++i) t += u(i, i);
  return t;
}

cplx determinant(const CMat& u) {
  CMat m = u;
  int n = m.dim();
  cplx det = 1.0;
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (std::abs(m(r, col)) > std::abs(m(piv, col))) piv = r;
    if (std::abs(m(piv, col)) < 1e-300) return 0.0;
    if (piv != col) {
      for (int c = 0; c < n; ++c) std::swap(m.at(piv, c), m.at(col, c));
      det = -det;
    }
    det *= m(col, col);
    for (int r = col + 1; r < n; ++r) {
      cplx f = m(r, col) / m(col, col);
      for (int c = col; c < n; ++c) m.at(r, c) -= f * m(col, c);
    }
  }
  return det;
}

CMat tensor(const CMat& a, const CMat& b) {
  int na = a.dim(), nb = b.dim();
  CMat c(na * nb);
  for (int ra = 0; ra < na; ++ra)
    for (int ca = 0; ca < na; ++ca) {
      cplx f = a(ra, ca);
      if (f == cplx(0.0, 0.0)) continue;
      for (int rb = 0; rb < nb; ++rb)
        for (int cb = 0; cb < nb; ++cb)
          c.at(ra * nb + rb, ca * nb + cb) = f * b(rb, cb);
    }
  return c;
}

double fidelity_f1(const CMat& u, const CMat& v) {
  if (u.dim() != v.dim()) fail(ErrCode::generic, "fidelity_f1: dimension mismatch");
  cplx t = 0.0;
  for (int r = 0; r < u.dim(); ++r)
    for (int c = 0; c < u.dim(); ++c) t += std::conj(u(r, c)) * v(r, c);
  double f = std::abs(t) / u.dim();
  return std::clamp(f, 0.0, 1.0);
}

double identity_infidelity(const CMat& u) {
  return 1.0 - std::clamp(std::abs(trace(u)) / u.dim(), 0.0, 1.0);
}

CMat canonical_phase(const CMat& u) {
  for (const cplx& v : u.data()) {
    if (std::abs(v) > kPhaseTol) {
      cplx rot = std::conj(v) / std::abs(v);
      CMat out = u;
      out *= rot;
      return out;
    }
  }
  fail(ErrCode::generic, "canonical_phase: all entries below pivot threshold");
}

bool is_unitary(const CMat& u, double tol) {
  if (u.dim() == 0) return false;
  int n = u.dim();
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      cplx s = 0.0;
      for (int k = 0; k < n; ++k) s += std::conj(u(k, i)) * u(k, j);
      if (i == j) s -= 1.0;
      worst = std::max(worst, std::abs(s));
      if (worst > tol) return false;
    }
  }
  return worst <= tol;
}

CMat make_unitary(CMat m, double tol) {
  if (!is_unitary(m, tol))
    fail(ErrCode::generic, "make_unitary: matrix is not unitary within tolerance");
  return m;
}

StateVec apply(const CMat& u, const StateVec& s) {
  if (u.dim() != s.dim()) fail(ErrCode::generic, "apply: dimension mismatch");
  StateVec out;
  out.amps.assign(s.amps.size(), cplx(0.0, 0.0));
  for (int r = 0; r < u.dim(); ++r) {
    cplx acc = 0.0;
    for (int c = 0; c < u.dim(); ++c) acc += u(r, c) * s.amps[c];
    out.amps[r] = acc;
  }
  return out;
}

}  // namespace qrlc
