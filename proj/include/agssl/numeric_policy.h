// Copyright 2026 The Authors.
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

#ifndef AGSSL_NUMERIC_POLICY_H_
#define AGSSL_NUMERIC_POLICY_H_

namespace agssl {

// Every tolerance used by the library, in one place. Functions that need a
// tolerance take a NumericPolicy so tests can tighten or loosen them together.
struct NumericPolicy {
  // Absolute entrywise tolerance for |A(i,j) - A(j,i)|.
  double symmetry_tol = 1e-10;
  // Largest off-diagonal entry still accepted as "non-positive".
  double offdiag_tol = 1e-12;
  // A matrix is PSD when its smallest eigenvalue is at least
  // -psd_rel_tol * (largest eigenvalue). Eigenvalues with magnitude below
  // psd_rel_tol * (largest eigenvalue) count towards the nullity.
  double psd_rel_tol = 1e-8;
  // A Cholesky pivot <= pivot_rel_tol * (max diagonal entry) is singular.
  double pivot_rel_tol = 1e-12;
  // Two scores within tie_rel_tol (relative) are a tie; ties go to the
  // lowest node index.
  double tie_rel_tol = 1e-12;
  // Default tolerance for CheckStieltjes.
  double stieltjes_tol = 1e-9;
};

inline const NumericPolicy& DefaultPolicy() {
  static const NumericPolicy kPolicy;
  return kPolicy;
}

}  // namespace agssl

#endif  // AGSSL_NUMERIC_POLICY_H_
