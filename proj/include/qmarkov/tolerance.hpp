// Copyright 2026 The qmarkov Authors
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

#pragma once

namespace qmarkov {

/// One record of numeric thresholds, passed to every check in the library.
///
/// All values are relative: a quantity x is treated as zero when
/// |x| <= value * max(1, scale), where scale is the norm of the operands
/// involved in the comparison.
struct Tolerance {
    double herm = 1e-10;  ///< self-adjointness of inputs to spectral routines
    double psd = 1e-9;    ///< min eigenvalue >= -psd * max(1, |m|)
    double eq = 1e-9;     ///< elementwise equality of matrices and scalars
    double rank = 1e-10;  ///< eigenvalues <= rank * lambda_max count as zero

    bool valid() const { return herm > 0 && psd > 0 && eq > 0 && rank > 0; }
};

}  // namespace qmarkov
