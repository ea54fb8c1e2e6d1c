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

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qmarkov/algebra.hpp"
#include "qmarkov/tolerance.hpp"

namespace qmarkov {

enum class Verdict { Pass, Fail, SampledPass };

std::string_view verdict_name(Verdict v);

struct Witness {
    std::string description;
    std::vector<AlgElement> inputs;
};

/// Outcome of one check. Fail verdicts always carry a witness.
struct PropertyReport {
    std::string property;
    Verdict verdict = Verdict::Pass;
    std::optional<Witness> witness;
    double tolerance = 0;
    std::string detail;
    /// Optional scalar summary (e.g. minimum Choi eigenvalue).
    std::optional<double> value;
    std::vector<PropertyReport> parts;

    bool passed() const { return verdict != Verdict::Fail; }

    static PropertyReport pass(std::string property, double tolerance, std::string detail = {});
    static PropertyReport fail(std::string property, double tolerance, Witness witness, std::string detail = {});
};

/// Combine sub-reports; the result fails iff some part fails and is
/// sampled-pass iff some part is.
PropertyReport combine(std::string property, std::vector<PropertyReport> parts);
/// One line: verdict, detail and witness inputs (elements up to 16 coordinates).
std::string describe(const PropertyReport &r);

struct ChannelFlags {
    bool unital = false;
    bool star_preserving = false;
    bool cp = false;
    bool deterministic = false;
};

/// Linear map F from the domain algebra into the codomain algebra, stored as
/// the coord_dim(codomain) x coord_dim(domain) matrix acting on coordinates.
class Channel {
  public:
    Channel(AlgebraShape domain, AlgebraShape codomain, ComplexMatrix matrix);

    const AlgebraShape &domain() const { return domain_; }
    const AlgebraShape &codomain() const { return codomain_; }
    const ComplexMatrix &matrix() const { return matrix_; }

    const std::optional<ChannelFlags> &flags() const { return flags_; }
    /// Copy with the four exact verdicts computed and memoized.
    Channel with_flags(const Tolerance &tol = {}) const;

    AlgElement operator()(const AlgElement &b) const;

  private:
    AlgebraShape domain_;
    AlgebraShape codomain_;
    ComplexMatrix matrix_;
    std::optional<ChannelFlags> flags_;
};

AlgElement apply(const Channel &f, const AlgElement &b);
/// f after g.
Channel compose(const Channel &f, const Channel &g);
Channel tensor(const Channel &f, const Channel &g);
/// Throws Singular when the matrix is not square or its condition number
/// is 1e12 or larger.
Channel invert(const Channel &f);
/// Adjoint for the unweighted pairing <A, B> = sum_x tr(A_x* B_x).
Channel hs_adjoint(const Channel &f);
Channel add(const Channel &f, const Channel &g, Complex scale_g = 1.0);

// Builders.
Channel identity_channel(const AlgebraShape &shape);
/// Blockwise transpose.
Channel transpose_channel(const AlgebraShape &shape);
/// A -> V A V*, from M_{cols(V)} to M_{rows(V)}.
Channel ad(const ComplexMatrix &v);
/// A -> W A W*, blockwise on W's shape.
Channel ad_elem(const AlgElement &w);
/// Multiplication A (x) B -> AB as a map from shape (x) shape to shape.
Channel mult_map(const AlgebraShape &shape);
/// A -> sum_x tr(rho_x A_x) into the one-dimensional algebra.
Channel functional(const AlgElement &rho);
/// Heisenberg-picture Kraus map B -> sum K_i* B K_i. Each K_i is
/// n_dom x n_cod.
Channel kraus_channel(const AlgebraShape &domain, const AlgebraShape &codomain,
                      const std::vector<ComplexMatrix> &kraus_ops);
/// Tabulate a linear function on the matrix units.
Channel from_function(const AlgebraShape &domain, const AlgebraShape &codomain,
                      const std::function<AlgElement(const AlgElement &)> &fn);

/// One Choi matrix per domain block y: sum_ij E_ij (x) F(E_ij), an element
/// of tensor_shape((n_y), codomain).
std::vector<AlgElement> choi_elements(const Channel &f);
/// The same matrices in dense block-diagonal form.
std::vector<ComplexMatrix> choi(const Channel &f);
/// Eigenvalues (descending) of every Choi block, concatenated per domain
/// block. Uses the Hermitian part when the Choi matrix is not Hermitian.
std::vector<double> choi_spectrum(const Channel &f, const Tolerance &tol = {});

PropertyReport is_cp(const Channel &f, const Tolerance &tol = {});
PropertyReport is_unital(const Channel &f, const Tolerance &tol = {});
PropertyReport is_star_preserving(const Channel &f, const Tolerance &tol = {});
/// Unital *-homomorphism, decided on basis pairs.
PropertyReport is_deterministic(const Channel &f, const Tolerance &tol = {});
PropertyReport is_cpu(const Channel &f, const Tolerance &tol = {});

inline constexpr int kDefaultTrials = 64;

PropertyReport is_positive_sampled(const Channel &f, int trials, std::uint64_t seed, const Tolerance &tol = {});
PropertyReport is_schwarz_sampled(const Channel &f, int trials, std::uint64_t seed, const Tolerance &tol = {});

/// Given g: C -> B and f: B -> A with f∘g deterministic, checks
/// f(g(C) B) = f(g(C)) f(B) (part "left") and f(B g(C)) = f(B) f(g(C))
/// (part "right") on basis pairs. The first part records the hypothesis.
PropertyReport s_positivity(const Channel &f, const Channel &g, const Tolerance &tol = {});

/// Causality for f: C -> 1-dim-ish target, g: C -> C, h, k: D -> C.
/// Hypothesis: f(g(A h(B))) = f(g(A k(B))) for all A, B.
/// Conclusion: f(C g(A h(B))) = f(C g(A k(B))) for all A, B, C.
PropertyReport causality(const Channel &f, const Channel &g, const Channel &h, const Channel &k,
                         const Tolerance &tol = {});

}  // namespace qmarkov
