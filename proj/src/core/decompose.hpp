#pragma once

#include "core/relation.hpp"

#include <vector>

namespace relcalc {

enum class DecompositionKind { Canonical, Componentwise, Orthogonal, Cartesian, AdjointComponentwise, MaximalPart };
const char* kind_name(DecompositionKind k);

struct Decomposition {
  DecompositionKind kind;
  std::vector<Relation> parts;
  double identity_residual = 0.0;
};

// Orthogonal projection onto (mul A**)^perp.
Mat regular_projector(const Relation& a);
Subspace regular_space(const Relation& a);  // (mul A**)^perp

Relation regular_part(const Relation& a);
Relation singular_part(const Relation& a);
Relation operator_part(const Relation& a);
Relation mul_part(const Relation& a);
Relation max_operator_part(const Relation& a);

Decomposition canonical_decompose(const Relation& a);
Decomposition max_part_decompose(const Relation& a);

struct DecomposableResult {
  bool decomposable = false;
  std::optional<Decomposition> certificate;
  std::optional<Vec> violation;  // vector of ran (I-P)A outside mul A
};
DecomposableResult is_decomposable(const Relation& a);

struct OrthogonalDecomposition {
  Decomposition dec;
  Subspace regular_space;  // H_A
  Subspace mul_closure;    // mul A**
};
// Throws Error(OrthogonalRefused) with a witness in dom A not orthogonal to mul A.
OrthogonalDecomposition orthogonal_decompose(const Relation& a);

struct AdjointDecomposition {
  Decomposition dec;
  bool orthogonal = false;
};
AdjointDecomposition adjoint_decompose(const Relation& a);

Relation real_part(const Relation& a);
Relation imag_part(const Relation& a);

struct Cartesian {
  Relation a1, a2;
  double reassembly_residual = 0.0;  // opening(A1 + i A2, A)
  double infinity_residual = 0.0;    // opening(A_inf, Re A + i Im A)
  Decomposition dec;
};
// Throws Error(NotFormallyDomainTight) with witness f in dom A \ dom A*.
Cartesian cartesian_components(const Relation& a);

}  // namespace relcalc
