#pragma once

#include "core/relation.hpp"

namespace relcalc {

struct FormPair {
  Mat cross;  // F^H G: (f', f) = z^H cross z
  Mat gram;   // F^H F: ||f||^2 = z^H gram z
  Mat re_form() const { return (cross + cross.adjoint()) / 2.0; }
  Mat im_form() const { return (cross - cross.adjoint()) / cplx(0.0, 2.0); }
};
FormPair form_pair(const Relation& a);

// Smallest eigenvalue >= -1e-10 * max(||m||, 1) for Hermitian m.
bool is_psd(const Mat& m);
// Eigenvector of the smallest eigenvalue of Hermitian m.
Vec lowest_eigvec(const Mat& m);

bool is_symmetric(const Relation& a);
bool is_selfadjoint(const Relation& a);
bool is_formally_domain_tight(const Relation& a);
bool is_domain_tight(const Relation& a);
bool is_formally_range_tight(const Relation& a);
bool is_range_tight(const Relation& a);
bool is_singular(const Relation& a);
bool is_regular(const Relation& a);

bool is_dissipative(const Relation& a);
bool is_accretive(const Relation& a);
bool is_nonnegative(const Relation& a);
bool is_sectorial(const Relation& a, double alpha);

// Gram gap on dom A x mul A; requires dom A in dom A* (returns nullopt otherwise).
std::optional<Mat> normality_gap(const Relation& a);
bool is_formally_normal(const Relation& a);
bool is_normal(const Relation& a);

enum class ClassKind { Symmetric, Dissipative, Accretive, Nonnegative, Sectorial };
struct OperatorClass {
  ClassKind kind;
  double alpha = 0.0;  // sectorial only
};
const char* class_name(ClassKind k);
bool in_class(const Relation& a, const OperatorClass& c);
// Throws Error(ClassMismatch) if A is not in the class.
bool is_maximal(const Relation& a, const OperatorClass& c);

// B in C^m extends V A (V: m x n isometry); throws NotAnExtension otherwise.
bool is_tight_extension(const Relation& a, const Relation& b, const Mat& v);
bool is_star_tight_extension(const Relation& a, const Relation& b, const Mat& v);

// Orthonormal basis of (mul A)^perp and the matrix of A_op on it.
struct Compression {
  Mat basis;
  Mat op;
};
Compression compressed_operator_part(const Relation& a);

}  // namespace relcalc
