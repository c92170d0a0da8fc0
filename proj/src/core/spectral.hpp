#pragma once

#include "core/relation.hpp"

#include <cstdint>
#include <vector>

namespace relcalc {

struct Eigenvalue {
  cplx value;
  int multiplicity;  // dim {f : (f, lambda f) in A}
};

struct SpectralSample {
  cplx lambda;
  double c;  // regularity constant
  int defect;
};

struct SpectralReport {
  bool every_point = false;  // pencil rank-deficient everywhere: each lambda is an eigenvalue
  std::vector<Eigenvalue> eigenvalues;
  int mul_dim = 0;
  std::vector<SpectralSample> samples;
};

SpectralReport eigenvalues(const Relation& a);

double gamma_tol(const Relation& a, cplx lambda);
// inf ||f' - lambda f|| / ||f|| over (f, f') in A with f != 0; +inf when dom A = {0}.
double regularity_constant(const Relation& a, cplx lambda);
int defect(const Relation& a, cplx lambda);
bool in_resolvent_set(const Relation& a, cplx lambda);
bool is_regular_point(const Relation& a, cplx lambda);

struct ResolventCheck {
  bool holds;
  double lhs;  // 1 / c(lambda)
  double rhs;  // (1/c(mu)) / (1 - |lambda - mu| / c(mu))
};
// Throws Error(Precondition) unless mu is regular and |lambda - mu| < c(mu).
ResolventCheck resolvent_norm_bound_check(const Relation& a, cplx mu, cplx lambda);

// Deterministic per (seed, index); returns {0} when dom A = {0}.
std::vector<cplx> nrange_sample(const Relation& a, size_t count, std::uint64_t seed);
// Rayleigh value (f', f) / ||f||^2 for graph coordinate z.
cplx rayleigh(const Relation& a, const Vec& z);

struct ConvexWitness {
  ElementPair element;
  cplx value;   // (f', f) with ||f|| = 1
  cplx target;  // u l1 + (1-u) l2
  int iterations;
};
// z1, z2 graph coordinates with ||F z_i|| = 1 and distinct values.
ConvexWitness nrange_convex_witness(const Relation& a, const Vec& z1, const Vec& z2, double u);

std::uint64_t splitmix64(std::uint64_t x);

}  // namespace relcalc
