#pragma once

#include "core/relation.hpp"

#include <cstdint>
#include <random>
#include <string>

namespace relcalc {

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}
  double normal() { return nd_(eng_); }
  double uniform() { return ud_(eng_); }
  int integer(int lo, int hi);  // inclusive
  bool coin(double p = 0.5) { return uniform() < p; }
  cplx cnormal() { return cplx(normal(), normal()); }
  Mat gaussian(int rows, int cols);
  Vec gaussian_vec(int n);
  Mat hermitian(int n);
  Mat unitary(int n);
  // Random subspace of C^m with the given dimension.
  Subspace subspace(int m, int dim);
  // Random subspace of the given dimension inside s.
  Subspace subspace_in(const Subspace& s, int dim);
  std::mt19937_64& engine() { return eng_; }

 private:
  std::mt19937_64 eng_;
  std::normal_distribution<double> nd_;
  std::uniform_real_distribution<double> ud_{0.0, 1.0};
};

enum class Profile {
  Generic,
  Operator,
  Symmetric,
  Selfadjoint,
  Dissipative,
  Accretive,
  Sectorial,
  Nonnegative,
  Singular,
  PurelyMultivalued,
  FormallyDomainTight,
  DomainTight,
};

const char* profile_name(Profile p);
Profile profile_from_name(const std::string& s);

struct GenProfile {
  Profile name = Profile::Generic;
  int n = 3;
  int graph_dim = -1;  // -1: random
  std::uint64_t seed = 0;
  double alpha = 1.0471975511965976;  // sectorial semiangle
  int maximal = -1;  // class profiles: 1 force maximal, 0 force non-maximal, -1 random
};

// Deterministic in the profile; the result passes the profile's predicate.
Relation generate(const GenProfile& p);
bool satisfies_profile(const Relation& a, const GenProfile& p);

}  // namespace relcalc
