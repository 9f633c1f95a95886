#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "pmod/report.hpp"

namespace pmod {

struct AcceptanceResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::string detail;
  Json data;
};

/// Criteria 1-9 of the reproduction suite. Criterion 10 (byte-identical
/// reruns) needs two processes and is checked by the caller.
std::vector<AcceptanceResult> run_acceptance(std::uint64_t seed);

AcceptanceResult acceptance_ring_oracle();
AcceptanceResult acceptance_g2_dilatation(std::uint64_t seed);
AcceptanceResult acceptance_g1_dilatation(std::uint64_t seed);
AcceptanceResult acceptance_verifier();
AcceptanceResult acceptance_counterexample();
AcceptanceResult acceptance_modulus_axioms(std::uint64_t seed);
AcceptanceResult acceptance_fubini_holder(std::uint64_t seed);
AcceptanceResult acceptance_criteria_suite();
AcceptanceResult acceptance_bound_algebra();

/// Independent iterated Cartesian quadrature of int_A Q psi^p over a planar
/// ring about the origin.
double cartesian_ring_integral(const ScalarField& q, const PsiFamily& psi,
                               double r1, double r2, double p);

Json acceptance_to_json(const std::vector<AcceptanceResult>& results);

}  // namespace pmod
