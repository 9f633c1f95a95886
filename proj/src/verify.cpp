#include <cmath>
#include <fmt/format.h>

#include "pmod/mappings.hpp"

namespace pmod {

PsiFamily constant_eta(const SphericalRing& ring) {
  return PsiFamily::constant(1.0 / (ring.r2 - ring.r1), ring.r1, ring.r2);
}

VerificationReport verify_ring_pQ(const MappingSpec& f, const SphericalRing& ring,
                                  double p, const ScalarField& q,
                                  const PsiFamily& eta, const VerifyOptions& opts) {
  if (!(p > 1.0)) throw DomainError("verify_ring_pQ: need p > 1");
  if (ring.dim() != f.n) throw DomainError("verify_ring_pQ: ring and map dimensions differ");
  if (!(ring.r2 <= q.boundary_distance(ring.center)))
    throw DomainError("verify_ring_pQ: ring leaves the domain of Q");

  const PsiIntegral I = psi_integral(eta, ring.r1, ring.r2);
  if (!I.finite || !(I.value >= 1.0 - 1e-9))
    throw DomainError(fmt::format(
        "verify_ring_pQ: eta is not admissible, int_r1^r2 eta = {:.6g} < 1", I.value));

  VerificationReport rep;
  rep.eta_integral = I.value;
  const IntegralResult rhs = ring_integral(q, eta, ring, p);
  rep.rhs = rhs.value;
  rep.quadrature_error = rhs.error;

  const CurveFamily src = sample_ring_family(ring, opts.k_curves, opts.mode, opts.seed);
  const CurveFamily img = image_family(f, src, opts.refine);
  const ModulusResult mod =
      discrete_modulus(img, p, grid_for_family(img, opts.resolution), opts.solver);
  rep.lhs = mod.value;
  rep.certificate = mod.certificate;
  rep.margin = rep.rhs - rep.lhs;
  // The admissible value is within about p * violation of the discrete
  // optimum; quadrature error enters the right-hand side directly.
  rep.tolerance = p * opts.solver.violation_tol * rep.lhs + rep.quadrature_error;

  const std::string witness =
      fmt::format("tested with the single eta '{}'; a satisfied verdict is evidence, "
                  "not proof, since the definition quantifies over all admissible eta",
                  eta.label());
  if (!mod.certificate.converged || !rhs.converged || !std::isfinite(rep.margin)) {
    rep.verdict = Verdict::inconclusive;
    rep.note = mod.certificate.converged ? "quadrature did not converge"
                                         : "modulus solver did not converge";
  } else if (rep.margin >= -rep.tolerance) {
    rep.verdict = Verdict::satisfied;
    rep.note = witness;
  } else {
    rep.verdict = Verdict::violated;
    rep.note = fmt::format("eta '{}' is a witness: lhs exceeds rhs by {:.6g}",
                           eta.label(), -rep.margin);
  }
  return rep;
}

}  // namespace pmod
