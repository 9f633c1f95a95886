#pragma once

#include <map>
#include <string>
#include <vector>

#include "pmod/mappings.hpp"

namespace pmod {

/// "name" or "name:key=value[,key=value...]".
struct SpecString {
  std::string name;
  std::map<std::string, std::string> params;

  static SpecString parse(const std::string& text);
  double number(const std::string& key) const;
  double number(const std::string& key, double fallback) const;
  int integer(const std::string& key) const;
};

/// Fields, centered at the origin:
///   constant:c=C         Q = C
///   radialpow:alpha=A    Q = |x|^A
///   logrecip             Q = log(1/|x|) on the unit ball
///   logpow:k=K           Q = log(1/|x|)^K on the unit ball
///   coordsq:i=I          Q = x_I^2 (1-based)
///   normsq               Q = |x|^2
///   grid:file=PATH       multilinear samples in the density binary format
ScalarField parse_field(const std::string& text, int n);

/// identity, g1, g2:m=M, exp:m=M, radialpow:alpha=A, compose:A,B,...
MappingSpec parse_map(const std::string& text, int n);

/// Like parse_map, but one numeric parameter may be an integer range
/// "lo..hi", which expands to one map per value.
std::vector<MappingSpec> parse_map_family(const std::string& text, int n);

/// "0" (origin of R^n) or a comma-separated coordinate list of length n.
Vec parse_point(const std::string& text, int n);

/// Comma-separated reals.
std::vector<double> parse_list(const std::string& text);

/// const, loglog, qmean: the admissible eta used by the verifier, normalized
/// so that its integral over (r1, r2) is 1.
PsiFamily make_eta(const std::string& name, const SphericalRing& ring, double p,
                   const ScalarField& q);

}  // namespace pmod
