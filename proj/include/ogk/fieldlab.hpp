#pragma once

#include <functional>
#include <string>
#include <vector>

#include "ogk/orlicz.hpp"

namespace ogk {

/// A one-parameter family of group fibers over a sampled unit interval:
/// fixed group template, Haar mass w(u) per fiber (constant on the fiber, so
/// left invariance is automatic), and a section template continuous in u.
/// Sampling [0,1] at N points induces a finite group bundle whose Haar
/// system must pass validate_haar — that induced groupoid is what every
/// experiment actually runs on.
struct ParametrizedFamily {
  std::string name;
  CayleyTable fiber;
  std::function<double(double)> weight;        // u -> fiber mass, > 0
  std::function<cplx(double, int)> section;    // (u, fiber element) -> value
};

/// Uniform grid including both endpoints.
std::vector<double> unit_grid(int n);

/// The finite group bundle over `n` samples, plus its Haar weights.
FiniteGroupoid induced_groupoid(const ParametrizedFamily& fam, int n);
HaarSystem induced_haar(const ParametrizedFamily& fam, const FiniteGroupoid& g, int n);

enum class NormKind { gauge, orlicz };

struct NormProfile {
  std::vector<double> u;
  std::vector<double> norm;
  std::vector<double> adjacent_diff;  // |norm[i+1] - norm[i]|, length n-1
  double modulus = 0.0;               // max adjacent difference
};

NormProfile norm_continuity_profile(const ParametrizedFamily& fam, const YoungFunction& phi,
                                    NormKind which, int grid_n, const Tolerances& tol = {});

struct RefinementReport {
  NormProfile coarse;
  NormProfile fine;
  double ratio = 0.0;  // fine.modulus / coarse.modulus
};

RefinementReport refine_profile(const ParametrizedFamily& fam, const YoungFunction& phi,
                                NormKind which, int grid_n, const Tolerances& tol = {});

/// Deviation between translated fibers at adjacent samples, identified
/// through the common template: gauge norm (at the left sample's Haar) of
/// the coordinate difference, plus the difference of the two norms. The
/// first part sees section variation, the second sees Haar variation; both
/// vanish on constant families and shrink under refinement for Lipschitz
/// ones.
struct StrongContinuityProfile {
  std::vector<double> deviation;  // length n-1
  double modulus = 0.0;
};

StrongContinuityProfile strong_continuity_profile(const ParametrizedFamily& fam,
                                                  const YoungFunction& phi,
                                                  const std::vector<int>& x_path,
                                                  int grid_n, const Tolerances& tol = {});

/// e_n = normalized indicator of U_n per fiber; returns the error sequence
/// sup_u ||e_n * f - f||^0_Phi. The filtration must be nested with the
/// identity in the final (hence every) level; otherwise FiltrationInvalid.
std::vector<double> shrinking_identity_errors(const ParametrizedFamily& fam,
                                              const YoungFunction& phi,
                                              const std::vector<std::vector<int>>& filtration,
                                              int grid_n, const Tolerances& tol = {});

/// Symmetric windows of shrinking radius around 0 in Z_m, ending at {0}.
std::vector<std::vector<int>> cyclic_filtration(int m, int levels);

ParametrizedFamily family_preset(const std::string& name);
std::vector<std::string> family_presets();

}  // namespace ogk
