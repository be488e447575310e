#pragma once

#include <string>
#include <vector>

#include "dcs/norms.hpp"
#include "dcs/solver.hpp"

namespace dcs {

struct CorpusField {
  std::string name;
  SpaceTimeField field;
};

// Fields the norm reports run over: a constant, low polynomials, sinusoids,
// a sign jump, a bump family of growing height, and the third spatial
// derivative of a default coupled solve sampled onto the same time lattice.
std::vector<CorpusField> standard_corpus(int n_nodes, int n_t, double t_end);

// Smaller field set for the extension-inequality study.
std::vector<CorpusField> extension_corpus(int n_nodes, int n_t, double t_end);

// rho_xxx of a solve with the sinusoid family (eps = 1, tau = 0.5,
// amplitude 0.05), resampled onto n_t uniformly spaced slices.
SpaceTimeField rho_xxx_field(int n_nodes, int n_t, double t_end);

}  // namespace dcs
