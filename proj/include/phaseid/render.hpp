#pragma once

#include <string>

#include "phaseid/clustering.hpp"
#include "phaseid/embedding.hpp"
#include "phaseid/selection.hpp"

namespace phaseid {

/// Scatter of embedded steps coloured by phase, successor edges coloured by
/// the source phase, phase numbers at cluster centroids, and a star at the
/// centroid of all steps.
std::string render_embedding(const Embedding2D& emb, const PhaseAssignment& assign);

/// H_c, normalised C_ext, normalised K and the elbow objective against K,
/// with the chosen K marked.
std::string render_selection_curve(const SelectionCurve& curve, int K_star);

}  // namespace phaseid
