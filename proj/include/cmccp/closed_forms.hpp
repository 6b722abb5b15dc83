#pragma once

#include <Eigen/Core>

#include "cmccp/rational.hpp"

namespace cmccp {

// Single-player (P = 1) formulas. The state is the fill level 0..M-1 of the
// only collection, so row/column j of T is "j labels collected".

using RationalMatrix = Eigen::Matrix<Rational, Eigen::Dynamic, Eigen::Dynamic>;

/// T_{j,k} = C(M-k, j-k) C(k, L-j+k) / C(M,L); zero when j - k > L or j < k.
Probability single_player_entry(long row, long col, long labels, long lot);

/// Full (M x M) single-player matrix built from single_player_entry.
RationalMatrix single_player_matrix(long labels, long lot);

/// E_{j,k} = C(M-k, M-j) (-1)^{M-j}, lower triangular, and its own inverse.
struct InvolutionMatrix {
    long labels;
    RationalMatrix entries;  // integral entries
};

InvolutionMatrix involution(long labels);

/// Diagonal of the eigenvalue matrix, Lambda_{j,j} = C(j,L) / C(M,L).
RationalMatrix single_player_eigenvalues(long labels, long lot);

/// Expected bursts for one player, evaluated as an exact alternating sum.
Rational bgoal_single_closed_exact(long labels, long lot);
double bgoal_single_closed(long labels, long lot);

/// Expected visits to fill level j, evaluated as an exact alternating sum.
Rational tau_single_exact(long level, long labels, long lot);
double tau_single(long level, long labels, long lot);

}  // namespace cmccp
