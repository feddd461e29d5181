// physics.hpp -- complex-to-real lifting, A-form/G-form conversion, and the
// zero-contrast / Schur system reductions.
#ifndef WAVEBOUND_PHYSICS_HPP
#define WAVEBOUND_PHYSICS_HPP

#include <Eigen/Dense>
#include <utility>
#include <vector>

namespace wavebound::physics {

/// Physics in operator form: A z + diag(theta) z = b with theta in [-1, 1]^m.
struct AFormSystem {
  Eigen::MatrixXd A;
  Eigen::VectorXd b;

  int size() const { return static_cast<int>(b.size()); }
};

/// Physics in Green's (integral-equation) form: z + G diag(theta') z = b'
/// with theta' in [0, 1]. Variables are classified as designable (free),
/// fixed-contrast, or zero-contrast (the implicit complement).
///
/// The affine map z_full = recon_offset - recon_matrix * w reconstructs the
/// field of the ORIGINAL (unreduced) system from the current displacement
/// variables w = diag(theta') z; reductions update it.
struct GFormSystem {
  Eigen::MatrixXd G;         // current system, n_r x n_r
  Eigen::VectorXd b_prime;   // current right-hand side
  std::vector<int> free_indices;                      // ascending current positions
  std::vector<std::pair<int, double>> fixed_contrast; // (current position, theta') ascending

  Eigen::MatrixXd recon_matrix;  // full_n x n_r
  Eigen::VectorXd recon_offset;  // full_n

  int size() const { return static_cast<int>(b_prime.size()); }
  int full_size() const { return static_cast<int>(recon_offset.size()); }
  std::vector<int> zero_indices() const;
  void validate() const;
};

/// Displacement field w = diag(theta') z over the system's current indices.
struct DisplacementField {
  Eigen::VectorXd w;
};

/// Builds a G-form system with identity reconstruction (z = b' - G w).
GFormSystem make_gform(Eigen::MatrixXd G, Eigen::VectorXd b_prime,
                       std::vector<int> free_indices,
                       std::vector<std::pair<int, double>> fixed_contrast = {});

/// Real block lift of a complex matrix: [[Re, -Im], [Im, Re]].
Eigen::MatrixXd lift_matrix(const Eigen::MatrixXcd& M);
/// Real stack of a complex vector: (Re, Im).
Eigen::VectorXd lift_vector(const Eigen::VectorXcd& v);

/// Result of lifting a complex A-form system to a real one of twice the
/// dimension. Physical (real-permittivity) designs satisfy
/// theta[i] == theta[i + pair_offset]; dropping that tie is a relaxation.
struct LiftedSystem {
  AFormSystem system;
  int pair_offset;
};

LiftedSystem lift_complex(const Eigen::MatrixXcd& A, const Eigen::VectorXcd& b);

/// Maps A z + diag(theta) z = b, theta in [-1,1], to the exactly equivalent
/// z + G diag(theta') z = b' with G = 2(A-I)^{-1}, b' = (A-I)^{-1} b and
/// theta' = (theta+1)/2. Throws when A - I is numerically singular.
GFormSystem aform_to_gform(const AFormSystem& sys);

/// Restricts the system to its positive-contrast (free or fixed) variables.
/// Zero-contrast field values remain recoverable through the reconstruction
/// map, which needs no matrix inverse.
GFormSystem eliminate_zero_contrast(const GFormSystem& sys);

/// Eliminates the fixed-contrast variables by a Schur complement, leaving a
/// system over the free variables only. Requires no zero-contrast indices.
GFormSystem schur_reduce(const GFormSystem& sys);

/// Solves the current system for given free-variable contrasts (fixed and
/// zero classes take their implied values). Returns the current-index field.
Eigen::VectorXd gform_solve(const GFormSystem& sys, const Eigen::VectorXd& theta_free);

/// Contrast vector over current indices implied by theta_free.
Eigen::VectorXd gform_total_contrast(const GFormSystem& sys, const Eigen::VectorXd& theta_free);

/// z_full = recon_offset - recon_matrix * w.
Eigen::VectorXd reconstruct_full_field(const GFormSystem& sys, const Eigen::VectorXd& w);

}  // namespace wavebound::physics

#endif
