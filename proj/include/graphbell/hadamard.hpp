#pragma once

#include <Eigen/Core>

#include <iosfwd>
#include <string>

namespace graphbell {

/// Square +-1 matrix with pairwise orthogonal rows; order 1, 2 or a multiple of 4.
class HadamardMatrix {
 public:
  explicit HadamardMatrix(Eigen::MatrixXi entries);

  int order() const { return static_cast<int>(entries_.rows()); }
  const Eigen::MatrixXi& entries() const { return entries_; }

  /// Every row has an even number of -1 entries.
  bool rows_even() const;
  /// Negates one column if the common row parity is odd; rows of a Hadamard
  /// matrix of order n = 0 mod 4 share parity, so one flip suffices.
  HadamardMatrix normalized_even() const;

  std::string to_text() const;
  static HadamardMatrix from_text(const std::string& text);

 private:
  Eigen::MatrixXi entries_;
};

/// Order 2^k by recursive doubling [[H, H], [H, -H]].
HadamardMatrix sylvester(int k);

/// Order q + 1 from quadratic residues of GF(q), q = p^e = 3 mod 4, q < 2^15.
HadamardMatrix paley_type1(int p, int e);

/// Paley construction over GF(27), normalized to even rows.
HadamardMatrix paley_h28();

bool is_hadamard(const Eigen::MatrixXi& m);

}  // namespace graphbell
