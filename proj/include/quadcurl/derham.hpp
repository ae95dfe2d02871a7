#pragma once

// Local and global exactness of Sigma -> V -> W, and the commuting interpolation diagram.

#include <string>
#include <utility>
#include <vector>

#include "quadcurl/elements.hpp"
#include "quadcurl/mesh.hpp"

namespace quadcurl {

using Record = std::pair<std::string, std::string>;

struct ExactnessReport {
  std::string level;  // "local" or "global"
  Family family = Family::New;
  int k = 2;
  Shape shape = Shape::Triangle;
  int n = 0;  // mesh size for global reports
  std::size_t dim_sigma = 0, dim_v = 0, dim_w = 0;
  std::size_t rank_grad = 0, rank_curl = 0;
  bool grad_in_v = false;     // grad Sigma inside V
  bool complex = false;       // curl . grad = 0
  bool curl_onto_w = false;   // rank curl = dim W
  bool kernel_is_grad = false;
  bool conforming = true;     // shared-entity DOF values agreed during assembly
  bool passed = false;
  std::string message;

  [[nodiscard]] std::vector<Record> records() const;
  [[nodiscard]] std::string text() const;
};

ExactnessReport check_local(Family f, int k, const CellGeometry& cell);
ExactnessReport check_global(const Mesh& mesh, Family f, int k);

struct CommutingReport {
  Family family = Family::New;
  int k = 2;
  Shape shape = Shape::Triangle;
  int n = 0;
  int samples = 0;
  int grad_failures = 0;
  int curl_failures = 0;
  bool passed = false;

  [[nodiscard]] std::vector<Record> records() const;
  [[nodiscard]] std::string text() const;
};

/// Random global polynomials p (degree r+2) and fields v (degree k+2) with
/// small integer coefficients; checks grad pi p = Pi grad p and
/// curl Pi v = pi~ curl v cell by cell in exact arithmetic.
CommutingReport check_commuting_global(const Mesh& mesh, Family f, int k, int samples, unsigned seed);

/// Random polynomial of total degree <= d with integer coefficients in [-5, 5].
Polynomial random_polynomial(int d, unsigned seed);

}  // namespace quadcurl
