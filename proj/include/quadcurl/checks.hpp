#pragma once

// Algebraic checks run by the CLI and the acceptance suite: unisolvence,
// exactness, commuting interpolation and the published lowest-order bases.

#include <random>
#include <string>
#include <vector>

#include "quadcurl/derham.hpp"

namespace quadcurl {

struct Combination {
  Family family;
  int k;
  Shape shape;
};

/// Every supported (family, k, shape) in a fixed order.
std::vector<Combination> supported_combinations();

/// Nondegenerate cell with small rational coordinates, counterclockwise.
CellGeometry random_cell(Shape s, std::mt19937& rng);

struct CheckReport {
  std::string name;
  bool passed = true;
  std::vector<Record> records;
  std::string text;

  void merge(const CheckReport& o);
};

/// Dualization on the reference cell and `random_cells` random cells; the
/// dual basis must reproduce the identity under the DOFs.
CheckReport check_unisolvence(const Combination& c, int random_cells = 10, unsigned seed = 1);

/// Local exactness on the reference cell plus global exactness on n = 1..max_n.
CheckReport check_exactness(const Combination& c, int max_n = 2);
/// Global exactness on a single mesh size.
CheckReport check_exactness_on(const Combination& c, int n);

CheckReport check_commuting(const Combination& c, int n = 2, int samples = 20, unsigned seed = 7);

/// Lowest-order (new, k = 2) basis as printed for the reference cells, in the
/// printed order.
std::vector<VectorField> published_basis(Shape s);

/// Published basis against our dual basis on the reference cell: equal up to
/// a signed permutation. Also records whether our DOFs applied to the published
/// fields give a signed permutation matrix, and whether they lie in our V.
CheckReport check_appendix(Shape s);

}  // namespace quadcurl
