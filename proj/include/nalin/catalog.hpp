#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "nalin/group.hpp"

namespace nalin {

using Permutation = std::vector<int>;

/// How a catalog group was built. The representation-theory module reads the
/// construction data (permutations, presentation shape, factors) to produce
/// generator images for each irreducible representation.
struct CatalogGroup {
  enum class Kind { Cyclic, Symmetric, Alternating, Dihedral4, Quaternion, Product };

  Kind kind = Kind::Cyclic;
  int degree = 1;  // n of Z_n, S_n, A_n
  GroupPtr group;
  std::vector<Permutation> perms;  // Symmetric/Alternating: permutation of each element
  std::vector<ElementId> generators;
  std::vector<CatalogGroup> factors;  // Product: exactly two
};

CatalogGroup build_catalog_group(std::string_view name);

/// Names accepted by load_group for single (non-product) groups.
std::vector<std::string> catalog_base_names();

}  // namespace nalin
