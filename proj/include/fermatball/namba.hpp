#pragma once

// Abelian covers branched over a weighted divisor arrangement. The cover
// classifying group is the kernel of
//
//     (+)_i Z/e_i  ->  Pic (x) Q/Z,    (a_i) -> sum (a_i / e_i) [D_i]
//
// for a torsion-free Picard lattice in which numerical and linear equivalence
// agree. Subgroups of that group classify intermediate covers, and inclusion
// of subgroups decides factorization of one cover through another.

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "fermatball/algebra.hpp"
#include "fermatball/surface.hpp"

namespace fermatball::namba {

using algebra::FiniteAbelianGroup;
using algebra::Integer;

struct BranchDivisor {
  surface::DivisorClass divisor;  // integral coordinates in the lattice basis
  Integer weight;
  std::string label;
};

struct BranchArrangement {
  surface::IntersectionLattice lattice;
  std::vector<BranchDivisor> branches;

  std::vector<Integer> weights() const;
};

// Line-oriented text format:
//   rank N
//   gram            (followed by N rows of N integers)
//   canonical k1 .. kN
//   branch c1 .. cN weight e [label]
// Blank lines and '#' comments are ignored.
BranchArrangement parse_arrangement(std::string_view text);
BranchArrangement load_arrangement(const std::filesystem::path& path);
std::string format_arrangement(const BranchArrangement& arr);

// Six lines of the complete quadrilateral on P^2, weight 3.
BranchArrangement p2_quadrilateral();
// Ten (-1)-curves of the degree 5 del Pezzo surface, weight 3.
BranchArrangement dp5_ten_curves();

// Returns invariant factors plus generators as residue vectors in branch
// coordinates (coordinate i taken mod e_i).
FiniteAbelianGroup divisor_cover_group(const BranchArrangement& arr);

// Subgroup of an elementary abelian ambient group (Z/p)^r embedded in branch
// coordinates F_p^s, stored as a reduced row echelon basis.
struct SubgroupCensus;
SubgroupCensus subgroup_census(const FiniteAbelianGroup& ambient, const Integer& index);

class CoverGroup {
 public:
  static CoverGroup full(const FiniteAbelianGroup& ambient);
  static CoverGroup generated(const FiniteAbelianGroup& ambient, const std::vector<std::vector<int>>& gens);

  int prime() const { return p_; }
  std::size_t dimension() const { return basis_.size(); }
  Integer order() const;
  const std::vector<std::vector<int>>& basis() const { return basis_; }
  const std::vector<std::vector<int>>& ambient_basis() const { return ambient_; }

  bool contains(const std::vector<int>& v) const;
  bool is_subgroup_of(const CoverGroup& other) const;
  // True iff the projection onto every branch coordinate is nonzero.
  bool surjects_on_each_coordinate() const;

  friend bool operator==(const CoverGroup& x, const CoverGroup& y) {
    return x.p_ == y.p_ && x.ambient_ == y.ambient_ && x.basis_ == y.basis_;
  }
  friend bool operator<(const CoverGroup& x, const CoverGroup& y) { return x.basis_ < y.basis_; }

  std::string str() const;

 private:
  friend SubgroupCensus subgroup_census(const FiniteAbelianGroup&, const Integer&);
  CoverGroup(int p, std::vector<std::vector<int>> ambient, std::vector<std::vector<int>> basis)
      : p_(p), ambient_(std::move(ambient)), basis_(std::move(basis)) {}

  int p_ = 0;
  std::vector<std::vector<int>> ambient_;
  std::vector<std::vector<int>> basis_;
};

struct Factorization {
  bool exists = false;
  Integer degree = 0;  // |g2| / |g1| when it exists
};

// Cover 1 factors through cover 2 iff its group is contained in that of cover 2.
Factorization factorization_exists(const CoverGroup& g1, const CoverGroup& g2);

// The induced map between two covers is etale iff their branch orders agree
// over every branch divisor.
bool etale_check(const std::vector<Integer>& orders1, const std::vector<Integer>& orders2);

struct SubgroupCensus {
  std::size_t count = 0;
  std::size_t surjective_count = 0;  // subgroups surjecting onto every branch coordinate
  std::vector<CoverGroup> representatives;  // sorted by echelon basis
};

SubgroupCensus subgroup_census(const FiniteAbelianGroup& ambient, const Integer& index);

// Reduced row echelon basis of the row span over F_p.
std::vector<std::vector<int>> echelon_basis(std::vector<std::vector<int>> rows, int p);

}  // namespace fermatball::namba
