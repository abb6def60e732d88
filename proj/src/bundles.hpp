#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "binform.hpp"
#include "gf.hpp"
#include "linalg.hpp"

namespace flagcount {

// Splitting type (a_1 >= a_2 >= ... >= a_r) of a direct sum of line bundles
// on the projective line; input order is irrelevant, entries are kept sorted
// descending.
class SplittingType {
 public:
  SplittingType() : a_{0} {}  // rank-1 trivial bundle
  explicit SplittingType(std::vector<std::int64_t> summands);

  std::size_t rank() const { return a_.size(); }
  std::int64_t degree() const;
  std::int64_t summand(std::size_t i) const { return a_.at(i); }  // 0-based
  const std::vector<std::int64_t>& summands() const { return a_; }
  std::int64_t min_summand() const { return a_.back(); }
  // Multiplicity of each summand degree.
  std::map<std::int64_t, std::size_t> multiplicities() const;

  SplittingType twisted(std::int64_t t) const;

  std::string to_string() const;           // descending: "2,0"
  std::string to_string_ascending() const; // "(0,2)", the census display order

  auto operator<=>(const SplittingType&) const = default;

 private:
  std::vector<std::int64_t> a_;
};

// All splitting types of the given rank and degree with every summand at
// least min_summand, ordered with the lexicographically largest first
// (e.g. rank 2, degree 2, min 0: (2,0) then (1,1)).
std::vector<SplittingType> splitting_types(std::size_t rank,
                                           std::int64_t degree,
                                           std::int64_t min_summand);

// Dimension of the space of global sections after twisting by t:
// sum_i max(0, a_i + t + 1).
std::int64_t h0(const SplittingType& st, std::int64_t t);

// A vector in the fiber over the basepoint (1,0), in splitting coordinates.
using FiberVector = std::vector<std::uint32_t>;

bool fiber_is_zero(const FiberVector& v);
// Scales so the first nonzero coordinate is 1; errors on the zero vector.
FiberVector normalize_fiber(const Field& f, const FiberVector& v);

// Largest ell such that v is supported on summands of degree >= ell, i.e. the
// minimum summand degree over the support.  Errors on the zero vector.
std::int64_t depth_of(const FiberVector& v, const SplittingType& st);

// All-ones on the coordinates of summand degree ell, zero elsewhere.
// Errors when no summand has degree ell.
FiberVector reference_vector(const SplittingType& st, std::int64_t ell);

// A section of st twisted by `twist`, pinned at the basepoint: component i is
// a form of degree a_i + twist (the null form when that is negative), and the
// value at (1,0) is the canonical representative of a prescribed fiber class.
struct BasedSection {
  SplittingType st;
  std::int64_t twist = 0;
  std::vector<BinForm> comps;

  FiberVector base_value() const;
};

// Enumerates exactly one canonical representative per scalar class of
// sections whose basepoint value is projectively the given p.  The canonical
// representative has basepoint value normalize_fiber(p); components over
// negative-degree summands are null, and if p is nonzero on such a
// coordinate the enumeration is empty.
class BasedSectionEnum {
 public:
  BasedSectionEnum(const Field& f, const SplittingType& st, std::int64_t twist,
                   const FiberVector& p);
  bool next(BasedSection& out);
  std::uint64_t total() const { return total_; }

 private:
  const Field& f_;
  SplittingType st_;
  std::int64_t twist_;
  FiberVector pinned_;
  // (slot, coefficient index) of each free coefficient, slot-major.
  std::vector<std::pair<std::size_t, std::size_t>> free_;
  std::uint64_t index_ = 0, total_ = 1;
};

// True when the component forms have no common zero on the projective line
// over the algebraic closure: the gcd of the nonzero components is constant.
// Errors when every component is zero.
bool is_nowhere_vanishing(const Field& f, const BasedSection& s);

// Number of canonical based sections that vanish nowhere.
std::uint64_t count_np_brute(const Field& f, const SplittingType& st,
                             std::int64_t twist, const FiberVector& p);

// Counts all canonical based sections by the degree of the gcd of their
// components.  Requires every twisted summand a_i + twist >= 0.
std::map<std::int64_t, std::uint64_t> gcd_stratum_census(const Field& f,
                                                         const SplittingType& st,
                                                         std::int64_t twist,
                                                         const FiberVector& p);

// A bundle endomorphism: entry (i,j) is a form of degree a_i - a_j, null when
// that is negative.  Invertibility is equivalent to invertibility of the
// evaluation at the basepoint (the matrix is block-triangular with constant
// diagonal blocks).
struct BundleAut {
  SplittingType st;
  std::vector<BinForm> entries;  // rank x rank, row-major

  const BinForm& entry(std::size_t i, std::size_t j) const;
  FqMatrix base_fiber() const;
  static BundleAut identity_of(const SplittingType& st);
  bool operator==(const BundleAut&) const = default;
};

// Deterministic seeded sample of an invertible bundle endomorphism.
BundleAut random_automorphism(const Field& f, const SplittingType& st,
                              std::uint64_t seed);

// Presentation of the quotient of st twisted by `twist` by the line subbundle
// generated by a nowhere-vanishing based section: target splitting
// (c_1 >= ... >= c_{r-1}) in twisted terms, the (r-1) x r matrix of forms G
// with G * s = 0, and its evaluation at the basepoint.
struct QuotientPresentation {
  SplittingType source;          // untwisted
  std::int64_t twist = 0;
  SplittingType target_twisted;  // the c_j, descending
  std::vector<BinForm> rows;     // (r-1) x r, row-major
  FqMatrix base;                 // rows evaluated at (1,0)

  const BinForm& row_entry(std::size_t j, std::size_t i) const;
};

// Computes the quotient presentation by syzygy dimension counting; checks
// exactness (G s = 0), fiberwise surjectivity (constant gcd of maximal
// minors), and degree bookkeeping.  Requires rank >= 2, every twisted
// summand >= 0, and s nowhere vanishing.
QuotientPresentation quotient_by_section(const Field& f, const BasedSection& s);

// Composition of fiber maps at the basepoint: base(G) * P.
FqMatrix push_fiber(const Field& f, const QuotientPresentation& qp,
                    const FqMatrix& P);

}  // namespace flagcount
