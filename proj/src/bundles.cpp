#include "bundles.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace flagcount {

namespace {

std::uint64_t checked_power(std::uint64_t base, std::int64_t exp) {
  std::uint64_t r = 1;
  for (std::int64_t i = 0; i < exp; ++i) {
    if (r > (std::uint64_t{1} << 62) / base) {
      throw std::overflow_error("enumeration size exceeds 2^62");
    }
    r *= base;
  }
  return r;
}

}  // namespace

// ============================================================================
// SplittingType
// ============================================================================

SplittingType::SplittingType(std::vector<std::int64_t> summands)
    : a_(std::move(summands)) {
  if (a_.empty()) {
    throw std::invalid_argument("a splitting type needs at least one summand");
  }
  std::sort(a_.begin(), a_.end(), std::greater<>());
}

std::int64_t SplittingType::degree() const {
  std::int64_t d = 0;
  for (std::int64_t a : a_) d += a;
  return d;
}

std::map<std::int64_t, std::size_t> SplittingType::multiplicities() const {
  std::map<std::int64_t, std::size_t> m;
  for (std::int64_t a : a_) ++m[a];
  return m;
}

SplittingType SplittingType::twisted(std::int64_t t) const {
  std::vector<std::int64_t> b = a_;
  for (std::int64_t& x : b) x += t;
  return SplittingType(std::move(b));
}

std::string SplittingType::to_string() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < a_.size(); ++i) {
    if (i) os << ',';
    os << a_[i];
  }
  return os.str();
}

std::string SplittingType::to_string_ascending() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = a_.size(); i-- > 0;) {
    os << a_[i];
    if (i) os << ',';
  }
  os << ')';
  return os.str();
}

std::vector<SplittingType> splitting_types(std::size_t rank,
                                           std::int64_t degree,
                                           std::int64_t min_summand) {
  if (rank == 0) throw std::invalid_argument("rank must be positive");
  std::vector<SplittingType> out;
  std::vector<std::int64_t> parts;
  // Descending partitions, largest first part first.
  std::function<void(std::int64_t, std::size_t, std::int64_t)> rec =
      [&](std::int64_t remaining, std::size_t slots, std::int64_t max_part) {
        if (slots == 0) {
          if (remaining == 0) out.push_back(SplittingType(parts));
          return;
        }
        std::int64_t hi =
            std::min<std::int64_t>(max_part,
                                   remaining - min_summand *
                                                   static_cast<std::int64_t>(slots - 1));
        for (std::int64_t v = hi; v >= min_summand; --v) {
          if (v * static_cast<std::int64_t>(slots) < remaining) break;
          parts.push_back(v);
          rec(remaining - v, slots - 1, v);
          parts.pop_back();
        }
      };
  rec(degree, rank, degree - min_summand * static_cast<std::int64_t>(rank - 1));
  return out;
}

std::int64_t h0(const SplittingType& st, std::int64_t t) {
  std::int64_t h = 0;
  for (std::int64_t a : st.summands()) h += std::max<std::int64_t>(0, a + t + 1);
  return h;
}

// ============================================================================
// Fiber vectors
// ============================================================================

bool fiber_is_zero(const FiberVector& v) {
  for (std::uint32_t x : v) {
    if (x != 0) return false;
  }
  return true;
}

FiberVector normalize_fiber(const Field& f, const FiberVector& v) {
  std::size_t lead = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      lead = i;
      break;
    }
  }
  if (lead == v.size()) {
    throw std::invalid_argument("cannot normalize the zero fiber vector");
  }
  std::uint32_t s = f.inv(v[lead]);
  FiberVector w(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) w[i] = f.mul(s, v[i]);
  return w;
}

std::int64_t depth_of(const FiberVector& v, const SplittingType& st) {
  if (v.size() != st.rank()) {
    throw std::invalid_argument("fiber vector length does not match the rank");
  }
  bool found = false;
  std::int64_t d = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] == 0) continue;
    std::int64_t a = st.summand(i);
    if (!found || a < d) d = a;
    found = true;
  }
  if (!found) {
    throw std::invalid_argument("the zero fiber vector has no depth");
  }
  return d;
}

FiberVector reference_vector(const SplittingType& st, std::int64_t ell) {
  FiberVector v(st.rank(), 0);
  bool any = false;
  for (std::size_t i = 0; i < st.rank(); ++i) {
    if (st.summand(i) == ell) {
      v[i] = 1;
      any = true;
    }
  }
  if (!any) {
    throw std::invalid_argument("no summand of the requested degree " +
                                std::to_string(ell));
  }
  return v;
}

// ============================================================================
// Based-section enumeration
// ============================================================================

FiberVector BasedSection::base_value() const {
  FiberVector v(comps.size());
  for (std::size_t i = 0; i < comps.size(); ++i) v[i] = comps[i].at_base();
  return v;
}

BasedSectionEnum::BasedSectionEnum(const Field& f, const SplittingType& st,
                                   std::int64_t twist, const FiberVector& p)
    : f_(f), st_(st), twist_(twist) {
  if (p.size() != st.rank()) {
    throw std::invalid_argument("basepoint value length does not match the rank");
  }
  pinned_ = normalize_fiber(f, p);
  bool empty = false;
  for (std::size_t i = 0; i < st.rank(); ++i) {
    std::int64_t m = st.summand(i) + twist;
    if (m < 0) {
      // A negative-degree summand has only the null form; the section cannot
      // reach a nonzero basepoint value on that coordinate.
      if (pinned_[i] != 0) empty = true;
      continue;
    }
    for (std::int64_t u = 1; u <= m; ++u) {
      free_.emplace_back(i, static_cast<std::size_t>(u));
    }
  }
  total_ = empty ? 0 : checked_power(f.order(), static_cast<std::int64_t>(free_.size()));
}

bool BasedSectionEnum::next(BasedSection& out) {
  if (index_ >= total_) return false;
  out.st = st_;
  out.twist = twist_;
  out.comps.assign(st_.rank(), form_null());
  for (std::size_t i = 0; i < st_.rank(); ++i) {
    std::int64_t m = st_.summand(i) + twist_;
    if (m < 0) continue;  // null component stays
    std::vector<std::uint32_t> c(static_cast<std::size_t>(m) + 1, 0);
    c[0] = pinned_[i];
    out.comps[i] = form_from_coeffs(static_cast<int>(m), std::move(c));
  }
  std::uint64_t rem = index_;
  const std::uint64_t q = f_.order();
  for (const auto& [slot, pos] : free_) {
    out.comps[slot].c[pos] = static_cast<std::uint32_t>(rem % q);
    rem /= q;
  }
  ++index_;
  return true;
}

bool is_nowhere_vanishing(const Field& f, const BasedSection& s) {
  return tuple_gcd_degree(f, s.comps) == 0;
}

std::uint64_t count_np_brute(const Field& f, const SplittingType& st,
                             std::int64_t twist, const FiberVector& p) {
  BasedSectionEnum e(f, st, twist, p);
  BasedSection s;
  std::uint64_t n = 0;
  while (e.next(s)) {
    if (is_nowhere_vanishing(f, s)) ++n;
  }
  return n;
}

std::map<std::int64_t, std::uint64_t> gcd_stratum_census(
    const Field& f, const SplittingType& st, std::int64_t twist,
    const FiberVector& p) {
  for (std::int64_t a : st.summands()) {
    if (a + twist < 0) {
      throw std::invalid_argument(
          "gcd_stratum_census requires every twisted summand degree to be "
          "nonnegative");
    }
  }
  BasedSectionEnum e(f, st, twist, p);
  BasedSection s;
  std::map<std::int64_t, std::uint64_t> census;
  while (e.next(s)) {
    ++census[tuple_gcd_degree(f, s.comps)];
  }
  return census;
}

// ============================================================================
// Bundle automorphisms
// ============================================================================

const BinForm& BundleAut::entry(std::size_t i, std::size_t j) const {
  return entries.at(i * st.rank() + j);
}

FqMatrix BundleAut::base_fiber() const {
  const std::size_t r = st.rank();
  FqMatrix m(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) m.at(i, j) = entry(i, j).at_base();
  }
  return m;
}

BundleAut BundleAut::identity_of(const SplittingType& st) {
  const std::size_t r = st.rank();
  BundleAut a{st, {}};
  a.entries.reserve(r * r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < r; ++j) {
      std::int64_t e = st.summand(i) - st.summand(j);
      if (i == j) {
        a.entries.push_back(form_one());
      } else if (e < 0) {
        a.entries.push_back(form_null());
      } else {
        a.entries.push_back(form_zero(static_cast<int>(e)));
      }
    }
  }
  return a;
}

BundleAut random_automorphism(const Field& f, const SplittingType& st,
                              std::uint64_t seed) {
  const std::size_t r = st.rank();
  std::mt19937_64 rng(seed);
  const std::uint64_t q = f.order();
  for (;;) {
    BundleAut a{st, {}};
    a.entries.reserve(r * r);
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < r; ++j) {
        std::int64_t e = st.summand(i) - st.summand(j);
        if (e < 0) {
          a.entries.push_back(form_null());
          continue;
        }
        std::vector<std::uint32_t> c(static_cast<std::size_t>(e) + 1);
        for (std::uint32_t& x : c) x = static_cast<std::uint32_t>(rng() % q);
        a.entries.push_back(form_from_coeffs(static_cast<int>(e), std::move(c)));
      }
    }
    // The matrix is block-triangular with constant diagonal blocks, so the
    // endomorphism is invertible exactly when its basepoint fiber is.
    if (is_invertible(f, a.base_fiber())) return a;
  }
}

// ============================================================================
// Quotient by a nowhere-vanishing section
// ============================================================================

namespace {

// Column layout of the degree-c syzygy space of s: one block per slot with
// c - m_i >= 0, of width c - m_i + 1.
struct SyzygyLayout {
  std::vector<std::int64_t> m;  // twisted summand degrees
  std::int64_t c;
  std::vector<std::size_t> block_start;  // per slot; npos when absent
  std::size_t width = 0;

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  SyzygyLayout(const std::vector<std::int64_t>& degs, std::int64_t cc)
      : m(degs), c(cc) {
    block_start.assign(m.size(), npos);
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (c - m[i] < 0) continue;
      block_start[i] = width;
      width += static_cast<std::size_t>(c - m[i]) + 1;
    }
  }
};

// Coefficient matrix of (g_1..g_r) -> sum_i g_i s_i in degree c.
FqMatrix syzygy_matrix(const Field& f, const BasedSection& s,
                       const SyzygyLayout& lay) {
  const std::size_t rows = static_cast<std::size_t>(lay.c) + 1;
  FqMatrix a(rows, lay.width);
  for (std::size_t i = 0; i < lay.m.size(); ++i) {
    if (lay.block_start[i] == SyzygyLayout::npos) continue;
    const std::size_t gdeg = static_cast<std::size_t>(lay.c - lay.m[i]);
    for (std::size_t u = 0; u <= gdeg; ++u) {
      const std::size_t col = lay.block_start[i] + u;
      // x1^u * s_i contributes s_i's coefficient w at output row u + w.
      for (std::size_t w = 0; w < s.comps[i].c.size(); ++w) {
        a.at(u + w, col) = f.add(a.at(u + w, col), s.comps[i].c[w]);
      }
    }
  }
  return a;
}

// Incremental row-reduced span with pivot bookkeeping.  reduce() returns the
// residue of v against the current basis; insert() adds a (nonzero) residue.
struct Span {
  const Field& f;
  std::vector<std::vector<std::uint32_t>> basis;
  std::vector<std::size_t> pivot;

  explicit Span(const Field& ff) : f(ff) {}

  std::vector<std::uint32_t> reduce(std::vector<std::uint32_t> v) const {
    for (std::size_t b = 0; b < basis.size(); ++b) {
      std::uint32_t x = v[pivot[b]];
      if (x == 0) continue;
      for (std::size_t j = 0; j < v.size(); ++j) {
        v[j] = f.sub(v[j], f.mul(x, basis[b][j]));
      }
    }
    return v;
  }

  bool insert(std::vector<std::uint32_t> residue) {
    std::size_t p = residue.size();
    for (std::size_t j = 0; j < residue.size(); ++j) {
      if (residue[j] != 0) {
        p = j;
        break;
      }
    }
    if (p == residue.size()) return false;
    std::uint32_t inv = f.inv(residue[p]);
    for (std::uint32_t& x : residue) x = f.mul(inv, x);
    basis.push_back(std::move(residue));
    pivot.push_back(p);
    return true;
  }
};

// Encodes a lower-degree row times the monomial x0^(shift_total-u) x1^u into
// the layout of degree lay.c.
std::vector<std::uint32_t> encode_shifted_row(const std::vector<BinForm>& row,
                                              const SyzygyLayout& lay,
                                              std::size_t u) {
  std::vector<std::uint32_t> v(lay.width, 0);
  for (std::size_t i = 0; i < row.size(); ++i) {
    const BinForm& g = row[i];
    if (g.is_null()) continue;
    if (lay.block_start[i] == SyzygyLayout::npos) {
      throw std::logic_error("row multiple falls outside the syzygy layout");
    }
    for (std::size_t z = 0; z < g.c.size(); ++z) {
      v[lay.block_start[i] + u + z] = g.c[z];
    }
  }
  return v;
}

std::vector<BinForm> decode_row(const std::vector<std::uint32_t>& v,
                                const SyzygyLayout& lay) {
  std::vector<BinForm> row(lay.m.size(), form_null());
  for (std::size_t i = 0; i < lay.m.size(); ++i) {
    if (lay.block_start[i] == SyzygyLayout::npos) continue;
    const std::size_t gdeg = static_cast<std::size_t>(lay.c - lay.m[i]);
    std::vector<std::uint32_t> c(v.begin() + lay.block_start[i],
                                 v.begin() + lay.block_start[i] + gdeg + 1);
    row[i] = form_from_coeffs(static_cast<int>(gdeg), std::move(c));
  }
  return row;
}

// Determinant of an n x n matrix of forms by Laplace expansion along the
// first row; null entries act as zero.
BinForm det_form(const Field& f, const std::vector<BinForm>& a, std::size_t n) {
  if (n == 1) return a[0];
  BinForm acc = form_null();
  for (std::size_t j = 0; j < n; ++j) {
    const BinForm& pivot = a[j];
    if (pivot.is_zero()) continue;
    std::vector<BinForm> minor;
    minor.reserve((n - 1) * (n - 1));
    for (std::size_t i = 1; i < n; ++i) {
      for (std::size_t jj = 0; jj < n; ++jj) {
        if (jj != j) minor.push_back(a[i * n + jj]);
      }
    }
    BinForm sub = det_form(f, minor, n - 1);
    if (sub.is_zero()) continue;
    BinForm term = form_mul(f, pivot, sub);
    if (j % 2 == 1) term = form_scale(f, f.neg(1), term);
    acc = acc.is_null() ? term : form_add(f, acc, term);
  }
  return acc;
}

}  // namespace

const BinForm& QuotientPresentation::row_entry(std::size_t j,
                                               std::size_t i) const {
  return rows.at(j * source.rank() + i);
}

QuotientPresentation quotient_by_section(const Field& f,
                                         const BasedSection& s) {
  const std::size_t r = s.st.rank();
  if (r < 2) {
    throw std::invalid_argument("quotient_by_section requires rank at least 2");
  }
  std::vector<std::int64_t> m(r);
  for (std::size_t i = 0; i < r; ++i) {
    m[i] = s.st.summand(i) + s.twist;
    if (m[i] < 0) {
      throw std::invalid_argument(
          "quotient_by_section requires every twisted summand degree to be "
          "nonnegative");
    }
  }
  if (s.comps.size() != r) {
    throw std::invalid_argument("component count does not match the rank");
  }
  for (std::size_t i = 0; i < r; ++i) {
    if (s.comps[i].deg != static_cast<int>(m[i])) {
      throw std::invalid_argument(
          "component degree does not match the twisted summand degree");
    }
  }
  if (!is_nowhere_vanishing(f, s)) {
    throw std::invalid_argument(
        "quotient_by_section requires a nowhere-vanishing section");
  }

  const std::int64_t total = [&] {
    std::int64_t t = 0;
    for (std::int64_t mi : m) t += mi;
    return t;
  }();

  // Dimension of the degree-c syzygy space for c = 0..total; its second
  // difference is the multiplicity of c among the target summand degrees.
  std::vector<std::int64_t> h(static_cast<std::size_t>(total) + 1, 0);
  for (std::int64_t c = 0; c <= total; ++c) {
    SyzygyLayout lay(m, c);
    if (lay.width == 0) continue;
    FqMatrix a = syzygy_matrix(f, s, lay);
    h[static_cast<std::size_t>(c)] =
        static_cast<std::int64_t>(lay.width) -
        static_cast<std::int64_t>(mat_rank(f, a));
  }
  auto h_at = [&](std::int64_t c) -> std::int64_t {
    return c < 0 ? 0 : h[static_cast<std::size_t>(c)];
  };

  std::vector<std::int64_t> targets;  // ascending
  for (std::int64_t v = 0; v <= total; ++v) {
    std::int64_t mult = h_at(v) - 2 * h_at(v - 1) + h_at(v - 2);
    if (mult < 0) throw std::logic_error("negative target multiplicity");
    for (std::int64_t k = 0; k < mult; ++k) targets.push_back(v);
  }
  if (targets.size() != r - 1) {
    throw std::logic_error("target rank does not match rank - 1");
  }
  {
    std::int64_t sum = 0;
    for (std::int64_t v : targets) sum += v;
    if (sum != total) {
      throw std::logic_error("target degrees do not sum to the source degree");
    }
  }

  // Choose one syzygy per target degree, independent of form-multiples of the
  // already chosen lower-degree rows.
  struct ChosenRow {
    std::int64_t degree;
    std::vector<BinForm> forms;
  };
  std::vector<ChosenRow> chosen;
  std::size_t next_target = 0;
  for (std::int64_t v = 0; v <= total && next_target < targets.size(); ++v) {
    std::size_t mult = 0;
    while (next_target + mult < targets.size() &&
           targets[next_target + mult] == v) {
      ++mult;
    }
    if (mult == 0) continue;
    SyzygyLayout lay(m, v);
    FqMatrix a = syzygy_matrix(f, s, lay);
    std::vector<FiberVector> kernel = kernel_basis(f, a);
    Span span(f);
    for (const ChosenRow& row : chosen) {
      const std::size_t shift = static_cast<std::size_t>(v - row.degree);
      for (std::size_t u = 0; u <= shift; ++u) {
        span.insert(span.reduce(encode_shifted_row(row.forms, lay, u)));
      }
    }
    std::size_t added = 0;
    for (const FiberVector& kv : kernel) {
      if (added == mult) break;
      std::vector<std::uint32_t> residue = span.reduce(kv);
      if (!span.insert(std::move(residue))) continue;
      chosen.push_back({v, decode_row(kv, lay)});
      ++added;
    }
    if (added != mult) {
      throw std::logic_error("could not complete the syzygy complement basis");
    }
    next_target += mult;
  }

  // Emit rows by descending target degree, matching the splitting order.
  std::stable_sort(chosen.begin(), chosen.end(),
                   [](const ChosenRow& x, const ChosenRow& y) {
                     return x.degree > y.degree;
                   });

  QuotientPresentation qp;
  qp.source = s.st;
  qp.twist = s.twist;
  std::vector<std::int64_t> cdegs;
  for (const ChosenRow& row : chosen) cdegs.push_back(row.degree);
  qp.target_twisted = SplittingType(cdegs);
  qp.rows.reserve((r - 1) * r);
  for (const ChosenRow& row : chosen) {
    for (const BinForm& g : row.forms) qp.rows.push_back(g);
  }

  // Exactness: every row pairs to zero with the section.
  for (std::size_t j = 0; j + 1 < r; ++j) {
    BinForm acc = form_null();
    for (std::size_t i = 0; i < r; ++i) {
      const BinForm& g = qp.row_entry(j, i);
      if (g.is_null() || g.is_zero()) continue;
      BinForm term = form_mul(f, g, s.comps[i]);
      acc = acc.is_null() ? term : form_add(f, acc, term);
    }
    if (!acc.is_null() && !acc.is_zero()) {
      throw std::logic_error("presentation row is not a syzygy of the section");
    }
  }

  // Fiberwise surjectivity: the maximal minors have constant gcd.
  {
    std::vector<BinForm> minors;
    for (std::size_t drop = 0; drop < r; ++drop) {
      std::vector<BinForm> sq;
      sq.reserve((r - 1) * (r - 1));
      for (std::size_t j = 0; j + 1 < r; ++j) {
        for (std::size_t i = 0; i < r; ++i) {
          if (i != drop) sq.push_back(qp.row_entry(j, i));
        }
      }
      BinForm d = det_form(f, sq, r - 1);
      if (!d.is_zero()) minors.push_back(d);
    }
    if (minors.empty()) {
      throw std::logic_error("presentation rows are nowhere surjective");
    }
    if (tuple_gcd_degree(f, minors) != 0) {
      throw std::logic_error(
          "presentation rows drop rank at a point (non-constant minor gcd)");
    }
  }

  // Basepoint fiber: full rank, and it kills the section's basepoint value.
  qp.base = FqMatrix(r - 1, r);
  for (std::size_t j = 0; j + 1 < r; ++j) {
    for (std::size_t i = 0; i < r; ++i) {
      qp.base.at(j, i) = qp.row_entry(j, i).at_base();
    }
  }
  if (mat_rank(f, qp.base) != r - 1) {
    throw std::logic_error("basepoint fiber of the presentation drops rank");
  }
  {
    FiberVector image = mat_vec(f, qp.base, s.base_value());
    if (!fiber_is_zero(image)) {
      throw std::logic_error(
          "basepoint fiber does not annihilate the section value");
    }
  }
  return qp;
}

FqMatrix push_fiber(const Field& f, const QuotientPresentation& qp,
                    const FqMatrix& P) {
  if (qp.base.cols != P.rows) {
    throw std::invalid_argument("fiber map shapes do not compose");
  }
  return mat_mul(f, qp.base, P);
}

}  // namespace flagcount
