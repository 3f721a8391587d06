#include "hyparr/arrangement.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "hyparr/error.hpp"
#include "hyparr/matrix.hpp"

namespace hyparr {

// ---- Hyperplane -------------------------------------------------------------

Hyperplane::Hyperplane(std::span<const Scalar> normal, const Scalar& constant) {
  VectorQ row(normal.begin(), normal.end());
  row.push_back(constant);
  canonicalize(primitive_integer(std::span<const Scalar>(row)));
}

Hyperplane::Hyperplane(std::span<const Integer> normal, const Integer& constant) {
  VectorZ row(normal.begin(), normal.end());
  row.push_back(constant);
  canonicalize(primitive_integer(std::span<const Integer>(row)));
}

Hyperplane Hyperplane::of(std::initializer_list<long> normal, long constant) {
  VectorZ n;
  for (long x : normal) n.emplace_back(x);
  return Hyperplane(std::span<const Integer>(n), Integer(constant));
}

void Hyperplane::canonicalize(VectorZ row) {
  constant_ = row.back();
  row.pop_back();
  if (std::all_of(row.begin(), row.end(), [](const Integer& x) { return x == 0; })) {
    throw DomainError("hyperplane with zero normal vector");
  }
  normal_ = std::move(row);
}

int Hyperplane::pivot() const {
  for (std::size_t j = 0; j < normal_.size(); ++j) {
    if (normal_[j] != 0) return static_cast<int>(j);
  }
  return -1;
}

VectorQ Hyperplane::augmented_row() const {
  VectorQ r = to_rational(normal_);
  r.emplace_back(constant_);
  return r;
}

MultiPoly Hyperplane::linear_form() const {
  const VectorQ n = to_rational(normal_);
  return MultiPoly::linear(n);
}

MultiPoly Hyperplane::defining_polynomial() const {
  const VectorQ n = to_rational(normal_);
  return MultiPoly::linear(n, Scalar(-constant_));
}

std::strong_ordering operator<=>(const Hyperplane& a, const Hyperplane& b) {
  if (a.normal_.size() != b.normal_.size()) return a.normal_.size() <=> b.normal_.size();
  for (std::size_t i = 0; i < a.normal_.size(); ++i) {
    const int c = cmp(a.normal_[i], b.normal_[i]);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  }
  const int c = cmp(a.constant_, b.constant_);
  if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Hyperplane::to_string(std::span<const std::string> vars) const {
  const VectorQ n = to_rational(normal_);
  const MultiPoly lhs = MultiPoly::linear(n);
  return lhs.to_string(vars) + " = " + hyparr::to_string(constant_);
}

// ---- Multiplicity / Arrangement ---------------------------------------------

int Multiplicity::weight() const {
  int w = 0;
  for (int v : values) w += v;
  return w;
}

Arrangement::Arrangement(int dimension, std::vector<Hyperplane> hyperplanes)
    : dimension_(dimension), hyperplanes_(std::move(hyperplanes)) {
  std::vector<const Hyperplane*> sorted;
  for (const auto& h : hyperplanes_) {
    if (h.dimension() != dimension_) {
      throw DimensionError("hyperplane of dimension " + std::to_string(h.dimension()) +
                           " in an arrangement of dimension " + std::to_string(dimension_));
    }
    sorted.push_back(&h);
  }
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return *a < *b; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (*sorted[i] == *sorted[i - 1]) {
      throw DomainError("duplicate hyperplane " +
                        sorted[i]->to_string(default_variable_names(dimension_)));
    }
  }
}

bool Arrangement::is_central() const {
  return std::all_of(hyperplanes_.begin(), hyperplanes_.end(), [](const auto& h) { return h.is_linear(); });
}

int Arrangement::rank() const {
  MatrixQ m(0, static_cast<std::size_t>(dimension_));
  for (const auto& h : hyperplanes_) m.append_row(to_rational(h.normal()));
  return static_cast<int>(hyparr::rank(m));
}

std::size_t Arrangement::find(const Hyperplane& h) const {
  auto it = std::find(hyperplanes_.begin(), hyperplanes_.end(), h);
  return static_cast<std::size_t>(it - hyperplanes_.begin());
}

Arrangement Arrangement::without(std::size_t index) const {
  if (index >= hyperplanes_.size()) throw DimensionError("hyperplane index out of range");
  std::vector<Hyperplane> hs = hyperplanes_;
  hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(index));
  return Arrangement(dimension_, std::move(hs));
}

Arrangement Arrangement::subset(std::span<const std::size_t> indices) const {
  std::vector<Hyperplane> hs;
  for (auto i : indices) {
    if (i >= hyperplanes_.size()) throw DimensionError("hyperplane index out of range");
    hs.push_back(hyperplanes_[i]);
  }
  return Arrangement(dimension_, std::move(hs));
}

MultiPoly Arrangement::defining_polynomial(const Multiplicity& m) const {
  if (!is_central()) throw DomainError("Q(A, m) needs a central arrangement");
  if (m.size() != size()) throw DimensionError("multiplicity length does not match arrangement");
  MultiPoly q = MultiPoly::constant(dimension_, 1);
  for (std::size_t i = 0; i < size(); ++i) {
    if (m[i] > 0) q = q * hyperplanes_[i].linear_form().pow(static_cast<unsigned>(m[i]));
  }
  return q;
}

// ---- Restriction ------------------------------------------------------------

RestrictionChart::RestrictionChart(const Hyperplane& h)
    : ambient_dimension(h.dimension()), pivot(h.pivot()), hyperplane(h) {
  const int n = ambient_dimension;
  const Scalar ap(h.normal()[static_cast<std::size_t>(pivot)]);
  int col = 0;
  for (int j = 0; j < n; ++j) {
    if (j == pivot) {
      images.emplace_back(n - 1);  // filled below
      continue;
    }
    images.push_back(MultiPoly::variable(n - 1, col++));
  }
  // x_p = (d - sum_{j != p} a_j x_j) / a_p
  VectorQ coeffs;
  for (int j = 0; j < n; ++j) {
    if (j != pivot) coeffs.push_back(-Scalar(h.normal()[static_cast<std::size_t>(j)]) / ap);
  }
  images[static_cast<std::size_t>(pivot)] = MultiPoly::linear(coeffs, Scalar(h.constant()) / ap);
}

VectorQ RestrictionChart::lift(std::span<const Scalar> chart_point) const {
  VectorQ x;
  x.reserve(static_cast<std::size_t>(ambient_dimension));
  for (const auto& im : images) x.push_back(im.evaluate(chart_point));
  return x;
}

MultiPoly RestrictionChart::pullback(const MultiPoly& f) const { return f.substitute(images); }

Restriction restrict(const Arrangement& a, std::size_t index) {
  if (index >= a.size()) throw DimensionError("restriction index " + std::to_string(index) + " out of range");
  const Hyperplane& h = a[index];
  RestrictionChart chart(h);
  const std::size_t n = static_cast<std::size_t>(a.dimension());
  const std::size_t p = static_cast<std::size_t>(chart.pivot);
  const Scalar ap(h.normal()[p]);
  const Scalar dh(h.constant());
  std::vector<Hyperplane> out;
  std::vector<std::vector<std::size_t>> sources;
  std::map<Hyperplane, std::size_t> seen;
  for (std::size_t k = 0; k < a.size(); ++k) {
    if (k == index) continue;
    const Hyperplane& g = a[k];
    // substitute x_p from the chart into b.x = e
    const Scalar bp(g.normal()[p]);
    VectorQ normal;
    normal.reserve(n - 1);
    bool zero = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (j == p) continue;
      Scalar c = Scalar(g.normal()[j]) - bp * Scalar(h.normal()[j]) / ap;
      if (c != 0) zero = false;
      normal.push_back(std::move(c));
    }
    const Scalar constant = Scalar(g.constant()) - bp * dh / ap;
    if (zero) {
      // parallel to H (empty intersection) or equal to H, which cannot happen for distinct hyperplanes
      continue;
    }
    Hyperplane r(normal, constant);
    auto [it, inserted] = seen.try_emplace(r, out.size());
    if (inserted) {
      out.push_back(r);
      sources.emplace_back();
    }
    sources[it->second].push_back(k);
  }
  return Restriction{Arrangement(a.dimension() - 1, std::move(out)), std::move(chart), std::move(sources)};
}

ZieglerRestriction ziegler(const Arrangement& a, std::size_t index) {
  if (!a.is_central()) throw DomainError("Ziegler multirestriction needs a central arrangement");
  Restriction r = restrict(a, index);
  Multiplicity m;
  for (const auto& s : r.sources) m.values.push_back(static_cast<int>(s.size()));
  return ZieglerRestriction{std::move(r.arrangement), std::move(m), std::move(r.chart)};
}

Arrangement cone(const Arrangement& a) {
  const int n = a.dimension();
  std::vector<Hyperplane> hs;
  VectorZ z(static_cast<std::size_t>(n) + 1, 0);
  z.back() = 1;
  hs.emplace_back(std::span<const Integer>(z), Integer(0));
  for (const auto& h : a.hyperplanes()) {
    VectorZ normal = h.normal();
    normal.push_back(-h.constant());
    hs.emplace_back(std::span<const Integer>(normal), Integer(0));
  }
  return Arrangement(n + 1, std::move(hs));
}

Essentialization essentialize(const Arrangement& a) {
  MatrixQ m(0, static_cast<std::size_t>(a.dimension()));
  for (const auto& h : a.hyperplanes()) m.append_row(to_rational(h.normal()));
  const RationalEchelon re = rational_echelon(m);
  Essentialization e{Arrangement(static_cast<int>(re.rows.size())), {}, re.rows};
  for (auto c : re.pivot_columns) e.kept_coordinates.push_back(static_cast<int>(c));
  std::vector<Hyperplane> hs;
  for (const auto& h : a.hyperplanes()) {
    // In the echelon basis the coordinates of a normal are its pivot-column entries.
    VectorZ c;
    for (auto col : re.pivot_columns) c.push_back(h.normal()[col]);
    hs.emplace_back(std::span<const Integer>(c), h.constant());
  }
  e.arrangement = Arrangement(static_cast<int>(re.rows.size()), std::move(hs));
  return e;
}

}  // namespace hyparr
