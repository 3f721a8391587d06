#include "hyparr/vector_field.hpp"

#include "hyparr/error.hpp"

namespace hyparr {

VectorField::VectorField(std::vector<MultiPoly> components) : components_(std::move(components)) {
  const int n = arity();
  for (const auto& c : components_) {
    if (c.arity() != n) throw DimensionError("vector field component arity differs from the field's arity");
  }
}

VectorField VectorField::zero(int arity) {
  return VectorField(std::vector<MultiPoly>(static_cast<std::size_t>(arity), MultiPoly(arity)));
}

VectorField VectorField::euler(int arity) {
  std::vector<MultiPoly> c;
  for (int i = 0; i < arity; ++i) c.push_back(MultiPoly::variable(arity, i));
  return VectorField(std::move(c));
}

VectorField VectorField::partial(int arity, int index) {
  std::vector<MultiPoly> c(static_cast<std::size_t>(arity), MultiPoly(arity));
  c.at(static_cast<std::size_t>(index)) = MultiPoly::constant(arity, 1);
  return VectorField(std::move(c));
}

bool VectorField::is_zero() const {
  for (const auto& c : components_) {
    if (!c.is_zero()) return false;
  }
  return true;
}

std::optional<int> VectorField::pdeg() const {
  std::optional<int> d;
  for (const auto& c : components_) {
    if (c.is_zero()) continue;
    const auto k = c.homogeneous_degree();
    if (!k || (d && *d != *k)) return std::nullopt;
    d = k;
  }
  return d;
}

MultiPoly VectorField::apply(const MultiPoly& f) const {
  if (f.arity() != arity()) throw DimensionError("vector field applied to a polynomial of another arity");
  MultiPoly out(arity());
  for (int i = 0; i < arity(); ++i) {
    const auto& c = components_[static_cast<std::size_t>(i)];
    if (c.is_zero()) continue;
    MultiPoly d = f.derivative(i);
    if (!d.is_zero()) out += c * d;
  }
  return out;
}

VectorField operator+(const VectorField& a, const VectorField& b) {
  if (a.arity() != b.arity()) throw DimensionError("vector field arity mismatch");
  std::vector<MultiPoly> c;
  for (int i = 0; i < a.arity(); ++i) c.push_back(a[static_cast<std::size_t>(i)] + b[static_cast<std::size_t>(i)]);
  return VectorField(std::move(c));
}

VectorField operator-(const VectorField& a, const VectorField& b) {
  if (a.arity() != b.arity()) throw DimensionError("vector field arity mismatch");
  std::vector<MultiPoly> c;
  for (int i = 0; i < a.arity(); ++i) c.push_back(a[static_cast<std::size_t>(i)] - b[static_cast<std::size_t>(i)]);
  return VectorField(std::move(c));
}

VectorField operator*(const MultiPoly& f, const VectorField& v) {
  std::vector<MultiPoly> c;
  for (const auto& x : v.components()) c.push_back(f * x);
  return VectorField(std::move(c));
}

std::string VectorField::to_string(std::span<const std::string> vars) const {
  std::string s;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i > 0) s += "; ";
    s += components_[i].to_string(vars);
  }
  return s;
}

}  // namespace hyparr
