#include "torlink/abelian.hpp"

#include <sstream>
#include <utility>

#include "torlink/errors.hpp"
#include "torlink/smith.hpp"

namespace torlink {

std::string to_string(const GroupElement& e) {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < e.coords.size(); ++i) os << (i ? "," : "") << e.coords[i];
  os << ']';
  return os.str();
}

FiniteAbelianGroup::FiniteAbelianGroup(std::vector<Integer> invariant_factors)
    : factors_(std::move(invariant_factors)) {
  for (std::size_t i = 0; i < factors_.size(); ++i) {
    if (factors_[i] < 2) throw InvalidData("invariant factors must be >= 2");
    if (i > 0 && !mpz_divisible_p(factors_[i].get_mpz_t(), factors_[i - 1].get_mpz_t()))
      throw InvalidData("invariant factors must form a divisibility chain");
    order_ *= factors_[i];
  }
  if (!factors_.empty()) exponent_ = factors_.back();
}

FiniteAbelianGroup FiniteAbelianGroup::of(std::initializer_list<long> factors) {
  std::vector<Integer> f;
  for (long v : factors) f.emplace_back(v);
  return FiniteAbelianGroup(std::move(f));
}

GroupElement FiniteAbelianGroup::zero() const {
  return GroupElement{std::vector<Integer>(rank(), Integer(0))};
}

GroupElement FiniteAbelianGroup::generator(std::size_t i) const {
  GroupElement e = zero();
  e.coords.at(i) = 1;
  return e;
}

GroupElement FiniteAbelianGroup::element(std::vector<Integer> coords) const {
  if (coords.size() != rank())
    throw GroupMismatch("element has " + std::to_string(coords.size()) + " coordinates, group rank is " +
                        std::to_string(rank()));
  for (std::size_t i = 0; i < coords.size(); ++i) coords[i] = mod(coords[i], factors_[i]);
  return GroupElement{std::move(coords)};
}

GroupElement FiniteAbelianGroup::element(std::initializer_list<long> coords) const {
  std::vector<Integer> c;
  for (long v : coords) c.emplace_back(v);
  return element(std::move(c));
}

void FiniteAbelianGroup::check(const GroupElement& e) const {
  if (e.coords.size() != rank()) throw GroupMismatch("element " + torlink::to_string(e) + " is not in " + to_string());
  for (std::size_t i = 0; i < rank(); ++i)
    if (e.coords[i] < 0 || e.coords[i] >= factors_[i])
      throw GroupMismatch("element " + torlink::to_string(e) + " has non-canonical coordinates for " + to_string());
}

GroupElement FiniteAbelianGroup::add(const GroupElement& a, const GroupElement& b) const {
  check(a);
  check(b);
  GroupElement r = a;
  for (std::size_t i = 0; i < rank(); ++i) {
    r.coords[i] += b.coords[i];
    if (r.coords[i] >= factors_[i]) r.coords[i] -= factors_[i];
  }
  return r;
}

GroupElement FiniteAbelianGroup::subtract(const GroupElement& a, const GroupElement& b) const {
  return add(a, negate(b));
}

GroupElement FiniteAbelianGroup::negate(const GroupElement& a) const {
  check(a);
  GroupElement r = a;
  for (std::size_t i = 0; i < rank(); ++i)
    if (r.coords[i] != 0) r.coords[i] = factors_[i] - r.coords[i];
  return r;
}

GroupElement FiniteAbelianGroup::scale(const Integer& k, const GroupElement& a) const {
  check(a);
  GroupElement r = a;
  for (std::size_t i = 0; i < rank(); ++i) r.coords[i] = mod(k * r.coords[i], factors_[i]);
  return r;
}

void FiniteAbelianGroup::for_each_element(const std::function<void(const GroupElement&)>& visit) const {
  GroupElement e = zero();
  for (;;) {
    visit(e);
    std::size_t i = rank();
    for (;;) {
      if (i == 0) return;
      --i;
      e.coords[i] += 1;
      if (e.coords[i] < factors_[i]) break;
      e.coords[i] = 0;
    }
  }
}

Integer FiniteAbelianGroup::elementary_prime() const {
  if (factors_.empty()) return 0;
  if (factors_.front() != factors_.back() || !is_prime(factors_.front())) return 0;
  return factors_.front();
}

IntegerRow FiniteAbelianGroup::embed(const GroupElement& e) const {
  check(e);
  IntegerRow row(rank());
  for (std::size_t i = 0; i < rank(); ++i) row[i] = e.coords[i] * (exponent_ / factors_[i]);
  return row;
}

GroupElement FiniteAbelianGroup::unembed(const IntegerRow& row) const {
  GroupElement e = zero();
  for (std::size_t i = 0; i < rank(); ++i) {
    const Integer scale = exponent_ / factors_[i];
    if (!mpz_divisible_p(row[i].get_mpz_t(), scale.get_mpz_t()))
      throw GroupMismatch("row is not in the image of the embedding");
    e.coords[i] = mod(row[i] / scale, factors_[i]);
  }
  return e;
}

std::string FiniteAbelianGroup::to_string() const {
  if (factors_.empty()) return "0";
  std::ostringstream os;
  for (std::size_t i = 0; i < factors_.size(); ++i) os << (i ? " + " : "") << "Z/" << factors_[i];
  return os.str();
}

// --- Subgroup ---------------------------------------------------------------

Subgroup::Subgroup(FiniteAbelianGroup g, std::vector<IntegerRow> howell)
    : group_(std::move(g)), howell_(std::move(howell)) {
  for (const auto& row : howell_) {
    const Integer& pivot = row[leading_column(row)];
    Integer ord = group_.exponent() / pivot;
    row_orders_.push_back(ord);
    order_ *= ord;
    generators_.push_back(group_.unembed(row));
  }
}

Subgroup Subgroup::trivial(const FiniteAbelianGroup& g) { return Subgroup(g, {}); }

Subgroup Subgroup::whole(const FiniteAbelianGroup& g) {
  std::vector<GroupElement> gens;
  for (std::size_t i = 0; i < g.rank(); ++i) gens.push_back(g.generator(i));
  return generated_by(g, gens);
}

Subgroup Subgroup::generated_by(const FiniteAbelianGroup& g, std::span<const GroupElement> gens) {
  std::vector<IntegerRow> rows;
  rows.reserve(gens.size());
  for (const auto& e : gens) rows.push_back(g.embed(e));
  return Subgroup(g, howell_form(std::move(rows), g.rank(), g.exponent()));
}

IntegerMatrix Subgroup::generator_matrix() const {
  IntegerMatrix m(generators_.size(), group_.rank());
  for (std::size_t i = 0; i < generators_.size(); ++i)
    for (std::size_t j = 0; j < group_.rank(); ++j) m(i, j) = generators_[i].coords[j];
  return m;
}

bool Subgroup::contains(const GroupElement& e) const {
  IntegerRow r = group_.embed(e);
  const Integer& n = group_.exponent();
  for (const auto& row : howell_) {
    const std::size_t j = leading_column(row);
    for (std::size_t k = 0; k < j; ++k)
      if (r[k] != 0) return false;
    const Integer& pivot = row[j];
    if (!mpz_divisible_p(r[j].get_mpz_t(), pivot.get_mpz_t())) return false;
    const Integer q = r[j] / pivot;
    for (std::size_t k = j; k < r.size(); ++k) r[k] = mod(r[k] - q * row[k], n);
  }
  for (const auto& v : r)
    if (v != 0) return false;
  return true;
}

bool Subgroup::is_subgroup_of(const Subgroup& other) const {
  if (!(group_ == other.group_)) return false;
  for (const auto& g : generators_)
    if (!other.contains(g)) return false;
  return true;
}

void Subgroup::for_each_element(const std::function<void(const GroupElement&)>& visit) const {
  // Howell rows give unique representations sum c_i row_i, 0 <= c_i < order_i.
  const std::size_t k = howell_.size();
  std::vector<Integer> c(k, Integer(0));
  for (;;) {
    GroupElement e = group_.zero();
    for (std::size_t i = 0; i < k; ++i)
      if (c[i] != 0) e = group_.add(e, group_.scale(c[i], generators_[i]));
    visit(e);
    std::size_t i = k;
    for (;;) {
      if (i == 0) return;
      --i;
      c[i] += 1;
      if (c[i] < row_orders_[i]) break;
      c[i] = 0;
    }
  }
}

std::string Subgroup::to_string() const {
  std::ostringstream os;
  os << "<";
  for (std::size_t i = 0; i < generators_.size(); ++i)
    os << (i ? ", " : "") << torlink::to_string(generators_[i]);
  os << ">";
  return os.str();
}

// --- presentations and kernels ---------------------------------------------

CokernelPresentation cokernel_presentation(const IntegerMatrix& a) {
  if (!a.is_square()) throw InvalidData("cokernel_presentation needs a square matrix");
  if (a.determinant() == 0) throw SingularMatrix("matrix is singular; not a rational homology sphere");

  SmithForm snf = smith_normal_form(a);
  const std::size_t n = a.rows();
  std::vector<std::size_t> kept;
  std::vector<Integer> factors;
  for (std::size_t i = 0; i < n; ++i)
    if (snf.D(i, i) != 1) {
      kept.push_back(i);
      factors.push_back(snf.D(i, i));
    }

  CokernelPresentation out{FiniteAbelianGroup(factors), {}, {}};
  // x -> U x maps Z^n / A Z^n onto Z^n / D Z^n.
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Integer> coords;
    for (std::size_t i : kept) coords.push_back(snf.U(i, j));
    out.meridian_images.push_back(out.group.element(std::move(coords)));
  }
  for (std::size_t i : kept) {
    std::vector<Integer> lift(n);
    for (std::size_t r = 0; r < n; ++r) lift[r] = snf.left_inverse(r, i);
    out.generator_lifts.push_back(std::move(lift));
  }
  return out;
}

Subgroup kernel_of_homomorphism(const FiniteAbelianGroup& g,
                                const std::vector<std::vector<Integer>>& images,
                                const Integer& modulus) {
  if (images.size() != g.rank()) throw GroupMismatch("one image per generator required");
  const std::size_t k = images.empty() ? 0 : images.front().size();
  if (g.rank() == 0) return Subgroup::trivial(g);

  // Work in (Z/N)^(k+r) with N = lcm(modulus, exponent); the graph of the
  // map is spanned by (image_j | embedded e_j). Howell rows with zero image
  // part span the kernel.
  const Integer n = lcm(modulus, g.exponent());
  const Integer image_scale = n / modulus;
  const Integer group_scale = n / g.exponent();
  std::vector<IntegerRow> rows;
  for (std::size_t j = 0; j < g.rank(); ++j) {
    if (images[j].size() != k) throw GroupMismatch("ragged image matrix");
    for (const auto& v : images[j])
      if (!mpz_divisible_p(Integer(g.factor(j) * v).get_mpz_t(), modulus.get_mpz_t()))
        throw InvalidData("image is not annihilated by the generator order");
    IntegerRow row(k + g.rank(), Integer(0));
    for (std::size_t c = 0; c < k; ++c) row[c] = images[j][c] * image_scale;
    row[k + j] = (g.exponent() / g.factor(j)) * group_scale;
    rows.push_back(std::move(row));
  }
  std::vector<GroupElement> gens;
  for (const auto& h : howell_form(std::move(rows), k + g.rank(), n)) {
    if (leading_column(h) < k) continue;
    IntegerRow tail(h.begin() + static_cast<std::ptrdiff_t>(k), h.end());
    for (auto& v : tail) v /= group_scale;
    gens.push_back(g.unembed(tail));
  }
  return Subgroup::generated_by(g, gens);
}

}  // namespace torlink
