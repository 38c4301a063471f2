#include "torlink/linking.hpp"

#include <utility>

#include "torlink/errors.hpp"

namespace torlink {
namespace {

// Solves A X = B exactly over Q (A square nonsingular).
std::vector<std::vector<mpq_class>> solve_rational(const IntegerMatrix& a,
                                                   const std::vector<std::vector<Integer>>& columns) {
  const std::size_t n = a.rows();
  const std::size_t k = columns.size();
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n + k));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) m[i][j] = a(i, j);
    for (std::size_t c = 0; c < k; ++c) m[i][n + c] = columns[c][i];
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && m[piv][col] == 0) ++piv;
    if (piv == n) throw SingularMatrix("matrix is singular");
    std::swap(m[piv], m[col]);
    const mpq_class inv = 1 / m[col][col];
    for (auto& v : m[col]) v *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col || m[i][col] == 0) continue;
      const mpq_class f = m[i][col];
      for (std::size_t j = col; j < n + k; ++j) m[i][j] -= f * m[col][j];
    }
  }
  std::vector<std::vector<mpq_class>> x(k, std::vector<mpq_class>(n));
  for (std::size_t c = 0; c < k; ++c)
    for (std::size_t i = 0; i < n; ++i) x[c][i] = m[i][n + c];
  return x;
}

}  // namespace

LinkingForm::LinkingForm(FiniteAbelianGroup group, QmodZMatrix gram)
    : group_(std::move(group)), gram_(std::move(gram)) {
  const std::size_t r = group_.rank();
  if (gram_.size() != r) throw InvalidData("Gram matrix must be " + std::to_string(r) + "x" + std::to_string(r));
  for (const auto& row : gram_)
    if (row.size() != r) throw InvalidData("Gram matrix must be square");
  const Integer& n = group_.exponent();
  scaled_.assign(r, std::vector<Integer>(r));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < r; ++j) {
      if (!(gram_[i][j] == gram_[j][i]))
        throw NonSymmetric("Gram matrix is not symmetric at (" + std::to_string(i + 1) + "," +
                           std::to_string(j + 1) + ")");
      if (!(group_.factor(i) * gram_[i][j]).is_zero())
        throw InvalidData("Gram entry (" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ") = " +
                          gram_[i][j].to_string() + " is not annihilated by " + group_.factor(i).get_str());
      scaled_[i][j] = gram_[i][j].scaled_by(n);
    }
  if (kernel_of_homomorphism(group_, scaled_, n).order() != 1)
    throw DegenerateForm("linking form is degenerate");
}

QmodZ LinkingForm::operator()(const GroupElement& x, const GroupElement& y) const {
  group_.check(x);
  group_.check(y);
  Integer acc = 0;
  for (std::size_t i = 0; i < x.coords.size(); ++i) {
    if (x.coords[i] == 0) continue;
    Integer row = 0;
    for (std::size_t j = 0; j < y.coords.size(); ++j) row += scaled_[i][j] * y.coords[j];
    acc += x.coords[i] * row;
  }
  return QmodZ(acc, group_.exponent());
}

std::vector<Integer> LinkingForm::adjoint_row(const GroupElement& x) const {
  group_.check(x);
  std::vector<Integer> out(group_.rank(), Integer(0));
  for (std::size_t j = 0; j < group_.rank(); ++j) {
    for (std::size_t i = 0; i < group_.rank(); ++i) out[j] += x.coords[i] * scaled_[i][j];
    out[j] = mod(out[j], group_.exponent());
  }
  return out;
}

LinkingForm LinkingForm::negated() const {
  QmodZMatrix g = gram_;
  for (auto& row : g)
    for (auto& v : row) v = -v;
  return LinkingForm(group_, std::move(g));
}

LinkingPresentation linking_form_from_matrix(const IntegerMatrix& a) {
  if (!a.is_square()) throw InvalidData("linking matrix must be square");
  if (!a.is_symmetric()) throw NonSymmetric("linking matrix is not symmetric");
  CokernelPresentation coker = cokernel_presentation(a);
  const auto solved = solve_rational(a, coker.generator_lifts);
  const std::size_t r = coker.group.rank();
  QmodZMatrix gram(r, std::vector<QmodZ>(r));
  for (std::size_t k = 0; k < r; ++k)
    for (std::size_t l = 0; l < r; ++l) {
      mpq_class v = 0;
      for (std::size_t i = 0; i < a.rows(); ++i) v += coker.generator_lifts[k][i] * solved[l][i];
      v.canonicalize();
      gram[k][l] = QmodZ(-v.get_num(), v.get_den());
    }
  return {LinkingForm(coker.group, std::move(gram)), std::move(coker.meridian_images),
          std::move(coker.generator_lifts)};
}

QmodZ eval_lambda2(const LinkingForm& form, const GroupElement& x, const GroupElement& y) {
  return form(x, y);
}

Subgroup orthogonal_complement(const LinkingForm& form, const Subgroup& l) {
  const FiniteAbelianGroup& g = form.group();
  if (!(l.group() == g)) throw GroupMismatch("subgroup lives in a different group");
  std::vector<std::vector<Integer>> images(g.rank());
  for (const auto& gen : l.generators()) {
    const auto row = form.adjoint_row(gen);
    for (std::size_t j = 0; j < g.rank(); ++j) images[j].push_back(row[j]);
  }
  if (l.generators().empty()) return Subgroup::whole(g);
  return kernel_of_homomorphism(g, images, g.exponent());
}

bool is_isotropic(const LinkingForm& form, const Subgroup& l) {
  if (!(l.group() == form.group())) throw GroupMismatch("subgroup lives in a different group");
  const auto& gens = l.generators();
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = i; j < gens.size(); ++j)
      if (!form(gens[i], gens[j]).is_zero()) return false;
  return true;
}

bool is_lagrangian(const LinkingForm& form, const Subgroup& l) {
  if (!(l.group() == form.group())) throw GroupMismatch("subgroup lives in a different group");
  if (l.order() * l.order() != form.group().order()) return false;
  return orthogonal_complement(form, l) == l;
}

}  // namespace torlink
