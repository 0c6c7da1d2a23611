#include "oswr/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

namespace oswr {

SparseMatrix::SparseMatrix(int dim) : dim_(dim) {
  if (dim < 1) throw std::invalid_argument("SparseMatrix: dimension must be positive");
}

void SparseMatrix::add(int row, int col, double value) {
  if (finalized_) throw std::logic_error("SparseMatrix::add after finalize");
  if (row < 0 || row >= dim_ || col < 0 || col >= dim_)
    throw std::out_of_range("SparseMatrix::add: index out of range");
  if (value != 0.0) triplets_.push_back({row, col, value});
}

void SparseMatrix::finalize() {
  if (finalized_) return;
  std::sort(triplets_.begin(), triplets_.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  row_offsets_.assign(dim_ + 1, 0);
  cols_.reserve(triplets_.size());
  values_.reserve(triplets_.size());
  for (size_t k = 0; k < triplets_.size();) {
    size_t j = k;
    double sum = 0.0;
    while (j < triplets_.size() && triplets_[j].row == triplets_[k].row &&
           triplets_[j].col == triplets_[k].col)
      sum += triplets_[j++].value;
    cols_.push_back(triplets_[k].col);
    values_.push_back(sum);
    ++row_offsets_[triplets_[k].row + 1];
    k = j;
  }
  for (int r = 0; r < dim_; ++r) row_offsets_[r + 1] += row_offsets_[r];
  triplets_.clear();
  triplets_.shrink_to_fit();
  finalized_ = true;
}

double SparseMatrix::coeff(int row, int col) const {
  if (!finalized_) throw std::logic_error("SparseMatrix::coeff before finalize");
  for (int k = row_offsets_[row]; k < row_offsets_[row + 1]; ++k)
    if (cols_[k] == col) return values_[k];
  return 0.0;
}

std::vector<double> SparseMatrix::multiply(std::span<const double> x) const {
  if (!finalized_) throw std::logic_error("SparseMatrix::multiply before finalize");
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("SparseMatrix::multiply: size mismatch");
  std::vector<double> y(dim_, 0.0);
  for (int r = 0; r < dim_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k) y[r] += values_[k] * x[cols_[k]];
  return y;
}

double SparseMatrix::max_asymmetry() const {
  if (!finalized_) throw std::logic_error("SparseMatrix::max_asymmetry before finalize");
  double worst = 0.0;
  for (int r = 0; r < dim_; ++r)
    for (int k = row_offsets_[r]; k < row_offsets_[r + 1]; ++k)
      worst = std::max(worst, std::abs(values_[k] - coeff(cols_[k], r)));
  return worst;
}

struct Factorization::Impl {
  Eigen::SparseMatrix<double> matrix;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
};

Factorization::Factorization() : impl_(std::make_unique<Impl>()) {}
Factorization::~Factorization() = default;
Factorization::Factorization(Factorization&&) noexcept = default;
Factorization& Factorization::operator=(Factorization&&) noexcept = default;

Factorization Factorization::compute(const SparseMatrix& a) {
  if (!a.finalized()) throw std::logic_error("Factorization::compute: matrix not finalized");
  Factorization f;
  Eigen::SparseMatrix<double>& m = f.impl_->matrix;
  m.resize(a.dim(), a.dim());
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(a.nnz());
  for (int r = 0; r < a.dim(); ++r)
    for (int k = a.row_offsets()[r]; k < a.row_offsets()[r + 1]; ++k)
      trips.emplace_back(r, a.cols()[k], a.values()[k]);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();

  auto& lu = f.impl_->lu;
  lu.analyzePattern(m);
  lu.factorize(m);
  if (lu.info() != Eigen::Success)
    throw SingularMatrixError("sparse LU factorization failed: " + lu.lastErrorMessage());
  return f;
}

int Factorization::dim() const { return static_cast<int>(impl_->matrix.rows()); }

void Factorization::solve(std::span<const double> rhs, std::span<double> x) const {
  const int n = dim();
  if (static_cast<int>(rhs.size()) != n || static_cast<int>(x.size()) != n)
    throw std::invalid_argument("Factorization::solve: size mismatch");
  Eigen::Map<const Eigen::VectorXd> b(rhs.data(), n);
  Eigen::Map<Eigen::VectorXd> out(x.data(), n);
  out = impl_->lu.solve(b);
}

std::vector<double> Factorization::solve(std::span<const double> rhs) const {
  std::vector<double> x(rhs.size());
  solve(rhs, x);
  return x;
}

namespace {
void axpy(double a, const std::vector<double>& x, std::vector<double>& y) {
  for (size_t k = 0; k < y.size(); ++k) y[k] += a * x[k];
}
}  // namespace

GmresResult gmres(const LinearOperator& apply, const std::vector<double>& rhs,
                  const InnerProduct& inner, double rel_tol, int max_iter,
                  const std::vector<double>* initial_guess,
                  const std::function<void(int, const std::vector<double>&)>& on_iterate) {
  const size_t n = rhs.size();
  GmresResult result;
  result.x = initial_guess ? *initial_guess : std::vector<double>(n, 0.0);
  if (initial_guess && initial_guess->size() != n)
    throw std::invalid_argument("gmres: initial guess size mismatch");

  auto norm = [&inner](const std::vector<double>& v) { return std::sqrt(std::max(inner(v, v), 0.0)); };

  std::vector<double> r = apply(result.x);
  for (size_t k = 0; k < n; ++k) r[k] = rhs[k] - r[k];
  const double rhs_norm = norm(rhs);
  const double r0_norm = norm(r);
  const double denom = rhs_norm > 0.0 ? rhs_norm : (r0_norm > 0.0 ? r0_norm : 1.0);

  if (r0_norm / denom <= rel_tol) {
    result.converged = true;
    result.residual_history.push_back(r0_norm / denom);
    return result;
  }

  std::vector<std::vector<double>> basis;  // Arnoldi vectors
  basis.reserve(max_iter + 1);
  {
    std::vector<double> v0 = r;
    for (double& e : v0) e /= r0_norm;
    basis.push_back(std::move(v0));
  }
  // Hessenberg columns after Givens, rotations (cs, sn), transformed rhs g
  std::vector<std::vector<double>> h_cols;
  std::vector<double> cs, sn;
  std::vector<double> g = {r0_norm};

  auto assemble_iterate = [&](int k) {
    // back substitution on the k x k triangular system
    std::vector<double> y(k);
    for (int i = k - 1; i >= 0; --i) {
      double s = g[i];
      for (int j = i + 1; j < k; ++j) s -= h_cols[j][i] * y[j];
      y[i] = s / h_cols[i][i];
    }
    std::vector<double> x = result.x;
    for (int j = 0; j < k; ++j) axpy(y[j], basis[j], x);
    return x;
  };

  int k = 0;
  while (k < max_iter) {
    std::vector<double> w = apply(basis[k]);
    std::vector<double> h(k + 2, 0.0);
    for (int i = 0; i <= k; ++i) {  // modified Gram-Schmidt
      h[i] = inner(w, basis[i]);
      axpy(-h[i], basis[i], w);
    }
    const double subdiag = norm(w);
    h[k + 1] = subdiag;

    // apply accumulated rotations, then a new one to zero h[k+1]
    for (int i = 0; i < k; ++i) {
      const double t = cs[i] * h[i] + sn[i] * h[i + 1];
      h[i + 1] = -sn[i] * h[i] + cs[i] * h[i + 1];
      h[i] = t;
    }
    const double rho = std::hypot(h[k], h[k + 1]);
    const double c = rho > 0.0 ? h[k] / rho : 1.0;
    const double s = rho > 0.0 ? h[k + 1] / rho : 0.0;
    cs.push_back(c);
    sn.push_back(s);
    h[k] = rho;
    h.resize(k + 1);
    h_cols.push_back(std::move(h));
    g.push_back(-s * g[k]);
    g[k] = c * g[k];
    ++k;

    const double rel_res = std::abs(g[k]) / denom;
    result.residual_history.push_back(rel_res);
    if (on_iterate) on_iterate(k, assemble_iterate(k));

    if (rel_res <= rel_tol || subdiag == 0.0) {
      // a vanishing subdiagonal is an Arnoldi breakdown: the Krylov space is
      // invariant and the least-squares iterate is exact
      result.converged = true;
      break;
    }
    for (double& e : w) e /= subdiag;
    basis.push_back(std::move(w));
  }

  result.iterations = k;
  result.x = assemble_iterate(k);
  return result;
}

}  // namespace oswr
