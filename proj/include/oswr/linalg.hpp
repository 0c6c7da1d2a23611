#ifndef OSWR_LINALG_HPP
#define OSWR_LINALG_HPP

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <vector>

namespace oswr {

class SingularMatrixError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Square sparse matrix assembled from triplets, stored compressed-row with
/// sorted unique column indices after finalize().
class SparseMatrix {
 public:
  explicit SparseMatrix(int dim);

  int dim() const { return dim_; }
  void add(int row, int col, double value);
  void finalize();  // triplets -> CSR, duplicates summed
  bool finalized() const { return finalized_; }

  int nnz() const { return static_cast<int>(values_.size()); }
  const std::vector<int>& row_offsets() const { return row_offsets_; }
  const std::vector<int>& cols() const { return cols_; }
  const std::vector<double>& values() const { return values_; }

  double coeff(int row, int col) const;  // 0 when absent
  std::vector<double> multiply(std::span<const double> x) const;
  double max_asymmetry() const;  // max |A - A^T| entry

 private:
  struct Triplet {
    int row, col;
    double value;
  };
  int dim_;
  bool finalized_ = false;
  std::vector<Triplet> triplets_;
  std::vector<int> row_offsets_, cols_;
  std::vector<double> values_;
};

/// Direct sparse LU factorization, reusable for many right-hand sides.
class Factorization {
 public:
  static Factorization compute(const SparseMatrix& a);  // throws SingularMatrixError
  ~Factorization();
  Factorization(Factorization&&) noexcept;
  Factorization& operator=(Factorization&&) noexcept;
  Factorization(const Factorization&) = delete;
  Factorization& operator=(const Factorization&) = delete;

  int dim() const;
  void solve(std::span<const double> rhs, std::span<double> x) const;
  std::vector<double> solve(std::span<const double> rhs) const;

 private:
  Factorization();
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

using LinearOperator = std::function<std::vector<double>(const std::vector<double>&)>;
using InnerProduct = std::function<double(const std::vector<double>&, const std::vector<double>&)>;

struct GmresResult {
  std::vector<double> x;
  std::vector<double> residual_history;  // relative residual per iteration
  int iterations = 0;
  bool converged = false;
};

/// Full (non-restarted) GMRES with modified Gram-Schmidt Arnoldi and Givens
/// least squares, run in the norm induced by `inner`.  The relative residual
/// is measured against ||rhs|| (or the initial residual when rhs vanishes);
/// an Arnoldi breakdown is treated as convergence.  `on_iterate`, when set,
/// receives the assembled iterate after every step.
GmresResult gmres(const LinearOperator& apply, const std::vector<double>& rhs,
                  const InnerProduct& inner, double rel_tol, int max_iter,
                  const std::vector<double>* initial_guess = nullptr,
                  const std::function<void(int, const std::vector<double>&)>& on_iterate = {});

}  // namespace oswr

#endif
