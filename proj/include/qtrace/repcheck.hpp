#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include "qtrace/skew.hpp"
#include "qtrace/torus.hpp"

namespace qtrace {

using cd = std::complex<double>;
using CMat = Eigen::Matrix<cd, Eigen::Dynamic, Eigen::Dynamic>;
using SpMat = Eigen::SparseMatrix<cd>;

// Twisted clock-shift representation of the sublattice spanned by `support`, with
// q^(1/8) sent to exp(2 pi i / L). Monomials act as weighted permutations of the
// standard basis of C^(L^m), m = half the rank of the restricted form.
class Representation {
 public:
  Representation(SpecPtr spec, const std::vector<Exp>& support, int L, std::uint64_t seed);

  int order() const { return L_; }
  std::size_t dim() const { return dim_; }
  std::size_t lattice_rank() const { return basis_.size(); }
  const std::vector<long>& blocks() const { return blocks_; }
  const SpecPtr& spec() const { return spec_; }
  bool contains(const Exp& k) const;

  // out += w * rep(x^k) * in, column by column.
  void apply_monomial(const Exp& k, cd w, const CMat& in, CMat& out) const;
  CMat act(const TorusElement& a, const CMat& v) const;
  SpMat matrix(const TorusElement& a) const;

 private:
  struct MonoOp {
    cd scalar;
    std::vector<long> shift;             // per block, reduced mod L
    std::vector<std::vector<cd>> twist;  // per block, indexed by source coordinate
  };
  MonoOp build(const Exp& k) const;
  const MonoOp& op(const Exp& k, MonoOp& scratch) const;

  SpecPtr spec_;
  int L_;
  std::vector<Exp> basis_;
  IntMatrix V_;
  std::vector<long> blocks_;
  std::size_t dim_ = 1;
  std::vector<cd> mu_, nu_, kappa_;
  std::map<Exp, MonoOp> cache_;
};

// Solve rep(a) w = v by sparse LU; nullopt when singular or the residual exceeds tol.
std::optional<CMat> act_inverse(const Representation& rep, const TorusElement& a, const CMat& v, double tol = 1e-10);

// Evaluates expressions; inverses are factorized once in prepare().
class Evaluator {
 public:
  Evaluator(const Representation& rep, double solve_tol = 1e-10);
  ~Evaluator();
  bool prepare(const ExprPtr& e);
  // ok is cleared when a solve misses the residual bound.
  CMat apply(const ExprPtr& e, const CMat& v, bool& ok) const;
  const std::string& note() const { return note_; }

 private:
  struct Factor;
  SpMat assemble(const ExprPtr& e) const;
  const Representation& rep_;
  double tol_;
  std::map<const SkewExpr*, std::unique_ptr<Factor>> factors_;
  std::string note_;
};

enum class Verdict { Pass, Fail, Inconclusive };
const char* verdict_name(Verdict v);

struct VerifyOptions {
  std::vector<int> orders{5, 7, 11};
  std::vector<int> spare_orders{13, 17, 19, 23};
  int trials = 20;
  std::uint64_t seed = 1;
  double tolerance = 1e-8;
  double solve_tolerance = 1e-10;
  unsigned threads = 0;  // 0: hardware concurrency capped by QTRACE_THREADS
};

struct OrderReport {
  int L = 0;
  std::size_t dim = 0;
  double max_dev = 0;
  bool conclusive = true;
  std::string note;
};

struct VerifyReport {
  Verdict verdict = Verdict::Inconclusive;
  double max_dev = 0;
  std::vector<OrderReport> orders;
  std::uint64_t seed = 0;
  int trials = 0;
};

VerifyReport verify_identity(const ExprPtr& lhs, const ExprPtr& rhs, const VerifyOptions& opts = {});

unsigned worker_threads(unsigned requested);

}  // namespace qtrace
