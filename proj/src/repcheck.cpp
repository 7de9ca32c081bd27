#include "qtrace/repcheck.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include <Eigen/SparseLU>

#include "qtrace/kernels.hpp"
#include "qtrace/lattice.hpp"

namespace qtrace {

namespace {

constexpr std::size_t kMaxDim = 4'000'000;

long mod(long a, long m) {
  long r = a % m;
  return r < 0 ? r + m : r;
}

long floor_div(long a, long b) {
  long q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

bool is_odd_prime(int L) {
  if (L < 3 || L % 2 == 0) return false;
  for (int d = 3; d * d <= L; d += 2)
    if (L % d == 0) return false;
  return true;
}

cd unit_power(double angle, long e) {
  double a = std::fmod(angle * static_cast<double>(e), 2.0 * std::numbers::pi);
  return std::polar(1.0, a);
}

}  // namespace

Representation::Representation(SpecPtr spec, const std::vector<Exp>& support, int L, std::uint64_t seed)
    : spec_(std::move(spec)), L_(L) {
  if (!is_odd_prime(L)) throw std::invalid_argument("root order must be an odd prime");
  std::size_t n = spec_->size();
  basis_ = hnf_basis(support, n);
  std::size_t r = basis_.size();
  IntMatrix B = IntMatrix::from_rows(basis_, n);
  IntMatrix Ab = r ? B * spec_->A * B.transpose() : IntMatrix(0, 0);
  SkewNormalForm nf = skew_normal_form(Ab);
  V_ = nf.V;
  blocks_ = nf.blocks;
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (dim_ > kMaxDim / static_cast<std::size_t>(L)) throw std::runtime_error("representation dimension too large");
    dim_ *= static_cast<std::size_t>(L);
  }
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(L), 0x7157u};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> U(0.0, 2.0 * std::numbers::pi);
  auto draw = [&](std::size_t count) {
    std::vector<cd> v;
    for (std::size_t i = 0; i < count; ++i) v.emplace_back(U(rng), 0.0);  // angle stored in the real part
    return v;
  };
  mu_ = draw(blocks_.size());
  nu_ = draw(blocks_.size());
  kappa_ = draw(r - 2 * blocks_.size());
  for (const auto& k : support) cache_.emplace(k, build(k));
}

bool Representation::contains(const Exp& k) const {
  try {
    coords_in(basis_, k);
    return true;
  } catch (const std::invalid_argument&) {
    return false;
  }
}

Representation::MonoOp Representation::build(const Exp& k) const {
  Exp c = coords_in(basis_, k);
  Exp nn = c.empty() ? c : row_times(c, V_);
  std::size_t m = blocks_.size();
  long u8 = spec_->u8;
  MonoOp op;
  long e8 = 0;
  cd scal = 1.0;
  for (std::size_t i = 0; i < m; ++i) {
    long a = nn[2 * i], b = nn[2 * i + 1];
    e8 += mod(-(u8 / 2) * mod(a * b, L_) * blocks_[i], L_);
    scal *= unit_power(nu_[i].real(), b);
  }
  for (std::size_t j = 0; j < kappa_.size(); ++j) scal *= unit_power(kappa_[j].real(), nn[2 * m + j]);
  op.scalar = scal * root_power(e8, L_);
  for (std::size_t i = 0; i < m; ++i) {
    long a = nn[2 * i], b = nn[2 * i + 1];
    long lam = mod(-u8 * mod(blocks_[i] * b, L_), L_);
    op.shift.push_back(mod(a, L_));
    std::vector<cd> tw(L_);
    for (long g = 0; g < L_; ++g) tw[g] = root_power(lam * g, L_) * unit_power(mu_[i].real(), floor_div(g + a, L_));
    op.twist.push_back(std::move(tw));
  }
  return op;
}

const Representation::MonoOp& Representation::op(const Exp& k, MonoOp& scratch) const {
  auto it = cache_.find(k);
  if (it != cache_.end()) return it->second;
  scratch = build(k);
  return scratch;
}

void Representation::apply_monomial(const Exp& k, cd w, const CMat& in, CMat& out) const {
  if (static_cast<std::size_t>(in.rows()) != dim_ || out.rows() != in.rows() || out.cols() != in.cols())
    throw std::invalid_argument("vector dimension mismatch");
  MonoOp scratch;
  const MonoOp& o = op(k, scratch);
  std::size_t m = blocks_.size();
  cd base = w * o.scalar;
  if (m == 0) {
    for (Eigen::Index col = 0; col < in.cols(); ++col) out(0, col) += base * in(0, col);
    return;
  }
  static const kernels::TwistedAxpy axpy = kernels::select_twisted_axpy();
  std::size_t L = static_cast<std::size_t>(L_);
  std::size_t rows_outer = dim_ / L;
  std::size_t s = static_cast<std::size_t>(o.shift[m - 1]);
  const cd* tw_last = o.twist[m - 1].data();
  std::vector<std::size_t> g(m, 0);
  for (Eigen::Index col = 0; col < in.cols(); ++col) {
    const cd* src = in.data() + col * in.rows();
    cd* dst = out.data() + col * out.rows();
    std::fill(g.begin(), g.end(), 0);
    for (std::size_t outer = 0; outer < rows_outer; ++outer) {
      cd phase = base;
      std::size_t doff = 0;
      for (std::size_t i = 0; i + 1 < m; ++i) {
        phase *= o.twist[i][g[i]];
        doff = doff * L + (g[i] + static_cast<std::size_t>(o.shift[i])) % L;
      }
      doff *= L;
      const cd* srow = src + outer * L;
      axpy(dst + doff + s, srow, tw_last, phase, L - s);
      if (s) axpy(dst + doff, srow + (L - s), tw_last + (L - s), phase, s);
      for (std::size_t i = m - 1; i-- > 0;) {
        if (++g[i] < L) break;
        g[i] = 0;
      }
    }
  }
}

CMat Representation::act(const TorusElement& a, const CMat& v) const {
  CMat out = CMat::Zero(v.rows(), v.cols());
  for (const auto& [k, c] : a.terms()) apply_monomial(k, c.eval(L_), v, out);
  return out;
}

SpMat Representation::matrix(const TorusElement& a) const {
  std::vector<Eigen::Triplet<cd>> trip;
  std::size_t m = blocks_.size();
  std::size_t L = static_cast<std::size_t>(L_);
  for (const auto& [k, c] : a.terms()) {
    MonoOp scratch;
    const MonoOp& o = op(k, scratch);
    cd w = c.eval(L_) * o.scalar;
    for (std::size_t src = 0; src < dim_; ++src) {
      std::size_t rem = src, dst = 0, mult = 1;
      cd phase = w;
      for (std::size_t i = m; i-- > 0;) {
        std::size_t gi = rem % L;
        rem /= L;
        phase *= o.twist[i][gi];
        dst += ((gi + static_cast<std::size_t>(o.shift[i])) % L) * mult;
        mult *= L;
      }
      trip.emplace_back(static_cast<int>(dst), static_cast<int>(src), phase);
    }
  }
  SpMat M(static_cast<Eigen::Index>(dim_), static_cast<Eigen::Index>(dim_));
  M.setFromTriplets(trip.begin(), trip.end());
  M.makeCompressed();
  return M;
}

std::optional<CMat> act_inverse(const Representation& rep, const TorusElement& a, const CMat& v, double tol) {
  SpMat A = rep.matrix(a);
  Eigen::SparseLU<SpMat> lu;
  lu.analyzePattern(A);
  lu.factorize(A);
  if (lu.info() != Eigen::Success) return std::nullopt;
  CMat w = lu.solve(v);
  if (lu.info() != Eigen::Success) return std::nullopt;
  double nv = v.norm();
  if (!std::isfinite(w.norm()) || (A * w - v).norm() > tol * std::max(nv, 1e-300)) return std::nullopt;
  return w;
}

struct Evaluator::Factor {
  SpMat A;
  Eigen::SparseLU<SpMat> lu;
};

Evaluator::Evaluator(const Representation& rep, double solve_tol) : rep_(rep), tol_(solve_tol) {}
Evaluator::~Evaluator() = default;

SpMat Evaluator::assemble(const ExprPtr& e) const {
  if (e->kind() == SkewExpr::Kind::Leaf) return rep_.matrix(e->element());
  std::size_t n = rep_.dim();
  std::vector<Eigen::Triplet<cd>> trip;
  const std::size_t chunk = 64;
  bool ok = true;
  for (std::size_t c0 = 0; c0 < n; c0 += chunk) {
    std::size_t w = std::min(chunk, n - c0);
    CMat I = CMat::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(w));
    for (std::size_t j = 0; j < w; ++j) I(static_cast<Eigen::Index>(c0 + j), static_cast<Eigen::Index>(j)) = 1.0;
    CMat col = apply(e, I, ok);
    for (Eigen::Index j = 0; j < col.cols(); ++j) {
      double scale = col.col(j).cwiseAbs().maxCoeff();
      for (Eigen::Index i = 0; i < col.rows(); ++i)
        if (std::abs(col(i, j)) > 1e-13 * scale)
          trip.emplace_back(static_cast<int>(i), static_cast<int>(c0 + static_cast<std::size_t>(j)), col(i, j));
    }
  }
  SpMat M(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  M.setFromTriplets(trip.begin(), trip.end());
  M.makeCompressed();
  return M;
}

bool Evaluator::prepare(const ExprPtr& e) {
  switch (e->kind()) {
    case SkewExpr::Kind::Leaf: return true;
    case SkewExpr::Kind::Sum:
      for (const auto& [c, x] : e->terms())
        if (!prepare(x)) return false;
      return true;
    case SkewExpr::Kind::Product:
      for (const auto& x : e->factors())
        if (!prepare(x)) return false;
      return true;
    case SkewExpr::Kind::Inverse: {
      if (factors_.count(e.get())) return true;
      if (!prepare(e->arg())) return false;
      auto f = std::make_unique<Factor>();
      f->A = assemble(e->arg());
      f->lu.analyzePattern(f->A);
      f->lu.factorize(f->A);
      if (f->lu.info() != Eigen::Success) {
        note_ = "singular operator at order " + std::to_string(rep_.order());
        return false;
      }
      factors_.emplace(e.get(), std::move(f));
      return true;
    }
  }
  return false;
}

CMat Evaluator::apply(const ExprPtr& e, const CMat& v, bool& ok) const {
  switch (e->kind()) {
    case SkewExpr::Kind::Leaf: return rep_.act(e->element(), v);
    case SkewExpr::Kind::Sum: {
      CMat acc = CMat::Zero(v.rows(), v.cols());
      for (const auto& [c, x] : e->terms()) acc += c.eval(rep_.order()) * apply(x, v, ok);
      return acc;
    }
    case SkewExpr::Kind::Product: {
      CMat w = v;
      for (auto it = e->factors().rbegin(); it != e->factors().rend(); ++it) w = apply(*it, w, ok);
      return e->prefactor().eval(rep_.order()) * w;
    }
    case SkewExpr::Kind::Inverse: {
      const Factor& f = *factors_.at(e.get());
      CMat w = f.lu.solve(v);
      double res = (f.A * w - v).norm();
      if (!std::isfinite(res) || res > tol_ * std::max(v.norm(), 1e-300)) ok = false;
      return w;
    }
  }
  return v;
}

const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "PASS";
    case Verdict::Fail: return "FAIL";
    case Verdict::Inconclusive: return "INCONCLUSIVE";
  }
  return "?";
}

unsigned worker_threads(unsigned requested) {
  unsigned n = requested ? requested : std::max(1u, std::thread::hardware_concurrency());
  if (const char* env = std::getenv("QTRACE_THREADS")) {
    long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1) n = std::min(n, static_cast<unsigned>(cap));
  }
  return std::max(1u, n);
}

namespace {

OrderReport check_order(const SpecPtr& spec, const std::vector<Exp>& support, const ExprPtr& lhs,
                        const ExprPtr& rhs, int L, const VerifyOptions& opts) {
  OrderReport rep_out;
  rep_out.L = L;
  Representation rep(spec, support, L, opts.seed);
  rep_out.dim = rep.dim();
  Evaluator ev(rep, opts.solve_tolerance);
  if (!ev.prepare(lhs) || !ev.prepare(rhs)) {
    rep_out.conclusive = false;
    rep_out.note = ev.note();
    return rep_out;
  }
  auto dim = static_cast<Eigen::Index>(rep.dim());
  CMat V(dim, opts.trials);
  for (int t = 0; t < opts.trials; ++t) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(L), static_cast<std::uint32_t>(t)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> N;
    for (Eigen::Index i = 0; i < dim; ++i) {
      double re = N(rng);
      double im = N(rng);
      V(i, t) = cd(re, im);
    }
    V.col(t) /= V.col(t).norm();
  }
  unsigned nthreads = std::min<unsigned>(worker_threads(opts.threads), static_cast<unsigned>(opts.trials));
  std::vector<double> dev(opts.trials, 0.0);
  std::vector<char> ok(nthreads, 1);
  auto work = [&](unsigned w) {
    for (int t = static_cast<int>(w); t < opts.trials; t += static_cast<int>(nthreads)) {
      bool good = true;
      CMat v = V.col(t);
      CMat a = ev.apply(lhs, v, good);
      CMat b = ev.apply(rhs, v, good);
      if (!good) ok[w] = 0;
      double denom = std::max({a.norm(), b.norm(), 1e-300});
      double d = (a - b).norm() / denom;
      dev[t] = std::isfinite(d) ? d : 1.0;
    }
  };
  if (nthreads <= 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < nthreads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  rep_out.max_dev = *std::max_element(dev.begin(), dev.end());
  if (std::find(ok.begin(), ok.end(), 0) != ok.end()) {
    rep_out.conclusive = false;
    rep_out.note = "linear solve residual above bound";
  }
  return rep_out;
}

}  // namespace

VerifyReport verify_identity(const ExprPtr& lhs, const ExprPtr& rhs, const VerifyOptions& opts) {
  if (lhs->spec()->labels != rhs->spec()->labels || !(lhs->spec()->A == rhs->spec()->A))
    throw std::invalid_argument("identity sides live over different tori");
  if (opts.trials < 1) throw std::invalid_argument("need at least one trial");
  std::set<Exp> sup;
  collect_exponents(lhs, sup);
  collect_exponents(rhs, sup);
  std::vector<Exp> support(sup.begin(), sup.end());
  VerifyReport report;
  report.seed = opts.seed;
  report.trials = opts.trials;
  std::size_t conclusive = 0;
  std::vector<int> queue = opts.orders;
  std::size_t spare = 0;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    OrderReport o = check_order(lhs->spec(), support, lhs, rhs, queue[i], opts);
    if (o.conclusive) {
      ++conclusive;
    } else if (spare < opts.spare_orders.size()) {
      queue.push_back(opts.spare_orders[spare++]);
    }
    report.orders.push_back(o);
  }
  bool failed = false;
  for (const auto& o : report.orders) {
    if (!o.conclusive) continue;
    report.max_dev = std::max(report.max_dev, o.max_dev);
    if (!(o.max_dev < opts.tolerance)) failed = true;
  }
  if (failed) report.verdict = Verdict::Fail;
  else if (conclusive >= opts.orders.size()) report.verdict = Verdict::Pass;
  else report.verdict = Verdict::Inconclusive;
  return report;
}

}  // namespace qtrace
