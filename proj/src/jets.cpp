#include "fredsing/jets.hpp"

#include <cmath>
#include <stdexcept>

#include "fredsing/errors.hpp"

namespace fredsing {

JetSpace::JetSpace(std::vector<int> orders, std::vector<std::string> names, int scratch)
    : orders_(std::move(orders)), names_(std::move(names)), scratch_(scratch) {
  const int nv = num_vars();
  if (nv > 16) throw std::invalid_argument("JetSpace: at most 16 variables");
  if (scratch_ >= nv) throw std::invalid_argument("JetSpace: scratch index out of range");
  if (names_.empty()) {
    for (int v = 0; v < nv; ++v) names_.push_back("x" + std::to_string(v));
  }
  if (static_cast<int>(names_.size()) != nv)
    throw std::invalid_argument("JetSpace: names/orders length mismatch");
  strides_.resize(nv);
  for (int v = 0; v < nv; ++v) {
    if (orders_[v] < 0) throw std::invalid_argument("JetSpace: negative order");
    strides_[v] = size_;
    size_ *= static_cast<std::size_t>(orders_[v] + 1);
    total_order_ += orders_[v];
    if (orders_[v] != 1) binary_ = false;
  }
  digits_.assign(size_ * nv, 0);
  total_degree_.assign(size_, 0);
  for (std::size_t i = 0; i < size_; ++i) {
    std::size_t rem = i;
    int tot = 0;
    for (int v = 0; v < nv; ++v) {
      const int d = static_cast<int>(rem % (orders_[v] + 1));
      rem /= (orders_[v] + 1);
      digits_[i * nv + v] = d;
      tot += d;
    }
    total_degree_[i] = tot;
  }
}

std::shared_ptr<const JetSpace> JetSpace::make(std::vector<int> orders,
                                               std::vector<std::string> names, int scratch) {
  return std::make_shared<const JetSpace>(std::move(orders), std::move(names), scratch);
}

std::shared_ptr<const JetSpace> JetSpace::scalar() {
  static const auto s = make({});
  return s;
}

std::size_t JetSpace::index_of(const std::vector<int>& degrees) const {
  if (static_cast<int>(degrees.size()) != num_vars())
    throw std::invalid_argument("JetSpace::index_of: wrong number of degrees");
  std::size_t idx = 0;
  for (int v = 0; v < num_vars(); ++v) {
    if (degrees[v] < 0 || degrees[v] > orders_[v])
      throw std::out_of_range("JetSpace::index_of: degree above truncation order");
    idx += static_cast<std::size_t>(degrees[v]) * strides_[v];
  }
  return idx;
}

Jet::Jet(JetSpacePtr space, double constant) : space_(std::move(space)) {
  c_.assign(space_->size(), 0.0);
  c_[0] = constant;
}

Jet::Jet(JetSpacePtr space, std::vector<double> coeffs)
    : space_(std::move(space)), c_(std::move(coeffs)) {
  if (c_.size() != space_->size()) throw std::invalid_argument("Jet: coefficient count mismatch");
}

Jet Jet::variable(JetSpacePtr space, int var, double value) {
  Jet j(space, value);
  if (space->order(var) >= 1) j.c_[space->stride(var)] = 1.0;
  return j;
}

bool Jet::is_constant() const {
  for (std::size_t i = 1; i < c_.size(); ++i)
    if (c_[i] != 0.0) return false;
  return true;
}

void Jet::check_space(const Jet& o) const {
  if (space_ != o.space_ && !space_->same_shape(*o.space_))
    throw JetSpaceMismatch("operands live in different jet spaces");
}

Jet Jet::slice(int var, int degree) const {
  Jet out(space_);
  if (degree > space_->order(var)) return out;
  const std::size_t shift = static_cast<std::size_t>(degree) * space_->stride(var);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (space_->degree(i, var) != 0) continue;
    out.c_[i] = c_[i + shift];
  }
  return out;
}

Jet Jet::times_variable(int var) const {
  Jet out(space_);
  const int ord = space_->order(var);
  const std::size_t st = space_->stride(var);
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0.0 || space_->degree(i, var) >= ord) continue;
    out.c_[i + st] = c_[i];
  }
  return out;
}

Jet Jet::restrict_to(const JetSpacePtr& lower) const {
  if (lower->num_vars() != space_->num_vars())
    throw JetSpaceMismatch("restrict_to: variable count differs");
  Jet out(lower);
  std::vector<int> deg(lower->num_vars());
  for (std::size_t i = 0; i < lower->size(); ++i) {
    for (int v = 0; v < lower->num_vars(); ++v) {
      deg[v] = lower->degree(i, v);
      if (deg[v] > space_->order(v)) throw JetSpaceMismatch("restrict_to: order increases");
    }
    out.c_[i] = c_[space_->index_of(deg)];
  }
  return out;
}

Jet& Jet::operator+=(const Jet& o) {
  check_space(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += o.c_[i];
  return *this;
}

Jet& Jet::operator-=(const Jet& o) {
  check_space(o);
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= o.c_[i];
  return *this;
}

Jet& Jet::operator*=(double v) {
  for (double& x : c_) x *= v;
  return *this;
}

Jet& Jet::operator*=(const Jet& o) {
  *this = *this * o;
  return *this;
}

void Jet::axpy(double a, const Jet& x) {
  check_space(x);
  if (a == 0.0) return;
  for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += a * x.c_[i];
}

Jet operator+(Jet a, const Jet& b) { return a += b; }
Jet operator-(Jet a, const Jet& b) { return a -= b; }
Jet operator-(Jet a) { return a *= -1.0; }
Jet operator+(Jet a, double b) { return a += b; }
Jet operator+(double a, Jet b) { return b += a; }
Jet operator-(Jet a, double b) { return a -= b; }
Jet operator-(double a, const Jet& b) {
  Jet r = -b;
  return r += a;
}
Jet operator*(Jet a, double b) { return a *= b; }
Jet operator*(double a, Jet b) { return b *= a; }
Jet operator/(const Jet& a, double b) {
  if (b == 0.0) throw DivisionByZeroJet("division by the scalar 0");
  Jet r(a);
  for (std::size_t i = 0; i < r.size(); ++i) r[i] = a[i] / b;
  return r;
}

Jet operator*(const Jet& a, const Jet& b) {
  if (a.space() != b.space() && !a.space()->same_shape(*b.space()))
    throw JetSpaceMismatch("operands live in different jet spaces");
  const JetSpace& sp = *a.space();
  const std::size_t n = sp.size();
  if (n == 1) return Jet(a.space(), a[0] * b[0]);
  std::vector<double> out(n, 0.0);
  const std::vector<double>& x = a.coeffs();
  const std::vector<double>& y = b.coeffs();
  for (std::size_t m = 0; m < n; ++m) {
    double acc = 0.0;
    sp.for_each_split(m, [&](std::size_t i, std::size_t j) {
      if (x[i] != 0.0) acc += x[i] * y[j];
    });
    out[m] = acc;
  }
  return Jet(a.space(), std::move(out));
}

Jet operator/(const Jet& a, const Jet& b) {
  if (a.space() != b.space() && !a.space()->same_shape(*b.space()))
    throw JetSpaceMismatch("operands live in different jet spaces");
  const double b0 = b[0];
  if (b0 == 0.0) throw DivisionByZeroJet("divisor has zero constant term");
  const JetSpace& sp = *a.space();
  const std::size_t n = sp.size();
  std::vector<double> q(n, 0.0);
  const std::vector<double>& y = b.coeffs();
  for (std::size_t m = 0; m < n; ++m) {
    double acc = a[m];
    sp.for_each_split(m, [&](std::size_t i, std::size_t j) {
      if (i != 0 && y[i] != 0.0) acc -= y[i] * q[j];
    });
    q[m] = acc / b0;
  }
  return Jet(a.space(), std::move(q));
}

Jet operator/(double a, const Jet& b) { return Jet(b.space(), a) / b; }

namespace {

// f(c + N) = sum_j d[j] N^j with N the nilpotent part of `a`; N^(J+1) = 0 for
// J the total order of the space.
Jet nilpotent_series(const Jet& a, const std::vector<double>& d) {
  Jet nil(a);
  nil[0] = 0.0;
  Jet r(a.space(), d.back());
  for (int j = static_cast<int>(d.size()) - 2; j >= 0; --j) {
    r = r * nil;
    r[0] += d[j];
  }
  return r;
}

}  // namespace

Jet exp(const Jet& a) {
  const int J = a.space()->total_order();
  const double e = std::exp(a[0]);
  std::vector<double> d(J + 1);
  double fact = 1.0;
  for (int j = 0; j <= J; ++j) {
    if (j > 0) fact *= j;
    d[j] = j == 0 ? e : e / fact;
  }
  return nilpotent_series(a, d);
}

Jet log(const Jet& a) {
  const double c = a[0];
  if (!(c > 0.0)) throw DomainError("log of a jet with non-positive constant term");
  const int J = a.space()->total_order();
  std::vector<double> d(J + 1);
  d[0] = std::log(c);
  double cp = 1.0;
  for (int j = 1; j <= J; ++j) {
    cp *= c;
    d[j] = ((j % 2 == 1) ? 1.0 : -1.0) / (j * cp);
  }
  return nilpotent_series(a, d);
}

namespace {

Jet trig(const Jet& a, int phase) {
  const int J = a.space()->total_order();
  const double s = std::sin(a[0]);
  const double c = std::cos(a[0]);
  const double cyc[4] = {s, c, -s, -c};
  std::vector<double> d(J + 1);
  double fact = 1.0;
  for (int j = 0; j <= J; ++j) {
    if (j > 0) fact *= j;
    d[j] = j == 0 ? cyc[phase % 4] : cyc[(phase + j) % 4] / fact;
  }
  return nilpotent_series(a, d);
}

}  // namespace

Jet sin(const Jet& a) { return trig(a, 0); }
Jet cos(const Jet& a) { return trig(a, 1); }

Jet pow_int(const Jet& a, int p) {
  if (p == 0) return Jet(a.space(), 1.0);
  const int m = p < 0 ? -p : p;
  Jet r(a);
  for (int i = 1; i < m; ++i) r = r * a;
  if (p < 0) return 1.0 / r;
  return r;
}

Jet jet_arith(JetOp op, const Jet& a, const Jet* b, int power) {
  auto need_b = [&]() -> const Jet& {
    if (b == nullptr) throw std::invalid_argument("jet_arith: binary op needs a second operand");
    return *b;
  };
  switch (op) {
    case JetOp::add: return a + need_b();
    case JetOp::sub: return a - need_b();
    case JetOp::mul: return a * need_b();
    case JetOp::div: return a / need_b();
    case JetOp::exp: return exp(a);
    case JetOp::log: return log(a);
    case JetOp::sin: return sin(a);
    case JetOp::cos: return cos(a);
    case JetOp::pow_int: return pow_int(a, power);
  }
  throw std::invalid_argument("jet_arith: unknown op");
}

JetVector constant_jets(const JetSpacePtr& space, const Eigen::VectorXd& u) {
  JetVector out;
  out.reserve(u.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) out.emplace_back(space, u[i]);
  return out;
}

Eigen::VectorXd constant_part(const JetVector& x) { return coefficient(x, 0); }

Eigen::VectorXd coefficient(const JetVector& x, std::size_t index) {
  Eigen::VectorXd v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = x[i][index];
  return v;
}

Jet dot(const Eigen::VectorXd& w, const JetVector& x) {
  if (static_cast<std::size_t>(w.size()) != x.size())
    throw std::invalid_argument("dot: length mismatch");
  if (x.empty()) throw std::invalid_argument("dot: empty vector");
  Jet r(x.front().space());
  for (std::size_t i = 0; i < x.size(); ++i) r.axpy(w[i], x[i]);
  return r;
}

Jet dot(const JetVector& a, const JetVector& b) {
  if (a.size() != b.size()) throw std::invalid_argument("dot: length mismatch");
  if (a.empty()) throw std::invalid_argument("dot: empty vector");
  Jet r(a.front().space());
  for (std::size_t i = 0; i < a.size(); ++i) r += a[i] * b[i];
  return r;
}

JetVector mat_vec(const Eigen::MatrixXd& m, const JetVector& x, const Eigen::VectorXd& shift) {
  if (static_cast<std::size_t>(m.cols()) != x.size() || x.empty())
    throw std::invalid_argument("mat_vec: shape mismatch");
  JetVector out;
  out.reserve(m.rows());
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    Jet acc(x.front().space(), shift.size() > 0 ? shift[r] : 0.0);
    for (Eigen::Index c = 0; c < m.cols(); ++c) acc.axpy(m(r, c), x[c]);
    out.push_back(std::move(acc));
  }
  return out;
}

JetMatrix::JetMatrix(JetSpacePtr space, int rows, int cols)
    : space_(std::move(space)), rows_(rows), cols_(cols) {
  c_.resize(space_->size());
  active_.assign(space_->size(), false);
  c_[0] = Eigen::MatrixXd::Zero(rows, cols);
  active_[0] = true;
}

JetMatrix JetMatrix::constant(JetSpacePtr space, const Eigen::MatrixXd& a) {
  JetMatrix m(std::move(space), static_cast<int>(a.rows()), static_cast<int>(a.cols()));
  m.c_[0] = a;
  return m;
}

Eigen::MatrixXd& JetMatrix::coefficient(std::size_t index) {
  if (!active_[index]) {
    c_[index] = Eigen::MatrixXd::Zero(rows_, cols_);
    active_[index] = true;
  }
  return c_[index];
}

Jet JetMatrix::get(int r, int c) const {
  Jet out(space_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (active_[i]) out[i] = c_[i](r, c);
  return out;
}

void JetMatrix::set(int r, int c, const Jet& v) {
  for (std::size_t i = 0; i < c_.size(); ++i) {
    if (v[i] != 0.0) {
      coefficient(i)(r, c) = v[i];
    } else if (active_[i]) {
      c_[i](r, c) = 0.0;
    }
  }
}

JetVector JetMatrix::operator*(const JetVector& x) const {
  if (static_cast<int>(x.size()) != cols_) throw std::invalid_argument("JetMatrix*: size mismatch");
  const std::size_t S = space_->size();
  Eigen::MatrixXd X(cols_, S);
  for (int i = 0; i < cols_; ++i)
    for (std::size_t m = 0; m < S; ++m) X(i, m) = x[i][m];
  Eigen::MatrixXd Y = Eigen::MatrixXd::Zero(rows_, S);
  for (std::size_t m = 0; m < S; ++m) {
    space_->for_each_split(m, [&](std::size_t a, std::size_t b) {
      if (active_[a]) Y.col(m).noalias() += c_[a] * X.col(b);
    });
  }
  JetVector out;
  out.reserve(rows_);
  for (int r = 0; r < rows_; ++r) {
    std::vector<double> cr(S);
    for (std::size_t m = 0; m < S; ++m) cr[m] = Y(r, m);
    out.emplace_back(space_, std::move(cr));
  }
  return out;
}

JetMatrix JetMatrix::transpose() const {
  JetMatrix t(space_, cols_, rows_);
  for (std::size_t i = 0; i < c_.size(); ++i)
    if (active_[i]) t.coefficient(i) = c_[i].transpose();
  return t;
}

}  // namespace fredsing
