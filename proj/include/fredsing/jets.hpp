#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <initializer_list>
#include <memory>
#include <string>
#include <vector>

namespace fredsing {

// Shape of a truncated multivariate Taylor expansion. Each nilpotent variable
// has its own truncation order; coefficients are stored densely in
// mixed-radix order with the first variable varying fastest.
//
// One variable may be flagged as scratch: MapModel uses it to extract
// derivatives F'(U)W at jet-valued points U.
class JetSpace {
 public:
  explicit JetSpace(std::vector<int> orders, std::vector<std::string> names = {},
                    int scratch = -1);

  static std::shared_ptr<const JetSpace> make(std::vector<int> orders,
                                              std::vector<std::string> names = {},
                                              int scratch = -1);
  // Space with no variables: jets are plain numbers.
  static std::shared_ptr<const JetSpace> scalar();

  std::size_t size() const noexcept { return size_; }
  int num_vars() const noexcept { return static_cast<int>(orders_.size()); }
  int order(int var) const { return orders_.at(var); }
  const std::vector<int>& orders() const noexcept { return orders_; }
  const std::vector<std::string>& names() const noexcept { return names_; }
  std::size_t stride(int var) const { return strides_.at(var); }
  int scratch() const noexcept { return scratch_; }
  bool binary() const noexcept { return binary_; }
  int total_order() const noexcept { return total_order_; }

  int degree(std::size_t index, int var) const {
    return digits_[index * orders_.size() + var];
  }
  int total_degree(std::size_t index) const { return total_degree_[index]; }
  std::size_t index_of(const std::vector<int>& degrees) const;

  bool same_shape(const JetSpace& other) const { return orders_ == other.orders_; }

  // Calls f(a, m - a) for every index a whose multi-degree is componentwise
  // <= that of m.
  template <class F>
  void for_each_split(std::size_t m, F&& f) const;

 private:
  std::vector<int> orders_;
  std::vector<std::string> names_;
  std::vector<std::size_t> strides_;
  std::vector<int> digits_;
  std::vector<int> total_degree_;
  std::size_t size_ = 1;
  int scratch_ = -1;
  int total_order_ = 0;
  bool binary_ = true;
};

using JetSpacePtr = std::shared_ptr<const JetSpace>;

template <class F>
void JetSpace::for_each_split(std::size_t m, F&& f) const {
  if (binary_) {
    std::size_t a = m;
    while (true) {
      f(a, m ^ a);
      if (a == 0) break;
      a = (a - 1) & m;
    }
    return;
  }
  const int nv = num_vars();
  const int* dm = &digits_[m * orders_.size()];
  int digit[16] = {0};
  std::size_t a = 0;
  while (true) {
    f(a, m - a);
    int v = 0;
    for (; v < nv; ++v) {
      if (digit[v] < dm[v]) {
        ++digit[v];
        a += strides_[v];
        break;
      }
      a -= static_cast<std::size_t>(digit[v]) * strides_[v];
      digit[v] = 0;
    }
    if (v == nv) break;
  }
}

// Truncated Taylor expansion of a scalar quantity.
class Jet {
 public:
  explicit Jet(JetSpacePtr space, double constant = 0.0);
  Jet(JetSpacePtr space, std::vector<double> coeffs);

  // value + 1 * x_var
  static Jet variable(JetSpacePtr space, int var, double value = 0.0);

  const JetSpacePtr& space() const noexcept { return space_; }
  std::size_t size() const noexcept { return c_.size(); }
  double constant() const noexcept { return c_[0]; }
  double operator[](std::size_t i) const { return c_[i]; }
  double& operator[](std::size_t i) { return c_[i]; }
  const std::vector<double>& coeffs() const noexcept { return c_; }
  double coeff(const std::vector<int>& degrees) const { return c_[space_->index_of(degrees)]; }
  bool is_constant() const;

  // Coefficients of x_var^degree moved to x_var^0; other var-degrees dropped.
  Jet slice(int var, int degree) const;
  // Multiply by x_var (truncating).
  Jet times_variable(int var) const;
  // Truncate to a space with the same variables and lower or equal orders.
  Jet restrict_to(const JetSpacePtr& lower) const;

  Jet& operator+=(const Jet& o);
  Jet& operator-=(const Jet& o);
  Jet& operator+=(double v) { c_[0] += v; return *this; }
  Jet& operator-=(double v) { c_[0] -= v; return *this; }
  Jet& operator*=(double v);
  Jet& operator*=(const Jet& o);
  // this += a * x
  void axpy(double a, const Jet& x);

 private:
  void check_space(const Jet& o) const;
  JetSpacePtr space_;
  std::vector<double> c_;
};

Jet operator+(Jet a, const Jet& b);
Jet operator-(Jet a, const Jet& b);
Jet operator*(const Jet& a, const Jet& b);
Jet operator/(const Jet& a, const Jet& b);
Jet operator-(Jet a);
Jet operator+(Jet a, double b);
Jet operator+(double a, Jet b);
Jet operator-(Jet a, double b);
Jet operator-(double a, const Jet& b);
Jet operator*(Jet a, double b);
Jet operator*(double a, Jet b);
Jet operator/(const Jet& a, double b);
Jet operator/(double a, const Jet& b);

Jet exp(const Jet& a);
Jet log(const Jet& a);
Jet sin(const Jet& a);
Jet cos(const Jet& a);
Jet pow_int(const Jet& a, int p);

enum class JetOp { add, sub, mul, div, exp, log, sin, cos, pow_int };
// Uniform entry point; `b` is required for binary ops, `power` for pow_int.
Jet jet_arith(JetOp op, const Jet& a, const Jet* b = nullptr, int power = 0);

using JetVector = std::vector<Jet>;

JetVector constant_jets(const JetSpacePtr& space, const Eigen::VectorXd& u);
Eigen::VectorXd constant_part(const JetVector& x);
Eigen::VectorXd coefficient(const JetVector& x, std::size_t index);
Jet dot(const Eigen::VectorXd& w, const JetVector& x);
Jet dot(const JetVector& a, const JetVector& b);
// M x + shift for a constant matrix M.
JetVector mat_vec(const Eigen::MatrixXd& m, const JetVector& x,
                  const Eigen::VectorXd& shift = Eigen::VectorXd());

// Jet-valued matrix stored coefficient-major: one dense matrix per jet index.
// Indices whose matrix is identically zero are tracked so products skip them.
class JetMatrix {
 public:
  JetMatrix(JetSpacePtr space, int rows, int cols);
  static JetMatrix constant(JetSpacePtr space, const Eigen::MatrixXd& a);

  const JetSpacePtr& space() const noexcept { return space_; }
  int rows() const noexcept { return rows_; }
  int cols() const noexcept { return cols_; }
  const Eigen::MatrixXd& coefficient(std::size_t index) const { return c_[index]; }
  Eigen::MatrixXd& coefficient(std::size_t index);
  bool active(std::size_t index) const { return active_[index]; }

  Jet get(int r, int c) const;
  void set(int r, int c, const Jet& v);

  JetVector operator*(const JetVector& x) const;
  JetMatrix transpose() const;

 private:
  JetSpacePtr space_;
  int rows_, cols_;
  std::vector<Eigen::MatrixXd> c_;
  std::vector<bool> active_;
};

}  // namespace fredsing
