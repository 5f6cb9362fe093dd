#include "fredsing/gallery.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

#include "fredsing/errors.hpp"

namespace fredsing {

namespace {

constexpr int kMaxK = 8;
constexpr int kMaxN = 12;
constexpr int kMaxDim = 32;

class ParamReader {
 public:
  ParamReader(const std::string& entry, const GalleryParams& p) : entry_(entry), p_(p) {}

  int integer(const std::string& key, int def, int lo, int hi) {
    used_.push_back(key);
    auto it = p_.find(key);
    if (it == p_.end()) return def;
    const double v = it->second;
    if (v != std::floor(v) || v < lo || v > hi)
      throw ParamOutOfRange(entry_ + ": " + key + " must be an integer in [" + std::to_string(lo) +
                            ", " + std::to_string(hi) + "]");
    return static_cast<int>(v);
  }

  double real(const std::string& key, double def) {
    used_.push_back(key);
    auto it = p_.find(key);
    if (it == p_.end()) return def;
    if (!std::isfinite(it->second)) throw ParamOutOfRange(entry_ + ": " + key + " must be finite");
    return it->second;
  }

  void finish() const {
    for (const auto& [k, v] : p_)
      if (std::find(used_.begin(), used_.end(), k) == used_.end())
        throw ParamOutOfRange(entry_ + ": unknown parameter '" + k + "'");
  }

 private:
  std::string entry_;
  const GalleryParams& p_;
  std::vector<std::string> used_;
};

void check_dim(const std::string& entry, int n) {
  if (n > kMaxDim)
    throw ParamOutOfRange(entry + ": total dimension " + std::to_string(n) + " exceeds " +
                          std::to_string(kMaxDim));
}

// f = lead + sum_{h=1..k} u[first + h - 1] t^h with t = u[0]; the remaining
// components are passed through.
JetVector ls_polynomial(const JetVector& u, int lead_power, double lead_coeff, int k, int first) {
  const Jet& t = u[0];
  Jet f(t.space());
  Jet tp = t;
  for (int h = 1; h <= k; ++h) {
    f += u[first + h - 1] * tp;
    if (h < k) tp = tp * t;
  }
  if (lead_coeff != 0.0) f.axpy(lead_coeff, pow_int(t, lead_power));
  JetVector y(u);
  y[0] = f;
  return y;
}

std::vector<GalleryFixture> origin_and_z(int n, int dimZ, KindLabel kind, const std::string& src) {
  std::vector<GalleryFixture> out;
  out.push_back({"origin", Eigen::VectorXd::Zero(n), kind, src});
  if (dimZ > 0) {
    Eigen::VectorXd p = Eigen::VectorXd::Zero(n);
    p.tail(dimZ).setConstant(0.5);
    out.push_back({"(0, z), z = 0.5", p, kind, src});
  }
  return out;
}

GalleryEntry make_fold(const GalleryParams& params) {
  ParamReader r("fold_t2", params);
  r.finish();
  MapModel m("fold_t2", 2, [](const JetVector& u) {
    JetVector y(u);
    y[0] = u[0] * u[0];
    return y;
  });
  const std::string src = "LS-map (t^2, xi): canonical J_1 = 2, every (0, xi) is a 1-singularity";
  std::vector<GalleryFixture> fx = {
      {"origin", Eigen::Vector2d(0, 0), {Kind::KSingularity, 1}, src},
      {"(0, xi), xi = 0.7", Eigen::Vector2d(0, 0.7), {Kind::KSingularity, 1}, src},
  };
  return {"fold_t2", params, m, fx};
}

GalleryEntry make_cusp_source(const GalleryParams& params) {
  ParamReader r("cusp_source_t3", params);
  r.finish();
  MapModel m("cusp_source_t3", 2, [](const JetVector& u) {
    JetVector y(u);
    y[0] = u[0] * u[0] * u[0];
    return y;
  });
  const std::string src =
      "LS-map (t^3, xi): S_1 is the xi-axis and both second partials of f vanish there";
  std::vector<GalleryFixture> fx = {
      {"origin", Eigen::Vector2d(0, 0), {Kind::NotOneTransverse, 0}, src},
      {"(0, xi), xi = -0.4", Eigen::Vector2d(0, -0.4), {Kind::NotOneTransverse, 0}, src},
  };
  return {"cusp_source_t3", params, m, fx};
}

KindLabel family_expected(int k, int n) {
  if (n == 1) return {Kind::Regular, 0};
  if (k == 0) {
    if (n == 2) return {Kind::KSingularity, 1};
    return {Kind::NotOneTransverse, 0};
  }
  if (n == 0 || n >= k + 3) return {Kind::MaximalKTransverse, k};
  return {Kind::KSingularity, n - 1};
}

std::string family_source(int k, int n) {
  if (n == 1) return "f = t + ...: df/dt != 0, regular point";
  if (k == 0 && n == 2) return "f = t^2: (0, z) are 1-singularities";
  if (k == 0) return "k = 0, n = 0 or n >= 3: second partials of f vanish, not 1-transverse";
  if (n == 0 || n >= k + 3)
    return "mixed partials d^{h+1}f/dt^h dt_eta = eta! delta_{h eta}, J_1..J_{k+1} = 0: maximal "
           "k-transverse";
  return "2 <= n <= k+2: first nonvanishing t-derivative has order n, (n-1)-singularity";
}

GalleryEntry make_family(const std::string& name, const GalleryParams& params) {
  ParamReader r(name, params);
  const int k = r.integer("k", 1, 0, kMaxK);
  const int n = r.integer("n", 0, 0, kMaxN);
  const int dimZ = r.integer("dimZ", 1, 0, kMaxDim);
  r.finish();
  const int dim = 1 + k + dimZ;
  check_dim(name, dim);
  const std::string label = name + "(k=" + std::to_string(k) + ",n=" + std::to_string(n) +
                            ",dimZ=" + std::to_string(dimZ) + ")";
  MapModel m(label, dim, [k, n](const JetVector& u) {
    return ls_polynomial(u, n, n == 0 ? 0.0 : 1.0, k, 1);
  });
  return {name, params, m, origin_and_z(dim, dimZ, family_expected(k, n), family_source(k, n))};
}

GalleryEntry make_transverse(const GalleryParams& params) {
  ParamReader r("transverse_k", params);
  const int k = r.integer("k", 1, 1, kMaxK);
  const int dimZ = r.integer("dimZ", 0, 0, kMaxDim);
  r.finish();
  const int dim = 1 + k + dimZ;
  check_dim("transverse_k", dim);
  MapModel m("transverse_k(k=" + std::to_string(k) + ",dimZ=" + std::to_string(dimZ) + ")", dim,
             [k](const JetVector& u) { return ls_polynomial(u, 0, 0.0, k, 1); });
  const std::string src =
      "f = sum t_h t^h: I_1..I_k independent with J_0..J_k = 0 and I_{k+1} = 0, maximal "
      "k-transverse";
  return {"transverse_k", params, m,
          origin_and_z(dim, dimZ, {Kind::MaximalKTransverse, k}, src)};
}

GalleryEntry make_whitney(const GalleryParams& params) {
  ParamReader r("whitney", params);
  const int k = r.integer("k", 1, 1, kMaxK);
  const int dimZ = r.integer("dimZ", 0, 0, kMaxDim);
  r.finish();
  const int dim = k + dimZ;
  check_dim("whitney", dim);
  MapModel m("whitney(k=" + std::to_string(k) + ",dimZ=" + std::to_string(dimZ) + ")", dim,
             [k](const JetVector& u) { return ls_polynomial(u, k + 1, 1.0, k - 1, 1); });
  const std::string src = "generalized Whitney map w_{k,Z}: points (0, z) are k-singularities";
  return {"whitney", params, m, origin_and_z(dim, dimZ, {Kind::KSingularity, k}, src)};
}

GalleryEntry make_l2(const GalleryParams& params) {
  ParamReader r("l2_truncated", params);
  const int N = r.integer("N", 2, 1, kMaxK);
  const int dimZ = r.integer("dimZ", 0, 0, kMaxDim);
  r.finish();
  const int dim = 1 + N + dimZ;
  check_dim("l2_truncated", dim);
  MapModel m("l2_truncated(N=" + std::to_string(N) + ",dimZ=" + std::to_string(dimZ) + ")", dim,
             [N](const JetVector& u) { return ls_polynomial(u, 0, 0.0, N, 1); });
  const std::string src =
      "N-mode truncation of the l2 infinitely transverse example; equals family_kn(k=N, n=0), "
      "maximal N-transverse";
  return {"l2_truncated", params, m,
          origin_and_z(dim, dimZ, {Kind::MaximalKTransverse, N}, src)};
}

GalleryEntry make_eps(const GalleryParams& params) {
  ParamReader r("eps_perturbed", params);
  const double eps = r.real("eps", 0.0);
  r.finish();
  std::ostringstream lab;
  lab.precision(17);
  lab << "eps_perturbed(eps=" << eps << ")";
  MapModel m(lab.str(), 2, [eps](const JetVector& u) {
    JetVector y(u);
    y[0] = u[0] * u[1] - (0.5 * eps) * (u[0] * u[0]);
    return y;
  });
  const KindLabel kind =
      eps == 0.0 ? KindLabel{Kind::MaximalKTransverse, 1} : KindLabel{Kind::KSingularity, 1};
  const std::string src =
      eps == 0.0 ? "f = t xi: S_1 is the t-axis and every point is maximal 1-transverse"
                 : "f = t xi - eps t^2 / 2: S_1 is the line xi = eps t, every point a 1-singularity";
  std::vector<GalleryFixture> fx;
  for (double t : {-0.5, 0.0, 0.5}) {
    std::ostringstream d;
    d << "(t, eps t), t = " << t;
    fx.push_back({d.str(), Eigen::Vector2d(t, eps * t), kind, src});
  }
  return {"eps_perturbed", params, m, fx};
}

}  // namespace

std::vector<std::string> gallery_names() {
  return {"cusp_source_t3", "eps_perturbed", "family_kn", "fold_t2",
          "l2_truncated",   "transverse_k",  "whitney"};
}

GalleryEntry gallery_map(const std::string& name, const GalleryParams& params) {
  if (name == "fold_t2") return make_fold(params);
  if (name == "cusp_source_t3") return make_cusp_source(params);
  if (name == "family_kn") return make_family(name, params);
  if (name == "transverse_k") return make_transverse(params);
  if (name == "whitney") return make_whitney(params);
  if (name == "l2_truncated") return make_l2(params);
  if (name == "eps_perturbed") return make_eps(params);
  throw UnknownName("no gallery entry named '" + name + "'");
}

std::vector<std::pair<std::string, GalleryParams>> gallery_catalogue() {
  std::vector<std::pair<std::string, GalleryParams>> out;
  out.push_back({"cusp_source_t3", {}});
  out.push_back({"eps_perturbed", {{"eps", 0.0}}});
  out.push_back({"eps_perturbed", {{"eps", 0.1}}});
  for (int dz : {0, 1})
    for (int k = 0; k <= 3; ++k)
      for (int n = 0; n <= k + 3; ++n) out.push_back({"family_kn", {{"k", k}, {"n", n}, {"dimZ", dz}}});
  out.push_back({"fold_t2", {}});
  for (int N = 2; N <= 4; ++N) out.push_back({"l2_truncated", {{"N", N}}});
  for (int k = 1; k <= 3; ++k) out.push_back({"transverse_k", {{"k", k}}});
  for (int dz : {0, 2})
    for (int k = 1; k <= 5; ++k) out.push_back({"whitney", {{"k", k}, {"dimZ", dz}}});
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first != b.first) return a.first < b.first;
    return a.second < b.second;
  });
  return out;
}

std::string format_params(const GalleryParams& params) {
  std::string out;
  for (const auto& [k, v] : params) {
    if (!out.empty()) out += ",";
    char buf[32];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    out += k + "=" + std::string(buf, res.ptr);
  }
  return out;
}

}  // namespace fredsing
