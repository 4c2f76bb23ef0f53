#include "tin/kernels.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace tin::kernels {
namespace {

void check_order(int order) {
  if (order < 2 || order > 4) throw std::invalid_argument("cumulant order must be 2, 3 or 4");
}

void check_square_pair(const Eigen::MatrixXd& k, const Eigen::MatrixXd& l) {
  if (k.rows() != k.cols() || l.rows() != l.cols() || k.rows() != l.rows())
    throw std::invalid_argument("hsic moments need two square matrices of equal size");
  if (k.rows() < 6) throw std::invalid_argument("hsic needs at least 6 samples");
}

HsicMoments finish(double m, double cross, double var_sum, double off_k, double off_l) {
  HsicMoments h;
  h.statistic = cross / m;
  double var = var_sum / m / (m - 1.0);
  h.variance = 72.0 * (m - 4.0) * (m - 5.0) / m / (m - 1.0) / (m - 2.0) / (m - 3.0) * var;
  h.mu_x = off_k / m / (m - 1.0);
  h.mu_y = off_l / m / (m - 1.0);
  return h;
}

}  // namespace

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& widths) {
  if (widths.size() != x.cols()) throw std::invalid_argument("one kernel width per column");
  const Eigen::Index m = x.rows();
  Eigen::MatrixXd xs = x * widths.cwiseInverse().asDiagonal();
  Eigen::MatrixXd k(m, m);
  if (xs.cols() == 1) {
    const double* v = xs.data();
#pragma omp parallel for schedule(dynamic, 64)
    for (Eigen::Index j = 0; j < m; ++j) {
      double* col = k.col(j).data();
      const double vj = v[j];
      for (Eigen::Index i = 0; i < m; ++i) {
        const double d = v[i] - vj;
        col[i] = -0.5 * d * d;
      }
    }
  } else {
    Eigen::VectorXd sq = xs.rowwise().squaredNorm();
#pragma omp parallel for schedule(dynamic, 64)
    for (Eigen::Index j = 0; j < m; ++j) {
      Eigen::VectorXd dots = xs * xs.row(j).transpose();
      for (Eigen::Index i = 0; i < m; ++i)
        k(i, j) = -0.5 * std::max(sq(i) + sq(j) - 2.0 * dots(i), 0.0);
    }
  }
  k = k.array().exp();
  return k;
}

HsicMoments hsic_moments(const Eigen::MatrixXd& k, const Eigen::MatrixXd& l) {
  check_square_pair(k, l);
  const Eigen::Index m = k.rows();
  const double md = static_cast<double>(m);
  Eigen::VectorXd rk = k.colwise().sum().transpose() / md;
  Eigen::VectorXd rl = l.colwise().sum().transpose() / md;
  const double sk = rk.mean(), sl = rl.mean();
  std::vector<double> cross(m), var(m);
#pragma omp parallel for schedule(static)
  for (Eigen::Index j = 0; j < m; ++j) {
    const double* kc = k.col(j).data();
    const double* lc = l.col(j).data();
    const double ak = sk - rk(j), al = sl - rl(j);
    double c = 0.0, v = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      const double p = (kc[i] - rk(i) + ak) * (lc[i] - rl(i) + al);
      c += p;
      if (i != j) v += p * p;
    }
    cross[j] = c;
    var[j] = v / 36.0;
  }
  double cs = 0.0, vs = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    cs += cross[j];
    vs += var[j];
  }
  return finish(md, cs, vs, k.sum() - k.trace(), l.sum() - l.trace());
}

Eigen::MatrixXd cumulant_slice(const Eigen::MatrixXd& zc, const Eigen::MatrixXd& yc, int order) {
  check_order(order);
  if (zc.rows() != yc.rows()) throw std::invalid_argument("row count mismatch");
  const double m = static_cast<double>(zc.rows());
  Eigen::MatrixXd out(zc.cols(), yc.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < zc.cols(); ++i) {
    Eigen::VectorXd w = zc.col(i).array().pow(order - 1);
    out.row(i) = (w.transpose() * yc) / m;
    if (order == 4) {
      const double z2 = zc.col(i).squaredNorm() / m;
      out.row(i) -= 3.0 * z2 * (zc.col(i).transpose() * yc) / m;
    }
  }
  return out;
}

Eigen::MatrixXd cross_moment(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("row count mismatch");
  const double m = static_cast<double>(a.rows());
  Eigen::MatrixXd out(a.cols(), b.cols());
#pragma omp parallel for schedule(static)
  for (Eigen::Index i = 0; i < a.cols(); ++i) out.row(i) = (a.col(i).transpose() * b) / m;
  return out;
}

namespace serial {

Eigen::MatrixXd rbf_gram(const Eigen::MatrixXd& x, const Eigen::VectorXd& widths) {
  if (widths.size() != x.cols()) throw std::invalid_argument("one kernel width per column");
  const Eigen::Index m = x.rows();
  Eigen::MatrixXd k(m, m);
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      double s = 0.0;
      for (Eigen::Index c = 0; c < x.cols(); ++c) {
        const double d = (x(i, c) - x(j, c)) / widths(c);
        s += d * d;
      }
      k(i, j) = std::exp(-0.5 * s);
    }
  return k;
}

HsicMoments hsic_moments(const Eigen::MatrixXd& k, const Eigen::MatrixXd& l) {
  check_square_pair(k, l);
  const Eigen::Index m = k.rows();
  const double md = static_cast<double>(m);
  Eigen::MatrixXd h = Eigen::MatrixXd::Identity(m, m) - Eigen::MatrixXd::Constant(m, m, 1.0 / md);
  Eigen::MatrixXd kc = h * k * h;
  Eigen::MatrixXd lc = h * l * h;
  double cross = 0.0, var = 0.0, off_k = 0.0, off_l = 0.0;
  for (Eigen::Index i = 0; i < m; ++i)
    for (Eigen::Index j = 0; j < m; ++j) {
      const double p = kc(i, j) * lc(i, j);
      cross += p;
      if (i != j) {
        var += (p / 6.0) * (p / 6.0);
        off_k += k(i, j);
        off_l += l(i, j);
      }
    }
  return finish(md, cross, var, off_k, off_l);
}

Eigen::MatrixXd cumulant_slice(const Eigen::MatrixXd& zc, const Eigen::MatrixXd& yc, int order) {
  check_order(order);
  if (zc.rows() != yc.rows()) throw std::invalid_argument("row count mismatch");
  const Eigen::Index m = zc.rows();
  Eigen::MatrixXd out(zc.cols(), yc.cols());
  for (Eigen::Index i = 0; i < zc.cols(); ++i) {
    double z2 = 0.0;
    for (Eigen::Index s = 0; s < m; ++s) z2 += zc(s, i) * zc(s, i);
    z2 /= static_cast<double>(m);
    for (Eigen::Index j = 0; j < yc.cols(); ++j) {
      double acc = 0.0, zy = 0.0;
      for (Eigen::Index s = 0; s < m; ++s) {
        acc += std::pow(zc(s, i), order - 1) * yc(s, j);
        zy += zc(s, i) * yc(s, j);
      }
      acc /= static_cast<double>(m);
      zy /= static_cast<double>(m);
      out(i, j) = order == 4 ? acc - 3.0 * z2 * zy : acc;
    }
  }
  return out;
}

Eigen::MatrixXd cross_moment(const Eigen::MatrixXd& a, const Eigen::MatrixXd& b) {
  if (a.rows() != b.rows()) throw std::invalid_argument("row count mismatch");
  Eigen::MatrixXd out(a.cols(), b.cols());
  for (Eigen::Index i = 0; i < a.cols(); ++i)
    for (Eigen::Index j = 0; j < b.cols(); ++j) {
      double s = 0.0;
      for (Eigen::Index r = 0; r < a.rows(); ++r) s += a(r, i) * b(r, j);
      out(i, j) = s / static_cast<double>(a.rows());
    }
  return out;
}

}  // namespace serial
}  // namespace tin::kernels
