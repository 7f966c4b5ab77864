#include "conecheck/spectral/expm.hpp"

#include <array>
#include <cmath>

#include "conecheck/core/errors.hpp"

namespace conecheck::spectral {

namespace {

using Mat = Eigen::MatrixXcd;

constexpr std::array<double, 4> kB3 = {120.0, 60.0, 12.0, 1.0};
constexpr std::array<double, 6> kB5 = {30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0};
constexpr std::array<double, 8> kB7 = {17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0};
constexpr std::array<double, 10> kB9 = {17643225600.0, 8821612800.0, 2075673600.0, 302702400.0, 30270240.0,
                                        2162160.0,     110880.0,     3960.0,       90.0,        1.0};
constexpr std::array<double, 14> kB13 = {64764752532480000.0, 32382376266240000.0, 7771770303897600.0,
                                         1187353796428800.0,  129060195264000.0,   10559470521600.0,
                                         670442572800.0,      33522128640.0,       1323241920.0,
                                         40840800.0,          960960.0,            16380.0,
                                         182.0,               1.0};

constexpr double kTheta3 = 1.495585217958292e-2;
constexpr double kTheta5 = 2.539398330063230e-1;
constexpr double kTheta7 = 9.504178996162932e-1;
constexpr double kTheta9 = 2.097847961257068e0;
constexpr double kTheta13 = 5.371920351148152e0;

double norm1(const Mat& M) { return M.cwiseAbs().colwise().sum().maxCoeff(); }

template <std::size_t K>
Mat pade_low(const Mat& A, const std::array<double, K>& b) {
  const auto n = A.rows();
  const Mat I = Mat::Identity(n, n);
  const Mat A2 = A * A;
  Mat power = I;
  Mat u = Mat::Zero(n, n);
  Mat v = Mat::Zero(n, n);
  for (std::size_t j = 0; j < K; j += 2) {
    v += b[j] * power;
    if (j + 1 < K) u += b[j + 1] * power;
    power = power * A2;
  }
  u = A * u;
  return (v - u).partialPivLu().solve(v + u);
}

Mat pade13(const Mat& A) {
  const auto n = A.rows();
  const Mat I = Mat::Identity(n, n);
  const Mat A2 = A * A;
  const Mat A4 = A2 * A2;
  const Mat A6 = A4 * A2;
  const auto& b = kB13;
  const Mat u = A * (A6 * (b[13] * A6 + b[11] * A4 + b[9] * A2) + b[7] * A6 + b[5] * A4 + b[3] * A2 + b[1] * I);
  const Mat v = A6 * (b[12] * A6 + b[10] * A4 + b[8] * A2) + b[6] * A6 + b[4] * A4 + b[2] * A2 + b[0] * I;
  return (v - u).partialPivLu().solve(v + u);
}

}  // namespace

Eigen::MatrixXcd expm(const Eigen::MatrixXcd& M) {
  if (M.rows() != M.cols()) throw DimensionError("expm needs a square matrix");
  const double nrm = norm1(M);
  if (!std::isfinite(nrm)) throw NumericalError("expm: non-finite matrix entries");

  Mat out;
  if (nrm <= kTheta3) {
    out = pade_low(M, kB3);
  } else if (nrm <= kTheta5) {
    out = pade_low(M, kB5);
  } else if (nrm <= kTheta7) {
    out = pade_low(M, kB7);
  } else if (nrm <= kTheta9) {
    out = pade_low(M, kB9);
  } else {
    const int s = std::max(0, static_cast<int>(std::ceil(std::log2(nrm / kTheta13))));
    out = pade13(M * std::ldexp(1.0, -s));
    for (int i = 0; i < s; ++i) out = out * out;
  }
  if (!out.allFinite()) throw NumericalError("expm: non-finite result (reduce dt or grid resolution)");
  return out;
}

}  // namespace conecheck::spectral
