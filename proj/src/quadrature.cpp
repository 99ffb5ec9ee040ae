#include "sshlab/quadrature.hpp"

#include <array>
#include <cmath>
#include <queue>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "sshlab/errors.hpp"

namespace sshlab {
namespace {

// Kronrod abscissae on [0, 1); odd indices are the Gauss-7 nodes.
constexpr std::array<double, 8> kNodes = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kKronrodWeights = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kGaussWeights = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
  double a;
  double b;
  double value;
  double error;
  bool operator<(const Segment& other) const { return error < other.error; }
};

Segment evaluate(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kKronrodWeights[7];
  double gauss = fc * kGaussWeights[3];
  for (std::size_t j = 0; j < 7; ++j) {
    const double dx = half * kNodes[j];
    const double pair = f(center - dx) + f(center + dx);
    kronrod += kKronrodWeights[j] * pair;
    if (j % 2 == 1) gauss += kGaussWeights[j / 2] * pair;
  }
  kronrod *= half;
  gauss *= half;
  return Segment{a, b, kronrod, std::abs(kronrod - gauss)};
}

}  // namespace

QuadratureResult integrate_panels(const std::function<double(double)>& f,
                                  std::span<const double> points, double abs_tol,
                                  std::size_t max_intervals) {
  if (points.size() < 2) throw std::invalid_argument("integrate: need at least one panel");
  std::priority_queue<Segment> heap;
  double total = 0.0;
  double error = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    if (!(points[i] < points[i + 1])) throw std::invalid_argument("integrate: panels must increase");
    Segment s = evaluate(f, points[i], points[i + 1]);
    total += s.value;
    error += s.error;
    heap.push(s);
  }

  while (error > abs_tol) {
    if (heap.size() >= max_intervals) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "quadrature tolerance " << abs_tol << " not reached: estimate " << total
          << " with error " << error << " after " << heap.size() << " intervals";
      throw ConvergenceError(msg.str());
    }
    const Segment worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      // Cannot bisect further in double precision; accept what we have.
      heap.push(Segment{worst.a, worst.b, worst.value, 0.0});
      error -= worst.error;
      continue;
    }
    const Segment left = evaluate(f, worst.a, mid);
    const Segment right = evaluate(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    error += left.error + right.error - worst.error;
    heap.push(left);
    heap.push(right);
  }

  // Re-sum from the leaves to drop accumulated update round-off.
  double value = 0.0;
  double err = 0.0;
  const std::size_t count = heap.size();
  while (!heap.empty()) {
    value += heap.top().value;
    err += heap.top().error;
    heap.pop();
  }
  return QuadratureResult{value, err, count};
}

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           double abs_tol, std::size_t max_intervals) {
  const std::array<double, 2> points{a, b};
  return integrate_panels(f, points, abs_tol, max_intervals);
}

}  // namespace sshlab
