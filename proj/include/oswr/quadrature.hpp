#ifndef OSWR_QUADRATURE_HPP
#define OSWR_QUADRATURE_HPP

#include <array>

namespace oswr {

/// Gauss-Legendre nodes/weights on [0, 1].
struct GaussRule1D {
  const double* nodes;
  const double* weights;
  int n;
};

GaussRule1D gauss_rule(int points);  // points in {1, 2, 3}

/// Integrate g over [a, b] with an n-point Gauss rule.
template <typename F>
double integrate_interval(const F& g, double a, double b, int points) {
  const GaussRule1D r = gauss_rule(points);
  const double len = b - a;
  double acc = 0.0;
  for (int k = 0; k < r.n; ++k) acc += r.weights[k] * g(a + r.nodes[k] * len);
  return acc * len;
}

/// Integrate g(x, y) over the rectangle [x0, x0+hx] x [y0, y0+hy] with a
/// tensor Gauss rule.
template <typename F>
double integrate_cell(const F& g, double x0, double y0, double hx, double hy, int points) {
  const GaussRule1D r = gauss_rule(points);
  double acc = 0.0;
  for (int i = 0; i < r.n; ++i)
    for (int j = 0; j < r.n; ++j)
      acc += r.weights[i] * r.weights[j] * g(x0 + r.nodes[i] * hx, y0 + r.nodes[j] * hy);
  return acc * hx * hy;
}

}  // namespace oswr

#endif
