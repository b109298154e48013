#include "rsym/elliptic.hpp"

#include <cmath>
#include <stdexcept>

#include "rsym/errors.hpp"

namespace rsym {

DiffusionOperator DiffusionOperator::assemble(DomainPtr dom, const WeightProfile& w,
                                              const PotentialSplit& V) {
  DiffusionOperator op(std::move(dom));
  const RectilinearDomain& d = *op.dom_;
  const int n = d.node_count();
  const double h = d.hc();
  op.cw_.resize(n);
  op.ce_.resize(n);
  op.cs_.resize(n);
  op.cn_.resize(n);
  op.diag_.resize(n);
  op.west_.resize(n);
  op.east_.resize(n);
  op.south_.resize(n);
  op.north_.resize(n);

  const auto kappa = [&](double x, double y) {
    const double wv = w.value(x);
    const double k = wv * wv * std::exp(V.value(x, y));
    if (!(k > 0.0)) throw std::invalid_argument("assemble: nonpositive coefficient");
    return k;
  };

  for (int k = 0; k < n; ++k) {
    const auto [i, j] = d.node_coords(k);
    const double x = d.node_x(i);
    const double y = d.node_y(j);
    op.west_[k] = d.node_id(i - 1, j);
    op.east_[k] = d.node_id(i + 1, j);
    op.south_[k] = d.node_id(i, j - 1);
    op.north_[k] = d.node_id(i, j + 1);
    // boundary faces carry the Dirichlet value half a spacing away, which
    // doubles their transmissibility
    op.cw_[k] = kappa(x - 0.5 * h, y) * (op.west_[k] < 0 ? 2.0 : 1.0);
    op.ce_[k] = kappa(x + 0.5 * h, y) * (op.east_[k] < 0 ? 2.0 : 1.0);
    op.cs_[k] = kappa(x, y - 0.5 * h) * (op.south_[k] < 0 ? 2.0 : 1.0);
    op.cn_[k] = kappa(x, y + 0.5 * h) * (op.north_[k] < 0 ? 2.0 : 1.0);
    op.diag_[k] = op.cw_[k] + op.ce_[k] + op.cs_[k] + op.cn_[k];
  }
  return op;
}

void DiffusionOperator::apply(std::span<const double> x, std::span<double> y) const {
  const int n = size();
  for (int k = 0; k < n; ++k) {
    double acc = diag_[k] * x[k];
    if (west_[k] >= 0) acc -= cw_[k] * x[west_[k]];
    if (east_[k] >= 0) acc -= ce_[k] * x[east_[k]];
    if (south_[k] >= 0) acc -= cs_[k] * x[south_[k]];
    if (north_[k] >= 0) acc -= cn_[k] * x[north_[k]];
    y[k] = acc;
  }
}

GridField solve(const DiffusionOperator& op, const GridField& f,
                const PotentialSplit& V, const SolveOptions& opts, SolveStats* stats) {
  const RectilinearDomain& d = op.domain();
  if (&f.domain() != &d) throw ConsistencyError("solve: data lives on a different domain");
  const int n = op.size();
  const double h2 = d.hc() * d.hc();

  std::vector<double> b(n);
  for (int k = 0; k < n; ++k) {
    const auto [i, j] = d.node_coords(k);
    b[k] = f[k] * std::exp(V.value(d.node_x(i), d.node_y(j))) * h2;
  }

  const std::vector<double>& diag = op.diagonal();
  std::vector<double> x(n, 0.0), r(b), z(n), p(n), q(n);
  const auto dot = [n](const std::vector<double>& a, const std::vector<double>& c) {
    double s = 0.0;
    for (int k = 0; k < n; ++k) s += a[k] * c[k];
    return s;
  };

  for (int k = 0; k < n; ++k) z[k] = r[k] / diag[k];
  double rz = dot(r, z);
  const double norm0 = std::sqrt(std::abs(rz));
  std::vector<double> history{1.0};
  if (norm0 == 0.0) return GridField(op.domain_ptr(), std::move(x));  // f == 0
  p = z;

  int it = 0;
  double rel = 1.0;
  for (; it < opts.max_iterations; ++it) {
    op.apply(p, q);
    const double alpha = rz / dot(p, q);
    for (int k = 0; k < n; ++k) {
      x[k] += alpha * p[k];
      r[k] -= alpha * q[k];
    }
    for (int k = 0; k < n; ++k) z[k] = r[k] / diag[k];
    const double rz_next = dot(r, z);
    rel = std::sqrt(std::abs(rz_next)) / norm0;
    history.push_back(rel);
    if (rel <= opts.rel_tol) {
      rz = rz_next;
      ++it;
      break;
    }
    const double beta = rz_next / rz;
    rz = rz_next;
    for (int k = 0; k < n; ++k) p[k] = z[k] + beta * p[k];
  }
  if (rel > opts.rel_tol)
    throw SolverError("conjugate gradients did not converge", std::move(history));
  if (stats) {
    stats->iterations = it;
    stats->rel_residual = rel;
  }
  return GridField(op.domain_ptr(), std::move(x));
}

double gradient_qnorm(const GridField& u, const WeightProfile& w,
                      const PotentialSplit& V, double q) {
  if (!(q > 0.0) || q > 2.0)
    throw std::invalid_argument("gradient_qnorm: q must lie in (0, 2]");
  const RectilinearDomain& d = u.domain();
  const double h = d.hc();
  const double h2 = h * h;
  double total = 0.0;
  for (int k = 0; k < d.node_count(); ++k) {
    const auto [i, j] = d.node_coords(k);
    const double gx = (u.at(i + 1, j) - u.at(i - 1, j)) / (2.0 * h);
    const double gy = (u.at(i, j + 1) - u.at(i, j - 1)) / (2.0 * h);
    const double grad = std::hypot(gx, gy);
    if (grad == 0.0) continue;
    const double x = d.node_x(i);
    total += std::pow(grad * w.value(x), q) *
             std::exp(V.value(x, d.node_y(j))) * h2;
  }
  return total;
}

MassFunction to_mass_function(const GridField& u, const PotentialSplit& V) {
  const RectilinearDomain& d = u.domain();
  const double h2 = d.hc() * d.hc();
  std::vector<MassFunction::Cell> cells;
  cells.reserve(d.node_count());
  for (int k = 0; k < d.node_count(); ++k) {
    const auto [i, j] = d.node_coords(k);
    cells.push_back({std::abs(u[k]),
                     std::exp(V.value(d.node_x(i), d.node_y(j))) * h2});
  }
  return MassFunction(std::move(cells));
}

}  // namespace rsym
