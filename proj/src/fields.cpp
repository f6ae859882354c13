#include "helmlab/fields.hpp"

#include <cmath>
#include <stdexcept>

namespace helmlab {

namespace {

// Degree-7 smoothstep on [0,1]: s' = 140 u^3 (1-u)^3, C^3 at both ends.
double s7(double u) { return u * u * u * u * (35.0 + u * (-84.0 + u * (70.0 - 20.0 * u))); }
double s7d1(double u) {
  const double a = u * (1.0 - u);
  return 140.0 * a * a * a;
}
double s7d2(double u) { return u * u * (420.0 + u * (-1680.0 + u * (2100.0 - 840.0 * u))); }
double s7d3(double u) { return u * (840.0 + u * (-5040.0 + u * (8400.0 - 4200.0 * u))); }

}  // namespace

double smoothstep(double t, double lo, double hi) {
  if (t <= lo) return 0.0;
  if (t >= hi) return 1.0;
  return s7((t - lo) / (hi - lo));
}
double smoothstep_d1(double t, double lo, double hi) {
  if (t <= lo || t >= hi) return 0.0;
  const double w = hi - lo;
  return s7d1((t - lo) / w) / w;
}
double smoothstep_d2(double t, double lo, double hi) {
  if (t <= lo || t >= hi) return 0.0;
  const double w = hi - lo;
  return s7d2((t - lo) / w) / (w * w);
}
double smoothstep_d3(double t, double lo, double hi) {
  if (t <= lo || t >= hi) return 0.0;
  const double w = hi - lo;
  return s7d3((t - lo) / w) / (w * w * w);
}

PointD MagneticPotential::total(const PointD& x) const {
  PointD a = A ? A(x) : PointD(PointD::Zero(x.size()));
  if (grad_chi) a += grad_chi(x);
  return a;
}

int MagneticField::pack(int k, int j, int d) {
  return k * d - k * (k + 1) / 2 + (j - k - 1);
}

double MagneticField::component(Index node, int k, int j) const {
  if (k == j) return 0.0;
  if (k < j) return B(node, pack(k, j, d));
  return -B(node, pack(j, k, d));
}

MagneticField compute_b(const MagneticPotential& A, const Grid& grid) {
  const int d = grid.dim();
  const Index N = grid.size();
  const int npairs = d * (d - 1) / 2;
  MagneticField field;
  field.d = d;
  field.B.setZero(N, npairs);
  field.Btau.setZero(N, d);
  field.Bnorm.setZero(N);

  if (A.has_jacobian()) {
    // Analytic route. A pure gauge part has a symmetric Jacobian, so it drops
    // out of B exactly and is not evaluated at all.
    for (Index i = 0; i < N; ++i) {
      const PointD x = grid.point(i);
      const Eigen::MatrixXd DA = A.DA(x);
      for (int k = 0; k < d; ++k)
        for (int j = k + 1; j < d; ++j)
          field.B(i, MagneticField::pack(k, j, d)) = DA(k, j) - DA(j, k);
    }
  } else {
    // Finite differences of the sampled total potential, central in the
    // interior and one-sided at the box boundary.
    MatD An(N, d);
    for (Index i = 0; i < N; ++i) An.row(i) = A.total(grid.point(i)).transpose();
    const double h = grid.spacing();
    for (Index i = 0; i < N; ++i) {
      double DA[8][8];
      for (int comp = 0; comp < d; ++comp) {
        for (int ax = 0; ax < d; ++ax) {
          const Index ip = grid.neighbor(i, ax, +1);
          const Index im = grid.neighbor(i, ax, -1);
          if (ip >= 0 && im >= 0)
            DA[comp][ax] = (An(ip, comp) - An(im, comp)) / (2.0 * h);
          else if (ip >= 0)
            DA[comp][ax] = (An(ip, comp) - An(i, comp)) / h;
          else
            DA[comp][ax] = (An(i, comp) - An(im, comp)) / h;
        }
      }
      for (int k = 0; k < d; ++k)
        for (int j = k + 1; j < d; ++j)
          field.B(i, MagneticField::pack(k, j, d)) = DA[k][j] - DA[j][k];
    }
  }

  const VecD& r = grid.radii();
  for (Index i = 0; i < N; ++i) {
    const PointD x = grid.point(i);
    for (int j = 0; j < d; ++j) {
      double s = 0.0;
      for (int k = 0; k < d; ++k) s += (x[k] / r[i]) * field.component(i, k, j);
      field.Btau(i, j) = s;
    }
    field.Bnorm[i] = field.B.row(i).norm();
  }
  return field;
}

FieldSet sample_fields(const Grid& grid, const MagneticPotential& A,
                       const ElectricPotential& V,
                       const AssumptionConstants& constants) {
  const int d = grid.dim();
  const Index N = grid.size();
  const double h = grid.spacing();
  FieldSet fs;
  fs.A = A;
  fs.V = V;
  fs.constants = constants;

  fs.A_nodes.setZero(N, d);
  fs.V1_nodes.setZero(N);
  fs.V2_nodes.setZero(N);
  fs.dV1r_nodes.setZero(N);
  fs.link_phase.setZero(N, d);

  for (Index i = 0; i < N; ++i) {
    const PointD x = grid.point(i);
    fs.A_nodes.row(i) = A.total(x).transpose();
    if (V.V1) fs.V1_nodes[i] = V.V1(x);
    if (V.V2) fs.V2_nodes[i] = V.V2(x);
    if (V.dV1_dr) fs.dV1r_nodes[i] = V.dV1_dr(x);
  }

  // Link phases: midpoint rule for the base potential, exact endpoint
  // difference for the gauge part.
  for (Index i = 0; i < N; ++i) {
    const PointD x = grid.point(i);
    for (int a = 0; a < d; ++a) {
      if (grid.neighbor(i, a, +1) < 0) continue;
      PointD mid = x;
      mid[a] += 0.5 * h;
      double theta = A.A ? h * A.A(mid)[a] : 0.0;
      if (A.chi) {
        PointD xp = x;
        xp[a] += h;
        theta += A.chi(xp) - A.chi(x);
      }
      fs.link_phase(i, a) = theta;
    }
  }

  fs.B = compute_b(A, grid);

  // div A: trace of the analytic Jacobian when available (plus nothing from a
  // gauge part only when chi is absent), otherwise finite differences.
  fs.divA_nodes.setZero(N);
  if (A.has_jacobian() && !A.has_gauge_part()) {
    for (Index i = 0; i < N; ++i) fs.divA_nodes[i] = A.DA(grid.point(i)).trace();
  } else if (A.A || A.has_gauge_part()) {
    for (Index i = 0; i < N; ++i) {
      double div = 0.0;
      for (int a = 0; a < d; ++a) {
        const Index ip = grid.neighbor(i, a, +1);
        const Index im = grid.neighbor(i, a, -1);
        if (ip >= 0 && im >= 0)
          div += (fs.A_nodes(ip, a) - fs.A_nodes(im, a)) / (2.0 * h);
        else if (ip >= 0)
          div += (fs.A_nodes(ip, a) - fs.A_nodes(i, a)) / h;
        else
          div += (fs.A_nodes(i, a) - fs.A_nodes(im, a)) / h;
      }
      fs.divA_nodes[i] = div;
    }
  }
  return fs;
}

std::string AssumptionReport::failed_conditions() const {
  std::string out;
  auto add = [&out](const char* name) {
    if (!out.empty()) out += ", ";
    out += name;
  };
  if (!far_ok) add("far-decay (V1/Btau/V2 beyond r0)");
  if (!v2_near_ok) add("V2 singularity at origin");
  if (!b_near_ok) add("B singularity at origin (Btau decay)");
  if (!div_ok) add("div A bound");
  if (!v1_zero_ok) add("V1 support (must vanish inside r0)");
  return out;
}

namespace {

// Gaussian probes for the local magnetic L2 bound; returns the largest ratio
// of int_{|x|<=L/2} |A u|^2 to int |grad u|^2 over the probe set.
double extra_condition_probe(const FieldSet& fs, const Grid& grid) {
  const Index N = grid.size();
  const double L = grid.half_width();
  const double h = grid.spacing();
  const VecD& r = grid.radii();
  double worst = 0.0;
  const double widths[3] = {L / 6.0, L / 3.0, L / 2.0};
  for (double w : widths) {
    VecD u(N);
    for (Index i = 0; i < N; ++i) u[i] = std::exp(-0.5 * r[i] * r[i] / (w * w));
    double num = 0.0, den = 0.0;
    for (Index i = 0; i < N; ++i) {
      if (r[i] <= 0.5 * L)
        num += fs.A_nodes.row(i).squaredNorm() * u[i] * u[i];
      double g2 = 0.0;
      for (int a = 0; a < grid.dim(); ++a) {
        const Index ip = grid.neighbor(i, a, +1);
        const Index im = grid.neighbor(i, a, -1);
        const double up = ip >= 0 ? u[ip] : 0.0;
        const double um = im >= 0 ? u[im] : 0.0;
        const double g = (up - um) / (2.0 * h);
        g2 += g * g;
      }
      den += g2;
    }
    if (den > 0.0) worst = std::max(worst, num / den);
  }
  return worst;
}

}  // namespace

AssumptionReport validate_assumptions(const FieldSet& fields, const Grid& grid) {
  const AssumptionConstants& cst = fields.constants;
  const VecD& r = grid.radii();
  const Index N = grid.size();
  AssumptionReport rep;
  for (Index i = 0; i < N; ++i) {
    const double ri = r[i];
    const double v1 = std::abs(fields.V1_nodes[i]);
    const double v2 = std::abs(fields.V2_nodes[i]);
    const double dv1neg = std::max(0.0, -fields.dV1r_nodes[i]);
    const double btau = fields.B.Btau.row(i).norm();
    if (ri >= cst.r0) {
      const double q = std::pow(ri, 1.0 + cst.mu) * (v1 / ri + dv1neg + btau + v2);
      rep.q_far = std::max(rep.q_far, q);
    } else {
      rep.v1_near_max = std::max(rep.v1_near_max, std::max(v1, dv1neg));
      rep.q_v2_near = std::max(rep.q_v2_near, std::pow(ri, 2.0 - cst.alpha) * v2);
      const double bex = grid.dim() > 3 ? 2.0 : 2.0 - cst.alpha;
      rep.q_b_near = std::max(rep.q_b_near, std::pow(ri, bex) * fields.B.Bnorm[i]);
    }
    rep.q_div_a = std::max(rep.q_div_a, ri * ri * std::abs(fields.divA_nodes[i]));
  }
  rep.c_extra = extra_condition_probe(fields, grid);

  rep.far_ok = rep.q_far <= cst.c;
  rep.v2_near_ok = rep.q_v2_near <= cst.c;
  rep.b_near_ok = rep.q_b_near <= (grid.dim() > 3 ? cst.cstar : cst.c);
  rep.div_ok = !(rep.q_div_a > cst.c_div);
  rep.v1_zero_ok = rep.v1_near_max == 0.0;
  return rep;
}

MagneticPotential gauge_transform(const MagneticPotential& A, ScalarEval chi,
                                  VectorEval grad_chi) {
  if (!chi || !grad_chi)
    throw std::invalid_argument("gauge_transform: chi and grad_chi required");
  MagneticPotential out = A;
  out.family = A.family + "+gauge";
  if (A.chi) {
    ScalarEval base_chi = A.chi;
    VectorEval base_grad = A.grad_chi;
    out.chi = [base_chi, chi](const PointD& x) { return base_chi(x) + chi(x); };
    out.grad_chi = [base_grad, grad_chi](const PointD& x) {
      return PointD(base_grad(x) + grad_chi(x));
    };
  } else {
    out.chi = std::move(chi);
    out.grad_chi = std::move(grad_chi);
  }
  return out;
}

// ---- Built-in families ------------------------------------------------

MagneticPotential make_zero_potential() {
  MagneticPotential p;
  p.family = "zero";
  p.A = [](const PointD& x) { return PointD(PointD::Zero(x.size())); };
  p.DA = [](const PointD& x) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Zero(x.size(), x.size()));
  };
  return p;
}

MagneticPotential make_constant_field(double a) {
  MagneticPotential p;
  p.family = "constant";
  p.A = [a](const PointD& x) {
    PointD v = PointD::Zero(x.size());
    v[0] = -a * x[1];
    v[1] = a * x[0];
    return v;
  };
  p.DA = [a](const PointD& x) {
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(x.size(), x.size());
    J(0, 1) = -a;
    J(1, 0) = a;
    return J;
  };
  return p;
}

MagneticPotential make_pure_gauge(double a) {
  MagneticPotential p;
  p.family = "gauge";
  p.A = [](const PointD& x) { return PointD(PointD::Zero(x.size())); };
  p.DA = [](const PointD& x) {
    return Eigen::MatrixXd(Eigen::MatrixXd::Zero(x.size(), x.size()));
  };
  p.chi = [a](const PointD& x) { return a * x[0] * x[1]; };
  p.grad_chi = [a](const PointD& x) {
    PointD v = PointD::Zero(x.size());
    v[0] = a * x[1];
    v[1] = a * x[0];
    return v;
  };
  return p;
}

MagneticPotential make_azimuthal_singular(double a) {
  MagneticPotential p;
  p.family = "azimuthal";
  p.A = [a](const PointD& x) {
    const double r2 = x.squaredNorm();
    PointD v = PointD::Zero(x.size());
    v[0] = -a * x[1] / r2;
    v[1] = a * x[0] / r2;
    return v;
  };
  p.DA = [a](const PointD& x) {
    const int d = static_cast<int>(x.size());
    const double r2 = x.squaredNorm();
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(d, d);
    // A_0 = -a x1 / r^2, A_1 = a x0 / r^2
    for (int j = 0; j < d; ++j) {
      J(0, j) = -a * ((j == 1 ? 1.0 : 0.0) / r2 - 2.0 * x[1] * x[j] / (r2 * r2));
      J(1, j) = a * ((j == 0 ? 1.0 : 0.0) / r2 - 2.0 * x[0] * x[j] / (r2 * r2));
    }
    return J;
  };
  return p;
}

ElectricPotential make_zero_electric() {
  ElectricPotential v;
  v.family_v1 = "zero";
  v.family_v2 = "zero";
  return v;
}

ElectricPotential make_v1_long_range(double vho, double mu, double r0) {
  ElectricPotential v;
  v.family_v1 = "longrange";
  v.V1 = [vho, mu, r0](const PointD& x) {
    const double r = x.norm();
    return vho * std::pow(1.0 + r, -mu) * smoothstep(r / r0, 1.0, 2.0);
  };
  v.dV1_dr = [vho, mu, r0](const PointD& x) {
    const double r = x.norm();
    const double th = smoothstep(r / r0, 1.0, 2.0);
    const double dth = smoothstep_d1(r / r0, 1.0, 2.0) / r0;
    return vho * (-mu * std::pow(1.0 + r, -mu - 1.0) * th +
                  std::pow(1.0 + r, -mu) * dth);
  };
  return v;
}

ElectricPotential make_v2_short_range(double c, double mu) {
  ElectricPotential v;
  v.family_v2 = "shortrange";
  v.V2 = [c, mu](const PointD& x) {
    return c * std::pow(1.0 + x.norm(), -1.0 - mu);
  };
  return v;
}

ElectricPotential make_v2_singular(double c, double alpha, double r0) {
  ElectricPotential v;
  v.family_v2 = "singular";
  v.V2 = [c, alpha, r0](const PointD& x) {
    const double r = x.norm();
    return r <= r0 ? c * std::pow(r, alpha - 2.0) : 0.0;
  };
  return v;
}

ElectricPotential combine_electric(const ElectricPotential& v1_part,
                                   const ElectricPotential& v2_part) {
  ElectricPotential v;
  v.family_v1 = v1_part.family_v1;
  v.family_v2 = v2_part.family_v2;
  v.V1 = v1_part.V1;
  v.dV1_dr = v1_part.dV1_dr;
  v.V2 = v2_part.V2;
  return v;
}

}  // namespace helmlab
