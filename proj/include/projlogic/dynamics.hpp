// Copyright 2026 The projlogic Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/**
 * @file
 * Schrödinger evolution p(t) = U_t p U_t^† against the Hamiltonian flow
 * dp/dt = X_{f_H}(p) = -i[H, p] integrated with RK4, and transport of
 * Liouville densities.
 */

#pragma once

#include "projlogic/phase_space_measure.hpp"

#include <cmath>
#include <span>
#include <vector>

namespace projlogic {

struct FlowResult {
    std::vector<double> times;
    std::vector<ProjectivePoint> trajectory;
    std::vector<double> defect_series;  // unitarity defect (exact) or projection defect (RK4)
};

/// U_t = exp(-i t H) from the spectral decomposition of H.
class Propagator {
  public:
    explicit Propagator(const HermitianOperator& h) : es_(h.matrix()) {
        if (es_.info() != Eigen::Success) {
            throw Error("Propagator: eigendecomposition failed");
        }
    }

    Matrix at(double t) const {
        const Index n = es_.eigenvalues().size();
        Vector phases(n);
        for (Index k = 0; k < n; ++k) {
            phases(k) = std::exp(-kI * t * es_.eigenvalues()(k));
        }
        return es_.eigenvectors() * phases.asDiagonal() * es_.eigenvectors().adjoint();
    }

  private:
    Eigen::SelfAdjointEigenSolver<Matrix> es_;
};

inline double unitarity_defect(const Matrix& u) {
    return max_abs(u * u.adjoint() - Matrix::Identity(u.rows(), u.cols()));
}

inline double operator_norm(const HermitianOperator& h) {
    const RealVector ev = h.eigenvalues();
    return std::max(std::abs(ev.minCoeff()), std::abs(ev.maxCoeff()));
}

namespace detail {
inline void require_time_grid(std::span<const double> t_grid) {
    if (t_grid.empty()) {
        throw InvalidArgument("flow: empty time grid");
    }
    for (std::size_t k = 0; k < t_grid.size(); ++k) {
        if (!(t_grid[k] >= 0.0) || (k > 0 && t_grid[k] < t_grid[k - 1])) {
            throw InvalidArgument("flow: time grid must be non-negative and ascending");
        }
    }
}
}  // namespace detail

/// Exact evolution on the given time grid.
inline FlowResult schrodinger_flow(const HermitianOperator& h, const ProjectivePoint& p0,
                                   std::span<const double> t_grid, const Tolerances& tol = tolerances()) {
    require_same_dim(h.dim(), p0.dim(), "schrodinger_flow");
    detail::require_time_grid(t_grid);
    const Propagator prop(h);
    FlowResult out;
    for (double t : t_grid) {
        const Matrix u = prop.at(t);
        const double defect = unitarity_defect(u);
        if (defect > 1e3 * tol.herm) {
            throw CertificationError("schrodinger_flow: propagator not unitary, defect " + std::to_string(defect));
        }
        out.times.push_back(t);
        out.trajectory.push_back(ProjectivePoint::from_vector(u * p0.ray()));
        out.defect_series.push_back(defect);
    }
    return out;
}

/**
 * Classic RK4 on dp/dt = -i[H, p] with re-projection to the dominant
 * eigenvector after every step. Requires dt <= 1e-2 / ||H||; a step whose
 * projection defect exceeds tol.flow_projection is rejected.
 */
inline FlowResult hamilton_flow(const HermitianOperator& h, const ProjectivePoint& p0, std::span<const double> t_grid,
                                double dt, const Tolerances& tol = tolerances()) {
    require_same_dim(h.dim(), p0.dim(), "hamilton_flow");
    detail::require_time_grid(t_grid);
    const double hnorm = operator_norm(h);
    if (!(dt > 0.0) || dt * hnorm > 1e-2 * (1.0 + 1e-12)) {
        throw InvalidArgument("hamilton_flow: need 0 < dt <= 1e-2 / ||H||");
    }
    const Matrix& hm = h.matrix();
    auto rhs = [&](const Matrix& m) -> Matrix { return -kI * commutator(hm, m); };

    FlowResult out;
    ProjectivePoint p = p0;
    double t = 0.0;
    double step_defect = 0.0;
    for (double target : t_grid) {
        while (t < target) {
            const double step = std::min(dt, target - t);
            const Matrix& m = p.matrix();
            const Matrix k1 = rhs(m);
            const Matrix k2 = rhs(m + 0.5 * step * k1);
            const Matrix k3 = rhs(m + 0.5 * step * k2);
            const Matrix k4 = rhs(m + step * k3);
            const Matrix next = m + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            p = nearest_point(next);
            const double defect = max_abs(next - p.matrix());
            if (defect > tol.flow_projection) {
                throw CertificationError("hamilton_flow: step rejected, projection defect " + std::to_string(defect));
            }
            step_defect = std::max(step_defect, defect);
            // Snap to the grid point to avoid accumulating rounding in t.
            t = (target - t <= dt) ? target : t + step;
        }
        out.times.push_back(target);
        out.trajectory.push_back(p);
        out.defect_series.push_back(step_defect);
        step_defect = 0.0;
    }
    return out;
}

/// max_t ||p_a(t) - p_b(t)|| (entrywise max norm) over two flows on the same grid.
inline double max_trajectory_deviation(const FlowResult& a, const FlowResult& b) {
    if (a.trajectory.size() != b.trajectory.size()) {
        throw InvalidArgument("max_trajectory_deviation: grids differ");
    }
    double worst = 0.0;
    for (std::size_t k = 0; k < a.trajectory.size(); ++k) {
        worst = std::max(worst, max_abs(a.trajectory[k].matrix() - b.trajectory[k].matrix()));
    }
    return worst;
}

/// max_p |rho_{sigma_t}(p) - rho_{sigma_0}(U_t^† p U_t)| over the probes.
inline double liouville_transport_check(const DensityMatrix& sigma0, const HermitianOperator& h, double t,
                                        std::span<const ProjectivePoint> probes) {
    require_same_dim(sigma0.dim(), h.dim(), "liouville_transport_check");
    const Matrix u = Propagator(h).at(t);
    Matrix evolved = u * sigma0.matrix() * u.adjoint();
    evolved = (evolved + evolved.adjoint()) * 0.5;
    const LiouvilleDensity rho_t(DensityMatrix::from_matrix(evolved));
    const LiouvilleDensity rho_0(sigma0);
    double worst = 0.0;
    for (const auto& p : probes) {
        const ProjectivePoint pulled = ProjectivePoint::from_vector(u.adjoint() * p.ray());
        worst = std::max(worst, std::abs(rho_t(p) - rho_0(pulled)));
    }
    return worst;
}

}  // namespace projlogic
