#pragma once

#include <string>
#include <vector>

#include "ikern/kernels.hpp"

namespace ikern {

inline constexpr double kBoundSlack = 1e-9;

struct BoundReport {
    std::string bound_id;
    KernelPoint point;
    int n = 0;
    double lhs = 0.0;
    double rhs = 0.0;
    double margin = 0.0;  // rhs - lhs
    bool holds = false;
};

BoundReport make_report(std::string id, const KernelPoint& p, int n, double lhs, double rhs,
                        double slack = kBoundSlack);

// Right-hand sides of the uniform bounds.
double bound_kl_rhs(int n, double tau, double x);
double bound_mehler_fock_rhs(int n, double mu, double tau, double x);
double bound_product_rhs(double x);
/// Bound for |W_{-mu, i tau}(2x)|.
double bound_whittaker_rhs(int n, double mu, double tau, double x);
double bound_olevskii_rhs(double mu, double nu, double tau, double x);

BoundReport check_kl(int n, double tau, double x, double slack = kBoundSlack);
BoundReport check_mehler_fock(int n, double mu, double tau, double x, double slack = kBoundSlack);
BoundReport check_product(double tau, double x, double slack = kBoundSlack);
BoundReport check_whittaker(int n, double mu, double tau, double x, double slack = kBoundSlack);
BoundReport check_olevskii(double mu, double nu, double tau, double x, double slack = kBoundSlack);

/// |r(z)| <= e^{1/(6|z|)} - 1 for Re z >= 0.
BoundReport check_binet(double modulus, double arg, double slack = kBoundSlack);
/// |1F1(1/2 + rho + i tau; 1 + 2 i tau; -x)| against its majorant, 0 < x < 1.
double f11_estimate_rhs(double rho, double tau, double x);
BoundReport check_f11_estimate(double rho, double tau, double x, double slack = kBoundSlack);

struct LebedevFit {
    double T = 1.0;
    double A = 0.0, B = 0.0;
    double A_tau = 0.0, A_x = 0.0;  // argmax points
    double B_tau = 0.0, B_x = 0.0;
    double tau_min = 0.0, tau_max = 0.0;
    double xa_min = 0.0, xa_max = 0.0, xb_min = 0.0, xb_max = 0.0;
    int points = 0;
};

/// |K_{i tau}(x)| (tau x)^{1/4} sqrt(sinh(pi tau)); the quantity bounded by A.
double lebedev_weight_a(double tau, double x);
/// |K_{i tau}(x)| (tau/x)^{1/4} sqrt(sinh(pi tau)); the quantity bounded by B.
double lebedev_weight_b(double tau, double x);

/// Maxima of the two weights; xa covers (0, T], xb covers [T, cap].
LebedevFit fit_lebedev_constants(double T, const std::vector<double>& taus,
                                 const std::vector<double>& xa, const std::vector<double>& xb);

struct LebedevGrid {
    std::vector<double> taus, xa, xb;
};
/// n points per axis: tau linear on [0.25, 12], x log-spaced on [1e-3, T]
/// and linear on [T, 20]. With offset in (0, 1) each axis is shifted by that
/// fraction of a cell, which gives interior points disjoint from the base grid.
LebedevGrid lebedev_grid(double T, int n, double offset = 0.0);

}  // namespace ikern
