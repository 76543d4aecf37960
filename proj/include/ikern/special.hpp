#pragma once

#include "ikern/complex.hpp"
#include "ikern/errors.hpp"

namespace ikern {

/// Truncation policy for power series: stop once three consecutive terms,
/// each smaller than the last, fall below rel_tol times the partial sum.
struct SeriesControl {
    double rel_tol = 1e-24;
    int max_terms = 10000;
};

enum class SeriesRoute { direct, kummer, pfaff, connection };

struct SeriesResult {
    Complex value;
    double rel_error = 0.0;  // roundoff plus tail, relative to |value|
    double max_term = 0.0;   // largest |term| times any prefactor magnitude
    int terms = 0;
    SeriesRoute route = SeriesRoute::direct;
};

Complex ln_gamma(const Complex& z);
Complex gamma(const Complex& z);
double ln_gamma_real(double x);

/// Binet remainder r(z) in Gamma(z) = sqrt(2 pi) exp((z-1/2)log z - z)(1 + r(z)).
/// Requires Re z >= 0 and |z| >= floor.
Complex binet_r(const Complex& z, double floor = 1.0 / 16.0);
/// The exponent J(z) with r(z) = exp(J(z)) - 1.
Complex binet_log(const Complex& z, double floor = 1.0 / 16.0);
/// Gamma assembled from the Binet representation (cross-check route).
Complex gamma_binet(const Complex& z);

Complex pochhammer(const Complex& a, int m);

SeriesResult hyp1f2(const Complex& a, const Complex& b1, const Complex& b2, const Complex& z,
                    const SeriesControl& ctl = {});
SeriesResult hyp1f1(const Complex& a, const Complex& b, const Complex& z,
                    const SeriesControl& ctl = {});

/// Plain Gauss series; valid for |z| < 1 or when a or b terminates it.
SeriesResult gauss_series(const Complex& a, const Complex& b, const Complex& c, const Complex& z,
                          const SeriesControl& ctl = {});

enum class Hyp2f1Route { automatic, standard, direct, pfaff, connection };

/// 2F1(a, b; c; z) for real z <= 0. The standard route is the Gauss series on
/// (-1, 0] and the Pfaff transform below -1; automatic picks the route with
/// the smallest term growth, adding the 1/(1-z) connection formula.
SeriesResult hyp2f1(const Complex& a, const Complex& b, const Complex& c, double z,
                    const SeriesControl& ctl = {}, Hyp2f1Route route = Hyp2f1Route::automatic);

/// Terminating 2F1(-k; i tau + rho + 1/2; 1 + 2 i tau; 2).
Complex hyp2f1_term2(int k, double rho, double tau);

}  // namespace ikern
