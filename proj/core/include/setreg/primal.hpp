#pragma once
#include <map>

#include "setreg/geometry.hpp"

namespace setreg {

// Brute-force primal constants. Verification fixtures for low dimensions
// (<= 3) and polyhedral sets; not production paths.

struct PrimalReport {
    std::map<double, double> theta_rho;
    double theta_hat = 0.0;
    double vartheta_hat = 0.0;
    double grid_resolution = 0.01;
};

// Largest grid radius r such that every grid tuple of translations with
// max ||a_i|| <= r keeps the translated intersection touching B_rho(xbar).
double theta_rho_bruteforce(const std::vector<SetDescriptor>& sets, const Vec& xbar, double rho,
                            double grid_resolution);

double theta_hat_estimate(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                          double grid_resolution = 0.01);

double vartheta_hat_estimate(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                             double grid_resolution = 0.01);

PrimalReport primal_report(const std::vector<SetDescriptor>& sets, const Vec& xbar,
                           double grid_resolution = 0.01);

}  // namespace setreg
