#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace lyap {

struct QuadratureConfig {
    double max_t = 0.0;        // 0: chosen from the integrand's decay
    int nodes_per_unit = 8;    // finite: h <= 1/nodes_per_unit; soft: h = delta/nodes_per_unit
    double contour_shift = 0;  // soft only; 0: automatic
    double tol = 1e-10;
    bool check_contour = false;  // soft only: re-evaluate at delta/2 and 2 delta

    void validate() const;
};

struct BulkKernelParams {
    double a = 1.0;
    double p = 0.5;
    double delta_p = 0.5;

    double ap() const { return a * p; }
    void validate() const;
};

struct SoftKernelParams {
    double a = 1.0;
};

struct DensityCurve {
    std::vector<double> xs;
    std::vector<double> values;
    std::string label;
    std::map<std::string, std::string> meta;

    void validate(double tol = 1e-8) const;
};

DensityCurve tabulate(std::string label, const std::vector<double>& xs, const std::function<double(double)>& f);
std::vector<double> linear_grid(double lo, double hi, int count);

// Finite (N, M). log_y = log y keeps y = exp(2 M lambda) in range.
double finite_G_log(int j, double log_y, int n, int m, const QuadratureConfig& quad = {});
double finite_G(int j, double y, int n, int m, const QuadratureConfig& quad = {});
double finite_kernel(double x, double y, int n, int m, const QuadratureConfig& quad = {});
// Kernel of the exponents: 2M exp(2M lx) K(exp(2M lx), exp(2M ly)).
double finite_kernel_lambda(double lx, double ly, int n, int m, const QuadratureConfig& quad = {});
double finite_density(double lambda, int n, int m, const QuadratureConfig& quad = {});

// Bulk interpolating kernel: erfi sum and Poisson-resummed forms.
double bulk_kernel_sum(double xi, double zeta, const BulkKernelParams& params, double tol = 1e-13);
double bulk_kernel_poisson(double xi, double zeta, const BulkKernelParams& params, double tol = 1e-13);
double bulk_density(double xi, const BulkKernelParams& params);
// Same density with the product a*p given directly.
double bulk_density_ap(double xi, double ap);
double delta_p(int n, double p, double a);

double sine_kernel(double xi, double zeta);
double picket_comb_density(double xi, double ap);

double soft_edge_position_log(int n, int m);
double soft_kernel(double xi, double zeta, const SoftKernelParams& params, const QuadratureConfig& quad = {});
double soft_density(double xi, const SoftKernelParams& params, const QuadratureConfig& quad = {});
// Contour shift used when QuadratureConfig::contour_shift is 0.
double soft_default_shift(double zeta, double a);

double airy_kernel(double xi, double zeta);
double airy_density(double xi);

}  // namespace lyap
