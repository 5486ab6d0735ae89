#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace focklab {

using cplx = std::complex<double>;

// A sampled one-parameter scan: values y_i tabulated against a real
// parameter x_i (truncation degree, ray coordinate, |z|, ...).
struct ScanSeries {
    std::vector<double> parameter;
    std::vector<double> value;

    std::size_t size() const { return parameter.size(); }

    std::size_t argmax() const {
        if (value.empty()) throw std::logic_error("ScanSeries::argmax: empty series");
        std::size_t best = 0;
        for (std::size_t i = 1; i < value.size(); ++i)
            if (value[i] > value[best]) best = i;
        return best;
    }

    double supremum() const { return value[argmax()]; }
};

// Least-squares line fit y ~ intercept + slope*x over a window of a scan.
struct GrowthFit {
    std::vector<double> parameter;  // abscissae used in the fit
    std::vector<double> value;      // ordinates used in the fit (e.g. log|S|)
    double slope = 0.0;
    double intercept = 0.0;
    double max_abs_residual = 0.0;
};

// Fit y = intercept + slope*x by least squares; requires >= 2 distinct x.
GrowthFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace focklab
