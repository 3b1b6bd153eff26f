// SPDX-License-Identifier: Apache-2.0
//
// thzris: simulation and optimization toolkit for RIS-assisted THz MIMO links
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------


// Shared helpers for the unit tests: seeded random instances and reference
// implementations written without the library's vectorized paths.

#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "thzris/numerics.hpp"
#include "thzris/rng.hpp"

namespace thzris::testing {

inline ComplexMatrix random_matrix(Rng &rng, Eigen::Index rows, Eigen::Index cols)
{
    ComplexMatrix m(rows, cols);
    for (Eigen::Index j = 0; j < cols; ++j)
        for (Eigen::Index i = 0; i < rows; ++i)
            m(i, j) = rng.complex_normal();
    return m;
}

inline std::vector<double> random_phases(Rng &rng, std::size_t n)
{
    std::vector<double> p(n);
    for (auto &x : p)
        x = rng.uniform(0.0, kTwoPi);
    return p;
}

// H2 diag(mu e^{j phi}) H1 by explicit triple loop.
inline ComplexMatrix cascade_loop(const ComplexMatrix &h1, const std::vector<double> &phi, double mu,
                                  const ComplexMatrix &h2)
{
    ComplexMatrix out = ComplexMatrix::Zero(h2.rows(), h1.cols());
    for (Eigen::Index i = 0; i < h2.rows(); ++i)
        for (Eigen::Index j = 0; j < h1.cols(); ++j)
            for (Eigen::Index n = 0; n < h1.rows(); ++n)
                out(i, j) += h2(i, n) * std::polar(mu, phi[static_cast<std::size_t>(n)]) * h1(n, j);
    return out;
}

inline double frob2_loop(const ComplexMatrix &m)
{
    double s = 0.0;
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j)
            s += std::norm(m(i, j));
    return s;
}

inline double rel_err(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// All index tuples of `n` digits in base `k`, visited as an odometer.
template <class F>
void for_each_tuple(int n, int k, F &&f)
{
    std::vector<int> idx(static_cast<std::size_t>(n), 0);
    for (;;) {
        f(idx);
        int d = 0;
        while (d < n && ++idx[static_cast<std::size_t>(d)] == k)
            idx[static_cast<std::size_t>(d++)] = 0;
        if (d == n)
            return;
    }
}

} // namespace thzris::testing
