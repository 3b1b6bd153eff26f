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


// Complex-multiplication counts of the optimizers, evaluated exactly in
// 128-bit unsigned arithmetic. Any intermediate overflow throws CountOverflow.

#pragma once

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <ostream>
#include <span>
#include <string>

#include "thzris/error.hpp"

namespace thzris {

using Count = unsigned __int128;

inline std::string to_string(Count v)
{
    if (v == 0)
        return "0";
    std::string s;
    while (v > 0) {
        s.insert(s.begin(), static_cast<char>('0' + static_cast<int>(v % 10)));
        v /= 10;
    }
    return s;
}

inline double to_double(Count v) { return static_cast<double>(v); }

inline double log10_count(Count v)
{
    if (v == 0)
        return -std::numeric_limits<double>::infinity();
    return std::log10(to_double(v));
}

namespace detail {

inline Count checked_mul(Count a, Count b)
{
    Count r;
    if (__builtin_mul_overflow(a, b, &r))
        throw CountOverflow("complexity count exceeds 128 bits");
    return r;
}

inline Count checked_add(Count a, Count b)
{
    Count r;
    if (__builtin_add_overflow(a, b, &r))
        throw CountOverflow("complexity count exceeds 128 bits");
    return r;
}

inline Count checked_pow(Count base, int e)
{
    Count r = 1;
    for (int i = 0; i < e; ++i)
        r = checked_mul(r, base);
    return r;
}

inline Count pow2(int e)
{
    if (e < 0 || e >= 128)
        throw CountOverflow("2^" + std::to_string(e) + " does not fit in 128 bits");
    return Count{1} << e;
}

} // namespace detail

struct CostModel {
    std::uint64_t n_bs = 1;
    std::uint64_t n_ms = 1;
    std::uint64_t n_ris = 1;
    std::uint64_t m_bs = 1;
    std::uint64_t n_s = 1;
    int b = 1;
    std::uint64_t i_a = 0;
    std::uint64_t i_c = 0;
    std::uint64_t i_o = 0;

    void validate() const
    {
        if (n_bs < 1 || n_ms < 1 || n_ris < 1 || m_bs < 1 || n_s < 1 || b < 1)
            throw InvalidInput("CostModel: dimensions and b must be >= 1");
    }
};

// N_BS M_BS N_s + 2 N_BS N_s + N_BS + N_MS N_s + N_MS
inline Count cost_cbc(const CostModel &m)
{
    using namespace detail;
    m.validate();
    Count c = checked_mul(checked_mul(m.n_bs, m.m_bs), m.n_s);
    c = checked_add(c, checked_mul(checked_mul(2, m.n_bs), m.n_s));
    c = checked_add(c, m.n_bs);
    c = checked_add(c, checked_mul(m.n_ms, m.n_s));
    return checked_add(c, m.n_ms);
}

// 2^{b+1} N_RIS^2 N_s^2 + 2^b N_RIS N_s^3
inline Count cost_linear_search(const CostModel &m)
{
    using namespace detail;
    m.validate();
    const Count first = checked_mul(checked_mul(pow2(m.b + 1), checked_pow(m.n_ris, 2)), checked_pow(m.n_s, 2));
    const Count second = checked_mul(checked_mul(pow2(m.b), m.n_ris), checked_pow(m.n_s, 3));
    return checked_add(first, second);
}

inline Count cost_ao(const CostModel &m)
{
    return detail::checked_mul(m.i_o, detail::checked_add(cost_cbc(m), cost_linear_search(m)));
}

// 2 N_BS^3 N_MS^3 N_RIS^6, the coupling-matrix setup shared by both GD variants
inline Count cost_gd_setup(const CostModel &m)
{
    using namespace detail;
    m.validate();
    return checked_mul(checked_mul(checked_mul(2, checked_pow(m.n_bs, 3)), checked_pow(m.n_ms, 3)),
                       checked_pow(m.n_ris, 6));
}

// ceil(5/2 I_a N_RIS^2) + setup
inline Count cost_a_gd(const CostModel &m)
{
    using namespace detail;
    const Count five = checked_mul(checked_mul(5, m.i_a), checked_pow(m.n_ris, 2));
    return checked_add(five / 2 + five % 2, cost_gd_setup(m));
}

inline Count cost_c_gd(const CostModel &m)
{
    using namespace detail;
    return checked_add(checked_mul(m.i_c, checked_pow(m.n_ris, 2)), cost_gd_setup(m));
}

struct CostRow {
    std::uint64_t n_ris = 0;
    Count ao = 0;
    Count c_gd = 0;
    Count a_gd = 0;
};

inline CostRow cost_row(CostModel m, std::uint64_t n_ris)
{
    m.n_ris = n_ris;
    return {n_ris, cost_ao(m), cost_c_gd(m), cost_a_gd(m)};
}

inline void write_complexity_csv(std::ostream &os, std::span<const CostRow> rows)
{
    os << "n_ris,cost_ao,cost_cgd,cost_agd,log10_cost_ao,log10_cost_cgd,log10_cost_agd\n";
    char buf[96];
    for (const auto &r : rows) {
        os << r.n_ris << ',' << to_string(r.ao) << ',' << to_string(r.c_gd) << ',' << to_string(r.a_gd);
        std::snprintf(buf, sizeof buf, ",%.9g,%.9g,%.9g\n", log10_count(r.ao), log10_count(r.c_gd),
                      log10_count(r.a_gd));
        os << buf;
    }
}

} // namespace thzris
