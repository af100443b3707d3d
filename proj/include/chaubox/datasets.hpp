#pragma once

#include <array>
#include <string_view>

namespace chaubox::datasets {

/// Hong Kong civil service pay adjustment (percent), tax years 2007-2008 to
/// 2024-2025. Mirrors data/hk_pay.csv byte for byte.
inline constexpr std::string_view hk_pay_csv =
    "tax_year,junior,senior\n"
    "2024-2025,3.00,3.00\n"
    "2023-2024,4.65,2.87\n"
    "2022-2023,2.50,2.50\n"
    "2021-2022,0.00,0.00\n"
    "2020-2021,0.00,0.00\n"
    "2019-2020,5.26,4.75\n"
    "2018-2019,4.51,4.06\n"
    "2017-2018,2.94,1.88\n"
    "2016-2017,4.68,4.19\n"
    "2015-2016,4.62,3.96\n"
    "2014-2015,4.71,5.96\n"
    "2013-2014,3.92,2.55\n"
    "2012-2013,5.80,5.26\n"
    "2011-2012,6.16,7.24\n"
    "2010-2011,0.56,1.60\n"
    "2009-2010,0.00,-5.38\n"
    "2008-2009,5.29,6.30\n"
    "2007-2008,4.62,4.96\n";

/// Seven standard normal draws followed by two gross errors at 100, sorted.
inline constexpr std::array<double, 9> contaminated_toy = {
    -1.938, -1.177, -0.854, -0.353, 0.890, 0.916, 1.741, 100.0, 100.0};

}  // namespace chaubox::datasets
